"""Weil/Schroedinger matrices and the averaging route to non-trivial series.

Run with:  python demos/04_weil_representation.py
"""

from fractions import Fraction

import numpy as np

from jacobiforms import (
    EisensteinSpec,
    averaging_matrix,
    conjugation_check,
    discriminant_group,
    eisenstein_coefficient_numeric,
    make_lattice,
    nontrivial_from_trivial,
    rho_generator,
    trivial_coefficient_exact,
)

lat = make_lattice([[8]])
group = discriminant_group(lat)

print("rho(T) diagonal phases:", np.round(np.diag(rho_generator(lat, "T").matrix), 6))
s = rho_generator(lat, "S")
print("rho(S) unitarity defect:", s.unitarity_defect())

x4 = group.element((4,))  # the order-2 isotropic class
print("\nconjugation identity defect at x of order 2, h = (1,0,0), A = S:",
      conjugation_check(lat, x4, 1, 0, 0, "S"))

av = averaging_matrix(lat, x4)
proj = av.matrix / x4.order**2
print("averaging operator: ||(Av/N^2)^2 - Av/N^2|| =",
      float(np.max(np.abs(proj @ proj - proj))))

# Non-trivial Eisenstein coefficients from trivial ones (order-2 relation):
# G_x(D, y) = G_0(D, y + x) when beta(x, y) is integral, else -G_0(D, y).
k = 4
spec = EisensteinSpec(lattice=lat, k=k, r=x4)
print(f"\nE_x coefficients for x = {x4.coords}, k = {k}:")
print(f"{'y':>6} {'D':>8} {'from trivial':>14} {'numeric c-sum':>16}")
for coords in ((0,), (1,), (2,), (4,)):
    y = group.element(coords)
    D = y.beta_mod1 - 1
    exact = nontrivial_from_trivial(lat, k, x4, D, y)
    numeric = eisenstein_coefficient_numeric(spec, D, y, 1200)
    print(f"{str(coords):>6} {str(D):>8} {str(exact):>14} {numeric.value:16.8f}")

print("\n(the trivial series values feeding the relation are exact rationals, e.g.")
print("  G_0(-1, 0) =", trivial_coefficient_exact(lat, k, Fraction(-1), group.zero), ")")
