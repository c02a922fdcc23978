"""Tour of the lattice layer: invariants, discriminant groups, support pairs.

Run with:  python demos/01_lattice_invariants.py
"""

from fractions import Fraction

from jacobiforms import (
    coset_points,
    discriminant_group,
    enumerate_supp,
    isotropy_set,
    make_lattice,
)

# An even lattice is just a symmetric integer Gram matrix with even diagonal.
# The classical index-m Jacobi forms correspond to the 1x1 matrix [[2m]].
for gram in ([[2]], [[8]], [[2, 1], [1, 2]], [[2, 0], [0, 2]]):
    lat = make_lattice(gram)
    print(f"gram {gram}: rank={lat.rank} det={lat.det} level={lat.level} Delta={lat.delta}")

# The discriminant group L#/L comes in canonical cyclic coordinates; every
# element knows its order and the value of the quadratic form mod 1.
lat = make_lattice([[8]])
group = discriminant_group(lat)
print("\nL#/L for [[8]] is", " x ".join(f"Z_{d}" for d in group.orders))
for x in group:
    print(f"  class {x.coords}: order {x.order}, beta = {x.beta_mod1}")

print("\nisotropy set (beta integral):", [x.coords for x in isotropy_set(lat)])

# Support pairs (D, x) index Fourier coefficients; the q-exponent of an entry
# is beta(x) - D.
print("\nsupp([[2]]) up to q-exponent 2:")
for idx in enumerate_supp(make_lattice([[2]]), 2):
    print(f"  D = {idx.D!s:>5}  x = {idx.x.coords}  q-exponent {idx.qexp}")

# Lattice points in a coset with bounded norm, enumerated exactly.
a1 = make_lattice([[2]])
half = discriminant_group(a1).element((1,))
print("\npoints of 1/2 + Z with beta <= 9/4:",
      [pt[0] for pt in coset_points(a1, half, Fraction(9, 4))])
