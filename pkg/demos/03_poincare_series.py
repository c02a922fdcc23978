"""Poincare series: Petersson constants and numeric Fourier coefficients.

Run with:  python demos/03_poincare_series.py
"""

from fractions import Fraction

from jacobiforms import (
    PoincareSpec,
    discriminant_group,
    make_lattice,
    petersson_constant,
    poincare_coefficient,
    poincare_expansion,
)

a1 = make_lattice([[2]])
group = discriminant_group(a1)
half = group.element((1,))

# The constant lambda_{k,L,D} relating <phi, P_{D,r}> to C(D, r), held exactly.
spec5 = PoincareSpec(lattice=a1, k=5, D=Fraction(-1), r=group.zero)
lam = petersson_constant(spec5)
print(f"lambda(k=5, [[2]], D=-1) = {lam.mantissa} * pi^{lam.pi_power} * sqrt({lam.sqrt_arg})")
print(f"                        = {lam.value:.12e}")

# Coefficients of P_{k,L,D,r}: delta terms plus a Bessel-weighted c-series.
spec = PoincareSpec(lattice=a1, k=10, D=Fraction(-3, 4), r=half)
own = poincare_coefficient(spec, Fraction(-3, 4), half, 1000)
print(f"\nG_(D,r)(D,r) for k=10, D=-3/4, r=1/2: {own.value:.12f}")
print(f"  (delta contribution 1, series {own.value - 1:.12f}, "
      f"tail estimate {own.tail_estimate:.1e})")

# Expansions are cusp forms: no D' = 0 entries appear.
expansion = poincare_expansion(spec, 2, 300)
print("\nexpansion up to q-exponent 2:")
for idx, val in expansion.sorted_items():
    print(f"  D' = {idx.D!s:>6}  x' = {idx.x.coords}: {val:+.9f}")
print("singular entries present:", any(idx.D == 0 for idx in expansion.entries))
