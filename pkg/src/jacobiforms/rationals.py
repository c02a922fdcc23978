"""Small exact-arithmetic helpers shared across modules.

Everything here works on `fractions.Fraction` so that phases, q-exponents and
coefficient formulas stay exact until the final complex/float rendering.
"""

import cmath
import math
from fractions import Fraction

TWO_PI = 2.0 * math.pi


def parse_rational(text):
    """Parse 'p/q' or a plain integer string into a Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q):
    """Canonical 'p/q' string with positive denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def frac1(q):
    """Reduce a rational modulo 1 into [0, 1)."""
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def is_integral(q):
    return Fraction(q).denominator == 1


def unit_phase(q):
    """e(q) = exp(2*pi*i*q) for rational q, reduced mod 1 first.

    Denominators 1, 2 and 4 are returned exactly so that identities such as
    rho(T) = diag(1, i) hold to the last bit.
    """
    r = frac1(q)
    if r.denominator == 1:
        return 1 + 0j
    if r.denominator == 2:
        return -1 + 0j
    if r.denominator == 4:
        return (1j) if r.numerator == 1 else (-1j)
    return cmath.exp(1j * TWO_PI * (r.numerator / r.denominator))


def sqrt_exact(q):
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n = math.isqrt(q.numerator)
    d = math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def floor_plus_sqrt(a, t):
    """floor(a + sqrt(t)) for rationals a and t >= 0, computed exactly.

    A float estimate seeds the answer and exact comparisons fix it up; the
    loops move by at most a couple of steps.
    """
    a = Fraction(a)
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    n = math.floor(float(a) + math.sqrt(float(t)))

    def le(k):  # k <= a + sqrt(t)
        diff = k - a
        return diff <= 0 or diff * diff <= t

    while not le(n):
        n -= 1
    while le(n + 1):
        n += 1
    return n


def ceil_minus_sqrt(a, t):
    """ceil(a - sqrt(t)) for rationals a and t >= 0, computed exactly."""
    return -floor_plus_sqrt(-Fraction(a), t)
