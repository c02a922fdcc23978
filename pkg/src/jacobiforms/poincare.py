"""Jacobi-Poincare series: Petersson normalization constant, numeric Fourier
coefficients (delta terms plus the Bessel-weighted c-series) and truncated
expansions.  Poincare series are cusp forms: expansions carry no D' = 0 part.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceDomainError, OutOfRangeError, TailTooLargeError
from .eisenstein import CoefficientValue, _check_supp
from .expsums import h_series_terms
from .lattice import DiscElement, FourierExpansion, FourierIndex, enumerate_supp
from .numbertheory import BESSEL_X_MAX, bessel_j, gamma_half

_IM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PoincareSpec:
    """Weight k > rank + 2, negative D and class r with D = beta(r) mod Z."""

    lattice: object
    k: int
    D: Fraction
    r: DiscElement

    def __post_init__(self):
        object.__setattr__(self, "D", Fraction(self.D))
        if self.k < 1:
            raise ValueError("weight must be a positive integer")
        _check_supp(self.lattice, self.D, self.r)


@dataclass(frozen=True)
class PeterssonConstant:
    """lambda_{k,L,D} = mantissa * pi^pi_power * sqrt(sqrt_arg), all exact."""

    mantissa: Fraction
    pi_power: int
    sqrt_arg: Fraction

    @property
    def value(self):
        return float(self.mantissa) * math.pi**self.pi_power * math.sqrt(float(self.sqrt_arg))


def _check_poincare_domain(lattice, k):
    if k <= lattice.rank + 2:
        raise ConvergenceDomainError(
            f"Poincare series need k > rank + 2; got k={k}, rank={lattice.rank}"
        )


def petersson_constant(spec):
    """2^(-2k + rank/2 + 2) Gamma(k - rank/2 - 1) det^(-1/2) (-pi D)^(-k + rank/2 + 1).

    Exact representation: even rank gives an integer pi-power and sqrt(1/det);
    odd rank folds the half powers of 2, pi and (-D) into pi^(t+1) sqrt(2(-D)/det).
    """
    lattice, k, D = spec.lattice, spec.k, spec.D
    _check_poincare_domain(lattice, k)
    rank, det = lattice.rank, lattice.det
    gam_rat, gam_pi = gamma_half(2 * k - rank - 2)  # Gamma(k - rank/2 - 1)
    if rank % 2 == 0:
        e = -k + rank // 2 + 1
        mantissa = Fraction(2) ** (-2 * k + rank // 2 + 2) * gam_rat * (-D) ** e
        return PeterssonConstant(mantissa=mantissa, pi_power=e, sqrt_arg=Fraction(1, det))
    t = -k + (rank + 1) // 2  # (-pi D) exponent is t + 1/2
    assert gam_pi == Fraction(1, 2)
    mantissa = Fraction(2) ** (-2 * k + (rank - 1) // 2 + 2) * gam_rat * (-D) ** t
    return PeterssonConstant(mantissa=mantissa, pi_power=t + 1, sqrt_arg=2 * (-D) / det)


def poincare_coefficient(spec, Dp, xp, c_max):
    """Numeric coefficient G_{D,r}(D', x') of the Poincare series.

    Delta terms plus the truncated sum over c of
    J_{k - rank/2 - 1}(4 pi sqrt(D D') / c) c^(-rank/2 - 1) (H_c + (-1)^k H_c(-r)),
    times 2 pi i^k det^(-1/2) (D'/D)^(k/2 - rank/4 - 1/2).
    """
    lattice, k, D, r = spec.lattice, spec.k, spec.D, spec.r
    Dp = _check_supp(lattice, Dp, xp)
    _check_poincare_domain(lattice, k)
    if c_max < 0:
        raise ValueError("c_max must be non-negative")
    rank, det = lattice.rank, lattice.det
    group = lattice.disc_group
    sign = (-1) ** k
    value = 0.0
    if Dp == D and xp == r:
        value += 1.0
    if Dp == D and xp == group.neg(r):
        value += sign
    bessel_arg = 4 * math.pi * math.sqrt(float(D * Dp))
    if c_max >= 1:
        if bessel_arg > BESSEL_X_MAX:
            raise OutOfRangeError(
                f"4 pi sqrt(D D') = {bessel_arg} exceeds the Bessel range {BESSEL_X_MAX}"
            )
        alpha = Fraction(2 * k - rank - 2, 2)  # k - rank/2 - 1
        pref = (
            2 * math.pi * (1j) ** k / math.sqrt(det)
            * float(Dp / D) ** (k / 2 - rank / 4 - 1 / 2)
        )
        total = 0j
        for c, z in h_series_terms(lattice, D, r, Dp, xp, k, c_max):
            total += bessel_j(alpha, bessel_arg / c) * float(c) ** (-rank / 2 - 1) * z
        raw = pref * total
        if abs(raw.imag) > _IM_TOLERANCE * max(1.0, abs(raw.real)):
            raise AssertionError(f"imaginary residue {raw.imag} exceeds tolerance")
        value += raw.real
        if k % 2 == 1 and group.neg(r) == r:
            tail = 0.0  # series vanishes term by term
        else:
            tail = _tail_estimate(lattice, k, D, Dp, c_max)
        if tail > 1e-3 * (1.0 + abs(value)):
            raise TailTooLargeError(
                f"tail estimate {tail} exceeds 1e-3 * (1 + |value|) = {1e-3 * (1 + abs(value))}"
            )
    else:
        tail = math.inf  # delta terms only: no series bound to report
    return CoefficientValue(value=value, tail_estimate=tail)


def _tail_estimate(lattice, k, D, Dp, c_max):
    """Bessel-bounded tail: |J_a(x)| <= (x/2)^a / Gamma(a+1), |H_c| <= c^(rank+1)."""
    rank, det = lattice.rank, lattice.det
    alpha = k - rank / 2 - 1
    if k - rank - 2 <= 0:
        return math.inf
    lead = (
        4 * math.pi / math.sqrt(det)
        * float(Dp / D) ** (alpha / 2)
        * (2 * math.pi * math.sqrt(float(D * Dp))) ** alpha
        / math.gamma(alpha + 1)
    )
    return lead * float(c_max) ** (rank + 2 - k) / (k - rank - 2)


def poincare_expansion(spec, n_max, c_max):
    """Truncated expansion of P_{D,r}: entries at every (D' < 0, x') in supp."""
    n_max = Fraction(n_max)
    entries = {}
    tail = None
    for idx in enumerate_supp(spec.lattice, n_max):
        if idx.D >= 0:
            continue  # cusp form: no singular term
        coeff = poincare_coefficient(spec, idx.D, idx.x, c_max)
        entries[idx] = coeff.value
        tail = coeff.tail_estimate if tail is None else max(tail, coeff.tail_estimate)
    return FourierExpansion(
        weight=spec.k,
        lattice=spec.lattice,
        entries=entries,
        n_max=n_max,
        mode="numeric",
        series="poincare",
        r_coords=spec.r.coords,
        D=spec.D,
        tail_estimate=tail,
    )
