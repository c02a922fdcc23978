"""Eisenstein series coefficients: exact rationals for the trivial series,
truncated series for everything else, singular terms and full expansions.

The exact route evaluates the closed formula for the trivial series with the
primitive quadratic character throughout the bad-prime product (see the test
suite for the dual-route pins: the truncated Dirichlet series of the same
coefficient, the index-one reduction, and the numeric c-sum all agree).
"""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConvergenceDomainError,
    OddWeightError,
    TailTooLargeError,
)
from .expsums import bad_primes, dirichlet_series_partial, h_series_terms, local_factor
from .lattice import DiscElement, FourierExpansion, FourierIndex, coset_points, enumerate_supp
from .numbertheory import (
    QuadChar,
    bernoulli,
    dirichlet_L_nonpositive,
    fundamental_decomposition,
    gamma_half,
    kronecker,
    zeta_float,
)
from .rationals import is_integral

_IM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EisensteinSpec:
    """Weight, lattice and isotropic class indexing an Eisenstein series."""

    lattice: object
    k: int
    r: DiscElement

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("weight must be a positive integer")
        if self.r.beta_mod1 != 0:
            from .errors import NotIsotropicError

            raise NotIsotropicError(f"beta({self.r}) = {self.r.beta_mod1} is not integral")


@dataclass(frozen=True)
class CoefficientValue:
    """A numeric coefficient together with its reported series tail estimate."""

    value: float
    tail_estimate: float

    def __float__(self):
        return self.value


def _check_supp(lattice, D, x, strict_negative=True):
    D = Fraction(D)
    if strict_negative and D >= 0:
        raise ValueError("D must be negative")
    if D > 0:
        raise ValueError("D must be non-positive")
    if not is_integral(x.beta_mod1 - D):
        raise ValueError(f"(D={D}, x={x}) is not in supp(L)")
    return D


def _check_convergence(lattice, k):
    if 2 * k <= lattice.rank + 4:
        raise ConvergenceDomainError(
            f"weight {k} is not above the convergence bound rank/2 + 2 = {lattice.rank / 2 + 2}"
        )


def theta_coefficients(lattice, x, n_max):
    """q-exponent -> #{r = x mod L : beta(r) = n}, for n <= n_max."""
    n_max = Fraction(n_max)
    counts = Counter(lattice.beta(pt) for pt in coset_points(lattice, x, n_max))
    return dict(sorted(counts.items()))


def singular_term(spec, n_max):
    """D = 0 part of the Eisenstein expansion: (delta(r,x) + (-1)^k delta(-r,x)) / 2."""
    n_max = Fraction(n_max)
    group = spec.lattice.disc_group
    sign = (-1) ** spec.k
    neg_r = group.neg(spec.r)
    entries = {}
    if n_max >= 0:
        for x in group:
            if x.beta_mod1 != 0:
                continue
            val = Fraction(int(x == spec.r) + sign * int(x == neg_r), 2)
            if val:
                entries[FourierIndex(D=Fraction(0), x=x)] = val
    return FourierExpansion(
        weight=spec.k,
        lattice=spec.lattice,
        entries=entries,
        n_max=n_max,
        mode="exact",
        series="eisenstein",
        r_coords=spec.r.coords,
    )


def _coprime_square_split(D, det):
    """D = D0 * f^2 with gcd(f, 2 det) = 1 and ord_p(D0) in {0, 1} off 2 det."""
    D = Fraction(D)
    f = 1
    num = abs(D.numerator)
    p = 3
    while p * p <= num:
        if num % p == 0:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            if (2 * det) % p != 0:
                f *= p ** (e // 2)
        p += 2
    if num > 1 and (2 * det) % num != 0:
        pass  # ord is 1, contributes nothing to f
    return D / (f * f), f


def trivial_coefficient_exact(lattice, k, D, x):
    """Exact rational Fourier coefficient G_0(D, x) of the trivial Eisenstein series.

    Even rank:
        2 (-1)^ceil(rank/4) (-D |f1|)^(k - rank/2 - 1)
        / (d1 * L(1 - k + rank/2, chi_f1))
        * prod_{p | 2 Dt det} L~_p(k-1) / (1 - chi_f1(p) p^(rank/2 - k))
    with Delta = f1 d1^2, f1 the field discriminant.  Odd rank analogously via
    Dt0 * Delta = f2 d2^2, Bernoulli number B_{2k - rank - 1} and the extra
    (1 - p^(1 - 2k + rank)) denominators.  Odd weights give 0.
    """
    D = _check_supp(lattice, D, x)
    _check_convergence(lattice, k)
    if k % 2 == 1:
        return Fraction(0)
    rank, det = lattice.rank, lattice.det
    dt = int(D * x.order**2)
    bad = bad_primes(lattice, x, D)
    if rank % 2 == 0:
        f1, d1 = fundamental_decomposition(lattice.delta)
        chi = QuadChar(f1)
        n1 = k - rank // 2 - 1
        lval = dirichlet_L_nonpositive(n1, chi)
        result = 2 * Fraction(-1) ** ((rank + 3) // 4) * (-D * abs(f1)) ** n1 / (d1 * lval)
        for p in bad:
            result *= local_factor(lattice, x, D, p, k - 1)
            result /= 1 - chi(p) * Fraction(p) ** (rank // 2 - k)
        return result
    # odd rank
    half_up = (rank + 1) // 2
    d0, f = _coprime_square_split(D, det)
    dt0 = d0 * x.order**2
    assert is_integral(dt0)
    dt0 = int(dt0)
    f2, d2 = fundamental_decomposition(dt0 * lattice.delta)
    chi = QuadChar(f2)
    n2 = k - half_up - 1
    lval = dirichlet_L_nonpositive(n2, chi)
    sqrt_part = -D * x.order / f  # exact value of (D * Dt0)^(1/2)
    numerator = Fraction(2) ** (2 * k - rank) * (k - half_up) * sqrt_part * (-D) ** n2
    denominator = (
        Fraction(-1) ** (half_up + rank // 4)
        * bernoulli(2 * k - rank - 1)
        * d2
        * Fraction(abs(f2)) ** (k - half_up)
    )
    result = numerator / denominator * lval
    for p in bad:
        result *= 1 - chi(p) * Fraction(p) ** (half_up - k)
        result /= 1 - Fraction(p) ** (1 - 2 * k + rank)
        result *= local_factor(lattice, x, D, p, k - 1)
    return result


def trivial_coefficient_series(lattice, k, D, x, B):
    """G_0(D, x) by the truncated representation-number Dirichlet series.

    (2 pi)^(k - rank/2) i^k (-D)^(k - rank/2 - 1)
    / (2 det^(1/2) Gamma(k - rank/2) zeta(k - rank)) * sum_{b <= B} 2 R_b / b^(k-1).
    Independent of the closed-formula route; float result.
    """
    D = _check_supp(lattice, D, x)
    if k % 2 == 1:
        raise OddWeightError("the series normalization assumes even weight")
    rank, det = lattice.rank, lattice.det
    if k - 1 <= rank:
        raise ConvergenceDomainError(f"need k - 1 > rank, got k={k}, rank={rank}")
    gam_rat, gam_pi = gamma_half(2 * k - rank)
    gamma_val = float(gam_rat) * math.pi ** float(gam_pi)
    pref = (
        (2 * math.pi) ** (k - rank / 2)
        * (-1) ** (k // 2)
        * float(-D) ** (k - rank / 2 - 1)
        / (2 * math.sqrt(det) * gamma_val * zeta_float(k - rank))
    )
    partial = dirichlet_series_partial(lattice, x, D, float(k - 1), B)
    return pref * 2 * partial


def eisenstein_coefficient_numeric(spec, Dp, xp, c_max, enforce_tail=True):
    """Numeric coefficient of E_r at (D', x') by the truncated c-sum.

    Returns the real part (the combination i^k (H + (-1)^k H(-r)) is real for
    either parity) together with the crude tail estimate
    |prefactor| * 2 det c_max^(rank + 1 - k) / (k - rank - 1).
    `enforce_tail=False` skips the TailTooLarge guard (diagnostic evaluations
    at very small c_max, where the crude bound always dominates the value).
    """
    lattice, k, r = spec.lattice, spec.k, spec.r
    Dp = _check_supp(lattice, Dp, xp)
    _check_convergence(lattice, k)
    if c_max < 1:
        raise ValueError("c_max must be positive")
    rank, det = lattice.rank, lattice.det
    gam_rat, gam_pi = gamma_half(2 * k - rank)
    gamma_val = float(gam_rat) * math.pi ** float(gam_pi)
    pref = (
        (2 * math.pi) ** (k - rank / 2)
        * (1j) ** k
        * float(-Dp) ** (k - rank / 2 - 1)
        / (2 * math.sqrt(det) * gamma_val)
    )
    total = 0j
    for c, z in h_series_terms(lattice, Fraction(0), r, Dp, xp, k, c_max):
        total += z * float(c) ** (-k)
    raw = pref * total
    if abs(raw.imag) > _IM_TOLERANCE * max(1.0, abs(raw.real)):
        raise AssertionError(f"imaginary residue {raw.imag} exceeds tolerance")
    value = raw.real
    group = lattice.disc_group
    if k % 2 == 1 and group.neg(r) == r:
        tail = 0.0  # every term H + (-1)^k H(-r) vanishes identically
    elif k - rank - 1 <= 0:
        tail = math.inf
    else:
        tail = abs(pref) * 2 * det * float(c_max) ** (rank + 1 - k) / (k - rank - 1)
    if enforce_tail and tail > 1e-3 * abs(value):
        raise TailTooLargeError(
            f"tail estimate {tail} exceeds 1e-3 * |value| = {1e-3 * abs(value)}"
        )
    return CoefficientValue(value=value, tail_estimate=tail)


def eisenstein_expansion(spec, n_max, mode, c_max=1000, B=5000):
    """Full truncated expansion of E_r: singular term plus D' < 0 coefficients.

    mode 'exact' (trivial series only: r = 0; odd weights give the all-zero
    expansion) or 'numeric' (any isotropic r).
    """
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    n_max = Fraction(n_max)
    lattice, k, r = spec.lattice, spec.k, spec.r
    group = lattice.disc_group
    if mode == "exact" and r != group.zero:
        raise ValueError("exact mode covers only the trivial series (r = 0); "
                         "use the averaging relations for other classes")
    expansion = singular_term(spec, n_max)
    entries = dict(expansion.entries)
    tail = None
    for idx in enumerate_supp(lattice, n_max):
        if idx.D >= 0:
            continue
        if mode == "exact":
            entries[idx] = trivial_coefficient_exact(lattice, k, idx.D, idx.x)
        else:
            coeff = eisenstein_coefficient_numeric(spec, idx.D, idx.x, c_max)
            entries[idx] = coeff.value
            tail = coeff.tail_estimate if tail is None else max(tail, coeff.tail_estimate)
    return FourierExpansion(
        weight=k,
        lattice=lattice,
        entries=entries,
        n_max=n_max,
        mode=mode,
        series="eisenstein",
        r_coords=r.coords,
        tail_estimate=tail,
    )
