"""Exponential and counting sums: Kloosterman sums, the Poincare/Eisenstein
lattice sums H, representation numbers R_b, local Euler factors and the
truncated Dirichlet series.

Two evaluation routes coexist on purpose.  The definitional route sums the
lattice sums term by term with exact rational phases (deterministic order:
d ascending, lambda lexicographic).  The series route rewrites H through
Kloosterman sums and computes the whole Kloosterman vector (K(n', t; c))_t
with a single length-c FFT, which is what makes c_max in the thousands
affordable; the two routes are asserted against each other in the tests.
"""

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import (
    NotIsotropicError,
    ResourceLimitError,
    StabilizationFailureError,
)
from .lattice import DiscElement, EvenLattice
from .numbertheory import factorize, kronecker
from .rationals import frac1, is_integral, unit_phase

DEFAULT_ENUM_BUDGET = 10**8
_ENUM_BUDGET_ENV = "JLF_ENUM_BUDGET"
_STABILIZATION_CAP = 4


def enumeration_budget():
    return int(float(os.environ.get(_ENUM_BUDGET_ENV, DEFAULT_ENUM_BUDGET)))


# -- shared precomputation -------------------------------------------------------

def _as_dual_vector(lattice, r):
    if isinstance(r, DiscElement):
        return r.rep
    vec = tuple(Fraction(v) for v in r)
    gr = lattice.gram_times(vec)
    if not all(is_integral(v) for v in gr):
        raise ValueError(f"{r} is not in the dual lattice")
    return vec


def _int_beta(gram, vec):
    """beta of an integer vector, as a Python int."""
    total = 0
    n = len(vec)
    for i in range(n):
        total += gram[i][i] // 2 * vec[i] * vec[i]
        for j in range(i + 1, n):
            total += gram[i][j] * vec[i] * vec[j]
    return total


@dataclass(frozen=True)
class _SumData:
    """Integer data of the exponent of H_{L,c}(D, r, D', r')."""

    gram: tuple
    rank: int
    n0: int          # beta(r) - D
    np0: int         # beta(r') - D'
    gx: tuple        # G r  (integral)
    gp: tuple        # G r' (integral)
    p0: Fraction     # beta(r', r)

    def n1(self, lam):
        """beta(lambda + r) - D for an integer vector lambda."""
        return _int_beta(self.gram, lam) + sum(g * v for g, v in zip(self.gx, lam)) + self.n0

    def pint(self, lam):
        """Integer part of beta(r', lambda + r): (G r') . lambda."""
        return sum(g * v for g, v in zip(self.gp, lam))


def _sum_data(lattice, D, r, Dp, rp):
    D = Fraction(D)
    Dp = Fraction(Dp)
    rv = _as_dual_vector(lattice, r)
    rpv = _as_dual_vector(lattice, rp)
    beta_r = lattice.beta(rv)
    beta_rp = lattice.beta(rpv)
    if D > 0 or Dp > 0:
        raise ValueError("support pairs need D <= 0")
    if not is_integral(beta_r - D) or not is_integral(beta_rp - Dp):
        raise ValueError("(D, r) and (D', r') must lie in supp(L): D = beta(r) mod Z")
    return _SumData(
        gram=lattice.gram,
        rank=lattice.rank,
        n0=int(beta_r - D),
        np0=int(beta_rp - Dp),
        gx=tuple(int(v) for v in lattice.gram_times(rv)),
        gp=tuple(int(v) for v in lattice.gram_times(rpv)),
        p0=lattice.pairing(rpv, rv),
    )


def _units(c):
    return [d for d in range(1, c + 1) if math.gcd(d, c) == 1] if c > 1 else [1]


# -- Kloosterman sums ------------------------------------------------------------

@lru_cache(maxsize=65536)
def _kloosterman_reduced(m, n, c):
    if c == 1:
        return complex(1.0)
    total = 0j
    for d in _units(c):
        dinv = pow(d, -1, c)
        total += unit_phase(Fraction(m * d + n * dinv, c))
    return total


def kloosterman(m, n, c):
    """K(m, n; c) = sum over invertible d mod c of e_c(m d + n d^{-1}).

    Real-valued up to float roundoff; returned as a complex number.
    """
    c = int(c)
    if c < 1:
        raise ValueError("c must be a positive integer")
    return _kloosterman_reduced(int(m) % c, int(n) % c, c)


# -- lattice sums (definitional route) -------------------------------------------

def poincare_lattice_sum(lattice, D, r, Dp, rp, c):
    """H_{L,c}(D, r, D', r') summed directly over d in Z_c^* and lambda in L/cL."""
    c = int(c)
    if c < 1:
        raise ValueError("c must be a positive integer")
    data = _sum_data(lattice, D, r, Dp, rp)
    p0_over_c = data.p0 / c
    lam_cache = [
        (data.n1(lam), data.pint(lam))
        for lam in product(range(c), repeat=data.rank)
    ]
    total = 0j
    for d in _units(c):
        dinv = pow(d, -1, c) if c > 1 else 0
        for n1, pint in lam_cache:
            total += unit_phase(Fraction(n1 * dinv + data.np0 * d + pint, c) + p0_over_c)
    return total


def eisenstein_lattice_sum(lattice, r, Dp, rp, c):
    """H_{L,c}(r, D', r') for isotropic r; equals the Poincare sum at D = 0."""
    rv = _as_dual_vector(lattice, r)
    if not is_integral(lattice.beta(rv)):
        raise NotIsotropicError(f"beta({r}) is not integral")
    return poincare_lattice_sum(lattice, Fraction(0), rv, Dp, rp, c)


def kloosterman_decomposition(lattice, D, r, Dp, rp, c):
    """H_{L,c} evaluated as sum_lambda e_c(beta(r', lambda+r)) K(beta(r')-D', beta(lambda+r)-D; c).

    Independent oracle for the lattice sums (it never runs the (d, lambda)
    double loop).
    """
    c = int(c)
    if c < 1:
        raise ValueError("c must be a positive integer")
    data = _sum_data(lattice, D, r, Dp, rp)
    p0_over_c = data.p0 / c
    total = 0j
    for lam in product(range(c), repeat=data.rank):
        phase = unit_phase(Fraction(data.pint(lam), c) + p0_over_c)
        total += phase * kloosterman(data.np0, data.n1(lam), c)
    return total


# -- lattice sums (FFT series route) ----------------------------------------------

@lru_cache(maxsize=4096)
def _unit_inverse_table(c):
    inv = np.zeros(c, dtype=np.int64)
    for u in range(1, c):
        if math.gcd(u, c) == 1:
            inv[u] = pow(u, -1, c)
    return inv


@lru_cache(maxsize=4096)
def _kloosterman_vector_cached(m, c):
    """(K(m, t; c))_t for all residues t, via one FFT."""
    inv = _unit_inverse_table(c)
    units = np.nonzero(inv)[0]
    g = np.zeros(c, dtype=np.complex128)
    g[units] = np.exp(2j * np.pi * ((m * inv[units]) % c) / c)
    return c * np.fft.ifft(g)


def _lambda_profile(data, c):
    """Arrays (n1 mod c, pint mod c) over lambda in (Z_c)^rank."""
    rank = data.rank
    gram = data.gram
    lam = np.arange(c, dtype=np.int64)
    if rank == 1:
        n1 = (gram[0][0] // 2) * lam * lam + data.gx[0] * lam + data.n0
        pint = data.gp[0] * lam
    elif rank == 2:
        a = (gram[0][0] // 2) * lam * lam + data.gx[0] * lam
        b = (gram[1][1] // 2) * lam * lam + data.gx[1] * lam + data.n0
        n1 = (a[:, None] + b[None, :] + gram[0][1] * lam[:, None] * lam[None, :]).ravel()
        pint = (data.gp[0] * lam[:, None] + data.gp[1] * lam[None, :]).ravel()
    else:
        grids = np.indices((c,) * rank).reshape(rank, -1)
        n1 = np.full(grids.shape[1], data.n0, dtype=np.int64)
        pint = np.zeros(grids.shape[1], dtype=np.int64)
        for i in range(rank):
            n1 += (gram[i][i] // 2) * grids[i] * grids[i] + data.gx[i] * grids[i]
            pint += data.gp[i] * grids[i]
            for j in range(i + 1, rank):
                n1 += gram[i][j] * grids[i] * grids[j]
    return n1 % c, pint % c


def lattice_sum_fft(lattice, D, r, Dp, rp, c):
    """H_{L,c}(D, r, D', r') via the Kloosterman decomposition with FFT vectors.

    Bit-for-bit it differs from the definitional route only by float
    summation order; agreement to ~1e-10 is asserted in the test suite.
    """
    c = int(c)
    if c < 1:
        raise ValueError("c must be a positive integer")
    data = _sum_data(lattice, D, r, Dp, rp)
    if c == 1:
        return complex(unit_phase(data.p0))
    n1, pint = _lambda_profile(data, c)
    weights = np.exp(2j * np.pi * pint / c)
    acc = (
        np.bincount(n1, weights=weights.real, minlength=c)
        + 1j * np.bincount(n1, weights=weights.imag, minlength=c)
    )
    kvec = _kloosterman_vector_cached(data.np0 % c, c)
    const = complex(unit_phase(frac1(data.p0 / c)))
    return const * complex(np.dot(acc, kvec))


def h_series_terms(lattice, D, r, Dp, rp, k, c_max):
    """Yield (c, H_c + (-1)^k H_c(-r)) for c = 1..c_max, fast route.

    Uses conj(H(r)) = H(-r), which follows from substituting (d, lambda) ->
    (-d, -lambda) in the defining sum.
    """
    sign = (-1) ** k
    for c in range(1, c_max + 1):
        h = lattice_sum_fft(lattice, D, r, Dp, rp, c)
        yield c, h + sign * h.conjugate()


# -- representation numbers -------------------------------------------------------

@dataclass(frozen=True)
class RepCountKey:
    """Arguments of R_b = #{lambda in (Z_b)^rank : beta(lambda + x) - D = 0 mod b}."""

    lattice: EvenLattice
    x: DiscElement
    D: Fraction
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("modulus b must be positive")
        if self.D > 0 or not is_integral(self.x.beta_mod1 - self.D):
            raise ValueError("(D, x) must lie in supp(L)")


_REP_MEMO = {}


def _rep_count_enumerate(lattice, x, D, b):
    rank = lattice.rank
    if b**rank > enumeration_budget():
        raise ResourceLimitError(
            f"{b}^{rank} points exceed the enumeration budget "
            f"({enumeration_budget()}; override with {_ENUM_BUDGET_ENV})"
        )
    if b == 1:
        return 1
    gram = lattice.gram
    xhat = x.rep
    q0 = lattice.beta(xhat) - Fraction(D)
    assert is_integral(q0)
    q0 = int(q0)
    gx = [int(v) for v in lattice.gram_times(xhat)]
    last = rank - 1
    chunk = 1 << 22

    def count_last(lin, const):
        total = 0
        for start in range(0, b, chunk):
            lam = np.arange(start, min(start + chunk, b), dtype=np.int64)
            vals = ((gram[last][last] // 2) * lam * lam + (gx[last] + lin) * lam + const) % b
            total += int(np.count_nonzero(vals == 0))
        return total

    if rank == 1:
        return count_last(0, q0)
    if rank == 2:
        lam = np.arange(b, dtype=np.int64)
        q_head = (gram[0][0] // 2) * lam * lam + gx[0] * lam + q0
        q_last = (gram[1][1] // 2) * lam * lam + gx[1] * lam
        count = 0
        rows = max(1, chunk // b)
        for start in range(0, b, rows):
            head = lam[start:start + rows]
            vals = (
                q_head[start:start + rows, None]
                + (gram[0][1] * head)[:, None] * lam[None, :]
                + q_last[None, :]
            ) % b
            count += int(np.count_nonzero(vals == 0))
        return count
    count = 0
    for head in product(range(b), repeat=rank - 1):
        const = _int_beta(gram, head + (0,)) + sum(g * v for g, v in zip(gx, head)) + q0
        lin = sum(gram[i][last] * head[i] for i in range(rank - 1))
        count += count_last(lin, const)
    return count


def rep_count(key):
    """R_b by exhaustive enumeration (memoized)."""
    memo_key = (key.lattice.gram, key.x.coords, key.D, key.b)
    if memo_key not in _REP_MEMO:
        _REP_MEMO[memo_key] = _rep_count_enumerate(key.lattice, key.x, key.D, key.b)
    return _REP_MEMO[memo_key]


def _rep_count_cached(lattice, x, D, b):
    return rep_count(RepCountKey(lattice=lattice, x=x, D=Fraction(D), b=int(b)))


def _d_tilde(x, D):
    dt = Fraction(D) * x.order**2
    assert is_integral(dt)
    return int(dt)


def _ord_p(n, p):
    n = abs(int(n))
    e = 0
    while n and n % p == 0:
        n //= p
        e += 1
    return e


_STABLE_MEMO = {}


def _stable_profile(lattice, x, D, p):
    """(w_p, [R_{p^0}, ..., R_{p^{w_p}}]) with the stabilization check enforced.

    w_p starts at max(1, 1 + 2 ord_p(2 * Dtilde)) and is raised until
    R_{p^{w+1}} = p^{rank-1} R_{p^w}, by at most 4 steps.
    """
    memo_key = (lattice.gram, x.coords, Fraction(D), p)
    if memo_key in _STABLE_MEMO:
        return _STABLE_MEMO[memo_key]
    dt = _d_tilde(x, D)
    w = max(1, 1 + 2 * _ord_p(2 * dt, p))
    cap = w + _STABILIZATION_CAP
    counts = [_rep_count_cached(lattice, x, D, p**l) for l in range(w + 2)]
    while counts[w + 1] != p ** (lattice.rank - 1) * counts[w]:
        w += 1
        if w > cap:
            raise StabilizationFailureError(
                f"representation numbers at p={p} fail to stabilize by w={cap}"
            )
        counts.append(_rep_count_cached(lattice, x, D, p ** (w + 1)))
    result = (w, counts[: w + 1])
    _STABLE_MEMO[memo_key] = result
    return result


def local_factor(lattice, x, D, p, s):
    """Local Euler factor L~_p(s) of the representation-number Dirichlet series.

    L~_p(s) = p^{-w s} R_{p^w} + (1 - p^{-(s - rank + 1)}) sum_{l < w} p^{-l s} R_{p^l},
    as an exact rational.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    if Fraction(D) >= 0:
        raise ValueError("local_factor needs D < 0")
    w, counts = _stable_profile(lattice, x, D, p)
    total = Fraction(p) ** (-w * s) * counts[w]
    partial = sum(Fraction(p) ** (-l * s) * counts[l] for l in range(w))
    total += (1 - Fraction(p) ** (lattice.rank - 1 - s)) * partial
    return total


def good_prime_factor(lattice, x, D, p, s):
    """Closed form of L~_p(s) at a good prime p (p not dividing 2 Dtilde det).

    Even rank:  1 - chi_Delta(p) p^{-(s - rank/2 + 1)}.
    Odd rank:   (1 - p^{-(2s - rank + 1)}) / (1 - chi(p) p^{-(s - (rank-1)/2)})
    with chi = (Dtilde * Delta / .); both as exact rationals.
    """
    rank = lattice.rank
    dt = _d_tilde(x, D)
    if (2 * dt * lattice.det) % p == 0:
        raise ValueError(f"p={p} is a bad prime here")
    if rank % 2 == 0:
        chi = kronecker(lattice.delta, p)
        return 1 - chi * Fraction(p) ** (-(s - rank // 2 + 1))
    chi = kronecker(dt * lattice.delta, p)
    num = 1 - Fraction(p) ** (-(2 * s - rank + 1))
    den = 1 - chi * Fraction(p) ** (-(s - (rank - 1) // 2))
    return num / den


def _good_prime_count(lattice, x, D, p):
    """R_p at a good prime, from the closed forms above.

    Even rank: p^(rank-1) - chi_Delta(p) p^(rank/2 - 1).
    Odd rank:  p^(rank-1) + chi(p) p^((rank-1)/2).
    """
    rank = lattice.rank
    if rank % 2 == 0:
        return p ** (rank - 1) - kronecker(lattice.delta, p) * p ** (rank // 2 - 1)
    dt = _d_tilde(x, D)
    return p ** (rank - 1) + kronecker(dt * lattice.delta, p) * p ** ((rank - 1) // 2)


def rep_count_prime_power(lattice, x, D, p, e):
    """R_{p^e}, via closed forms at good primes and enumeration at bad ones.

    Beyond the stable exponent, counts grow geometrically:
    R_{p^{l+1}} = p^{rank-1} R_{p^l}.
    """
    if e == 0:
        return 1
    rank = lattice.rank
    dt = _d_tilde(x, D)
    if (2 * dt * lattice.det) % p != 0:
        return p ** ((e - 1) * (rank - 1)) * _good_prime_count(lattice, x, D, p)
    w, counts = _stable_profile(lattice, x, D, p)
    if e <= w:
        return counts[e]
    return p ** ((e - w) * (rank - 1)) * counts[w]


@lru_cache(maxsize=64)
def _spf_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i::i][spf[i::i] == 0] = i
    return spf


def dirichlet_series_partial(lattice, x, D, s, B):
    """Truncated Dirichlet series sum_{b <= B} R_b / b^s (float).

    R_b is assembled multiplicatively from prime-power counts (CRT); prime
    powers come from rep_count_prime_power.
    """
    if s <= lattice.rank + 0.5:
        raise ValueError(f"s = {s} is too close to the abscissa rank = {lattice.rank}")
    B = int(B)
    if B < 1:
        raise ValueError("B must be positive")
    spf = _spf_sieve(max(B, 2))
    pp_cache = {}

    def prime_power(p, e):
        if (p, e) not in pp_cache:
            pp_cache[(p, e)] = rep_count_prime_power(lattice, x, D, p, e)
        return pp_cache[(p, e)]

    total = 1.0  # b = 1 term
    for b in range(2, B + 1):
        rb = 1
        n = b
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            rb *= prime_power(p, e)
            if rb == 0:
                break
        if rb:
            total += rb * float(b) ** (-s)
    return total


def unscaled_dirichlet_factorization(lattice, x, D, s_int, primes):
    """prod over the given primes of L~_p(s) as an exact rational (test helper)."""
    total = Fraction(1)
    for p in primes:
        total *= local_factor(lattice, x, D, p, s_int)
    return total


def bad_primes(lattice, x, D):
    """Primes dividing 2 * Dtilde * det, ascending."""
    dt = _d_tilde(x, D)
    return [p for p, _ in factorize(abs(2 * dt * lattice.det))]
