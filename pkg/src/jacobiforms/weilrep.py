"""Weil and Schroedinger representation matrices on C[L#/L], the averaging
operator, and the relations expressing non-trivial Eisenstein coefficients
through trivial ones.

Matrices are built from exact rational phases (reduced mod 1 before the single
complex rendering), so unitarity and the conjugation identity hold to ~1e-15
even though the entries are ordinary complex128.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eisenstein import trivial_coefficient_exact
from .errors import NotIsotropicError, OddWeightError, UnsupportedOrderError
from .rationals import frac1, is_integral, unit_phase

_GENERATOR_MATRICES = {
    "T": (1, 1, 0, 1),
    "S": (0, -1, 1, 0),
}


@dataclass(frozen=True)
class RepMatrix:
    """Complex matrix over the canonical DiscElement ordering."""

    label: str
    matrix: np.ndarray

    def dual(self):
        """Entrywise conjugate; for a unitary representation this is rho*."""
        return RepMatrix(label=self.label + "*", matrix=self.matrix.conj())

    def unitarity_defect(self):
        n = self.matrix.shape[0]
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(n))))

    def __matmul__(self, other):
        return RepMatrix(label=self.label + other.label, matrix=self.matrix @ other.matrix)


def rho_generator(lattice, g):
    """Weil representation of the standard generators.

    rho(T) e_x = e(beta(x)) e_x;
    rho(S) e_x = i^(-rank/2) det^(-1/2) sum_y e(-beta(x, y)) e_y,
    with the principal branch i^(-rank/2) = e(-rank/8).
    """
    group = lattice.disc_group
    n = len(group)
    if g == "T":
        mat = np.zeros((n, n), dtype=np.complex128)
        for i, x in enumerate(group):
            mat[i, i] = unit_phase(x.beta_mod1)
        return RepMatrix(label="T", matrix=mat)
    if g == "S":
        scalar = unit_phase(Fraction(-lattice.rank, 8)) / np.sqrt(lattice.det)
        mat = np.zeros((n, n), dtype=np.complex128)
        for j, x in enumerate(group):
            for i, y in enumerate(group):
                mat[i, j] = scalar * unit_phase(-group.pairing_mod1(x, y))
        return RepMatrix(label="S", matrix=mat)
    raise ValueError(f"unknown generator {g!r}")


def rho_word(lattice, word):
    """Ordered product of generator matrices; inverses via conjugate transpose."""
    word = tuple(word)
    if not word:
        raise ValueError("word must be non-empty")
    n = len(lattice.disc_group)
    mat = np.eye(n, dtype=np.complex128)
    for token in word:
        if token in ("T", "S"):
            mat = mat @ rho_generator(lattice, token).matrix
        elif token in ("T^-1", "S^-1"):
            mat = mat @ rho_generator(lattice, token[0]).matrix.conj().T
        else:
            raise ValueError(f"unknown token {token!r}; expected T, S, T^-1 or S^-1")
    return RepMatrix(label="".join(word), matrix=mat)


def schrodinger_matrix(lattice, x, lam, mu, t):
    """sigma_x(lam, mu, t) e_y = e(mu beta(x,y) + (t - lam mu) beta(x)) e_{y - lam x}."""
    group = lattice.disc_group
    n = len(group)
    mat = np.zeros((n, n), dtype=np.complex128)
    shift = group.scale(lam, x)
    for j, y in enumerate(group):
        phase = frac1(mu * group.pairing_mod1(x, y) + (t - lam * mu) * x.beta_mod1)
        target = group.add(y, group.neg(shift))
        mat[group.index(target), j] = unit_phase(phase)
    return RepMatrix(label=f"sigma_{x}({lam},{mu},{t})", matrix=mat)


def conjugation_check(lattice, x, lam, mu, t, g):
    """Max-norm defect of sigma*_x(h) = rho*(A) sigma*_x(h^A) rho*(A)^{-1}.

    h^A = (lam a + mu c, lam b + mu d, t) for the generator's matrix A.
    """
    if g not in _GENERATOR_MATRICES:
        raise ValueError(f"unknown generator {g!r}")
    a, b, c, d = _GENERATOR_MATRICES[g]
    lhs = schrodinger_matrix(lattice, x, lam, mu, t).dual().matrix
    transformed = schrodinger_matrix(lattice, x, lam * a + mu * c, lam * b + mu * d, t)
    rho = rho_generator(lattice, g).matrix
    # rho*(A) = conj(rho); rho*(A)^{-1} = conj(rho)^{-1} = rho^T by unitarity
    rhs = rho.conj() @ transformed.dual().matrix @ rho.T
    return float(np.max(np.abs(lhs - rhs)))


def averaging_matrix(lattice, x):
    """Av_x = N_x^{-2} sum over (lam, mu) in (Z_{N_x^2})^2 of sigma*_x(lam, mu, 0).

    Representative-independent: sigma*_x(lam + a N_x^2, mu, 0) = sigma*_x(lam, mu, 0).
    For isotropic x, Av_x / N_x^2 is an orthogonal projection.
    """
    group = lattice.disc_group
    n = len(group)
    n2 = x.order**2
    total = np.zeros((n, n), dtype=np.complex128)
    for lam in range(n2):
        for mu in range(n2):
            total += schrodinger_matrix(lattice, x, lam, mu, 0).dual().matrix
    return RepMatrix(label=f"Av_{x}", matrix=total / n2)


@dataclass(frozen=True)
class OrbitRelation:
    """Averaging relation data for an isotropic class x of order N.

    `orbit` lists the classes lambda*x (lambda = 0..N-1) whose Eisenstein
    series sum to the averaged trivial one; `components` maps each class y
    with beta(x, y) integral to the classes y + lambda*x whose trivial
    h-components add up to the y-component of that sum.
    """

    x: object
    orbit: tuple
    components: dict


def orbit_relation(lattice, k, x):
    if k % 2 == 1:
        raise OddWeightError("the averaging relation needs even weight")
    if x.beta_mod1 != 0:
        raise NotIsotropicError(f"beta({x}) is not integral")
    group = lattice.disc_group
    n = x.order
    orbit = tuple(group.scale(lam, x) for lam in range(n))
    components = {}
    for y in group:
        if is_integral(group.pairing_mod1(x, y)):
            components[y] = tuple(group.add(y, group.scale(lam, x)) for lam in range(n))
    return OrbitRelation(x=x, orbit=orbit, components=components)


def nontrivial_from_trivial(lattice, k, x, D, y):
    """Exact coefficient G_x(D, y) of a non-trivial Eisenstein series.

    Assembled from trivial coefficients by the order-2/3/4/6 averaging case
    analyses; orders outside {2, 3, 4, 6} are not determined by the relation.
    """
    if k % 2 == 1:
        raise OddWeightError("the averaging relations need even weight")
    if x.beta_mod1 != 0:
        raise NotIsotropicError(f"beta({x}) is not integral")
    order = x.order
    if order not in (2, 3, 4, 6):
        raise UnsupportedOrderError(f"order {order} is not covered by the case formulas")
    group = lattice.disc_group
    D = Fraction(D)

    def g0(shift):
        return trivial_coefficient_exact(lattice, k, D, group.add(y, group.scale(shift, x)))

    def pair_integral(mult):
        return is_integral(group.pairing_mod1(group.scale(mult, x), y))

    if order == 2:
        return g0(1) if pair_integral(1) else -g0(0)
    if order == 3:
        if pair_integral(1):
            return Fraction(1, 2) * (g0(1) + g0(2))
        return -Fraction(1, 2) * g0(0)
    if order == 4:
        if pair_integral(1):
            return Fraction(1, 2) * (g0(1) + g0(3))
        if pair_integral(2):
            return -Fraction(1, 2) * (g0(0) + g0(2))
        return Fraction(0)
    # order 6; the final branch comes out of the averaging identity as
    # +G0/2: with all pairings non-integral the component equation reads
    # G0(y) + 2 G_x(y) + 2(-G0(y)/2) + (-G0(y)) = 0
    if pair_integral(1):
        return Fraction(1, 2) * (g0(1) + g0(5))
    if pair_integral(2):
        return -Fraction(1, 2) * (g0(2) + g0(4))
    if pair_integral(3):
        return -Fraction(1, 2) * g0(3)
    return Fraction(1, 2) * g0(0)
