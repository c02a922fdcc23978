"""Self-verification suites behind the `verify` CLI subcommand.

Each check returns quickly (the pytest suite is the exhaustive one); a check
is a (name, callable) pair where the callable raises AssertionError on
failure.  Suites: exp_sums, eisenstein, poincare, weil, all.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from .eisenstein import (
    EisensteinSpec,
    eisenstein_coefficient_numeric,
    trivial_coefficient_exact,
    trivial_coefficient_series,
)
from .expsums import (
    RepCountKey,
    good_prime_factor,
    kloosterman_decomposition,
    lattice_sum_fft,
    local_factor,
    poincare_lattice_sum,
    rep_count,
)
from .lattice import enumerate_supp, make_lattice
from .numbertheory import QuadChar, dirichlet_L_nonpositive
from .poincare import PoincareSpec, poincare_coefficient, poincare_expansion
from .weilrep import (
    averaging_matrix,
    conjugation_check,
    nontrivial_from_trivial,
    rho_generator,
    schrodinger_matrix,
)

_TEST_GRAMS = ([[2]], [[8]], [[2, 1], [1, 2]], [[2, 0], [0, 2]])


def _lattices():
    return [make_lattice(g) for g in _TEST_GRAMS]


def _check_kloosterman_decomposition():
    rng = random.Random(11)
    for lat in (_lattices()[0], _lattices()[2]):
        sup = [i for i in enumerate_supp(lat, 2) if i.D < 0]
        for _ in range(12):
            i1, i2 = rng.choice(sup), rng.choice(sup)
            c = rng.randint(1, 12)
            h = poincare_lattice_sum(lat, i1.D, i1.x, i2.D, i2.x, c)
            kd = kloosterman_decomposition(lat, i1.D, i1.x, i2.D, i2.x, c)
            ff = lattice_sum_fft(lat, i1.D, i1.x, i2.D, i2.x, c)
            assert abs(h - kd) < 1e-9, (i1, i2, c, h, kd)
            assert abs(h - ff) < 1e-9, (i1, i2, c, h, ff)


def _check_multiplicativity():
    lat = _lattices()[0]
    x0 = lat.disc_group.zero
    D = Fraction(-1)

    def r(b):
        return rep_count(RepCountKey(lattice=lat, x=x0, D=D, b=b))

    for b, c in ((2, 3), (3, 4), (4, 9), (5, 6), (7, 8)):
        assert r(b * c) == r(b) * r(c), (b, c)


def _check_good_primes():
    for lat in _lattices():
        x0 = lat.disc_group.zero
        D = Fraction(-1)
        for p in (3, 5, 7):
            dt = int(D * x0.order**2)
            if (2 * dt * lat.det) % p == 0:
                continue
            for s in (3, 5):
                assert local_factor(lat, x0, D, p, s) == good_prime_factor(lat, x0, D, p, s)


def _check_eichler_zagier():
    lat = make_lattice([[2]])
    group = lat.disc_group
    assert trivial_coefficient_exact(lat, 4, Fraction(-1), group.zero) == 126
    assert trivial_coefficient_exact(lat, 4, Fraction(-3, 4), group.element((1,))) == 56
    assert dirichlet_L_nonpositive(2, QuadChar(-4)) == Fraction(-1, 2)


def _check_dual_path():
    lat = make_lattice([[2, 0], [0, 2]])
    x0 = lat.disc_group.zero
    exact = trivial_coefficient_exact(lat, 6, Fraction(-1), x0)
    approx = trivial_coefficient_series(lat, 6, Fraction(-1), x0, 2000)
    assert abs(float(exact) - approx) <= max(1e-6, 1e-4 * abs(float(exact)))


def _check_odd_weight():
    lat = make_lattice([[2]])
    x0 = lat.disc_group.zero
    assert trivial_coefficient_exact(lat, 5, Fraction(-1), x0) == 0
    spec = EisensteinSpec(lattice=lat, k=5, r=x0)
    val = eisenstein_coefficient_numeric(spec, Fraction(-1), x0, 200)
    assert abs(val.value) <= 1e-9


def _check_numeric_vs_exact():
    lat = make_lattice([[2]])
    x0 = lat.disc_group.zero
    spec = EisensteinSpec(lattice=lat, k=8, r=x0)
    num = eisenstein_coefficient_numeric(spec, Fraction(-1), x0, 500)
    exact = float(trivial_coefficient_exact(lat, 8, Fraction(-1), x0))
    assert abs(num.value - exact) < 1e-4 * abs(exact)


def _check_poincare_props():
    lat = make_lattice([[2]])
    group = lat.disc_group
    xh = group.element((1,))
    spec = PoincareSpec(lattice=lat, k=9, D=Fraction(-3, 4), r=xh)
    exp_pos = poincare_expansion(spec, 2, 60)
    assert all(i.D < 0 for i in exp_pos.entries), "cusp support violated"
    spec_neg = PoincareSpec(lattice=lat, k=9, D=Fraction(-3, 4), r=group.neg(xh))
    exp_neg = poincare_expansion(spec_neg, 2, 60)
    for idx, val in exp_pos.entries.items():
        assert abs(exp_neg.entries[idx] - (-1) ** 9 * val) <= 1e-9


def _check_delta_terms():
    lat = make_lattice([[2]])
    x0 = lat.disc_group.zero
    spec = PoincareSpec(lattice=lat, k=10, D=Fraction(-1), r=x0)
    assert poincare_coefficient(spec, Fraction(-1), x0, 0).value == 2.0


def _check_unitarity():
    for lat in _lattices():
        for g in ("T", "S"):
            assert rho_generator(lat, g).unitarity_defect() <= 1e-12
        for x in lat.disc_group:
            mat = schrodinger_matrix(lat, x, 1, 1, 1)
            assert mat.unitarity_defect() <= 1e-12


def _check_conjugation():
    for lat in _lattices():
        for x in lat.disc_group:
            for triple in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                for g in ("T", "S"):
                    assert conjugation_check(lat, x, *triple, g) <= 1e-10


def _check_averaging():
    lat = make_lattice([[8]])
    group = lat.disc_group
    x4 = group.element((4,))
    av = averaging_matrix(lat, x4).matrix
    proj = av / x4.order**2
    assert np.max(np.abs(proj @ proj - proj)) <= 1e-10
    assert np.max(np.abs(av - av.conj().T)) <= 1e-10
    spec = EisensteinSpec(lattice=lat, k=4, r=x4)
    y = group.element((2,))
    D = y.beta_mod1 - 1
    exact = float(nontrivial_from_trivial(lat, 4, x4, D, y))
    num = eisenstein_coefficient_numeric(spec, D, y, 800)
    assert abs(exact - num.value) <= max(1e-3, 1e-3 * abs(exact))


SUITES = {
    "exp_sums": [
        ("kloosterman decomposition", _check_kloosterman_decomposition),
        ("rep-count multiplicativity", _check_multiplicativity),
        ("good-prime closed forms", _check_good_primes),
    ],
    "eisenstein": [
        ("index-one oracle values", _check_eichler_zagier),
        ("exact/series dual path", _check_dual_path),
        ("odd-weight vanishing", _check_odd_weight),
        ("numeric r=0 vs exact", _check_numeric_vs_exact),
    ],
    "poincare": [
        ("cusp support and symmetry", _check_poincare_props),
        ("delta terms", _check_delta_terms),
    ],
    "weil": [
        ("unitarity", _check_unitarity),
        ("conjugation identity", _check_conjugation),
        ("averaging relations", _check_averaging),
    ],
}


def run_suites(selection):
    """Run the named suite ('all' or a key of SUITES); returns (report, ok)."""
    names = list(SUITES) if selection == "all" else [selection]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {selection!r}; choose from all, {', '.join(SUITES)}")
    lines = []
    passed = failed = 0
    for suite in names:
        for label, fn in SUITES[suite]:
            start = time.perf_counter()
            try:
                fn()
            except Exception as exc:  # noqa: BLE001 - report any failure
                failed += 1
                status = f"FAIL ({exc})"
            else:
                passed += 1
                status = "ok"
            elapsed = time.perf_counter() - start
            lines.append(f"[{suite}] {label}: {status} ({elapsed:.2f}s)")
    lines.append(f"{passed} passed, {failed} failed")
    return "\n".join(lines), failed == 0
