"""Exit criteria of the build, one test per criterion.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion
in the terminal summary.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from realspec.exact import GradedExact
from realspec.meijer import (
    GIndex,
    g55_munu,
    g_eval,
    g_eval_uncached,
    k_closed_form,
    pascal_coeff,
)
from realspec.montecarlo import MCConfig, estimate
from realspec.numeric import nu_numeric, probability_direct_smallN, probability_numeric
from realspec.probability import EnsembleSpec, Path, closed_form_m1, probability_exact

CATALAN = 0.915965594177219015054603514932

TABLE1 = [
    ((2, 2, 2), Fraction(20, 27)), ((3, 2, 2), Fraction(1312, 3375)),
    ((2, 2, 4), Fraction(1184, 1575)), ((3, 2, 4), Fraction(4544, 11025)),
    ((2, 2, 6), Fraction(6112, 8085)), ((3, 2, 6), Fraction(665216, 1576575)),
    ((2, 4, 4), Fraction(97984, 128625)), ((3, 4, 4), Fraction(1504768, 3472875)),
    ((2, 4, 6), Fraction(649984, 848925)), ((3, 4, 6), Fraction(161046016, 364188825)),
]


@pytest.mark.criterion(1, "reference table reproduced bit-exactly in < 1 s")
def test_c1_reference_table(criterion):
    g_eval.cache_clear()
    t0 = time.perf_counter()
    got = {key: probability_exact(EnsembleSpec(key[0], key[1:])).value for key, _ in TABLE1}
    dt = time.perf_counter() - t0
    criterion.detail = f"{dt:.3f} s"
    for key, want in TABLE1:
        assert got[key] == GradedExact(want), key
    assert dt < 1.0


@pytest.mark.criterion(2, "determinant path equals closed form (even and odd L) in < 10 s")
def test_c2_determinant_vs_closed_form(criterion):
    t0 = time.perf_counter()
    for N, L in itertools.product(range(1, 9), (2, 4, 6, 8)):
        det = probability_exact(EnsembleSpec(N, (L,)), Path.DETERMINANT).value
        assert det == closed_form_m1(N, L).value, (N, L)
    for N, L in itertools.product(range(1, 6), (1, 3, 5)):
        det = probability_exact(EnsembleSpec(N, (L,)), Path.DETERMINANT).value
        assert det == closed_form_m1(N, L).value, (N, L)
        assert det.grade == -2 * (N // 2)
    dt = time.perf_counter() - t0
    criterion.detail = f"{dt:.3f} s"
    assert dt < 10.0


@pytest.mark.criterion(3, "finite-sum closed forms equal the recursion in < 5 s")
def test_c3_closed_forms(criterion):
    g_eval.cache_clear()
    t0 = time.perf_counter()
    for mu, nu, j, k in itertools.product(range(1, 5), repeat=4):
        assert k_closed_form(mu, nu, j, k) == g_eval(GIndex(j, k, (mu,), (nu,)))
    for mu, nu, j, k in itertools.product(range(1, 4), repeat=4):
        assert g55_munu(mu, nu, j, k) == g_eval(GIndex(j, k, (mu, nu), (mu, nu)))
    dt = time.perf_counter() - t0
    criterion.detail = f"{dt:.3f} s"
    assert dt < 5.0


@pytest.mark.criterion(4, "all-zero special cases and zero-padding invariance")
def test_c4_special_cases(criterion):
    want = {1: Fraction(1), 2: Fraction(1, 2)}
    for N in range(1, 8):
        for m in range(1, 5):
            v = probability_exact(EnsembleSpec(N, (0,) * m)).value
            assert v == GradedExact(want.get(N, Fraction(0)))
    rng = random.Random(2017)
    for _ in range(20):
        N = rng.randint(1, 5)
        Ls = [rng.choice([1, 2, 3, 4, 6]) if rng.random() < 0.5 else rng.choice([2, 4])
              for _ in range(rng.randint(1, 2))]
        if len(Ls) > 1:
            Ls = [L + L % 2 for L in Ls]
        padded = Ls + [0] * rng.randint(1, 3)
        rng.shuffle(padded)
        assert probability_exact(EnsembleSpec(N, tuple(padded))).value == \
            probability_exact(EnsembleSpec(N, tuple(Ls))).value
    criterion.detail = "20 random padded specs"


@pytest.mark.criterion(5, "numeric oracle triangulation in < 60 s")
def test_c5_numeric_oracle(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for (N, L1, L2), want in TABLE1:
        spec = EnsembleSpec(N, (L1, L2))
        num = probability_numeric(spec).value
        worst = max(worst, abs(num - float(want)))
        assert abs(num - float(want)) <= 1e-6
        if N <= 3:
            assert abs(probability_direct_smallN(spec).value - float(want)) <= 1e-5
    for N in (1, 2, 3):
        for Ls in [(2,), (3,), (1, 2), (2, 4)]:
            spec = EnsembleSpec(N, Ls)
            assert abs(probability_direct_smallN(spec).value - probability_numeric(spec).value) <= 1e-5
    p22 = probability_numeric(EnsembleSpec(2, (1, 2))).value
    p33 = probability_numeric(EnsembleSpec(3, (1, 2))).value
    assert abs(p22 - 0.724891) <= 1e-5
    # decimal of (38 G - 1) / (30 pi); see test_c5_literal_decimal
    assert abs(p33 - (38 * CATALAN - 1) / (30 * math.pi)) <= 1e-5
    assert abs(p33 - 0.358700) <= 1e-5
    dt = time.perf_counter() - t0
    criterion.detail = f"max table error {worst:.1e}, {dt:.2f} s"
    assert dt < 60.0


@pytest.mark.criterion("5b", "literal decimal 0.358520 for N=3, Ls=(1,2)")
@pytest.mark.xfail(strict=True, reason="(38G-1)/(30 pi) evaluates to 0.358700, not 0.358520")
def test_c5_literal_decimal(criterion):
    p33 = probability_numeric(EnsembleSpec(3, (1, 2))).value
    criterion.detail = f"computed {p33:.6f}"
    assert abs(p33 - 0.358520) <= 1e-5


@pytest.mark.criterion(6, "Monte Carlo within 3 standard errors (1e5 trials) in < 60 s")
def test_c6_monte_carlo(criterion):
    t0 = time.perf_counter()
    cases = [
        ((2, (2, 2)), 20 / 27),
        ((3, (2, 4)), 4544 / 11025),
        ((2, (0,)), 0.5),
        ((2, (1, 2)), (2 * CATALAN + 5) / (3 * math.pi)),
    ]
    zs = []
    for (N, Ls), exact in cases:
        est = estimate(MCConfig(EnsembleSpec(N, Ls), trials=100_000, seed=1))
        assert sum(est.counts.values()) == 100_000
        assert all(k % 2 == N % 2 for k in est.counts)
        assert est.max_spectral_radius <= 1 + 1e-10
        z = (est.p_all_real - exact) / est.stderr
        zs.append(z)
        assert abs(z) <= 3.0, (N, Ls, est.p_all_real, exact)
    dt = time.perf_counter() - t0
    criterion.detail = "z = " + ", ".join(f"{z:+.2f}" for z in zs) + f"; {dt:.1f} s"
    assert dt < 60.0


@pytest.mark.criterion(7, "closed form monotone in L and near 2^(-1/2) at L = 200")
def test_c7_gaussian_limit(criterion):
    vals = [closed_form_m1(2, L).decimal for L in range(2, 201, 2)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    gap = abs(vals[-1] - 2 ** -0.5)
    criterion.detail = f"|p(200) - 2^(-1/2)| = {gap:.2e}"
    assert gap <= 1e-2


@pytest.mark.criterion(8, "property suites")
def test_c8_properties(criterion):
    ms, ml = {}, {}
    for m in (1, 2):
        for j, k in itertools.product(range(1, 4), repeat=2):
            for sh in itertools.product(range(4), repeat=2 * m):
                idx = GIndex(j, k, sh[:m], sh[m:])
                assert g_eval_uncached(idx, "smallest", ms) == g_eval_uncached(idx, "largest", ml)
    for i in range(2, 7):
        for j in range(1, 7):
            assert pascal_coeff(i, j) == sum(pascal_coeff(i - 1, r) for r in range(1, j + 1))
    for N in (2, 3, 4):
        base = probability_exact(EnsembleSpec(N, (2, 4, 6))).value
        for perm in itertools.permutations((2, 4, 6)):
            assert probability_exact(EnsembleSpec(N, perm)).value == base
    for Ls in [(2,), (4,), (2, 2), (1, 2), (2, 4)]:
        want = math.prod(math.gamma(0.5) / math.gamma(L / 2 + 0.5) for L in Ls)
        assert abs(nu_numeric(Ls, 1).value - want) <= 1e-7
    cfg = MCConfig(EnsembleSpec(3, (2, 4)), 10_000, 123)
    assert estimate(cfg).counts == estimate(cfg, threads=2).counts
    criterion.detail = "choice invariance, Pascal, symmetry, normalisation, MC determinism"
