"""Exact values at ``z = 1`` of the Meijer G family used by the determinant.

A :class:`GIndex` ``(j, k, alphas, betas)`` denotes

    G^{m+1,m}_{2m+1,2m+1}( 3/2-j, ..., 3/2-j ; 1, k+alpha_1, ..., k+alpha_m
                           0, k, ..., k ; 3/2-j-beta_1, ..., 3/2-j-beta_m | 1 )

with integer shifts.  :func:`g_eval` evaluates it by the three-term
contiguous relation

    G(alpha_p - 1) + G(beta_q - 1) = (alpha_p + beta_q + j + k - 5/2) G

descending to the zero-shift identities.  The finite-sum closed forms
(:func:`k_closed_form`, :func:`g55_munu`, :func:`g_odd_m1`) are separate
code paths and serve as oracles for the recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContractError, DomainError
from .exact import GradedExact, ZERO, gamma_half

__all__ = [
    "GIndex",
    "pascal_coeff",
    "g_base_id2",
    "g_eval",
    "g_eval_uncached",
    "k_closed_form",
    "g33_munu",
    "g55_munu",
    "g_odd_m1",
]

HALF = Fraction(1, 2)


def _check_pos(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class GIndex:
    j: int
    k: int
    alphas: tuple
    betas: tuple

    def __post_init__(self):
        _check_pos(j=self.j, k=self.k)
        alphas = tuple(self.alphas)
        betas = tuple(self.betas)
        if len(alphas) != len(betas) or not alphas:
            raise ContractError("alphas and betas must be nonempty and of equal length")
        for v in alphas + betas:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ContractError(f"shifts must be nonnegative integers, got {v!r}")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    @property
    def m(self) -> int:
        return len(self.alphas)

    def padded(self, extra: int = 1) -> "GIndex":
        return GIndex(self.j, self.k, self.alphas + (0,) * extra, self.betas + (0,) * extra)


def pascal_coeff(i: int, jj: int) -> Fraction:
    """``C_{i,j} = binom(i + j - 2, j - 1)``, the tilted Pascal triangle."""
    _check_pos(i=i, jj=jj)
    return Fraction(math.comb(i + jj - 2, jj - 1))


def g_base_id2(idx: GIndex) -> Fraction:
    """All top shifts zero: ``prod_s prod_{r=1}^{beta_s} 1/(j + r - 3/2)``."""
    if any(idx.alphas):
        raise ContractError("g_base_id2 requires all alphas = 0")
    if not any(idx.betas):
        raise ContractError("g_base_id2 requires some beta > 0")
    out = Fraction(1)
    for b in idx.betas:
        for r in range(1, b + 1):
            out /= idx.j + r - Fraction(3, 2)
    return out


def _pick_smallest(shifts):
    return next(i for i, v in enumerate(shifts) if v > 0)


def _pick_largest(shifts):
    return max(i for i, v in enumerate(shifts) if v > 0)


def _step(idx: GIndex, choose, recurse) -> Fraction:
    a, b = idx.alphas, idx.betas
    any_a, any_b = any(a), any(b)
    if not any_a and not any_b:
        # Theta(1 - |z|) taken as 1/2 on the jump at z = 1
        return HALF
    if not any_b:
        return Fraction(0)
    if not any_a:
        return g_base_id2(idx)
    p, q = choose(a), choose(b)
    da = a[:p] + (a[p] - 1,) + a[p + 1:]
    db = b[:q] + (b[q] - 1,) + b[q + 1:]
    num = recurse(GIndex(idx.j, idx.k, da, b)) + recurse(GIndex(idx.j, idx.k, a, db))
    return num / (a[p] + b[q] + idx.j + idx.k - Fraction(5, 2))


@lru_cache(maxsize=None)
def g_eval(idx: GIndex) -> Fraction:
    """Exact rational G value for ``idx``, memoised on the full index."""
    return _step(idx, _pick_smallest, g_eval)


def g_eval_uncached(idx: GIndex, strategy: str = "smallest", memo: dict | None = None) -> Fraction:
    """Evaluation independent of the shared cache.

    ``strategy`` (``"smallest"`` or ``"largest"``) picks which positive
    shift each step decrements.  Pass a dict as ``memo`` to reuse results
    within one call tree only.
    """
    choose = {"smallest": _pick_smallest, "largest": _pick_largest}[strategy]

    def rec(i):
        if memo is None:
            return _step(i, choose, rec)
        if i not in memo:
            memo[i] = _step(i, choose, rec)
        return memo[i]

    return rec(idx)


def _ratio(num_args, den_args) -> GradedExact:
    """prod Gamma(n/2) / prod Gamma(d/2) for doubled integer arguments."""
    out = GradedExact(Fraction(1))
    for n in num_args:
        out = out * gamma_half(n)
    for d in den_args:
        out = out / gamma_half(d)
    return out


def _k_graded(mu, nu, j, k) -> GradedExact:
    # arguments doubled so that half-integers become odd ints
    total = ZERO
    for r in range(1, nu + 1):
        total = total + _ratio(
            [2 * (j + k + r) - 3, 2 * (mu + nu - r)], [2 * (j + r) - 1, 2 * (nu - r + 1)]
        )
    return total * _ratio([2 * j - 1], [2 * mu, 2 * (mu + nu + j + k) - 3])


def k_closed_form(mu: int, nu: int, j: int, k: int) -> Fraction:
    """The single finite sum ``K^{mu,nu}_{j,k}``."""
    _check_pos(mu=mu, nu=nu, j=j, k=k)
    return _k_graded(mu, nu, j, k).as_fraction()


def g33_munu(mu: int, nu: int, j: int, k: int) -> Fraction:
    """G^{2,1}_{3,3} with top shift ``mu`` and bottom shift ``nu``."""
    return k_closed_form(mu, nu, j, k)


def g55_munu(mu: int, nu: int, j: int, k: int) -> Fraction:
    """G^{3,2}_{5,5} with paired shifts ``alphas = betas = (mu, nu)``."""
    _check_pos(mu=mu, nu=nu, j=j, k=k)
    total = ZERO
    for xi in range(1, mu + 1):
        wx = _ratio(
            [2 * (2 * mu - xi), 2 * (xi + j + k) - 3],
            [2 * mu, 2 * (mu - xi + 1), 2 * (2 * mu + j + k) - 3],
        )
        for eta in range(1, nu + 1):
            we = _ratio(
                [2 * (2 * nu - eta), 2 * (eta + j + k) - 3],
                [2 * nu, 2 * (nu - eta + 1), 2 * (2 * nu + j + k) - 3],
            )
            inner = (
                _k_graded(xi, eta, j, k)
                + _k_graded(eta, xi, j, k)
                + _ratio([2 * j - 1, 2 * j - 1], [2 * (xi + j) - 1, 2 * (eta + j) - 1])
            )
            total = total + wx * we * inner
    return total.as_fraction()


INV_SQRT_PI = GradedExact(Fraction(1), -1)


def _gev1(mu, j, k):
    # top shift mu + 1/2, bottom shift 1/2
    s = ZERO
    for a in range(1, k + 1):
        s = s + _ratio([2 * (a + mu), 2 * (j + k - a) - 1], [2 * (a + mu) + 1, 2 * (k - a + 1)])
    return s * _ratio([2 * k], [2 * (j + k + mu) - 1]) * INV_SQRT_PI


def _gev2(nu, j, k):
    # top shift 1/2, bottom shift nu + 1/2
    s = ZERO
    for a in range(1, k + 1):
        s = s + _ratio([2 * (a + nu), 2 * (j + k - a) - 1], [2 * a + 1, 2 * (k - a + 1)])
    return s * _ratio([2 * k], [2 * nu + 1, 2 * (j + k + nu) - 1])


def _gev3(mu, j, k):
    # both shifts mu + 1/2
    s = ZERO
    for r in range(1, mu + 1):
        for a in range(1, k + 1):
            w = _ratio(
                [2 * k, 2 * (r + a), 2 * (2 * mu - r), 2 * (j + k - a) - 1],
                [2 * mu, 2 * (k - a + 1), 2 * (mu - r + 1), 2 * (j + k + 2 * mu) - 1],
            )
            bracket = INV_SQRT_PI / gamma_half(2 * (r + a) + 1) + _ratio(
                [], [2 * a + 1, 2 * r + 1]
            )
            s = s + w * bracket
    return s


def g_odd_m1(mu: int, j: int, k: int, variant: str = "GEv3") -> GradedExact:
    """m = 1 values with half-integer shifts, as ``rational / pi``.

    ``variant`` selects the shift pattern: ``"GEv1"`` (top ``mu + 1/2``,
    bottom ``1/2``), ``"GEv2"`` (top ``1/2``, bottom ``mu + 1/2``) or
    ``"GEv3"`` (both ``mu + 1/2``; needs ``mu >= 1``).  These sums were
    found by computer algebra; the test suite checks them against
    quadrature.
    """
    _check_pos(j=j, k=k)
    if not isinstance(mu, int) or isinstance(mu, bool) or mu < 0:
        raise DomainError(f"mu must be a nonnegative integer, got {mu!r}")
    if variant == "GEv1":
        return _gev1(mu, j, k)
    if variant == "GEv2":
        return _gev2(mu, j, k)
    if variant == "GEv3":
        if mu < 1:
            raise DomainError("GEv3 needs mu >= 1; use GEv1 for mu = 0")
        return _gev3(mu, j, k)
    raise ContractError(f"unknown variant {variant!r}")
