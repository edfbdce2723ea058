"""Floating-point oracle for the weight, the matrix elements and p_{N,N}.

Everything is computed in the logarithmic variable ``U = -log|x|``, where
the multiplicative convolution defining the weight becomes an additive one
and the logarithmic blow-up of the weight at ``x = 0`` moves to ``U = inf``.

Pointwise weights use Gauss-Jacobi rules that absorb the endpoint powers of
each convolution factor.  Integrals over ``(0, 1)`` use a composite
Chebyshev rule on panels in ``U`` that are geometrically graded towards
``U = 0`` (``|x| = 1``, where the weight may be singular).  Every quantity
is computed at two resolutions and the difference is the reported error.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.special import gammaln, roots_jacobi

from .errors import AccuracyError, ContractError, DomainError
from .probability import EnsembleSpec

__all__ = [
    "weight_numeric",
    "weight_u",
    "WeightTable",
    "alpha_numeric",
    "entry_alpha_numeric",
    "nu_numeric",
    "prefactor_numeric",
    "probability_numeric",
    "probability_direct_smallN",
    "Estimate",
]

U_MAX = 42.0


@dataclass(frozen=True)
class Estimate:
    value: float
    error: float

    def __float__(self):
        return self.value


def _h(u, a):
    """((1 - exp(-2u)) / u) ** a, smooth on [0, inf)."""
    u = np.asarray(u, dtype=float)
    if a == 0:
        return np.ones_like(u)
    safe = np.where(u > 0, u, 1.0)
    base = np.where(u > 0, -np.expm1(-2.0 * safe) / safe, 2.0)
    return base**a


@lru_cache(maxsize=None)
def _jacobi01(n, a, b):
    """Nodes/weights on [0, 1] for the weight tau**a (1 - tau)**b."""
    x, w = roots_jacobi(n, b, a)
    return (1.0 + x) / 2.0, w * 2.0 ** (-a - b - 1.0)


def _exponents(Ls):
    a = [L / 2.0 - 1.0 for L in Ls]
    s = [a[0]]
    for ai in a[1:]:
        s.append(s[-1] + ai + 1.0)
    return a, s


def _reduced(Ls, U, n):
    """F_m(U) / U**s_m for the unnormalised convolution F_m."""
    a, s = _exponents(Ls)
    U = np.asarray(U, dtype=float)

    def level(i, u):
        if i == 0:
            return _h(u, a[0])
        tau, wts = _jacobi01(n, a[i], s[i - 1])
        ut = u[..., None] * tau
        inner = level(i - 1, (u[..., None] - ut).reshape(-1)).reshape(ut.shape)
        return 2.0 * np.sum(wts * _h(ut, a[i]) * inner, axis=-1)

    return level(len(Ls) - 1, U)


def _norm(Ls):
    return math.exp(-sum(gammaln(L / 2.0) for L in Ls))


def weight_u(Ls, U, n=48, with_error=False):
    """Weight as a function of ``U = -log|x|`` (vectorised).

    Zero truncations are dropped; with none left the weight is the
    indicator of ``|x| < 1``.
    """
    Ls = tuple(L for L in Ls if L)
    U = np.asarray(U, dtype=float)
    if not Ls:
        val = np.ones_like(U)
        return (val, np.zeros_like(U)) if with_error else val
    s = _exponents(Ls)[1][-1]
    scale = _norm(Ls) * U**s
    lo = _reduced(Ls, U, n) * scale
    if not with_error:
        return lo
    hi = _reduced(Ls, U, 2 * n) * scale
    return hi, np.abs(hi - lo)


def weight_numeric(Ls, x: float, rtol: float = 1e-8) -> float:
    """w_m(x) for ``0 < x < 1``, by convolution of the single-factor weights."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"weight_numeric needs 0 < x < 1, got {x!r}")
    U = -math.log(x)
    val, err = weight_u(Ls, np.array([U]), with_error=True)
    val, err = float(val[0]), float(err[0])
    if err > rtol * max(abs(val), 1e-300):
        raise AccuracyError(f"weight at x={x}: estimated relative error {err / val:.2e}", err)
    return val


class _Grid:
    """Composite Chebyshev panels on [0, U_MAX] with cumulative integration."""

    def __init__(self, order):
        edges = [0.0] + [4.0**-k for k in range(27, -1, -1)]
        edges += list(np.arange(2.0, U_MAX + 1.0))
        self.edges = np.array(edges)
        t = np.cos(np.pi * (np.arange(order) + 0.5) / order)[::-1]
        V = C.chebvander(t, order - 1)
        Vinv = np.linalg.inv(V)
        ints = np.zeros((order + 1, order))
        for l in range(order):
            ints[:, l] = C.chebint(np.eye(order)[l], lbnd=-1.0)
        cum = C.chebvander(t, order) @ ints @ Vinv
        tot = C.chebval(1.0, ints) @ Vinv
        a, b = self.edges[:-1], self.edges[1:]
        half = (b - a) / 2.0
        self.nodes = (a[:, None] + half[:, None] * (t + 1.0)).reshape(-1)
        self.order = order
        self.npanel = len(a)
        self._half = half
        self._cum = cum
        self._tot = tot
        self.weights = (half[:, None] * tot).reshape(-1)

    def integrate(self, f):
        return float(np.dot(self.weights, f))

    def tail(self, f):
        """int_{U}^{U_MAX} f at every node."""
        fp = f.reshape(self.npanel, self.order)
        within = (fp @ self._cum.T) * self._half[:, None]
        totals = (fp @ self._tot) * self._half
        after = np.concatenate([np.cumsum(totals[::-1])[::-1][1:], [0.0]])
        return (totals[:, None] - within + after[:, None]).reshape(-1)


class WeightTable:
    """Weight tabulated on the quadrature nodes of two Chebyshev grids.

    The coarse/fine pair gives the a-posteriori error estimate of every
    integral built on the table.  Construction is deterministic, so a table
    can be shared read-only.
    """

    def __init__(self, Ls, orders=(16, 24)):
        self.Ls = tuple(Ls)
        self.grids = [_Grid(o) for o in orders]
        self.values = [weight_u(self.Ls, g.nodes) for g in self.grids]

    def moments(self, p, grid):
        """Return (x, w, M_p(x), T_p) on ``grid`` with M_p(y) = int_0^y w x^p dx."""
        g = self.grids[grid]
        U = g.nodes
        x = np.exp(-U)
        w = self.values[grid]
        # dx = x dU, orientation reversed
        f = w * x ** (p + 1)
        return x, w, g.tail(f), g.integrate(f)


@lru_cache(maxsize=64)
def _table(Ls):
    return WeightTable(Ls)


def _resolve(values, tol, what):
    coarse, fine = values
    err = abs(fine - coarse)
    if err > tol:
        raise AccuracyError(f"{what}: estimated error {err:.2e} exceeds {tol:.1e}", err)
    return Estimate(fine, err)


def _check_weight(Ls):
    Ls = tuple(int(L) for L in Ls)
    if any(L < 0 for L in Ls):
        raise ContractError("truncation parameters must be >= 0")
    if not any(Ls):
        raise ContractError(
            "every L_i = 0: the eigenvalues sit on the unit circle and the weight "
            "integrals do not apply; use the exact special case"
        )
    return tuple(L for L in Ls if L)


def nu_numeric(Ls, j: int, tol: float = 1e-8) -> Estimate:
    """int_{-1}^{1} w(x) x^(j-1) dx by quadrature."""
    Ls = _check_weight(Ls)
    if j < 1:
        raise DomainError("j must be >= 1")
    t = _table(Ls)
    p = j - 1
    if p % 2:
        return Estimate(0.0, 0.0)
    vals = [2.0 * t.moments(p, g)[3] for g in (0, 1)]
    return _resolve(vals, tol, f"nu_{j}")


def _sgn_integral(p, M, T, sign):
    """int w x^p sgn(y - x) dx at y = sign * |y|, from M_p(|y|) and T_p."""
    par = (-1.0) ** p
    if sign > 0:
        return 2.0 * M + (par - 1.0) * T
    return par * T - 2.0 * par * M - T


def alpha_numeric(Ls, row: int, col: int, tol: float = 1e-8, Ls_y=None) -> Estimate:
    """Raw antisymmetric element int int w(x) w(y) x^(row-1) y^(col-1) sgn(y-x).

    The sign kernel is split at the diagonal: the inner integral is the
    cumulative moment of the weight, so only one-dimensional rules occur.
    ``Ls_y`` gives the ``y`` factor its own weight (default: same as ``x``).
    """
    Ls = _check_weight(Ls)
    Ls_y = Ls if Ls_y is None else _check_weight(Ls_y)
    if row < 1 or col < 1:
        raise DomainError("indices must be >= 1")
    tx, ty = _table(Ls), _table(Ls_y)
    p, q = row - 1, col - 1
    vals = []
    for gi in (0, 1):
        g = tx.grids[gi]
        x, _, M, T = tx.moments(p, gi)
        inner = _sgn_integral(p, M, T, +1) + (-1.0) ** q * _sgn_integral(p, M, T, -1)
        vals.append(g.integrate(ty.values[gi] * x ** (q + 1) * inner))
    return _resolve(vals, tol, f"alpha_{row},{col}")


def entry_alpha_numeric(Ls, j: int, k: int, tol: float = 1e-8) -> Estimate:
    """Element at row ``2j-1`` and column ``2k``, matching ``entry_alpha``."""
    return alpha_numeric(Ls, 2 * j - 1, 2 * k, tol)


def prefactor_numeric(spec: EnsembleSpec) -> float:
    lg = 0.0
    for L in spec.Ls:
        for s in range(spec.N):
            lg += gammaln((L + 1 + s) / 2.0) - gammaln((s + 1) / 2.0)
    return math.exp(lg)


def probability_numeric(spec: EnsembleSpec, tol: float = 1e-8) -> Estimate:
    """Floating-point determinant formula with quadrature entries."""
    Ls = _check_weight(spec.Ls)
    N = spec.N
    n = (N + 1) // 2
    A = np.zeros((n, n))
    E = np.zeros((n, n))
    for j in range(1, n + 1):
        for k in range(1, N // 2 + 1):
            e = entry_alpha_numeric(Ls, j, k, tol)
            A[j - 1, k - 1], E[j - 1, k - 1] = e.value, e.error
        if N % 2:
            e = nu_numeric(Ls, 2 * j - 1, tol)
            A[j - 1, -1], E[j - 1, -1] = e.value, e.error
    pre = prefactor_numeric(spec)
    det = float(np.linalg.det(A))
    # first-order propagation through the cofactors
    if n == 1:
        cof = np.ones((1, 1))
    else:
        cof = np.array(
            [[(-1) ** (r + c) * np.linalg.det(np.delete(np.delete(A, r, 0), c, 1))
              for c in range(n)] for r in range(n)]
        )
    err = pre * float(np.sum(np.abs(cof) * E))
    return Estimate(pre * det, err)


def probability_direct_smallN(spec: EnsembleSpec, tol: float = 1e-7) -> Estimate:
    """Ordered-region integral with the Vandermonde factor, for N <= 3.

    The Vandermonde product is expanded into monomials and each ordered
    monomial integral is an iterated cumulative integral over [-1, 1].
    """
    N = spec.N
    if N not in (1, 2, 3):
        raise ContractError("probability_direct_smallN supports N in {1, 2, 3}")
    Ls = _check_weight(spec.Ls)
    t = _table(Ls)
    pre = prefactor_numeric(spec)
    vals = []
    for gi in (0, 1):
        g = t.grids[gi]
        U = g.nodes
        w = t.values[gi]
        xpos = np.exp(-U)
        # x on [-1, 0): node order along increasing x is the U order;
        # on (0, 1]: reversed U order
        x_full = np.concatenate([-xpos, xpos[::-1]])
        w_full = np.concatenate([w, w[::-1]])

        def cumulate(f):
            """int_{-1}^{x} f at every node of x_full."""
            fn, fp = f[: len(U)], f[len(U):][::-1]
            left = g.integrate(fn * xpos)
            below_neg = left - g.tail(fn * xpos)
            below_pos = left + g.tail(fp * xpos)
            return np.concatenate([below_neg, below_pos[::-1]])

        def ordered(exps):
            acc = np.ones_like(x_full)
            for e in exps[::-1][:-1]:
                acc = cumulate(w_full * x_full**e * acc)
            f = w_full * x_full ** exps[0] * acc
            fn, fp = f[: len(U)], f[len(U):][::-1]
            return g.integrate(fn * xpos) + g.integrate(fp * xpos)

        total = 0.0
        for perm in itertools.permutations(range(N)):
            sign = _perm_sign(perm)
            exps = [N - 1 - perm[i] for i in range(N)]
            total += sign * ordered(exps)
        vals.append(pre * total)
    return _resolve(vals, tol, f"direct N={N}")


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign
