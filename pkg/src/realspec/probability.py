"""Probability that every eigenvalue of ``D_1 ... D_m`` is real, exactly.

``D_i`` is the top-left ``N x N`` block of an ``(L_i + N)``-dimensional Haar
orthogonal matrix.  Three exact routes are available:

* the Gamma-product closed form for a single factor,
* the half-size determinant with Meijer G entries (all ``L_i`` even, or a
  single factor of either parity),
* the orthogonal-product values when every ``L_i`` is zero.

Zero truncations are removed before dispatch since a full orthogonal factor
leaves the probability unchanged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, UnsupportedExactError
from .exact import GradedExact, GradedMatrix, ONE, gamma_half, graded_det
from .meijer import GIndex, g_eval, g_odd_m1

__all__ = [
    "EnsembleSpec",
    "Path",
    "ExactProbability",
    "closed_form_m1",
    "prefactor",
    "entry_alpha",
    "entry_nu",
    "alpha_matrix",
    "probability_exact",
    "special_case_L0",
]


@dataclass(frozen=True)
class EnsembleSpec:
    N: int
    Ls: tuple

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise ContractError(f"N must be a positive integer, got {self.N!r}")
        Ls = tuple(self.Ls)
        if not Ls:
            raise ContractError("at least one truncation parameter is required")
        for L in Ls:
            if not isinstance(L, int) or isinstance(L, bool) or L < 0:
                raise ContractError(f"truncation parameters must be integers >= 0, got {L!r}")
        object.__setattr__(self, "Ls", Ls)

    @property
    def m(self) -> int:
        return len(self.Ls)

    def stripped(self) -> tuple:
        return tuple(L for L in self.Ls if L)


class Path(str, enum.Enum):
    CLOSED_FORM_M1 = "ClosedFormM1"
    DETERMINANT = "Determinant"
    SPECIAL_CASE_L0 = "SpecialCaseL0"


@dataclass(frozen=True)
class ExactProbability:
    value: GradedExact
    path: Path

    @property
    def decimal(self) -> float:
        return float(self.value)

    def __str__(self):
        return str(self.value)


def special_case_L0(N: int, m: int = 1) -> ExactProbability:
    """Product of ``m`` Haar orthogonal ``N x N`` matrices."""
    if N < 1 or m < 1:
        raise ContractError("N and m must be positive")
    value = {1: Fraction(1), 2: Fraction(1, 2)}.get(N, Fraction(0))
    return ExactProbability(GradedExact(value), Path.SPECIAL_CASE_L0)


def closed_form_m1(N: int, L: int) -> ExactProbability:
    """Single truncation: prod_j G(L+j) G((L+j)/2) / (G(L+(N+j-1)/2) G(L/2))."""
    spec = EnsembleSpec(N, (L,))
    if L == 0:
        return special_case_L0(N, 1)
    out = ONE
    for j in range(spec.N):
        out = out * gamma_half(2 * (L + j)) * gamma_half(L + j)
        out = out / (gamma_half(2 * L + N + j - 1) * gamma_half(L))
    return ExactProbability(out, Path.CLOSED_FORM_M1)


def prefactor(spec: EnsembleSpec) -> GradedExact:
    """prod_i prod_{s<N} Gamma((L_i+1+s)/2) / Gamma((s+1)/2)."""
    out = ONE
    for L in spec.Ls:
        for s in range(spec.N):
            out = out * gamma_half(L + 1 + s) / gamma_half(s + 1)
    return out


def entry_alpha(spec: EnsembleSpec, j: int, k: int) -> GradedExact:
    """Matrix element at row ``2j-1``, column ``2k`` of the antisymmetric form."""
    Ls = spec.stripped()
    if not Ls:
        return GradedExact(g_eval(GIndex(j, k, (0,), (0,))))
    if all(L % 2 == 0 for L in Ls):
        half = tuple(L // 2 for L in Ls)
        return GradedExact(g_eval(GIndex(j, k, half, half)))
    if len(Ls) == 1:
        mu = Ls[0] // 2
        return g_odd_m1(mu, j, k, "GEv1" if mu == 0 else "GEv3")
    raise UnsupportedExactError(
        f"no exact entries for Ls={spec.Ls} (odd truncation with m >= 2); "
        "use the numeric path"
    )


def entry_nu(spec: EnsembleSpec, j: int) -> GradedExact:
    """prod_l Gamma(j - 1/2) / Gamma(L_l/2 + j - 1/2)."""
    out = ONE
    for L in spec.Ls:
        out = out * gamma_half(2 * j - 1) / gamma_half(L + 2 * j - 1)
    return out


def alpha_matrix(spec: EnsembleSpec) -> GradedMatrix:
    """Half-size matrix whose determinant gives the probability.

    For odd ``N`` the ``nu`` column is appended last.
    """
    N = spec.N
    n = (N + 1) // 2
    ncols_alpha = N // 2
    rows = []
    for j in range(1, n + 1):
        row = [entry_alpha(spec, j, k) for k in range(1, ncols_alpha + 1)]
        if N % 2:
            row.append(entry_nu(spec, j))
        rows.append(row)
    return GradedMatrix(rows)


def _determinant_path(spec: EnsembleSpec) -> ExactProbability:
    value = prefactor(spec) * graded_det(alpha_matrix(spec))
    return ExactProbability(value, Path.DETERMINANT)


def probability_exact(spec: EnsembleSpec, path: Path | str | None = None) -> ExactProbability:
    """Exact ``p_{N,N}`` for ``spec``.

    ``path`` forces a route (``"Determinant"`` or ``"ClosedFormM1"``);
    by default a single nonzero truncation uses the closed form.
    """
    path = Path(path) if path is not None else None
    Ls = spec.stripped()
    if not Ls:
        return special_case_L0(spec.N, spec.m)
    reduced = EnsembleSpec(spec.N, Ls)
    if path is Path.SPECIAL_CASE_L0:
        raise ContractError("special-case path needs every L_i = 0")
    if len(Ls) == 1 and path in (None, Path.CLOSED_FORM_M1):
        return closed_form_m1(spec.N, Ls[0])
    if path is Path.CLOSED_FORM_M1:
        raise ContractError("closed form needs a single nonzero truncation")
    if len(Ls) > 1 and any(L % 2 for L in Ls):
        raise UnsupportedExactError(
            f"exact value unavailable for Ls={spec.Ls}: odd L_i with m >= 2; "
            "use the numeric command instead"
        )
    return _determinant_path(reduced)
