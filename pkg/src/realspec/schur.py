"""Real eigenvalue counting via Hessenberg reduction and Francis QR.

Only the block structure of the real Schur form is needed, so the
similarity transforms are applied to the active window alone.
"""

import math

import numpy as np
from numba import njit

__all__ = ["count_real_eigenvalues", "schur_blocks", "classify_batch"]

EPS = np.finfo(np.float64).eps


@njit(cache=True)
def _hessenberg(H):
    n = H.shape[0]
    for k in range(n - 2):
        alpha = 0.0
        for i in range(k + 1, n):
            alpha += H[i, k] * H[i, k]
        alpha = math.sqrt(alpha)
        if alpha == 0.0:
            continue
        if H[k + 1, k] > 0:
            alpha = -alpha
        v = np.zeros(n)
        v[k + 1] = H[k + 1, k] - alpha
        for i in range(k + 2, n):
            v[i] = H[i, k]
        vv = 0.0
        for i in range(k + 1, n):
            vv += v[i] * v[i]
        if vv == 0.0:
            continue
        for c in range(n):
            d = 0.0
            for i in range(k + 1, n):
                d += v[i] * H[i, c]
            d *= 2.0 / vv
            for i in range(k + 1, n):
                H[i, c] -= d * v[i]
        for r in range(n):
            d = 0.0
            for i in range(k + 1, n):
                d += H[r, i] * v[i]
            d *= 2.0 / vv
            for i in range(k + 1, n):
                H[r, i] -= d * v[i]
        for i in range(k + 2, n):
            H[i, k] = 0.0


@njit(cache=True)
def _reflect(H, lo, hi, k, nr, x0, x1, x2):
    """Apply the Householder reflector mapping (x0, x1[, x2]) to a multiple of e1.

    Acts on rows/columns k..k+nr-1 restricted to the window [lo, hi].
    """
    norm = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
    if norm == 0.0:
        return
    s = norm if x0 >= 0 else -norm
    v0 = x0 + s
    v1 = x1
    v2 = x2
    vv = v0 * v0 + v1 * v1 + v2 * v2
    q = max(lo, k - 1)
    for c in range(q, hi + 1):
        d = v0 * H[k, c] + v1 * H[k + 1, c]
        if nr == 3:
            d += v2 * H[k + 2, c]
        d *= 2.0 / vv
        H[k, c] -= d * v0
        H[k + 1, c] -= d * v1
        if nr == 3:
            H[k + 2, c] -= d * v2
    r_end = min(k + 3, hi)
    for r in range(lo, r_end + 1):
        d = H[r, k] * v0 + H[r, k + 1] * v1
        if nr == 3:
            d += H[r, k + 2] * v2
        d *= 2.0 / vv
        H[r, k] -= d * v0
        H[r, k + 1] -= d * v1
        if nr == 3:
            H[r, k + 2] -= d * v2


@njit(cache=True)
def _francis_step(H, lo, hi, s, t):
    x = H[lo, lo] * H[lo, lo] + H[lo, lo + 1] * H[lo + 1, lo] - s * H[lo, lo] + t
    y = H[lo + 1, lo] * (H[lo, lo] + H[lo + 1, lo + 1] - s)
    z = H[lo + 1, lo] * H[lo + 2, lo + 1]
    for k in range(lo, hi - 1):
        _reflect(H, lo, hi, k, 3, x, y, z)
        x = H[k + 1, k]
        y = H[k + 2, k]
        if k < hi - 2:
            z = H[k + 3, k]
    _reflect(H, lo, hi, hi - 1, 2, x, y, 0.0)


@njit(cache=True)
def schur_blocks(M, max_iter_factor=30):
    """Eigenvalues of ``M`` grouped by Schur block.

    Returns ``(re, im, kind, ok)``: ``kind[i]`` is 1 for a 1x1 block and 2
    for an eigenvalue of a 2x2 block; ``ok`` is False on non-convergence.
    """
    n = M.shape[0]
    H = M.copy()
    _hessenberg(H)
    re = np.zeros(n)
    im = np.zeros(n)
    kind = np.zeros(n, dtype=np.int64)
    anorm = 0.0
    for i in range(n):
        for j in range(max(i - 1, 0), n):
            anorm += abs(H[i, j])
    hi = n - 1
    its = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            sc = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if sc == 0.0:
                sc = anorm
            if abs(H[lo, lo - 1]) <= EPS * sc:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            re[hi] = H[hi, hi]
            kind[hi] = 1
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            a = H[hi - 1, hi - 1]
            b = H[hi - 1, hi]
            c = H[hi, hi - 1]
            d = H[hi, hi]
            p = 0.5 * (a - d)
            disc = p * p + b * c
            mid = 0.5 * (a + d)
            if disc >= 0.0:
                r = math.sqrt(disc)
                re[hi - 1] = mid + r
                re[hi] = mid - r
            else:
                r = math.sqrt(-disc)
                re[hi - 1] = mid
                re[hi] = mid
                im[hi - 1] = r
                im[hi] = -r
            kind[hi - 1] = 2
            kind[hi] = 2
            hi -= 2
            its = 0
            continue
        if its >= max_iter_factor * n:
            return re, im, kind, False
        its += 1
        if its == 10 or its == 20:
            sh = abs(H[hi, hi - 1]) + abs(H[hi - 1, hi - 2])
            s = 1.5 * sh
            t = sh * sh
        else:
            s = H[hi - 1, hi - 1] + H[hi, hi]
            t = H[hi - 1, hi - 1] * H[hi, hi] - H[hi - 1, hi] * H[hi, hi - 1]
        _francis_step(H, lo, hi, s, t)
    return re, im, kind, True


@njit(cache=True)
def _count(re, im, tol):
    cnt = 0
    rho = 0.0
    for i in range(re.shape[0]):
        mod = math.sqrt(re[i] * re[i] + im[i] * im[i])
        rho = max(rho, mod)
        if abs(im[i]) <= tol * (1.0 + mod):
            cnt += 1
    return cnt, rho


@njit(cache=True, nogil=True)
def classify_batch(mats, tol):
    """Real-eigenvalue count and spectral radius of each matrix; count -1 on failure."""
    B = mats.shape[0]
    counts = np.empty(B, dtype=np.int64)
    radii = np.empty(B)
    for b in range(B):
        re, im, kind, ok = schur_blocks(mats[b])
        if not ok:
            counts[b] = -1
            radii[b] = np.nan
            continue
        c, r = _count(re, im, tol)
        counts[b] = c
        radii[b] = r
    return counts, radii


def count_real_eigenvalues(M, imag_tolerance=1e-8):
    """Number of real eigenvalues of a real square matrix.

    A complex-pair block counts as two real eigenvalues when
    ``|Im| <= imag_tolerance * (1 + |lambda|)``.

    Raises
    ------
    ConvergenceError
        If the QR iteration exceeds ``30 N`` sweeps for one eigenvalue.
    """
    from .errors import ConvergenceError

    M = np.ascontiguousarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("square matrix required")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    re, im, kind, ok = schur_blocks(M)
    if not ok:
        raise ConvergenceError("Francis QR iteration did not converge")
    return int(_count(re, im, float(imag_tolerance))[0])
