"""Monte Carlo estimate of the real-eigenvalue count of truncated products.

Trials are grouped in fixed-size blocks and block ``b`` draws from the
stream ``SeedSequence([seed, b])``; the estimate therefore depends only on
``(spec, trials, seed)`` and not on how blocks are scheduled over threads.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .probability import EnsembleSpec
from .schur import classify_batch

__all__ = [
    "MCConfig",
    "MCEstimate",
    "sample_haar_orthogonal",
    "sample_product",
    "sample_products",
    "estimate",
    "BLOCK",
]

BLOCK = 4096


@dataclass(frozen=True)
class MCConfig:
    spec: EnsembleSpec
    trials: int = 100_000
    seed: int = 1
    imag_tolerance: float = 1e-8

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ContractError("trials must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ContractError("seed must be a 64-bit unsigned integer")
        if not self.imag_tolerance >= 0:
            raise ContractError("imag_tolerance must be >= 0")


@dataclass
class MCEstimate:
    counts: dict
    trials: int
    seed: int
    N: int
    failures: int = 0
    max_spectral_radius: float = 0.0
    p_all_real: float = field(init=False)
    stderr: float = field(init=False)

    def __post_init__(self):
        self.p_all_real = self.counts.get(self.N, 0) / self.trials
        p = self.p_all_real
        self.stderr = math.sqrt(p * (1.0 - p) / self.trials)

    def z_score(self, exact: float) -> float:
        """Deviation from ``exact`` in units of the binomial standard error at ``exact``."""
        se = math.sqrt(exact * (1.0 - exact) / self.trials) or self.stderr or 1.0
        return (self.p_all_real - exact) / se


def _haar(rng, n, batch=None):
    shape = (n, n) if batch is None else (batch, n, n)
    Z = rng.standard_normal(shape)
    Q, R = np.linalg.qr(Z)
    d = np.sign(np.diagonal(R, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    return Q * d[..., None, :]


def sample_haar_orthogonal(n: int, rng) -> np.ndarray:
    """Haar-distributed ``n x n`` orthogonal matrix (sign-corrected QR)."""
    if n < 1:
        raise ContractError("n must be >= 1")
    return _haar(rng, n)


def sample_products(spec: EnsembleSpec, rng, batch: int) -> np.ndarray:
    """``batch`` independent draws of ``D_1 ... D_m``, shape (batch, N, N)."""
    N = spec.N
    P = None
    for L in spec.Ls:
        D = _haar(rng, L + N, batch)[:, :N, :N]
        P = D if P is None else P @ D
    return np.ascontiguousarray(P)


def sample_product(spec: EnsembleSpec, rng) -> np.ndarray:
    return sample_products(spec, rng, 1)[0]


def _run_block(config: MCConfig, b: int, size: int):
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, b]))
    mats = sample_products(config.spec, rng, size)
    counts, radii = classify_batch(mats, config.imag_tolerance)
    failures = 0
    bad = np.flatnonzero(counts < 0)
    for i in bad:
        # resample a failed trial from the same block stream
        while True:
            failures += 1
            c, r = classify_batch(sample_products(config.spec, rng, 1), config.imag_tolerance)
            if c[0] >= 0:
                counts[i], radii[i] = c[0], r[0]
                break
    return np.bincount(counts, minlength=config.spec.N + 1), failures, float(radii.max())


def _threads():
    try:
        return max(1, int(os.environ.get("REALSPEC_THREADS", "1")))
    except ValueError:
        return 1


def estimate(config: MCConfig, threads: int | None = None) -> MCEstimate:
    """Empirical distribution of the number of real eigenvalues."""
    nblocks = -(-config.trials // BLOCK)
    sizes = [min(BLOCK, config.trials - b * BLOCK) for b in range(nblocks)]
    threads = threads or _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda b: _run_block(config, b, sizes[b]), range(nblocks)))
    else:
        results = [_run_block(config, b, sizes[b]) for b in range(nblocks)]
    total = np.zeros(config.spec.N + 1, dtype=np.int64)
    failures = 0
    rho = 0.0
    for hist, f, r in results:
        total += hist
        failures += f
        rho = max(rho, r)
    counts = Counter({k: int(v) for k, v in enumerate(total) if v})
    return MCEstimate(dict(sorted(counts.items())), config.trials, config.seed,
                      config.spec.N, failures, rho)
