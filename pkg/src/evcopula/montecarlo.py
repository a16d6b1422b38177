"""Sampling from extreme value copulas and empirical coefficient estimation.

Marshall-Olkin pairs come from the exact common-shock construction: with
independent exponentials E1, E2, E12 at rates (1-alpha)/alpha,
(1-beta)/beta and 1, the survival transforms of
(min(E1, E12), min(E2, E12)) are uniform and jointly follow the MO copula.
Any other EV copula is sampled by inverting its conditional distribution
v -> dC/du(u, v); the inversion is jump-aware, which captures the singular
mass of kinked families.

All randomness flows through the Philox streams of :mod:`evcopula.rng` and
only uniform draws are consumed, so batches are bit-reproducible from
(seed, generator, n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .copula import EvCopula
from .errors import DegenerateSampleError, ParamOutOfRangeError
from .rng import make_rng

_INVERSION_TOL = 1e-13


@dataclass(frozen=True)
class SampleBatch:
    """Immutable batch of (u, v) pairs plus generation metadata."""

    u: np.ndarray
    v: np.ndarray
    seed: int
    generator: str
    n: int

    @property
    def pairs(self):
        return np.column_stack([self.u, self.v])


@dataclass(frozen=True)
class EmpiricalCoefficients:
    """Rank-based estimates; ``lambda_hat`` maps threshold to estimate."""

    rho_hat: float
    tau_hat: float
    beta_hat: float
    lambda_hat: tuple
    lambda_summary: float


def sample_mo(alpha: float, beta: float, n: int, seed: int) -> SampleBatch:
    """Exact Marshall-Olkin sample via the three-shock construction.

    A zero parameter removes the common shock's effect on that margin, so
    those cases route to the independence sampler.
    """
    if not (0.0 <= alpha <= 1.0 and 0.0 <= beta <= 1.0):
        raise ParamOutOfRangeError(f"alpha={alpha}, beta={beta} not in [0, 1]")
    if n < 1:
        raise ParamOutOfRangeError("n must be >= 1")
    rng = make_rng(seed, 0xA0)  # stream tag distinct from the generic sampler
    if alpha == 0.0 or beta == 0.0:
        u = rng.random(n)
        v = rng.random(n)
        return SampleBatch(u, v, seed, f"mo(alpha={alpha},beta={beta})", n)
    e_shared = -np.log1p(-rng.random(n))
    e1 = -np.log1p(-rng.random(n))
    e2 = -np.log1p(-rng.random(n))
    x = e_shared if alpha == 1.0 else np.minimum(e1 * (alpha / (1.0 - alpha)), e_shared)
    y = e_shared if beta == 1.0 else np.minimum(e2 * (beta / (1.0 - beta)), e_shared)
    u = np.exp(-x / alpha)
    v = np.exp(-y / beta)
    return SampleBatch(u, v, seed, f"mo(alpha={alpha},beta={beta})", n)


def sample_generic(copula: EvCopula, n: int, seed: int) -> SampleBatch:
    """Sample any EV copula by conditional-distribution inversion.

    Draws (u, p) uniform and sets v to the generalized inverse
    ``inf{v : dC/du(u, v) >= p}``, computed by vectorized bisection; jumps
    of the conditional CDF become atoms of v, as required for families
    with a singular component.
    """
    if n < 1:
        raise ParamOutOfRangeError("n must be >= 1")
    rng = make_rng(seed, 0xB1)
    u = np.maximum(rng.random(n), 1e-300)
    p = rng.random(n)
    lo = np.zeros(n)
    hi = np.ones(n)
    for _ in range(47):  # 2**-47 < 1e-13 domain resolution
        mid = 0.5 * (lo + hi)
        ge = copula.partial_u(u, mid) >= p
        hi = np.where(ge, mid, hi)
        lo = np.where(ge, lo, mid)
    label = f"generic({copula.dependence.family})"
    return SampleBatch(u, hi, seed, label, n)


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


def _average_ranks(x: np.ndarray) -> np.ndarray:
    order = np.argsort(x, kind="stable")
    xs = x[order]
    boundary = np.empty(len(x), dtype=bool)
    boundary[0] = True
    boundary[1:] = xs[1:] != xs[:-1]
    group = np.cumsum(boundary) - 1
    counts = np.bincount(group)
    ends = np.cumsum(counts)
    starts = ends - counts
    mean_rank = (starts + ends + 1) / 2.0  # 1-based average rank per group
    ranks = np.empty(len(x))
    ranks[order] = mean_rank[group]
    return ranks


def _count_strict_inversions(a: np.ndarray) -> int:
    """Number of pairs i < j with a[i] > a[j], by blocked merge counting."""
    n = len(a)
    block = 64
    m = -(-n // block)
    padded = np.full(m * block, np.inf)
    padded[:n] = a
    x = padded.reshape(m, block)
    iu, ju = np.triu_indices(block, k=1)
    inv = int((x[:, iu] > x[:, ju]).sum())
    x = np.sort(x, axis=1)
    flat = x.ravel()
    width = block
    while width < m * block:
        for start in range(0, m * block, 2 * width):
            left = flat[start : start + width]
            right = flat[start + width : start + 2 * width]
            if right.size == 0:
                continue
            # elements of the sorted left half strictly above each right element
            inv += int(
                (width - np.searchsorted(left, right, side="right")).sum()
            )
            flat[start : start + 2 * width] = np.sort(
                flat[start : start + 2 * width], kind="stable"
            )
        width *= 2
    return inv


def _tie_pair_count(x: np.ndarray) -> int:
    _, counts = np.unique(x, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def kendall_tau_stat(u: np.ndarray, v: np.ndarray) -> float:
    """Kendall's tau-a: (concordant - discordant) / (n choose 2).

    O(n log n): sort by (u, v) and merge-count strict inversions of v,
    then correct for tied pairs (ties count as neither concordant nor
    discordant).
    """
    n = len(u)
    order = np.lexsort((v, u))
    vs = v[order]
    discordant = _count_strict_inversions(vs)
    n0 = n * (n - 1) // 2
    ties_u = _tie_pair_count(u)
    ties_v = _tie_pair_count(v)
    pairs = np.rec.fromarrays([u, v])
    ties_uv = _tie_pair_count(pairs)
    c_minus_d = n0 - ties_u - ties_v + ties_uv - 2 * discordant
    return c_minus_d / n0


def kendall_tau_direct(u: np.ndarray, v: np.ndarray) -> float:
    """O(n^2) sign-count oracle for :func:`kendall_tau_stat` (small n only)."""
    du = np.sign(u[:, None] - u[None, :]).astype(np.int64)
    dv = np.sign(v[:, None] - v[None, :]).astype(np.int64)
    iu, ju = np.triu_indices(len(u), k=1)
    c_minus_d = int((du[iu, ju] * dv[iu, ju]).sum())
    n0 = len(u) * (len(u) - 1) // 2
    return c_minus_d / n0


def ks_statistic_uniform(x: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance of a sample to the uniform law on [0, 1]."""
    xs = np.sort(x)
    n = len(xs)
    i = np.arange(1, n + 1)
    return float(max((i / n - xs).max(), (xs - (i - 1) / n).max()))


def empirical_coefficients(batch: SampleBatch, lambda_thresholds=(0.9, 0.95, 0.99)) -> EmpiricalCoefficients:
    """Rank-based rho, tau-a, Blomqvist beta, and tail estimates.

    The tail estimate uses the diagonal law of EV copulas:
    ``lambda_hat(t) = 2 - ln(C_n(t, t)) / ln(t)`` with the empirical copula
    C_n on normalized ranks, summarized at the largest threshold.
    """
    u, v = batch.u, batch.v
    n = batch.n
    if n < 10:
        raise DegenerateSampleError(f"need at least 10 pairs, got {n}")
    if np.ptp(u) == 0.0 or np.ptp(v) == 0.0:
        raise DegenerateSampleError("all values identical in one coordinate")
    thresholds = tuple(float(t) for t in lambda_thresholds)
    if not thresholds or any(not 0.0 < t < 1.0 for t in thresholds):
        raise ParamOutOfRangeError("lambda thresholds must lie in (0, 1)")

    pu = _average_ranks(u) / (n + 1)
    pv = _average_ranks(v) / (n + 1)
    rho_hat = 12.0 * float(np.mean(pu * pv)) - 3.0
    tau_hat = kendall_tau_stat(u, v)
    beta_hat = float(np.mean(np.sign((u - np.median(u)) * (v - np.median(v)))))

    lams = []
    for t in sorted(thresholds):
        cn = float(np.mean((pu <= t) & (pv <= t)))
        est = 0.0 if cn <= 0.0 else 2.0 - np.log(cn) / np.log(t)
        lams.append((t, float(np.clip(est, 0.0, 1.0))))
    return EmpiricalCoefficients(
        rho_hat=rho_hat,
        tau_hat=tau_hat,
        beta_hat=beta_hat,
        lambda_hat=tuple(lams),
        lambda_summary=lams[-1][1],
    )


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------


def write_batch_csv(batch: SampleBatch, stream) -> None:
    """Write ``u,v`` rows at 17 significant digits with LF line endings."""
    stream.write("u,v\n")
    for a, b in zip(batch.u, batch.v):
        stream.write(f"{a:.17g},{b:.17g}\n")


def read_pairs_csv(stream) -> SampleBatch:
    """Read a ``u,v`` CSV (header required) back into a batch."""
    header = stream.readline().strip()
    if [c.strip().lower() for c in header.split(",")[:2]] != ["u", "v"]:
        raise DegenerateSampleError("expected CSV header 'u,v'")
    rows = [line.strip() for line in stream if line.strip()]
    if not rows:
        raise DegenerateSampleError("no sample rows in input")
    data = np.asarray([[float(c) for c in r.split(",")[:2]] for r in rows])
    u, v = data[:, 0], data[:, 1]
    if np.any((u < 0) | (u > 1) | (v < 0) | (v > 1)):
        raise DegenerateSampleError("coordinates must lie in [0, 1]")
    return SampleBatch(u, v, seed=-1, generator="file", n=len(u))
