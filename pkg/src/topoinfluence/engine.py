"""Shapley attribution of component structure to individual samples.

The characteristic function of a coalition C of samples is b0 of the
induced subgraph on C, with b0 of the empty set taken as 0.  A sample's
raw score is the Shapley value of the absolute marginal

    s(i) = sum over C not containing i of
           |C|! (n - |C| - 1)! / n! * |b0(C + i) - b0(C)|

The absolute value keeps every marginal nonnegative (adding a vertex can
destroy components as well as create one), so s(i) >= 1/n > 0 always:
the coalition where i arrives first contributes exactly 1.  Normalizing
s to a probability vector mu and taking its Shannon entropy (natural
log) summarizes how evenly component structure is spread over samples.

Two evaluation modes:

exact     subset table over all 2^n coalitions, rational arithmetic on
          integer marginal tallies; bit-for-bit reproducible.
sampled   Monte Carlo over uniformly random insertion orders; the
          predecessor set of i in a uniform permutation is exactly a
          coalition drawn with the Shapley weights, so the running mean
          of the walk marginals is unbiased for s(i).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, SizeCapError
from .homology import TABLE_HARD_MAX, UnionFind, betti0_table
from .metric_complex import NeighborComplex

# Exact mode is opt-in above this size because the subset table costs
# O(2^n) space and the accumulation O(n 2^n) time.
DEFAULT_EXACT_CAP = 20

# numpy working set per chunk stays near 2^22 entries regardless of n.
_CHUNK_BITS = 22


@dataclass(frozen=True)
class InfluenceResult:
    """Per-sample scores with the distribution and entropy derived from them.

    ``shapley`` holds Fractions in exact mode and floats in sampled mode;
    ``mu`` likewise.  ``entropy`` is in nats.  ``std_error`` is the
    per-sample standard error of the sampled estimate, empty for exact.
    """

    labels: tuple[str, ...]
    shapley: tuple
    mu: tuple
    entropy: float
    method: str
    permutations: int = 0
    seed: int | None = None
    std_error: tuple = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return len(self.shapley)

    @property
    def total(self):
        return sum(self.shapley)

    def shapley_floats(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self.shapley)

    def mu_floats(self) -> tuple[float, ...]:
        return tuple(float(m) for m in self.mu)


def shannon_entropy(mu: Sequence) -> float:
    """Entropy in nats with the 0 log 0 = 0 convention."""
    h = 0.0
    for p in mu:
        p = float(p)
        if p < 0:
            raise InputError(f"negative probability {p}")
        if p > 0:
            h -= p * math.log(p)
    return 0.0 if h == 0.0 else h


def subset_weights(n: int) -> list[Fraction]:
    """weights[k] = k! (n-1-k)! / n! for coalition size k, exact."""
    n_fact = math.factorial(n)
    return [
        Fraction(math.factorial(k) * math.factorial(n - 1 - k), n_fact)
        for k in range(n)
    ]


def _marginal_tallies(complex_: NeighborComplex) -> np.ndarray:
    """tallies[i][k] = sum of |b0(C + i) - b0(C)| over coalitions C of
    size k avoiding i.  Integer-valued; returned as int64.

    Scans the subset table in chunks: for masks m with bit i clear, the
    marginal of i against coalition m is |t[m | bit] - t[m]| and the
    coalition size is popcount(m).  Per-size sums via bincount; the
    float accumulation is exact well below 2^53.
    """
    n = complex_.n
    table = betti0_table(complex_)
    tallies = np.zeros((n, n), dtype=np.int64)
    size = 1 << n
    chunk = min(size, 1 << _CHUNK_BITS)
    masks = np.arange(chunk, dtype=np.int64)
    for start in range(0, size, chunk):
        m = masks + start if start else masks
        pc = np.bitwise_count(m)
        t_m = table[m].astype(np.int16)
        for i in range(n):
            bit = 1 << i
            clear = (m & bit) == 0
            sizes = pc[clear]
            diff = np.abs(table[m[clear] | bit].astype(np.int16) - t_m[clear])
            sums = np.bincount(sizes, weights=diff, minlength=n)
            tallies[i] += sums[:n].astype(np.int64)
    return tallies


def exact_shapley(
    complex_: NeighborComplex, cap: int = DEFAULT_EXACT_CAP
) -> InfluenceResult:
    """Exact rational Shapley scores by full coalition enumeration.

    Refuses n above ``cap``; raising the cap past the default is allowed
    up to the table's hard maximum but warns, since time and memory grow
    as O(n 2^n).
    """
    n = complex_.n
    if cap > TABLE_HARD_MAX:
        cap = TABLE_HARD_MAX
    if n > cap:
        raise SizeCapError(
            f"exact enumeration for n={n} exceeds cap {cap}; "
            f"raise the cap (hard max {TABLE_HARD_MAX}) or sample"
        )
    if n > DEFAULT_EXACT_CAP:
        warnings.warn(
            f"exact enumeration at n={n} walks {n} * 2^{n} subset pairs; "
            "expect minutes and gigabytes past the default cap",
            RuntimeWarning,
            stacklevel=2,
        )
    tallies = _marginal_tallies(complex_)
    weights = subset_weights(n)
    scores = tuple(
        sum(
            (weights[k] * int(tallies[i, k]) for k in range(n)),
            start=Fraction(0),
        )
        for i in range(n)
    )
    total = sum(scores)
    mu = tuple(s / total for s in scores)
    return InfluenceResult(
        labels=_labels_of(complex_),
        shapley=scores,
        mu=mu,
        entropy=shannon_entropy(mu),
        method="exact",
    )


def permutation_marginals(
    complex_: NeighborComplex, order: Sequence[int]
) -> list[int]:
    """Absolute component-count marginals along one insertion order.

    marginals[i] belongs to vertex i (not to position).  Incremental
    union-find walk: adding a vertex changes the count by one minus the
    number of distinct present components it touches.
    """
    n = complex_.n
    if sorted(order) != list(range(n)):
        raise InputError("order must be a permutation of 0..n-1")
    rows = complex_.rows
    uf = UnionFind(n)
    present = 0
    marginals = [0] * n
    for v in order:
        delta = 1
        row = rows[v] & present
        while row:
            low = row & -row
            if uf.union(v, low.bit_length() - 1):
                delta -= 1
            row ^= low
        present |= 1 << v
        marginals[v] = abs(delta)
    return marginals


def sampled_shapley(
    complex_: NeighborComplex, permutations: int, seed: int
) -> InfluenceResult:
    """Monte Carlo Shapley scores from uniform random insertion orders.

    Permutation j is drawn from a Philox stream keyed by ``seed`` with
    counter block j, so estimates are reproducible and any prefix of the
    run can be replayed independently of the rest.
    """
    n = complex_.n
    if permutations <= 0:
        raise InputError(f"need at least one permutation, got {permutations}")
    sums = np.zeros(n, dtype=np.int64)
    sumsq = np.zeros(n, dtype=np.int64)
    for j in range(permutations):
        rng = np.random.Generator(np.random.Philox(key=seed, counter=j << 64))
        order = rng.permutation(n).tolist()
        marginals = permutation_marginals(complex_, order)
        for i, m in enumerate(marginals):
            sums[i] += m
            sumsq[i] += m * m
    p = permutations
    scores = sums / p
    if p > 1:
        variance = (sumsq - p * scores**2) / (p - 1)
        variance = np.maximum(variance, 0.0)
        std_error = np.sqrt(variance / p)
    else:
        std_error = np.zeros(n)
    total = float(scores.sum())
    mu = scores / total
    return InfluenceResult(
        labels=_labels_of(complex_),
        shapley=tuple(float(s) for s in scores),
        mu=tuple(float(m) for m in mu),
        entropy=shannon_entropy(mu),
        method="sampled",
        permutations=p,
        seed=seed,
        std_error=tuple(float(e) for e in std_error),
    )


def compute_influence(
    complex_: NeighborComplex,
    labels: Sequence[str] | None = None,
    mode: str = "exact",
    cap: int = DEFAULT_EXACT_CAP,
    permutations: int = 0,
    seed: int = 0,
) -> InfluenceResult:
    """Front door: dispatch to exact or sampled evaluation.

    ``labels`` override the positional defaults; length must match.
    """
    if mode == "exact":
        result = exact_shapley(complex_, cap=cap)
    elif mode == "sampled":
        result = sampled_shapley(complex_, permutations=permutations, seed=seed)
    else:
        raise InputError(f"unknown mode {mode!r}, expected 'exact' or 'sampled'")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != result.n:
            raise InputError(
                f"{len(labels)} labels for {result.n} samples"
            )
        result = InfluenceResult(
            labels=labels,
            shapley=result.shapley,
            mu=result.mu,
            entropy=result.entropy,
            method=result.method,
            permutations=result.permutations,
            seed=result.seed,
            std_error=result.std_error,
        )
    return result


def _labels_of(complex_: NeighborComplex) -> tuple[str, ...]:
    return tuple(str(i) for i in range(complex_.n))
