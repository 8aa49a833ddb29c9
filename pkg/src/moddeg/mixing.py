"""Residue distributions of sums of dyadic Bernoulli variables.

Everything here is about sums of n i.i.d. indicators that are 1 with
probability 2^-p, reduced mod k: their exact distribution (a k-state dynamic
program), an analytic bound on the distance to uniform, a near-uniformity
report, and the conditional-expectation machinery that turns "a random subset
works in expectation" into one concrete subset.

Probabilities are doubles.  The DP applies n convex-combination steps to a
k-vector, so accumulated rounding is below n*k machine epsilons -- orders of
magnitude inside every tolerance asserted in the tests.  An exact
``Fraction``-based evaluation is provided as a test oracle for small n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import BipartiteGraph, VertexSet


@dataclass(frozen=True, eq=False)
class ResidueDistribution:
    """Distribution of (sum of n dyadic Bernoulli draws) mod k.

    ``probs[r]`` is the probability the sum is congruent to r.  The inclusion
    probability is 2^-exponent with exponent >= 1; the degenerate
    all-ones case (exponent 0) is excluded.
    """

    n: int
    k: int
    exponent: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        total = float(self.probs.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if float(self.probs.min()) < 0.0 or float(self.probs.max()) > 1.0:
            raise ValueError("probabilities must lie in [0, 1]")

    def probability(self, residue: int) -> float:
        return float(self.probs[residue % self.k])

    def gap_to_uniform(self) -> float:
        """max_r |P(sum = r mod k) - 1/k|."""
        return float(np.abs(self.probs - 1.0 / self.k).max())


def _validate(n: int, k: int, exponent: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    if exponent < 1:
        raise ValueError(f"inclusion exponent must be >= 1, got {exponent}")


def residue_table(n_max: int, k: int, exponent: int) -> np.ndarray:
    """All rows of the residue DP at once: shape (n_max+1, k).

    Row n is the distribution of an n-term sum mod k; row 0 is the point mass
    at residue 0.  Row n+1 mixes row n with its shift by one residue, with
    weights (1 - 2^-exponent, 2^-exponent).
    """
    _validate(n_max, k, exponent)
    q = 2.0 ** -exponent
    table = np.zeros((n_max + 1, k))
    table[0, 0] = 1.0
    for i in range(n_max):
        row = table[i]
        table[i + 1] = (1.0 - q) * row + q * np.roll(row, 1)
    return table


def residue_distribution(n: int, k: int, exponent: int = 1) -> ResidueDistribution:
    """Exact-per-step DP for the distribution of an n-term dyadic sum mod k."""
    _validate(n, k, exponent)
    q = 2.0 ** -exponent
    probs = np.zeros(k)
    probs[0] = 1.0
    for _ in range(n):
        probs = (1.0 - q) * probs + q * np.roll(probs, 1)
    return ResidueDistribution(n=n, k=k, exponent=exponent, probs=probs)


def residue_distribution_exact(n: int, k: int, exponent: int = 1) -> list[Fraction]:
    """Big-rational version of :func:`residue_distribution`.

    Every step scales the common denominator by 2^exponent, so the DP runs
    on integer numerators and builds fractions only at the end; exact up to
    n in the tens of thousands.
    """
    _validate(n, k, exponent)
    scale = 2 ** exponent
    keep = scale - 1
    nums = [0] * k
    nums[0] = 1
    for _ in range(n):
        nums = [keep * nums[r] + nums[(r - 1) % k] for r in range(k)]
    denom = scale ** n
    return [Fraction(x, denom) for x in nums]


def residue_one_probability(n: int, k: int, exponent: int = 1) -> float:
    """P(an n-term dyadic sum is congruent to 1 mod k)."""
    return residue_distribution(n, k, exponent).probability(1)


def fourier_gap_bound(n: int, k: int, exponent: int = 1) -> float:
    """Analytic upper bound on max_r |P(sum = r mod k) - 1/k|.

    Inverting the distribution over the k-th roots of unity gives
    P(r) - 1/k = (1/k) * sum_{j=1}^{k-1} phi(j)^n * conj(root^rj) where
    phi(j) = 1 - q + q*e^(2*pi*i*j/k) is the per-step characteristic factor,
    so the gap is at most (1/k) * sum |phi(j)|^n.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    if exponent < 1:
        raise ValueError(f"inclusion exponent must be >= 1, got {exponent}")
    q = 2.0 ** -exponent
    total = 0.0
    for j in range(1, k):
        magnitude = abs(1.0 - q + q * cmath.exp(2j * math.pi * j / k))
        total += magnitude ** n
    return total / k


@dataclass(frozen=True)
class UniformityCheck:
    """How close the k-residue distribution sits to uniform at threshold scale.

    ``n`` is k raised to ``threshold_exponent``; ``alt_n = ceil(k^2 ln k)`` is
    reported alongside for comparison (no acceptance threshold attached).
    """

    k: int
    n: int
    probability: float
    target: float
    ratio: float
    fourier_bound: float
    alt_n: int
    alt_probability: float
    alt_ratio: float
    passed: bool


def uniformity_check(k: int, threshold_exponent: int = 3) -> UniformityCheck:
    """Evaluate the residue-1 probability of a k^threshold_exponent-term sum.

    The probability must be at least 0.95/k for 2 <= k <= 30 (it is exactly
    1/2 at k = 2 and approaches 1/k rapidly); violations raise.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    n = k ** threshold_exponent
    probability = residue_one_probability(n, k)
    target = 1.0 / k
    ratio = probability / target
    alt_n = max(1, math.ceil(k * k * math.log(k)))
    alt_probability = residue_one_probability(alt_n, k)
    check = UniformityCheck(
        k=k,
        n=n,
        probability=probability,
        target=target,
        ratio=ratio,
        fourier_bound=fourier_gap_bound(n, k),
        alt_n=alt_n,
        alt_probability=alt_probability,
        alt_ratio=alt_probability / target,
        passed=ratio >= 0.95,
    )
    if k <= 30 and not check.passed:
        raise AssertionError(
            f"residue-1 probability {probability} fell below 0.95/k at k={k}"
        )
    return check


def uniformity_table(k_max: int, threshold_exponent: int = 3) -> list[UniformityCheck]:
    """Run :func:`uniformity_check` for every k in 2..k_max."""
    return [uniformity_check(k, threshold_exponent) for k in range(2, k_max + 1)]


def format_uniformity_table(checks: list[UniformityCheck], fmt: str = "text") -> str:
    """Render uniformity checks as CSV or aligned text."""
    header = ["k", "n", "prob_residue_1", "one_over_k", "ratio", "fourier_bound",
              "alt_n", "alt_ratio"]
    rows = [
        [str(c.k), str(c.n), f"{c.probability:.12g}", f"{c.target:.12g}",
         f"{c.ratio:.9f}", f"{c.fourier_bound:.6g}", str(c.alt_n),
         f"{c.alt_ratio:.9f}"]
        for c in checks
    ]
    if fmt == "csv":
        return "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format: {fmt!r}")
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for r in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def expected_unit_score(
    graph: BipartiteGraph,
    members: VertexSet,
    scored: VertexSet,
    k: int,
    exponent: int,
) -> float:
    """Expected number of scored vertices whose degree into a random subset
    of ``members`` (each kept with probability 2^-exponent) is 1 mod k."""
    degrees = [graph.degree_in(v, members) for v in scored]
    if not degrees:
        return 0.0
    table = residue_table(max(degrees), k, exponent)
    return float(sum(table[d, 1 % k] for d in degrees))


def derandomize_subset(
    graph: BipartiteGraph,
    members: VertexSet,
    scored: VertexSet,
    k: int,
    exponent: int,
) -> VertexSet:
    """Fix one subset of ``members`` that does at least as well as a random one.

    The objective is the number of ``scored`` vertices whose neighbour count
    inside the kept subset is 1 mod k.  Members are decided one at a time in
    ascending id order; at each step the conditional expectation of the
    objective -- decided members fixed, undecided ones independently kept
    with probability 2^-exponent -- is evaluated exactly for both choices and
    the larger branch is taken (ties drop the member, keeping the subset
    small).  The result therefore scores at least the a-priori expectation.
    """
    if exponent < 1:
        raise ValueError(f"inclusion exponent must be >= 1, got {exponent}")
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")

    scored_ids = scored.ids()
    undecided = {v: graph.degree_in(v, members) for v in scored_ids}
    needed = {v: 1 % k for v in scored_ids}
    max_deg = max(undecided.values(), default=0)
    table = residue_table(max_deg, k, exponent)

    # Scored neighbours of each member, so a decision only touches the
    # vertices it can influence.
    touches: dict[int, list[int]] = {w: [] for w in members}
    for v in scored_ids:
        for w in graph.neighbors(v) & members:
            touches[w].append(v)

    kept = 0
    for w in members:
        affected = touches[w]
        gain_drop = 0.0
        gain_keep = 0.0
        for v in affected:
            u = undecided[v] - 1
            need = needed[v]
            gain_drop += table[u, need]
            gain_keep += table[u, (need - 1) % k]
        keep = gain_keep > gain_drop
        for v in affected:
            undecided[v] -= 1
            if keep:
                needed[v] = (needed[v] - 1) % k
        if keep:
            kept |= 1 << w
    return VertexSet(kept)
