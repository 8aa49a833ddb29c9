"""Constructive search for large induced subgraphs with degrees = 1 mod k.

Given a validated bipartite graph with minimum degree >= 1 and a modulus k,
:func:`find_mod_one_subgraph` always returns a non-empty vertex set inducing
a subgraph in which every degree is congruent to 1 mod k.  It works in three
stages:

1. Build a chain of k-1 nested minimal dominating sets of side 1 inside
   side 2, each paired with private neighbours that certify minimality
   (:func:`build_chain`).  The first level alone already yields an induced
   matching, which is a valid answer for every k.
2. Split the leftover side-1 vertices by their degree into the deepest
   dominating set: vertices above a k^3-style threshold are handled by
   half-density sampling, the rest by sampling at the dyadic density matched
   to the largest degree bucket.
3. For whichever subset got sampled (or fixed by derandomization), repair the
   degrees of the kept side-2 vertices with their private neighbours and keep
   the largest candidate that passes verification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import mixing
from .graph import BipartiteGraph, ResidueSpec, VertexSet, verify_residue


class ConstructionError(RuntimeError):
    """Internal contract violation while assembling the subgraph."""


class DominationError(ConstructionError):
    """Some target vertex has no neighbour among the candidate dominators."""


@dataclass(frozen=True)
class ChainLevel:
    """One level of the chain: dominators on side 2 matched to their privates.

    ``private_of[w]`` is the side-1 vertex whose only dominator-neighbour at
    this level is ``w``; together the dominators and privates induce a
    matching.
    """

    dominators: VertexSet
    privates: VertexSet
    private_of: Mapping[int, int]


@dataclass(frozen=True)
class DominatingChain:
    """Nested minimal dominating sets with disjoint private-neighbour sets.

    Level i dominates the side-1 vertices not already claimed as privates by
    levels before it; ``remainder`` is side 1 minus every private set.
    """

    k: int
    levels: tuple[ChainLevel, ...]
    remainder: VertexSet

    @property
    def deepest(self) -> VertexSet:
        """Dominators of the last level (contained in every other level)."""
        return self.levels[-1].dominators

    def dominator_sizes(self) -> list[int]:
        return [len(level.dominators) for level in self.levels]


@dataclass(frozen=True)
class AnalysisConfig:
    """Reporting thresholds for classifying which route the size analysis
    would pick, plus the high-degree cutoff exponent.

    ``matching_share`` classifies the run as route 1 when the first dominator
    level is at least that fraction of side 1 divided by k; ``heavy_share``
    classifies route 2 when the above-threshold vertices are at least that
    fraction of side 1.  The two shares must sum below 1 so the third route
    covers a positive share.  ``threshold_exponent`` sets the high-degree
    cutoff at k**threshold_exponent (default 3).  Classification is report
    only: all applicable routes always run.
    """

    matching_share: Fraction = Fraction(1, 4)
    heavy_share: Fraction = Fraction(1, 2)
    threshold_exponent: int = 3

    def __post_init__(self):
        if self.matching_share <= 0 or self.heavy_share <= 0:
            raise ValueError("shares must be positive")
        if self.matching_share + self.heavy_share >= 1:
            raise ValueError("shares must sum below 1")
        if self.threshold_exponent < 1:
            raise ValueError("threshold exponent must be >= 1")

    @classmethod
    def from_epsilon(cls, epsilon: Fraction) -> "AnalysisConfig":
        """Shares approaching (1/3, 2/3) from below as epsilon shrinks."""
        eps = Fraction(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        return cls(
            matching_share=Fraction(1, 3) - eps / 2,
            heavy_share=Fraction(2, 3) - eps,
        )

    @classmethod
    def default(cls) -> "AnalysisConfig":
        return cls.from_epsilon(Fraction(1, 1000))


def minimal_dominating_set(
    graph: BipartiteGraph, targets: VertexSet, candidates: VertexSet
) -> tuple[VertexSet, dict[int, int]]:
    """Minimal subset of ``candidates`` dominating ``targets``, with privates.

    Starts from all candidates and removes them in ascending id order whenever
    removal keeps every target dominated, so the result is minimal but
    deterministic.  Returns the set and a map from each kept dominator to its
    smallest-id private target (a target whose only kept neighbour it is);
    minimality guarantees one exists for every kept dominator.

    Raises :class:`DominationError` if some target has no candidate
    neighbour at all.
    """
    target_ids = targets.ids()
    live = {}
    for v in target_ids:
        c = (graph.adj[v] & candidates.mask).bit_count()
        if c == 0:
            raise DominationError(f"target {v} has no neighbour among candidates")
        live[v] = c

    kept = candidates.mask
    for w in candidates:
        touched = graph.adj[w] & targets.mask
        removable = True
        m = touched
        while m:
            low = m & -m
            if live[low.bit_length() - 1] < 2:
                removable = False
                break
            m ^= low
        if removable:
            kept &= ~(1 << w)
            m = touched
            while m:
                low = m & -m
                live[low.bit_length() - 1] -= 1
                m ^= low

    private_of: dict[int, int] = {}
    for v in target_ids:
        if live[v] == 1:
            w = (graph.adj[v] & kept).bit_length() - 1
            private_of.setdefault(w, v)
    if len(private_of) != kept.bit_count():
        raise ConstructionError("kept dominator without a private target")
    return VertexSet(kept), private_of


def build_chain(graph: BipartiteGraph, k: int) -> DominatingChain:
    """Build the k-1 nested levels of minimal dominating sets with privates.

    Level 1 dominates all of side 1 from within side 2; each later level
    dominates the side-1 vertices not yet claimed as privates, drawing its
    dominators from the previous level.  Every remaining target keeps a
    neighbour in the previous level by that level's domination, so the
    recursion never fails on a validated graph.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    targets = graph.side1
    candidates = graph.side2
    levels = []
    for _ in range(k - 1):
        dominators, private_of = minimal_dominating_set(graph, targets, candidates)
        privates = VertexSet.from_ids(private_of.values())
        levels.append(
            ChainLevel(dominators=dominators, privates=privates, private_of=private_of)
        )
        targets = targets - privates
        candidates = dominators
    return DominatingChain(k=k, levels=tuple(levels), remainder=targets)


def check_chain(graph: BipartiteGraph, chain: DominatingChain) -> list[str]:
    """Re-verify every chain invariant from scratch; returns violations.

    Quadratic and independent of how the chain was built: nesting, equal
    dominator/private cardinalities, disjointness of private sets, the
    private-neighbour property, domination of each level's targets,
    minimality of each level, and the remainder identity and lower bound.
    """
    problems = []
    if len(chain.levels) != chain.k - 1:
        problems.append(
            f"expected {chain.k - 1} levels, found {len(chain.levels)}"
        )
    previous = graph.side2
    claimed = VertexSet()
    for idx, level in enumerate(chain.levels, start=1):
        doms, privs = level.dominators, level.privates
        if not doms <= previous:
            problems.append(f"level {idx}: dominators not nested in previous level")
        if len(privs) != len(doms) or len(level.private_of) != len(doms):
            problems.append(f"level {idx}: private count differs from dominator count")
        if not privs <= graph.side1:
            problems.append(f"level {idx}: privates stray off side 1")
        if not privs.isdisjoint(claimed):
            problems.append(f"level {idx}: privates overlap an earlier level")
        targets = graph.side1 - claimed
        if VertexSet.from_ids(level.private_of.values()) != privs:
            problems.append(f"level {idx}: private set disagrees with private map")
        for w, v in level.private_of.items():
            if w not in doms:
                problems.append(f"level {idx}: private map keyed by non-dominator {w}")
            if v not in targets:
                problems.append(f"level {idx}: private {v} was not a live target")
            if graph.adj[v] & doms.mask != 1 << w:
                problems.append(
                    f"level {idx}: vertex {v} is not private to dominator {w}"
                )
        for v in targets:
            if graph.adj[v] & doms.mask == 0:
                problems.append(f"level {idx}: target {v} left undominated")
        witnessed = set()
        for v in targets:
            overlap = graph.adj[v] & doms.mask
            if overlap.bit_count() == 1:
                witnessed.add(overlap.bit_length() - 1)
        for w in doms:
            if w not in witnessed:
                problems.append(
                    f"level {idx}: dominator {w} is redundant (no private target)"
                )
        claimed = claimed | privs
        previous = doms
    if chain.remainder != graph.side1 - claimed:
        problems.append("remainder differs from side 1 minus all private sets")
    if chain.levels:
        first = len(chain.levels[0].dominators)
        if len(chain.remainder) < graph.n1 - (chain.k - 1) * first:
            problems.append("remainder smaller than the level-1 lower bound")
    return problems


def matching_candidate(chain: DominatingChain) -> VertexSet:
    """First-level dominators plus their privates: an induced matching,
    so every vertex has induced degree exactly 1."""
    first = chain.levels[0]
    return first.dominators | first.privates


def high_degree_targets(
    graph: BipartiteGraph, chain: DominatingChain, config: AnalysisConfig
) -> VertexSet:
    """Remainder vertices with at least k**threshold_exponent neighbours in
    the deepest dominator level."""
    threshold = chain.k ** config.threshold_exponent
    deepest = chain.deepest
    heavy = 0
    for v in chain.remainder:
        if graph.degree_in(v, deepest) >= threshold:
            heavy |= 1 << v
    return VertexSet(heavy)


def sample_subset(
    members: VertexSet, exponent: int, rng: random.Random
) -> VertexSet:
    """Keep each member independently with probability 2**-exponent.

    Exponent 0 keeps everything without consuming randomness.  Each kept/
    dropped decision spends exactly ``exponent`` fair coin flips (one
    ``getrandbits`` call), so draws are reproducible bit for bit.
    """
    if exponent < 0:
        raise ValueError(f"exponent must be >= 0, got {exponent}")
    if exponent == 0:
        return members
    kept = 0
    for w in members:
        if rng.getrandbits(exponent) == 0:
            kept |= 1 << w
    return VertexSet(kept)


def unit_residue_targets(
    graph: BipartiteGraph, pool: VertexSet, chosen: VertexSet, k: int
) -> VertexSet:
    """Members of ``pool`` whose neighbour count in ``chosen`` is 1 mod k."""
    hits = 0
    chosen_mask = chosen.mask
    for v in pool:
        if (graph.adj[v] & chosen_mask).bit_count() % k == 1:
            hits |= 1 << v
    return VertexSet(hits)


def largest_dyadic_bucket(
    graph: BipartiteGraph,
    chain: DominatingChain,
    rest: VertexSet,
    config: AnalysisConfig,
) -> tuple[int, VertexSet]:
    """Bucket ``rest`` by floor(log2(degree into the deepest level)) and
    return the fullest bucket (ties: smallest exponent).

    Every vertex of ``rest`` must have degree at least 1 (the deepest level
    dominates it) and below the high-degree threshold, so there are at most
    floor(log2(k**threshold_exponent)) + 1 buckets and the winner holds at
    least an equal share of ``rest``.
    """
    if not rest:
        raise ValueError("empty vertex set: no bucket to pick")
    threshold = chain.k ** config.threshold_exponent
    deepest = chain.deepest
    buckets: dict[int, int] = {}
    for v in rest:
        d = graph.degree_in(v, deepest)
        if not 1 <= d < threshold:
            raise ConstructionError(
                f"vertex {v} has degree {d}, outside [1, {threshold})"
            )
        buckets.setdefault(d.bit_length() - 1, 0)
        buckets[d.bit_length() - 1] |= 1 << v
    exponent = max(buckets, key=lambda p: (buckets[p].bit_count(), -p))
    bucket = VertexSet(buckets[exponent])
    slots = threshold.bit_length()  # floor(log2(threshold)) + 1
    if len(bucket) * slots < len(rest):
        raise ConstructionError("dyadic bucket fell below its pigeonhole share")
    return exponent, bucket


def fix_degrees(
    graph: BipartiteGraph,
    chain: DominatingChain,
    chosen: VertexSet,
    unit_targets: VertexSet,
) -> VertexSet:
    """Private vertices that lift each chosen dominator to degree 1 mod k.

    Each chosen dominator u sits in every chain level, so it owns one private
    vertex per level and those privates are adjacent to no other chosen
    dominator.  Taking (1 - deg(u into unit_targets)) mod k of them, lowest
    level first, fixes u's residue without disturbing anyone else; each
    added private ends up with induced degree exactly 1.
    """
    k = chain.k
    if not chosen <= chain.deepest:
        raise ConstructionError("chosen dominators stray outside the deepest level")
    patch = 0
    for u in chosen:
        missing = (1 - graph.degree_in(u, unit_targets)) % k
        for level in chain.levels[:missing]:
            patch |= 1 << level.private_of[u]
    return VertexSet(patch)


@dataclass
class ConstructionTrace:
    """Full record of one construction run.

    ``case`` is the route whose candidate won (1 induced matching, 2
    half-density sampling of the high-degree targets, 3 dyadic-bucket
    sampling); ``analysis_case`` is the route the size analysis would have
    classified from the config shares, recorded for reporting only.  The
    chosen/unit/patch sets belong to the winning candidate; expected and
    achieved scores are kept for every sampled route.
    """

    k: int
    mode: str
    seed: int | None
    retries: int
    case: int
    analysis_case: int
    candidate_sizes: dict[int, int | None]
    dominator_sizes: list[int]
    remainder_size: int
    heavy: VertexSet
    bucket_exponent: int | None
    bucket: VertexSet | None
    chosen: VertexSet | None
    unit_targets: VertexSet | None
    patch: VertexSet | None
    vertices: VertexSet = field(default_factory=VertexSet)
    expected_scores: dict[int, float] = field(default_factory=dict)
    achieved_scores: dict[int, int] = field(default_factory=dict)

    def to_dict(self, verbose: bool = False) -> dict:
        """JSON-ready summary; ``verbose`` adds sorted vertex-id arrays."""
        out = {
            "schema_version": 1,
            "k": self.k,
            "mode": self.mode,
            "seed": self.seed,
            "retries": self.retries,
            "case": self.case,
            "analysis_case": self.analysis_case,
            "candidate_sizes": {str(c): s for c, s in self.candidate_sizes.items()},
            "bucket_exponent": self.bucket_exponent,
            "sizes": {
                "dominators": self.dominator_sizes,
                "remainder": self.remainder_size,
                "heavy": len(self.heavy),
                "bucket": None if self.bucket is None else len(self.bucket),
                "chosen": None if self.chosen is None else len(self.chosen),
                "unit_targets": (
                    None if self.unit_targets is None else len(self.unit_targets)
                ),
                "patch": None if self.patch is None else len(self.patch),
                "subgraph": len(self.vertices),
            },
            "expected_scores": {str(c): v for c, v in self.expected_scores.items()},
            "achieved_scores": {str(c): v for c, v in self.achieved_scores.items()},
        }
        if verbose:
            out["sets"] = {
                "subgraph": self.vertices.ids(),
                "heavy": self.heavy.ids(),
                "bucket": None if self.bucket is None else self.bucket.ids(),
                "chosen": None if self.chosen is None else self.chosen.ids(),
                "unit_targets": (
                    None if self.unit_targets is None else self.unit_targets.ids()
                ),
                "patch": None if self.patch is None else self.patch.ids(),
            }
        return out


def _classify(
    graph: BipartiteGraph,
    chain: DominatingChain,
    heavy: VertexSet,
    config: AnalysisConfig,
) -> int:
    first = len(chain.levels[0].dominators)
    if Fraction(first * chain.k) >= config.matching_share * graph.n1:
        return 1
    if Fraction(len(heavy)) >= config.heavy_share * graph.n1:
        return 2
    return 3


def _deterministic_expectation(
    graph: BipartiteGraph, deepest: VertexSet, scored: VertexSet, k: int
) -> float:
    hits = sum(1 for v in scored if graph.degree_in(v, deepest) % k == 1)
    return float(hits)


def find_mod_one_subgraph(
    graph: BipartiteGraph,
    k: int,
    *,
    mode: str = "sampled",
    seed: int | None = 0,
    retries: int = 16,
    config: AnalysisConfig | None = None,
) -> tuple[VertexSet, ConstructionTrace]:
    """Largest verified induced subgraph with every degree = 1 mod k.

    Runs all applicable routes and keeps the best verified candidate, so the
    result is never smaller than twice the first dominator level (the induced
    matching is always available) and always non-empty.

    In "sampled" mode the two sampling routes each draw up to ``retries``
    subsets from a generator seeded with ``seed`` and keep the draw hitting
    the most scored vertices.  In "derandomized" mode subsets are fixed by
    conditional expectations and the run is fully deterministic; ``seed`` and
    ``retries`` are ignored.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    if mode not in ("sampled", "derandomized"):
        raise ValueError(f"mode must be 'sampled' or 'derandomized', got {mode!r}")
    if retries < 1:
        raise ValueError(f"retries must be >= 1, got {retries}")
    if config is None:
        config = AnalysisConfig.default()

    chain = build_chain(graph, k)
    deepest = chain.deepest
    heavy = high_degree_targets(graph, chain, config)
    rest = chain.remainder - heavy
    rng = random.Random(seed)
    residue_spec = ResidueSpec(residue=1, modulus=k)

    def run_route(scored: VertexSet, exponent: int):
        if exponent == 0:
            chosen = deepest
            expected = _deterministic_expectation(graph, deepest, scored, k)
        elif mode == "derandomized":
            chosen = mixing.derandomize_subset(graph, deepest, scored, k, exponent)
            expected = mixing.expected_unit_score(graph, deepest, scored, k, exponent)
        else:
            expected = mixing.expected_unit_score(graph, deepest, scored, k, exponent)
            chosen = None
            best_key = None
            for _ in range(retries):
                draw = sample_subset(deepest, exponent, rng)
                units = unit_residue_targets(graph, chain.remainder, draw, k)
                key = (len(units & scored), len(units))
                if best_key is None or key > best_key:
                    best_key = key
                    chosen = draw
        units = unit_residue_targets(graph, chain.remainder, chosen, k)
        patch = fix_degrees(graph, chain, chosen, units)
        candidate = patch | chosen | units
        return candidate, chosen, units, patch, expected, len(units & scored)

    candidates: dict[int, tuple] = {}
    expected_scores: dict[int, float] = {}
    achieved_scores: dict[int, int] = {}

    matching = matching_candidate(chain)
    candidates[1] = (matching, None, None, None)

    if heavy:
        cand, chosen, units, patch, expected, achieved = run_route(heavy, 1)
        candidates[2] = (cand, chosen, units, patch)
        expected_scores[2] = expected
        achieved_scores[2] = achieved

    bucket_exponent = None
    bucket = None
    if rest:
        bucket_exponent, bucket = largest_dyadic_bucket(graph, chain, rest, config)
        cand, chosen, units, patch, expected, achieved = run_route(
            bucket, bucket_exponent
        )
        candidates[3] = (cand, chosen, units, patch)
        expected_scores[3] = expected
        achieved_scores[3] = achieved

    best_case = None
    for case in sorted(candidates):
        cand = candidates[case][0]
        if not verify_residue(graph, cand, residue_spec):
            raise ConstructionError(f"route {case} produced an invalid candidate")
        if best_case is None or len(cand) > len(candidates[best_case][0]):
            best_case = case

    subgraph, chosen, units, patch = candidates[best_case]
    trace = ConstructionTrace(
        k=k,
        mode=mode,
        seed=seed if mode == "sampled" else None,
        retries=retries,
        case=best_case,
        analysis_case=_classify(graph, chain, heavy, config),
        candidate_sizes={
            case: len(candidates[case][0]) if case in candidates else None
            for case in (1, 2, 3)
        },
        dominator_sizes=chain.dominator_sizes(),
        remainder_size=len(chain.remainder),
        heavy=heavy,
        bucket_exponent=bucket_exponent,
        bucket=bucket,
        chosen=chosen,
        unit_targets=units,
        patch=patch,
        vertices=subgraph,
        expected_scores=expected_scores,
        achieved_scores=achieved_scores,
    )
    return subgraph, trace
