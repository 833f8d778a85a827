"""Influence rankings, entropic-index sweeps, and stability detection.

Scoring every node at one entropic index q yields a ScoreTable; sorting
descending (ties broken by ascending label) yields the Ranking for that
q. Sweeping a grid of q values exposes how the ranking evolves, and
``detect_threshold`` finds the smallest grid q past which the ranking
stops changing: the nonextensive threshold of the network.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from functools import partial
import math

from scipy.stats import kendalltau

from .entropy import local_structure_entropy
from .graph import Graph

# Sweep used throughout: dense at small q where rankings churn, sparser
# once they settle. 43 points over [0, 10].
DEFAULT_GRID_SPEC = "0:2:0.1,2.2:4:0.2,4.5:10:0.5"

# Upper bound accepted for the relaxed stability tolerance.
MAX_RELAXED_TAU = 0.05


def label_sort_key(label: str) -> tuple[int, int, str]:
    """Tie-break key: integer labels ascend numerically and sort ahead of
    non-integer labels, which ascend lexicographically."""
    try:
        return (0, int(label), label)
    except ValueError:
        return (1, 0, label)


@dataclass(frozen=True)
class ScoreTable:
    """Per-node entropy scores at one entropic index."""

    q: float
    labels: tuple[str, ...]
    scores: tuple[float, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.scores):
            raise ValueError("labels and scores lengths differ")


@dataclass(frozen=True)
class Ranking:
    """Total influence order over node labels, most influential first."""

    ordered_labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.ordered_labels)) != len(self.ordered_labels):
            raise ValueError("ranking contains duplicate labels")

    def top(self, k: int) -> tuple[str, ...]:
        return self.ordered_labels[: max(0, k)]


@dataclass(frozen=True)
class SweepResult:
    """Score tables and rankings for each point of a q grid."""

    grid: tuple[float, ...]
    score_tables: tuple[ScoreTable, ...]
    rankings: tuple[Ranking, ...]


@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of stability detection over a sweep.

    ``p_value`` is the smallest grid q whose suffix of rankings agrees
    (None when even the last two rankings differ); ``suffix_length``
    counts the agreeing grid points at the tail.
    """

    p_value: float | None
    stable_ranking: Ranking | None
    suffix_length: int


@dataclass(frozen=True)
class ThreeStates:
    """The three canonical orderings: q=0, q=1, and the stable suffix."""

    order_q0: Ranking
    order_q1: Ranking
    order_stable: Ranking | None


@dataclass(frozen=True)
class RankingComparison:
    kendall_tau: float
    top_k_overlap: dict[int, float]


def score_all(graph: Graph, q: float) -> ScoreTable:
    """Local structure entropy of every node at entropic index q."""
    scores = tuple(
        local_structure_entropy(graph, i, q) for i in range(graph.node_count)
    )
    return ScoreTable(q=float(q), labels=graph.labels, scores=scores)


def rank(table: ScoreTable) -> Ranking:
    """Descending stable sort by score; ties ascend by original label."""
    order = sorted(
        range(len(table.scores)),
        key=lambda i: (-table.scores[i], label_sort_key(table.labels[i])),
    )
    return Ranking(tuple(table.labels[i] for i in order))


def _checked_grid(grid: tuple[float, ...]) -> tuple[float, ...]:
    if not grid:
        raise ValueError("q grid is empty")
    for q in grid:
        if not math.isfinite(q) or q < 0.0:
            raise ValueError(f"grid values must be finite and >= 0, got {q!r}")
    for a, b in zip(grid, grid[1:]):
        if not a < b:
            raise ValueError(f"grid must be strictly increasing ({a} !< {b})")
    return grid


def sweep(graph: Graph, grid, jobs: int = 1) -> SweepResult:
    """Score and rank every node at each grid point.

    Grid points are independent; with ``jobs > 1`` they are evaluated in
    a process pool. Output order is fixed by the grid, so results are
    identical for every parallelism degree.
    """
    grid = _checked_grid(tuple(float(q) for q in grid))
    if jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(grid))) as pool:
            tables = tuple(pool.map(partial(score_all, graph), grid))
    else:
        tables = tuple(score_all(graph, q) for q in grid)
    rankings = tuple(rank(t) for t in tables)
    return SweepResult(grid=grid, score_tables=tables, rankings=rankings)


def _checked_relaxed_tau(relaxed_tau: float) -> float:
    relaxed_tau = float(relaxed_tau)
    if not 0.0 < relaxed_tau <= MAX_RELAXED_TAU:
        raise ValueError(
            f"relaxed tau tolerance must lie in (0, {MAX_RELAXED_TAU}], "
            f"got {relaxed_tau!r}"
        )
    return relaxed_tau


def detect_threshold(
    result: SweepResult, relaxed_tau: float | None = None
) -> ThresholdReport:
    """Find the smallest grid q whose ranking suffix is stable.

    Exact mode (default) demands the suffix rankings be identical. The
    relaxed mode instead accepts a suffix whose rankings agree pairwise
    to Kendall tau >= 1 - relaxed_tau, which tolerates sporadic adjacent
    swaps. A single final grid point never counts: at least two agreeing
    points are required, otherwise p_value is None.
    """
    if len(result.grid) < 2:
        raise ValueError("threshold detection needs a sweep of >= 2 grid points")
    rankings = result.rankings
    last = len(rankings) - 1
    start = last
    if relaxed_tau is None:
        while start > 0 and rankings[start - 1] == rankings[start]:
            start -= 1
    else:
        floor = 1.0 - _checked_relaxed_tau(relaxed_tau)
        while start > 0:
            candidate = start - 1
            if all(
                _kendall_tau(rankings[candidate], rankings[i]) >= floor
                for i in range(candidate + 1, last + 1)
            ):
                start = candidate
            else:
                break
    suffix_length = len(rankings) - start
    if suffix_length >= 2:
        return ThresholdReport(
            p_value=result.grid[start],
            stable_ranking=rankings[last],
            suffix_length=suffix_length,
        )
    return ThresholdReport(p_value=None, stable_ranking=None, suffix_length=suffix_length)


def refine_threshold(
    graph: Graph,
    result: SweepResult,
    report: ThresholdReport,
    resolution: float = 0.1,
    relaxed_tau: float | None = None,
) -> float | None:
    """Bisect between the last unstable and first stable grid point.

    Returns a q known to reproduce the stable ranking, within
    ``resolution`` of the true onset (assuming stability is monotone in
    q). Falls back to the reported p_value when it sits on the first
    grid point; None when no threshold was detected.
    """
    if report.p_value is None or report.stable_ranking is None:
        return None
    index = result.grid.index(report.p_value)
    if index == 0:
        return report.p_value
    floor = None if relaxed_tau is None else 1.0 - _checked_relaxed_tau(relaxed_tau)
    lo, hi = result.grid[index - 1], result.grid[index]
    while hi - lo > resolution:
        mid = (lo + hi) / 2.0
        candidate = rank(score_all(graph, mid))
        if floor is None:
            stable = candidate == report.stable_ranking
        else:
            stable = _kendall_tau(candidate, report.stable_ranking) >= floor
        if stable:
            hi = mid
        else:
            lo = mid
    return hi


def three_states(
    graph: Graph, grid, jobs: int = 1, relaxed_tau: float | None = None
) -> ThreeStates:
    """Rankings at q=0 and q=1 plus the detected stable ranking."""
    grid = tuple(float(q) for q in grid)
    if 0.0 not in grid or 1.0 not in grid:
        raise ValueError("three-states grid must contain q=0 and q=1")
    result = sweep(graph, grid, jobs=jobs)
    report = detect_threshold(result, relaxed_tau=relaxed_tau)
    return ThreeStates(
        order_q0=result.rankings[grid.index(0.0)],
        order_q1=result.rankings[grid.index(1.0)],
        order_stable=report.stable_ranking,
    )


def _kendall_tau(a: Ranking, b: Ranking) -> float:
    # Permutations carry no ties, so tau-b coincides with plain tau.
    labels = sorted(a.ordered_labels, key=label_sort_key)
    if len(labels) < 2:
        return 1.0
    pos_a = {lab: i for i, lab in enumerate(a.ordered_labels)}
    pos_b = {lab: i for i, lab in enumerate(b.ordered_labels)}
    statistic = kendalltau(
        [pos_a[lab] for lab in labels], [pos_b[lab] for lab in labels]
    ).statistic
    return float(statistic)


def compare_rankings(a: Ranking, b: Ranking) -> RankingComparison:
    """Kendall tau-b plus top-5/top-10 overlap between two rankings.

    Raises:
        ValueError: the rankings do not cover the same label set; the
            message lists (up to) the first 10 differing labels.
    """
    set_a, set_b = set(a.ordered_labels), set(b.ordered_labels)
    if set_a != set_b:
        difference = sorted(set_a ^ set_b, key=label_sort_key)[:10]
        raise ValueError(
            "rankings cover different label sets; differing labels: "
            + ", ".join(difference)
        )
    n = len(a.ordered_labels)
    overlap = {}
    for k in (5, 10):
        capped = min(k, n)
        shared = set(a.top(capped)) & set(b.top(capped))
        overlap[k] = len(shared) / capped
    return RankingComparison(kendall_tau=_kendall_tau(a, b), top_k_overlap=overlap)


def parse_grid(spec: str) -> tuple[float, ...]:
    """Parse a grid spec: comma-separated values and/or a:b:step ranges.

    Segments are decimal-exact (``0.1`` steps do not drift); b is
    included when it lands on the step. The combined grid must be
    strictly increasing and non-negative.
    """
    points: list[float] = []
    for segment in spec.split(","):
        segment = segment.strip()
        parts = segment.split(":")
        try:
            if len(parts) == 1:
                points.append(float(Decimal(parts[0])))
                continue
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (Decimal(p) for p in parts)
        except (InvalidOperation, ValueError):
            raise ValueError(
                f"bad grid segment {segment!r}; expected a value or start:stop:step"
            ) from None
        if step <= 0:
            raise ValueError(f"grid step must be positive in {segment!r}")
        value = start
        while value <= stop:
            points.append(float(value))
            value += step
    return _checked_grid(tuple(points))


def default_grid() -> tuple[float, ...]:
    """The 43-point default q grid over [0, 10]."""
    return parse_grid(DEFAULT_GRID_SPEC)
