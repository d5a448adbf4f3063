"""Targeted-removal simulation: rank core nodes, erase their posts, and
measure how far the observed diffusion trees shrink."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .graph import REBLOG, LayeredGraph
from .diffusion import DiffusionTree

BY_VOLUME = "ByVolume"
BY_DEGREE = "ByDegree"
DEFAULT_SIZES = (0, 200, 1000, 5000, 10000, 25000)


@dataclass(frozen=True)
class ShrinkageCurve:
    sizes: tuple[int, ...]
    reached_fraction: tuple[float, ...]
    strategy: str
    warnings: tuple[str, ...] = ()

    def value(self, size: int) -> float:
        return self.reached_fraction[self.sizes.index(size)]


def rank_by_volume(trees: Sequence[DiffusionTree]) -> list[str]:
    """Roots and spreaders ordered by how many distinct blogs sit strictly
    below them across all trees; ties break by node id."""
    reach: dict[str, set[str]] = {}
    candidates: set[str] = set()
    for tree in trees:
        candidates.add(tree.root)
        candidates.update(tree.parent.values())
        for node in tree.parent:
            cur = tree.parent[node]
            while True:
                reach.setdefault(cur, set()).add(node)
                if cur == tree.root:
                    break
                cur = tree.parent[cur]
    return sorted(candidates, key=lambda n: (-len(reach.get(n, ())), n))


def rank_by_degree(g: LayeredGraph) -> list[str]:
    """Nodes by unweighted reblog in-degree, descending; ties by node id."""
    if g.n_edges(REBLOG) == 0:
        raise ValueError("reblog layer has no edges")
    indeg = g.in_degrees(REBLOG)
    return sorted(g.node_ids, key=lambda n: (-int(indeg[g.index_of(n)]), n))


def baseline_consumers(trees: Sequence[DiffusionTree]) -> set[str]:
    """Everyone who appears below a root in some tree."""
    out: set[str] = set()
    for tree in trees:
        out |= tree.nodes() - {tree.root}
    return out


def reached_consumers(trees: Sequence[DiffusionTree], removed: set[str]) -> set[str]:
    """Nodes still reachable from a surviving root along paths that avoid
    the removed set entirely (erased posts sever their whole subtree)."""
    reached: set[str] = set()
    for tree in trees:
        if tree.root in removed:
            continue
        frontier = [tree.root]
        while frontier:
            nxt = []
            for u in frontier:
                for child in tree.children.get(u, ()):
                    # a node may already be reached via another tree, but its
                    # subtree here still needs walking
                    if child not in removed:
                        reached.add(child)
                        nxt.append(child)
            frontier = nxt
    return reached


def shrinkage_curve(trees: Sequence[DiffusionTree], ranking: Sequence[str],
                    sizes: Iterable[int] = DEFAULT_SIZES,
                    strategy: str = BY_VOLUME) -> ShrinkageCurve:
    """Fraction of baseline consumers still reached when the top-k ranked
    nodes are erased, for each requested k."""
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("removal sizes must be ascending")
    baseline = baseline_consumers(trees)
    if not baseline:
        raise ValueError("no baseline consumers: trees are empty")
    warnings: list[str] = []
    fractions: list[float] = []
    for k in sizes:
        if k > len(ranking):
            warnings.append(f"size {k} exceeds ranking length {len(ranking)}; truncated")
        removed = set(ranking[:k])
        still = reached_consumers(trees, removed) & baseline
        fractions.append(len(still) / len(baseline))
    return ShrinkageCurve(sizes=tuple(sizes), reached_fraction=tuple(fractions),
                          strategy=strategy, warnings=tuple(warnings))


@dataclass(frozen=True)
class UnderageThreshold:
    k: int
    note: str | None = None


def underage_exposure_threshold(trees: Sequence[DiffusionTree], ranking: Sequence[str],
                                ages: dict[str, int], cutoff: int = 18) -> UnderageThreshold:
    """Smallest removal prefix after which no known-underage consumer remains
    reached. Reached sets shrink as the prefix grows, so binary search applies."""
    underage = {n for n, a in ages.items() if a < cutoff}
    base = baseline_consumers(trees) & underage
    if not base:
        return UnderageThreshold(0, note="no underage consumers in baseline")

    def exposed(k: int) -> bool:
        return bool(reached_consumers(trees, set(ranking[:k])) & underage)

    if exposed(len(ranking)):
        raise ValueError("underage nodes remain reached even after removing "
                         "every ranked node")
    lo, hi = 0, len(ranking)
    while lo < hi:
        mid = (lo + hi) // 2
        if exposed(mid):
            lo = mid + 1
        else:
            hi = mid
    return UnderageThreshold(lo)


def adaptive_greedy_ranking(trees: Sequence[DiffusionTree], size: int) -> list[str]:
    """Marginal-coverage greedy: repeatedly erase the node whose removal
    cuts the most still-reached consumers. Myopic: when trees overlap heavily,
    removals that only pay off jointly are invisible to it."""
    candidates = {tree.root for tree in trees}
    for tree in trees:
        candidates.update(tree.parent.values())
    chosen: list[str] = []
    removed: set[str] = set()
    for _ in range(min(size, len(candidates))):
        current = len(reached_consumers(trees, removed))
        best = None
        best_gain = -1
        for cand in sorted(candidates - removed):
            gain = current - len(reached_consumers(trees, removed | {cand}))
            if gain > best_gain:
                best_gain = gain
                best = cand
        if best is None:
            break
        chosen.append(best)
        removed.add(best)
    return chosen


def write_shrinkage_csv(curves: Iterable[ShrinkageCurve], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("removed,reached_fraction,strategy\n")
        for curve in curves:
            for k, v in zip(curve.sizes, curve.reached_fraction):
                fh.write(f"{k},{v:.10g},{curve.strategy}\n")
