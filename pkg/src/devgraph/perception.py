"""Local perception biases: the share of observed neighbors that are deviant
(majority-illusion curve) and the volume friendship paradox."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .graph import LayeredGraph


@dataclass(frozen=True)
class PerceptionCurve:
    """fraction_at_least[i] = share of eligible nodes whose deviant-neighbor
    fraction is >= thresholds[i]."""
    thresholds: tuple[float, ...]
    fraction_at_least: tuple[float, ...]
    layer: str
    eligible: int
    excluded_zero_outdegree: int

    def value(self, t: float) -> float:
        return self.fraction_at_least[self.thresholds.index(t)]


def perception_curve(g: LayeredGraph, layer: str, deviant_active: set[str],
                     exclude: set[str] | None = None,
                     step: float = 0.01) -> PerceptionCurve:
    """ICDF over nodes of the fraction of out-neighbors (the accounts a node
    observes) that are in deviant_active.

    Nodes in `exclude` (typically the producers themselves) and nodes with
    no out-neighbors are left out of the population; the zero-out-degree
    count is reported on the curve.
    """
    exclude = exclude or set()
    fractions: list[float] = []
    excluded_zero = 0
    for node in g.node_ids:
        if node in exclude:
            continue
        out = g.out_neighbors(layer, node)
        if not out:
            excluded_zero += 1
            continue
        fractions.append(sum(v in deviant_active for v in out) / len(out))
    if not fractions:
        raise ValueError("no eligible nodes: every node lacks out-neighbors")
    n_steps = round(1.0 / step)
    # integer grid keeps thresholds like 0.30 exactly equal to the literal
    thresholds = np.arange(n_steps + 1) / n_steps
    fracs = np.sort(np.asarray(fractions))
    at_least = 1.0 - np.searchsorted(fracs, thresholds, side="left") / len(fracs)
    return PerceptionCurve(thresholds=tuple(float(t) for t in thresholds),
                           fraction_at_least=tuple(float(v) for v in at_least),
                           layer=layer, eligible=len(fractions),
                           excluded_zero_outdegree=excluded_zero)


def volume_paradox_fraction(g: LayeredGraph, layer: str,
                            reblog_counts: dict[str, int],
                            exclude: set[str] | None = None) -> float:
    """Fraction of nodes whose own deviant reblog count falls strictly below
    the mean count of their out-neighbors.

    Presence in reblog_counts marks a neighbor as eligible (posted or
    reblogged at least once); nodes without any eligible neighbor are
    excluded from the denominator.
    """
    exclude = exclude or set()
    considered = 0
    below = 0
    for node in g.node_ids:
        if node in exclude:
            continue
        eligible = [reblog_counts[v] for v in g.out_neighbors(layer, node)
                    if v in reblog_counts]
        if not eligible:
            continue
        considered += 1
        if reblog_counts.get(node, 0) < sum(eligible) / len(eligible):
            below += 1
    if considered == 0:
        raise ValueError("no nodes with eligible out-neighbors")
    return below / considered


def write_curves_csv(curves: Iterable[PerceptionCurve], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("threshold,fraction,layer\n")
        for curve in curves:
            for t, v in zip(curve.thresholds, curve.fraction_at_least):
                fh.write(f"{t:.4g},{v:.10g},{curve.layer}\n")
