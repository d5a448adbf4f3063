"""Iterative keyword-set expansion: keywords select blogs, the top blogs by
deviant click ratio contribute their full query sets back, to convergence."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .ingest import (
    BlogHitStats,
    Dictionary,
    MatchKind,
    QueryRecord,
    aggregate_blog_hits,
    filter_candidate_blogs,
    match_query,
    normalize_query,
)

RATIO_VOLUME = "volume"
RATIO_UNIQUE = "unique"


@dataclass(frozen=True)
class SeedState:
    iteration: int
    keywords: frozenset[str]
    blogs: frozenset[str]
    queries_hitting: frozenset[str]


@dataclass(frozen=True)
class TrajectoryRow:
    iteration: int
    keywords: int
    blogs: int
    queries: int


@dataclass(frozen=True)
class ExtractionResult:
    state: SeedState
    trajectory: tuple[TrajectoryRow, ...]
    converged: bool
    iterations_run: int


def deviant_ratio(stats: BlogHitStats, mode: str = RATIO_VOLUME) -> float:
    """Share of a blog's incoming clicks (or distinct queries) that are deviant."""
    if mode == RATIO_VOLUME:
        if stats.total_clicks == 0:
            raise ValueError(f"blog {stats.blog_id!r} has zero total clicks")
        return stats.deviant_clicks / stats.total_clicks
    if mode == RATIO_UNIQUE:
        if stats.unique_queries == 0:
            raise ValueError(f"blog {stats.blog_id!r} has zero unique queries")
        return stats.deviant_unique_queries / stats.unique_queries
    raise ValueError(f"unknown ratio mode: {mode!r}")


def seed_keywords(records: Iterable[QueryRecord], d: Dictionary) -> frozenset[str]:
    """Distinct normalized log queries matching the dual dictionary."""
    return frozenset(r.normalized_query for r in records
                     if r.normalized_query
                     and match_query(r.normalized_query, d) is not MatchKind.NO_MATCH)


def _queries_matching(records: Sequence[QueryRecord], keywords: frozenset[str]) -> frozenset[str]:
    return frozenset(r.normalized_query for r in records if r.normalized_query in keywords)


def initial_state(seed: Iterable[str], full_log: Sequence[QueryRecord],
                  min_unique: int = 2, min_clicks: int = 3) -> SeedState:
    keywords = frozenset(filter(None, (normalize_query(p) for p in seed)))
    if not keywords:
        raise ValueError("empty seed keyword set")
    stats = aggregate_blog_hits(full_log, set(keywords))
    blogs = frozenset(filter_candidate_blogs(stats, min_unique, min_clicks))
    return SeedState(iteration=0, keywords=keywords, blogs=blogs,
                     queries_hitting=_queries_matching(full_log, keywords))


def select_top_blogs(state: SeedState, stats: dict[str, BlogHitStats],
                     decile: float = 0.10, ratio_mode: str = RATIO_VOLUME) -> list[str]:
    """Top ceil(decile * |B|) blogs by deviant ratio, ties by blog id."""
    k = math.ceil(decile * len(state.blogs))
    ranked = sorted(state.blogs,
                    key=lambda b: (-deviant_ratio(stats[b], ratio_mode), b))
    return ranked[:k]


def expand_keywords(state: SeedState, full_log: Sequence[QueryRecord],
                    decile: float = 0.10, min_unique: int = 2, min_clicks: int = 3,
                    ratio_mode: str = RATIO_VOLUME) -> SeedState:
    """One expansion step: absorb every query hitting the top-ratio blogs,
    then recompute the candidate blog set under the grown keyword set."""
    if not state.blogs:
        raise ValueError("nothing to expand: empty blog set")
    stats = aggregate_blog_hits(full_log, set(state.keywords))
    top = set(select_top_blogs(state, stats, decile, ratio_mode))
    collected = {r.normalized_query for r in full_log
                 if r.blog_id in top and r.normalized_query}
    keywords = state.keywords | collected
    new_stats = aggregate_blog_hits(full_log, set(keywords))
    blogs = frozenset(filter_candidate_blogs(new_stats, min_unique, min_clicks))
    return SeedState(iteration=state.iteration + 1, keywords=keywords, blogs=blogs,
                     queries_hitting=_queries_matching(full_log, keywords))


def extract_deviant_graph(seed: Iterable[str], full_log: Sequence[QueryRecord],
                          max_iter: int = 20, eps: float = 0.01,
                          decile: float = 0.10, min_unique: int = 2, min_clicks: int = 3,
                          ratio_mode: str = RATIO_VOLUME) -> ExtractionResult:
    """Run expansion until the relative growth of both the keyword and blog
    sets falls below eps (an exact fixed point always stops, so eps=0
    terminates too), or max_iter is reached.

    The trajectory records one row per distinct state, starting at the
    seed state; a step that changes nothing appends no duplicate row.
    """
    state = initial_state(seed, full_log, min_unique, min_clicks)
    trajectory = [_row(state)]
    converged = False
    iterations_run = 0
    for _ in range(max_iter):
        nxt = expand_keywords(state, full_log, decile, min_unique, min_clicks, ratio_mode)
        iterations_run += 1
        if nxt.keywords == state.keywords and nxt.blogs == state.blogs:
            converged = True
            break
        growth_k = (len(nxt.keywords) - len(state.keywords)) / len(state.keywords)
        growth_b = (len(nxt.blogs) - len(state.blogs)) / len(state.blogs)
        state = nxt
        trajectory.append(_row(state))
        if growth_k < eps and growth_b < eps:
            converged = True
            break
    return ExtractionResult(state=state, trajectory=tuple(trajectory),
                            converged=converged, iterations_run=iterations_run)


def _row(state: SeedState) -> TrajectoryRow:
    return TrajectoryRow(iteration=state.iteration, keywords=len(state.keywords),
                         blogs=len(state.blogs), queries=len(state.queries_hitting))


def write_trajectory_csv(trajectory: Iterable[TrajectoryRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("iteration,keywords,blogs,queries\n")
        for row in trajectory:
            fh.write(f"{row.iteration},{row.keywords},{row.blogs},{row.queries}\n")
