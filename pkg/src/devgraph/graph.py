"""Layered directed graph store (follow + weighted reblog) and structural statistics.

Edge direction i -> j means i follows / reblogs j, i.e. information flows
from j to i. Both layers share one node universe with dense integer
indices assigned in first-seen order; external ids are strings.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

FOLLOW = "F"
REBLOG = "R"
LAYERS = (FOLLOW, REBLOG)

# above this GWCC size, shortest paths are estimated from sampled BFS sources
EXACT_PATH_LIMIT = 10_000

_PATH_CHUNK = 512


class _Layer:
    """Frozen adjacency for one layer: CSR out-view plus an in-view."""

    def __init__(self, n_nodes: int, adj: dict[int, dict[int, float]]):
        srcs: list[int] = []
        dsts: list[int] = []
        ws: list[float] = []
        for u in sorted(adj):
            row = adj[u]
            for v in sorted(row):
                srcs.append(u)
                dsts.append(v)
                ws.append(row[v])
        self.src = np.asarray(srcs, dtype=np.int64)
        self.dst = np.asarray(dsts, dtype=np.int64)
        self.weight = np.asarray(ws, dtype=np.float64)
        self.n_edges = len(srcs)
        counts = np.bincount(self.src, minlength=n_nodes) if self.n_edges else np.zeros(n_nodes, dtype=np.int64)
        self.out_indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.out_indices = self.dst
        self.out_weights = self.weight
        order = np.lexsort((self.src, self.dst)) if self.n_edges else np.array([], dtype=np.int64)
        in_counts = np.bincount(self.dst, minlength=n_nodes) if self.n_edges else np.zeros(n_nodes, dtype=np.int64)
        self.in_indptr = np.concatenate(([0], np.cumsum(in_counts))).astype(np.int64)
        self.in_indices = self.src[order]

    def out_row(self, u: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[u]:self.out_indptr[u + 1]]

    def out_row_weights(self, u: int) -> np.ndarray:
        return self.out_weights[self.out_indptr[u]:self.out_indptr[u + 1]]

    def in_row(self, u: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[u]:self.in_indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.out_row(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def csr(self, n_nodes: int, weighted: bool = True) -> sp.csr_matrix:
        data = self.weight if weighted else np.ones(self.n_edges, dtype=np.float64)
        return sp.csr_matrix((data, self.out_indices, self.out_indptr), shape=(n_nodes, n_nodes))


class LayeredGraph:
    """Immutable two-layer directed graph over a shared node universe."""

    def __init__(self, ids: Iterable[str], layers: dict[str, _Layer],
                 labels: dict[str, str] | None = None,
                 diagnostics: Counter | None = None):
        self._ids: tuple[str, ...] = tuple(ids)
        self._index: dict[str, int] = {b: i for i, b in enumerate(self._ids)}
        self._layers = layers
        self.labels: dict[str, str] = dict(labels) if labels else {}
        self.diagnostics: Counter = diagnostics if diagnostics is not None else Counter()

    # -- node universe ------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self._ids)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return self._ids

    def has_node(self, node: str) -> bool:
        return node in self._index

    def index_of(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise ValueError(f"unknown node: {node!r}") from None

    def id_of(self, idx: int) -> str:
        return self._ids[idx]

    # -- edges ---------------------------------------------------------

    def layer(self, name: str) -> _Layer:
        try:
            return self._layers[name]
        except KeyError:
            raise ValueError(f"unknown layer: {name!r} (expected one of {LAYERS})") from None

    def n_edges(self, layer: str) -> int:
        return self.layer(layer).n_edges

    def out_neighbors(self, layer: str, node: str) -> tuple[str, ...]:
        row = self.layer(layer).out_row(self.index_of(node))
        return tuple(self._ids[v] for v in row)

    def in_neighbors(self, layer: str, node: str) -> tuple[str, ...]:
        row = self.layer(layer).in_row(self.index_of(node))
        return tuple(self._ids[v] for v in row)

    def out_degree(self, layer: str, node: str) -> int:
        lay = self.layer(layer)
        u = self.index_of(node)
        return int(lay.out_indptr[u + 1] - lay.out_indptr[u])

    def in_degree(self, layer: str, node: str) -> int:
        lay = self.layer(layer)
        u = self.index_of(node)
        return int(lay.in_indptr[u + 1] - lay.in_indptr[u])

    def out_degrees(self, layer: str) -> np.ndarray:
        return np.diff(self.layer(layer).out_indptr)

    def in_degrees(self, layer: str) -> np.ndarray:
        return np.diff(self.layer(layer).in_indptr)

    def has_edge(self, layer: str, src: str, dst: str) -> bool:
        return self.layer(layer).has_edge(self.index_of(src), self.index_of(dst))

    def edge_weight(self, layer: str, src: str, dst: str) -> float:
        lay = self.layer(layer)
        u, v = self.index_of(src), self.index_of(dst)
        row = lay.out_row(u)
        i = np.searchsorted(row, v)
        if i < len(row) and row[i] == v:
            return float(lay.out_row_weights(u)[i])
        return 0.0

    def edges(self, layer: str) -> Iterator[tuple[str, str, float]]:
        lay = self.layer(layer)
        for u, v, w in zip(lay.src, lay.dst, lay.weight):
            yield self._ids[u], self._ids[v], float(w)

    def edge_arrays(self, layer: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Internal-index (src, dst, weight) arrays for the layer."""
        lay = self.layer(layer)
        return lay.src.copy(), lay.dst.copy(), lay.weight.copy()

    def adjacency(self, layer: str, weighted: bool = True) -> sp.csr_matrix:
        return self.layer(layer).csr(self.n_nodes, weighted=weighted)


def build_graph(edges: Iterable[tuple], labels: dict[str, str] | None = None) -> LayeredGraph:
    """Build a LayeredGraph from (src, dst, weight, layer) tuples.

    Node indices are assigned in first-seen order. Self-loops are dropped
    and counted; duplicate follow edges deduplicate, duplicate reblog
    edges accumulate weight. Malformed entries are skipped and counted.
    """
    index: dict[str, int] = {}
    ids: list[str] = []
    adj: dict[str, dict[int, dict[int, float]]] = {FOLLOW: {}, REBLOG: {}}
    diagnostics: Counter = Counter()

    def intern(node: str) -> int:
        i = index.get(node)
        if i is None:
            i = len(ids)
            index[node] = i
            ids.append(node)
        return i

    for entry in edges:
        try:
            src, dst, weight, layer = entry
            src, dst = str(src), str(dst)
            weight = float(weight)
        except (TypeError, ValueError):
            diagnostics["malformed_edges"] += 1
            continue
        if layer not in LAYERS or not src or not dst:
            diagnostics["malformed_edges"] += 1
            continue
        u, v = intern(src), intern(dst)
        if u == v:
            diagnostics["self_loops_dropped"] += 1
            continue
        row = adj[layer].setdefault(u, {})
        if layer == REBLOG:
            row[v] = row.get(v, 0.0) + weight
        else:
            row[v] = 1.0
    n = len(ids)
    layers = {name: _Layer(n, adj[name]) for name in LAYERS}
    return LayeredGraph(ids, layers, labels=labels, diagnostics=diagnostics)


def load_graph(path: str, labels_path: str | None = None) -> LayeredGraph:
    """Load a graph from an edge-list TSV: src<TAB>dst<TAB>weight<TAB>layer."""
    diagnostics: Counter = Counter()

    def parse(fh):
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                diagnostics["malformed_lines"] += 1
                continue
            yield parts[0], parts[1], parts[2], parts[3]

    with open(path, encoding="utf-8") as fh:
        g = build_graph(parse(fh), labels=read_labels_csv(labels_path) if labels_path else None)
    g.diagnostics.update(diagnostics)
    return g


def write_edge_tsv(g: LayeredGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for layer in LAYERS:
            for src, dst, w in g.edges(layer):
                fh.write(f"{src}\t{dst}\t{w:g}\t{layer}\n")


def read_labels_csv(path: str) -> dict[str, str]:
    """Read a node,group CSV (header optional)."""
    labels: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.lower() == "node,group":
                continue
            node, _, group = line.partition(",")
            if node and group:
                labels[node] = group
    return labels


def write_labels_csv(labels: dict[str, str], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("node,group\n")
        for node in sorted(labels):
            fh.write(f"{node},{labels[node]}\n")


def snowball_sample(g: LayeredGraph, seeds: Iterable[str], hops: int = 3) -> set[str]:
    """Nodes within undirected distance <= hops of any seed, over both layers."""
    frontier: set[int] = set()
    for s in seeds:
        if not g.has_node(s):
            raise ValueError(f"unknown seed node: {s!r}")
        frontier.add(g.index_of(s))
    visited = set(frontier)
    lays = [g.layer(name) for name in LAYERS]
    for _ in range(hops):
        if not frontier:
            break
        nxt: set[int] = set()
        for u in frontier:
            for lay in lays:
                for v in lay.out_row(u):
                    if v not in visited:
                        nxt.add(int(v))
                for v in lay.in_row(u):
                    if v not in visited:
                        nxt.add(int(v))
        visited |= nxt
        frontier = nxt
    return {g.id_of(i) for i in visited}


def induced_subgraph(g: LayeredGraph, keep: Iterable[str]) -> LayeredGraph:
    """Subgraph over `keep`: edges with both endpoints kept, weights preserved."""
    keep_idx = sorted(g.index_of(n) for n in set(keep))
    remap = {old: new for new, old in enumerate(keep_idx)}
    ids = [g.id_of(i) for i in keep_idx]
    mask = np.zeros(g.n_nodes, dtype=bool)
    mask[keep_idx] = True
    layers = {}
    for name in LAYERS:
        lay = g.layer(name)
        sel = mask[lay.src] & mask[lay.dst] if lay.n_edges else np.array([], dtype=bool)
        adj: dict[int, dict[int, float]] = {}
        for u, v, w in zip(lay.src[sel], lay.dst[sel], lay.weight[sel]):
            adj.setdefault(remap[int(u)], {})[remap[int(v)]] = float(w)
        layers[name] = _Layer(len(ids), adj)
    labels = {n: g.labels[n] for n in ids if n in g.labels} if g.labels else None
    return LayeredGraph(ids, layers, labels=labels)


def gwcc(g: LayeredGraph, layer: str) -> set[str]:
    """Giant weakly connected component of the layer; ties go to the
    component containing the smallest node index."""
    if g.n_nodes == 0:
        raise ValueError("empty graph")
    a = g.adjacency(layer, weighted=False)
    _, comp = csgraph.connected_components(a, directed=True, connection="weak")
    sizes = np.bincount(comp)
    min_idx = np.full(len(sizes), g.n_nodes, dtype=np.int64)
    np.minimum.at(min_idx, comp, np.arange(g.n_nodes))
    best = min(range(len(sizes)), key=lambda c: (-sizes[c], min_idx[c]))
    return {g.id_of(i) for i in np.flatnonzero(comp == best)}


@dataclass
class NetworkStats:
    """Structural statistics of one layer's giant weakly connected component."""
    n: int
    e: int
    avg_degree: float
    density: float
    reciprocity: float
    clustering: float
    avg_shortest_path: float
    diameter: float
    paths_exact: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n, "e": self.e,
            "avg_degree": self.avg_degree, "density": self.density,
            "reciprocity": self.reciprocity, "clustering": self.clustering,
            "avg_shortest_path": self.avg_shortest_path, "diameter": self.diameter,
            "paths_exact": self.paths_exact,
        }


def mean_degree_and_density(n_nodes: int, n_edges: int) -> tuple[float, float]:
    """<k> = |E|/|N| and D = |E|/(|N|(|N|-1)) straight from the counts."""
    if n_nodes < 2:
        raise ValueError("need at least 2 nodes")
    return n_edges / n_nodes, n_edges / (n_nodes * (n_nodes - 1))


def _undirected_projection(g: LayeredGraph, layer: str) -> sp.csr_matrix:
    a = g.adjacency(layer, weighted=False)
    u = a + a.T
    u.data = np.ones_like(u.data)
    return u.tocsr()


def _path_stats(u: sp.csr_matrix, n: int, exact: bool, path_samples: int,
                seed) -> tuple[float, float]:
    if exact:
        sources = np.arange(n)
    else:
        if seed is None:
            raise ValueError("seed required for sampled path estimation")
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(n, size=min(path_samples, n), replace=False))
    total = 0.0
    diameter = 0.0
    for lo in range(0, len(sources), _PATH_CHUNK):
        idx = sources[lo:lo + _PATH_CHUNK]
        dist = csgraph.dijkstra(u, directed=True, unweighted=True, indices=idx)
        total += dist.sum()
        diameter = max(diameter, dist.max())
    spl = total / (len(sources) * (n - 1))
    return spl, diameter


def network_stats(g: LayeredGraph, layer: str, exact_paths: bool = False,
                  path_samples: int = 1000, seed=None) -> NetworkStats:
    """Table-style statistics of the layer, computed on its GWCC.

    Average shortest path and diameter use the undirected simple
    projection; for components above EXACT_PATH_LIMIT nodes (and without
    exact_paths) they are estimated from `path_samples` seeded BFS
    sources and the diameter is a lower bound (paths_exact=False).
    """
    component = gwcc(g, layer)
    sub = induced_subgraph(g, component)
    n = sub.n_nodes
    if n < 2:
        raise ValueError("GWCC has fewer than 2 nodes")
    lay = sub.layer(layer)
    e = lay.n_edges
    avg_degree, density = mean_degree_and_density(n, e)

    edge_set = set(zip(lay.src.tolist(), lay.dst.tolist()))
    reciprocal = sum((v, u) in edge_set for u, v in edge_set)
    reciprocity = reciprocal / e if e else 0.0

    u = _undirected_projection(sub, layer)
    deg = np.asarray(u.sum(axis=1)).ravel()
    tri = np.asarray((u @ u).multiply(u).sum(axis=1)).ravel()
    denom = deg * (deg - 1)
    local = np.divide(tri, denom, out=np.zeros(n), where=denom > 0)
    clustering = float(local.mean())

    exact = exact_paths or n <= EXACT_PATH_LIMIT
    spl, diameter = _path_stats(u, n, exact, path_samples, seed)
    return NetworkStats(n=n, e=e, avg_degree=avg_degree, density=density,
                        reciprocity=reciprocity, clustering=clustering,
                        avg_shortest_path=float(spl), diameter=float(diameter),
                        paths_exact=exact)
