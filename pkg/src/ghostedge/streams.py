"""Graph sources for the counterexample search."""

from __future__ import annotations

import random
from pathlib import Path

from .graph import Graph, is_connected, is_isomorphic, parse_gr, parse_labels


def _invariant(g):
    triangles = [sum(1 for a in g.adj[v] for b in g.adj[v] if a < b and g.has_edge(a, b))
                 for v in range(g.n)]
    return (g.n, g.m, tuple(sorted(
        (g.degree(v), triangles[v], tuple(sorted(g.degree(w) for w in g.adj[v])))
        for v in range(g.n))))


def all_graphs(n):
    """One representative per isomorphism class of graphs on ``n`` vertices.

    Grown by adding a vertex with every possible neighbourhood to each
    class on ``n - 1`` vertices; duplicates are removed by an invariant
    bucket followed by an explicit isomorphism test.
    """
    level = [Graph(0)]
    for size in range(1, n + 1):
        buckets = {}
        out = []
        for h in level:
            new = size - 1
            for nbhd in range(1 << new):
                edges = list(h.edges) + [(v, new) for v in range(new) if nbhd >> v & 1]
                g = Graph(size, edges)
                bucket = buckets.setdefault(_invariant(g), [])
                if any(is_isomorphic(g, other) is not None for other in bucket):
                    continue
                bucket.append(g)
                out.append(g)
        out.sort(key=lambda g: (g.m, g.edges))
        level = out
    return level


def connected_graphs(max_n, min_n=1):
    """Connected graphs up to isomorphism, by vertex count, then edge count,
    then edge list."""
    for n in range(min_n, max_n + 1):
        for g in all_graphs(n):
            if is_connected(g):
                yield g


def random_connected_graphs(count, n, p, seed):
    """``count`` connected Erdos-Renyi ``G(n, p)`` samples; disconnected
    draws are discarded and redrawn from the same seeded stream."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if is_connected(g):
            made += 1
            yield g


def gr_directory(path):
    """Every ``*.gr`` file in ``path`` in lexicographic order, with labels from
    a ``.labels`` sidecar when present."""
    for file in sorted(Path(path).glob("*.gr")):
        g = parse_gr(file.read_bytes())
        side = file.with_suffix(".labels")
        if side.exists():
            g = g.with_labels(parse_labels(side.read_text(), g.n))
        yield g
