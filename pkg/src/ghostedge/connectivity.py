"""Internally disjoint (x, y)-paths and small (x, y)-separators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import bits, mask_of

MAX_SEPARATOR_SIZE = 6


@dataclass(frozen=True)
class PathSystem:
    x: int
    y: int
    paths: tuple  # tuples of vertex ids, each from x to y

    @property
    def count(self):
        return len(self.paths)

    def problems(self, g):
        """Everything wrong with this system as a set of internally disjoint paths."""
        out = []
        interiors = set()
        for p in self.paths:
            if len(p) < 2 or p[0] != self.x or p[-1] != self.y:
                out.append(f"path {p} does not run from {self.x} to {self.y}")
                continue
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    out.append(f"path {p} uses non-edge {a} {b}")
            inner = p[1:-1]
            if self.x in inner or self.y in inner or len(set(inner)) != len(inner):
                out.append(f"path {p} is not simple")
            if interiors & set(inner):
                out.append(f"path {p} shares interior vertices with an earlier path")
            interiors |= set(inner)
        if sum(1 for p in self.paths if len(p) == 2) > 1:
            out.append("the edge xy is used more than once")
        return out


def _check_pair(g, x, y):
    for v in (x, y):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    if x == y:
        raise ValueError("x and y must differ")


def menger_count(g, x, y):
    """Maximum system of internally vertex-disjoint (x, y)-paths.

    Every vertex other than x and y is split into an in-copy and an out-copy
    joined by a unit arc; graph edges become uncapacitated arcs both ways.
    Augmenting paths are found by BFS. A direct edge xy counts as one path.
    """
    _check_pair(g, x, y)
    n = g.n
    big = n + 1

    def v_in(v):
        return 2 * v + 1 if v in (x, y) else 2 * v

    def v_out(v):
        return 2 * v + 1

    cap = {}
    flow = {}
    succ = [set() for _ in range(2 * n)]

    def arc(a, b, c):
        cap[(a, b)] = c
        succ[a].add(b)
        succ[b].add(a)

    for v in range(n):
        if v not in (x, y):
            arc(v_in(v), v_out(v), 1)
    for u, v in g.edges:
        if {u, v} == {x, y}:
            continue
        arc(v_out(u), v_in(v), big)
        arc(v_out(v), v_in(u), big)
    order = [sorted(s) for s in succ]

    def residual(a, b):
        return cap.get((a, b), 0) - flow.get((a, b), 0)

    source, sink = v_out(x), v_in(y)
    value = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in order[a]:
                if b not in parent and residual(a, b) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            flow[(a, b)] = flow.get((a, b), 0) + 1
            flow[(b, a)] = flow.get((b, a), 0) - 1
            b = a
        value += 1

    step = {}
    for u, v in g.edges:
        if {u, v} == {x, y}:
            continue
        net = flow.get((v_out(u), v_in(v)), 0) - flow.get((v_out(v), v_in(u)), 0)
        if net > 0:
            step.setdefault(u, []).append(v)
        elif net < 0:
            step.setdefault(v, []).append(u)
    for targets in step.values():
        targets.sort()
    paths = [(x, y)] if g.has_edge(x, y) else []
    for first in step.get(x, []):
        walk = [x, first]
        while walk[-1] != y:
            walk.append(step[walk[-1]][0])
        paths.append(tuple(walk))
    if len(paths) != value + g.has_edge(x, y):
        raise AssertionError("flow decomposition lost a path")
    return PathSystem(x, y, tuple(sorted(paths, key=lambda p: (len(p), p))))


def separates(g, x, y, s_mask):
    """True iff removing ``s_mask`` leaves no (x, y)-path."""
    allowed = g.all_mask & ~s_mask
    seen = frontier = 1 << x
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.nbr[v]
        frontier = grow & allowed & ~seen
        if frontier >> y & 1:
            return False
        seen |= frontier
    return True


def enumerate_separators(g, x, y, max_size):
    """All S avoiding x, y with ``|S| <= max_size`` whose removal separates x
    from y, minimal or not, sorted by size and then lexicographically."""
    _check_pair(g, x, y)
    if max_size > MAX_SEPARATOR_SIZE:
        raise ValueError(f"max_size {max_size} exceeds the guard of {MAX_SEPARATOR_SIZE}")
    if g.has_edge(x, y):
        return []
    pool = [v for v in range(g.n) if v not in (x, y)]
    found = []
    for size in range(0, min(max_size, len(pool)) + 1):
        for s in combinations(pool, size):
            if separates(g, x, y, mask_of(s)):
                found.append(frozenset(s))
    return found


def min_separator_size(g, x, y):
    """Smallest (x, y)-separator by exhaustive search; None when xy is an edge."""
    _check_pair(g, x, y)
    if g.has_edge(x, y):
        return None
    pool = [v for v in range(g.n) if v not in (x, y)]
    for size in range(len(pool) + 1):
        if any(separates(g, x, y, mask_of(s)) for s in combinations(pool, size)):
            return size
    return None
