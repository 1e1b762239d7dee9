"""Deciding k-ghost-edges.

A non-edge ``xy`` of a connected graph ``G`` with ``tw(G) <= k`` is a
k-ghost-edge when every tree decomposition of width at most ``k`` has a bag
containing both ``x`` and ``y``.

The decision reduces to elimination orderings. Every width-``<= k``
decomposition ``D`` yields a chordal supergraph of ``G`` (make each bag a
clique) with clique number ``<= k + 1`` in which ``xy`` is an edge only if
``D`` co-bags them; every chordal supergraph is the fill graph of one of its
perfect elimination orderings, and that ordering's clique tree co-bags
``x, y`` iff ``xy`` is a fill edge. Finally ``xy`` is a fill edge of ``pi``
iff, at the moment the first of ``x, y`` is eliminated, the other one is in
its reach set. So an excluding decomposition exists iff the bounded
elimination search with that one transition forbidden reaches the full set.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .connectivity import PathSystem, menger_count
from .decomposition import TreeDecomposition, covers_pair, ordering_to_td, validate_td
from .graph import Graph, bits, is_connected, non_edges, popcount
from .treewidth import (MAX_BRUTEFORCE_VERTICES, SolverLimitError, component_search,
                        game_step, treewidth_bruteforce, treewidth_dp)

log = logging.getLogger(__name__)


class DefinitionError(ValueError):
    """The ghost-edge question is not defined for this input."""


@dataclass(frozen=True)
class GhostVerdict:
    is_ghost: bool
    k: int
    pair: tuple
    treewidth: int
    excluding_td: TreeDecomposition | None = None
    menger: PathSystem | None = None

    @property
    def explained(self):
        """True when at least k+1 disjoint paths already force the edge."""
        return self.menger is not None and self.menger.count >= self.k + 1

    @property
    def certificate(self):
        if self.excluding_td is not None:
            return "width-%d decomposition never co-bagging the pair" % self.k
        return "constrained elimination search exhausted with no feasible full prefix"


def _check_pair(g, x, y):
    for v in (x, y):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    if x == y:
        raise ValueError("x and y must differ")
    if g.has_edge(x, y):
        raise DefinitionError(f"{g.name(x)}{g.name(y)} is an edge, not a candidate ghost edge")


def exists_excluding_td(g, x, y, k):
    """A width-``<= k`` decomposition of ``g`` with no bag holding both ``x``
    and ``y``, or None if there is none."""
    _check_pair(g, x, y)
    order = component_search(g, k, avoid=(x, y))
    if order is None:
        return None
    td = ordering_to_td(g, order)
    if covers_pair(td, x, y) or not validate_td(g, td).valid:
        raise AssertionError("excluding ordering produced a bad certificate")
    return td


def sufficient_condition(g, x, y, k):
    """At least ``k + 1`` internally disjoint (x, y)-paths."""
    return menger_count(g, x, y).count >= k + 1


def is_ghost_edge(g, x, y, k, treewidth=None):
    """Decide whether ``xy`` is a k-ghost-edge of ``g``.

    Refuses (``DefinitionError``) when ``xy`` is an edge, ``g`` is
    disconnected or ``tw(g) > k``. ``treewidth`` may be passed when already
    known to skip recomputing it.
    """
    _check_pair(g, x, y)
    if not is_connected(g):
        raise DefinitionError("ghost edges are defined for connected graphs only")
    if treewidth is None:
        treewidth, _ = treewidth_dp(g)
    if treewidth > k:
        raise DefinitionError(f"definition inapplicable: tw={treewidth} exceeds k={k}")
    td = exists_excluding_td(g, x, y, k)
    if td is not None:
        return GhostVerdict(False, k, (x, y), treewidth, excluding_td=td)
    return GhostVerdict(True, k, (x, y), treewidth, menger=menger_count(g, x, y))


def ghost_bruteforce(g, x, y, k):
    """Every ordering of width ``<= k`` has ``xy`` in its fill graph.

    Plays the elimination game over all orderings depth-first, dropping
    prefixes whose width exceeds ``k`` or in which ``x`` and ``y`` were
    already adjacent when the first of them went.
    """
    if g.n > MAX_BRUTEFORCE_VERTICES:
        raise SolverLimitError(f"brute force refuses n={g.n} > {MAX_BRUTEFORCE_VERTICES}")
    _check_pair(g, x, y)

    def escapes(adj, remaining, decided):
        if not remaining:
            return True
        for v in bits(remaining):
            live = adj[v]
            if popcount(live) > k:
                continue
            if not decided and v in (x, y):
                if live >> (y if v == x else x) & 1:
                    continue
                now = True
            else:
                now = decided
            if escapes(game_step(adj, v), remaining & ~(1 << v), now):
                return True
        return False

    if escapes(tuple(g.nbr), g.all_mask, False):
        return False
    if treewidth_bruteforce(g) > k:
        raise DefinitionError(f"definition inapplicable: tw exceeds k={k}")
    return True


# -- counterexample search ---------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    graph: Graph
    x: int
    y: int
    k: int
    menger: int
    treewidth: int
    rechecked: bool  # confirmed by ghost_bruteforce


def examine(g, k_max, recheck=True):
    """All ``(x, y, k)`` on ``g`` refuting "at most k disjoint paths means not
    a k-ghost-edge": ghost edges with ``menger <= k`` and ``tw <= k <= k_max``."""
    if not is_connected(g):
        raise ValueError("search inputs must be connected")
    tw, _ = treewidth_dp(g)
    hits = []
    for x, y in non_edges(g):
        paths = menger_count(g, x, y).count
        for k in range(max(tw, paths), k_max + 1):
            verdict = is_ghost_edge(g, x, y, k, treewidth=tw)
            if not verdict.is_ghost:
                continue
            checked = False
            if recheck and g.n <= MAX_BRUTEFORCE_VERTICES:
                if not ghost_bruteforce(g, x, y, k):
                    raise AssertionError(f"brute force disagrees on {g!r} ({x}, {y}) k={k}")
                checked = True
            hits.append(Counterexample(g, x, y, k, paths, tw, checked))
    return hits


def _examine_safely(args):
    g, k_max, recheck = args
    try:
        return examine(g, k_max, recheck), None
    except (ValueError, SolverLimitError) as exc:
        return [], f"{g!r}: {exc}"


def search_counterexamples(source, k_max, jobs=1, recheck=True):
    """Scan a stream of connected graphs; results come back in source order,
    then pair order, then k, whatever the worker count."""
    items = ((g, k_max, recheck) for g in source)
    hits = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_examine_safely, items, chunksize=8)
            for found, err in results:
                if err:
                    log.warning("skipped %s", err)
                hits.extend(found)
    else:
        for item in items:
            found, err = _examine_safely(item)
            if err:
                log.warning("skipped %s", err)
            hits.extend(found)
    return hits
