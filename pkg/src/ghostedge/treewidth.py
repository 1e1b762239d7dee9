"""Exact treewidth through elimination orderings.

For a prefix ``S`` of an elimination ordering and a vertex ``v`` outside it,
``Q(S, v)`` is the set of vertices outside ``S + v`` reachable from ``v``
through ``S``; eliminating ``v`` right after ``S`` creates a bag of size
``|Q(S, v)| + 1``. The treewidth is

    f(V),   f(S) = min over v in S of max(f(S - v), |Q(S - v, v)|),  f({}) = -inf

which :func:`prefix_search` evaluates layer by layer over popcount, keeping
only prefixes whose value stays within a width bound.
"""

from __future__ import annotations

from .graph import Graph, bits, component_masks, is_connected, popcount

MAX_DP_VERTICES = 28
MAX_BRUTEFORCE_VERTICES = 9


class SolverLimitError(RuntimeError):
    """An input is beyond what an exact solver here is willing to attempt."""


def check_ordering(g, order):
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("elimination ordering must be a permutation of the vertices")
    return order


def _mask_neighbourhood(g, mask):
    out = 0
    for u in bits(mask):
        out |= g.nbr[u]
    return out


def reach_set(g, s, v):
    """Q(s, v) as a bitmask; ``s`` is a bitmask not containing ``v``."""
    if s >> v & 1:
        raise ValueError("v must lie outside the prefix")
    inside = g.nbr[v] & s
    seen = inside
    while inside:
        inside = _mask_neighbourhood(g, inside) & s & ~seen
        seen |= inside
    return (g.nbr[v] | _mask_neighbourhood(g, seen)) & ~s & ~(1 << v)


class _PrefixView:
    """Components of ``G[S]`` and their neighbourhoods, for fast Q(S, .)."""

    __slots__ = ("s", "parts")

    def __init__(self, g, s):
        self.s = s
        self.parts = [(c, _mask_neighbourhood(g, c) & ~s) for c in component_masks(g, s)]

    def reach(self, g, v):
        q = g.nbr[v]
        nv = q
        for comp, boundary in self.parts:
            if comp & nv:
                q |= boundary
        return q & ~self.s & ~(1 << v)


def fill_graph(g, order):
    """Triangulation of ``g`` along ``order``: every pair ``{u, w}`` joined by a
    path whose interior vertices all precede both ``u`` and ``w``."""
    order = check_ordering(g, order)
    edges = set(g.edges)
    prefix = 0
    for v in order:
        for w in bits(reach_set(g, prefix, v)):
            edges.add((min(v, w), max(v, w)))
        prefix |= 1 << v
    return Graph(g.n, sorted(edges), g.labels)


def eliminate_by_simulation(g, order):
    """The elimination game: repeatedly remove ``v`` and make its remaining
    neighbourhood a clique. Returns the fill graph; independent of Q(S, v)."""
    order = check_ordering(g, order)
    adj = [set(a) for a in g.adj]
    gone = set()
    edges = set(g.edges)
    for v in order:
        live = sorted(adj[v] - gone)
        for i, a in enumerate(live):
            for b in live[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
                edges.add((a, b))
        gone.add(v)
    return Graph(g.n, sorted(edges), g.labels)


def ordering_width(g, order):
    order = check_ordering(g, order)
    width = -1
    prefix = 0
    for v in order:
        width = max(width, popcount(reach_set(g, prefix, v)))
        prefix |= 1 << v
    return width


def forbidden_transition(g, s, v, x, y, q=None):
    """True iff eliminating ``v`` right after prefix ``s`` makes ``xy`` a fill
    edge, i.e. ``v`` is the first of ``x, y`` to go and the other one is in
    Q(s, v)."""
    if v == x:
        other = y
    elif v == y:
        other = x
    else:
        return False
    if s >> other & 1:
        return False
    if q is None:
        q = reach_set(g, s, v)
    return bool(q >> other & 1)


class DPTable:
    """Prefixes reached by :func:`prefix_search`.

    ``value[S]`` is the least width achievable when exactly ``S`` is
    eliminated first; only prefixes with value within ``bound`` are kept and
    the empty prefix holds -1 as the -inf sentinel. ``pred[S]`` is the vertex
    eliminated last on a best route to ``S`` (smallest id among ties).
    """

    def __init__(self, g, bound):
        self.g = g
        self.bound = bound
        self.value = {0: -1}
        self.pred = {0: None}

    @property
    def feasible(self):
        return self.g.all_mask in self.value

    def ordering(self):
        if not self.feasible:
            return None
        rev = []
        s = self.g.all_mask
        while s:
            v = self.pred[s]
            rev.append(v)
            s &= ~(1 << v)
        return rev[::-1]

    def __len__(self):
        return len(self.value)


def prefix_search(g, bound, avoid=None):
    """Layered prefix DP over subsets by popcount.

    Keeps every prefix ``S`` with ``f(S) <= bound``. With ``avoid=(x, y)``,
    transitions that would make ``xy`` a fill edge are forbidden, so the full
    set survives iff some ordering of width ``<= bound`` has a triangulation
    without ``xy``. This is the plain reference form of the recurrence;
    :func:`component_search` answers the same questions much faster.
    """
    n = g.n
    if n > MAX_DP_VERTICES:
        raise SolverLimitError(
            f"n={n} exceeds {MAX_DP_VERTICES}: the prefix table may need 2^{n} entries")
    table = DPTable(g, bound)
    full = g.all_mask
    x = y = None
    if avoid is not None:
        x, y = avoid
    value, pred = table.value, table.pred
    layer = [0]
    for _size in range(n):
        nxt = {}
        for s in layer:
            view = _PrefixView(g, s)
            base = value[s]
            for v in bits(full & ~s):
                q = view.reach(g, v)
                width = popcount(q)
                if width > bound:
                    continue
                if avoid is not None and forbidden_transition(g, s, v, x, y, q):
                    continue
                t = s | (1 << v)
                w = base if base > width else width
                old = nxt.get(t)
                if old is None or w < old or (w == old and v < pred[t]):
                    nxt[t] = w
                    pred[t] = v
        if not nxt:
            break
        value.update(nxt)
        layer = sorted(nxt)
    return table


class ComponentSearch:
    """Bounded elimination search over connected vertex sets.

    Eliminating a prefix ``S`` decomposes along the components of ``G[S]``,
    and the vertex of a connected set ``C`` eliminated last sees exactly
    ``N(C)``. So ``C`` can be eliminated within width ``bound`` iff
    ``|N(C)| <= bound`` and, for some ``v`` in ``C``, every component of
    ``C - v`` can. Under ``avoid=(x, y)`` the last vertex of ``C`` may not be
    ``x`` while ``y`` lies in ``N(C)`` (or the reverse): that is the moment
    ``xy`` would become a fill edge.

    ``top[C]`` records the chosen last vertex of each feasible ``C`` (smallest
    id that works) and -1 for infeasible sets.
    """

    def __init__(self, g, bound, avoid=None):
        if g.n > MAX_DP_VERTICES:
            raise SolverLimitError(
                f"n={g.n} exceeds {MAX_DP_VERTICES}: the table may need 2^{g.n} entries")
        self.g = g
        self.bound = bound
        self.avoid = avoid
        self.top = {}

    def feasible_set(self, c):
        top = self.top
        known = top.get(c)
        if known is not None:
            return known >= 0
        g = self.g
        boundary = _mask_neighbourhood(g, c) & ~c
        choice = -1
        if popcount(boundary) <= self.bound:
            x, y = self.avoid if self.avoid is not None else (-1, -1)
            for v in bits(c):
                if v == x and boundary >> y & 1 or v == y and boundary >> x & 1:
                    continue
                rest = c & ~(1 << v)
                if all(self.feasible_set(d) for d in component_masks(g, rest)):
                    choice = v
                    break
        top[c] = choice
        return choice >= 0

    def run(self):
        """Return an ordering of all vertices within the bound, or None."""
        g = self.g
        parts = component_masks(g)
        if not all(self.feasible_set(c) for c in parts):
            return None
        order = []
        for c in parts:
            self._emit(c, order)
        return order

    def _emit(self, c, order):
        # iterative post-order: components of C - v first, then v
        stack = [(c, False)]
        while stack:
            cur, expanded = stack.pop()
            v = self.top[cur]
            if expanded:
                order.append(v)
                continue
            stack.append((cur, True))
            for d in reversed(component_masks(self.g, cur & ~(1 << v))):
                stack.append((d, False))

    def __len__(self):
        return len(self.top)


def component_search(g, bound, avoid=None):
    """Ordering of width ``<= bound`` (avoiding fill edge ``avoid``) or None."""
    return ComponentSearch(g, bound, avoid).run()


def degeneracy(g):
    """Largest minimum degree over all subgraphs; a lower bound on treewidth."""
    alive = g.all_mask
    best = 0
    while alive:
        v = min(bits(alive), key=lambda u: (popcount(g.nbr[u] & alive), u))
        best = max(best, popcount(g.nbr[v] & alive))
        alive &= ~(1 << v)
    return best


def treewidth_dp(g, upper=None, engine="component"):
    """Return ``(tw, ordering)`` for a connected graph.

    Runs the bounded search with bounds from the degeneracy lower bound
    upwards; the first feasible bound is the treewidth. ``upper`` caps the
    search: if the treewidth exceeds it, ``(None, None)`` is returned.
    ``engine="prefix"`` uses the layered :func:`prefix_search` instead of
    :func:`component_search`.
    """
    if g.n == 0:
        return -1, []
    if not is_connected(g):
        raise ValueError("treewidth_dp needs a connected graph; run it per component")
    if g.n > MAX_DP_VERTICES:
        raise SolverLimitError(
            f"n={g.n} exceeds {MAX_DP_VERTICES}: the prefix table may need 2^{g.n} entries")
    top = g.n - 1 if upper is None else min(upper, g.n - 1)
    for k in range(degeneracy(g), top + 1):
        if engine == "prefix":
            order = prefix_search(g, k).ordering()
        else:
            order = component_search(g, k)
        if order is not None:
            return ordering_width(g, order), order
    return None, None


def simulated_width(g, order):
    """Width of ``order`` measured by playing the elimination game."""
    adj = [set(a) for a in g.adj]
    width = -1
    for v in order:
        live = adj[v]
        width = max(width, len(live))
        for a in live:
            adj[a].discard(v)
            adj[a] |= live - {a}
        adj[v] = set()
    return width


def game_step(adj, v):
    """Eliminate ``v`` from bitmask adjacency ``adj``: its live neighbours
    become a clique. Returns the new adjacency tuple."""
    live = adj[v]
    out = list(adj)
    drop = ~(1 << v)
    for a in bits(live):
        out[a] = (adj[a] | live) & drop & ~(1 << a)
    out[v] = 0
    return tuple(out)


def treewidth_bruteforce(g):
    """Minimum width over all ``n!`` orderings of the elimination game.

    Depth-first over ordering prefixes; a prefix is abandoned once its width
    already matches the best complete ordering found.
    """
    if g.n > MAX_BRUTEFORCE_VERTICES:
        raise SolverLimitError(f"brute force refuses n={g.n} > {MAX_BRUTEFORCE_VERTICES}")
    if g.n == 0:
        return -1
    best = g.n

    def dfs(adj, remaining, width):
        nonlocal best
        if width >= best:
            return
        if not remaining:
            best = width
            return
        for v in bits(remaining):
            w = popcount(adj[v])
            dfs(game_step(adj, v), remaining & ~(1 << v), w if w > width else width)

    dfs(tuple(g.nbr), g.all_mask, -1)
    return best
