"""Simple undirected graphs on dense integer ids, plus PACE ``.gr`` I/O.

Vertices are ``0..n-1``. Vertex sets are passed around either as Python
iterables or as int bitmasks (bit ``v`` set iff ``v`` is a member); the
solvers work on masks, everything user-facing accepts plain iterables.
"""

from __future__ import annotations

from itertools import combinations


class GraphFormatError(ValueError):
    """Raised for malformed ``.gr`` / ``.td`` / fixture documents."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask):
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


class Graph:
    """Immutable simple graph.

    Equality compares structure only; labels are a display sidecar.
    ``adj[v]`` is a sorted tuple of neighbours, ``nbr[v]`` the same set as a
    bitmask. ``labels`` is an optional tuple of unique names, one per vertex.
    """

    __slots__ = ("n", "adj", "nbr", "labels", "_edges")

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbr = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("need exactly one label per vertex")
            if len(set(labels)) != n:
                raise ValueError("labels must be unique")
        self.n = n
        self.nbr = tuple(nbr)
        self.adj = tuple(tuple(bits(m)) for m in nbr)
        self.labels = labels
        self._edges = tuple(sorted(seen))

    @classmethod
    def complete(cls, n):
        return cls(n, combinations(range(n), 2))

    @classmethod
    def cycle(cls, n):
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n):
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, p, q):
        return cls(p + q, [(i, p + j) for i in range(p) for j in range(q)])

    @classmethod
    def petersen(cls):
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls(10, outer + spokes + inner)

    @property
    def edges(self):
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return self._edges

    @property
    def m(self):
        return len(self._edges)

    @property
    def all_mask(self):
        return (1 << self.n) - 1

    def has_edge(self, u, v):
        return bool(self.nbr[u] >> v & 1)

    def degree(self, v):
        return len(self.adj[v])

    def vertex(self, name):
        """Resolve a label to its id."""
        if self.labels is None:
            raise KeyError(f"graph has no labels; cannot resolve {name!r}")
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"no vertex labelled {name!r}") from None

    def name(self, v):
        return self.labels[v] if self.labels is not None else str(v + 1)

    def with_labels(self, labels):
        return Graph(self.n, self._edges, labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self._edges) == (other.n, other._edges)

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- queries and edits -------------------------------------------------------

def non_edges(g):
    return [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]


def induced_subgraph(g, vertices):
    """Return ``(h, ids)``: the subgraph induced by ``vertices`` and the list
    mapping each new id to its old id (new ids follow increasing old id)."""
    ids = sorted(set(vertices))
    for v in ids:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(ids)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    labels = [g.labels[v] for v in ids] if g.labels is not None else None
    return Graph(len(ids), edges, labels), ids


def delete(g, vertices=(), edges=()):
    """Remove ``edges`` and then ``vertices`` (with incident edges).

    Returns ``(h, ids)`` like :func:`induced_subgraph`.
    """
    drop = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        drop.add((min(u, v), max(u, v)))
    gone = set(vertices)
    ids = [v for v in range(g.n) if v not in gone]
    index = {v: i for i, v in enumerate(ids)}
    kept = [(index[u], index[v]) for u, v in g.edges
            if (u, v) not in drop and u in index and v in index]
    labels = [g.labels[v] for v in ids] if g.labels is not None else None
    return Graph(len(ids), kept, labels), ids


def component_masks(g, within=None):
    """Connected components of ``g[within]`` as bitmasks, sorted by minimum element."""
    rest = g.all_mask if within is None else within
    out = []
    nbr = g.nbr
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= nbr[v]
            frontier = grow & rest & ~comp
            comp |= frontier
        rest &= ~comp
        out.append(comp)
    return out


def components(g):
    return [set(bits(c)) for c in component_masks(g)]


def is_connected(g, within=None):
    return len(component_masks(g, within)) <= 1


def is_biconnected(g):
    if g.n < 3 or not is_connected(g):
        return False
    full = g.all_mask
    return all(is_connected(g, full & ~(1 << v)) for v in range(g.n))


# -- isomorphism -------------------------------------------------------------

def is_isomorphic(g, h, fixed=None):
    """Find an adjacency-preserving bijection ``g -> h`` as a list, or None.

    ``fixed`` optionally pins some images (``{v_in_g: w_in_h}``). Plain
    backtracking, pruned by degree and sorted neighbour degrees.
    """
    if g.n != h.n or g.m != h.m:
        return None
    n = g.n

    def signature(gr, v):
        return (gr.degree(v), tuple(sorted(gr.degree(w) for w in gr.adj[v])))

    sg = [signature(g, v) for v in range(n)]
    sh = [signature(h, v) for v in range(n)]
    if sorted(sg) != sorted(sh):
        return None
    candidates = [[w for w in range(n) if sh[w] == sg[v]] for v in range(n)]
    fixed = dict(fixed or {})
    for v, w in fixed.items():
        if sg[v] != sh[w]:
            return None
        candidates[v] = [w]

    # Visit vertices so that each one (after the first of its component) has
    # an already-mapped neighbour; constrained vertices first.
    order = []
    placed = 0
    while len(order) < n:
        pool = [v for v in range(n) if not placed >> v & 1]
        touching = [v for v in pool if g.nbr[v] & placed]
        v = min(touching or pool, key=lambda u: (u not in fixed, len(candidates[u]), -g.degree(u), u))
        order.append(v)
        placed |= 1 << v

    image = [-1] * n
    used = 0

    def extend(i):
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in candidates[v]:
            if used >> w & 1:
                continue
            ok = True
            for u in order[:i]:
                if g.has_edge(u, v) != h.has_edge(image[u], w):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return list(image) if extend(0) else None


# -- PACE .gr ----------------------------------------------------------------

def parse_gr(text):
    """Parse a PACE 2017 ``.gr`` document (str or bytes)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("second header", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise GraphFormatError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative counts in header", lineno)
            continue
        if n is None:
            raise GraphFormatError("edge before header", lineno)
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line {line!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v) - 1, max(u, v) - 1)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise GraphFormatError("missing 'p tw' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_gr(g):
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_labels(text, n):
    """Parse a ``.labels`` sidecar: lines ``<1-based id> <name>``."""
    labels = [None] * n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed label line {line!r}", lineno)
        try:
            v = int(parts[0])
        except ValueError:
            raise GraphFormatError(f"malformed label line {line!r}", lineno) from None
        if not 1 <= v <= n:
            raise GraphFormatError(f"vertex id {v} out of range", lineno)
        if labels[v - 1] is not None:
            raise GraphFormatError(f"vertex {v} labelled twice", lineno)
        labels[v - 1] = parts[1]
    missing = [i + 1 for i, s in enumerate(labels) if s is None]
    if missing:
        raise GraphFormatError(f"unlabelled vertices: {missing}")
    if len(set(labels)) != n:
        raise GraphFormatError("labels must be unique")
    return tuple(labels)


def write_labels(g):
    if g.labels is None:
        raise ValueError("graph has no labels")
    return "".join(f"{v + 1} {name}\n" for v, name in enumerate(g.labels))
