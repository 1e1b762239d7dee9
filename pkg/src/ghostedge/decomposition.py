"""Tree decompositions: validation, restriction, gluing, construction from an
elimination ordering, and PACE ``.td`` I/O."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import GraphFormatError, bits, is_connected, mask_of
from .treewidth import check_ordering, reach_set


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by tree nodes ``0..t-1``.

    ``bags[i]`` is a frozenset of host vertex ids, ``edges`` the tree edges as
    ``(i, j)`` pairs with ``i < j``.
    """

    bags: tuple
    edges: tuple
    host_n: int

    def __post_init__(self):
        bags = tuple(frozenset(b) for b in self.bags)
        edges = tuple(sorted((min(i, j), max(i, j)) for i, j in self.edges))
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "edges", edges)
        t = len(bags)
        for b in bags:
            for v in b:
                if not 0 <= v < self.host_n:
                    raise ValueError(f"bag vertex {v} outside host of {self.host_n} vertices")
        if not _is_tree(t, edges):
            raise ValueError("tree edges do not form a tree on the bag nodes")

    @property
    def nodes(self):
        return range(len(self.bags))

    def neighbours(self):
        adj = [[] for _ in self.bags]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def nodes_containing(self, v):
        return [i for i, b in enumerate(self.bags) if v in b]


def _is_tree(t, edges):
    if t == 0:
        return not edges
    if len(edges) != t - 1:
        return False
    parent = list(range(t))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        if not (0 <= i < t and 0 <= j < t) or i == j:
            return False
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def _connected_in_tree(td, nodes):
    nodes = set(nodes)
    if not nodes:
        return True
    adj = td.neighbours()
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b in nodes and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen == nodes


@dataclass
class ValidationReport:
    t1_ok: bool
    t2_ok: bool
    t3_ok: bool
    width: int
    witnesses: dict = field(default_factory=dict)

    @property
    def valid(self):
        return self.t1_ok and self.t2_ok and self.t3_ok

    def lines(self, name=str):
        out = [f"valid: {'yes' if self.valid else 'no'}", f"width: {self.width}"]
        if "T1" in self.witnesses:
            out.append(f"T1 violated: vertex {name(self.witnesses['T1'])} is in no bag")
        if "T2" in self.witnesses:
            u, v = self.witnesses["T2"]
            out.append(f"T2 violated: edge {name(u)} {name(v)} is in no bag")
        if "T3" in self.witnesses:
            out.append(f"T3 violated: bags containing vertex {name(self.witnesses['T3'])} "
                       "are not connected in the tree")
        return out


def validate_td(g, td):
    """Check the three decomposition axioms against ``g``.

    Each axiom is reported on its own, with the first failing vertex or edge
    in id order as witness.
    """
    if td.host_n != g.n:
        raise ValueError(f"decomposition is for {td.host_n} vertices, graph has {g.n}")
    witnesses = {}
    covered = 0
    for b in td.bags:
        covered |= mask_of(b)
    missing = g.all_mask & ~covered
    if missing:
        witnesses["T1"] = next(bits(missing))
    masks = [mask_of(b) for b in td.bags]
    for u, v in g.edges:
        pair = (1 << u) | (1 << v)
        if not any(m & pair == pair for m in masks):
            witnesses["T2"] = (u, v)
            break
    for v in range(g.n):
        if not _connected_in_tree(td, td.nodes_containing(v)):
            witnesses["T3"] = v
            break
    return ValidationReport(
        t1_ok="T1" not in witnesses,
        t2_ok="T2" not in witnesses,
        t3_ok="T3" not in witnesses,
        width=width(td) if td.bags else -1,
        witnesses=witnesses,
    )


def width(td):
    if not td.bags:
        raise ValueError("width of an empty decomposition is undefined")
    return max(len(b) for b in td.bags) - 1


def covers_pair(td, x, y):
    if x == y:
        raise ValueError("covers_pair needs two distinct vertices")
    return any(x in b and y in b for b in td.bags)


def restricted_nodes(td, h_vertices):
    """Tree nodes whose bag meets ``h_vertices``."""
    h = set(h_vertices)
    return [i for i, b in enumerate(td.bags) if b & h]


def restrict_td(g, td, h_vertices):
    """Restrict ``td`` to the connected induced subgraph on ``h_vertices``.

    Keeps the nodes whose bags meet ``h_vertices`` and intersects their bags.
    The result lives on ``induced_subgraph(g, h_vertices)``, so vertex ids are
    renumbered in increasing order of the original ids.
    """
    h = sorted(set(h_vertices))
    if not h:
        raise ValueError("cannot restrict to an empty vertex set")
    if not is_connected(g, mask_of(h)):
        raise ValueError("vertex set induces a disconnected subgraph")
    index = {v: i for i, v in enumerate(h)}
    hs = set(h)
    bags = [b & hs for b in td.bags]
    adj = [set(a) for a in td.neighbours()]
    alive = set(range(len(bags)))
    # Splice out each emptied node: contract it into its smallest neighbour.
    for r in range(len(bags)):
        if bags[r]:
            continue
        nbrs = sorted(adj[r])
        alive.discard(r)
        for a in nbrs:
            adj[a].discard(r)
        if nbrs:
            hub = nbrs[0]
            for a in nbrs[1:]:
                adj[hub].add(a)
                adj[a].add(hub)
        adj[r] = set()
    kept = sorted(alive)
    renum = {old: new for new, old in enumerate(kept)}
    edges = {(renum[a], renum[b]) for a in kept for b in adj[a] if a < b}
    return TreeDecomposition(
        tuple(frozenset(index[v] for v in bags[i]) for i in kept),
        tuple(sorted(edges)),
        len(h),
    )


def glue_tds(td1, td2, s1, s2, joint):
    """Disjoint union of two decompositions plus a fresh node with bag
    ``joint`` adjacent to ``s1`` (in ``td1``) and ``s2`` (in ``td2``).

    The result is not validated here; run :func:`validate_td` on it.
    """
    if not 0 <= s1 < len(td1.bags):
        raise ValueError(f"node {s1} is not in the first decomposition")
    if not 0 <= s2 < len(td2.bags):
        raise ValueError(f"node {s2} is not in the second decomposition")
    off = len(td1.bags)
    s = off + len(td2.bags)
    bags = td1.bags + td2.bags + (frozenset(joint),)
    edges = (td1.edges + tuple((i + off, j + off) for i, j in td2.edges)
             + ((s1, s), (s2 + off, s)))
    return TreeDecomposition(bags, edges, max(td1.host_n, td2.host_n))


def relabel_td(td, mapping, host_n=None):
    """Apply a vertex map (sequence or dict) to every bag."""
    return TreeDecomposition(
        tuple(frozenset(mapping[v] for v in b) for b in td.bags),
        td.edges,
        td.host_n if host_n is None else host_n,
    )


def ordering_to_td(g, order):
    """Clique-tree decomposition of the triangulation along ``order``.

    Node ``i`` carries ``{v} + Q(prefix, v)`` for ``v = order[i]`` and hangs
    below the node of the earliest-eliminated vertex of that reach set. A
    node with an empty reach set before the end (disconnected remainder) is
    linked to node ``i + 1``.
    """
    order = check_ordering(g, order)
    n = g.n
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    edges = []
    prefix = 0
    for i, v in enumerate(order):
        q = reach_set(g, prefix, v)
        bags.append(frozenset(bits(q | (1 << v))))
        if q:
            edges.append((i, min(pos[w] for w in bits(q))))
        elif i < n - 1:
            edges.append((i, i + 1))
        prefix |= 1 << v
    return TreeDecomposition(tuple(bags), tuple(edges), n)


def compact_td(td):
    """Contract every tree edge whose one bag contains the other's."""
    bags = list(td.bags)
    adj = [set(a) for a in td.neighbours()]
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for a in sorted(alive):
            for b in sorted(adj[a]):
                if bags[a] <= bags[b]:
                    for c in adj[a] - {b}:
                        adj[c].discard(a)
                        adj[c].add(b)
                        adj[b].add(c)
                    adj[b].discard(a)
                    adj[a] = set()
                    alive.discard(a)
                    changed = True
                    break
            if changed:
                break
    kept = sorted(alive)
    renum = {old: new for new, old in enumerate(kept)}
    edges = {(renum[a], renum[b]) for a in kept for b in adj[a] if a < b}
    return TreeDecomposition(tuple(bags[i] for i in kept), tuple(sorted(edges)), td.host_n)


# -- PACE .td ----------------------------------------------------------------

def parse_td(text):
    """Parse a PACE 2017 ``.td`` document (str or bytes)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise GraphFormatError("second header", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise GraphFormatError(f"malformed header {line!r}", lineno)
            try:
                header = tuple(int(p) for p in parts[2:])
            except ValueError:
                raise GraphFormatError(f"malformed header {line!r}", lineno) from None
            if min(header) < 0:
                raise GraphFormatError("negative counts in header", lineno)
            continue
        if header is None:
            raise GraphFormatError("content before 's td' header", lineno)
        nbags, _, n = header
        try:
            nums = [int(p) for p in (parts[1:] if parts[0] == "b" else parts)]
        except ValueError:
            raise GraphFormatError(f"malformed line {line!r}", lineno) from None
        if parts[0] == "b":
            if not nums:
                raise GraphFormatError("bag line without id", lineno)
            bid, members = nums[0], nums[1:]
            if not 1 <= bid <= nbags:
                raise GraphFormatError(f"bag id {bid} out of range", lineno)
            if bid in bags:
                raise GraphFormatError(f"bag {bid} defined twice", lineno)
            if any(not 1 <= v <= n for v in members):
                raise GraphFormatError(f"vertex id out of range in bag {bid}", lineno)
            if len(set(members)) != len(members):
                raise GraphFormatError(f"repeated vertex in bag {bid}", lineno)
            bags[bid] = frozenset(v - 1 for v in members)
        else:
            if len(nums) != 2:
                raise GraphFormatError(f"malformed tree edge {line!r}", lineno)
            i, j = nums
            if not (1 <= i <= nbags and 1 <= j <= nbags):
                raise GraphFormatError(f"bag id out of range in edge {line!r}", lineno)
            edges.append((i - 1, j - 1))
    if header is None:
        raise GraphFormatError("missing 's td' header")
    nbags, maxbag, n = header
    if len(bags) != nbags:
        raise GraphFormatError(f"header declares {nbags} bags, found {len(bags)}")
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != maxbag:
        raise GraphFormatError(f"header declares max bag size {maxbag}, found {actual}")
    if not _is_tree(nbags, [(min(e), max(e)) for e in edges]):
        raise GraphFormatError("tree edges do not form a tree")
    return TreeDecomposition(tuple(bags[i] for i in range(1, nbags + 1)), tuple(edges), n)


def write_td(td, comments=()):
    maxbag = max((len(b) for b in td.bags), default=0)
    lines = [f"c {c}" for c in comments]
    lines.append(f"s td {len(td.bags)} {maxbag} {td.host_n}")
    for i, b in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(b)]))
    lines += [f"{i + 1} {j + 1}" for i, j in td.edges]
    return "\n".join(lines) + "\n"
