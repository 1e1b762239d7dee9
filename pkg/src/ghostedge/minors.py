"""Minor models: verification of given branch sets and a K_t-minor search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphFormatError, bits, is_connected, mask_of


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple  # tuple of frozensets of host vertex ids
    pattern: Graph

    @classmethod
    def clique(cls, branch_sets):
        sets = tuple(frozenset(b) for b in branch_sets)
        return cls(sets, Graph.complete(len(sets)))


def model_violations(g, model):
    """List every way ``model`` fails to be an H-minor model in ``g``."""
    problems = []
    sets = [frozenset(b) for b in model.branch_sets]
    if len(sets) != model.pattern.n:
        problems.append(f"{len(sets)} branch sets for a pattern on {model.pattern.n} vertices")
        return problems
    masks = []
    for i, b in enumerate(sets):
        if not b:
            problems.append(f"branch set {i} is empty")
        elif any(not 0 <= v < g.n for v in b):
            problems.append(f"branch set {i} leaves the host")
        masks.append(mask_of(v for v in b if 0 <= v < g.n))
    for i, j in combinations(range(len(sets)), 2):
        if masks[i] & masks[j]:
            problems.append(f"branch sets {i} and {j} overlap")
    for i, m in enumerate(masks):
        if m and not is_connected(g, m):
            problems.append(f"branch set {i} is not connected")
    for i, j in model.pattern.edges:
        if not _touch(g, masks[i], masks[j]):
            problems.append(f"no host edge between branch sets {i} and {j}")
    return problems


def verify_minor_model(g, model):
    return not model_violations(g, model)


def _reach(g, mask):
    out = 0
    for v in bits(mask):
        out |= g.nbr[v]
    return out


def _touch(g, a, b):
    return bool(_reach(g, a) & b)


def find_clique_minor(g, t):
    """Return a K_t :class:`MinorModel` of ``g`` or None.

    Seeds are tried in degree-descending order; branch sets then grow one
    neighbouring unused vertex at a time, always working on a pair of sets
    that are not yet adjacent. Every state is visited at most once.
    """
    if t <= 0:
        return MinorModel.clique([])
    if g.n < t or g.m < t * (t - 1) // 2:
        return None
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    seen = set()

    def grow(sets, used):
        key = tuple(sorted(sets))
        if key in seen:
            return None
        seen.add(key)
        free = g.all_mask & ~used
        pair = None
        for i, j in combinations(range(t), 2):
            if not _touch(g, sets[i], sets[j]):
                # i and j must meet through free vertices
                if not _joinable(g, sets[i], sets[j], free):
                    return None
                if pair is None:
                    pair = (i, j)
        if pair is None:
            return sets
        for i in pair:
            ext = _reach(g, sets[i]) & free
            for u in sorted(bits(ext), key=lambda v: (-g.degree(v), v)):
                nxt = list(sets)
                nxt[i] = sets[i] | (1 << u)
                found = grow(nxt, used | (1 << u))
                if found is not None:
                    return found
        return None

    for seeds in combinations(order, t):
        found = grow([1 << v for v in seeds], mask_of(seeds))
        if found is not None:
            return MinorModel.clique([frozenset(bits(m)) for m in found])
    return None


def _joinable(g, a, b, free):
    """Can ``a`` reach a neighbour of ``b`` through ``free`` vertices?"""
    frontier = _reach(g, a) & free
    seen = frontier
    target = _reach(g, b)
    while frontier:
        if frontier & target:
            return True
        frontier = _reach(g, frontier) & free & ~seen
        seen |= frontier
    return False


# -- branch-set fixture files ------------------------------------------------

def parse_branch_sets(text, n=None):
    """One branch set per line, space-separated 1-based ids, ``#`` comments."""
    sets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ids = [int(tok) for tok in line.split()]
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
        if any(v < 1 or (n is not None and v > n) for v in ids):
            raise GraphFormatError(f"vertex id out of range in {raw.strip()!r}", lineno)
        sets.append(frozenset(v - 1 for v in ids))
    return sets


def write_branch_sets(sets, names=None):
    lines = []
    for b in sets:
        ids = sorted(b)
        line = " ".join(str(v + 1) for v in ids)
        if names is not None:
            line += "  # " + " ".join(names[v] for v in ids)
        lines.append(line)
    return "\n".join(lines) + "\n"
