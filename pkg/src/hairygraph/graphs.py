"""Hairy graphs with Com- or Assoc-decorated vertices.

A graph has k internal vertices with prescribed arities, directed internal
edges between slots, and labeled hairs on the remaining slots.  The
orientation is the vertex order together with the edge directions, so a
transposition of vertices or a reversal of an edge costs a sign.

Vertex decorations are kept implicit: Com vertices are symmetric in their
slots, and an Assoc vertex is normalized so that its cyclic order is
(0, 1, .., m-1); the residual slot symmetries are all slot permutations
(Com) respectively the m rotations (Assoc), both sign-free.  Canonical
forms are computed by minimizing an encoding over vertex orderings
(restricted to color-refinement classes), slot symmetries and edge
reversals; if two minimizing transformations disagree in sign the graph
has an orientation-reversing automorphism and is zero.

For Lie-decorated graphs see liegraphs.py.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from . import operads
from .operads import OperadKind, OperadBasisElement


@dataclass(frozen=True)
class DecGraph:
    kind: OperadKind
    arities: tuple
    edges: tuple  # ((v, s), (w, t)), directed
    hairs: tuple  # (v, s, label)

    def __post_init__(self):
        used = set()
        for (v, s), (w, t) in self.edges:
            used.add((v, s))
            used.add((w, t))
        for v, s, _ in self.hairs:
            used.add((v, s))
        full = {(v, s) for v in range(len(self.arities))
                for s in range(self.arities[v])}
        assert used == full and len(used) == sum(self.arities), \
            "every slot must carry exactly one edge end or hair"

    @property
    def n_vertices(self):
        return len(self.arities)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_hairs(self):
        return len(self.hairs)

    @property
    def degree(self):
        return sum(m - 2 for m in self.arities)

    def components(self):
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (v, _), (w, _) in self.edges:
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
        groups = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    @property
    def rank(self):
        return self.n_edges - self.n_vertices + len(self.components())

    @property
    def is_connected(self):
        return len(self.components()) <= 1

    def hair_multiset(self):
        return tuple(sorted(lab for _, _, lab in self.hairs))


def build(kind, payloads, arities, edges, hairs) -> DecGraph:
    """Build a graph from explicit decorations, normalizing Assoc vertices.

    ``payloads[v]`` is the operad payload of vertex v (ignored for Com).
    Slots of Assoc vertices are renamed so the cyclic order is identity.
    """
    slotmap = []
    for v, m in enumerate(arities):
        if kind is OperadKind.ASSOC:
            cyc = payloads[v]
            mu = {slot: pos for pos, slot in enumerate(cyc)}
        else:
            mu = {s: s for s in range(m)}
        slotmap.append(mu)
    edges2 = tuple(((v, slotmap[v][s]), (w, slotmap[w][t]))
                   for (v, s), (w, t) in edges)
    hairs2 = tuple((v, slotmap[v][s], lab) for v, s, lab in hairs)
    return DecGraph(kind, tuple(arities), edges2, hairs2)


# ---------------------------------------------------------------------------
# canonical forms

def _refine_colors(g: DecGraph):
    n = g.n_vertices
    hair_by_v = [[] for _ in range(n)]
    for v, _, lab in g.hairs:
        hair_by_v[v].append(lab)
    adj = [[] for _ in range(n)]
    loops = [0] * n
    for (v, _), (w, _) in g.edges:
        if v == w:
            loops[v] += 1
        else:
            # directions are reversible (at a sign), so refinement must not
            # distinguish them
            adj[v].append(w)
            adj[w].append(v)
    colors = [(g.arities[v], tuple(sorted(hair_by_v[v])), loops[v])
              for v in range(n)]
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in adj[v])))
               for v in range(n)]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def _vertex_orderings(g: DecGraph):
    """All vertex orderings compatible with the color refinement, as tuples
    pi with pi[old] = new, together with the permutation parity."""
    colors = _refine_colors(g)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    base = 0
    starts = []
    for cell in cell_list:
        starts.append(base)
        base += len(cell)
    for choice in product(*[permutations(cell) for cell in cell_list]):
        pi = [0] * g.n_vertices
        for cell_idx, arranged in enumerate(choice):
            for off, old in enumerate(arranged):
                pi[old] = starts[cell_idx] + off
        # parity of pi as a permutation
        seen = [False] * len(pi)
        parity = 1
        for i in range(len(pi)):
            if seen[i]:
                continue
            j = i
            clen = 0
            while not seen[j]:
                seen[j] = True
                j = pi[j]
                clen += 1
            if clen % 2 == 0:
                parity = -parity
        yield tuple(pi), parity


def _encode_with_slots(g: DecGraph, pi, slotmaps):
    """Encoding given new vertex indices and per-vertex slot maps.

    Returns (encoding, flip count).  Edges are stored with the smaller
    endpoint first; a stored edge opposite to its original direction
    counts as a flip.
    """
    def ren(v, s):
        return (pi[v], slotmaps[v][s])

    flips = 0
    edges = []
    for a, b in g.edges:
        na, nb = ren(*a), ren(*b)
        if nb < na:
            na, nb = nb, na
            flips += 1
        edges.append((na, nb))
    edges.sort()
    hairs = sorted((pi[v], slotmaps[v][s], lab) for v, s, lab in g.hairs)
    arities = tuple(g.arities[old] for old in _inverse(pi))
    return (arities, tuple(hairs), tuple(edges)), flips


def _inverse(pi):
    inv = [0] * len(pi)
    for old, new in enumerate(pi):
        inv[new] = old
    return inv


def _slot_choices(g: DecGraph, pi):
    """Iterate over tuples of per-vertex slot maps (old slot -> new slot).

    Com vertices admit all slot permutations, but only permutations among
    slots with identical incidence descriptors can matter, so slots are
    descriptor-sorted and ties among *edge* slots are enumerated.  (Hair
    slots with equal labels are interchangeable with sign +1 and influence
    nothing else, so one representative suffices.)  Assoc vertices admit
    their m rotations, enumerated in full.
    """
    n = g.n_vertices
    incid = [dict() for _ in range(n)]
    for idx, ((v, s), (w, t)) in enumerate(g.edges):
        if v == w:
            incid[v][s] = (2, pi[v], idx, 0)
            incid[v][t] = (2, pi[v], idx, 1)
        else:
            incid[v][s] = (1, pi[w], idx, 0)
            incid[w][t] = (1, pi[v], idx, 1)
    for v, s, lab in g.hairs:
        incid[v][s] = (0, lab)

    per_vertex = []
    for v in range(n):
        m = g.arities[v]
        if g.kind is OperadKind.ASSOC:
            maps = []
            for r in range(m):
                maps.append({s: (s + r) % m for s in range(m)})
            per_vertex.append(maps)
        else:
            # group slots by a descriptor that ignores the edge identity,
            # then enumerate arrangements of edge slots inside tied groups
            def rough(s):
                d = incid[v][s]
                if d[0] == 0:
                    return (0, d[1])
                return (d[0], d[1])
            groups = {}
            for s in range(m):
                groups.setdefault(rough(s), []).append(s)
            keys = sorted(groups, key=lambda kk: (kk[0], str(kk[1])))
            base = 0
            layout = []  # (slots, start, enumerate?)
            for kk in keys:
                slots = groups[kk]
                layout.append((slots, base, kk[0] != 0 and len(slots) > 1))
                base += len(slots)
            choices = []
            for slots, start, enum in layout:
                if enum:
                    choices.append([list(p) for p in permutations(slots)])
                else:
                    choices.append([slots])
            maps = []
            for combo in product(*choices):
                mp = {}
                for (slots, start, _), arranged in zip(layout, combo):
                    for off, s in enumerate(arranged):
                        mp[s] = start + off
                maps.append(mp)
            per_vertex.append(maps)
    return product(*per_vertex)


@lru_cache(maxsize=200000)
def _canonical_data(g: DecGraph):
    best = None
    best_signs = set()
    for pi, parity in _vertex_orderings(g):
        for slotmaps in _slot_choices(g, pi):
            enc, flips = _encode_with_slots(g, pi, slotmaps)
            sign = parity * (-1) ** flips
            if best is None or enc < best:
                best = enc
                best_signs = {sign}
            elif enc == best:
                best_signs.add(sign)
    arities, hairs, edges = best
    cg = DecGraph(g.kind, arities, edges, hairs)
    return cg, (None if len(best_signs) > 1 else best_signs.pop())


def canonicalize(g: DecGraph):
    """Canonical form.  Returns (canonical graph, sign) with
    [g] = sign * [canonical], or None if g is zero."""
    cg, sign = _canonical_data(g)
    if sign is None:
        return None
    return cg, sign


def canonical_key(g: DecGraph) -> DecGraph:
    """Canonical representative ignoring orientation, never None; useful
    for deduplicating enumerations where a structure that dies under one
    hair labeling survives under another."""
    return _canonical_data(g)[0]


# ---------------------------------------------------------------------------
# boundary

def boundary(g: DecGraph) -> dict:
    """Collapse each internal edge in turn; returns {canonical graph: coeff}.

    Edges whose ends lie on the same vertex contribute zero.  For an edge
    from vertex i to vertex j (i < j after an orientation-correcting flip),
    the composed vertex goes first and the remaining vertices keep their
    relative order; the term carries (-1)^(i+j+1) (1-based indices).
    """
    out = {}
    for (va, sa), (vb, sb) in g.edges:
        if va == vb:
            continue
        flip = 1
        (ov, os_), (iv, is_) = (va, sa), (vb, sb)
        if va > vb:
            flip = -1
            (ov, os_), (iv, is_) = (vb, sb), (va, sa)
        i, j = ov, iv
        sign = flip * (-1) ** (i + j + 1)
        term = _collapse(g, ov, os_, iv, is_, ((va, sa), (vb, sb)))
        res = canonicalize(term)
        if res is None:
            continue
        cg, s2 = res
        coeff = Fraction(sign * s2)
        out[cg] = out.get(cg, Fraction(0)) + coeff
        if not out[cg]:
            del out[cg]
    return out


def _identity_payload(kind, m):
    if kind is OperadKind.COM:
        return OperadBasisElement(kind, m, ())
    return OperadBasisElement(kind, m, tuple(range(m)))


def _collapse(g: DecGraph, ov, os_, iv, is_, collapsed_edge) -> DecGraph:
    ma, mb = g.arities[ov], g.arities[iv]
    composed = operads.compose(_identity_payload(g.kind, ma), os_,
                               _identity_payload(g.kind, mb), is_)
    (payload, coeff), = composed.terms.items()
    assert coeff == 1
    map_a, map_b = operads.compose_slot_maps(ma, os_, mb, is_)
    if g.kind is OperadKind.ASSOC:
        nu = {slot: pos for pos, slot in enumerate(payload.payload)}
    else:
        nu = {s: s for s in range(ma + mb - 2)}

    others = [v for v in range(g.n_vertices) if v not in (ov, iv)]
    vmap = {v: idx + 1 for idx, v in enumerate(others)}

    def ren(v, s):
        if v == ov:
            return (0, nu[map_a[s]])
        if v == iv:
            return (0, nu[map_b[s]])
        return (vmap[v], s)

    edges = []
    for a, b in g.edges:
        if (a, b) == collapsed_edge:
            continue
        edges.append((ren(*a), ren(*b)))
    hairs = [( *ren(v, s), lab) for v, s, lab in g.hairs]
    arities = tuple([ma + mb - 2] + [g.arities[v] for v in others])
    return DecGraph(g.kind, arities, tuple(edges), tuple(hairs))
