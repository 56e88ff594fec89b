"""Hairy graphs with Lie-decorated vertices, in uni-trivalent form.

A Lie vertex of arity m is expanded into a binary tree with m - 2
trivalent vertices, so a graph here has three kinds of incidences at its
trivalent vertices: unoriented tree edges (the internal edges of the
expanded Lie vertices; their connected components are the "spiders"),
oriented arcs (the actual graph edges), and labeled hairs.  Each trivalent
vertex carries the cyclic slot order (0, 1, 2).

Orientation data: the order of the tree components (listed by smallest
vertex index) and the arc directions.  Reversing an arc or swapping two
slots at a vertex costs a sign; rotating the three slots and renumbering
vertices within a fixed component order are free.  Graphs are taken
modulo the local IHX relation, which is imposed slice by slice with
linear algebra (see slices.py); ihx_row produces the relation attached to
a graph and one of its tree edges.

The dictionary between trees and bracketings: when a vertex is entered
from its parent at slot s, the left child sits at slot s+1 and the right
child at slot s+2 (mod 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .operads import lie_element_from_bracketing

_PERMS3 = (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
           ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1))


@dataclass(frozen=True)
class LieGraph:
    n_vertices: int
    tree_edges: tuple  # ((v, s), (w, t)), unoriented, endpoints sorted
    arcs: tuple        # ((v, s), (w, t)), directed
    hairs: tuple       # (v, s, label)

    def __post_init__(self):
        used = set()
        for a, b in self.tree_edges + self.arcs:
            used.add(a)
            used.add(b)
        for v, s, _ in self.hairs:
            used.add((v, s))
        full = {(v, s) for v in range(self.n_vertices) for s in range(3)}
        assert used == full and len(used) == 3 * self.n_vertices, \
            "every slot must carry exactly one incidence"

    @property
    def degree(self):
        return self.n_vertices

    @property
    def n_hairs(self):
        return len(self.hairs)

    def components(self):
        """Tree-edge components (the spiders), ordered by smallest vertex."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (v, _), (w, _) in self.tree_edges:
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
        groups = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    @property
    def n_spiders(self):
        return len(self.components())

    @property
    def is_connected(self):
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (v, _), (w, _) in self.tree_edges + self.arcs:
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
        return len({find(v) for v in range(self.n_vertices)}) <= 1

    @property
    def rank(self):
        comps = len({frozenset(c) for c in _all_edge_components(self)})
        return len(self.tree_edges) + len(self.arcs) - self.n_vertices + comps

    def hair_multiset(self):
        return tuple(sorted(lab for _, _, lab in self.hairs))


def _all_edge_components(g):
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (v, _), (w, _) in g.tree_edges + g.arcs:
        rv, rw = find(v), find(w)
        if rv != rw:
            parent[rv] = rw
    groups = {}
    for v in range(g.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


# ---------------------------------------------------------------------------
# canonical forms

def _incidences(g: LieGraph):
    incid = [[None] * 3 for _ in range(g.n_vertices)]
    for idx, ((v, s), (w, t)) in enumerate(g.tree_edges):
        incid[v][s] = ("t", (w, t), idx)
        incid[w][t] = ("t", (v, s), idx)
    for idx, ((v, s), (w, t)) in enumerate(g.arcs):
        incid[v][s] = ("a", (w, t), idx)
        if (v, s) != (w, t):
            incid[w][t] = ("a", (v, s), idx)
    for v, s, lab in g.hairs:
        incid[v][s] = ("h", lab, None)
    return incid


def _refine_colors(g: LieGraph):
    n = g.n_vertices
    hairs_at = [[] for _ in range(n)]
    for v, _, lab in g.hairs:
        hairs_at[v].append(lab)
    adj = [[] for _ in range(n)]
    self_arcs = [0] * n
    for (v, _), (w, _) in g.tree_edges:
        adj[v].append((0, w))
        adj[w].append((0, v))
    for (v, _), (w, _) in g.arcs:
        if v == w:
            self_arcs[v] += 1
        else:
            adj[v].append((1, w))
            adj[w].append((1, v))
    colors = [(tuple(sorted(hairs_at[v])), self_arcs[v],
               sum(1 for ty, _ in adj[v] if ty == 0))
              for v in range(n)]
    while True:
        sig = [(colors[v], tuple(sorted((ty, colors[w]) for ty, w in adj[v])))
               for v in range(n)]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def _witness_search(g: LieGraph):
    """All minimal-encoding witnesses as (pi, slotmaps, flips) triples.

    Vertices are placed one at a time together with a slot permutation;
    at each step only the placements producing the smallest description
    block are kept, and complete block sequences are compared globally,
    so the search finds the minimal encoding and all of its witnesses.
    """
    n = g.n_vertices
    incid = _incidences(g)
    colors = _refine_colors(g)
    arc_tail = {}  # arc idx -> original tail (v, s)
    for idx, (tail, _) in enumerate(g.arcs):
        arc_tail[idx] = tail

    has_self_arc = [False] * n
    for (a, _), (b, _) in g.arcs:
        if a == b:
            has_self_arc[a] = True

    results = []  # (pi, slotmaps, flips)

    def block_for(v, sigma, pos, pi, slotmaps):
        entries = [None] * 3
        flips = 0
        for s_old in range(3):
            kind, other, idx = incid[v][s_old]
            if kind == "h":
                entries[sigma[s_old]] = (0, other)
                continue
            w, t = other
            if w != v and pi[w] is None:
                entries[sigma[s_old]] = (3, 0 if kind == "t" else 1)
                continue
            if w == v:
                wpos, wslot = pos, sigma[t]
            else:
                wpos, wslot = pi[w], slotmaps[w][t]
            if kind == "t":
                entries[sigma[s_old]] = (1, wpos, wslot)
                continue
            entries[sigma[s_old]] = (2, wpos, wslot)
            # count the direction flip once, when the arc completes;
            # a self arc is met at both of its slots, so count it at the
            # first one only
            if w == v and s_old > t:
                continue
            a_end = (wpos, wslot)
            b_end = (pos, sigma[s_old])
            tail_new = b_end if arc_tail[idx] == (v, s_old) else a_end
            if tail_new != min(a_end, b_end):
                flips += 1
        return (colors[v],) + tuple(entries), flips

    def placements_for(v, pos, pi, slotmaps):
        """Smallest block of v and its (sigma, flips) realizations."""
        if has_self_arc[v]:
            # a self arc makes the descriptors depend on sigma; fall back
            # to trying all six slot permutations
            best = None
            cands = []
            for sigma, _ in _PERMS3:
                blk, fl = block_for(v, sigma, pos, pi, slotmaps)
                if best is None or blk < best:
                    best = blk
                    cands = [(sigma, fl)]
                elif blk == best:
                    cands.append((sigma, fl))
            return best, cands
        # without self arcs the descriptor of a slot does not involve
        # sigma, so the smallest block lists the descriptors in sorted
        # order, and any sigma realizing that order is a witness; the
        # flip count is sigma-independent because a completed arc's other
        # endpoint always sits at an earlier position
        desc = []
        flips = 0
        for s_old in range(3):
            kind, other, idx = incid[v][s_old]
            if kind == "h":
                desc.append((0, other))
                continue
            w, t = other
            if pi[w] is None:
                desc.append((3, 0 if kind == "t" else 1))
                continue
            wpos, wslot = pi[w], slotmaps[w][t]
            if kind == "t":
                desc.append((1, wpos, wslot))
                continue
            desc.append((2, wpos, wslot))
            if arc_tail[idx] == (v, s_old):
                flips += 1
        block = (colors[v],) + tuple(sorted(desc))
        cands = [(sigma, flips) for sigma, _ in _PERMS3
                 if desc[0] == block[1 + sigma[0]]
                 and desc[1] == block[1 + sigma[1]]
                 and desc[2] == block[1 + sigma[2]]]
        return block, cands

    best_seq = [None]  # smallest complete block sequence seen so far

    def dfs(step, pi, slotmaps, flips, seq, tight):
        # tight: the current prefix coincides with the best sequence
        if step == n:
            key = tuple(seq)
            if best_seq[0] is None or key < best_seq[0]:
                best_seq[0] = key
                results.clear()
                results.append((tuple(pi), tuple(slotmaps), flips))
            elif key == best_seq[0]:
                results.append((tuple(pi), tuple(slotmaps), flips))
            return
        ref = best_seq[0][step] if tight and best_seq[0] is not None \
            else None
        best_block = None
        choices = []
        for v in range(n):
            if pi[v] is not None:
                continue
            # the vertex color is the leading entry of its block, so a
            # non-minimal color can never produce the smallest block
            c = colors[v]
            if best_block is not None and c > best_block[0]:
                continue
            if ref is not None and c > ref[0]:
                continue
            blk, cands = placements_for(v, step, pi, slotmaps)
            if best_block is None or blk < best_block:
                best_block = blk
                choices = [(v, sigma, fl) for sigma, fl in cands]
            elif blk == best_block:
                choices.extend((v, sigma, fl) for sigma, fl in cands)
        still_tight = tight
        if ref is not None:
            if best_block is None or best_block > ref:
                return
            if best_block < ref:
                still_tight = False
        seq.append(best_block)
        for v, sigma, fl in choices:
            pi[v] = step
            slotmaps[v] = sigma
            dfs(step + 1, pi, slotmaps, flips + fl, seq, still_tight)
            pi[v] = None
            slotmaps[v] = None
        seq.pop()

    dfs(0, [None] * n, [None] * n, 0, [], True)
    return results


_PERM3_SIGN = dict(_PERMS3)


def _witness_sign(g: LieGraph, pi, slotmaps, flips) -> int:
    perm_sign = 1
    for sigma in slotmaps:
        perm_sign *= _PERM3_SIGN[sigma]
    return _component_parity(g, pi) * perm_sign * (-1) ** flips


@lru_cache(maxsize=200000)
def _canonical_data(g: LieGraph):
    """(canonical graph, sign or None if the graph is zero)."""
    results = _witness_search(g)
    signs = set()
    for pi, slotmaps, flips in results:
        signs.add(_witness_sign(g, pi, slotmaps, flips))
        if len(signs) > 1:
            break
    pi, slotmaps, _ = results[0]
    canon = _apply(g, pi, slotmaps)
    return canon, (None if len(signs) > 1 else signs.pop())


def hair_symmetries(g: LieGraph):
    """Signed hair permutations induced by the automorphisms of ``g``.

    ``g`` must be in canonical form (as returned by :func:`canonical_key`),
    so every minimal-encoding witness is an automorphism.  Returns a list
    of ``(perm, sign)`` pairs where ``perm[i]`` is the index of the hair
    slot that the ``i``-th hair slot is carried to.
    """
    positions = {(v, s): i for i, (v, s, _) in enumerate(g.hairs)}
    out = []
    for pi, slotmaps, flips in _witness_search(g):
        perm = tuple(positions[(pi[v], slotmaps[v][s])]
                     for v, s, _ in g.hairs)
        out.append((perm, _witness_sign(g, pi, slotmaps, flips)))
    return out


def canonicalize(g: LieGraph):
    """Canonical form.  Returns (canonical graph, sign) with
    [g] = sign * [canonical], or None if the graph is zero."""
    cg, sign = _canonical_data(g)
    if sign is None:
        return None
    return cg, sign


def canonical_key(g: LieGraph) -> LieGraph:
    """Canonical representative ignoring orientation; never None."""
    return _canonical_data(g)[0]


def _component_parity(g: LieGraph, pi):
    comps = g.components()
    keyed = sorted(range(len(comps)),
                   key=lambda i: min(pi[v] for v in comps[i]))
    seen = [False] * len(keyed)
    parity = 1
    for i in range(len(keyed)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = keyed[j]
            clen += 1
        if clen % 2 == 0:
            parity = -parity
    return parity


def _apply(g: LieGraph, pi, slotmaps) -> LieGraph:
    def ren(v, s):
        return (pi[v], slotmaps[v][s])

    tree = tuple(sorted(tuple(sorted((ren(*a), ren(*b)))) for a, b in
                        g.tree_edges))
    arcs = tuple(sorted(tuple(sorted((ren(*a), ren(*b)))) for a, b in
                        g.arcs))
    hairs = tuple(sorted((pi[v], slotmaps[v][s], lab)
                         for v, s, lab in g.hairs))
    return LieGraph(g.n_vertices, tree, arcs, hairs)


# ---------------------------------------------------------------------------
# boundary: contract arcs joining distinct spiders

def boundary(g: LieGraph) -> dict:
    comps = g.components()
    comp_of = {}
    for ci, vs in enumerate(comps):
        for v in vs:
            comp_of[v] = ci
    out = {}
    for (va, sa), (vb, sb) in g.arcs:
        ci, cj = comp_of[va], comp_of[vb]
        if ci == cj:
            continue
        flip = 1
        if ci > cj:
            ci, cj = cj, ci
            flip = -1
        sign = flip * (-1) ** (ci + cj + 1)
        term = _contract(g, ((va, sa), (vb, sb)), comps, ci, cj)
        res = canonicalize(term)
        if res is None:
            continue
        cg, s2 = res
        coeff = Fraction(sign * s2)
        out[cg] = out.get(cg, Fraction(0)) + coeff
        if not out[cg]:
            del out[cg]
    return out


def _contract(g: LieGraph, arc, comps, ci, cj) -> LieGraph:
    """Turn the arc into a tree edge and move the merged component first."""
    merged = sorted(comps[ci] + comps[cj])
    rest = [comps[x] for x in range(len(comps)) if x not in (ci, cj)]
    order = merged + [v for c in rest for v in c]
    pi = {old: new for new, old in enumerate(order)}

    def ren(v, s):
        return (pi[v], s)

    tree = [tuple(sorted((ren(*a), ren(*b)))) for a, b in g.tree_edges]
    tree.append(tuple(sorted((ren(*arc[0]), ren(*arc[1])))))
    arcs = [(ren(*a), ren(*b)) for a, b in g.arcs if (a, b) != arc]
    hairs = [(pi[v], s, lab) for v, s, lab in g.hairs]
    return LieGraph(g.n_vertices, tuple(sorted(tree)), tuple(arcs),
                    tuple(hairs))


# ---------------------------------------------------------------------------
# IHX

@lru_cache(maxsize=1)
def _ihx_coefficients():
    """The universal 3-term relation among the local shapes around a tree
    edge, derived from the arity-4 Lie structure.  Shapes pair the four
    surrounding stubs as (PQ|RS), (PR|QS), (PS|QR)."""
    exprs = [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))]
    vecs = [lie_element_from_bracketing(e, 0, 4) for e in exprs]
    basis = sorted({b for v in vecs for b in v.terms})
    assert len(basis) == 2
    rows = [[v.terms.get(b, Fraction(0)) for v in vecs] for b in basis]
    # solve rows . (1, c2, c3)^T = 0
    a, b_, c = rows[0]
    d, e, f = rows[1]
    det = b_ * f - c * e
    assert det != 0
    c2 = (-a * f + c * d) / det
    c3 = (-b_ * d + a * e) / det
    for r in rows:
        assert r[0] + c2 * r[1] + c3 * r[2] == 0
    return (Fraction(1), c2, c3)


def ihx_row(g: LieGraph, tree_edge_index: int) -> dict:
    """The IHX relation of g around one of its tree edges, as a chain
    {canonical graph: coeff} that is zero in the quotient."""
    (a, sa), (b, sb) = g.tree_edges[tree_edge_index]
    pa = [(a, (sa + 1) % 3), (a, (sa + 2) % 3)]
    pb = [(b, (sb + 1) % 3), (b, (sb + 2) % 3)]
    P, Q = pa
    R, S = pb
    remaps = [
        None,                                        # shape PQ|RS: g itself
        {P: pa[0], R: pa[1], Q: pb[0], S: pb[1]},    # shape PR|QS
        {P: pa[0], S: pa[1], Q: pb[0], R: pb[1]},    # shape PS|QR
    ]
    coeffs = _ihx_coefficients()
    row = {}
    for shape, remap in enumerate(remaps):
        if remap is None:
            term = g
        else:
            term = _rewire(g, remap)
        res = canonicalize(term)
        if res is None:
            continue
        cg, s = res
        c = coeffs[shape] * s
        row[cg] = row.get(cg, Fraction(0)) + c
        if not row[cg]:
            del row[cg]
    return row


def _rewire(g: LieGraph, remap) -> LieGraph:
    def ren(p):
        return remap.get(p, p)

    tree = tuple(sorted(tuple(sorted((ren(x), ren(y)))) for x, y in
                        g.tree_edges))
    arcs = tuple((ren(x), ren(y)) for x, y in g.arcs)
    hairs = tuple((*ren((v, s)), lab) for v, s, lab in g.hairs)
    return LieGraph(g.n_vertices, tree, arcs, hairs)


# ---------------------------------------------------------------------------
# building spiders as binary trees

def tree_from_bracketing(expr, base_vertex=0):
    """Expand a bracketing over leaves 1..m-1 (with implicit root leg 0)
    into trivalent vertices.

    Returns (n_vertices, tree_edges, legs) where legs maps each leg
    0..m-1 to the (vertex, slot) where it attaches; vertices are numbered
    from base_vertex.  A vertex entered from its parent at slot 0 carries
    its left subtree at slot 1 and its right subtree at slot 2.
    """
    counter = [base_vertex]
    tree_edges = []
    legs = {}

    def build(node):
        if isinstance(node, int):
            return node  # leg number, resolved by the caller
        vid = counter[0]
        counter[0] += 1
        for slot, child in ((1, node[0]), (2, node[1])):
            sub = build(child)
            if isinstance(sub, int):
                legs[sub] = (vid, slot)
            else:
                tree_edges.append(((vid, slot), (sub[1], 0)))
        return ("v", vid)

    top = build(expr)
    assert not isinstance(top, int), "a bracketing needs at least one pair"
    legs[0] = (top[1], 0)
    return counter[0] - base_vertex, tree_edges, legs
