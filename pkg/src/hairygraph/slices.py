"""Graded slices of the hairy graph complex.

A slice fixes the operad kind, the symplectic rank n, the vertex count k
(for Lie this counts spiders, i.e. tree components), the degree d, the
graph rank r and the hair count h.  This module enumerates canonical
bases of slices, assembles boundary matrices between consecutive vertex
counts, and computes homology dimensions.

Everything is split internally by the hair-label multiset (the weight):
the boundary preserves weights, so bases, IHX reductions and matrix
ranks are computed blockwise and summed.  For Lie slices the chain
groups are quotients by the IHX relations, imposed by exact row
reduction; the basis of a quotient block is the set of non-pivot
canonical graphs.

Bases of unlabeled structures can be cached on disk (HAIRY_CACHE_DIR or
an explicit directory via set_cache_dir); files carry a schema stamp and
are written with an atomic rename so concurrent runs are safe.
"""

from __future__ import annotations

import os
import pickle
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, \
    permutations, product

from . import graphs as dec
from . import liegraphs as lie
from .linalg import HomologyReport, RationalMatrix, SparseEchelon
from .operads import OperadKind
from .symplectic import SymplecticSpace

_SCHEMA = 1
_DUMMY = ("h", 0)   # placeholder hair label on unlabeled structures
_STUB = ("s", 0)    # arc endpoint placeholder on tree fragments


@dataclass(frozen=True)
class SliceKey:
    kind: OperadKind
    n: int
    k: int
    d: int
    r: int
    h: int

    def shifted(self, dk: int) -> "SliceKey":
        return SliceKey(self.kind, self.n, self.k + dk, self.d, self.r,
                        self.h)


# ---------------------------------------------------------------------------
# disk cache

_cache_dir = [os.environ.get("HAIRY_CACHE_DIR")]


def set_cache_dir(path):
    _cache_dir[0] = path


def _disk_cached(tag, builder):
    root = _cache_dir[0]
    if not root:
        return builder()
    os.makedirs(root, exist_ok=True)
    path = os.path.join(root, f"{tag}.pkl")
    if os.path.exists(path):
        try:
            with open(path, "rb") as fh:
                schema, payload = pickle.load(fh)
            if schema == _SCHEMA:
                return payload
        except Exception:
            pass
    payload = builder()
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    with os.fdopen(fd, "wb") as fh:
        pickle.dump((_SCHEMA, payload), fh)
    os.replace(tmp, path)
    return payload


# ---------------------------------------------------------------------------
# structure enumeration (hairs unlabeled)

def _partitions(total, parts, smallest=1):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total - smallest * (parts - 1) + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _pairings(slots, n_edges):
    """All ways to pick n_edges disjoint ordered-by-position pairs from
    slots; the rest become hairs.  Yields (edges, hair slots)."""
    def rec(avail, budget):
        if budget == 0:
            yield (), tuple(avail)
            return
        if len(avail) < 2 * budget:
            return
        first = avail[0]
        rest = avail[1:]
        # first slot stays a hair
        for edges, hairs in rec(rest, budget):
            yield edges, (first,) + hairs
        # first slot pairs with a later slot
        for i, other in enumerate(rest):
            rem = rest[:i] + rest[i + 1:]
            for edges, hairs in rec(rem, budget - 1):
                yield ((first, other),) + edges, hairs
    yield from rec(tuple(slots), n_edges)


@lru_cache(maxsize=None)
def _dec_structures(kind, k, d, h):
    """Canonical unlabeled Com/Assoc structures with k vertices, degree d
    and h hairs (all ranks, all connectivities)."""
    def build():
        n_edges2 = d + 2 * k - h
        if n_edges2 < 0 or n_edges2 % 2:
            return ()
        n_edges = n_edges2 // 2
        seen = {}
        for part in _partitions(d, k):
            arities = tuple(sorted((p + 2 for p in part), reverse=True))
            slots = [(v, s) for v in range(k) for s in range(arities[v])]
            for edges, hairslots in _pairings(slots, n_edges):
                g = dec.DecGraph(kind, arities, edges,
                                 tuple((v, s, _DUMMY) for v, s in hairslots))
                key = dec.canonical_key(g)
                seen.setdefault(_sort_key(key), key)
        return tuple(seen[sk] for sk in sorted(seen))
    return _disk_cached(f"dec-{kind.value}-{k}-{d}-{h}", build)


@lru_cache(maxsize=None)
def _shapes(m):
    """Unordered binary tree shapes with m leaves (leaf = None), one
    representative per left/right symmetry class; swapping children is a
    slot transposition, so the symmetric mates are dropped here and
    recovered by the sign-agnostic deduplication downstream."""
    if m == 1:
        return (None,)
    out = []
    for left in range(1, m // 2 + 1):
        for a in _shapes(left):
            for b in _shapes(m - left):
                if left == m - left and _shape_code(b) < _shape_code(a):
                    continue
                out.append((a, b))
    return tuple(out)


def _shape_code(shape):
    if shape is None:
        return (0,)
    return (1, _shape_code(shape[0]), _shape_code(shape[1]))


def _number_shape(shape, counter):
    if shape is None:
        counter[0] += 1
        return counter[0]
    return (_number_shape(shape[0], counter),
            _number_shape(shape[1], counter))


@lru_cache(maxsize=None)
def _fragments(t, n_stubs):
    """Canonical single-spider fragments: t trivalent vertices whose
    t + 2 leaves are n_stubs arc stubs and the rest unlabeled hairs."""
    def build():
        n_leaves = t + 2
        if not 0 <= n_stubs <= n_leaves:
            return ()
        seen = {}
        for shape in _shapes(n_leaves - 1):
            counter = [0]
            expr = _number_shape(shape, counter)
            if isinstance(expr, int):
                continue  # t = 0 has no vertex
            _, tree, legs = lie.tree_from_bracketing(expr)
            for stubpos in combinations(range(n_leaves), n_stubs):
                stubs = set(stubpos)
                hairs = tuple((*legs[i], _STUB if i in stubs else _DUMMY)
                              for i in range(n_leaves))
                g = lie.LieGraph(t, tuple(tree), (), hairs)
                key = lie.canonical_key(g)
                seen.setdefault(_sort_key(key), key)
        return tuple(seen[sk] for sk in sorted(seen))
    return _disk_cached(f"frag-{t}-{n_stubs}", build)


def _stub_matchings(stubs):
    if not stubs:
        yield ()
        return
    first = stubs[0]
    for i in range(1, len(stubs)):
        rest = stubs[1:i] + stubs[i + 1:]
        for more in _stub_matchings(rest):
            yield ((first, stubs[i]),) + more


@lru_cache(maxsize=None)
def _lie_structures(k, d, h):
    """Canonical unlabeled Lie structures with k spiders, d trivalent
    vertices and h hairs (all ranks, all connectivities)."""
    def build():
        t = d
        n_arcs2 = t + 2 * k - h
        if n_arcs2 < 0 or n_arcs2 % 2 or t < k:
            return ()
        n_arcs = n_arcs2 // 2
        n_stubs = 2 * n_arcs
        seen = {}
        for part in _partitions(t, k):
            sizes = tuple(sorted(part, reverse=True))
            caps = [ti + 2 for ti in sizes]
            for sdist in _bounded_compositions(n_stubs, caps):
                pools = [_fragments(sizes[i], sdist[i]) for i in range(k)]
                if any(not p for p in pools):
                    continue
                for combo in product(*pools):
                    g0 = _disjoint_union(combo)
                    stubs = tuple((v, s) for v, s, lab in g0.hairs
                                  if lab == _STUB)
                    plain = tuple(hh for hh in g0.hairs if hh[2] != _STUB)
                    # Vertices of one-vertex fragments carry fully
                    # interchangeable stub slots, so among matchings that
                    # differ only by permuting such a vertex's stubs it
                    # suffices to keep those whose partner vertex indices
                    # are non-decreasing along the slot order (vertex
                    # indices are stable under slot renaming, so the
                    # constraints at different vertices are independent).
                    free = set()
                    off = 0
                    for frag in combo:
                        if frag.n_vertices == 1:
                            free.add(off)
                        off += frag.n_vertices
                    vstubs = {}
                    for v, s in stubs:
                        if v in free:
                            vstubs.setdefault(v, []).append((v, s))
                    for match in _stub_matchings(stubs):
                        partner = {}
                        for a, b in match:
                            partner[a] = b[0]
                            partner[b] = a[0]
                        if any(ws != sorted(ws) for ws in
                               ([partner[st] for st in sts]
                                for sts in vstubs.values())):
                            continue
                        arcs = g0.arcs + tuple(match)
                        g = lie.LieGraph(g0.n_vertices, g0.tree_edges,
                                         arcs, plain)
                        key = lie.canonical_key(g)
                        seen.setdefault(_sort_key(key), key)
        return tuple(seen[sk] for sk in sorted(seen))
    return _disk_cached(f"lie-{k}-{d}-{h}", build)


def _bounded_compositions(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + rest


def _disjoint_union(fragments):
    offset = 0
    tree = []
    hairs = []
    for frag in fragments:
        for (v, s), (w, t_) in frag.tree_edges:
            tree.append(((v + offset, s), (w + offset, t_)))
        for v, s, lab in frag.hairs:
            hairs.append((v + offset, s, lab))
        offset += frag.n_vertices
    return lie.LieGraph(offset, tuple(sorted(tree)), (), tuple(hairs))


def _sort_key(g):
    if isinstance(g, lie.LieGraph):
        return (g.n_vertices, g.tree_edges, g.arcs, g.hairs)
    return (g.arities, g.edges, g.hairs)


# ---------------------------------------------------------------------------
# labeled bases

def weights(n, h):
    """All hair-label multisets of size h over V_n, sorted."""
    space = SymplecticSpace(n)
    return tuple(combinations_with_replacement(sorted(space.labels()), h))


def _structures(key: SliceKey, connected_only: bool):
    if key.kind is OperadKind.LIE:
        pool = _lie_structures(key.k, key.d, key.h)
    else:
        pool = _dec_structures(key.kind, key.k, key.d, key.h)
    out = []
    for g in pool:
        if g.rank != key.r:
            continue
        if connected_only and not g.is_connected:
            continue
        out.append(g)
    return out


def _relabel_hairs(g, labels):
    if isinstance(g, lie.LieGraph):
        hairs = tuple((v, s, lab)
                      for (v, s, _), lab in zip(g.hairs, labels))
        return lie.LieGraph(g.n_vertices, g.tree_edges, g.arcs, hairs)
    hairs = tuple((v, s, lab) for (v, s, _), lab in zip(g.hairs, labels))
    return dec.DecGraph(g.kind, g.arities, g.edges, hairs)


def _canonicalize(kind, g):
    return lie.canonicalize(g) if kind is OperadKind.LIE \
        else dec.canonicalize(g)


@lru_cache(maxsize=None)
def weight_basis(key: SliceKey, weight, connected_only=True):
    """Canonical nonzero graphs of the slice with the given hair-label
    multiset, in a deterministic order."""
    assert len(weight) == key.h
    found = {}
    labelings = sorted(set(permutations(weight)))
    for g in _structures(key, connected_only):
        if key.kind is OperadKind.LIE:
            # Label assignments split into orbits under the signed hair
            # symmetries of the structure; an orbit is zero exactly when
            # some symmetry fixes its labeling with sign -1, and otherwise
            # contributes one canonical graph, so one canonicalization per
            # orbit suffices.
            syms = lie.hair_symmetries(g)
            done = set()
            for labs in labelings:
                if labs in done:
                    continue
                dead = False
                orbit = set()
                for perm, sign in syms:
                    img = tuple(labs[i] for i in perm)
                    orbit.add(img)
                    if sign < 0 and img == labs:
                        dead = True
                done.update(orbit)
                if dead:
                    continue
                res = lie.canonicalize(_relabel_hairs(g, labs))
                assert res is not None
                found.setdefault(_sort_key(res[0]), res[0])
            continue
        for labs in labelings:
            res = _canonicalize(key.kind, _relabel_hairs(g, labs))
            if res is None:
                continue
            cg, _ = res
            found.setdefault(_sort_key(cg), cg)
    return tuple(found[sk] for sk in sorted(found))


def enumerate_basis(key: SliceKey, connected_only=True):
    """All canonical nonzero graphs of the slice, grouped by weight."""
    out = []
    for w in weights(key.n, key.h):
        out.extend(weight_basis(key, w, connected_only))
    return out


# ---------------------------------------------------------------------------
# IHX quotients (Lie only)

@lru_cache(maxsize=None)
def _quotient_data(key: SliceKey, weight, connected_only=True):
    """(basis, index map, echelon of IHX rows, free basis positions)."""
    basis = weight_basis(key, weight, connected_only)
    index = {g: i for i, g in enumerate(basis)}
    ech = SparseEchelon()
    if key.kind is OperadKind.LIE:
        for g in basis:
            for ei in range(len(g.tree_edges)):
                row = lie.ihx_row(g, ei)
                vec = {}
                for cg, c in row.items():
                    assert cg in index, "IHX left the slice"
                    vec[index[cg]] = c
                if vec:
                    ech.add(vec)
    free = tuple(i for i in range(len(basis))
                 if i not in ech.pivot_columns)
    return basis, index, ech, free


def quotient_dim(key: SliceKey, weight, connected_only=True) -> int:
    return len(_quotient_data(key, weight, connected_only)[3])


def slice_dim(key: SliceKey, connected_only=True) -> int:
    """Dimension of the slice chain group (IHX-reduced for Lie)."""
    return sum(quotient_dim(key, w, connected_only)
               for w in weights(key.n, key.h))


def reduce_chain(key: SliceKey, weight, chain, connected_only=True):
    """Express a chain {canonical graph: coeff} in the quotient
    coordinates of the weight block."""
    basis, index, ech, free = _quotient_data(key, weight, connected_only)
    vec = {}
    for g, c in chain.items():
        assert g in index, "chain leaves the slice"
        vec[index[g]] = vec.get(index[g], Fraction(0)) + c
    vec = ech.reduce_fractions(vec)
    pos = {i: p for p, i in enumerate(free)}
    return {pos[i]: c for i, c in vec.items()}


# ---------------------------------------------------------------------------
# boundary matrices and homology

def _graph_boundary(kind, g):
    return lie.boundary(g) if kind is OperadKind.LIE else dec.boundary(g)


@lru_cache(maxsize=None)
def boundary_block(key: SliceKey, weight, connected_only=True):
    """Matrix of the boundary from the slice (k vertices) to the slice
    with k-1 vertices, on the weight block, in quotient coordinates."""
    sbasis, _, _, sfree = _quotient_data(key, weight, connected_only)
    if key.k <= 1:
        return RationalMatrix(0, len(sfree))
    target = key.shifted(-1)
    _, tindex, tech, tfree = _quotient_data(target, weight, connected_only)
    tpos = {i: p for p, i in enumerate(tfree)}
    mat = RationalMatrix(len(tfree), len(sfree))
    for col, si in enumerate(sfree):
        chain = _graph_boundary(key.kind, sbasis[si])
        vec = {}
        for cg, c in chain.items():
            assert cg in tindex, "boundary left the slice"
            vec[tindex[cg]] = vec.get(tindex[cg], Fraction(0)) + c
        vec = tech.reduce_fractions(vec)
        for i, c in vec.items():
            mat.set(tpos[i], col, c)
    return mat


def slice_boundary_matrix(key: SliceKey, connected_only=True):
    """Boundary matrix on the whole slice, block diagonal over weights."""
    blocks = [boundary_block(key, w, connected_only)
              for w in weights(key.n, key.h)]
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    mat = RationalMatrix(nrows, ncols)
    roff = coff = 0
    for b in blocks:
        for (r, c), v in b.entries.items():
            mat.set(roff + r, coff + c, v)
        roff += b.nrows
        coff += b.ncols
    return mat


def slice_homology(key: SliceKey, connected_only=True) -> HomologyReport:
    """Homology dimension at the slice, weight blocks summed."""
    dim = rank_out = rank_in = 0
    for w in weights(key.n, key.h):
        out_block = boundary_block(key, w, connected_only)
        in_block = boundary_block(key.shifted(1), w, connected_only)
        dim += out_block.ncols
        rank_out += out_block.rank()
        rank_in += in_block.rank()
    return HomologyReport(dim_chains=dim, rank_out=rank_out,
                          rank_in=rank_in)


def valid_rh(d):
    """(r, h) pairs a connected degree-d slice can carry."""
    out = []
    r = 0
    while d + 2 - 2 * r >= 0:
        out.append((r, d + 2 - 2 * r))
        r += 1
    return out


def betti_h1(kind, n, d, r=None, h=None, connected_only=True) -> int:
    """dim H_1 of the hairy complex in the given grading; if r (and so h)
    is not fixed, sums over all ranks the degree allows."""
    if r is None:
        return sum(betti_h1(kind, n, d, rr, hh, connected_only)
                   for rr, hh in valid_rh(d))
    if h is None:
        h = d + 2 - 2 * r
    key = SliceKey(kind, n, 1, d, r, h)
    return slice_homology(key, connected_only).betti


def in_boundary_image(key: SliceKey, weight, chain,
                      connected_only=True) -> bool:
    """Whether a chain in the (key, weight) block lies in the image of
    the boundary from the k+1 slice."""
    vec = reduce_chain(key, weight, chain, connected_only)
    if not vec:
        return True
    mat = boundary_block(key.shifted(1), weight, connected_only)
    ech = SparseEchelon()
    for _, col in mat.transpose().rows():
        ech.add(col)
    return ech.contains(vec)
