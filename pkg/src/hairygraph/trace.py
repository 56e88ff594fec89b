"""The trace chain map and its stabilized one-sided inverse.

A wedge of spiders includes into the graph complex as the edgeless graph
iota(X) whose components are the spiders.  The trace is
Tr(X) = exp(T)(iota(X)) where T sums, over all ways of matching two hairs,
the graph with the matched hairs joined by an oriented edge weighted by
the symplectic pairing of their labels; equivalently Tr(X) is the sum of
(iota X)^M over all matchings M of the hairs.

In the other direction, alpha cuts every internal edge of a graph of
degree d, labels the cut ends by dual pairs from an auxiliary symplectic
space W_d of dimension 2N (N = floor(3d/2)), and averages the resulting
wedges over all states with the sign that re-matching the state would
produce; beta = alpha o exp(-T) is a chain map with beta o Tr = inclusion.
Composing with the relabeling of W_d symbols into fresh hyperbolic pairs
of a larger V and the projection onto all-p-labeled graphs yields the
surjectivity mechanism; the Morita trace is the rank-1 part of the trace
of a single spider.

Chains of graphs are plain dictionaries {canonical graph: Fraction}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from . import graphs as dec
from . import liegraphs as lie
from . import operads
from .operads import OperadBasisElement, OperadKind
from .spiders import SpiderElement, WedgeElement
from .symplectic import is_positive, omega, relabel_stabilizer_label


# ---------------------------------------------------------------------------
# chains of graphs

def _is_lie(g) -> bool:
    return isinstance(g, lie.LieGraph)


def _canonicalize(g):
    return lie.canonicalize(g) if _is_lie(g) else dec.canonicalize(g)


def _chain_add(chain, g, c):
    if not c:
        return
    res = _canonicalize(g)
    if res is None:
        return
    cg, sign = res
    val = chain.get(cg, Fraction(0)) + Fraction(c) * sign
    if val:
        chain[cg] = val
    else:
        chain.pop(cg, None)


def _prune(chain):
    return {g: c for g, c in chain.items() if c}


@lru_cache(maxsize=200000)
def _graph_boundary(kind, g) -> tuple:
    terms = lie.boundary(g) if kind is OperadKind.LIE else dec.boundary(g)
    return tuple(terms.items())


def chain_boundary(kind, chain) -> dict:
    """Graph boundary extended linearly to a chain."""
    out = {}
    for g, c in chain.items():
        for g2, c2 in _graph_boundary(kind, g):
            val = out.get(g2, Fraction(0)) + c * c2
            if val:
                out[g2] = val
            else:
                out.pop(g2, None)
    return out


# ---------------------------------------------------------------------------
# matchings

def matchings(g):
    """All matchings of the hairs of ``g`` (partitions of a subset of the
    hair indices into unordered pairs), the empty matching included.
    Pairs are (i, j) with i < j, listed in increasing order of i."""
    idx = tuple(range(len(g.hairs)))

    def rec(avail):
        if not avail:
            yield ()
            return
        first, rest = avail[0], avail[1:]
        yield from rec(rest)
        for pos in range(len(rest)):
            for m in rec(rest[:pos] + rest[pos + 1:]):
                yield ((first, rest[pos]),) + m

    yield from rec(idx)


def _pairable_matchings(g):
    """Matchings whose every pair has a nonzero symplectic pairing."""
    labels = tuple(lab for _, _, lab in g.hairs)

    def rec(avail):
        if not avail:
            yield ()
            return
        first, rest = avail[0], avail[1:]
        yield from rec(rest)
        for pos in range(len(rest)):
            if omega(labels[first], labels[rest[pos]]):
                for m in rec(rest[:pos] + rest[pos + 1:]):
                    yield ((first, rest[pos]),) + m

    yield from rec(tuple(range(len(labels))))


def apply_matching(g, matching) -> dict:
    """The element G^M: each matched pair of hairs joined by an oriented
    edge, weighted by the symplectic pairing of the labels.  Reversing a
    new edge flips both the pairing and the orientation, so the result
    does not depend on how the pairs are ordered."""
    hairs = g.hairs
    coeff = Fraction(1)
    new_edges = []
    used = set()
    for i, j in matching:
        assert 0 <= i < len(hairs) and 0 <= j < len(hairs) and i != j
        assert i not in used and j not in used
        used.add(i)
        used.add(j)
        vi, si, la = hairs[i]
        vj, sj, lb = hairs[j]
        w = omega(la, lb)
        if not w:
            return {}
        coeff *= w
        new_edges.append(((vi, si), (vj, sj)))
    rest = tuple(hh for t, hh in enumerate(hairs) if t not in used)
    if _is_lie(g):
        g2 = lie.LieGraph(g.n_vertices, g.tree_edges,
                          g.arcs + tuple(new_edges), rest)
    else:
        g2 = dec.DecGraph(g.kind, g.arities, g.edges + tuple(new_edges),
                          rest)
    out = {}
    _chain_add(out, g2, coeff)
    return out


def _exp_matchings(chain, sign) -> dict:
    out = {}
    for g, c in chain.items():
        for m in _pairable_matchings(g):
            factor = c * sign ** len(m)
            for cg, cc in apply_matching(g, m).items():
                val = out.get(cg, Fraction(0)) + factor * cc
                if val:
                    out[cg] = val
                else:
                    out.pop(cg, None)
    return out


def exp_T(chain) -> dict:
    """exp(T): the sum of G^M over all matchings M of each graph G."""
    return _exp_matchings(chain, 1)


def exp_neg_T(chain) -> dict:
    """exp(-T): the matching sum with sign (-1)^|M|; inverse of exp(T)."""
    return _exp_matchings(chain, -1)


# ---------------------------------------------------------------------------
# inclusion of wedges and the trace

def _assemble(kind, factors):
    """Edgeless graph whose components realize the pure spiders
    ``(basis element, labels, _)`` in order."""
    if kind is OperadKind.LIE:
        offset = 0
        tree = []
        hairs = []
        for b, labels, _ in factors:
            expr = operads.lie_bracketing(b.payload)
            nv, edges, legs = lie.tree_from_bracketing(expr, offset)
            tree.extend(edges)
            for leg in range(b.arity):
                v, s = legs[leg]
                hairs.append((v, s, labels[leg]))
            offset += nv
        return lie.LieGraph(offset, tuple(sorted(tree)), (), tuple(hairs))
    payloads = []
    arities = []
    hairs = []
    for v, (b, labels, _) in enumerate(factors):
        payloads.append(b.payload)
        arities.append(b.arity)
        for s in range(b.arity):
            hairs.append((v, s, labels[s]))
    return dec.build(kind, payloads, arities, (), hairs)


def iota(w: WedgeElement) -> dict:
    """Inclusion of a wedge combination as edgeless graphs."""
    out = {}
    for wedge, coeff in w.terms.items():
        pools = [f.pure_terms() for f in wedge]
        for combo in product(*pools):
            c = coeff
            for _, _, cc in combo:
                c *= cc
            _chain_add(out, _assemble(w.kind, combo), c)
    return _prune(out)


@lru_cache(maxsize=100000)
def _traced_wedge(kind, wedge) -> tuple:
    """Tr of a single canonical wedge, cached; exp(T) acts graph-wise, so
    the trace of a combination is the matching linear combination."""
    pre = {}
    pools = [f.pure_terms() for f in wedge]
    for combo in product(*pools):
        c = Fraction(1)
        for _, _, cc in combo:
            c *= cc
        _chain_add(pre, _assemble(kind, combo), c)
    return tuple(exp_T(_prune(pre)).items())


def trace(w: WedgeElement) -> dict:
    """The trace chain map Tr = exp(T) o iota."""
    out = {}
    for wedge, coeff in w.terms.items():
        for g, c in _traced_wedge(w.kind, wedge):
            val = out.get(g, Fraction(0)) + coeff * c
            if val:
                out[g] = val
            else:
                out.pop(g, None)
    return _prune(out)


# ---------------------------------------------------------------------------
# cutting edges: wedges from edgeless graphs, alpha and beta

def _spider_from_element(elt, labels) -> SpiderElement:
    out = SpiderElement.zero(elt.kind)
    for b, c in elt.terms.items():
        out = out + SpiderElement.from_pure(b, labels, c)
    return out


def _lie_component_spider(g, verts) -> SpiderElement:
    """Read one spider of an edgeless Lie graph as a bracketing rooted at
    its first hair (in hair-list order)."""
    vset = set(verts)
    legs = [i for i, (v, _, _) in enumerate(g.hairs) if v in vset]
    local = {hi: t for t, hi in enumerate(legs)}
    at = {}
    neighbor = {}
    for i, (v, s, _) in enumerate(g.hairs):
        if v in vset:
            at[(v, s)] = ("leg", local[i])
    for a, b in g.tree_edges:
        if a[0] in vset:
            neighbor[a] = b
            neighbor[b] = a

    def sub(v, s_in):
        # entered at slot s_in; children sit at the next two slots
        children = []
        for ds in (1, 2):
            slot = (v, (s_in + ds) % 3)
            if slot in at:
                children.append(at[slot][1])
            else:
                w, t = neighbor[slot]
                children.append(sub(w, t))
        return (children[0], children[1])

    root_hair = g.hairs[legs[0]]
    expr = sub(root_hair[0], root_hair[1])
    arity = len(legs)
    elt = operads.lie_element_from_bracketing(expr, 0, arity)
    labels = tuple(g.hairs[hi][2] for hi in legs)
    return _spider_from_element(elt, labels)


def wedge_of_edgeless(g) -> WedgeElement:
    """Express an edgeless graph as a wedge of spiders, one per component,
    in component order; iota of the result is the graph again."""
    if _is_lie(g):
        assert not g.arcs
        elements = [_lie_component_spider(g, comp) for comp in g.components()]
        kind = OperadKind.LIE
    else:
        assert not g.edges
        kind = g.kind
        labels_at = {}
        for v, s, lab in g.hairs:
            labels_at[(v, s)] = lab
        elements = []
        for v, m in enumerate(g.arities):
            if kind is OperadKind.COM:
                b = OperadBasisElement(kind, m, ())
            else:
                b = OperadBasisElement(kind, m, tuple(range(m)))
            labs = tuple(labels_at[(v, s)] for s in range(m))
            elements.append(_spider_from_element(
                operads.OperadElement.from_basis(b), labs))
    return WedgeElement.from_spider_elements(elements)


def alpha(g, d: int, coeff=1) -> WedgeElement:
    """Cut every internal edge of ``g``, label the cut ends with dual
    pairs from W_d, and average over all states with signs.

    The sign of a state is the product of the symplectic pairings the
    re-matching of the cut ends would produce, so that re-matching any
    state recovers the graph with coefficient +1.
    """
    assert g.degree == d
    edges = g.arcs if _is_lie(g) else g.edges
    m = len(edges)
    big_n = (3 * d) // 2
    assert m <= big_n, "W_d is too small to cut every edge"
    kind = OperadKind.LIE if _is_lie(g) else g.kind
    total = WedgeElement.zero(kind)
    for idxs in permutations(range(1, big_n + 1), m):
        for bits in product((0, 1), repeat=m):
            sigma = 1
            cut_hairs = []
            for e, ((vt, st), (vh, sh)) in enumerate(edges):
                i = idxs[e]
                if bits[e]:
                    a, b = ("Q", i), ("P", i)
                    sigma = -sigma  # omega(Q_i, P_i) = -1
                else:
                    a, b = ("P", i), ("Q", i)
                cut_hairs.append((vt, st, a))
                cut_hairs.append((vh, sh, b))
            hairs = tuple(g.hairs) + tuple(cut_hairs)
            if _is_lie(g):
                gcut = lie.LieGraph(g.n_vertices, g.tree_edges, (), hairs)
            else:
                gcut = dec.DecGraph(g.kind, g.arities, g.edges[:0], hairs)
            total = total + wedge_of_edgeless(gcut).scale(sigma)
    n_states = 2 ** m
    for t in range(m):
        n_states *= big_n - t
    return total.scale(Fraction(coeff, n_states))


def beta(kind, chain, d: int) -> WedgeElement:
    """beta = alpha o exp(-T): the stabilized one-sided inverse of the
    trace, with beta(trace(w), d) = w for homogeneous w of degree d."""
    out = WedgeElement.zero(kind)
    for g, c in exp_neg_T(chain).items():
        out = out + alpha(g, d, c)
    return out


# ---------------------------------------------------------------------------
# projections and relabeling

def project_plus(chain) -> dict:
    """Keep the graphs all of whose hair labels lie in the Lagrangian
    spanned by the p_i."""
    return {g: c for g, c in chain.items()
            if all(is_positive(lab) for _, _, lab in g.hairs)}


def relabel_stabilizer(x: WedgeElement, n: int) -> WedgeElement:
    """Send the W_d symbols to fresh hyperbolic pairs of a larger V:
    P_i -> p_{n+i}, Q_i -> q_{n+i}; labels already in V are unchanged."""
    out = WedgeElement.zero(x.kind)
    for wedge, coeff in x.terms.items():
        elements = []
        for f in wedge:
            el = SpiderElement.zero(x.kind)
            for b, labs, c in f.pure_terms():
                labs2 = tuple(relabel_stabilizer_label(l, n) for l in labs)
                el = el + SpiderElement.from_pure(b, labs2, c)
            elements.append(el)
        out = out + WedgeElement.from_spider_elements(elements, coeff)
    return out


def split_by_slice(kind, n, chain) -> dict:
    """Group a chain by (SliceKey, weight); the boundary and the relations
    preserve both, so zero tests factor through the blocks."""
    from .slices import SliceKey
    out = {}
    for g, c in chain.items():
        k = g.n_spiders if _is_lie(g) else g.n_vertices
        key = SliceKey(kind, n, k, g.degree, g.rank, g.n_hairs)
        out.setdefault((key, g.hair_multiset()), {})[g] = c
    return out


def is_zero_mod_relations(kind, n, chain) -> bool:
    """Whether a chain vanishes in the graph complex (for Lie, modulo the
    IHX relations; disconnected graphs allowed)."""
    from .slices import reduce_chain
    for (key, weight), block in split_by_slice(kind, n, chain).items():
        if any(reduce_chain(key, weight, block, False).values()):
            return False
    return True


def morita_projection(s: SpiderElement) -> dict:
    """Trace of a single Lie spider, restricted to the rank-1 graphs."""
    assert s.kind is OperadKind.LIE
    ch = trace(WedgeElement.from_spider_elements([s]))
    return {g: c for g, c in ch.items() if g.rank == 1}
