"""Spiders (operad elements with symplectically labeled legs), wedges of
spiders, the bracket by leg fusion, and the Chevalley-Eilenberg boundary.

A basic spider is (operad basis element, label tuple).  Permuting the legs
identifies different basic spiders; for Com and Assoc this identification
is monomial, but for Lie a permuted basis element is a linear combination,
so canonical forms cannot be "the smallest orbit representative".  Instead
a spider element is stored blockwise: for each (arity, sorted label tuple)
we keep the projection of the operad coefficients onto the subspace
invariant under the stabilizer of the label tuple.  In characteristic zero
that projection realises the space of coinvariants exactly, for all three
operads at once, and orientation-killed spiders project to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from . import operads
from .operads import OperadKind, OperadBasisElement, OperadElement
from .symplectic import omega, SymplecticSpace


def spider_degree(arity: int) -> int:
    return arity - 2


def sort_permutation(labels: tuple) -> tuple:
    """sigma with sigma[i] = new position of slot i, sorting the labels."""
    order = sorted(range(len(labels)), key=lambda i: (labels[i], i))
    sigma = [0] * len(labels)
    for new, old in enumerate(order):
        sigma[old] = new
    return tuple(sigma)


def permute_labels(sigma: tuple, labels: tuple) -> tuple:
    out = [None] * len(labels)
    for i, lab in enumerate(labels):
        out[sigma[i]] = lab
    return tuple(out)


def _label_pattern(labels_sorted: tuple) -> tuple:
    runs = []
    i = 0
    while i < len(labels_sorted):
        j = i
        while j < len(labels_sorted) and labels_sorted[j] == labels_sorted[i]:
            j += 1
        runs.append(j - i)
        i = j
    return tuple(runs)


@lru_cache(maxsize=None)
def _stabilizer(pattern: tuple) -> tuple:
    """All slot permutations preserving a sorted label tuple with these runs."""
    m = sum(pattern)
    groups = []
    start = 0
    for r in pattern:
        groups.append(tuple(range(start, start + r)))
        start += r
    perms = [tuple(range(m))]
    for g in groups:
        if len(g) == 1:
            continue
        new = []
        for base in perms:
            for p in permutations(g):
                sigma = list(base)
                for pos, val in zip(g, p):
                    sigma[pos] = base[val]
                new.append(tuple(sigma))
        perms = new
    return tuple(perms)


class _InvariantBlock:
    """Basis of the stabilizer-invariant subspace of an operad arity space."""

    def __init__(self, kind: OperadKind, arity: int, pattern: tuple):
        self.kind = kind
        self.arity = arity
        self.pattern = pattern
        stab = _stabilizer(pattern)
        w = Fraction(1, len(stab))
        self.basis_vectors = []
        self._solve_rows = []  # (pivot basis elt, row dict, coeff list)
        for e in operads.basis(kind, arity):
            vec = {}
            for sigma in stab:
                for b, c in operads._act_basis(sigma, e):
                    vec[b] = vec.get(b, Fraction(0)) + c * w
            vec = {b: c for b, c in vec.items() if c}
            self._try_add(vec)

    def _try_add(self, vec):
        # reduce against the vectors already kept; what survives is still
        # invariant (a difference of invariant vectors) and becomes the
        # next basis vector, so solving in express() is triangular
        vec = dict(vec)
        for piv, row, _ in self._solve_rows:
            if piv in vec:
                f = vec[piv] / row[piv]
                for b, c in row.items():
                    w = vec.get(b, Fraction(0)) - f * c
                    if w:
                        vec[b] = w
                    else:
                        vec.pop(b, None)
        if not vec:
            return
        piv = min(vec, key=lambda b: b.payload)
        idx = len(self.basis_vectors)
        self.basis_vectors.append(vec)
        self._solve_rows.append((piv, vec, idx))

    @property
    def dimension(self):
        return len(self.basis_vectors)

    def express(self, vec: dict) -> list:
        """Coordinates of an invariant vector in the block basis."""
        vec = {b: Fraction(c) for b, c in vec.items() if c}
        coeffs = [Fraction(0)] * len(self.basis_vectors)
        for piv, row, idx in self._solve_rows:
            if piv in vec:
                f = vec[piv] / row[piv]
                for b, c in row.items():
                    w = vec.get(b, Fraction(0)) - f * c
                    if w:
                        vec[b] = w
                    else:
                        vec.pop(b, None)
                coeffs[idx] += f
        assert not vec, "vector outside the invariant block"
        return coeffs

    def project(self, vec: dict) -> dict:
        """Average an arbitrary coefficient vector over the stabilizer."""
        stab = _stabilizer(self.pattern)
        w = Fraction(1, len(stab))
        out = {}
        for e, c in vec.items():
            if not c:
                continue
            for sigma in stab:
                for b, c2 in operads._act_basis(sigma, e):
                    out[b] = out.get(b, Fraction(0)) + c * c2 * w
        return {b: c for b, c in out.items() if c}


@lru_cache(maxsize=None)
def invariant_block(kind: OperadKind, arity: int, pattern: tuple) -> _InvariantBlock:
    return _InvariantBlock(kind, arity, pattern)


@dataclass(frozen=True, order=True)
class CanonicalSpider:
    """A basis element of the spider space: index into an invariant block."""
    kind: OperadKind
    arity: int
    labels: tuple  # sorted
    index: int

    @property
    def degree(self):
        return self.arity - 2

    def block(self) -> _InvariantBlock:
        return invariant_block(self.kind, self.arity, _label_pattern(self.labels))

    def vector(self) -> dict:
        return self.block().basis_vectors[self.index]

    def pure_terms(self):
        """Expansion into (operad basis element, labels, coeff) triples."""
        return [(b, self.labels, c) for b, c in self.vector().items()]


class SpiderElement:
    """Linear combination of canonical spiders, stored blockwise."""

    def __init__(self, kind, blocks=None):
        self.kind = kind
        self.blocks = {}  # (arity, labels_sorted) -> {basis elt: Fraction}
        if blocks:
            for key, vec in blocks.items():
                vec = {b: Fraction(c) for b, c in vec.items() if c}
                if vec:
                    self.blocks[key] = vec

    @classmethod
    def zero(cls, kind):
        return cls(kind)

    @classmethod
    def from_pure(cls, e: OperadBasisElement, labels: tuple, coeff=1):
        sigma = sort_permutation(labels)
        labs = permute_labels(sigma, labels)
        moved = operads.act(sigma, e).scale(coeff)
        block = invariant_block(e.kind, e.arity, _label_pattern(labs))
        vec = block.project(moved.terms)
        return cls(e.kind, {(e.arity, labs): vec})

    @classmethod
    def from_canonical(cls, s: CanonicalSpider, coeff=1):
        vec = {b: Fraction(coeff) * c for b, c in s.vector().items()}
        return cls(s.kind, {(s.arity, s.labels): vec})

    def __add__(self, other):
        assert self.kind == other.kind
        out = {k: dict(v) for k, v in self.blocks.items()}
        for k, vec in other.blocks.items():
            tgt = out.setdefault(k, {})
            for b, c in vec.items():
                tgt[b] = tgt.get(b, Fraction(0)) + c
        return SpiderElement(self.kind, out)

    def scale(self, c):
        c = Fraction(c)
        return SpiderElement(self.kind, {
            k: {b: v * c for b, v in vec.items()}
            for k, vec in self.blocks.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        return (isinstance(other, SpiderElement) and self.kind == other.kind
                and self.blocks == other.blocks)

    def coords(self) -> dict:
        """Expansion as {CanonicalSpider: coeff}."""
        out = {}
        for (arity, labs), vec in self.blocks.items():
            block = invariant_block(self.kind, arity, _label_pattern(labs))
            for idx, c in enumerate(block.express(vec)):
                if c:
                    out[CanonicalSpider(self.kind, arity, labs, idx)] = c
        return out

    def pure_terms(self):
        out = []
        for (arity, labs), vec in self.blocks.items():
            for b, c in vec.items():
                out.append((b, labs, c))
        return out


# ---------------------------------------------------------------------------
# fusion and bracket

def fuse(e1, labels1, i, e2, labels2, j) -> SpiderElement:
    """Fuse leg i of (e1, labels1) to leg j of (e2, labels2)."""
    w = omega(labels1[i], labels2[j])
    kind = e1.kind
    if not w:
        return SpiderElement.zero(kind)
    composed = operads.compose(e1, i, e2, j)
    new_labels = tuple(labels1[s] for s in range(len(labels1)) if s != i) \
        + tuple(labels2[s] for s in range(len(labels2)) if s != j)
    out = SpiderElement.zero(kind)
    for b, c in composed.terms.items():
        out = out + SpiderElement.from_pure(b, new_labels, c * w)
    return out


def bracket(s1: SpiderElement, s2: SpiderElement) -> SpiderElement:
    """[s1, s2]: sum of fusions over all pairs of legs."""
    out = SpiderElement.zero(s1.kind)
    for e1, l1, c1 in s1.pure_terms():
        for e2, l2, c2 in s2.pure_terms():
            coeff = c1 * c2
            for i in range(len(l1)):
                for j in range(len(l2)):
                    if omega(l1[i], l2[j]):
                        out = out + fuse(e1, l1, i, e2, l2, j).scale(coeff)
    return out


@lru_cache(maxsize=None)
def bracket_canonical(a: CanonicalSpider, b: CanonicalSpider) -> tuple:
    """Bracket of two basis spiders as ((CanonicalSpider, coeff), ...)."""
    out = bracket(SpiderElement.from_canonical(a), SpiderElement.from_canonical(b))
    return tuple(sorted(out.coords().items(), key=lambda kv: kv[0]))


# ---------------------------------------------------------------------------
# wedges

class WedgeElement:
    """Linear combination of wedges of canonical spiders.

    A wedge is a strictly increasing tuple of CanonicalSpider; reordering
    a wedge costs the sign of the permutation and repeated factors vanish.
    """

    def __init__(self, kind, terms=None):
        self.kind = kind
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def zero(cls, kind):
        return cls(kind)

    @classmethod
    def from_factors_canonical(cls, factors: tuple, coeff=1):
        """Wedge of canonical spiders in the given order."""
        factors = list(factors)
        sign = 1
        # insertion sort, tracking the permutation sign
        for i in range(1, len(factors)):
            j = i
            while j > 0 and factors[j - 1] > factors[j]:
                factors[j - 1], factors[j] = factors[j], factors[j - 1]
                sign = -sign
                j -= 1
        for i in range(1, len(factors)):
            if factors[i - 1] == factors[i]:
                return cls.zero(factors[0].kind)
        kind = factors[0].kind
        return cls(kind, {tuple(factors): Fraction(coeff) * sign})

    @classmethod
    def from_spider_elements(cls, elements, coeff=1):
        """Multilinear expansion of a wedge of SpiderElements."""
        kind = elements[0].kind
        out = cls.zero(kind)
        partial = [((), Fraction(coeff))]
        for el in elements:
            coords = el.coords()
            nxt = []
            for factors, c in partial:
                for s, cs in coords.items():
                    nxt.append((factors + (s,), c * cs))
            partial = nxt
        for factors, c in partial:
            out = out + cls.from_factors_canonical(factors, c)
        return out

    def __add__(self, other):
        assert self.kind == other.kind
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return WedgeElement(self.kind, out)

    def scale(self, c):
        c = Fraction(c)
        return WedgeElement(self.kind, {w: v * c for w, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, WedgeElement) and self.kind == other.kind
                and self.terms == other.terms)

    def __repr__(self):
        return f"WedgeElement({self.kind.value}, {len(self.terms)} terms)"


def ce_boundary(x: WedgeElement) -> WedgeElement:
    """Chevalley-Eilenberg boundary: sum over factor pairs of the bracket
    wedged with the remaining factors, with sign (-1)^(i+j+1) (1-based)."""
    out = WedgeElement.zero(x.kind)
    for wedge, coeff in x.terms.items():
        k = len(wedge)
        for i in range(k):
            for j in range(i + 1, k):
                sign = (-1) ** (i + j + 1)  # == (-1)^(i+j+1) for 1-based too
                br = bracket_canonical(wedge[i], wedge[j])
                rest = tuple(wedge[t] for t in range(k) if t != i and t != j)
                for s, c in br:
                    out = out + WedgeElement.from_factors_canonical(
                        (s,) + rest, coeff * c * sign)
    return out


# ---------------------------------------------------------------------------
# bases

@lru_cache(maxsize=None)
def spider_basis(kind: OperadKind, n: int, degree: int) -> tuple:
    """All canonical spiders of the given degree over V_n."""
    if degree < 1:
        raise ValueError("spiders have positive degree")
    arity = degree + 2
    labels = SymplecticSpace(n).labels()
    out = []
    for labs in combinations_with_replacement(sorted(labels), arity):
        block = invariant_block(kind, arity, _label_pattern(labs))
        for idx in range(block.dimension):
            out.append(CanonicalSpider(kind, arity, labs, idx))
    return tuple(out)


def wedge_basis(kind: OperadKind, n: int, total_degree: int, factors: int) -> tuple:
    """All canonical wedges with the given number of factors and total degree."""
    def parts(total, k, minimum=1):
        if k == 1:
            if total >= minimum:
                yield (total,)
            return
        for head in range(minimum, total - (k - 1) * minimum + 1):
            for rest in parts(total - head, k - 1, minimum):
                yield (head,) + rest

    out = []
    seen = set()
    for degs in parts(total_degree, factors):
        key = tuple(sorted(degs))
        if key in seen:
            continue
        seen.add(key)
        pools = [spider_basis(kind, n, d) for d in key]
        def rec(i, chosen):
            if i == len(pools):
                out.append(tuple(chosen))
                return
            for s in pools[i]:
                if chosen and not (chosen[-1] < s):
                    continue
                rec(i + 1, chosen + [s])
        rec(0, [])
    return tuple(out)
