"""Cyclic operads Com, Assoc and Lie.

An arity-m element has m interchangeable input/output legs ("slots"),
numbered 0..m-1.  The symmetric group on the slots acts, and two elements
may be composed by welding a slot of one to a slot of the other.

Basis conventions:

* Com((m)) is one dimensional; the payload is the empty tuple.

* Assoc((m)) is spanned by cyclic orders of the slots, stored as the
  rotation that puts slot 0 first, e.g. (0, 2, 1).  Dimension (m-1)!.

* Lie((m)) is spanned by rooted binary bracketings of the slots
  {1, .., m-1} with slot 0 as the root.  We use the left-normed basis
  [[..[x_1, x_{a_1}], x_{a_2}], .., x_{a_{m-2}}] where (a_1, .., a_{m-2})
  runs over permutations of {2, .., m-1}; the payload stores that tuple.
  Dimension (m-2)!.

The Lie computations (action, composition, normal form) go through the
expansion of bracketings into tensor words; read as cyclic words with the
root prepended this realises Lie((m)) inside Assoc((m)), compatibly with
both the symmetric group action and composition.  A multilinear Lie
element is recovered from its word expansion by keeping the words that
start with a fixed letter and reading them as left-normed brackets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations


class OperadKind(Enum):
    COM = "com"
    ASSOC = "assoc"
    LIE = "lie"

    @classmethod
    def from_string(cls, s: str) -> "OperadKind":
        return cls(s.lower())


@dataclass(frozen=True, order=True)
class OperadBasisElement:
    kind: OperadKind
    arity: int
    payload: tuple

    def __post_init__(self):
        m = self.arity
        if m < 2:
            raise ValueError("arity must be at least 2")
        if self.kind is OperadKind.COM:
            assert self.payload == ()
        elif self.kind is OperadKind.ASSOC:
            assert len(self.payload) == m and self.payload[0] == 0
            assert sorted(self.payload) == list(range(m))
        else:
            assert sorted(self.payload) == list(range(2, m))


class OperadElement:
    """A finite rational linear combination of basis elements of fixed arity."""

    __slots__ = ("kind", "arity", "terms")

    def __init__(self, kind, arity, terms=None):
        self.kind = kind
        self.arity = arity
        self.terms = {}
        if terms:
            for b, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[b] = c

    @classmethod
    def from_basis(cls, b: OperadBasisElement, coeff=1):
        return cls(b.kind, b.arity, {b: Fraction(coeff)})

    def __add__(self, other):
        assert (self.kind, self.arity) == (other.kind, other.arity)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, Fraction(0)) + c
        return OperadElement(self.kind, self.arity, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return OperadElement(self.kind, self.arity,
                             {b: v * c for b, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, OperadElement)
                and self.kind == other.kind and self.arity == other.arity
                and self.terms == other.terms)

    def __repr__(self):
        return f"OperadElement({self.kind.value}, {self.arity}, {self.terms!r})"


# ---------------------------------------------------------------------------
# bases

@lru_cache(maxsize=None)
def basis(kind: OperadKind, arity: int) -> tuple:
    """All basis elements of the given kind and arity, in a fixed order."""
    if arity < 2:
        raise ValueError("arity must be at least 2")
    if kind is OperadKind.COM:
        return (OperadBasisElement(kind, arity, ()),)
    if kind is OperadKind.ASSOC:
        return tuple(OperadBasisElement(kind, arity, (0,) + p)
                     for p in permutations(range(1, arity)))
    return tuple(OperadBasisElement(kind, arity, p)
                 for p in permutations(range(2, arity)))


def dim(kind: OperadKind, arity: int) -> int:
    return len(basis(kind, arity))


# ---------------------------------------------------------------------------
# Lie machinery: left-normed bracketings <-> tensor words <-> cyclic words

@lru_cache(maxsize=None)
def _lie_words(payload: tuple) -> tuple:
    """Expansion of the left-normed bracket into tensor words over {1, ..}.

    Returns a tuple of (word, coeff) pairs; [P, a] contributes P.a - a.P.
    """
    terms = {(1,): 1}
    for a in payload:
        nxt = {}
        for w, c in terms.items():
            right = w + (a,)
            left = (a,) + w
            nxt[right] = nxt.get(right, 0) + c
            nxt[left] = nxt.get(left, 0) - c
        terms = nxt
    return tuple(sorted(terms.items()))


def _rotate_zero_first(cyc: tuple) -> tuple:
    i = cyc.index(0)
    return cyc[i:] + cyc[:i]


def _lie_from_cyclic_words(words: dict, arity: int) -> dict:
    """Recover left-normed coordinates from a cyclic-word expansion.

    ``words`` maps cyclic tuples (rotated so 0 comes first) to coefficients
    and must be the expansion of an element of Lie((arity)); the basis
    coordinate of payload p is the coefficient of the word (0, 1) + p.
    """
    out = {}
    for w, c in words.items():
        if len(w) >= 2 and w[1] == 1 and c:
            out[w[2:]] = c
    return out


def _expand_bracketing(expr) -> dict:
    """Tensor-word expansion of a nested-tuple bracketing."""
    if not isinstance(expr, tuple):
        return {(expr,): 1}
    a, b = expr
    wa, wb = _expand_bracketing(a), _expand_bracketing(b)
    out = {}
    for u, cu in wa.items():
        for v, cv in wb.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
            out[v + u] = out.get(v + u, 0) - cu * cv
    return out


def lie_element_from_bracketing(expr, root: int, arity: int) -> OperadElement:
    """The Lie((arity)) element given by a bracketing of the non-root slots.

    ``expr`` is a nested tuple of slot numbers (ints are leaves) covering
    every slot except ``root``.  The root need not be slot 0; the cyclic
    structure takes care of re-rooting.
    """
    words = {}
    for w, c in _expand_bracketing(expr).items():
        cyc = _rotate_zero_first((root,) + w)
        words[cyc] = words.get(cyc, 0) + c
    terms = {OperadBasisElement(OperadKind.LIE, arity, p): Fraction(c)
             for p, c in _lie_from_cyclic_words(words, arity).items() if c}
    return OperadElement(OperadKind.LIE, arity, terms)


def lie_bracketing(payload: tuple):
    """Nested-tuple bracketing (rooted at slot 0) of a left-normed payload."""
    expr = 1
    for a in payload:
        expr = (expr, a)
    return expr


# ---------------------------------------------------------------------------
# symmetric group action

@lru_cache(maxsize=None)
def _act_basis(sigma: tuple, b: OperadBasisElement) -> tuple:
    """sigma sends slot i to sigma[i]; returns ((basis, coeff), ...)."""
    m = b.arity
    assert len(sigma) == m and sorted(sigma) == list(range(m))
    if b.kind is OperadKind.COM:
        return ((b, Fraction(1)),)
    if b.kind is OperadKind.ASSOC:
        cyc = _rotate_zero_first(tuple(sigma[i] for i in b.payload))
        return ((OperadBasisElement(b.kind, m, cyc), Fraction(1)),)
    words = {}
    for w, c in _lie_words(b.payload):
        cyc = _rotate_zero_first(tuple(sigma[i] for i in (0,) + w))
        words[cyc] = words.get(cyc, 0) + c
    return tuple((OperadBasisElement(b.kind, m, p), Fraction(c))
                 for p, c in sorted(_lie_from_cyclic_words(words, m).items()))


def act(sigma, x) -> OperadElement:
    """Apply a slot permutation (tuple, slot i -> sigma[i]) to x."""
    if isinstance(x, OperadBasisElement):
        x = OperadElement.from_basis(x)
    out = {}
    for b, c in x.terms.items():
        for b2, c2 in _act_basis(tuple(sigma), b):
            out[b2] = out.get(b2, Fraction(0)) + c * c2
    return OperadElement(x.kind, x.arity, out)


# ---------------------------------------------------------------------------
# composition

def compose_slot_maps(ma: int, sa: int, mb: int, sb: int):
    """Deterministic renumbering used by ``compose``.

    Slots of the first factor other than ``sa`` come first in their
    original order, then the slots of the second factor other than ``sb``.
    Returns (map_a, map_b): dicts old slot -> new slot.
    """
    map_a = {}
    for s in range(ma):
        if s != sa:
            map_a[s] = s if s < sa else s - 1
    map_b = {}
    for s in range(mb):
        if s != sb:
            map_b[s] = (ma - 1) + (s if s < sb else s - 1)
    return map_a, map_b


def _splice(wa: tuple, sa: int, wb: tuple, sb: int, map_a, map_b) -> tuple:
    """Weld two cyclic words at the given slots and renumber."""
    i = wb.index(sb)
    seq = wb[i + 1:] + wb[:i]
    out = []
    for s in wa:
        if s == sa:
            out.extend(map_b[t] for t in seq)
        else:
            out.append(map_a[s])
    return _rotate_zero_first(tuple(out))


@lru_cache(maxsize=None)
def _compose_basis(a: OperadBasisElement, sa: int, b: OperadBasisElement,
                   sb: int) -> tuple:
    kind = a.kind
    ma, mb = a.arity, b.arity
    m = ma + mb - 2
    map_a, map_b = compose_slot_maps(ma, sa, mb, sb)
    if kind is OperadKind.COM:
        return ((OperadBasisElement(kind, m, ()), Fraction(1)),)
    if kind is OperadKind.ASSOC:
        cyc = _splice(a.payload, sa, b.payload, sb, map_a, map_b)
        return ((OperadBasisElement(kind, m, cyc), Fraction(1)),)
    words = {}
    for wa, ca in _lie_words(a.payload):
        for wb, cb in _lie_words(b.payload):
            cyc = _splice((0,) + wa, sa, (0,) + wb, sb, map_a, map_b)
            words[cyc] = words.get(cyc, 0) + ca * cb
    return tuple((OperadBasisElement(kind, m, p), Fraction(c))
                 for p, c in sorted(_lie_from_cyclic_words(words, m).items()))


def compose(a, slot_a: int, b, slot_b: int) -> OperadElement:
    """Compose, using slot_a of ``a`` as output and slot_b of ``b`` as input."""
    if isinstance(a, OperadBasisElement):
        a = OperadElement.from_basis(a)
    if isinstance(b, OperadBasisElement):
        b = OperadElement.from_basis(b)
    assert a.kind == b.kind
    out = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            for b2, c2 in _compose_basis(ba, slot_a, bb, slot_b):
                out[b2] = out.get(b2, Fraction(0)) + ca * cb * c2
    return OperadElement(a.kind, a.arity + b.arity - 2, out)


# ---------------------------------------------------------------------------
# debugging aid: check that a Lie word expansion really is a Lie element

def lie_expansion(x: OperadElement) -> dict:
    """Cyclic-word expansion of a Lie operad element (for tests)."""
    words = {}
    for b, c in x.terms.items():
        for w, cw in _lie_words(b.payload):
            cyc = _rotate_zero_first((0,) + w)
            words[cyc] = words.get(cyc, 0) + c * cw
    return {w: c for w, c in words.items() if c}
