import math
import random
from fractions import Fraction
from itertools import permutations
from math import comb, gcd

import pytest

from hairygraph import operads
from hairygraph.operads import OperadKind
from hairygraph.closed_forms import weyl_dim_two_row
from hairygraph.spiders import (
    CanonicalSpider, SpiderElement, WedgeElement,
    spider_basis, wedge_basis, bracket, ce_boundary,
)
from hairygraph.symplectic import SymplecticSpace

COM, ASSOC, LIE = OperadKind.COM, OperadKind.ASSOC, OperadKind.LIE


def sym_power_dim(n_dim, k):
    return comb(n_dim + k - 1, k)


def cyclic_coinvariants_dim(n_dim, m):
    return sum(n_dim ** gcd(j, m) for j in range(m)) // m


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_com_spider_dimensions(n, d):
    # Com spiders of degree d form Sym^(d+2) of V
    assert len(spider_basis(COM, n, d)) == sym_power_dim(2 * n, d + 2)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_assoc_spider_dimensions(n, d):
    # Assoc spiders of degree d are cyclic coinvariants of V^(d+2)
    assert len(spider_basis(ASSOC, n, d)) == cyclic_coinvariants_dim(2 * n, d + 2)


@pytest.mark.parametrize("n", [1, 2])
def test_lie_spider_dimensions(n):
    dim_v = 2 * n
    assert len(spider_basis(LIE, n, 1)) == comb(dim_v, 3)
    assert len(spider_basis(LIE, n, 2)) == weyl_dim_two_row(2, 2, dim_v)


def test_lie_spider_dimension_degree3():
    # S_(3,1,1) V: zero for dim V = 2, dimension 36 for dim V = 4
    assert len(spider_basis(LIE, 1, 3)) == 0
    assert len(spider_basis(LIE, 2, 3)) == 36


@pytest.mark.parametrize("kind", [COM, ASSOC, LIE])
def test_spider_class_is_relabeling_invariant(kind, n=2):
    rng = random.Random(13)
    labels = SymplecticSpace(n).labels()
    for m in (3, 4):
        for _ in range(6):
            e = rng.choice(operads.basis(kind, m))
            labs = tuple(rng.choice(labels) for _ in range(m))
            ref = SpiderElement.from_pure(e, labs)
            sigma = tuple(rng.sample(range(m), m))
            moved = operads.act(sigma, e)
            from hairygraph.spiders import permute_labels
            img = SpiderElement.zero(kind)
            for b, c in moved.terms.items():
                img = img + SpiderElement.from_pure(b, permute_labels(sigma, labs), c)
            assert img == ref


def test_lie_spider_with_repeated_labels_can_vanish():
    tripod = operads.basis(LIE, 3)[0]
    s = SpiderElement.from_pure(tripod, (("p", 1),) * 3)
    assert s.is_zero()
    s = SpiderElement.from_pure(tripod, (("p", 1), ("p", 1), ("q", 1)))
    assert s.is_zero()
    s = SpiderElement.from_pure(tripod, (("p", 1), ("q", 1), ("p", 2)))
    assert not s.is_zero()


def test_com_spiders_never_vanish():
    e = operads.basis(COM, 3)[0]
    s = SpiderElement.from_pure(e, (("p", 1),) * 3)
    assert not s.is_zero()


def test_coords_roundtrip():
    for kind in (COM, ASSOC, LIE):
        for s in spider_basis(kind, 1, 2)[:5]:
            el = SpiderElement.from_canonical(s, Fraction(3, 2))
            assert el.coords() == {s: Fraction(3, 2)}


@pytest.mark.parametrize("kind", [COM, ASSOC, LIE])
def test_bracket_antisymmetry(kind):
    rng = random.Random(kind.value.__hash__() % 100 + 2)
    pool = spider_basis(kind, 1, 1) + spider_basis(kind, 1, 2)
    if not pool:
        return
    for _ in range(8):
        a = SpiderElement.from_canonical(rng.choice(pool))
        b = SpiderElement.from_canonical(rng.choice(pool))
        assert bracket(a, b) == bracket(b, a).scale(-1)


@pytest.mark.parametrize("kind", [COM, ASSOC, LIE])
def test_bracket_jacobi(kind):
    rng = random.Random(23)
    pool = spider_basis(kind, 1, 1)
    if len(pool) < 2:
        pool = spider_basis(kind, 2, 1)
    picks = [SpiderElement.from_canonical(rng.choice(pool)) for _ in range(3)]
    a, b, c = picks
    lhs = bracket(a, bracket(b, c))
    rhs = bracket(bracket(a, b), c) + bracket(b, bracket(a, c))
    assert lhs == rhs


def test_bracket_raises_degree():
    for kind in (COM, ASSOC, LIE):
        pool = spider_basis(kind, 2, 1)
        a = SpiderElement.from_canonical(pool[0])
        out = bracket(a, a)
        for (arity, _labs) in out.blocks:
            assert arity == 4  # degree 1 + 1


@pytest.mark.parametrize("kind", [COM, ASSOC, LIE])
def test_ce_boundary_squares_to_zero_small(kind):
    for w in wedge_basis(kind, 1, 3, 3):
        x = WedgeElement.from_factors_canonical(w)
        assert ce_boundary(ce_boundary(x)).is_zero()
    for w in wedge_basis(kind, 1, 4, 3)[:40]:
        x = WedgeElement.from_factors_canonical(w)
        assert ce_boundary(ce_boundary(x)).is_zero()


def test_wedge_reordering_sign():
    pool = spider_basis(COM, 1, 1)
    a, b = pool[0], pool[1]
    w1 = WedgeElement.from_factors_canonical((a, b))
    w2 = WedgeElement.from_factors_canonical((b, a))
    assert w1 == w2.scale(-1)
    assert WedgeElement.from_factors_canonical((a, a)).is_zero()
