"""Closed-form dimension counts used to cross-check graph homology.

Contains the cusp-form dimension, the multiplicity of a two-row Schur
functor in the rank-two part of degree-one hairy homology, two-row Weyl
dimension formulas, and an independent small polynomial model of that
rank-two part (symmetric polynomials on V + V cut out by three linear
functional equations).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .linalg import SparseEchelon


def cusp_dim(k: int) -> int:
    """Dimension of the space of weight-k cusp forms for SL_2(Z)."""
    if k < 0 or k % 2 == 1 or k == 2:
        return 0
    if k % 12 == 2:
        return max(k // 12 - 1, 0)
    return k // 12


def lambda_mult(k: int, ell: int) -> int:
    """Multiplicity of the two-row Schur functor S_{(k, ell)} in the
    rank-two weight of degree-one hairy Lie homology."""
    if k < ell or ell < 0:
        raise ValueError("need k >= ell >= 0")
    if k == ell or (k + ell) % 2 == 1:
        return 0
    if ell % 2 == 0:
        return cusp_dim(k - ell + 2)
    return cusp_dim(k - ell + 2) + 1


def weyl_dim_two_row(k: int, ell: int, n: int) -> int:
    """dim S_{(k, ell)}(V) for dim V = n (two-row partition k >= ell >= 0)."""
    if k < ell or ell < 0:
        raise ValueError("need k >= ell >= 0")
    if n < 2 and ell > 0:
        return 0
    num = (k - ell + 1) * comb(n - 2 + ell, ell) * comb(n + k - 1, k)
    assert num % (k + 1) == 0
    return num // (k + 1)


def h12_dim_closed(dim_v: int, hairs: int) -> int:
    """Closed-form dimension of the rank-two part of degree-one hairy Lie
    homology with the given number of hairs, for dim V = dim_v."""
    if hairs < 0:
        raise ValueError("hairs must be nonnegative")
    total = 0
    for ell in range(0, hairs // 2 + (1 if hairs % 2 else 0)):
        k = hairs - ell
        if k <= ell:
            continue
        total += lambda_mult(k, ell) * weyl_dim_two_row(k, ell, dim_v)
    return total


def modular_table(max_hairs: int = 14) -> dict:
    """Partitions (k, ell) with multiplicity, keyed by hair count k + ell."""
    out = {}
    for h in range(2, max_hairs + 1, 2):
        col = []
        for ell in range(0, h // 2 + 1):
            k = h - ell
            if k <= ell:
                continue
            m = lambda_mult(k, ell)
            if m:
                col.append(((k, ell), m))
        out[h] = col
    return out


# ---------------------------------------------------------------------------
# polynomial model: symmetric functions on V + V satisfying three identities

def _monomials(multidegree: tuple):
    """x-exponent tuples a with 0 <= a_i <= d_i (y-exponent is d - a)."""
    ranges = [range(d + 1) for d in multidegree]
    return [tuple(a) for a in product(*ranges)]


def _sub_rows(multidegree: tuple):
    """Constraint rows, per multidegree block, for the three conditions:

    (1) f(x, y) = f(y, x)
    (2) f(x, y) = -f(-x, y)
    (3) f(x, y) + f(y, -x-y) + f(-x-y, x) = 0

    Monomials are indexed by their x-exponent tuple a (y-exponent d - a).
    """
    mons = _monomials(multidegree)
    index = {a: i for i, a in enumerate(mons)}
    d = multidegree
    rows = []

    for a in mons:
        b = tuple(d[i] - a[i] for i in range(len(d)))
        # (1): c[a] - c[b] = 0
        if a < b:
            rows.append({index[a]: 1, index[b]: -1})
        # (2): c[a] ((-1)^|a| + 1) = 0
        if sum(a) % 2 == 0:
            rows.append({index[a]: 1})

    # (3): build the image of each basis monomial under the two substituted
    # copies and collect coefficients of each target monomial
    acc = {}  # target a -> {source index: coeff}

    def contribute(target, src, coeff):
        if coeff:
            acc.setdefault(target, {})
            acc[target][src] = acc[target].get(src, 0) + coeff

    for a in mons:
        i = index[a]
        b = tuple(d[k] - a[k] for k in range(len(d)))
        # identity copy
        contribute(a, i, 1)
        # f(y, -x-y): x_k -> y_k, y_k -> -(x_k + y_k)
        # x^a y^b -> y^a (-1)^|b| prod_k (x_k + y_k)^{b_k}
        for js in product(*[range(bk + 1) for bk in b]):
            coeff = (-1) ** sum(b)
            for k, j in enumerate(js):
                coeff *= comb(b[k], j)
            target = tuple(js)  # x-exponent j; y-exponent a + b - j = d - j
            contribute(target, i, coeff)
        # f(-x-y, x): x_k -> -(x_k + y_k), y_k -> x_k
        # x^a y^b -> (-1)^|a| prod_k (x_k + y_k)^{a_k} * x^b
        for js in product(*[range(ak + 1) for ak in a]):
            coeff = (-1) ** sum(a)
            for k, j in enumerate(js):
                coeff *= comb(a[k], j)
            target = tuple(b[k] + js[k] for k in range(len(d)))
            contribute(target, i, coeff)

    for target, row in acc.items():
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    return len(mons), rows


def _multidegrees(nvars: int, total: int):
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _multidegrees(nvars - 1, total - head):
            yield (head,) + rest


@lru_cache(maxsize=None)
def rank2_poly_dim(n: int, h: int) -> int:
    """Dimension of degree-h polynomials f on V + V (dim V = 2n) with
    f(x,y) = f(y,x), f(x,y) = -f(-x,y) and the three-term cyclic identity.

    The three conditions preserve the joint degree in each coordinate pair
    (x_i, y_i), so the computation runs block by block over multidegrees.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    nvars = 2 * n
    total = 0
    for mdeg in _multidegrees(nvars, h):
        size, rows = _sub_rows(mdeg)
        ech = SparseEchelon()
        for row in rows:
            ech.add(row)
        total += size - ech.rank
    return total


def f2k(k: int) -> dict:
    """The explicit solution x1 y2^(2k-1) - x2 y1 y2^(2k-2)
    + y1 x2^(2k-1) - y2 x1 x2^(2k-2), as {(x-exps, y-exps): coeff} over
    two coordinates per factor (k >= 2)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    e = 2 * k - 1
    return {
        ((1, 0), (0, e)): 1,
        ((0, 1), (1, e - 1)): -1,
        ((0, e), (1, 0)): 1,
        ((1, e - 1), (0, 1)): -1,
    }


def poly_check_conditions(poly: dict) -> bool:
    """Check the three defining conditions on a {(a, b): coeff} polynomial."""
    nvars = len(next(iter(poly))[0])

    def expand_linear(poly, x_sub, y_sub):
        # x_sub, y_sub: per variable, list of (target_kind, coeff) where
        # target_kind is ("x", k) or ("y", k)
        out = {}
        for (a, b), c in poly.items():
            terms = [((0,) * nvars, (0,) * nvars, c)]
            for k in range(nvars):
                for _ in range(a[k]):
                    terms = _mult_linear(terms, x_sub[k], nvars)
                for _ in range(b[k]):
                    terms = _mult_linear(terms, y_sub[k], nvars)
            for ea, eb, cc in terms:
                key = (ea, eb)
                out[key] = out.get(key, 0) + cc
        return {k: v for k, v in out.items() if v}

    def add(p, q):
        out = dict(p)
        for k, v in q.items():
            out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    x_of = [[(("x", k), 1)] for k in range(nvars)]
    y_of = [[(("y", k), 1)] for k in range(nvars)]
    minus_xy = [[(("x", k), -1), (("y", k), -1)] for k in range(nvars)]

    swap = expand_linear(poly, y_of, x_of)
    if swap != poly:
        return False
    neg_x = expand_linear(poly, [[(("x", k), -1)] for k in range(nvars)], y_of)
    if add(poly, neg_x):  # f(x,y) + f(-x,y) must vanish
        return False
    t2 = expand_linear(poly, y_of, minus_xy)
    t3 = expand_linear(poly, minus_xy, x_of)
    return not add(add(poly, t2), t3)


def _mult_linear(terms, sub, nvars):
    out = []
    for ea, eb, c in terms:
        for (kind, k), coeff in sub:
            if kind == "x":
                na = list(ea)
                na[k] += 1
                out.append((tuple(na), eb, c * coeff))
            else:
                nb = list(eb)
                nb[k] += 1
                out.append((ea, tuple(nb), c * coeff))
    # merge
    acc = {}
    for ea, eb, c in out:
        acc[(ea, eb)] = acc.get((ea, eb), 0) + c
    return [(ea, eb, c) for (ea, eb), c in acc.items() if c]


# ---------------------------------------------------------------------------
# expected degree-one homology of the hairy complexes

def expected_h1(kind, n: int, d: int, r: int = None) -> int:
    """Known degree-one hairy homology dimensions.

    For Com and Assoc the rank grading is summed over; for Lie a rank
    r in {0, 1, 2} must be given and d is the degree of the slice
    (for r = 2 the hair count is d - 2).
    """
    from .operads import OperadKind
    m = 2 * n  # dim V
    if kind is OperadKind.COM:
        return comb(m + 2, 3) if d == 1 else 0
    if kind is OperadKind.ASSOC:
        if d == 1:
            return (m ** 3 + 2 * m) // 3 + m
        if d == 2:
            return m * (m - 1) // 2
        return 0
    if r is None:
        raise ValueError("Lie homology needs a rank")
    if r == 0:
        return comb(m, 3) if d == 1 else 0
    if r == 1:
        h = d
        return comb(m - 1 + h, h) if h % 2 == 1 else 0
    if r == 2:
        return h12_dim_closed(m, d - 2)
    raise ValueError("rank must be 0, 1 or 2")
