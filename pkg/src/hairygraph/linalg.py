"""Exact sparse linear algebra over the rationals.

Everything here is fraction-free where it can be: elimination rows are
kept as integer vectors divided by their gcd, and a vector is reduced
against a row by cross-multiplication.  No floating point anywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class RationalMatrix:
    """Sparse matrix over Q stored as {(row, col): Fraction}."""

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r, c, v):
        assert 0 <= r < self.nrows and 0 <= c < self.ncols
        v = Fraction(v)
        if v:
            self.entries[(r, c)] = v
        else:
            self.entries.pop((r, c), None)

    def get(self, r, c):
        return self.entries.get((r, c), Fraction(0))

    @property
    def nnz(self):
        return len(self.entries)

    def rows(self):
        """Iterate over nonempty rows as (row index, {col: value})."""
        byrow = {}
        for (r, c), v in self.entries.items():
            byrow.setdefault(r, {})[c] = v
        for r in sorted(byrow):
            yield r, byrow[r]

    def columns(self):
        bycol = {}
        for (r, c), v in self.entries.items():
            bycol.setdefault(c, {})[r] = v
        for c in sorted(bycol):
            yield c, bycol[c]

    def transpose(self):
        out = RationalMatrix(self.ncols, self.nrows)
        for (r, c), v in self.entries.items():
            out.entries[(c, r)] = v
        return out

    def mul(self, other: "RationalMatrix") -> "RationalMatrix":
        assert self.ncols == other.nrows
        ocols = {}
        for (r, c), v in other.entries.items():
            ocols.setdefault(r, []).append((c, v))
        out = RationalMatrix(self.nrows, other.ncols)
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in ocols.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, Fraction(0)) + v * w
        out.entries = {k: v for k, v in acc.items() if v}
        return out

    def is_zero(self):
        return not self.entries

    def rank(self) -> int:
        ech = SparseEchelon()
        for _, row in self.rows():
            ech.add(row)
        return ech.rank

    # -- coordinate text format ------------------------------------------

    def to_coord_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        for (r, c), v in sorted(self.entries.items()):
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coord_text(cls, text: str) -> "RationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols, nnz = (int(x) for x in lines[0].split())
        out = cls(nrows, ncols)
        for ln in lines[1:]:
            r, c, val = ln.split()
            out.set(int(r), int(c), Fraction(val))
        assert out.nnz == nnz
        return out


def _normalize_int_row(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _to_int_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        v = Fraction(v)
        den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    for c, v in row.items():
        v = Fraction(v)
        w = v.numerator * (den // v.denominator)
        if w:
            out[c] = w
    return _normalize_int_row(out)


class SparseEchelon:
    """Incremental fraction-free row echelon form.

    Rows are integer vectors with gcd 1; the pivot of a row is its
    smallest column.  A newly added row is first reduced against the
    stored rows, so no stored row's pivot appears in a later row at
    insertion time.
    """

    def __init__(self):
        self.rows = {}  # pivot col -> {col: int}

    @property
    def rank(self):
        return len(self.rows)

    def _reduce_int(self, vec: dict) -> "tuple[dict, int, int]":
        """Reduce an integer vector against the stored rows.

        Returns ``(reduced, num, den)`` with ``num, den > 0`` such that the
        exact reduction of the input is ``reduced * num / den``.  Because each
        stored row's pivot is its smallest column, a reduction step at column
        ``c`` only creates fill at columns > c, so a single left-to-right heap
        sweep terminates.  Full-row gcd normalization is deferred until the
        accumulated scale factors grow past a bit threshold.
        """
        vec = dict(vec)
        num, den = 1, 1
        pending = [c for c in vec if c in self.rows]
        heapq.heapify(pending)
        scale_bits = 0
        while pending:
            c = heapq.heappop(pending)
            val = vec.get(c)
            if not val:
                vec.pop(c, None)
                continue
            row = self.rows[c]
            p = row[c]
            g = gcd(p, val)
            mp, mv = p // g, val // g
            if mp != 1:
                for col in vec:
                    vec[col] *= mp
                den *= mp
                scale_bits += mp.bit_length()
            del vec[c]
            for col, rv in row.items():
                if col == c:
                    continue
                old = vec.get(col)
                w = (old or 0) - rv * mv
                if w:
                    vec[col] = w
                    if old is None and col in self.rows:
                        heapq.heappush(pending, col)
                elif old is not None:
                    del vec[col]
            if scale_bits > 64:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for col in vec:
                        vec[col] //= g
                    num *= g
                scale_bits = 0
        return {c: v for c, v in vec.items() if v}, num, den

    def add(self, row: dict) -> bool:
        """Add a row (dict col -> int/Fraction); True if it was independent."""
        vec, _, _ = self._reduce_int(_to_int_row(row))
        if not vec:
            return False
        vec = _normalize_int_row(vec)
        piv = min(vec)
        if vec[piv] < 0:
            vec = {c: -v for c, v in vec.items()}
        self.rows[piv] = vec
        return True

    @property
    def pivot_columns(self):
        return set(self.rows)

    def reduce_fractions(self, vec: dict) -> dict:
        """Exactly reduce a {col: Fraction} vector modulo the row space."""
        den = 1
        for v in vec.values():
            v = Fraction(v)
            den = den * v.denominator // gcd(den, v.denominator)
        ivec = {}
        for c, v in vec.items():
            v = Fraction(v)
            w = v.numerator * (den // v.denominator)
            if w:
                ivec[c] = w
        reduced, rnum, rden = self._reduce_int(ivec)
        return {c: Fraction(v * rnum, rden * den) for c, v in reduced.items()}

    def contains(self, vec: dict) -> bool:
        return not self._reduce_int(_to_int_row(vec))[0]


@dataclass(frozen=True)
class HomologyReport:
    dim_chains: int
    rank_out: int
    rank_in: int

    @property
    def betti(self) -> int:
        return self.dim_chains - self.rank_out - self.rank_in


def homology_dim(boundary_out: RationalMatrix,
                 boundary_in: RationalMatrix) -> HomologyReport:
    """Homology at C where boundary_out: C -> C' and boundary_in: C'' -> C.

    Matrix columns index the source chain group.
    """
    assert boundary_in.nrows == boundary_out.ncols
    return HomologyReport(dim_chains=boundary_out.ncols,
                          rank_out=boundary_out.rank(),
                          rank_in=boundary_in.rank())


def kernel_basis(mat: RationalMatrix) -> list:
    """Basis of the right kernel, as {col: Fraction} vectors."""
    ech = SparseEchelon()
    for _, row in mat.rows():
        ech.add(row)
    # back-substitute over Fractions through the echelon rows
    rows = []
    for piv in sorted(ech.rows):
        row = {c: Fraction(v) for c, v in ech.rows[piv].items()}
        rows.append((piv, row))
    free_cols = [c for c in range(mat.ncols) if c not in ech.rows]
    out = []
    for fc in free_cols:
        vec = {fc: Fraction(1)}
        for piv, row in reversed(rows):
            # solve for the pivot coordinate
            s = sum(row.get(c, Fraction(0)) * v for c, v in vec.items())
            if s:
                vec[piv] = -s / row[piv]
        out.append({c: v for c, v in vec.items() if v})
    return out


def in_column_space(mat: RationalMatrix, vec: dict) -> bool:
    """Whether {row: Fraction} vec lies in the span of the matrix columns."""
    ech = SparseEchelon()
    for _, col in mat.transpose().rows():
        ech.add(col)
    return ech.contains(vec)
