"""Exact rational scalars and small dense rational matrices.

``Fraction`` from the standard library is the scalar type throughout: it is
arbitrary precision and always kept in lowest terms.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import ContractError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or ``"-p/q"``; rejects ``q = 0`` and decimals."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ContractError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ContractError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt(q) -> str:
    """Render an exact rational as ``p`` or ``p/q``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(xs: Iterable) -> tuple:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def scale(s, a: Sequence) -> tuple:
    return tuple(s * x for x in a)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)


def primitive(v: Sequence[int]) -> tuple:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def floor_q(q) -> int:
    """Mathematical floor (toward minus infinity) of an exact rational."""
    q = Fraction(q)
    return q.numerator // q.denominator


def ceil_q(q) -> int:
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


class RationalMatrix:
    """Immutable dense matrix of ``Fraction`` entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "__dict__")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise ContractError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ContractError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "RationalMatrix":
        return cls.from_rows(cols).T

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self.to_rows())
        return f"RationalMatrix[{body}]"

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ContractError("shape mismatch in matmul")
            cols = [other.column(j) for j in range(other.cols)]
            return RationalMatrix(self.rows, other.cols,
                                  [dot(self.row(i), c) for i in range(self.rows) for c in cols])
        v = tuple(other)
        if len(v) != self.cols:
            raise ContractError("shape mismatch in matrix-vector product")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def scaled(self, s) -> "RationalMatrix":
        s = Fraction(s)
        return RationalMatrix(self.rows, self.cols, [s * x for x in self.entries])

    def _echelon(self):
        """Gauss-Jordan elimination; returns (reduced rows, pivot columns, det sign*product)."""
        m = [list(r) for r in self.to_rows()]
        pivots = []
        det = Fraction(1)
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if p is None:
                det = Fraction(0)
                continue
            if p != r:
                m[r], m[p] = m[p], m[r]
                det = -det
            piv = m[r][c]
            det *= piv
            m[r] = [x / piv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots, det

    @cached_property
    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ContractError("determinant of a non-square matrix")
        if self.rows == 0:
            return Fraction(1)
        m, pivots, det = self._echelon()
        return det if len(pivots) == self.rows else Fraction(0)

    def inverse(self) -> "RationalMatrix":
        n = self.rows
        if n != self.cols:
            raise ContractError("inverse of a non-square matrix")
        aug = RationalMatrix.from_rows(
            [list(self.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
        m, pivots, _ = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise ContractError("matrix is singular")
        return RationalMatrix.from_rows([row[n:] for row in m])

    def nullspace(self) -> list:
        """Basis of the right kernel ``{x : M x = 0}`` as rational vectors."""
        m, pivots, _ = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            x = [Fraction(0)] * self.cols
            x[f] = Fraction(1)
            for i, p in enumerate(pivots):
                x[p] = -m[i][f]
            basis.append(tuple(x))
        return basis

    def solve(self, b: Sequence):
        """Return one solution of ``M x = b`` or ``None`` when inconsistent."""
        aug = RationalMatrix.from_rows([list(self.row(i)) + [b[i]] for i in range(self.rows)])
        m, pivots, _ = aug._echelon()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for i, p in enumerate(pivots):
            x[p] = m[i][self.cols]
        return tuple(x)


def rank_of(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return RationalMatrix.from_rows(vectors).rank
