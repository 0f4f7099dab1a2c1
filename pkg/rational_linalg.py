#!/usr/bin/env python3
"""
Exact linear algebra over the rationals.

Matrices are dense, indexed by arbitrary hashable ids (vertex ids for rows,
edge ids for columns in the incidence case), and hold fractions.Fraction
entries. Elimination picks the first nonzero entry in canonical column order
as pivot, so results are deterministic. There is no floating point anywhere.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from errors import GraphSpecError, IndexMismatchError, VerificationError

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_TEXT = re.compile(r'^[+-]?\d+(/\d+)?$')


def to_rational(value) -> Fraction:
    """
    Convert an int, Fraction or "p/q" / integer string to a Fraction.

    Floats (and decimal strings) are rejected so that no rounded value can
    slip into an exact computation.
    """
    if isinstance(value, bool):
        raise GraphSpecError(f"❌ Expected a rational number, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GraphSpecError(
            f"❌ Floating point value {value!r} is not accepted.\n\n"
            "Write rationals as strings, e.g. \"3/2\" or \"1\"."
        )
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_TEXT.match(text):
            raise GraphSpecError(
                f"❌ Cannot read {value!r} as a rational number.\n\n"
                "Use an integer (\"2\", \"-1\") or a fraction (\"3/2\"). Decimals are not accepted."
            )
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise GraphSpecError(f"❌ Zero denominator in {value!r}")
    raise GraphSpecError(f"❌ Expected a rational number, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


class RatMatrix:
    """Dense rational matrix with named rows and columns."""

    def __init__(self, rows: Sequence[Hashable], cols: Sequence[Hashable], data=None):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise IndexMismatchError("❌ Matrix row and column ids must be distinct")
        self._row_pos = {r: i for i, r in enumerate(self.rows)}
        self._col_pos = {c: j for j, c in enumerate(self.cols)}

        self._data = [[ZERO] * len(self.cols) for _ in self.rows]
        if data is None:
            return
        if isinstance(data, Mapping):
            for (r, c), value in data.items():
                i, j = self._pos(r, c)
                self._data[i][j] = Fraction(value)
        else:
            data = [list(row) for row in data]
            if len(data) != len(self.rows) or any(len(row) != len(self.cols) for row in data):
                raise IndexMismatchError(
                    f"❌ Matrix data has the wrong shape for {len(self.rows)}x{len(self.cols)}"
                )
            self._data = [[Fraction(v) for v in row] for row in data]

    def _pos(self, r, c) -> Tuple[int, int]:
        try:
            return self._row_pos[r], self._col_pos[c]
        except KeyError:
            raise IndexMismatchError(f"❌ No entry ({r!r}, {c!r}) in this matrix")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, key) -> Fraction:
        i, j = self._pos(*key)
        return self._data[i][j]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self._data]

    def row(self, r) -> Vector:
        i = self._row_pos[r]
        return dict(zip(self.cols, self._data[i]))

    def column(self, c) -> Vector:
        j = self._col_pos[c]
        return {r: self._data[i][j] for i, r in enumerate(self.rows)}

    def transpose(self) -> 'RatMatrix':
        data = [[self._data[i][j] for i in range(len(self.rows))] for j in range(len(self.cols))]
        return RatMatrix(self.cols, self.rows, data)

    def restrict_columns(self, cols: Sequence[Hashable]) -> 'RatMatrix':
        keep = [self._col_pos[c] for c in cols]
        return RatMatrix(self.rows, cols, [[row[j] for j in keep] for row in self._data])

    def restrict_rows(self, rows: Sequence[Hashable]) -> 'RatMatrix':
        return RatMatrix(rows, self.cols, [list(self._data[self._row_pos[r]]) for r in rows])

    def apply(self, x: Mapping[Hashable, Fraction]) -> Vector:
        """Matrix-vector product; x must be indexed by exactly the columns."""
        if set(x) != set(self.cols):
            raise IndexMismatchError("❌ Vector is not indexed by the matrix columns")
        xs = [x[c] for c in self.cols]
        return {r: sum((a * v for a, v in zip(row, xs)), ZERO) for r, row in zip(self.rows, self._data)}

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    def __repr__(self):
        body = '; '.join(' '.join(format_rational(v) for v in row) for row in self._data)
        return f"RatMatrix({len(self.rows)}x{len(self.cols)}: [{body}])"


@dataclass(frozen=True)
class Infeasible:
    feasible: ClassVar[bool] = False


@dataclass(frozen=True)
class Solution:
    particular: Vector
    kernel_basis: Tuple[Vector, ...]
    feasible: ClassVar[bool] = True


LinSolveResult = Union[Infeasible, Solution]


def _row_echelon(m: List[List[Fraction]], n_cols: int, t: Optional[List[Fraction]] = None) -> List[int]:
    """
    Reduce m (and the right-hand side t) to row echelon form in place.

    Returns the free column positions. Pivot row r holds the r-th non-free
    column's pivot.
    """
    free_cols = []
    n_rows = len(m)
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            free_cols.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] -= m[piv_r][c] * frp
            if t is not None:
                t[r] -= t[piv_r] * frp
        piv_r += 1
    return free_cols


def _back_substitute(m: List[List[Fraction]], t: Optional[List[Fraction]],
                     free_cols: List[int], sol: List[Fraction]) -> Optional[List[Fraction]]:
    """Fill the pivot entries of sol; None when t is outside the column space."""
    n_cols = len(sol)
    rank = n_cols - len(free_cols)
    if t is not None:
        for r in range(rank, len(m)):
            if t[r] != 0:
                return None
    free = set(free_cols)
    piv_cols = [c for c in range(n_cols) if c not in free]
    for r in range(len(piv_cols) - 1, -1, -1):
        piv_c = piv_cols[r]
        s = ZERO if t is None else -t[r]
        for c in range(piv_c + 1, n_cols):
            s += m[r][c] * sol[c]
        sol[piv_c] = -s / m[r][piv_c]
    return sol


def rank_nullity(m: RatMatrix) -> Tuple[int, int]:
    """Return (rank, nullity) of m; rank + nullity equals the column count."""
    n_rows, n_cols = m.shape
    work = m.to_lists()
    free_cols = _row_echelon(work, n_cols) if n_rows else list(range(n_cols))
    nullity = len(free_cols)
    return n_cols - nullity, nullity


def _kernel_from_echelon(work, free_cols, cols) -> List[Vector]:
    basis = []
    for f in free_cols:
        sol = [ZERO] * len(cols)
        sol[f] = ONE
        _back_substitute(work, None, free_cols, sol)
        basis.append(dict(zip(cols, sol)))
    return basis


def nullspace(m: RatMatrix) -> List[Vector]:
    """A basis of the kernel, one vector per free column in canonical order."""
    n_rows, n_cols = m.shape
    work = m.to_lists()
    free_cols = _row_echelon(work, n_cols) if n_rows else list(range(n_cols))
    return _kernel_from_echelon(work, free_cols, m.cols)


def solve_affine(m: RatMatrix, rhs: Mapping[Hashable, Fraction]) -> LinSolveResult:
    """
    Solve m·x = rhs exactly.

    Returns Infeasible when rhs is not in the column space, otherwise the
    particular solution with all free variables at zero plus a kernel basis.
    """
    if set(rhs) != set(m.rows):
        raise IndexMismatchError(
            "❌ Right-hand side must be indexed by the matrix rows.\n"
            f"   rows: {list(m.rows)}\n"
            f"   rhs:  {list(rhs)}"
        )
    n_rows, n_cols = m.shape
    work = m.to_lists()
    t = [Fraction(rhs[r]) for r in m.rows]
    free_cols = _row_echelon(work, n_cols, t) if n_rows else list(range(n_cols))

    sol = _back_substitute(work, t, free_cols, [ZERO] * n_cols)
    if sol is None:
        return Infeasible()

    particular = dict(zip(m.cols, sol))
    if m.apply(particular) != {r: Fraction(rhs[r]) for r in m.rows}:
        raise VerificationError("❌ Particular solution failed substitution")
    kernel = _kernel_from_echelon(work, free_cols, m.cols)
    logger.debug("solve_affine: %dx%d, kernel dimension %d", n_rows, n_cols, len(kernel))
    return Solution(particular=particular, kernel_basis=tuple(kernel))


def vectors_rank(vectors: Sequence[Mapping[Hashable, Fraction]], index: Sequence[Hashable]) -> int:
    """Rank of a list of vectors sharing the index set `index`."""
    if not vectors:
        return 0
    m = RatMatrix(range(len(vectors)), index, [[Fraction(v[c]) for c in index] for v in vectors])
    return rank_nullity(m)[0]
