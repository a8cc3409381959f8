"""Exact linear algebra over a prime field GF(q) or the rationals.

Every differential in the package ends up as a :class:`SparseExactMatrix`
between two labelled bases.  The functions here compute ranks, kernels and
homology dimensions of such matrices without any floating point.

Rank computation first peels off rows and columns holding a single nonzero
entry (each such pivot contributes exactly one to the rank), then runs dense
elimination on what is left.  Dense elimination uses FLINT when it is
importable and falls back to the numpy / ``Fraction`` routines below, which
are also the reference implementation used to cross-check FLINT in tests.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

try:  # pragma: no cover - exercised implicitly
    import flint
except ImportError:  # pragma: no cover
    flint = None

DEFAULT_PRIME = 32003

Label = Hashable
Vector = dict  # label -> nonzero field element


class CompositionNonzero(ValueError):
    """Raised when two consecutive maps do not compose to zero."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The coefficient field of a computation session.

    ``modulus`` is an odd prime below 2**31 for GF(q), or ``None`` for the
    rationals.
    """

    modulus: int | None = DEFAULT_PRIME

    def __post_init__(self):
        q = self.modulus
        if q is None:
            return
        if not isinstance(q, int) or q >= 2**31 or q == 2 or not _is_prime(q):
            raise ValueError(f"modulus must be an odd prime below 2**31, got {q!r}")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def name(self) -> str:
        return "rational" if self.modulus is None else f"gf{self.modulus}"

    def __call__(self, x) -> int | Fraction:
        """Canonical representative of ``x`` in this field."""
        if self.modulus is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return int(x) % self.modulus

    def inv(self, x):
        if self.modulus is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.modulus)

    def __str__(self) -> str:
        return self.name


def GF(q: int = DEFAULT_PRIME) -> Field:
    return Field(q)


QQ = Field(None)
DEFAULT_FIELD = Field(DEFAULT_PRIME)


def parse_field(text: str | int | Field | None) -> Field:
    """Parse ``"rational"``, ``"gf32003"``, ``"32003"`` or an int into a Field."""
    if text is None:
        return DEFAULT_FIELD
    if isinstance(text, Field):
        return text
    if isinstance(text, int):
        return Field(text)
    t = str(text).strip().lower()
    if t in ("rational", "rationals", "q", "qq"):
        return QQ
    if t.startswith("gf"):
        t = t[2:]
    return Field(int(t))


class SparseExactMatrix:
    """Immutable sparse matrix over a :class:`Field` with labelled rows/columns.

    Entries are kept in coordinate form with duplicates summed, values in
    canonical form and zeros dropped.
    """

    __slots__ = ("row_labels", "col_labels", "field", "rows", "cols", "vals",
                 "_row_index", "_col_index")

    def __init__(self, row_labels: Sequence[Label], col_labels: Sequence[Label],
                 entries: Mapping[tuple[Label, Label], Any] | None = None,
                 field: Field = DEFAULT_FIELD):
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.field = field
        self._row_index = None
        self._col_index = None
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        rows, cols, vals = [], [], []
        if entries:
            ri, ci = self.row_index, self.col_index
            for (r, c), v in entries.items():
                rows.append(ri[r])
                cols.append(ci[c])
                vals.append(v)
        self._set_coo(rows, cols, vals)

    @classmethod
    def from_coo(cls, row_labels, col_labels, rows, cols, vals,
                 field: Field = DEFAULT_FIELD, check_labels: bool = True):
        """Build from index triples; repeated positions are summed."""
        self = cls.__new__(cls)
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.field = field
        self._row_index = None
        self._col_index = None
        if check_labels:
            if len(set(self.row_labels)) != len(self.row_labels):
                raise ValueError("duplicate row labels")
            if len(set(self.col_labels)) != len(self.col_labels):
                raise ValueError("duplicate column labels")
        self._set_coo(rows, cols, vals)
        return self

    @classmethod
    def zero(cls, row_labels, col_labels, field: Field = DEFAULT_FIELD):
        return cls.from_coo(row_labels, col_labels, [], [], [], field)

    @classmethod
    def identity(cls, labels, field: Field = DEFAULT_FIELD):
        n = len(labels)
        return cls.from_coo(labels, labels, range(n), range(n), [1] * n, field)

    @classmethod
    def from_dense(cls, array, row_labels=None, col_labels=None,
                   field: Field = DEFAULT_FIELD):
        rows_list = [list(r) for r in array]
        n = len(rows_list)
        m = len(rows_list[0]) if n else 0
        if not n and col_labels is None and getattr(array, "ndim", 1) == 2:
            m = array.shape[1]
        rows, cols, vals = [], [], []
        for i, row in enumerate(rows_list):
            for j, v in enumerate(row):
                if v != 0:
                    rows.append(i)
                    cols.append(j)
                    vals.append(v)
        return cls.from_coo(row_labels if row_labels is not None else range(n),
                            col_labels if col_labels is not None else range(m),
                            rows, cols, vals, field)

    def _set_coo(self, rows, cols, vals):
        n, m = len(self.row_labels), len(self.col_labels)
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        if rows.size and (rows.min() < 0 or rows.max() >= n
                          or cols.min() < 0 or cols.max() >= m):
            raise IndexError("entry index out of range")
        q = self.field.modulus
        if q is not None:
            if isinstance(vals, np.ndarray) and vals.dtype.kind in "iu":
                v = np.mod(vals.astype(np.int64), q)
            else:
                vals = list(vals)
                v = np.fromiter((self.field(x) for x in vals), dtype=np.int64,
                                count=len(vals))
            width = max(m, 1)
            key = rows * width + cols
            if key.size:
                order = np.argsort(key, kind="stable")
                key, v = key[order], v[order]
                uniq, start = np.unique(key, return_index=True)
                summed = np.add.reduceat(v, start) % q
                keep = summed != 0
                key, v = uniq[keep], summed[keep]
            self.rows = key // width
            self.cols = key % width
            self.vals = v.astype(np.int64)
            return
        acc: dict[tuple[int, int], Any] = {}
        for r, c, x in zip(rows.tolist(), cols.tolist(), vals):
            x = self.field(x)
            acc[(r, c)] = acc.get((r, c), 0) + x
        items = sorted((k, self.field(x)) for k, x in acc.items() if self.field(x) != 0)
        self.rows = np.asarray([k[0] for k, _ in items], dtype=np.int64)
        self.cols = np.asarray([k[1] for k, _ in items], dtype=np.int64)
        if q is None:
            self.vals = np.asarray([x for _, x in items] + [None], dtype=object)[:-1]
        else:
            self.vals = np.asarray([x for _, x in items], dtype=np.int64)

    @property
    def row_index(self) -> dict:
        if self._row_index is None:
            self._row_index = {lab: i for i, lab in enumerate(self.row_labels)}
        return self._row_index

    @property
    def col_index(self) -> dict:
        if self._col_index is None:
            self._col_index = {lab: i for i, lab in enumerate(self.col_labels)}
        return self._col_index

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def nnz(self) -> int:
        return int(self.rows.size)

    def entries(self) -> dict:
        """Nonzero entries keyed by ``(row_label, col_label)``."""
        rl, cl = self.row_labels, self.col_labels
        return {(rl[r], cl[c]): (v if self.field.is_rational else int(v))
                for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.vals.tolist())}

    def is_zero(self) -> bool:
        return self.nnz == 0

    def transpose(self) -> "SparseExactMatrix":
        return SparseExactMatrix.from_coo(self.col_labels, self.row_labels, self.cols,
                                          self.rows, list(self.vals), self.field,
                                          check_labels=False)

    T = property(transpose)

    def to_dense(self):
        """Dense copy: int64 ndarray over GF(q), nested lists of Fractions over Q."""
        n, m = self.shape
        if self.field.is_rational:
            out = [[Fraction(0)] * m for _ in range(n)]
            for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.vals.tolist()):
                out[r][c] = Fraction(v)
            return out
        out = np.zeros((n, m), dtype=np.int64)
        out[self.rows, self.cols] = self.vals
        return out

    def _scipy(self):
        n, m = self.shape
        return sp.csr_matrix((self.vals.astype(np.int64), (self.rows, self.cols)), shape=(n, m))

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.col_labels != other.row_labels:
            raise ValueError("inner labels do not match")
        q = self.field.modulus
        if q is not None and q < 2**20 and len(self.col_labels) < 2**22:
            prod = (self._scipy() @ other._scipy()).tocoo()
            return SparseExactMatrix.from_coo(self.row_labels, other.col_labels, prod.row,
                                              prod.col, prod.data % q, self.field,
                                              check_labels=False)
        by_row: dict[int, list] = {}
        for r, c, v in zip(other.rows.tolist(), other.cols.tolist(), other.vals.tolist()):
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Any] = {}
        for r, k, v in zip(self.rows.tolist(), self.cols.tolist(), self.vals.tolist()):
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        keys = list(acc)
        return SparseExactMatrix.from_coo(self.row_labels, other.col_labels,
                                          [k[0] for k in keys], [k[1] for k in keys],
                                          [acc[k] for k in keys], self.field,
                                          check_labels=False)

    def apply(self, vector: Mapping[Label, Any]) -> Vector:
        """Image of a sparse labelled vector (column labels -> values)."""
        ci = self.col_index
        xs = {ci[k]: v for k, v in vector.items() if v != 0}
        out: dict[int, Any] = {}
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.vals.tolist()):
            x = xs.get(c)
            if x is not None:
                out[r] = out.get(r, 0) + v * x
        res = {}
        for r, x in out.items():
            x = self.field(x)
            if x != 0:
                res[self.row_labels[r]] = x
        return res

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.row_labels == other.row_labels
                and self.col_labels == other.col_labels and self.entries() == other.entries())

    __hash__ = None

    def __repr__(self):
        n, m = self.shape
        return f"SparseExactMatrix({n}x{m}, nnz={self.nnz}, field={self.field.name})"


# ---------------------------------------------------------------------------
# dense elimination (reference implementation)

def row_echelon_mod_p(A, p: int):
    """Reduced row echelon form of ``A`` over GF(p).

    Pivots are chosen column by column, taking the first nonzero row at or
    below the current pivot row.  Returns ``(R, pivot_columns)``.
    """
    R = np.mod(np.array(A, dtype=np.int64), p)
    if R.ndim != 2:
        R = R.reshape(0, 0)
    n, m = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def row_echelon_rational(A):
    """Reduced row echelon form over Q with ``Fraction`` arithmetic."""
    R = [[Fraction(x) for x in row] for row in A]
    n = len(R)
    m = len(R[0]) if n else 0
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [x - f * y for x, y in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
    return R, pivots


def _peel_singletons(n: int, m: int, rows: np.ndarray, cols: np.ndarray):
    """Remove rows/columns with a single nonzero, counting one rank each.

    Returns ``(rank_found, kept_entry_mask)``.
    """
    row_sets: dict[int, set] = {}
    col_sets: dict[int, set] = {}
    for r, c in zip(rows.tolist(), cols.tolist()):
        row_sets.setdefault(r, set()).add(c)
        col_sets.setdefault(c, set()).add(r)
    queue = deque([("c", c) for c, s in col_sets.items() if len(s) == 1]
                  + [("r", r) for r, s in row_sets.items() if len(s) == 1])
    found = 0

    def drop_row(r):
        for c in row_sets.pop(r):
            s = col_sets.get(c)
            if s is None:
                continue
            s.discard(r)
            if not s:
                del col_sets[c]
            elif len(s) == 1:
                queue.append(("c", c))

    def drop_col(c):
        for r in col_sets.pop(c):
            s = row_sets.get(r)
            if s is None:
                continue
            s.discard(c)
            if not s:
                del row_sets[r]
            elif len(s) == 1:
                queue.append(("r", r))

    while queue:
        kind, k = queue.popleft()
        if kind == "c":
            s = col_sets.get(k)
            if s is None or len(s) != 1:
                continue
            (r,) = s
            found += 1
            drop_row(r)
            col_sets.pop(k, None)
        else:
            s = row_sets.get(k)
            if s is None or len(s) != 1:
                continue
            (c,) = s
            found += 1
            drop_col(c)
            row_sets.pop(k, None)
    if not row_sets:
        return found, np.zeros(rows.shape, dtype=bool)
    alive_r = np.zeros(n, dtype=bool)
    alive_c = np.zeros(m, dtype=bool)
    alive_r[list(row_sets)] = True
    alive_c[list(col_sets)] = True
    return found, alive_r[rows] & alive_c[cols]


_BACKEND = "flint" if flint is not None else "numpy"


def set_backend(name: str) -> str:
    """Select the dense rank backend (``"flint"`` or ``"numpy"``); returns the old one."""
    global _BACKEND
    if name not in ("flint", "numpy"):
        raise ValueError(name)
    if name == "flint" and flint is None:
        raise RuntimeError("python-flint is not installed")
    old, _BACKEND = _BACKEND, name
    return old


def get_backend() -> str:
    return _BACKEND


def _rational_rows_to_int(dense):
    out = []
    for row in dense:
        den = 1
        for x in row:
            if x != 0:
                den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _dense_rank(rows, cols, vals, n, m, field: Field, backend: str) -> int:
    if n == 0 or m == 0 or len(rows) == 0:
        return 0
    # compact away empty rows and columns
    ur, rows = np.unique(rows, return_inverse=True)
    uc, cols = np.unique(cols, return_inverse=True)
    n, m = ur.size, uc.size
    q = field.modulus
    if q is not None:
        dense = np.zeros((n, m), dtype=np.int64)
        dense[rows, cols] = vals
        if backend == "flint":
            return flint.nmod_mat(n, m, dense.ravel().tolist(), q).rank()
        return len(row_echelon_mod_p(dense, q)[1])
    dense = [[0] * m for _ in range(n)]
    for r, c, v in zip(rows.tolist(), cols.tolist(), list(vals)):
        dense[r][c] = v
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in vals):
        dense = _rational_rows_to_int(dense)
    else:
        dense = [[int(x) for x in row] for row in dense]
    if backend == "flint":
        return flint.fmpz_mat(dense).rank()
    return len(row_echelon_rational(dense)[1])


def rank(m: SparseExactMatrix, backend: str | None = None, peel: bool = True) -> int:
    """Exact rank of ``m`` over its field."""
    backend = backend or _BACKEND
    n, k = m.shape
    if m.nnz == 0:
        return 0
    rows, cols, vals = m.rows, m.cols, m.vals
    found = 0
    if peel:
        found, keep = _peel_singletons(n, k, rows, cols)
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    return found + _dense_rank(rows, cols, vals, n, k, m.field, backend)


def _row_space_rref(m: SparseExactMatrix, chunk: int | None = None):
    """Reduced echelon form of the row space, fed a block of rows at a time.

    The reduced form is unique, so chunking changes memory use only: at most
    ``cols + chunk`` dense rows are held at once.
    """
    n, k = m.shape
    q = m.field.modulus
    chunk = chunk or max(k, 64)
    order = np.argsort(m.rows, kind="stable")
    rows, cols, vals = m.rows[order], m.cols[order], m.vals[order]
    bounds = np.searchsorted(rows, np.arange(0, n + chunk, chunk))
    if q is not None:
        R, piv = np.zeros((0, k), dtype=np.int64), []
    else:
        R, piv = [], []
    for t in range(len(bounds) - 1):
        lo, hi = bounds[t], bounds[t + 1]
        if lo == hi:
            continue
        r0 = t * chunk
        height = min(chunk, n - r0)
        if q is not None:
            block = np.zeros((height, k), dtype=np.int64)
            block[rows[lo:hi] - r0, cols[lo:hi]] = vals[lo:hi]
            R, piv = row_echelon_mod_p(np.vstack([R, block]), q)
            R = R[:len(piv)]
        else:
            block = [[Fraction(0)] * k for _ in range(height)]
            for r, c, v in zip(rows[lo:hi].tolist(), cols[lo:hi].tolist(), vals[lo:hi].tolist()):
                block[r - r0][c] = Fraction(v)
            R, piv = row_echelon_rational(R + block)
            R = R[:len(piv)]
    return R, piv


def kernel_basis(m: SparseExactMatrix) -> list[Vector]:
    """Basis of the right kernel as sparse vectors keyed by column label.

    One vector per non-pivot column of the reduced echelon form, with a 1 in
    that column, so the result is reproducible.
    """
    n, k = m.shape
    if k == 0:
        return []
    R, piv = _row_space_rref(m)
    if m.field.is_rational:
        get = lambda i, j: R[i][j]
    else:
        get = lambda i, j: int(R[i, j])
    pivset = set(piv)
    out = []
    for f in range(k):
        if f in pivset:
            continue
        vec = {m.col_labels[f]: m.field(1)}
        for i, c in enumerate(piv):
            x = get(i, f)
            if x != 0:
                vec[m.col_labels[c]] = m.field(-x)
        out.append(vec)
    return out


def vectors_to_matrix(vectors: Iterable[Mapping[Label, Any]], labels: Sequence[Label],
                      field: Field = DEFAULT_FIELD) -> SparseExactMatrix:
    """Stack sparse vectors as the columns of a matrix with the given row labels."""
    index = {lab: i for i, lab in enumerate(labels)}
    rows, cols, vals = [], [], []
    vectors = list(vectors)
    for j, v in enumerate(vectors):
        for lab, x in v.items():
            rows.append(index[lab])
            cols.append(j)
            vals.append(x)
    return SparseExactMatrix.from_coo(labels, range(len(vectors)), rows, cols, vals, field,
                                      check_labels=False)


def composition_is_zero(d_in: SparseExactMatrix, d_out: SparseExactMatrix) -> bool:
    return (d_out @ d_in).is_zero()


def _align(d_in: SparseExactMatrix, d_out: SparseExactMatrix) -> SparseExactMatrix:
    """Reorder the rows of ``d_in`` to match the column labels of ``d_out``."""
    if d_in.row_labels == d_out.col_labels:
        return d_in
    if set(d_in.row_labels) != set(d_out.col_labels):
        raise ValueError("middle spaces of d_in and d_out differ")
    idx = d_out.col_index
    perm = np.asarray([idx[lab] for lab in d_in.row_labels], dtype=np.int64)
    return SparseExactMatrix.from_coo(d_out.col_labels, d_in.col_labels, perm[d_in.rows],
                                      d_in.cols, list(d_in.vals), d_in.field,
                                      check_labels=False)


def homology_dim(d_in: SparseExactMatrix, d_out: SparseExactMatrix,
                 check: bool = True, backend: str | None = None) -> int:
    """Dimension of ``ker(d_out) / im(d_in)``.

    ``d_in`` maps into the domain of ``d_out``; the middle bases are matched
    by label.  Raises :class:`CompositionNonzero` when ``d_out @ d_in != 0``.
    """
    d_in = _align(d_in, d_out)
    if check and not composition_is_zero(d_in, d_out):
        raise CompositionNonzero("d_out composed with d_in is nonzero")
    middle = len(d_out.col_labels)
    return middle - rank(d_out, backend) - rank(d_in, backend)
