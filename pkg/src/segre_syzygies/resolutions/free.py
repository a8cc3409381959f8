"""Maps of graded free modules with polynomial coefficients, and their degree slices.

A free module is a finite basis with one twist for every generator.  A map
stores, for each source generator, a sparse combination of target generators
with monomial coefficients in a polynomial ring whose variables are hashable
labels.  Monomials are sorted tuples of variables.  Integer coefficients are
kept until a slice is cut, so one map serves every field.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from ..linalg import DEFAULT_FIELD, Field, SparseExactMatrix, composition_is_zero, rank


def clamp(index: int, lo: int, hi: int):
    """``index`` if ``lo <= index <= hi``, else ``None``: the term is deleted."""
    return index if lo <= index <= hi else None


def wedge_insert(wedge: tuple, item):
    """``item ^ wedge`` rewritten in sorted order, as ``(sign, wedge)`` or ``None``."""
    if item in wedge:
        return None
    pos = 0
    while pos < len(wedge) and wedge[pos] < item:
        pos += 1
    return (-1 if pos % 2 else 1), wedge[:pos] + (item,) + wedge[pos:]


def sort_sign(items) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``items`` (0 if there is a repeat) and the sorted tuple."""
    items = list(items)
    if len(set(items)) != len(items):
        return 0, tuple(sorted(items))
    sign = 1
    arr = items[:]
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    return tuple(sorted(m1 + m2))


@lru_cache(maxsize=512)
def monomials(variables: tuple, degree: int) -> tuple:
    if degree < 0:
        return ()
    return tuple(itertools.combinations_with_replacement(variables, degree))


@dataclass(frozen=True)
class FreeModule:
    name: str
    basis: tuple
    twist: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def slice_basis(self, variables: tuple, degree: int) -> list:
        return [(g, m) for g in self.basis for m in monomials(variables, degree - self.twist)]


@dataclass
class PolyMap:
    """``src -> tgt``; ``entries[s]`` maps ``(target generator, monomial)`` to an integer."""

    src: FreeModule
    tgt: FreeModule
    variables: tuple
    entries: dict = dc_field(default_factory=dict)

    def add(self, s, t, mono: tuple, coeff: int):
        if coeff == 0:
            return
        row = self.entries.setdefault(s, {})
        key = (t, mono)
        v = row.get(key, 0) + coeff
        if v:
            row[key] = v
        else:
            del row[key]

    def terms(self):
        for s, row in self.entries.items():
            for (t, m), v in row.items():
                yield s, t, m, v

    def degree_errors(self) -> list:
        """Terms whose monomial degree does not match the twists."""
        want = self.src.twist - self.tgt.twist
        return [(s, t, m) for s, t, m, _ in self.terms() if len(m) != want]

    def constant_terms(self) -> list:
        """Entries surviving tensoring with the field (degree-zero coefficients)."""
        return [(s, t, v) for s, t, m, v in self.terms() if not m]

    def then(self, other: "PolyMap") -> "PolyMap":
        """The composite ``other o self``."""
        out = PolyMap(self.src, other.tgt, self.variables)
        for s, row in self.entries.items():
            acc: dict = defaultdict(int)
            for (t, m1), c1 in row.items():
                for (u, m2), c2 in other.entries.get(t, {}).items():
                    acc[(u, mono_mul(m1, m2))] += c1 * c2
            for (u, m), v in acc.items():
                out.add(s, u, m, v)
        return out

    def minus(self, other: "PolyMap") -> "PolyMap":
        out = PolyMap(self.src, self.tgt, self.variables)
        for s, t, m, v in self.terms():
            out.add(s, t, m, v)
        for s, t, m, v in other.terms():
            out.add(s, t, m, -v)
        return out

    def is_zero(self, field: Field | None = None) -> bool:
        if field is None or field.is_rational:
            return all(not row for row in self.entries.values())
        return all(field(v) == 0 for _, _, _, v in self.terms())

    def slice(self, degree: int, field: Field = DEFAULT_FIELD) -> SparseExactMatrix:
        """The degree-``degree`` part as a matrix over ``field``."""
        src = self.src.slice_basis(self.variables, degree)
        tgt = self.tgt.slice_basis(self.variables, degree)
        index = {lab: i for i, lab in enumerate(tgt)}
        rows, cols, vals = [], [], []
        for col, (s, m) in enumerate(src):
            for (t, m2), v in self.entries.get(s, {}).items():
                rows.append(index[(t, mono_mul(m, m2))])
                cols.append(col)
                vals.append(v)
        return SparseExactMatrix.from_coo(tgt, src, rows, cols, vals, field, check_labels=False)

    def slice_size(self, degree: int) -> tuple[int, int]:
        """``(rows, cols)`` of :meth:`slice` without building it."""
        def count(mod):
            return mod.rank * len(monomials(self.variables, degree - mod.twist))
        return count(self.tgt), count(self.src)


@dataclass
class CheckLine:
    label: str
    ok: bool
    detail: str = ""

    def format(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.label}{tail}"


@dataclass
class CheckReport:
    """Line-per-check verification report; passes iff every line passes."""

    title: str
    lines: list = dc_field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = "") -> bool:
        self.lines.append(CheckLine(label, bool(ok), detail))
        return bool(ok)

    def extend(self, other: "CheckReport"):
        self.lines.extend(other.lines)

    @property
    def passed(self) -> bool:
        return all(line.ok for line in self.lines)

    @property
    def failures(self) -> list:
        return [line for line in self.lines if not line.ok]

    def format(self) -> str:
        head = f"{self.title}: {'PASS' if self.passed else 'FAIL'} ({len(self.lines)} checks)"
        return "\n".join([head] + [line.format() for line in self.lines])


@dataclass
class ChainSlice:
    """One degree of an augmented complex ``... -> P_1 -> P_0 -> M``.

    ``spaces[k + 1]`` is the basis of position ``k`` (``k = -1`` is ``M``) and
    ``maps[k]`` is the matrix from position ``k`` to ``k - 1``.
    """

    degree: int
    spaces: list
    maps: list

    def dims(self) -> list[int]:
        return [len(s) for s in self.spaces]

    @property
    def length(self) -> int:
        return len(self.maps)


def check_chain_slice(cs: ChainSlice, report: CheckReport, prefix: str = "",
                      exact_at=None) -> list[int]:
    """Record ``d o d = 0`` and homology for every position of one slice.

    ``exact_at`` restricts which positions must have zero homology (all by
    default, the augmentation target included).  Returns the homology dims,
    position ``-1`` first.
    """
    ranks = [rank(m) for m in cs.maps] + [0]
    for k in range(1, cs.length):
        report.add(f"{prefix}deg {cs.degree}: d{k - 1} o d{k} = 0",
                   composition_is_zero(cs.maps[k], cs.maps[k - 1]))
    homology = []
    for pos in range(-1, cs.length):
        dim = len(cs.spaces[pos + 1])
        out = ranks[pos] if pos >= 0 else 0
        h = dim - out - ranks[pos + 1]
        homology.append(h)
        if exact_at is None or pos in exact_at:
            report.add(f"{prefix}deg {cs.degree}: homology at position {pos}", h == 0,
                       f"dim {dim}, rank out {out}, rank in {ranks[pos + 1]}, homology {h}")
    return homology
