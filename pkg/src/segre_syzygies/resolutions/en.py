"""Eagon-Northcott resolution of the scroll modules ``M_{e,c}``.

Position ``k`` of the resolution is

* ``Lambda^k F (x) V_{c-k}`` with twist ``k`` for ``k <= c`` (second row),
* ``Lambda^{k+1} F (x) V_{k-c-1}`` with twist ``k+1`` for ``k > c`` (first row),

where ``F`` has basis ``f_{i,j}`` (``1 <= j <= e_i``) and ``V_n`` has basis
``B_0..B_n``.  The polynomial ring has one variable ``(i, j)`` per degree-one
element ``b_{i,j}`` of the scroll ring.  For ``f_{i,j}`` write
``x = b_{i,j-1}`` and ``y = b_{i,j}``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..errors import InvalidParameters
from ..linalg import DEFAULT_FIELD, Field, SparseExactMatrix
from ..rings import ScrollModule, scroll_invariants
from .free import (ChainSlice, CheckReport, FreeModule, PolyMap, check_chain_slice, clamp,
                   monomials)


class ENResolution:
    """The resolution of ``M_{e,c}`` as generator-level maps."""

    def __init__(self, e, c: int, first_index: int = 1):
        self.inv = scroll_invariants(e, first_index)
        if c < 0:
            raise InvalidParameters("c must be non-negative")
        self.c = int(c)
        self.module = ScrollModule(self.inv.e, self.c, first_index)
        self.f_basis = tuple((i, j) for i in self.inv.labels for j in range(1, self.inv.e_of(i) + 1))
        self.variables = tuple(sorted(self.module.generators))

    @property
    def f(self) -> int:
        return len(self.f_basis)

    def shape(self, k: int):
        """``(wedge degree, n, twist)`` of position ``k``, i.e. ``Lambda^m F (x) V_n (-twist)``."""
        if k <= self.c:
            return k, self.c - k, k
        return k + 1, k - self.c - 1, k + 1

    @property
    def length(self) -> int:
        """Number of nonzero positions."""
        k = 0
        while True:
            m, n, _ = self.shape(k)
            if m > self.f or n < 0:
                return k
            k += 1

    @lru_cache(maxsize=None)
    def position(self, k: int) -> FreeModule:
        m, n, tw = self.shape(k)
        basis = tuple((w, p) for w in itertools.combinations(self.f_basis, m)
                      for p in range(n + 1)) if 0 <= m <= self.f and n >= 0 else ()
        return FreeModule(f"EN[{k}]", basis, tw)

    def rank_formula(self, k: int) -> int:
        from math import comb
        m, n, _ = self.shape(k)
        return comb(self.f, m) * (n + 1) if n >= 0 and 0 <= m <= self.f else 0

    @lru_cache(maxsize=None)
    def differential(self, k: int) -> PolyMap:
        """Map from position ``k`` to ``k - 1`` (``k >= 1``)."""
        if k < 1:
            raise InvalidParameters("differentials start at position 1")
        src, tgt = self.position(k), self.position(k - 1)
        d = PolyMap(src, tgt, self.variables)
        m, n, _ = self.shape(k)
        if k <= self.c:
            # second row: V_n -> V_{n+1}
            for w, p in src.basis:
                for a, (i, j) in enumerate(w, start=1):
                    rest = w[:a - 1] + w[a:]
                    s = (-1) ** a
                    d.add((w, p), (rest, p + 1), ((i, j - 1),), s)
                    d.add((w, p), (rest, p), ((i, j),), -s)
        elif k == self.c + 1:
            for w, _ in src.basis:
                for a1, a2 in itertools.combinations(range(len(w)), 2):
                    (i1, j1), (i2, j2) = w[a1], w[a2]
                    rest = tuple(x for t, x in enumerate(w) if t not in (a1, a2))
                    s = (-1) ** (a1 + a2)
                    d.add((w, 0), (rest, 0), tuple(sorted([(i1, j1), (i2, j2 - 1)])), s)
                    d.add((w, 0), (rest, 0), tuple(sorted([(i1, j1 - 1), (i2, j2)])), -s)
        else:
            # first row: V_n -> V_{n-1}, out-of-range B indices deleted
            for w, p in src.basis:
                for a, (i, j) in enumerate(w, start=1):
                    rest = w[:a - 1] + w[a:]
                    s = (-1) ** a
                    if clamp(p - 1, 0, n - 1) is not None:
                        d.add((w, p), (rest, p - 1), ((i, j - 1),), s)
                    if clamp(p, 0, n - 1) is not None:
                        d.add((w, p), (rest, p), ((i, j),), -s)
        return d

    def augmentation_slice(self, degree: int, field: Field = DEFAULT_FIELD) -> SparseExactMatrix:
        """``(V_c (x) S)_degree -> (M_c)_degree``, ``B_p -> b_{c,p}``."""
        src = self.position(0).slice_basis(self.variables, degree)
        tgt = list(self.module.basis(degree))
        index = {lab: i for i, lab in enumerate(tgt)}
        zero = (0,) * self.inv.ell
        rows, cols, vals = [], [], []
        for col, ((_, p), mono) in enumerate(src):
            key = (zero, p)
            for g in mono:
                key = self.module.multiply(g, key)
            rows.append(index[key])
            cols.append(col)
            vals.append(1)
        return SparseExactMatrix.from_coo(tgt, src, rows, cols, vals, field, check_labels=False)

    def degree_piece(self, degree: int, field: Field = DEFAULT_FIELD) -> ChainSlice:
        spaces = [list(self.module.basis(degree))]
        maps = [self.augmentation_slice(degree, field)]
        spaces.append(self.position(0).slice_basis(self.variables, degree))
        for k in range(1, self.length):
            if self.position(k).twist > degree:
                break
            maps.append(self.differential(k).slice(degree, field))
            spaces.append(self.position(k).slice_basis(self.variables, degree))
        return ChainSlice(degree, spaces, maps)


def en_resolution_degree_piece(e, c: int, deg: int, field: Field = DEFAULT_FIELD,
                               first_index: int = 1) -> ChainSlice:
    if deg < 0:
        raise InvalidParameters("degree must be non-negative")
    return ENResolution(e, c, first_index).degree_piece(deg, field)


def verify_en_exactness(e, c: int, max_deg: int, field: Field = DEFAULT_FIELD,
                        first_index: int = 1) -> CheckReport:
    """Exactness, augmentation, minimality and rank bookkeeping up to ``max_deg``."""
    en = ENResolution(e, c, first_index)
    rep = CheckReport(f"EN e={list(en.inv.e)} c={c} max_deg={max_deg} over {field.name}")
    for k in range(en.length):
        rep.add(f"rank of position {k}", en.position(k).rank == en.rank_formula(k),
                f"{en.position(k).rank}")
    for k in range(1, en.length):
        d = en.differential(k)
        rep.add(f"d{k} homogeneous", not d.degree_errors())
        rep.add(f"d{k} minimal (zero after tensoring with the field)", not d.constant_terms())
        if k >= 2:
            rep.add(f"d{k - 1} o d{k} = 0 over the polynomial ring",
                    d.then(en.differential(k - 1)).is_zero(field))
    for deg in range(max_deg + 1):
        check_chain_slice(en.degree_piece(deg, field), rep)
    return rep


__all__ = ["ENResolution", "en_resolution_degree_piece", "verify_en_exactness", "monomials"]
