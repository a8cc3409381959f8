"""Resolution of ``R_{a,b}`` by modules over the scroll ring ``R_bbar``.

Position ``p - 1`` (``2 <= p <= a``) is ``M_{bbar,pb} (x) Lambda^p G_a (x) G_{p-1} (-p)``,
position ``0`` is ``R_bbar`` and the augmentation is the projection onto
``R_{a,b}``.  ``bbar`` is ``a+1`` copies of ``b`` with scroll labels ``0..a``;
``G_i`` has basis ``g_1..g_i``.  These modules are not free over the polynomial
ring, so slices are built from the module bases directly.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..errors import InvalidParameters
from ..linalg import DEFAULT_FIELD, Field, SparseExactMatrix
from ..rings import ScrollModule, _check_ab
from .free import ChainSlice, CheckReport, check_chain_slice, clamp


def _bump(counts: tuple, label: int) -> tuple:
    return counts[:label] + (counts[label] + 1,) + counts[label + 1:]


@lru_cache(maxsize=None)
def _module(a: int, b: int, shift: int) -> ScrollModule:
    return ScrollModule((b,) * (a + 1), shift, first_index=0)


def position_basis(a: int, b: int, k: int, degree: int) -> list:
    """Basis of position ``k`` in the given degree (``k = -1`` is ``R_{a,b}``)."""
    if k == -1:
        return [(i, j) for i in range(degree * a + 1) for j in range(degree * b + 1)]
    if k == 0:
        return list(_module(a, b, 0).basis(degree))
    p = k + 1
    keys = _module(a, b, p * b).basis(degree - p) if degree >= p else ()
    return [(key, J, h) for key in keys
            for J in itertools.combinations(range(1, a + 1), p) for h in range(1, p)]


def _matrix(src, tgt, images, field) -> SparseExactMatrix:
    index = {lab: i for i, lab in enumerate(tgt)}
    rows, cols, vals = [], [], []
    for col, s in enumerate(src):
        for t, v in images(s):
            rows.append(index[t])
            cols.append(col)
            vals.append(v)
    return SparseExactMatrix.from_coo(tgt, src, rows, cols, vals, field, check_labels=False)


def relative_map(a: int, b: int, k: int, degree: int, field: Field = DEFAULT_FIELD):
    """Slice of the map from position ``k`` to ``k - 1``."""
    src = position_basis(a, b, k, degree)
    tgt = position_basis(a, b, k - 1, degree)
    if k == 0:
        def images(key):
            counts, j = key
            yield (sum(lab * n for lab, n in enumerate(counts)), j), 1
    elif k == 1:
        def images(s):
            (counts, j), (j1, j2), _ = s
            yield (_bump(_bump(counts, j1 - 1), j2), j), 1
            yield (_bump(_bump(counts, j1), j2 - 1), j), -1
    else:
        p = k + 1

        def images(s):
            (counts, j), J, h = s
            for q, jq in enumerate(J, start=1):
                rest = J[:q - 1] + J[q:]
                sign = (-1) ** q
                if clamp(h - 1, 1, p - 2) is not None:
                    yield ((_bump(counts, jq - 1), j), rest, h - 1), sign
                if clamp(h, 1, p - 2) is not None:
                    yield ((_bump(counts, jq), j), rest, h), -sign
    return _matrix(src, tgt, images, field)


def relative_resolution_degree_piece(a: int, b: int, deg: int,
                                     field: Field = DEFAULT_FIELD) -> ChainSlice:
    _check_ab(a, b)
    if deg < 0:
        raise InvalidParameters("degree must be non-negative")
    spaces = [position_basis(a, b, k, deg) for k in range(-1, a)]
    maps = [relative_map(a, b, k, deg, field) for k in range(0, a)]
    return ChainSlice(deg, spaces, maps)


def verify_relative_exactness(a: int, b: int, max_deg: int,
                              field: Field = DEFAULT_FIELD) -> CheckReport:
    rep = CheckReport(f"relative resolution a={a} b={b} max_deg={max_deg} over {field.name}")
    for deg in range(max_deg + 1):
        check_chain_slice(relative_resolution_degree_piece(a, b, deg, field), rep)
    return rep
