"""The map whose kernel bounds ``kappa_{ab+a-1,1}`` from above, and an explicit kernel basis.

With ``W = {0..a} x {0..b-1}`` and ``W' = {0..a-1} x {0..b-1}`` the map is

    Lambda^b V_W (x) G_{a-1}  ->  Lambda^{b-1} V_W (x) V_{W'} (x) G_{a-2}
    v_{P_1} ^ ... ^ v_{P_b} (x) g_h  ->  sum_l (-1)^l (... hat P_l ...) (x) v_{P_l} (x) g_{h-1}
                                       - sum_l (-1)^l (... hat P_l ...) (x) v_{P_l - (1,0)} (x) g_h

with every term deleted whose point leaves ``W'`` or whose ``g`` index leaves
``1..a-2``.  Points are ordered lexicographically.
"""

from __future__ import annotations

import itertools

from ..errors import InvalidParameters
from ..linalg import (DEFAULT_FIELD, Field, SparseExactMatrix, kernel_basis, rank,
                      vectors_to_matrix)
from .free import CheckReport, clamp, sort_sign


def _check(a: int, b: int):
    if not 3 <= a <= b:
        raise InvalidParameters(f"the kernel map is defined for 3 <= a <= b, got a={a}, b={b}")


def grid(a: int, b: int) -> list:
    return [(x, y) for x in range(a + 1) for y in range(b)]


def kernel_map(a: int, b: int, field: Field = DEFAULT_FIELD) -> SparseExactMatrix:
    _check(a, b)
    W = grid(a, b)
    src = [(w, h) for w in itertools.combinations(W, b) for h in range(1, a)]
    tgt_index: dict = {}
    tgt: list = []
    rows, cols, vals = [], [], []

    def put(label, col, v):
        r = tgt_index.get(label)
        if r is None:
            r = tgt_index[label] = len(tgt)
            tgt.append(label)
        rows.append(r)
        cols.append(col)
        vals.append(v)

    for col, (w, h) in enumerate(src):
        for l, P in enumerate(w, start=1):
            rest = w[:l - 1] + w[l:]
            s = (-1) ** l
            if P[0] <= a - 1 and clamp(h - 1, 1, a - 2) is not None:
                put((rest, P, h - 1), col, s)
            Q = (P[0] - 1, P[1])
            if Q[0] >= 0 and clamp(h, 1, a - 2) is not None:
                put((rest, Q, h), col, -s)
    # the codomain also has labels that are never hit; they do not affect the kernel
    order = sorted(range(len(tgt)), key=lambda r: tgt[r])
    perm = {old: new for new, old in enumerate(order)}
    rows = [perm[r] for r in rows]
    tgt = [tgt[r] for r in order]
    return SparseExactMatrix.from_coo(tgt, src, rows, cols, vals, field, check_labels=False)


def kernel_basis_expressions(a: int, b: int, field: Field = DEFAULT_FIELD) -> list[dict]:
    """One vector per ``1 <= h <= a(b+1)-1``: the sum over one point per row ``y``
    with ``1 <= h - (sum of x) <= a-1``, each wedge taken in ``y`` order and
    rewritten in lexicographic order with the permutation sign."""
    _check(a, b)
    out = []
    for h in range(1, a * (b + 1)):
        vec: dict = {}
        for xs in itertools.product(range(a + 1), repeat=b):
            g = h - sum(xs)
            if clamp(g, 1, a - 1) is None:
                continue
            sign, w = sort_sign([(x, y) for y, x in enumerate(xs)])
            vec[(w, g)] = field(sign)
        if vec:
            out.append(vec)
    return out


def verify_kernel_lemma(a: int, b: int, field: Field = DEFAULT_FIELD) -> CheckReport:
    _check(a, b)
    rep = CheckReport(f"first-row kernel a={a} b={b} over {field.name}")
    K = kernel_map(a, b, field)
    ncols = len(K.col_labels)
    from math import comb
    rep.add("domain dimension", ncols == comb((a + 1) * b, b) * (a - 1), f"{ncols}")
    brute = kernel_basis(K)
    want = a * (b + 1) - 1
    rep.add("dim ker by elimination", len(brute) == want, f"{len(brute)} (expected {want})")
    expr = kernel_basis_expressions(a, b, field)
    rep.add("number of expressions", len(expr) == want, f"{len(expr)}")
    rep.add("every expression is annihilated",
            all(not any(K.apply(v).values()) for v in expr))
    labels = K.col_labels
    E = vectors_to_matrix(expr, labels, field)
    B = vectors_to_matrix(brute, labels, field)
    both = vectors_to_matrix(expr + brute, labels, field)
    re, rb, rboth = rank(E), rank(B), rank(both)
    rep.add("expressions independent", re == len(expr), f"rank {re}")
    rep.add("expressions span the kernel", re == rb == rboth,
            f"rank {re}, kernel rank {rb}, joint rank {rboth}")
    return rep
