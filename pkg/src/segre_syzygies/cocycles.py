"""Explicit Koszul cocycles of ``K_{p,1}`` for ``p = ab+a-1`` in ``Lambda^{p-1} V (x) S^2 V``.

``V`` has basis ``v_P`` for ``P`` in ``{0..a} x {0..b}``.  Two families are
built:

* vertical ones from a ``(p+1)``-subset of ``{0..a} x {0..b-1}`` and
  ``0 <= j <= p-1``, with ``j`` of the surviving points moved up by ``(0,1)``;
* horizontal ones from ``{0..a-1} x {0..b}`` (which has exactly ``p+1``
  points) and ``0 <= j <= p-1``, with moves ``(1,0)``.

Each term is a wedge of ``p-1`` points, taken in the order of decreasing
index and rewritten in lexicographic order with the permutation sign,
tensored with a binomial quadric.  A cocycle is an element of
``Lambda^{p-1} V (x) I`` killed by the Koszul map to ``Lambda^{p-2} V (x) S^3 V``,
where ``I`` is the space of quadrics vanishing on the surface.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import InvalidParameters, InvalidPointSet
from .koszul import betti_number
from .linalg import DEFAULT_FIELD, Field, SparseExactMatrix, rank, row_echelon_mod_p
from .resolutions.free import CheckReport, sort_sign
from .rings import Bidegree, segre


def _first_row_p(a: int, b: int) -> int:
    if not 3 <= a <= b:
        raise InvalidParameters(f"cocycles are built for 3 <= a <= b, got a={a}, b={b}")
    return a * b + a - 1


def sym_pair(P, Q) -> tuple:
    return (P, Q) if P <= Q else (Q, P)


@dataclass
class CocycleExpression:
    a: int
    b: int
    p: int
    terms: dict
    provenance: tuple

    @property
    def bidegrees(self) -> set:
        out = set()
        for (w, (Q1, Q2)) in self.terms:
            out.add(Bidegree(sum(P[0] for P in w) + Q1[0] + Q2[0],
                             sum(P[1] for P in w) + Q1[1] + Q2[1]))
        return out

    @property
    def bidegree(self) -> Bidegree:
        bd = self.bidegrees
        if len(bd) != 1:
            raise ValueError(f"expression is not homogeneous: {sorted(bd)}")
        return next(iter(bd))

    def wedge_parts(self) -> set:
        return {w for w, _ in self.terms}

    def corrupted(self, index: int = 0) -> "CocycleExpression":
        """Copy with the coefficient of one term negated (a negative control)."""
        terms = dict(self.terms)
        key = sorted(terms)[index % len(terms)]
        terms[key] = -terms[key]
        return CocycleExpression(self.a, self.b, self.p, terms, self.provenance + ("corrupted",))


def _expression(points: list, shift: tuple, j: int, field: Field) -> dict:
    """The alternating sum shared by both families; ``points`` is ``P_1..P_{p+1}``."""
    n = len(points)
    p = n - 1
    terms: dict = defaultdict(int)
    for l1, l2 in itertools.combinations(range(1, n + 1), 2):
        rest = [l for l in range(n, 0, -1) if l not in (l1, l2)]
        sign_l = (-1) ** sum(rest)
        A, B = points[l1 - 1], points[l2 - 1]
        A1 = (A[0] + shift[0], A[1] + shift[1])
        B1 = (B[0] + shift[0], B[1] + shift[1])
        quad = ((sym_pair(A1, B), 1), (sym_pair(A, B1), -1))
        for moved in itertools.combinations(range(p - 1), j):
            moved = set(moved)
            pts = [(points[l - 1][0] + shift[0], points[l - 1][1] + shift[1]) if k in moved
                   else points[l - 1] for k, l in enumerate(rest)]
            s, w = sort_sign(pts)
            if s == 0:
                continue
            for q, c in quad:
                terms[(w, q)] += sign_l * s * c
    return {k: field(v) for k, v in terms.items() if field(v) != 0}


def cocycle_vertical(a: int, b: int, j: int, points, field: Field = DEFAULT_FIELD) -> CocycleExpression:
    p = _first_row_p(a, b)
    pts = sorted(tuple(P) for P in points)
    if len(pts) != p + 1 or len(set(pts)) != p + 1:
        raise InvalidPointSet(f"need {p + 1} distinct points, got {len(set(pts))}")
    if any(not (0 <= x <= a and 0 <= y <= b - 1) for x, y in pts):
        raise InvalidPointSet(f"points must lie in {{0..{a}}} x {{0..{b - 1}}}")
    if not 0 <= j <= p - 1:
        raise InvalidParameters(f"j must lie in 0..{p - 1}")
    return CocycleExpression(a, b, p, _expression(pts, (0, 1), j, field),
                             ("vertical", j, tuple(pts)))


def horizontal_points(a: int, b: int) -> list:
    """``P_{y+(b+1)x+1} = (x, y)`` on ``{0..a-1} x {0..b}``."""
    return [(x, y) for x in range(a) for y in range(b + 1)]


def cocycle_horizontal(a: int, b: int, j: int, field: Field = DEFAULT_FIELD) -> CocycleExpression:
    p = _first_row_p(a, b)
    if not 0 <= j <= p - 1:
        raise InvalidParameters(f"j must lie in 0..{p - 1}")
    return CocycleExpression(a, b, p, _expression(horizontal_points(a, b), (1, 0), j, field),
                             ("horizontal", j))


def vertical_family(a: int, b: int, field: Field = DEFAULT_FIELD):
    p = _first_row_p(a, b)
    W = [(x, y) for x in range(a + 1) for y in range(b)]
    for pts in itertools.combinations(W, p + 1):
        for j in range(p):
            yield cocycle_vertical(a, b, j, pts, field)


def horizontal_family(a: int, b: int, field: Field = DEFAULT_FIELD):
    p = _first_row_p(a, b)
    for j in range(p):
        yield cocycle_horizontal(a, b, j, field)


# ---------------------------------------------------------------------------
# the quadrics through the surface

class QuadricIdealBasis:
    """Echelon basis of ``I``, the kernel of ``S^2 V -> (R_{a,b})_2``.

    Spanned by the binomials ``v_P v_Q - v_P' v_Q'`` with ``P+Q = P'+Q'``.  Each
    class of equal sums is reduced separately since ``I`` is graded by it.
    """

    def __init__(self, a: int, b: int, field: Field = DEFAULT_FIELD):
        self.a, self.b, self.field = a, b, field
        pts = [(x, y) for x in range(a + 1) for y in range(b + 1)]
        classes = defaultdict(list)
        for P, Q in itertools.combinations_with_replacement(pts, 2):
            classes[(P[0] + Q[0], P[1] + Q[1])].append((P, Q))
        self.classes = dict(classes)
        self._echelon = {}
        for s, mons in self.classes.items():
            rows = []
            for m1, m2 in itertools.combinations(range(len(mons)), 2):
                r = [0] * len(mons)
                r[m1], r[m2] = 1, -1
                rows.append(r)
            self._echelon[s] = self._reduce_rows(rows, len(mons))

    def _reduce_rows(self, rows, k):
        if not rows:
            return [], []
        q = self.field.modulus
        if q is not None:
            R, piv = row_echelon_mod_p(np.array(rows, dtype=np.int64), q)
            return [[int(x) for x in R[i]] for i in range(len(piv))], piv
        from .linalg import row_echelon_rational
        R, piv = row_echelon_rational(rows)
        return [list(R[i]) for i in range(len(piv))], piv

    @property
    def dim(self) -> int:
        return sum(len(piv) for _, piv in self._echelon.values())

    @property
    def expected_dim(self) -> int:
        N = (self.a + 1) * (self.b + 1)
        return comb(N + 1, 2) - (2 * self.a + 1) * (2 * self.b + 1)

    def contains(self, quadric: dict) -> bool:
        """Membership of ``{(P, Q): coefficient}`` by reduction against the echelon rows."""
        F = self.field
        by_class = defaultdict(dict)
        for (P, Q), c in quadric.items():
            by_class[(P[0] + Q[0], P[1] + Q[1])][(P, Q)] = c
        for s, part in by_class.items():
            mons = self.classes[s]
            vec = [F(part.get(m, 0)) for m in mons]
            R, piv = self._echelon[s]
            for row, c in zip(R, piv):
                x = vec[c]
                if x != 0:
                    vec = [F(v - x * r) for v, r in zip(vec, row)]
            if any(v != 0 for v in vec):
                return False
        return True


def koszul_image(expr: CocycleExpression) -> dict:
    """Image in ``Lambda^{p-2} V (x) S^3 V`` under ``w (x) q -> sum (-1)^l (w minus w_l) (x) w_l q``."""
    out: dict = defaultdict(int)
    for (w, (Q1, Q2)), c in expr.terms.items():
        for l, P in enumerate(w):
            key = (w[:l] + w[l + 1:], tuple(sorted((P, Q1, Q2))))
            out[key] += c if l % 2 == 0 else -c
    return out


def verify_cocycle(expr: CocycleExpression, field: Field = DEFAULT_FIELD,
                   ideal: QuadricIdealBasis | None = None) -> bool:
    ideal = ideal or QuadricIdealBasis(expr.a, expr.b, field)
    per_wedge = defaultdict(dict)
    for (w, q), c in expr.terms.items():
        per_wedge[w][q] = c
    if not all(ideal.contains(q) for q in per_wedge.values()):
        return False
    return all(field(v) == 0 for v in koszul_image(expr).values())


# ---------------------------------------------------------------------------
# independence and the count

def family_rank(exprs: list, field: Field = DEFAULT_FIELD) -> tuple[int, dict]:
    """Rank of a homogeneous family, computed per bidegree; also returns the block ranks."""
    groups = defaultdict(list)
    for e in exprs:
        groups[e.bidegree].append(e)
    blocks = {}
    for u in sorted(groups):
        blocks[u] = _rank_of(groups[u], field)
    return sum(blocks.values()), blocks


def _rank_of(exprs, field) -> int:
    index: dict = {}
    rows, cols, vals = [], [], []
    for col, e in enumerate(exprs):
        for key, v in e.terms.items():
            r = index.setdefault(key, len(index))
            rows.append(r)
            cols.append(col)
            vals.append(v)
    labels = [None] * len(index)
    for k, r in index.items():
        labels[r] = k
    m = SparseExactMatrix.from_coo(labels, range(len(exprs)), rows, cols, vals, field,
                                   check_labels=False)
    return rank(m)


def independence_and_count(a: int, b: int, field: Field = DEFAULT_FIELD,
                           kappa: int | None = None) -> CheckReport:
    p = _first_row_p(a, b)
    rep = CheckReport(f"cocycle family a={a} b={b} p={p} over {field.name}")
    vert = list(vertical_family(a, b, field))
    hor = list(horizontal_family(a, b, field))
    f = (a + 1) * b
    rep.add("vertical count", len(vert) == p * comb(f, p + 1), f"{len(vert)}")
    rep.add("horizontal count", len(hor) == p, f"{len(hor)}")
    rep.add("every expression homogeneous",
            all(len(e.bidegrees) == 1 for e in vert + hor))
    hb = [e.bidegree for e in hor]
    rep.add("horizontal bidegrees pairwise distinct", len(set(hb)) == len(hb))
    want_h = [Bidegree(a * (a - 1) * (b + 1) // 2 + j + 1, a * b * (b + 1) // 2) for j in range(p)]
    rep.add("horizontal bidegrees", hb == want_h, f"{hb[0]}..{hb[-1]}")
    total, blocks = family_rank(vert + hor, field)
    expected = p * comb(f, p + 1) + p
    rep.add("family rank", total == expected, f"{total} (expected {expected})")
    glob = _rank_of(vert + hor, field)
    rep.add("blockwise rank equals global rank", glob == total, f"{glob}")
    if kappa is None:
        kappa = betti_number(segre(a, b), p, 1, field)
    rep.add("rank equals kappa_{p,1} from the Koszul engine", total == kappa, f"kappa = {kappa}")
    return rep


# ---------------------------------------------------------------------------
# terms that keep the two families apart

def full_columns(wedge, a: int, b: int) -> list[int]:
    pts = set(wedge)
    return [x for x in range(a + 1) if all((x, y) in pts for y in range(b + 1))]


def witness_wedge(a: int, b: int, j: int) -> tuple:
    """Wedge part of the separating term of the horizontal expression ``j``.

    ``P_k`` stays for ``k <= p-j-1``, ``P_{p-j}`` and ``P_{p-j+1}`` are the
    quadric, and ``P_k + (1,0)`` is used for ``k >= p-j+2``.
    """
    p = _first_row_p(a, b)
    pts = horizontal_points(a, b)
    out = [P for k, P in enumerate(pts, start=1) if k <= p - j - 1]
    out += [(P[0] + 1, P[1]) for k, P in enumerate(pts, start=1) if k >= p - j + 2]
    return tuple(sorted(out))


def claim_witness_check(a: int, b: int, j: int, field: Field = DEFAULT_FIELD,
                        vertical=None) -> bool:
    p = _first_row_p(a, b)
    if not 0 <= j <= p - 1:
        raise InvalidParameters(f"j must lie in 0..{p - 1}")
    w = witness_wedge(a, b, j)
    rect = tuple(sorted((x, y) for x in range(a + 1) for y in range(b + 1)
                        if y + (b + 1) * x < p - j - 1 or y + (b + 1) * x > p + b - j + 1))
    if w != rect:
        return False
    expr = cocycle_horizontal(a, b, j, field)
    if w not in expr.wedge_parts():
        return False
    cols = full_columns(w, a, b)
    if j > b and a not in cols:
        return False
    if j < p - b - 1 and 0 not in cols:
        return False
    if not cols:
        return False
    vertical = vertical if vertical is not None else vertical_family(a, b, field)
    return all(not full_columns(v, a, b) for e in vertical for v in e.wedge_parts())


def cocycle_report(a: int, b: int, field: Field = DEFAULT_FIELD,
                   kappa: int | None = None) -> CheckReport:
    """Every check on the cocycles at ``(a, b)``, used by the command line."""
    p = _first_row_p(a, b)
    rep = CheckReport(f"cocycles a={a} b={b} p={p} over {field.name}")
    ideal = QuadricIdealBasis(a, b, field)
    rep.add("dim I", ideal.dim == ideal.expected_dim, f"{ideal.dim}")
    vert = list(vertical_family(a, b, field))
    hor = list(horizontal_family(a, b, field))
    for e in vert + hor:
        rep.add(f"{e.provenance[0]} j={e.provenance[1]} is a cocycle",
                verify_cocycle(e, field, ideal), f"{len(e.terms)} terms, bidegree {tuple(e.bidegree)}")
    bad = hor[0].corrupted()
    rep.add("corrupted expression is rejected", not verify_cocycle(bad, field, ideal))
    for j in range(p):
        rep.add(f"separating term for horizontal j={j}",
                claim_witness_check(a, b, j, field, vertical=vert))
    rep.extend(independence_and_count(a, b, field, kappa))
    return rep
