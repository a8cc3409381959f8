"""Koszul cohomology of monomial algebras, block by block in bidegree.

For a graded module ``M`` over the polynomial ring on the degree-one
generators ``V`` the strand at ``(p, q)`` is

    Lambda^{p+1} V (x) M_{q-1}  ->  Lambda^p V (x) M_q  ->  Lambda^{p-1} V (x) M_{q+1}

with ``d(v_{g_1} ^ ... ^ v_{g_k} (x) m) = sum_l (-1)^(l+1) (... hat g_l ...) (x) g_l m``.
Its middle homology is ``K_{p,q}(M)`` and ``kappa_{p,q} = dim K_{p,q}``.  The
differential preserves the total bidegree, so each strand splits into
independent blocks.

Two exact routes are offered.  ``direct`` takes the homology of the strand
itself.  ``dual`` uses that the algebras here are Cohen-Macaulay semigroup
rings whose canonical module is spanned by interior lattice points, which
gives ``K_{p,q}(R)_u ~ K_{c-p, d-q}(omega)_{s-u}`` with ``c`` the codimension,
``d`` the Krull dimension and ``s`` the sum of all generator bidegrees.  The
two strands have very different sizes.  ``euler`` recovers one strand from
the weightwise Euler characteristic of the degree ``p+q`` complex and the
other strands of that degree.  ``auto`` picks the cheapest route by an
elimination cost estimate.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .cache import BlockCache
from .errors import InvalidParameters, OutOfTheoremRange
from .linalg import (DEFAULT_FIELD, CompositionNonzero, Field, SparseExactMatrix,
                     composition_is_zero, rank)
from .rings import Bidegree, MonomialAlgebra

METHODS = ("auto", "direct", "dual", "euler")


@dataclass(frozen=True)
class KoszulBlock:
    """The two differentials around position ``p`` restricted to one bidegree."""

    bidegree: Bidegree
    d_in: SparseExactMatrix
    d_out: SparseExactMatrix

    @property
    def dims(self) -> tuple[int, int, int]:
        return (len(self.d_in.col_labels), len(self.d_out.col_labels),
                len(self.d_out.row_labels))


@dataclass(frozen=True)
class BlockResult:
    bidegree: Bidegree
    dims: tuple
    rank_in: int
    rank_out: int

    @property
    def homology(self) -> int:
        return self.dims[1] - self.rank_in - self.rank_out


@dataclass
class BidegreeTable:
    """Bidegree refinement of ``K_{p,q}``: nonzero block dimensions keyed by bidegree."""

    p: int
    q: int
    entries: dict = dc_field(default_factory=dict)
    algebra: dict = dc_field(default_factory=dict)
    field: str = DEFAULT_FIELD.name

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def blocks(self) -> list[dict]:
        return [{"bidegree": [u[0], u[1]], "dim": d} for u, d in sorted(self.entries.items())]


@dataclass
class BettiTable:
    algebra: dict
    entries: dict
    field: str = DEFAULT_FIELD.name

    def __getitem__(self, pq):
        return self.entries.get(pq, 0)

    @property
    def max_p(self) -> int:
        return max((p for p, _ in self.entries), default=0)

    def row(self, q: int) -> list[int]:
        return [self.entries.get((p, q), 0) for p in range(self.max_p + 1)]

    def shape_violations(self) -> list[str]:
        """Entries contradicting the known shape of a Segre table of P1 x P1."""
        alg = self.algebra
        if alg.get("algebra") != "segre":
            return []
        a, b = alg["a"], alg["b"]
        if a > b:
            a, b = b, a
        top = (a + 1) * (b + 1) - 3
        bad = []
        for (p, q), k in sorted(self.entries.items()):
            if q == 0:
                want_zero = p != 0
            elif q == 1:
                want_zero = p < 1 or p >= a * b + b or p > top
            elif q == 2:
                want_zero = p <= 2 * a + 2 * b - 3 or p > top
            else:
                want_zero = True
            if want_zero and k != 0:
                bad.append(f"kappa[{p},{q}]={k} should vanish")
            if not want_zero and k == 0:
                bad.append(f"kappa[{p},{q}] should be nonzero")
        if (0, 0) in self.entries and self.entries[(0, 0)] != 1:
            bad.append("kappa[0,0] != 1")
        return bad

    def format(self) -> str:
        width = max([len(str(v)) for v in self.entries.values()] + [1])
        qs = sorted({q for _, q in self.entries})
        head = "q\\p " + " ".join(str(p).rjust(width) for p in range(self.max_p + 1))
        lines = [head]
        for q in qs:
            lines.append(f"{q:<3} " + " ".join(str(v).rjust(width) for v in self.row(q)))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# bases of Lambda^k V (x) M_n split by bidegree

@lru_cache(maxsize=256)
def _wedges_by_bidegree(alg: MonomialAlgebra, k: int) -> dict:
    gb = alg.generator_bidegrees
    n = len(gb)
    out: dict = defaultdict(list)
    if k < 0 or k > n:
        return {}
    u1 = [g[0] for g in gb]
    u2 = [g[1] for g in gb]
    for w in itertools.combinations(range(n), k):
        out[(sum(u1[i] for i in w), sum(u2[i] for i in w))].append(w)
    return dict(out)


@lru_cache(maxsize=256)
def _module_by_bidegree(alg: MonomialAlgebra, n: int) -> dict:
    out: dict = defaultdict(list)
    for key in alg.basis(n):
        out[tuple(alg.key_bidegree(key))].append(key)
    return dict(out)


def _space(alg: MonomialAlgebra, k: int, n: int, u) -> list:
    """Basis of ``(Lambda^k V (x) M_n)_u`` as ``(wedge, key)`` pairs, sorted."""
    if k < 0 or n < 0:
        return []
    wedges = _wedges_by_bidegree(alg, k)
    mods = _module_by_bidegree(alg, n)
    out = []
    for w in sorted(wedges):
        keys = mods.get((u[0] - w[0], u[1] - w[1]))
        if keys:
            out.extend((ws, m) for ws in wedges[w] for m in keys)
    return out


@lru_cache(maxsize=1024)
def _histogram(alg: MonomialAlgebra, k: int, n: int) -> dict:
    if k < 0 or n < 0:
        return {}
    wedges = _wedges_by_bidegree(alg, k)
    mods = _module_by_bidegree(alg, n)
    out: dict = defaultdict(int)
    for w, ws in wedges.items():
        for m, ks in mods.items():
            out[(w[0] + m[0], w[1] + m[1])] += len(ws) * len(ks)
    return dict(out)


def _koszul_matrix(alg: MonomialAlgebra, source: list, target: list,
                   field: Field) -> SparseExactMatrix:
    gens = alg.generators
    index = {lab: i for i, lab in enumerate(target)}
    rows, cols, vals = [], [], []
    mul = alg.multiply
    for col, (w, m) in enumerate(source):
        for l, g in enumerate(w):
            r = index[(w[:l] + w[l + 1:], mul(gens[g], m))]
            rows.append(r)
            cols.append(col)
            vals.append(1 if l % 2 == 0 else -1)
    return SparseExactMatrix.from_coo(target, source, rows, cols,
                                      np.asarray(vals, dtype=np.int64), field,
                                      check_labels=False)


def block_bidegrees(alg: MonomialAlgebra, p: int, q: int) -> list[Bidegree]:
    """Bidegrees where the middle space ``Lambda^p V (x) M_q`` is nonzero."""
    return [Bidegree(*u) for u in sorted(_histogram(alg, p, q))]


def koszul_block(alg: MonomialAlgebra, p: int, q: int, u,
                 field: Field = DEFAULT_FIELD, check: bool = True) -> KoszulBlock:
    u = Bidegree(*u)
    prev = _space(alg, p + 1, q - 1, u)
    mid = _space(alg, p, q, u)
    nxt = _space(alg, p - 1, q + 1, u)
    d_in = _koszul_matrix(alg, prev, mid, field)
    d_out = _koszul_matrix(alg, mid, nxt, field)
    if check and d_in.nnz and d_out.nnz and not composition_is_zero(d_in, d_out):
        raise CompositionNonzero(f"d o d != 0 in block {u} of strand ({p},{q})")
    return KoszulBlock(u, d_in, d_out)


def koszul_strand(alg: MonomialAlgebra, p: int, q: int,
                  field: Field = DEFAULT_FIELD) -> list[KoszulBlock]:
    """All nonempty bidegree blocks of the strand at ``(p, q)``, sorted by bidegree."""
    if p < 0 or q < 0:
        raise InvalidParameters("p and q must be non-negative")
    return [koszul_block(alg, p, q, u, field) for u in block_bidegrees(alg, p, q)]


def euler_characteristic(alg: MonomialAlgebra, degree: int, u) -> int:
    """``sum_p (-1)^p dim (Lambda^p V (x) M_{degree-p})_u``."""
    total = 0
    for p in range(degree + 1):
        total += (-1) ** p * _histogram(alg, p, degree - p).get(tuple(u), 0)
    return total


# ---------------------------------------------------------------------------
# the engine

def _sum_bidegrees(alg: MonomialAlgebra) -> Bidegree:
    gb = alg.generator_bidegrees
    return Bidegree(sum(g[0] for g in gb), sum(g[1] for g in gb))


def dual_position(alg: MonomialAlgebra, p: int, q: int):
    """``(omega, p', q', s)`` with ``K_{p,q}(alg)_u`` dual to ``K_{p',q'}(omega)_{s-u}``."""
    omega = alg.canonical_module()
    if omega is None:
        return None
    codim = alg.num_generators - alg.krull_dim
    return omega, codim - p, alg.krull_dim - q, _sum_bidegrees(alg)


@lru_cache(maxsize=4096)
def strand_cost(alg: MonomialAlgebra, p: int, q: int) -> int:
    """Rough elimination cost of a strand, used to choose a route."""
    if p < 0 or q < 0:
        return 0
    hx, hy, hz = _histogram(alg, p + 1, q - 1), _histogram(alg, p, q), _histogram(alg, p - 1, q + 1)
    cost = 0
    for u, y in hy.items():
        x, z = hx.get(u, 0), hz.get(u, 0)
        cost += y * min(y, z) * max(y, z) + x * min(x, y) * max(x, y)
    return cost


class KoszulEngine:
    """Computes block homology with an optional disk cache and a thread pool.

    Aggregation always folds the blocks in bidegree order, so results do not
    depend on ``threads`` or on the cache state.
    """

    def __init__(self, field: Field = DEFAULT_FIELD, threads: int = 1,
                 cache: BlockCache | None = None, check: bool = True):
        if threads < 1:
            raise InvalidParameters("threads must be >= 1")
        self.field = field
        self.threads = threads
        self.cache = cache
        self.check = check
        self._memo: dict = {}

    def _record_query(self, alg, p, q, u) -> dict:
        rec = dict(alg.descriptor())
        rec.update({"p": p, "q": q, "bidegree": [int(u[0]), int(u[1])],
                    "field": self.field.name})
        return rec

    def block_result(self, alg: MonomialAlgebra, p: int, q: int, u) -> BlockResult:
        u = Bidegree(*u)
        query = None
        if self.cache is not None:
            query = self._record_query(alg, p, q, u)
            hit = self.cache.get(query)
            if hit is not None:
                return BlockResult(u, tuple(hit["dims"]), hit["rank_in"], hit["rank_out"])
        blk = koszul_block(alg, p, q, u, self.field, check=self.check)
        res = BlockResult(u, blk.dims, rank(blk.d_in), rank(blk.d_out))
        if self.cache is not None:
            query.update({"dims": list(res.dims), "rank_in": res.rank_in,
                          "rank_out": res.rank_out})
            self.cache.put(query)
        return res

    def strand(self, alg: MonomialAlgebra, p: int, q: int) -> list[BlockResult]:
        if p < 0 or q < 0:
            return []
        us = block_bidegrees(alg, p, q)
        if self.threads == 1 or len(us) < 2:
            results = [self.block_result(alg, p, q, u) for u in us]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(lambda u: self.block_result(alg, p, q, u), us))
        return sorted(results, key=lambda r: r.bidegree)

    def _route_costs(self, alg, p, q) -> dict:
        costs = {"direct": strand_cost(alg, p, q)}
        dual = dual_position(alg, p, q)
        if dual is not None:
            omega, pp, qq, _ = dual
            costs["dual"] = strand_cost(omega, pp, qq)
        return costs

    def _base_method(self, alg, p, q) -> str:
        costs = self._route_costs(alg, p, q)
        return min(costs, key=lambda m: (costs[m], m))

    def _euler_cost(self, alg, p, q) -> int:
        n = p + q
        return sum(min(self._route_costs(alg, k, n - k).values())
                   for k in range(n + 1) if k != p)

    def choose_method(self, alg: MonomialAlgebra, p: int, q: int, method: str = "auto") -> str:
        if method not in METHODS:
            raise InvalidParameters(f"unknown method {method!r}")
        if method == "dual" and dual_position(alg, p, q) is None:
            raise InvalidParameters(f"no canonical module known for {alg}")
        if method != "auto":
            return method
        costs = self._route_costs(alg, p, q)
        best = min(costs, key=lambda m: (costs[m], m))
        if self._euler_cost(alg, p, q) < costs[best]:
            return "euler"
        return best

    def _weights(self, alg, p, q, how) -> dict:
        key = (alg, p, q, how)
        if key not in self._memo:
            self._memo[key] = self._compute_weights(alg, p, q, how)
        return dict(self._memo[key])

    def _compute_weights(self, alg, p, q, how) -> dict:
        entries: dict = {}
        if how == "direct":
            for r in self.strand(alg, p, q):
                if r.homology:
                    entries[r.bidegree] = r.homology
        elif how == "dual":
            omega, pp, qq, s = dual_position(alg, p, q)
            for r in self.strand(omega, pp, qq):
                if r.homology:
                    entries[Bidegree(s[0] - r.bidegree[0], s[1] - r.bidegree[1])] = r.homology
        else:
            # (-1)^p kappa_{p,q} = chi_n - sum over the other strands of degree n
            n = p + q
            acc: dict = defaultdict(int)
            for k in range(n + 1):
                for u, d in _histogram(alg, k, n - k).items():
                    acc[u] += (-1) ** k * d
            for k in range(n + 1):
                if k == p:
                    continue
                for u, d in self._weights(alg, k, n - k, self._base_method(alg, k, n - k)).items():
                    acc[u] -= (-1) ** k * d
            for u, d in acc.items():
                d *= (-1) ** p
                if d < 0:
                    raise ArithmeticError(f"negative Euler remainder at {u}")
                if d:
                    entries[Bidegree(*u)] = d
        return entries

    def bidegree_table(self, alg: MonomialAlgebra, p: int, q: int,
                       method: str = "auto") -> BidegreeTable:
        if p < 0 or q < 0:
            raise InvalidParameters("p and q must be non-negative")
        how = self.choose_method(alg, p, q, method)
        entries = dict(sorted(self._weights(alg, p, q, how).items()))
        return BidegreeTable(p, q, entries, alg.descriptor(), self.field.name)

    def betti_number(self, alg: MonomialAlgebra, p: int, q: int, method: str = "auto") -> int:
        return self.bidegree_table(alg, p, q, method).total

    def full_betti_table(self, alg: MonomialAlgebra, max_p: int | None = None,
                         max_q: int = 3, method: str = "auto") -> BettiTable:
        top = alg.num_generators - alg.krull_dim
        if max_p is None:
            max_p = top
        if max_p > top:
            raise InvalidParameters(f"max_p must be <= {top}")
        entries = {}
        for q in range(max_q + 1):
            for p in range(max_p + 1):
                entries[(p, q)] = self.betti_number(alg, p, q, method)
        return BettiTable(alg.descriptor(), entries, self.field.name)


def betti_number(alg: MonomialAlgebra, p: int, q: int, field: Field = DEFAULT_FIELD,
                 method: str = "auto", **engine_kw) -> int:
    return KoszulEngine(field, **engine_kw).betti_number(alg, p, q, method)


def bidegree_table(alg: MonomialAlgebra, p: int, q: int, field: Field = DEFAULT_FIELD,
                   method: str = "auto", **engine_kw) -> BidegreeTable:
    return KoszulEngine(field, **engine_kw).bidegree_table(alg, p, q, method)


def full_betti_table(alg: MonomialAlgebra, max_p: int | None = None,
                     field: Field = DEFAULT_FIELD, method: str = "auto",
                     **engine_kw) -> BettiTable:
    return KoszulEngine(field, **engine_kw).full_betti_table(alg, max_p, method=method)


# ---------------------------------------------------------------------------
# closed forms

def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def closed_form_first_row(a: int, b: int, p: int) -> int:
    """``kappa_{p,1}`` at the end of the first row, for ``3 <= a <= b``."""
    if not 3 <= a <= b:
        raise OutOfTheoremRange(f"formula holds for 3 <= a <= b, got a={a}, b={b}")
    if p < a * b + a - 1:
        raise OutOfTheoremRange(f"formula holds for p >= {a * b + a - 1}, got p={p}")
    value = p * _binom((a + 1) * b, p + 1)
    if p == a * b + a - 1:
        value += p
    return value


def closed_form_a2(b: int, p: int, q: int) -> int:
    """Whole Betti table of the embedding with ``a = 2``."""
    if b < 2:
        raise InvalidParameters("need b >= 2")
    if q == 0:
        return int(p == 0)
    if q == 2:
        return max(p - 2 * b - 1, 0) * _binom(3 * b, p)
    if q == 1:
        return (closed_form_a2(b, p - 1, 2) + p * _binom(3 * b + 2, p + 1)
                - 4 * b * _binom(3 * b, p - 1)) if p >= 1 else 0
    return 0

