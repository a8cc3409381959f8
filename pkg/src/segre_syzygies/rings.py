"""Monomial bases of the Segre ring, rational normal scrolls and scroll modules.

All algebras here are semigroup algebras: a product of two basis elements is
again a single basis element, so multiplication is integer bookkeeping.

Notation follows the usual conventions for these rings:

* ``R_{a,b}`` has basis ``b_{n,i,j}`` with ``0 <= i <= n*a``, ``0 <= j <= n*b``.
* The scroll ring ``R_e`` (and module ``M_{e,c}``) has basis
  ``b_{i_1..i_n,c,j}`` with a multiset of scroll indices and
  ``0 <= j <= e_{i_1} + ... + e_{i_n} + c``.

Scroll indices are labelled ``first_index, ..., first_index + l - 1``.  The
generic scroll uses labels starting at 1; the scroll containing the Segre
surface uses labels ``0..a`` so that projection reads ``(sum of labels, j)``.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .errors import BothModuleElements, InvalidParameters


class Bidegree(NamedTuple):
    u1: int
    u2: int

    def __add__(self, other):
        return Bidegree(self.u1 + other[0], self.u2 + other[1])

    def __sub__(self, other):
        return Bidegree(self.u1 - other[0], self.u2 - other[1])


class SegreBasisElement(NamedTuple):
    n: int
    i: int
    j: int

    @property
    def bidegree(self) -> Bidegree:
        return Bidegree(self.i, self.j)


class ScrollInvariants(NamedTuple):
    e: tuple
    first_index: int = 1

    @property
    def ell(self) -> int:
        return len(self.e)

    @property
    def f(self) -> int:
        return sum(self.e)

    @property
    def labels(self) -> range:
        return range(self.first_index, self.first_index + len(self.e))

    def e_of(self, label: int) -> int:
        return self.e[label - self.first_index]


def scroll_invariants(e: Sequence[int], first_index: int = 1) -> ScrollInvariants:
    e = tuple(int(x) for x in e)
    if not e or any(x < 1 for x in e):
        raise InvalidParameters(f"scroll invariants must be positive, got {e}")
    return ScrollInvariants(e, first_index)


class ScrollBasisElement(NamedTuple):
    indices: tuple
    c: int
    j: int

    @property
    def degree(self) -> int:
        return len(self.indices)


def scroll_element(inv: ScrollInvariants, indices, j: int, c: int = 0) -> ScrollBasisElement:
    """Validated ``b_{indices,c,j}``; the index order is canonicalised."""
    indices = tuple(sorted(indices))
    if any(i not in inv.labels for i in indices):
        raise InvalidParameters(f"scroll index out of range in {indices}")
    top = sum(inv.e_of(i) for i in indices) + c
    if c < 0 or not 0 <= j <= top:
        raise InvalidParameters(f"j={j} outside 0..{top}")
    return ScrollBasisElement(indices, c, j)


# ---------------------------------------------------------------------------
# the Segre ring R_{a,b}

def _check_ab(a: int, b: int) -> None:
    if a < 1 or a > b:
        raise InvalidParameters(f"need 1 <= a <= b, got a={a}, b={b}")


def segre_graded_basis(a: int, b: int, n: int) -> list[SegreBasisElement]:
    """Basis of the degree-``n`` part of ``R_{a,b}``, sorted lexicographically."""
    _check_ab(a, b)
    if n < 0:
        raise InvalidParameters("degree must be non-negative")
    return [SegreBasisElement(n, i, j) for i in range(n * a + 1) for j in range(n * b + 1)]


def segre_multiply(x: SegreBasisElement, y: SegreBasisElement) -> SegreBasisElement:
    return SegreBasisElement(x.n + y.n, x.i + y.i, x.j + y.j)


def scroll_multiply(x: ScrollBasisElement, y: ScrollBasisElement) -> ScrollBasisElement:
    if x.c > 0 and y.c > 0:
        raise BothModuleElements("at most one factor may come from a scroll module")
    return ScrollBasisElement(tuple(sorted(x.indices + y.indices)), x.c + y.c, x.j + y.j)


def scroll_projection(x: ScrollBasisElement, a: int, b: int) -> SegreBasisElement:
    """The surjection ``R_bbar -> R_{a,b}``, ``b_{i_1..i_n,j} -> b_{n, i_1+..+i_n, j}``.

    ``x`` lives in the scroll with ``a+1`` copies of ``b`` labelled ``0..a``.
    """
    if x.c != 0:
        raise InvalidParameters("projection is defined on the scroll ring only")
    if any(not 0 <= i <= a for i in x.indices) or not 0 <= x.j <= b * len(x.indices):
        raise InvalidParameters(f"{x} is not in the scroll with labels 0..{a}")
    return SegreBasisElement(len(x.indices), sum(x.indices), x.j)


# ---------------------------------------------------------------------------
# algebras as inputs to the Koszul engine

@lru_cache(maxsize=None)
def compositions(n: int, parts: int) -> tuple:
    """All tuples of ``parts`` non-negative integers summing to ``n`` (lex order)."""
    if parts == 1:
        return ((n,),)
    return tuple((k,) + rest for k in range(n, -1, -1)
                 for rest in compositions(n - k, parts - 1))[::-1]


class MonomialAlgebra:
    """A graded semigroup algebra or module with a bidegree on its basis.

    Subclasses provide the degree-one generators (the variables of the
    polynomial ring acting on the object), each graded piece as a sorted tuple
    of hashable keys, the bidegree of a key, and multiplication of a key by a
    generator.
    """

    kind: str = ""
    krull_dim: int = 0

    @property
    def generators(self) -> tuple:
        raise NotImplementedError

    def generator_bidegree(self, g) -> Bidegree:
        raise NotImplementedError

    def basis(self, n: int) -> tuple:
        raise NotImplementedError

    def key_bidegree(self, key) -> Bidegree:
        raise NotImplementedError

    def multiply(self, g, key):
        raise NotImplementedError

    def canonical_module(self) -> "MonomialAlgebra | None":
        """The canonical module as an interior-point module, when available."""
        return None

    def descriptor(self) -> dict:
        raise NotImplementedError

    @cached_property
    def generator_bidegrees(self) -> tuple:
        return tuple(self.generator_bidegree(g) for g in self.generators)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def dim(self, n: int) -> int:
        return len(self.basis(n)) if n >= 0 else 0

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash((type(self).__name__, repr(sorted(self.descriptor().items()))))

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.descriptor().items() if k != "algebra")
        return f"{type(self).__name__}({args})"


class SegreRing(MonomialAlgebra):
    """``R_{a,b}``: coordinate ring of P1 x P1 embedded by O(a, b)."""

    kind = "segre"
    krull_dim = 3

    def __init__(self, a: int, b: int):
        if a < 1 or b < 1:
            raise InvalidParameters(f"need a, b >= 1, got {a}, {b}")
        self.a, self.b = int(a), int(b)

    @cached_property
    def generators(self):
        return tuple((i, j) for i in range(self.a + 1) for j in range(self.b + 1))

    def generator_bidegree(self, g):
        return Bidegree(*g)

    @lru_cache(maxsize=None)
    def basis(self, n):
        if n < 0:
            return ()
        return tuple((i, j) for i in range(n * self.a + 1) for j in range(n * self.b + 1))

    def key_bidegree(self, key):
        return Bidegree(*key)

    def multiply(self, g, key):
        return (key[0] + g[0], key[1] + g[1])

    def canonical_module(self):
        return SegreCanonical(self.a, self.b)

    def descriptor(self):
        return {"algebra": self.kind, "a": self.a, "b": self.b}


class SegreCanonical(SegreRing):
    """Canonical module of ``R_{a,b}``: interior points of the dilated rectangles."""

    kind = "segre_canonical"

    @lru_cache(maxsize=None)
    def basis(self, n):
        if n < 1:
            return ()
        return tuple((i, j) for i in range(1, n * self.a) for j in range(1, n * self.b))

    def canonical_module(self):
        return None


class ScrollModule(MonomialAlgebra):
    """``M_{e,c}`` over the polynomial ring in the ``b_{i,j}``; ``c = 0`` is ``R_e``.

    Keys are ``(counts, j)`` with ``counts[k]`` the multiplicity of the
    ``k``-th scroll label.
    """

    kind = "scroll_module"

    def __init__(self, e: Sequence[int], c: int = 0, first_index: int = 1):
        self.inv = scroll_invariants(e, first_index)
        if c < 0:
            raise InvalidParameters("module shift must be non-negative")
        self.c = int(c)
        self.krull_dim = self.inv.ell + 1

    @property
    def e(self):
        return self.inv.e

    @cached_property
    def generators(self):
        inv = self.inv
        return tuple((i, j) for i in inv.labels for j in range(inv.e_of(i) + 1))

    def generator_bidegree(self, g):
        return Bidegree(*g)

    def _j_range(self, counts):
        top = sum(k * e for k, e in zip(counts, self.inv.e)) + self.c
        return range(top + 1)

    @lru_cache(maxsize=None)
    def basis(self, n):
        if n < 0:
            return ()
        out = []
        for counts in compositions(n, self.inv.ell):
            for j in self._j_range(counts):
                out.append((counts, j))
        return tuple(out)

    def key_bidegree(self, key):
        counts, j = key
        return Bidegree(sum(k * lab for k, lab in zip(counts, self.inv.labels)), j)

    def multiply(self, g, key):
        counts, j = key
        pos = g[0] - self.inv.first_index
        counts = counts[:pos] + (counts[pos] + 1,) + counts[pos + 1:]
        return (counts, j + g[1])

    def element(self, key) -> ScrollBasisElement:
        counts, j = key
        idx = tuple(lab for lab, k in zip(self.inv.labels, counts) for _ in range(k))
        return ScrollBasisElement(idx, self.c, j)

    def key_of(self, x: ScrollBasisElement):
        counts = [0] * self.inv.ell
        for i in x.indices:
            counts[i - self.inv.first_index] += 1
        return (tuple(counts), x.j)

    def canonical_module(self):
        return ScrollCanonical(self.inv.e, self.inv.first_index) if self.c == 0 else None

    def descriptor(self):
        d = {"algebra": self.kind if self.c else "scroll", "e": list(self.inv.e),
             "first_index": self.inv.first_index}
        if self.c:
            d["c"] = self.c
        return d


class ScrollCanonical(ScrollModule):
    """Canonical module of ``R_e``: every label occurs and ``0 < j < top``."""

    kind = "scroll_canonical"

    def __init__(self, e, first_index=1):
        super().__init__(e, 0, first_index)

    @lru_cache(maxsize=None)
    def basis(self, n):
        if n < self.inv.ell:
            return ()
        out = []
        for counts in compositions(n, self.inv.ell):
            if min(counts) < 1:
                continue
            top = sum(k * e for k, e in zip(counts, self.inv.e))
            out.extend((counts, j) for j in range(1, top))
        return tuple(out)

    def canonical_module(self):
        return None

    def descriptor(self):
        return {"algebra": self.kind, "e": list(self.inv.e),
                "first_index": self.inv.first_index}


def segre(a: int, b: int) -> SegreRing:
    return SegreRing(a, b)


def scroll(e: Sequence[int], first_index: int = 1) -> ScrollModule:
    return ScrollModule(e, 0, first_index)


def scroll_module(e: Sequence[int], c: int, first_index: int = 1) -> ScrollModule:
    return ScrollModule(e, c, first_index)


def segre_scroll(a: int, b: int) -> ScrollModule:
    """``R_bbar``: the scroll P^a x P^1 (``a+1`` copies of ``b``, labels ``0..a``)."""
    return ScrollModule((b,) * (a + 1), 0, first_index=0)


def generator_bidegree(alg: MonomialAlgebra, g) -> Bidegree:
    if g not in alg.generators:
        raise InvalidParameters(f"{g} is not a degree-one generator of {alg}")
    return alg.generator_bidegree(g)


def all_scroll_elements(inv: ScrollInvariants, n: int, c: int = 0):
    """Every ``b_{i_1..i_n,c,j}`` of degree ``n`` (sorted indices, then j)."""
    for idx in itertools.combinations_with_replacement(inv.labels, n):
        top = sum(inv.e_of(i) for i in idx) + c
        for j in range(top + 1):
            yield ScrollBasisElement(idx, c, j)
