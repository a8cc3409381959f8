"""Bookkeeping of the iterated mapping cone built from the relative resolution.

``Q_{i,j}`` is position ``j`` of the Eagon-Northcott resolution of the
``i``-th module of the relative resolution.  For ``i = 0`` that module is
``R_bbar``; for ``i >= 1`` it is ``C(a, i+1) * i`` copies of ``M_{bbar,(i+1)b}(-i-1)``.
The cone has ``C_p = sum of Q_{p-j,j}`` over ``max(0, p-n) <= j <= min(p, m)``
with ``m = (a+1)b - 1`` and ``n = a - 1``.  Only the modules are recorded here,
not the cone differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from ..errors import InvalidParameters


@dataclass(frozen=True)
class ConeSummand:
    i: int
    j: int
    copies: int
    wedge: int
    v_rank: int
    twist: int
    wedge_rank: int

    @property
    def module_rank(self) -> int:
        return self.wedge_rank * self.v_rank

    @property
    def rank(self) -> int:
        return self.copies * self.module_rank

    def describe(self) -> str:
        return (f"Q[{self.i},{self.j}] = {self.copies} x Lambda^{self.wedge} F (x) "
                f"V_{self.v_rank - 1} (-{self.twist}), rank {self.rank}")


@dataclass
class MappingConeLedger:
    a: int
    b: int
    positions: dict = dc_field(default_factory=dict)

    @property
    def f(self) -> int:
        return (self.a + 1) * self.b

    @property
    def m(self) -> int:
        return self.f - 1

    @property
    def n(self) -> int:
        return self.a - 1

    def summands(self, p: int) -> list:
        return self.positions.get(p, [])

    def rank(self, p: int) -> int:
        return sum(s.rank for s in self.summands(p))

    def twist_p_plus_1(self, p: int) -> list:
        """Summands of ``C_p`` generated in degree ``p + 1``, the only ones feeding ``K_{p,1}``."""
        return [s for s in self.summands(p) if s.twist == p + 1]

    def q0p_dimension(self, p: int) -> int:
        """``dim Q_{0,p} (x) k = p * C((a+1)b, p+1)``."""
        return p * comb(self.f, p + 1) if p >= 1 else 1

    def kernel_dimension(self) -> int:
        return self.a * (self.b + 1) - 1

    def first_row_bound(self, p: int) -> int:
        """Upper bound for ``kappa_{p,1}``: exact value above ``ab+a-1``, plus the kernel term at it."""
        if p < self.a * self.b + self.a - 1:
            raise InvalidParameters(f"bound is stated for p >= {self.a * self.b + self.a - 1}")
        bound = self.q0p_dimension(p)
        if p == self.a * self.b + self.a - 1:
            bound += self.kernel_dimension()
        return bound

    def format(self) -> str:
        lines = []
        for p in sorted(self.positions):
            lines.append(f"C_{p}: rank {self.rank(p)}")
            for s in self.summands(p):
                flag = "  twist p+1" if s.twist == p + 1 else ""
                lines.append("  " + s.describe() + flag)
        return "\n".join(lines)


def _summand(a: int, b: int, i: int, j: int) -> ConeSummand | None:
    f = (a + 1) * b
    if i == 0:
        copies, c, shift = 1, 0, 0
    else:
        copies, c, shift = comb(a, i + 1) * i, (i + 1) * b, i + 1
    if j <= c:
        wedge, n, tw = j, c - j, j
    else:
        wedge, n, tw = j + 1, j - c - 1, j + 1
    if wedge > f or n < 0 or copies == 0:
        return None
    return ConeSummand(i, j, copies, wedge, n + 1, tw + shift, comb(f, wedge))


def mapping_cone_ledger(a: int, b: int) -> MappingConeLedger:
    if not 3 <= a <= b:
        raise InvalidParameters(f"ledger is built for 3 <= a <= b, got a={a}, b={b}")
    led = MappingConeLedger(a, b)
    m, n = led.m, led.n
    for p in range(m + n + 1):
        row = []
        for j in range(max(0, p - n), min(p, m) + 1):
            s = _summand(a, b, p - j, j)
            if s is not None:
                row.append(s)
        led.positions[p] = row
    return led
