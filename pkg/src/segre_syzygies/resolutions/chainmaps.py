"""Horizontal chain maps between Eagon-Northcott resolutions of scroll modules.

For ``c = p*b`` the map ``beta_{i0}: M_{bbar,c}(-p) -> M_{bbar,c-b}(-p+1)``,
``b_{I,c,j} -> b_{I+i0,c-b,j}``, lifts to maps ``alpha_{i0,n}`` from position
``n`` of the resolution of ``M_c`` to position ``n`` of the resolution of
``M_{c-b}``.  Coefficients are linear for ``n <= c-b`` and constant for
``c-b < n <= c``; beyond ``c`` the lift is not built.

The source resolution is shifted by one against the target, so its twists are
raised by one here.
"""

from __future__ import annotations

from dataclasses import replace

from ..errors import InvalidParameters, OutOfImplementedRange
from ..linalg import DEFAULT_FIELD, Field, SparseExactMatrix
from ..rings import _check_ab
from .en import ENResolution
from .free import CheckReport, FreeModule, PolyMap, monomials, wedge_insert


def _bbar(a: int, b: int, c: int) -> ENResolution:
    return ENResolution((b,) * (a + 1), c, first_index=0)


def _shifted(mod: FreeModule) -> FreeModule:
    return replace(mod, twist=mod.twist + 1, name=mod.name + "(+1)")


def horizontal_chain_map(i0: int, n: int, c: int, b: int, a: int) -> PolyMap:
    """``alpha_{i0,n}`` as a map of free modules; use ``.slice(degree)`` for matrices."""
    _check_ab(a, b)
    if not 0 <= i0 <= a:
        raise InvalidParameters(f"i0 must lie in 0..{a}")
    if c % b or c < b:
        raise InvalidParameters("c must be a positive multiple of b")
    if n < 0:
        raise InvalidParameters("n must be non-negative")
    if n > c:
        raise OutOfImplementedRange(f"alpha is built for n <= c = {c}, got n = {n}")
    src_res, tgt_res = _bbar(a, b, c), _bbar(a, b, c - b)
    src, tgt = _shifted(src_res.position(n)), tgt_res.position(n)
    alpha = PolyMap(src, tgt, src_res.variables)
    if n <= c - b:
        for w, j in src.basis:
            if j >= b:
                alpha.add((w, j), (w, j - b), ((i0, b),), 1)
                continue
            alpha.add((w, j), (w, 0), ((i0, j),), 1)
            for l, (il, jl) in enumerate(w, start=1):
                ins = wedge_insert(w[:l - 1] + w[l:], (i0, j + 1))
                if ins is not None:
                    sign, w2 = ins
                    alpha.add((w, j), (w2, 0), ((il, jl - 1),), (-1) ** l * sign)
    else:
        top = n - c + b - 1
        for w, j in src.basis:
            for ell in range(top + 1):
                if j + ell + 1 > b:
                    continue
                ins = wedge_insert(w, (i0, j + ell + 1))
                if ins is not None:
                    sign, w2 = ins
                    alpha.add((w, j), (w2, ell), (), (-1) ** top * sign)
    return alpha


def epsilon(m: int, l: int) -> int:
    """``1`` if ``m < l``, ``0`` if equal, ``-1`` if ``m > l``."""
    return (m < l) - (m > l)


def _square(a, b, c, i0, n):
    """Both ways around the square at position ``n`` (``n >= 1``)."""
    src_res, tgt_res = _bbar(a, b, c), _bbar(a, b, c - b)
    d_src = src_res.differential(n)
    d_src = PolyMap(_shifted(d_src.src), _shifted(d_src.tgt), d_src.variables, d_src.entries)
    down_then_across = d_src.then(horizontal_chain_map(i0, n - 1, c, b, a))
    across_then_down = horizontal_chain_map(i0, n, c, b, a).then(tgt_res.differential(n))
    return across_then_down, down_then_across


def _augmentation_square(a, b, c, i0, k, field):
    """``aug o alpha_0`` against ``beta o aug`` on source slices ``k`` above the generators."""
    src_res, tgt_res = _bbar(a, b, c), _bbar(a, b, c - b)
    alpha = horizontal_chain_map(i0, 0, c, b, a)
    zero = (0,) * (a + 1)
    mismatches = 0
    for j in range(c + 1):
        for mono in monomials(src_res.variables, k):
            key = (zero, j)
            for g in mono:
                key = src_res.module.multiply(g, key)
            counts, jj = key
            want = ((counts[:i0] + (counts[i0] + 1,) + counts[i0 + 1:]), jj)
            got = {}
            for (t, m2), v in alpha.entries[((), j)].items():
                key2 = (zero, t[1])
                for g in mono + m2:
                    key2 = tgt_res.module.multiply(g, key2)
                got[key2] = got.get(key2, 0) + v
            got = {kk: vv for kk, vv in got.items() if field(vv) != 0}
            if got != {want: 1}:
                mismatches += 1
    return mismatches


def verify_chain_map_squares(a: int, b: int, p_index: int, max_deg: int,
                             field: Field = DEFAULT_FIELD,
                             slice_cap: int = 20000) -> CheckReport:
    """Check every square of every ``alpha_{i0,n}`` for ``c = p_index * b``.

    Each square is compared as an identity of maps of free modules, which
    settles every degree slice at once.  Slices ``0..max_deg`` above the
    generators are also compared explicitly while their size stays below
    ``slice_cap`` columns.
    """
    _check_ab(a, b)
    if not 2 <= p_index <= a:
        raise InvalidParameters(f"p_index must lie in 2..{a}")
    c = p_index * b
    rep = CheckReport(f"chain map squares a={a} b={b} c={c} max_deg={max_deg} over {field.name}")
    n_eps = c - b + 1
    src_eps = _bbar(a, b, c).position(n_eps).basis
    for i0 in range(a + 1):
        rep.add(f"i0={i0} base map cases agree at j=b", alpha_boundary_agrees(a, b, c, i0))
        bad = sum(1 for w, j in src_eps if j < b - 1 and epsilon_term(i0, w, j))
        rep.add(f"i0={i0} n={n_eps} epsilon-weighted double sum cancels", bad == 0,
                f"{bad} nonzero of {len(src_eps)}")
        for k in range(max_deg + 1):
            bad = _augmentation_square(a, b, c, i0, k, field)
            rep.add(f"i0={i0} n=0 augmentation square, slice +{k}", bad == 0,
                    f"{bad} mismatches")
        for n in range(1, c + 1):
            lhs, rhs = _square(a, b, c, i0, n)
            diff = lhs.minus(rhs)
            kind = "linear/linear" if n <= c - b else (
                "constant/linear" if n == c - b + 1 else "constant/constant")
            rep.add(f"i0={i0} n={n} square ({kind})", diff.is_zero(field),
                    f"{sum(1 for _ in lhs.terms())} terms")
            for k in range(max_deg + 1):
                deg = lhs.src.twist + k
                rows, cols = diff.slice_size(deg)
                if cols > slice_cap or rows > slice_cap:
                    break
                m = lhs.slice(deg, field)
                m2 = rhs.slice(deg, field)
                rep.add(f"i0={i0} n={n} slice +{k}", _same(m, m2), f"{rows}x{cols}")
    return rep


def _same(m1: SparseExactMatrix, m2: SparseExactMatrix) -> bool:
    return m1.entries() == m2.entries()


def alpha_boundary_agrees(a: int, b: int, c: int, i0: int) -> bool:
    """Both cases of the base map give ``b_{i0,b} B_0`` at ``j = b``, and the
    middle-range map at ``n = 0`` is the base map."""
    alpha0 = horizontal_chain_map(i0, 0, c, b, a)
    for (_, j), row in alpha0.entries.items():
        want = {(((), 0), ((i0, j),)): 1} if j <= b else {(((), j - b), ((i0, b),)): 1}
        if row != want:
            return False
    return True


def epsilon_term(i0: int, wedge: tuple, j: int) -> dict:
    """The double sum weighted by ``epsilon_{m,l}`` in the worked square.

    Returns the element of ``Lambda F (x) V_0`` with quadratic coefficients as
    ``{(wedge, monomial): coefficient}``; it is zero because swapping ``m``
    and ``l`` flips the sign.
    """
    out: dict = {}
    n = len(wedge)
    for l in range(1, n + 1):
        for m in range(1, n + 1):
            eps = epsilon(m, l)
            if not eps:
                continue
            rest = tuple(x for t, x in enumerate(wedge, start=1) if t not in (l, m))
            ins = wedge_insert(rest, (i0, j + 2))
            if ins is None:
                continue
            sign, w2 = ins
            (il, jl), (im, jm) = wedge[l - 1], wedge[m - 1]
            mono = tuple(sorted([(il, jl - 1), (im, jm - 1)]))
            key = (w2, mono)
            out[key] = out.get(key, 0) + (-1) ** (l + m) * eps * sign
    return {k: v for k, v in out.items() if v}


__all__ = ["horizontal_chain_map", "verify_chain_map_squares", "epsilon", "epsilon_term",
           "alpha_boundary_agrees"]
