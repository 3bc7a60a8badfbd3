"""Bridge between frobenius-difference maps and shifted-argument maps.

For a polynomial g over GF(q^m), a step 0 < k < m, a shift delta and a
coefficient c, the two companion maps are

    h(x) = g(x)^(q^k) - g(x) + c*x        ("frobdiff" side)
    f(x) = g(x^(q^k) - x + delta) + c*x   ("shift" side)

When c lies in GF(q^l)* with l = gcd(k, m) and h permutes the field, f
permutes the field for EVERY delta, with explicit inverse

    x = c^(-1) * (alpha - g(h^(-1)(alpha^(q^k) - alpha + c*delta))).

When additionally g has coefficients in GF(q), k = 1 and c = 1, the converse
holds as well: f permutes iff h does.  The proof mechanism is the commuting
square phi(f(x)) = h(phi(x)) with phi(x) = x^q - x + delta, which maps the
field onto the single trace fiber {y : Tr(y) = Tr(delta)}; both directions
are checkable here (prop4_check).

quadratic_form_solutions handles the side computation used by the quartic
trinomial family: the nonzero solution set of x^(2q^2) +/- x^(q^2+1) + x^2
is empty unless 3 | q, in which case it is exactly {x : x^(q^2-1) = +/-1}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ffcore import Element, FieldCtx
from .permcheck import (FnSpec, PermVerdict, build_inverse_table, evaluate_all,
                        is_permutation, reduce_exponent)

__all__ = [
    "CosetSet",
    "DELTA_EXHAUSTIVE_CAP",
    "DELTA_SAMPLES",
    "DEFAULT_SEED",
    "GSpec",
    "Prop2Report",
    "Prop4Report",
    "QuadFormReport",
    "compose_f",
    "compose_h",
    "invert_f",
    "make_gspec",
    "pick_deltas",
    "prop2_check",
    "prop4_check",
    "quadratic_form_solutions",
    "trace_coset",
]

# delta sets: exhaustive up to this field order, seeded sample beyond it
DELTA_EXHAUSTIVE_CAP = 1 << 14
DELTA_SAMPLES = 64
DEFAULT_SEED = 1


@dataclass(frozen=True)
class GSpec:
    """Polynomial g as merged (coefficient index, exponent) terms over field,
    with the GF(q^m) view (q = p^qdeg) it will be composed under."""

    field: FieldCtx
    terms: tuple
    qdeg: int
    coeff_subdeg: int   # smallest d | n with every coefficient in GF(p^d)

    @property
    def m(self) -> int:
        return self.field.n // self.qdeg

    def eval_at(self, x: Element) -> Element:
        fld = self.field
        acc = fld.zero
        for ci, e in self.terms:
            coeff = fld.element_at(ci)
            if e == 0:
                acc = fld.add(acc, coeff)
            else:
                acc = fld.add(acc, fld.mul(coeff, fld.pow(x, e)))
        return acc


def make_gspec(field: FieldCtx, terms, qdeg: Optional[int] = None) -> GSpec:
    """Build a GSpec from (coefficient Element, exponent >= 0) pairs.

    Exponents are reduced into [1, order-1] (0 stays the constant term) and
    equal reduced exponents merge, which preserves g as a map on the field
    though not as a formal polynomial.
    """
    if qdeg is None:
        if field.n % 2:
            raise ValueError("default view needs an even extension degree; pass qdeg")
        qdeg = field.n // 2
    if qdeg < 1 or field.n % qdeg or qdeg == field.n:
        raise ValueError(f"base degree {qdeg} must properly divide {field.n}")
    merged: dict[int, Element] = {}
    for coeff, e in terms:
        field._check(coeff)
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"g exponents must be integers >= 0, got {e!r}")
        e_red = 0 if e == 0 else reduce_exponent(e, field.order)
        cur = merged.get(e_red)
        merged[e_red] = coeff if cur is None else field.add(cur, coeff)
    flat = tuple(sorted((e, c.index) for e, c in merged.items() if c.index))
    tm = tuple((ci, e) for e, ci in flat)
    sub = field.n
    for d in range(1, field.n + 1):
        if field.n % d == 0 and all(ci in field.subfield_indices(d) for ci, _ in tm):
            sub = d
            break
    return GSpec(field=field, terms=tm, qdeg=qdeg, coeff_subdeg=sub)


def _check_step(g: GSpec, k: int) -> None:
    if not isinstance(k, int) or not 1 <= k < g.m:
        raise ValueError(f"frobenius step {k} out of range [1, {g.m - 1}]")


def compose_h(g: GSpec, c: Element, k: int) -> FnSpec:
    """h(x) = g(x)^(q^k) - g(x) + c*x as a checkable map."""
    _check_step(g, k)
    g.field._check(c)
    if c.index == 0:
        raise ValueError("linear coefficient c must be nonzero")
    return FnSpec(field=g.field, kind="composed", mode="frobdiff", c=c.index,
                  terms=g.terms, qdeg=g.qdeg, kstep=k, pstep=g.qdeg * k)


def compose_f(g: GSpec, c: Element, k: int, delta: Element) -> FnSpec:
    """f(x) = g(x^(q^k) - x + delta) + c*x as a checkable map."""
    _check_step(g, k)
    g.field._check(c)
    g.field._check(delta)
    if c.index == 0:
        raise ValueError("linear coefficient c must be nonzero")
    return FnSpec(field=g.field, kind="composed", mode="shift", c=c.index,
                  terms=g.terms, delta=delta.index, qdeg=g.qdeg, kstep=k,
                  pstep=g.qdeg * k)


def pick_deltas(field: FieldCtx, cap: int = DELTA_EXHAUSTIVE_CAP,
                samples: int = DELTA_SAMPLES,
                seed: int = DEFAULT_SEED) -> tuple[tuple[int, ...], bool]:
    """Delta indices to sweep: every element when the field is small enough,
    otherwise a seeded sample (always containing 0 and 1)."""
    if field.order <= cap:
        return tuple(range(field.order)), True
    rng = random.Random(seed)
    picked = set(rng.sample(range(field.order), samples))
    picked.update((0, 1))
    return tuple(sorted(picked)), False


def _require_coeff_domain(g: GSpec, c: Element, k: int) -> None:
    ell = math.gcd(k, g.m)
    if not g.field.is_in_subfield(c, g.qdeg * ell):
        raise ValueError(
            f"coefficient must lie in GF({g.field.p}^{g.qdeg * ell}) "
            f"(= GF(q^gcd(k,m))), got index {c.index}")


@dataclass(frozen=True)
class Prop2Report:
    """One-direction transfer: h permutes => f permutes for every delta."""

    h_verdict: PermVerdict
    f_results: tuple          # ((delta index, PermVerdict), ...)
    deltas_exhaustive: bool

    @property
    def f_all_permute(self) -> bool:
        return all(v.is_permutation for _, v in self.f_results)

    @property
    def implication_holds(self) -> bool:
        return (not self.h_verdict.is_permutation) or self.f_all_permute

    @property
    def failing_deltas(self) -> tuple[int, ...]:
        return tuple(d for d, v in self.f_results if not v.is_permutation)


def prop2_check(g: GSpec, c: Element, k: int,
                deltas: Optional[tuple[int, ...]] = None,
                seed: int = DEFAULT_SEED) -> Prop2Report:
    """Verify the h => f transfer for the given g, c, k over a delta sweep.

    c is required to lie in GF(q^gcd(k, m))* as in the statement.  deltas
    overrides the default exhaustive-or-sampled sweep.
    """
    _check_step(g, k)
    if c.index == 0:
        raise ValueError("linear coefficient c must be nonzero")
    _require_coeff_domain(g, c, k)
    if deltas is None:
        deltas, exhaustive = pick_deltas(g.field, seed=seed)
    else:
        exhaustive = len(set(deltas)) == g.field.order
    h_v = is_permutation(compose_h(g, c, k))
    out = []
    for di in deltas:
        f_v = is_permutation(compose_f(g, c, k, g.field.element_at(di)))
        out.append((di, f_v))
    return Prop2Report(h_verdict=h_v, f_results=tuple(out),
                       deltas_exhaustive=exhaustive)


def invert_f(g: GSpec, c: Element, k: int, delta: Element, alpha: Element,
             h_inverse: Optional[np.ndarray] = None) -> Element:
    """Preimage of alpha under f by the closed formula
    x = c^(-1)(alpha - g(h^(-1)(alpha^(q^k) - alpha + c*delta))).

    h must permute the field (its dense inverse is built unless supplied).
    """
    fld = g.field
    _check_step(g, k)
    _require_coeff_domain(g, c, k)
    if h_inverse is None:
        h_inverse = build_inverse_table(compose_h(g, c, k))
    w = fld.add(fld.sub(fld.frobenius(alpha, g.qdeg * k), alpha),
                fld.mul(c, delta))
    y = fld.element_at(int(h_inverse[w.index]))
    return fld.div(fld.sub(alpha, g.eval_at(y)), c)


@dataclass(frozen=True)
class CosetSet:
    """One additive trace fiber S = {x : Tr(x) = alpha} inside GF(q^m)."""

    field: FieldCtx
    qdeg: int
    alpha: int               # trace value index (element of GF(q))
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        idx = x.index if isinstance(x, Element) else int(x)
        return idx in self._member_set()

    def _member_set(self) -> frozenset:
        return frozenset(self.members)


def _trace_table(field: FieldCtx, qdeg: int) -> np.ndarray:
    bulk = field.bulk()
    acc = bulk.xs.copy()
    for i in range(1, field.n // qdeg):
        acc = bulk.add(acc, bulk.frob(bulk.xs, qdeg * i))
    return acc


def trace_coset(field: FieldCtx, delta: Element, qdeg: int = 1) -> CosetSet:
    """The image of x -> x^q - x + delta, q = p^qdeg, as a CosetSet.

    Computes the image directly and also as the fiber of the relative trace
    onto GF(q) above Tr(delta); the two routes must agree (x^q - x has
    kernel exactly GF(q), so its image is the trace-zero set of size
    order/q), and a mismatch raises.
    """
    field._check(delta)
    if qdeg < 1 or field.n % qdeg or field.n == qdeg:
        raise ValueError(
            f"base degree {qdeg} must properly divide {field.n}")
    bulk = field.bulk()
    shifted = bulk.sub(bulk.frob(bulk.xs, qdeg), bulk.xs)
    shifted = bulk.add(shifted, np.full_like(bulk.xs, delta.index))
    image = np.unique(shifted)
    tr = _trace_table(field, qdeg)
    alpha = int(tr[delta.index])
    fiber = np.flatnonzero(tr == alpha)
    if not np.array_equal(image, fiber):
        raise AssertionError("shift image disagrees with its trace fiber")
    return CosetSet(field=field, qdeg=qdeg, alpha=alpha,
                    members=tuple(int(i) for i in image))


@dataclass(frozen=True)
class Prop4Report:
    """Both-direction equivalence for g over GF(q), k = 1, c = 1.

    The statement quantifies over the shift: h permutes the field if and
    only if f_delta permutes it for EVERY delta.  A single delta is not
    enough for the forward direction: f_delta being bijective only forces h
    to be bijective on the one trace fiber containing the shifted image, and
    h can still fail elsewhere (g = x^2 over GF(9) gives such a delta).
    """

    h_verdict: PermVerdict
    f_results: tuple          # ((delta index, PermVerdict), ...)
    deltas_exhaustive: bool
    commutes_all: bool        # phi o f_delta == h o phi for every swept delta
    fibers_stable: bool       # h maps each swept Tr-fiber into itself

    @property
    def f_all_permute(self) -> bool:
        return all(v.is_permutation for _, v in self.f_results)

    @property
    def iff_holds(self) -> bool:
        return self.f_all_permute == self.h_verdict.is_permutation

    @property
    def mixed_deltas(self) -> bool:
        seen = {v.is_permutation for _, v in self.f_results}
        return len(seen) == 2


def prop4_check(g: GSpec, deltas: Optional[tuple[int, ...]] = None,
                seed: int = DEFAULT_SEED) -> Prop4Report:
    """Verify (f_delta permutes for all delta) <=> (h permutes), with k = 1
    and c = 1 and g over GF(q), plus the commuting square
    phi o f_delta = h o phi through the trace fiber of each delta."""
    fld = g.field
    if g.coeff_subdeg > g.qdeg or g.qdeg % g.coeff_subdeg:
        raise ValueError(
            f"g has coefficients of degree {g.coeff_subdeg}; the equivalence "
            f"needs them inside GF({fld.p}^{g.qdeg})")
    if deltas is None:
        deltas, exhaustive = pick_deltas(fld, seed=seed)
    else:
        exhaustive = len(set(deltas)) == fld.order
    one = fld.one
    h_fn = compose_h(g, one, 1)
    h_v = is_permutation(h_fn)
    bulk = fld.bulk()
    ho = evaluate_all(h_fn)
    tr = _trace_table(fld, g.qdeg)
    fibers_ok = bool(np.array_equal(tr[ho], tr))   # h preserves every fiber
    out = []
    commutes = True
    for di in deltas:
        f_fn = compose_f(g, one, 1, fld.element_at(di))
        fo = evaluate_all(f_fn)
        out.append((di, is_permutation(f_fn, fo)))
        if commutes:
            phi_xs = bulk.add(bulk.sub(bulk.frob(bulk.xs, g.qdeg), bulk.xs),
                              np.int64(di))
            phi_fo = bulk.add(bulk.sub(bulk.frob(fo, g.qdeg), fo), np.int64(di))
            commutes = bool(np.array_equal(phi_fo, ho[phi_xs]))
    return Prop4Report(h_verdict=h_v, f_results=tuple(out),
                       deltas_exhaustive=exhaustive, commutes_all=commutes,
                       fibers_stable=fibers_ok)


@dataclass(frozen=True)
class QuadFormReport:
    """Nonzero solutions of x^(2q^2) + sign*x^(q^2+1) + x^2 = 0 in GF(q^4)."""

    sign: int
    solutions: frozenset
    predicted: frozenset

    @property
    def consistent(self) -> bool:
        return self.solutions == self.predicted


def quadratic_form_solutions(field: FieldCtx, qdeg: int, sign: int) -> QuadFormReport:
    """Solve the binary form directly and compare with the closed rule:
    no nonzero solutions unless 3 | q, else exactly {x : x^(q^2-1) = sign*1}."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if qdeg < 1 or field.n != 4 * qdeg:
        raise ValueError(f"need a GF(q^4) view; {qdeg} * 4 != {field.n}")
    q = field.p**qdeg
    bulk = field.bulk()
    xs = bulk.xs
    a = bulk.pow_const(xs, 2 * q * q)
    b = bulk.pow_const(xs, q * q + 1)
    d = bulk.pow_const(xs, 2)
    mid = b if sign > 0 else bulk.mul_scalar(field._neg_idx(1), b)
    vals = bulk.add(bulk.add(a, mid), d)
    sols = frozenset(int(i) for i in np.flatnonzero(vals == 0) if i)
    if q % 3:
        predicted = frozenset()
    else:
        target = 1 if sign > 0 else field._neg_idx(1)
        pw = bulk.pow_const(xs, q * q - 1)
        predicted = frozenset(int(i) for i in np.flatnonzero(pw == target) if i)
    return QuadFormReport(sign=sign, solutions=sols, predicted=predicted)
