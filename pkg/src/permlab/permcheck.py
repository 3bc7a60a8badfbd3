"""Function descriptors over a finite field and exhaustive bijectivity checks.

A FnSpec is an immutable recipe for one map GF(p^n) -> GF(p^n).  Supported
kinds:

  trinomial     x -> c*x - x^s + x^((q^k)*s)
  delta_form    x -> (x^(q^k) - x + delta)^s + c*x
  exponent_sum  x -> sum of c_j * x^(e_j)
  composed      g-based maps built by the transform module

q = p^qdeg is the base of the extension view; the Frobenius step k counts in
q-units.  Exponents are stored reduced into [1, order-1] (a positive exponent
that is a multiple of order-1 reduces to order-1, keeping 0 -> 0 intact);
exponent 0 is only meaningful as a constant term of an exponent sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ffcore import Element, FieldCtx

__all__ = [
    "FnSpec",
    "Lemma1Result",
    "PermVerdict",
    "build_inverse_table",
    "evaluate",
    "evaluate_all",
    "is_permutation",
    "lemma1_check",
    "make_fn_delta",
    "make_fn_exponent_sum",
    "make_fn_trinomial",
]


def reduce_exponent(e: int, order: int) -> int:
    """Reduce a nonzero exponent into [1, order-1] preserving the power map."""
    if order == 2:
        return 1
    return (e - 1) % (order - 1) + 1


@dataclass(frozen=True)
class FnSpec:
    field: FieldCtx
    kind: str
    c: int = 0              # coefficient index for the linear term
    s: int = 0              # power exponent, reduced
    s_frob: int = 0         # trinomial: (q^k * s) reduced
    pstep: int = 0          # Frobenius iterations in p-units (= qdeg * k)
    delta: int = -1         # delta index, -1 when absent
    terms: tuple = ()       # ((coeff index, exponent), ...) for sums / g
    mode: str = ""          # composed: "shift" (f side) or "frobdiff" (h side)
    qdeg: int = 0           # q = p^qdeg, recorded for reporting
    kstep: int = 0          # Frobenius step in q-units, recorded for reporting

    def evaluate(self, x: Element) -> Element:
        return evaluate(self, x)

    def evaluate_all(self) -> np.ndarray:
        return evaluate_all(self)


@dataclass(frozen=True)
class PermVerdict:
    is_permutation: bool
    witness: Optional[tuple[Element, Element]]
    image_deficit: int


def _resolve_view(field: FieldCtx, k: int, qdeg: Optional[int]) -> tuple[int, int]:
    """Validate the GF(q^m) view and return (qdeg, m)."""
    if qdeg is None:
        if field.n % 2:
            raise ValueError("default view needs an even extension degree; pass qdeg")
        qdeg = field.n // 2
    if qdeg < 1 or field.n % qdeg:
        raise ValueError(f"base degree {qdeg} does not divide {field.n}")
    m = field.n // qdeg
    if not 1 <= k < m:
        raise ValueError(f"frobenius step {k} out of range [1, {m - 1}] for GF(q^{m})")
    return qdeg, m


def make_fn_trinomial(field: FieldCtx, c: Element, s: int, k: int = 1,
                      qdeg: Optional[int] = None) -> FnSpec:
    """x -> c*x - x^s + x^((q^k)*s) over GF(q^m), q = p^qdeg."""
    qdeg, _ = _resolve_view(field, k, qdeg)
    field._check(c)
    if c.index == 0:
        raise ValueError("trinomial coefficient c must be nonzero")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"exponent must be a positive integer, got {s!r}")
    if field.order > 2 and s % (field.order - 1) == 0:
        raise ValueError("exponent is a multiple of order-1; power term degenerates")
    q = field.p**qdeg
    s_red = reduce_exponent(s, field.order)
    s2 = reduce_exponent(q**k * s, field.order)
    return FnSpec(field=field, kind="trinomial", c=c.index, s=s_red, s_frob=s2,
                  qdeg=qdeg, kstep=k, pstep=qdeg * k)


def make_fn_delta(field: FieldCtx, c: Element, s: int, k: int, delta: Element,
                  qdeg: Optional[int] = None) -> FnSpec:
    """x -> (x^(q^k) - x + delta)^s + c*x over GF(q^m), q = p^qdeg."""
    qdeg, _ = _resolve_view(field, k, qdeg)
    field._check(c)
    field._check(delta)
    if c.index == 0:
        raise ValueError("linear coefficient c must be nonzero")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"exponent must be a positive integer, got {s!r}")
    return FnSpec(field=field, kind="delta_form", c=c.index,
                  s=reduce_exponent(s, field.order), delta=delta.index,
                  qdeg=qdeg, kstep=k, pstep=qdeg * k)


def make_fn_exponent_sum(field: FieldCtx, terms) -> FnSpec:
    """x -> sum of coeff * x^e.  Negative e is reduced mod order-1; e = 0 is a
    constant term.  Terms with equal reduced exponents merge."""
    merged: dict[int, Element] = {}
    for coeff, e in terms:
        field._check(coeff)
        if not isinstance(e, int):
            raise ValueError(f"exponent must be an integer, got {e!r}")
        e_red = 0 if e == 0 else reduce_exponent(e, field.order)
        cur = merged.get(e_red)
        merged[e_red] = coeff if cur is None else field.add(cur, coeff)
    flat = tuple(sorted((e, c.index) for e, c in merged.items() if c.index))
    return FnSpec(field=field, kind="exponent_sum",
                  terms=tuple((ci, e) for e, ci in flat))


def _eval_terms(field: FieldCtx, terms, x: Element) -> Element:
    acc = field.zero
    for ci, e in terms:
        coeff = field.element_at(ci)
        if e == 0:
            acc = field.add(acc, coeff)
        else:
            acc = field.add(acc, field.mul(coeff, field.pow(x, e)))
    return acc


def evaluate(fn: FnSpec, x: Element) -> Element:
    """Pointwise evaluation via scalar field operations."""
    field = fn.field
    field._check(x)
    if fn.kind == "trinomial":
        val = field.mul(field.element_at(fn.c), x)
        val = field.sub(val, field.pow(x, fn.s))
        return field.add(val, field.pow(x, fn.s_frob))
    if fn.kind == "delta_form":
        t = field.add(field.sub(field.frobenius(x, fn.pstep), x), field.element_at(fn.delta))
        pw = field.zero if t.index == 0 else field.pow(t, fn.s)
        return field.add(pw, field.mul(field.element_at(fn.c), x))
    if fn.kind == "exponent_sum":
        return _eval_terms(field, fn.terms, x)
    if fn.kind == "composed":
        cx = field.mul(field.element_at(fn.c), x)
        if fn.mode == "shift":
            t = field.add(field.sub(field.frobenius(x, fn.pstep), x), field.element_at(fn.delta))
            return field.add(_eval_terms(field, fn.terms, t), cx)
        if fn.mode == "frobdiff":
            gx = _eval_terms(field, fn.terms, x)
            return field.add(field.sub(field.frobenius(gx, fn.pstep), gx), cx)
    raise ValueError(f"unknown function kind {fn.kind!r}")


def _eval_terms_all(bulk, terms, arr: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(arr)
    for ci, e in terms:
        if e == 0:
            acc = bulk.add(acc, np.int64(ci))
        else:
            acc = bulk.add(acc, bulk.mul_scalar(ci, bulk.pow_const(arr, e)))
    return acc


def evaluate_all(fn: FnSpec) -> np.ndarray:
    """Index array of fn over the whole field, position x -> fn(x)."""
    field = fn.field
    bulk = field.bulk()
    xs = bulk.xs
    if fn.kind == "trinomial":
        out = bulk.sub(bulk.mul_scalar(fn.c, xs), bulk.pow_const(xs, fn.s))
        return bulk.add(out, bulk.pow_const(xs, fn.s_frob))
    if fn.kind == "delta_form":
        t = bulk.add(bulk.sub(bulk.frob(xs, fn.pstep), xs), np.int64(fn.delta))
        return bulk.add(bulk.pow_const(t, fn.s), bulk.mul_scalar(fn.c, xs))
    if fn.kind == "exponent_sum":
        return _eval_terms_all(bulk, fn.terms, xs)
    if fn.kind == "composed":
        cx = bulk.mul_scalar(fn.c, xs)
        if fn.mode == "shift":
            t = bulk.add(bulk.sub(bulk.frob(xs, fn.pstep), xs), np.int64(fn.delta))
            return bulk.add(_eval_terms_all(bulk, fn.terms, t), cx)
        if fn.mode == "frobdiff":
            gx = _eval_terms_all(bulk, fn.terms, xs)
            return bulk.add(bulk.sub(bulk.frob(gx, fn.pstep), gx), cx)
    raise ValueError(f"unknown function kind {fn.kind!r}")


def is_permutation(fn: FnSpec, outs: Optional[np.ndarray] = None) -> PermVerdict:
    """Exhaustive scan; on failure the witness is the first collision in
    element-index order (smallest second preimage, then its earliest mate).
    Pass outs to reuse an already computed value table."""
    field = fn.field
    if outs is None:
        outs = evaluate_all(fn)
    Q = field.order
    first = np.full(Q, Q, dtype=np.int64)
    idx = np.arange(Q, dtype=np.int64)
    np.minimum.at(first, outs, idx)
    dup = first[outs] != idx
    if not dup.any():
        return PermVerdict(True, None, 0)
    b = int(idx[dup][0])
    a = int(first[outs[b]])
    deficit = Q - int(np.unique(outs).size)
    return PermVerdict(False, (field.element_at(a), field.element_at(b)), deficit)


def build_inverse_table(fn: FnSpec) -> np.ndarray:
    """Dense inverse lookup: table[fn(x)] = x.  Raises if fn is not bijective."""
    outs = evaluate_all(fn)
    Q = fn.field.order
    inv = np.full(Q, -1, dtype=np.int64)
    inv[outs] = np.arange(Q, dtype=np.int64)
    if (inv < 0).any():
        raise ValueError("map is not a permutation; inverse table undefined")
    return inv


@dataclass(frozen=True)
class Lemma1Result:
    """Multiplicative-coset reduction of x^r * h(x^((Q-1)/d)) over GF(Q)."""

    gcd_ok: bool
    mu_permuted: bool
    brute_is_permutation: bool
    assembled: FnSpec

    @property
    def reduction_verdict(self) -> bool:
        return self.gcd_ok and self.mu_permuted

    @property
    def consistent(self) -> bool:
        return self.reduction_verdict == self.brute_is_permutation


def lemma1_assemble(field: FieldCtx, r: int, h_terms, d: int) -> FnSpec:
    """Expand x^r * h(x^((Q-1)/d)) into an exponent sum over GF(Q)."""
    Q = field.order
    e = (Q - 1) // d
    out = []
    for coeff, he in h_terms:
        he_red = 0 if he == 0 else reduce_exponent(he, Q)
        out.append((coeff, r + he_red * e))
    return make_fn_exponent_sum(field, out)


def lemma1_check(field: FieldCtx, r: int, h_terms, d: int) -> Lemma1Result:
    """Check both sides of the coset reduction.

    gcd_ok:      gcd(r, (Q-1)/d) = 1
    mu_permuted: x -> x^r * h(x)^((Q-1)/d) maps mu_d onto mu_d
    and the brute-force verdict of the assembled full-field map, so callers
    can confirm the two routes agree.
    """
    Q = field.order
    if d < 1 or (Q - 1) % d:
        raise ValueError(f"d = {d} does not divide {Q - 1}")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    e = (Q - 1) // d
    gcd_ok = math.gcd(r, e) == 1
    h_fn = make_fn_exponent_sum(field, h_terms)
    mu = field.mu_subgroup(d)
    image = set()
    for x in mu:
        hx = evaluate(h_fn, x)
        y = field.mul(field.pow(x, r), field.pow(hx, e)) if hx.index else field.zero
        image.add(y.index)
    mu_permuted = image == {x.index for x in mu}
    assembled = lemma1_assemble(field, r, h_terms, d)
    brute = is_permutation(assembled)
    return Lemma1Result(gcd_ok, mu_permuted, brute.is_permutation, assembled)
