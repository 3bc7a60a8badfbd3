"""Finite fields GF(p^n) with deterministic construction.

The modulus is the lexicographically first monic irreducible polynomial of
the requested degree: candidate coefficient tuples are read as base-p
integers (constant term least significant) and irreducibility is decided by
trial division against every monic polynomial of degree 1..n//2.

Each field precomputes discrete exp/log tables over a fixed multiplicative
generator plus the element sets of all proper subfields, and is immutable
afterwards, so contexts are safe to share between threads.

Elements are identified by a canonical index: the element with coefficient
tuple (c0, ..., c_{n-1}) has index sum(c_i * p**i).  Index 0 is zero and
index 1 is one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

__all__ = [
    "DEFAULT_SIZE_CAP",
    "Element",
    "FieldCtx",
    "arith",
    "get_field",
    "is_prime",
    "make_field",
]

DEFAULT_SIZE_CAP = 1 << 22


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m: int) -> tuple[int, ...]:
    """Distinct prime factors of m, ascending."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def _digits(value: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


def _poly_rem(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    """Remainder of num by monic den; coefficient lists, constant term first."""
    rem = list(num)
    dd = len(den) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * den[j]) % p
    del rem[dd:]
    return rem


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree n over Z_p."""
    if n == 1:
        return (0, 1)
    divisors = []
    for deg in range(1, n // 2 + 1):
        for low in range(p**deg):
            divisors.append(_digits(low, p, deg) + (1,))
    for low in range(p**n):
        cand = _digits(low, p, n) + (1,)
        for div in divisors:
            if not any(_poly_rem(list(cand), div, p)):
                break
        else:
            return cand
    raise RuntimeError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class Element:
    """A field element; value is fully determined by (field, index)."""

    field: "FieldCtx"
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return _digits(self.index, self.field.p, self.field.n)

    def __bool__(self) -> bool:
        return self.index != 0

    def _coerce(self, other):
        if isinstance(other, Element):
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.sub(self, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.sub(o, self)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.div(o, self)

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return self.field.pow(self, e)

    def __repr__(self) -> str:
        f = self.field
        return f"Element(GF({f.p}^{f.n}), {self.index})"


class _Bulk:
    """Vectorized index arithmetic over one field; lazily built, read only."""

    def __init__(self, field: "FieldCtx"):
        self.field = field
        self.Q = field.order
        self.p = field.p
        self.n = field.n
        self.exp = np.array(field._exp, dtype=np.int64)
        self.log = np.array(field._log, dtype=np.int64)
        xs = np.arange(self.Q, dtype=np.int64)
        xs.flags.writeable = False
        self.xs = xs
        self._dig = None
        self._pw = None

    def _digit_tables(self):
        if self._dig is None:
            dig = np.empty((self.Q, self.n), dtype=np.int64)
            rem = np.arange(self.Q, dtype=np.int64)
            for i in range(self.n):
                dig[:, i] = rem % self.p
                rem //= self.p
            dig.flags.writeable = False
            self._dig = dig
            self._pw = self.p ** np.arange(self.n, dtype=np.int64)
        return self._dig, self._pw

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.n == 1:
            return (a + b) % self.p
        dig, pw = self._digit_tables()
        return ((dig[a] + dig[b]) % self.p) @ pw

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.n == 1:
            return (a - b) % self.p
        dig, pw = self._digit_tables()
        return ((dig[a] - dig[b]) % self.p) @ pw

    def pow_const(self, arr, e: int):
        """arr**e elementwise for a fixed exponent e >= 1 (0**e = 0)."""
        out = np.zeros_like(arr)
        nz = arr != 0
        if self.Q > 2:
            out[nz] = self.exp[(self.log[arr[nz]] * (e % (self.Q - 1))) % (self.Q - 1)]
        else:
            out[nz] = 1
        return out

    def frob(self, arr, psteps: int):
        if self.Q == 2:
            return arr.copy()
        return self.pow_const(arr, pow(self.p, psteps, self.Q - 1))

    def mul_scalar(self, c_idx: int, arr):
        if c_idx == 0:
            return np.zeros_like(arr)
        if c_idx == 1:
            return arr.copy()
        out = np.zeros_like(arr)
        nz = arr != 0
        out[nz] = self.exp[(self.log[arr[nz]] + self.log[c_idx]) % (self.Q - 1)]
        return out

    def mul(self, a, b):
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        if nz.any():
            out[nz] = self.exp[
                (self.log[np.broadcast_to(a, out.shape)[nz]] + self.log[np.broadcast_to(b, out.shape)[nz]])
                % (self.Q - 1)
            ]
        return out


class FieldCtx:
    """GF(p^n) as Z_p[x]/(modulus).  Build through make_field()."""

    def __init__(self, p: int, n: int, cap: int = DEFAULT_SIZE_CAP):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"extension degree must be a positive integer, got {n!r}")
        order = p**n
        if order > cap:
            raise ValueError(f"field order {p}^{n} = {order} exceeds size cap {cap}")
        self.p = p
        self.n = n
        self.order = order
        self.modulus = _first_irreducible(p, n)
        self._init_mul()
        self._init_tables()
        self._init_subfields()
        self._bulk_cache: _Bulk | None = None

    # -- construction helpers ------------------------------------------------

    def _init_mul(self):
        p, n = self.p, self.n
        if n == 1:
            self._mul_raw = lambda a, b: (a * b) % p
        elif p == 2:
            mint = 0
            for i, c in enumerate(self.modulus):
                if c:
                    mint |= 1 << i
            def mul2(a: int, b: int, mint=mint, n=n) -> int:
                acc = 0
                while b:
                    if b & 1:
                        acc ^= a
                    a <<= 1
                    b >>= 1
                top = acc.bit_length()
                while top > n:
                    acc ^= mint << (top - 1 - n)
                    top = acc.bit_length()
                return acc
            self._mul_raw = mul2
        else:
            # x^(n+j) mod modulus, as coefficient tuples, for folding products
            xpow = []
            cur = [(-c) % p for c in self.modulus[:n]]  # x^n
            xpow.append(tuple(cur))
            for _ in range(n - 2):
                nxt = [0] + cur[:-1]
                lead = cur[-1]
                if lead:
                    for i in range(n):
                        nxt[i] = (nxt[i] - lead * self.modulus[i]) % p
                cur = [v % p for v in nxt]
                xpow.append(tuple(cur))
            def mulp(a: int, b: int, p=p, n=n, xpow=xpow) -> int:
                da = _digits(a, p, n)
                db = _digits(b, p, n)
                conv = [0] * (2 * n - 1)
                for i, ai in enumerate(da):
                    if ai:
                        for j, bj in enumerate(db):
                            conv[i + j] += ai * bj
                for j in range(2 * n - 2, n - 1, -1):
                    c = conv[j] % p
                    if c:
                        fold = xpow[j - n]
                        for i in range(n):
                            conv[i] += c * fold[i]
                idx = 0
                for i in range(n - 1, -1, -1):
                    idx = idx * p + conv[i] % p
                return idx
            self._mul_raw = mulp

    def _pow_raw(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._mul_raw(acc, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return acc

    def _init_tables(self):
        Q = self.order
        if Q == 2:
            self.generator_index = 1
            self._exp = [1]
            self._log = [-1, 0]
            return
        fac = _prime_factors(Q - 1)
        gen = 0
        for cand in range(2, Q):
            if all(self._pow_raw(cand, (Q - 1) // f) != 1 for f in fac):
                gen = cand
                break
        if not gen:
            raise RuntimeError("no multiplicative generator found")  # unreachable
        self.generator_index = gen
        exp = [0] * (Q - 1)
        log = [-1] * Q
        cur = 1
        for i in range(Q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_raw(cur, gen)
        self._exp = exp
        self._log = log

    def _init_subfields(self):
        """Element index sets of every proper subfield GF(p^m), m | n."""
        Q = self.order
        sub: dict[int, frozenset[int]] = {}
        for m in range(1, self.n):
            if self.n % m:
                continue
            d = self.p**m - 1
            stride = (Q - 1) // d
            sub[m] = frozenset([0] + [self._exp[t * stride] for t in range(d)])
        self._subfields = sub

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.n}))"

    # -- element plumbing ----------------------------------------------------

    def _check(self, a: Element) -> None:
        if not isinstance(a, Element) or a.field != self:
            raise ValueError(f"operand {a!r} does not belong to {self!r}")

    def element_at(self, index: int) -> Element:
        if not isinstance(index, int) or not 0 <= index < self.order:
            raise ValueError(f"element index {index!r} out of range [0, {self.order})")
        return Element(self, index)

    def index_of(self, a: Element) -> int:
        self._check(a)
        return a.index

    def from_coeffs(self, coeffs) -> Element:
        coeffs = tuple(coeffs)
        if len(coeffs) > self.n or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient tuple {coeffs!r} for {self!r}")
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c
        return Element(self, idx)

    def scalar(self, v: int) -> Element:
        return Element(self, v % self.p)

    @property
    def zero(self) -> Element:
        return Element(self, 0)

    @property
    def one(self) -> Element:
        return Element(self, 1)

    def elements(self) -> Iterator[Element]:
        for i in range(self.order):
            yield Element(self, i)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        self._check(a)
        self._check(b)
        return Element(self, self._add_idx(a.index, b.index))

    def sub(self, a: Element, b: Element) -> Element:
        self._check(a)
        self._check(b)
        return Element(self, self._add_idx(a.index, self._neg_idx(b.index)))

    def neg(self, a: Element) -> Element:
        self._check(a)
        return Element(self, self._neg_idx(a.index))

    def mul(self, a: Element, b: Element) -> Element:
        self._check(a)
        self._check(b)
        return Element(self, self._mul_idx(a.index, b.index))

    def div(self, a: Element, b: Element) -> Element:
        self._check(a)
        self._check(b)
        if b.index == 0:
            raise ZeroDivisionError("division by the zero element")
        return self.mul(a, self.inv(b))

    def inv(self, b: Element) -> Element:
        self._check(b)
        if b.index == 0:
            raise ZeroDivisionError("zero element has no inverse")
        return self.pow(b, self.order - 2)

    def pow(self, a: Element, e: int) -> Element:
        """a**e by square-and-multiply; exponents reduce mod order-1 for a != 0."""
        self._check(a)
        if not isinstance(e, int):
            raise ValueError(f"exponent must be an integer, got {e!r}")
        if a.index == 0:
            if e == 0:
                raise ValueError("0**0 is undefined")
            if e < 0:
                raise ZeroDivisionError("negative power of the zero element")
            return self.zero
        if self.order > 2:
            e %= self.order - 1
        else:
            e = 1
        idx = 1
        base = a.index
        while e:
            if e & 1:
                idx = self._mul_idx(idx, base)
            base = self._mul_idx(base, base)
            e >>= 1
        return Element(self, idx)

    def _add_idx(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mul = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    def _neg_idx(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mul = 1
        while a:
            a, ra = divmod(a, p)
            out += ((-ra) % p) * mul
            mul *= p
        return out

    def _mul_idx(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        Q = self.order
        if Q == 2:
            return 1
        return self._exp[(self._log[a] + self._log[b]) % (Q - 1)]

    # -- structure maps ------------------------------------------------------

    def frobenius(self, a: Element, i: int) -> Element:
        """a ** (p**i); frobenius(., n) is the identity."""
        self._check(a)
        if not isinstance(i, int) or i < 0:
            raise ValueError(f"frobenius iteration count must be >= 0, got {i!r}")
        if a.index == 0:
            return self.zero
        if self.order == 2:
            return a
        return self.pow(a, pow(self.p, i, self.order - 1))

    def trace_to_subfield(self, a: Element, m: int) -> Element:
        """Relative trace onto GF(p^m): sum of frobenius(a, i*m) for i < n/m."""
        self._check(a)
        if m < 1 or self.n % m:
            raise ValueError(f"trace target degree {m} does not divide {self.n}")
        acc = self.zero
        for i in range(self.n // m):
            acc = self.add(acc, self.frobenius(a, i * m))
        return acc

    def is_in_subfield(self, a: Element, m: int) -> bool:
        """True iff a lies in GF(p^m), i.e. frobenius(a, m) = a."""
        self._check(a)
        if m < 1 or self.n % m:
            raise ValueError(f"subfield degree {m} does not divide {self.n}")
        if m == self.n:
            return True
        return a.index in self._subfields[m]

    def subfield_elements(self, m: int) -> frozenset[Element]:
        if m < 1 or self.n % m:
            raise ValueError(f"subfield degree {m} does not divide {self.n}")
        if m == self.n:
            return frozenset(self.elements())
        return frozenset(Element(self, i) for i in self._subfields[m])

    def subfield_indices(self, m: int) -> frozenset[int]:
        if m < 1 or self.n % m:
            raise ValueError(f"subfield degree {m} does not divide {self.n}")
        if m == self.n:
            return frozenset(range(self.order))
        return self._subfields[m]

    def mu_subgroup(self, d: int) -> frozenset[Element]:
        """The d-th roots of unity {x : x**d = 1}; requires d | order-1."""
        if d < 1 or (self.order - 1) % d:
            raise ValueError(f"mu order {d} does not divide {self.order - 1}")
        stride = (self.order - 1) // d
        return frozenset(Element(self, self._exp[t * stride]) for t in range(d))

    def bulk(self) -> _Bulk:
        if self._bulk_cache is None:
            self._bulk_cache = _Bulk(self)
        return self._bulk_cache


def make_field(p: int, n: int, cap: int = DEFAULT_SIZE_CAP) -> FieldCtx:
    """Construct GF(p^n); deterministic for fixed (p, n)."""
    return FieldCtx(p, n, cap)


@lru_cache(maxsize=None)
def get_field(p: int, n: int, cap: int = DEFAULT_SIZE_CAP) -> FieldCtx:
    """Cached make_field; contexts are immutable so sharing is safe."""
    return make_field(p, n, cap)


def arith(a: Element, b: Element, kind: str) -> Element:
    """Dispatch helper: kind is one of add | sub | mul | div."""
    field = a.field
    try:
        op = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[kind]
    except KeyError:
        raise ValueError(f"unknown arithmetic kind {kind!r}") from None
    return op(a, b)
