import random

import numpy as np
import pytest

from permlab.ffcore import DEFAULT_SIZE_CAP, Element, FieldCtx, make_field


# ---------------------------------------------------------------------------
# modulus selection
# ---------------------------------------------------------------------------

# Lexicographically-first monic irreducibles, coefficient tuples constant
# first.  Cross-checked below by an independent product scan, and once by
# hand (x^4 + 1 factors over GF(3); x^4 + x + 2 does not).
FROZEN_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
    (17, 2): (3, 0, 1),
}


def poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def all_monic_polys(p, deg):
    for packed in range(p**deg):
        coeffs, t = [], packed
        for _ in range(deg):
            coeffs.append(t % p)
            t //= p
        yield coeffs + [1]


def is_irreducible_by_products(poly, p):
    """No monic factorization deg(a), deg(b) >= 1 reproduces poly."""
    n = len(poly) - 1
    for da in range(1, n // 2 + 1):
        for a in all_monic_polys(p, da):
            for b in all_monic_polys(p, n - da):
                if poly_mul_mod_p(a, b, p) == list(poly):
                    return False
    return True


def test_modulus_frozen_values():
    for (p, n), want in FROZEN_MODULI.items():
        assert FieldCtx(p, n).modulus == want


def test_modulus_is_irreducible_independent_scan():
    for (p, n), mod in FROZEN_MODULI.items():
        if p**n > 300:
            continue  # product scan is quartic in the order; keep it small
        assert is_irreducible_by_products(mod, p), (p, n)


def test_modulus_is_lexicographically_first():
    # every smaller monic polynomial (same degree, base-p tuple order) splits
    for p, n in [(3, 2), (2, 4), (5, 2)]:
        fld = FieldCtx(p, n)
        found = fld.modulus
        for cand in all_monic_polys(p, n):
            cand_t = tuple(cand)
            if cand_t == found:
                break
            assert not is_irreducible_by_products(cand_t, p), (
                f"GF({p}^{n}) skipped irreducible {cand_t}")


def test_gf81_reduction_matches_hand_computation():
    # modulus x^4 + x + 2 over GF(3): x^4 = -x - 2 = 2x + 1
    f = FieldCtx(3, 4)
    x = f.element_at(3)          # coeffs (0,1,0,0)
    x4 = f.mul(f.mul(x, x), f.mul(x, x))
    assert x4.index == 2 * 3 + 1  # 2x + 1 -> index 7


# ---------------------------------------------------------------------------
# element indexing
# ---------------------------------------------------------------------------

def test_index_round_trip():
    f = FieldCtx(5, 2)
    for i in range(f.order):
        assert f.index_of(f.element_at(i)) == i


def test_scalar_embedding():
    f = FieldCtx(7, 2)
    assert f.zero.index == 0
    assert f.one.index == 1
    assert f.scalar(9).index == 2   # 9 mod 7
    assert f.scalar(-1).index == 6


def test_element_at_range_check():
    f = FieldCtx(3, 2)
    with pytest.raises(ValueError):
        f.element_at(9)
    with pytest.raises(ValueError):
        f.element_at(-1)


# ---------------------------------------------------------------------------
# field axioms (seeded random + exhaustive on the smallest fields)
# ---------------------------------------------------------------------------

def test_axioms_exhaustive_gf9():
    f = FieldCtx(3, 2)
    els = list(f.elements())
    for a in els:
        assert f.add(a, f.zero) == a
        assert f.mul(a, f.one) == a
        assert f.add(a, f.neg(a)) == f.zero
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_axioms_random_larger_fields():
    rng = random.Random(20240811)
    for p, n in [(3, 4), (2, 6), (13, 2)]:
        f = FieldCtx(p, n)
        for _ in range(200):
            a = f.element_at(rng.randrange(f.order))
            b = f.element_at(rng.randrange(f.order))
            c = f.element_at(rng.randrange(f.order))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))


def test_inverse_and_division():
    f = FieldCtx(3, 4)
    for i in range(1, f.order):
        a = f.element_at(i)
        assert f.mul(a, f.inv(a)) == f.one
    with pytest.raises(ZeroDivisionError):
        f.inv(f.zero)
    with pytest.raises(ZeroDivisionError):
        f.div(f.one, f.zero)


def test_dual_route_multiplication():
    """Log-table product equals schoolbook polynomial product mod modulus."""
    f = FieldCtx(3, 2)
    p = f.p

    def poly_of(idx):
        return [idx % p, idx // p]

    def idx_of(poly):
        return poly[0] + p * poly[1]

    for i in range(f.order):
        for j in range(f.order):
            prod = poly_mul_mod_p(poly_of(i), poly_of(j), p)
            # reduce by x^2 = -1 (modulus x^2 + 1)
            while len(prod) > 2:
                hi = prod.pop()
                prod[-2] = (prod[-2] - hi) % p
            while len(prod) < 2:
                prod.append(0)
            got = f.mul(f.element_at(i), f.element_at(j))
            assert got.index == idx_of(prod)


def test_pow_agrees_with_repeated_mul():
    f = FieldCtx(2, 4)
    rng = random.Random(7)
    for _ in range(50):
        a = f.element_at(rng.randrange(1, f.order))
        e = rng.randrange(0, 40)
        acc = f.one
        for _ in range(e):
            acc = f.mul(acc, a)
        assert f.pow(a, e) == acc


# ---------------------------------------------------------------------------
# generator, subgroups, subfields
# ---------------------------------------------------------------------------

def test_generator_has_full_order():
    for p, n in [(3, 2), (2, 4), (7, 2)]:
        f = FieldCtx(p, n)
        g = f.element_at(f.generator_index)
        seen = set()
        a = f.one
        for _ in range(f.order - 1):
            seen.add(a.index)
            a = f.mul(a, g)
        assert len(seen) == f.order - 1


def test_mu_subgroup_gf7():
    f = FieldCtx(7, 1)
    assert sorted(e.index for e in f.mu_subgroup(3)) == [1, 2, 4]
    assert sorted(e.index for e in f.mu_subgroup(2)) == [1, 6]
    assert sorted(e.index for e in f.mu_subgroup(6)) == [1, 2, 3, 4, 5, 6]


def test_mu_subgroup_sizes():
    f = FieldCtx(3, 2)
    for d in (1, 2, 4, 8):
        assert len(f.mu_subgroup(d)) == d
    with pytest.raises(ValueError):
        f.mu_subgroup(3)  # 3 does not divide 8


def test_subfield_indices_frozen():
    f9 = FieldCtx(3, 2)
    assert sorted(f9.subfield_indices(1)) == [0, 1, 2]
    f81 = FieldCtx(3, 4)
    assert sorted(f81.subfield_indices(2)) == [0, 1, 2, 42, 43, 44, 75, 76, 77]
    assert sorted(f81.subfield_indices(1)) == [0, 1, 2]
    assert len(f81.subfield_indices(4)) == 81


def test_subfield_is_multiplicatively_closed():
    f = FieldCtx(2, 4)
    sub = f.subfield_indices(2)
    for i in sub:
        for j in sub:
            a, b = f.element_at(i), f.element_at(j)
            assert f.mul(a, b).index in sub
            assert f.add(a, b).index in sub


def test_is_in_subfield_matches_fixed_points():
    # GF(p^m) inside GF(p^n) is exactly the fixed set of x -> x^(p^m)
    f = FieldCtx(2, 6)
    for m in (1, 2, 3):
        fixed = {e.index for e in f.elements()
                 if f.frobenius(e, m) == e}
        assert fixed == set(f.subfield_indices(m))


# ---------------------------------------------------------------------------
# Frobenius and trace
# ---------------------------------------------------------------------------

def test_frobenius_is_additive_and_multiplicative():
    f = FieldCtx(3, 4)
    rng = random.Random(99)
    for _ in range(100):
        a = f.element_at(rng.randrange(f.order))
        b = f.element_at(rng.randrange(f.order))
        fa, fb = f.frobenius(a, 1), f.frobenius(b, 1)
        assert f.frobenius(f.add(a, b), 1) == f.add(fa, fb)
        assert f.frobenius(f.mul(a, b), 1) == f.mul(fa, fb)


def test_frobenius_power_is_pth_power():
    f = FieldCtx(5, 2)
    for e in f.elements():
        assert f.frobenius(e, 1) == f.pow(e, 5)
        assert f.frobenius(e, 2) == e


def test_trace_lands_in_subfield_and_is_surjective():
    f = FieldCtx(3, 4)
    for m in (1, 2):
        sub = f.subfield_indices(m)
        hit = set()
        for e in f.elements():
            t = f.trace_to_subfield(e, m)
            assert t.index in sub
            hit.add(t.index)
        assert hit == set(sub)


def test_trace_fiber_sizes_gf81_to_gf3():
    f = FieldCtx(3, 4)
    counts = {}
    for e in f.elements():
        t = f.trace_to_subfield(e, 1).index
        counts[t] = counts.get(t, 0) + 1
    assert counts == {0: 27, 1: 27, 2: 27}


# ---------------------------------------------------------------------------
# bulk (vectorized) arithmetic vs scalar route
# ---------------------------------------------------------------------------

def test_bulk_matches_scalar_ops():
    f = FieldCtx(3, 4)
    b = f.bulk()
    xs = np.arange(f.order, dtype=np.int64)
    rng = random.Random(5)
    ys = np.array([rng.randrange(f.order) for _ in range(f.order)],
                  dtype=np.int64)
    add = b.add(xs, ys)
    sub = b.sub(xs, ys)
    mul = b.mul(xs, ys)
    for i in range(0, f.order, 7):
        x, y = f.element_at(int(xs[i])), f.element_at(int(ys[i]))
        assert add[i] == f.add(x, y).index
        assert sub[i] == f.sub(x, y).index
        assert mul[i] == f.mul(x, y).index


def test_bulk_pow_and_frob():
    f = FieldCtx(2, 4)
    b = f.bulk()
    xs = np.arange(f.order, dtype=np.int64)
    p3 = b.pow_const(xs, 3)
    fr = b.frob(xs, 2)
    for i in range(f.order):
        e = f.element_at(i)
        assert p3[i] == f.pow(e, 3).index
        assert fr[i] == f.frobenius(e, 2).index


def test_bulk_mul_scalar():
    f = FieldCtx(7, 2)
    b = f.bulk()
    xs = np.arange(f.order, dtype=np.int64)
    c = f.element_at(10)
    got = b.mul_scalar(c.index, xs)
    for i in range(0, f.order, 5):
        assert got[i] == f.mul(c, f.element_at(i)).index


# ---------------------------------------------------------------------------
# construction guards
# ---------------------------------------------------------------------------

def test_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        FieldCtx(6, 2)
    with pytest.raises(ValueError):
        FieldCtx(1, 3)


def test_rejects_order_above_cap():
    with pytest.raises(ValueError):
        FieldCtx(2, 5, cap=16)
    assert make_field(2, 4, cap=16).order == 16


def test_cap_default_allows_desk_scale():
    assert DEFAULT_SIZE_CAP >= 1 << 16


def test_field_equality_and_element_guard():
    f1, f2 = FieldCtx(3, 2), FieldCtx(3, 2)
    other = FieldCtx(5, 2)
    assert f1 == f2
    a = f1.element_at(4)
    b = other.element_at(4)
    with pytest.raises(ValueError):
        f1.add(a, b)
