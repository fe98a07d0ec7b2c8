import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrckit import gf
from lrckit.errors import DivisionByZero, FieldMismatch, NotPrimePower, TooLarge
from lrckit.gf import arith, elements, invert, make_field


def ref_is_reducible(low_coeffs, p):
    """Independent brute-force reducibility check: scan all factor pairs."""
    m = len(low_coeffs)
    full = list(low_coeffs) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    for d1 in range(1, m):
        d2 = m - d1
        for e1 in range(p**d1):
            f1 = [(e1 // p**i) % p for i in range(d1)] + [1]
            for e2 in range(p**d2):
                f2 = [(e2 // p**i) % p for i in range(d2)] + [1]
                if mul(f1, f2) == full:
                    return True
    return False


class TestMakeField:
    def test_prime_field(self):
        f = make_field(5)
        assert (f.p, f.m, f.irr) == (5, 1, ())

    def test_gf8_minimal_irreducible(self):
        f = make_field(8)
        assert (f.p, f.m) == (2, 3)
        assert f.irr == (1, 1, 0)
        # first three encodings are reducible, encoding 3 is not
        for enc in range(3):
            low = [(enc >> i) & 1 for i in range(3)]
            assert ref_is_reducible(low, 2)
        assert not ref_is_reducible([1, 1, 0], 2)

    def test_gf16_minimal_irreducible(self):
        assert make_field(16).irr == (1, 1, 0, 0)

    def test_not_prime_power(self):
        with pytest.raises(NotPrimePower):
            make_field(6)
        with pytest.raises(NotPrimePower):
            make_field(1)
        with pytest.raises(NotPrimePower):
            make_field(12)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            make_field((1 << 16) + 1)

    def test_deterministic(self):
        specs = {make_field(q) for q in (9, 9, 9)}
        assert len(specs) == 1
        assert make_field(27) == make_field(27)


class TestArith:
    def test_gf5_mul(self):
        f = make_field(5)
        assert arith(f.element(3), f.element(4), "mul").enc == 2

    def test_gf8_alpha_cubed(self):
        # alpha * alpha^2 reduces to alpha + 1 under x^3 + x + 1
        f = make_field(8)
        assert (f.element(2) * f.element(4)).enc == 3

    def test_additive_identity(self):
        for q in (5, 8, 9):
            f = make_field(q)
            for a in elements(f):
                assert (a + f.zero()) == a

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            make_field(5).element(1) + make_field(7).element(1)

    def test_unknown_kind(self):
        f = make_field(5)
        with pytest.raises(ValueError):
            arith(f.element(1), f.element(1), "div")


class TestInvert:
    def test_gf5(self):
        f = make_field(5)
        assert invert(f.element(2)).enc == 3

    def test_one_is_self_inverse(self):
        for q in (4, 7, 9):
            f = make_field(q)
            assert invert(f.one()) == f.one()

    def test_gf8_by_exhaustive_search(self):
        f = make_field(8)
        a = f.element(2)
        expected = next(x for x in elements(f) if (a * x).enc == 1)
        assert expected.enc == 5
        assert invert(a) == expected

    def test_zero(self):
        with pytest.raises(DivisionByZero):
            invert(make_field(9).zero())


class TestElements:
    def test_gf3(self):
        assert [e.enc for e in elements(make_field(3))] == [0, 1, 2]

    def test_gf4_order(self):
        assert [e.enc for e in elements(make_field(4))] == [0, 1, 2, 3]

    @pytest.mark.parametrize("q", [2, 9, 16, 25])
    def test_cardinality(self, q):
        assert len(elements(make_field(q))) == q


@pytest.mark.parametrize("q", [4, 5, 8, 9])
def test_axioms_exhaustive_small(q):
    f = make_field(q)
    elems = elements(f)
    zero, one = f.zero(), f.one()
    for a, b in itertools.product(elems, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a in elems:
        assert a + zero == a and a * one == a
        assert a - a == zero
        if a != zero:
            assert a * invert(a) == one
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_frobenius(q):
    f = make_field(q)
    p = f.p
    for a, b in itertools.product(elements(f), repeat=2):
        assert (a + b) ** p == a**p + b**p


@pytest.mark.parametrize("q", [3, 4, 8, 9, 16])
def test_multiplicative_order(q):
    f = make_field(q)
    for a in elements(f)[1:]:
        assert (a ** (q - 1)).enc == 1


def test_field_at_size_cap():
    q = 1 << 16
    f = make_field(q)
    assert len(elements(f)) == q
    rng = __import__("random").Random(0)
    for _ in range(50):
        a = f.element(rng.randrange(1, q))
        b = f.element(rng.randrange(1, q))
        assert (a * b) == (b * a)
        assert (a ** (q - 1)).enc == 1
        assert invert(a) * a == f.one()


@pytest.mark.parametrize("q", [8, 9, 16, 27])
def test_numpy_tables_match_scalar_ops(q):
    f = make_field(q)
    add_t, mul_t = gf.tables(f)
    elems = elements(f)
    for a, b in itertools.product(elems, repeat=2):
        assert add_t[a.enc, b.enc] == (a + b).enc
        assert mul_t[a.enc, b.enc] == (a * b).enc
    assert add_t.dtype == np.uint16 and mul_t.dtype == np.uint16


@given(st.sampled_from([7, 16, 64, 121]), st.data())
@settings(max_examples=60, deadline=None)
def test_axiom_properties_sampled(q, data):
    f = make_field(q)
    enc = st.integers(min_value=0, max_value=q - 1)
    a = f.element(data.draw(enc))
    b = f.element(data.draw(enc))
    c = f.element(data.draw(enc))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - b == a + (-b)
