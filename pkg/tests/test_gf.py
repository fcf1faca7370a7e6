import itertools

import pytest
from hypothesis import given, settings, strategies as st

from modinv.errors import FieldMismatchError
from modinv.gf import (
    arith,
    extension_field,
    is_irreducible,
    make_field,
    multiplicative_order,
    prime_field,
    primitive_root_of_unity,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (5, 2)]


def brute_order(p, n):
    k, acc = 1, p % n
    while acc != 1 % n:
        acc, k = acc * p % n, k + 1
    return k


@pytest.mark.parametrize("p,roots,k", [(2, [3], 2), (3, [], 1), (2, [5], 4), (5, [3], 2), (3, [4, 2], 2), (2, [3, 7], 6)])
def test_make_field_degree(p, roots, k):
    f = make_field(p, roots)
    assert f.k == k
    assert f.size == p**k
    if not roots:
        assert tuple(f.modulus) == (0, 1)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 40))
def test_make_field_degree_matches_brute_force(p, n):
    if n % p == 0:
        return
    assert make_field(p, [n]).k == brute_order(p, n)


def test_basic_arith():
    f2, f4, f7 = prime_field(2), make_field(2, [3]), prime_field(7)
    assert arith(f2.one, f2.one, "add") == f2.zero
    z = f4.gen
    assert tuple(f4.modulus) == (1, 1, 1)
    assert arith(z, z, "mul") == z + 1
    assert arith(f7.element(3), f7.element(5), "div") == f7.element(2)
    assert f7.element(3) / f7.element(5) == f7.element(2)


def test_mismatch_and_division_errors(f2, f3):
    with pytest.raises(FieldMismatchError):
        f2.one + f3.one
    with pytest.raises(ZeroDivisionError):
        f3.one / f3.zero


def test_roots_of_unity_and_orders(f2, f4):
    f7 = prime_field(7)
    assert primitive_root_of_unity(f2, 1) == f2.one
    assert primitive_root_of_unity(f7, 3) == f7.element(2)
    assert primitive_root_of_unity(f4, 3) == f4.gen
    assert multiplicative_order(f7.one) == 1
    assert multiplicative_order(f7.element(2)) == 3
    assert multiplicative_order(f4.gen) == 3
    with pytest.raises(ValueError):
        primitive_root_of_unity(f7, 4)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k):
    f = extension_field(p, k) if k > 1 else prime_field(p)
    els = list(f.codes())
    if f.size > 16:
        els = els[:: max(1, f.size // 16)]
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a
        for c in els[:5]:
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    for a in f.codes():
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, f.size - 1) == 1


@settings(max_examples=60)
@given(st.sampled_from([(2, 8), (3, 4), (7, 2), (13, 1)]), st.data())
def test_field_axioms_sampled(pk, data):
    p, k = pk
    f = extension_field(p, k) if k > 1 else prime_field(p)
    a, b, c = (data.draw(st.integers(0, f.size - 1)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    if a:
        assert f.div(f.mul(a, b), a) == b


def test_irreducibility_against_root_scan():
    # degree 2 and 3 polynomials are irreducible iff they have no root
    for p in (2, 3, 5):
        for coeffs in itertools.product(range(p), repeat=3):
            for deg in (2, 3):
                poly = list(coeffs[:deg]) + [1]
                has_root = any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))
                assert is_irreducible(poly, p) == (not has_root)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_format_parse_round_trip(p, k):
    f = extension_field(p, k) if k > 1 else prime_field(p)
    for c in f.codes():
        assert f.parse(f.format(c)) == c


def test_format_examples(f4):
    f8 = extension_field(2, 3)
    assert f4.format(f4.gen.code) == "z"
    assert f4.format(f4.parse("z+1")) == "z+1"
    assert f8.parse("z^3") == f8.parse(f8.format(f8.parse("z^3")))
    assert prime_field(7).parse("2*3+4") == 3
