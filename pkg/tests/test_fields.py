from fractions import Fraction

import pytest

from hayd.errors import FieldError
from hayd.fields import Field, field_ops, is_prime, prime_field, rationals


def test_field_ops_dispatch():
    q = rationals()
    assert field_ops(q, "inv", q.coerce(2)) == Fraction(1, 2)
    assert field_ops(prime_field(7), "inv", 2) == 4
    assert field_ops(q, "add", Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert field_ops(prime_field(5), "mul", 3, 4) == 2
    assert field_ops(q, "neg", Fraction(2)) == Fraction(-2)
    with pytest.raises(FieldError):
        field_ops(q, "inv", q.zero)
    with pytest.raises(FieldError):
        field_ops(q, "pow", q.one)


def test_inverse_over_rationals():
    q = rationals()
    assert q.inv(q.coerce(2)) == Fraction(1, 2)


def test_inverse_over_f7():
    f7 = prime_field(7)
    assert f7.inv(2) == 4  # 2*4 = 8 = 1 mod 7


def test_inverse_of_zero_is_an_error():
    for f in (rationals(), prime_field(5)):
        with pytest.raises(FieldError):
            f.inv(f.zero)


def test_prime_field_requires_prime_characteristic():
    with pytest.raises(FieldError):
        prime_field(6)
    with pytest.raises(FieldError):
        Field("prime-field", 1)


def test_is_prime_small():
    primes = [n for n in range(30) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_coerce_normalizes():
    q = rationals()
    x = q.coerce("4/6")
    assert x == Fraction(2, 3) and x.denominator == 3
    x = q.coerce("-3/6")
    assert x == Fraction(-1, 2) and x.denominator > 0
    f5 = prime_field(5)
    assert f5.coerce(-1) == 4
    assert f5.coerce("12") == 2


def test_coerce_rejects_garbage():
    with pytest.raises(FieldError):
        rationals().coerce("1/0")
    with pytest.raises(FieldError):
        prime_field(5).coerce("2/3")
    with pytest.raises(FieldError):
        prime_field(5).coerce(Fraction(1, 2))


def test_field_axioms_exhaustive_f5():
    f = prime_field(5)
    elems = list(range(5))
    for a in elems:
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in elems[1:]:
        assert f.mul(a, f.inv(a)) == 1


def test_results_stay_normalized():
    f5 = prime_field(5)
    assert f5.add(4, 4) == 3
    assert f5.neg(0) == 0
    assert 0 <= f5.mul(3, 4) < 5
    q = rationals()
    s = q.add(Fraction(1, 6), Fraction(1, 3))
    assert s.denominator == 2 and s.numerator == 1
