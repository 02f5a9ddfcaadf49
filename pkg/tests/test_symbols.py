import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelmult.symbols import egcd, find_prime_in_ap, is_prime, kronecker, legendre_oracle, sqrt_mod

odd = st.integers(min_value=-10**6, max_value=10**6).map(lambda n: 2 * n + 1)
ints = st.integers(min_value=-10**6, max_value=10**6)


def test_examples():
    assert kronecker(8, 5) == -1
    assert kronecker(-3, -1) == -1
    assert kronecker(3, -1) == 1
    assert kronecker(12345, 1) == 1
    assert legendre_oracle(4, 5) == 1
    assert legendre_oracle(2, 5) == -1
    assert legendre_oracle(10, 5) == 0
    assert sqrt_mod(6, 5) == 1
    assert sqrt_mod(2, 5) is None
    assert find_prime_in_ap(1, 4, 100) == 5
    g, x, y = egcd(5, 8)
    assert g == 1 and 5 * x + 8 * y == 1


def test_errors():
    with pytest.raises(ValueError):
        kronecker(0, 0)
    with pytest.raises(ValueError):
        legendre_oracle(3, 9)
    with pytest.raises(ValueError):
        find_prime_in_ap(2, 4, 100)
    assert find_prime_in_ap(1, 4, 5) is None


def test_standard_extension_values():
    assert kronecker(2, 8) == 0
    assert kronecker(5, 2) == -1 and kronecker(7, 2) == 1
    assert kronecker(0, 1) == 1 and kronecker(0, 3) == 0


def test_legendre_oracle_agreement_exhaustive():
    for p in range(3, 200):
        if is_prime(p):
            for c in range(1, 201):
                assert kronecker(c, p) == legendre_oracle(c, p)


@settings(max_examples=300)
@given(ints, ints, odd)
def test_numerator_multiplicative(c1, c2, d):
    assert kronecker(c1 * c2, d) == kronecker(c1, d) * kronecker(c2, d)


@settings(max_examples=300)
@given(ints, odd, odd)
def test_denominator_multiplicative(c, d1, d2):
    assert kronecker(c, d1 * d2) == kronecker(c, d1) * kronecker(c, d2)


@settings(max_examples=300)
@given(ints, odd, st.integers(-50, 50))
def test_numerator_periodic(c, d, k):
    c2 = c + k * d
    if d > 0 or c * c2 > 0:
        assert kronecker(c, d) == kronecker(c2, d)


@settings(max_examples=300)
@given(st.integers(-10**4, 10**4), odd, st.integers(-50, 50))
def test_denominator_periodic(c, d, k):
    if c % 4 == 0 and c:
        assert kronecker(c, d) == kronecker(c, d + k * c)
    if c % 4 == 2:
        assert kronecker(c, d) == kronecker(c, d + 4 * k * c)


@settings(max_examples=200)
@given(st.integers(0, 10**4), st.integers(2, 500).filter(is_prime).filter(lambda p: p > 2))
def test_sqrt_mod(c, p):
    x = sqrt_mod(c, p)
    if legendre_oracle(c, p) == -1:
        assert x is None
    else:
        assert 0 <= x < p and (x * x - c) % p == 0


@settings(max_examples=200)
@given(ints, ints)
def test_egcd(a, b):
    g, x, y = egcd(a, b)
    assert a * x + b * y == g and g >= 0


@given(st.integers(1, 30), st.integers(2, 30))
def test_prime_search_is_least(a, m):
    import math
    if math.gcd(a, m) != 1:
        return
    p = find_prime_in_ap(a, m, 10**4)
    assert p is not None and is_prime(p) and p % m == a % m
    assert not any(is_prime(n) for n in range(a % m or m, p, m))
