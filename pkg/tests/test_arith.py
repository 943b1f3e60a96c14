from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from powergraph.arith import (
    CLASS_CAP_ENV,
    DEFAULT_CLASS_CAP,
    MAX_ORDER,
    Factorization,
    checked,
    checked_mul,
    divisor_classes,
    double_totient_sum,
    exact_div,
    factorize,
    is_prime,
    partial_totient_sum,
    resolve_class_cap,
)
from powergraph.errors import ArithmeticOverflow, CapacityError, DomainError, ParameterError


def naive_phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def naive_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_factorize_examples():
    f = factorize(360)
    assert f.primes == (2, 3, 5) and f.exponents == (3, 2, 1)
    assert f.r == 3 and f.radical == 30
    assert factorize(2).primes == (2,)
    big = factorize(2**61 - 1)
    assert big.primes == (2**61 - 1,) and big.exponents == (1,)


@pytest.mark.parametrize("n", [0, 1, -5])
def test_factorize_rejects_small(n):
    with pytest.raises(DomainError):
        factorize(n)


def test_factorize_rejects_huge():
    with pytest.raises(DomainError):
        factorize(MAX_ORDER + 1)


@given(st.integers(2, 10**6))
def test_factorize_matches_trial_division(n):
    f = factorize(n)
    assert dict(zip(f.primes, f.exponents)) == naive_factor(n)
    assert list(f.primes) == sorted(f.primes)


@given(st.integers(2, 10**5))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == (naive_factor(n) == {n: 1})


@given(st.integers(2, 3000))
def test_totient_matches_gcd_count(n):
    assert factorize(n).totient_of(n) == naive_phi(n)


@settings(max_examples=50)
@given(st.integers(2, 5000))
def test_divisor_classes_cover_group(n):
    f = factorize(n)
    classes = divisor_classes(f)
    assert sorted(c.value for c in classes) == [d for d in range(1, n + 1) if n % d == 0]
    assert sum(c.weight for c in classes) == n
    assert [c.exponents for c in classes] == sorted(c.exponents for c in classes)
    for c in classes:
        assert c.weight == naive_phi(c.value)


def test_divisor_cap():
    f = factorize(720720)
    with pytest.raises(CapacityError):
        divisor_classes(f, cap=10)


def test_factorization_validation_and_index_errors():
    with pytest.raises(DomainError):
        Factorization(12, (3, 2), (1, 2))
    f = factorize(12)
    with pytest.raises(ParameterError):
        f.p(0)
    with pytest.raises(ParameterError):
        f.e(3)


def test_checked_arithmetic():
    assert checked(2**127 - 1) == 2**127 - 1
    with pytest.raises(ArithmeticOverflow):
        checked(2**127)
    with pytest.raises(ArithmeticOverflow):
        checked_mul(2**64, 2**64)
    assert exact_div(12, 4) == 3
    with pytest.raises(ArithmeticOverflow):
        exact_div(7, 2)


def test_class_cap_precedence(monkeypatch):
    monkeypatch.delenv(CLASS_CAP_ENV, raising=False)
    assert resolve_class_cap() == DEFAULT_CLASS_CAP
    monkeypatch.setenv(CLASS_CAP_ENV, "64")
    assert resolve_class_cap() == 64
    assert resolve_class_cap(32) == 32


def test_partial_sum_examples():
    f = factorize(72)  # 2^3 3^2
    assert partial_totient_sum(f, 1, 0, 3) == sum(naive_phi(72 // 2**l) for l in range(4))
    assert partial_totient_sum(f, 2, 1, 1) == naive_phi(24)
    with pytest.raises(ParameterError):
        partial_totient_sum(f, 1, 2, 1)


def test_double_sum_examples():
    f = factorize(210)
    assert double_totient_sum(f, 3, 4, 1, 1) == naive_phi(6)
    with pytest.raises(ParameterError):
        double_totient_sum(f, 2, 2, 1, 1)


orders = st.integers(2, 20000).map(factorize)


@settings(max_examples=200)
@given(orders, st.data())
def test_partial_sum_matches_loop(f, data):
    a = data.draw(st.integers(1, f.r))
    na = f.e(a)
    s = data.draw(st.integers(0, na))
    k = data.draw(st.integers(0, s))
    expected = sum(naive_phi(f.n // f.p(a) ** l) for l in range(k, s + 1))
    assert partial_totient_sum(f, a, k, s) == expected


@settings(max_examples=200)
@given(orders.filter(lambda f: f.r >= 2), st.data())
def test_double_sum_matches_loop(f, data):
    a, b = data.draw(st.permutations(range(1, f.r + 1)))[:2]
    s = data.draw(st.integers(0, f.e(a)))
    t = data.draw(st.integers(0, f.e(b)))
    expected = sum(
        naive_phi(f.n // (f.p(a) ** k * f.p(b) ** l))
        for k in range(s, f.e(a) + 1)
        for l in range(t, f.e(b) + 1)
    )
    assert double_totient_sum(f, a, b, s, t) == expected


def test_documented_examples():
    assert factorize(12).exponents == (2, 1)
    assert factorize(9).primes == (3,) and factorize(9).exponents == (2,)
    f = factorize(210)
    assert f.totient_of(1) == 1 and f.totient_of(210) == 48 and factorize(12).totient_of(12) == 4
    assert len(divisor_classes(f)) == 16
    f = factorize(12)
    assert [c.value for c in sorted(divisor_classes(f), key=lambda c: c.value)] == [1, 2, 3, 4, 6, 12]
    assert partial_totient_sum(f, 1, 1, 2) == 4
    assert partial_totient_sum(f, 1, 1, 1) == 2
    assert partial_totient_sum(f, 1, 0, 0) == 4
    assert double_totient_sum(f, 1, 2, 1, 1) == 2
    assert double_totient_sum(f, 1, 2, 0, 0) == 12
    with pytest.raises(DomainError, match="order must be at least 2"):
        factorize(1)
