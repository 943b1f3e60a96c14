"""Exact integer number theory over the divisor lattice of n.

Everything here is a pure function of its arguments. Counts are ordinary
Python ints, but every closed-form result is passed through :func:`checked`
so that a value outside the signed 128-bit range raises instead of silently
growing past the width the rest of the tooling assumes.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .errors import ArithmeticOverflow, CapacityError, ConsistencyError, DomainError, ParameterError

INT_BITS = 128
_INT_MAX = (1 << (INT_BITS - 1)) - 1
_INT_MIN = -(1 << (INT_BITS - 1))

MAX_ORDER = (1 << 63) - 1
DEFAULT_CLASS_CAP = 4096
CLASS_CAP_ENV = "POWERGRAPH_CLASS_CAP"


def checked(value: int) -> int:
    if not _INT_MIN <= value <= _INT_MAX:
        raise ArithmeticOverflow(f"value {value} exceeds {INT_BITS}-bit range")
    return value


def checked_mul(*factors: int) -> int:
    acc = 1
    for x in factors:
        acc = checked(acc * x)
    return acc


def exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticOverflow(f"{num} / {den} is not integral")
    return checked(q)


def resolve_class_cap(flag: int | None = None) -> int:
    """Class cap with precedence: explicit flag, then environment, then default."""
    if flag is not None:
        return flag
    env = os.environ.get(CLASS_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{CLASS_CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_CLASS_CAP


# Miller-Rabin with these bases is deterministic for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """n = p_1^{n_1} ... p_r^{n_r} with p_1 < ... < p_r."""

    n: int
    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.primes) != len(self.exponents) or not self.primes:
            raise DomainError("primes and exponents must be nonempty and equally long")
        if any(p >= q for p, q in zip(self.primes, self.primes[1:])):
            raise DomainError("primes must be strictly increasing")
        if not all(is_prime(p) for p in self.primes):
            raise DomainError(f"non-prime entry in {self.primes}")
        if any(e < 1 for e in self.exponents):
            raise DomainError("exponents must be positive")
        if prod(p**e for p, e in zip(self.primes, self.exponents)) != self.n:
            raise DomainError(f"factorization does not multiply back to {self.n}")

    @property
    def r(self) -> int:
        return len(self.primes)

    @cached_property
    def radical(self) -> int:
        """p_1 p_2 ... p_r."""
        return prod(self.primes)

    def p(self, a: int) -> int:
        """The a-th prime, 1-based."""
        self._check_index(a)
        return self.primes[a - 1]

    def e(self, a: int) -> int:
        """The a-th exponent n_a, 1-based."""
        self._check_index(a)
        return self.exponents[a - 1]

    def _check_index(self, a: int) -> None:
        if not 1 <= a <= self.r:
            raise ParameterError(f"prime index {a} outside [1, {self.r}]")

    def exponents_of(self, d: int) -> tuple[int, ...]:
        """Exponent vector of a divisor d of n."""
        if d < 1 or self.n % d:
            raise ParameterError(f"{d} does not divide {self.n}")
        out = []
        for p in self.primes:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            out.append(k)
        return tuple(out)

    def value_of(self, exps) -> int:
        return prod(p**k for p, k in zip(self.primes, exps))

    def totient_of(self, d: int) -> int:
        """phi(d) for a divisor d of n, from its exponent vector."""
        return _totient_from_exponents(self.primes, self.exponents_of(d))

    def __str__(self) -> str:
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in zip(self.primes, self.exponents))


def _totient_from_exponents(primes, exps) -> int:
    acc = 1
    for p, k in zip(primes, exps):
        if k:
            acc = checked(acc * p ** (k - 1) * (p - 1))
    return acc


@dataclass(frozen=True, order=True)
class DivisorClass:
    """A divisor d of n, standing for E_d (weight phi(d)) and S_d (its down-set)."""

    exponents: tuple[int, ...]
    value: int
    weight: int

    def divides(self, other: DivisorClass) -> bool:
        return all(x <= y for x, y in zip(self.exponents, other.exponents))

    def comparable(self, other: DivisorClass) -> bool:
        return self.divides(other) or other.divides(self)


def _wheel_steps():
    # 2 -> 3 -> 5 -> 7, then the mod-30 wheel.
    yield from (1, 2, 2)
    yield from itertools.cycle((4, 2, 4, 2, 4, 6, 2, 6))


def factorize(n: int) -> Factorization:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"order must be an integer, got {n!r}")
    if n < 2:
        raise DomainError("order must be at least 2")
    if n > MAX_ORDER:
        raise DomainError(f"order must be at most 2^63 - 1, got {n}")
    primes, exps = [], []
    m, p = n, 2
    steps = _wheel_steps()
    cofactor_prime = is_prime(m)
    while not cofactor_prime and p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            primes.append(p)
            exps.append(k)
            cofactor_prime = is_prime(m)
        p += next(steps)
    if m > 1:
        primes.append(m)
        exps.append(1)
    return Factorization(n, tuple(primes), tuple(exps))


def totient(c: DivisorClass) -> int:
    """phi(d) for the class of d; equals the number of generators of S_d."""
    return c.weight


def make_class(f: Factorization, exps) -> DivisorClass:
    exps = tuple(exps)
    return DivisorClass(exps, f.value_of(exps), _totient_from_exponents(f.primes, exps))


def divisor_count(f: Factorization) -> int:
    return prod(e + 1 for e in f.exponents)


def divisor_classes(f: Factorization, cap: int = DEFAULT_CLASS_CAP) -> list[DivisorClass]:
    """All divisor classes of n, sorted lexicographically by exponent vector."""
    count = divisor_count(f)
    if count > cap:
        raise CapacityError(f"divisor lattice too large: {count} classes exceeds cap {cap}")
    classes = [make_class(f, exps) for exps in itertools.product(*(range(e + 1) for e in f.exponents))]
    if sum(c.weight for c in classes) != f.n:
        raise ConsistencyError("totient-sum identity failed")
    return classes


def partial_totient_sum(f: Factorization, a: int, k: int, s: int) -> int:
    """Sum of phi(n / p_a^l) for l = k..s, via the closed form (multiply before divide)."""
    p, na = f.p(a), f.e(a)
    if not 0 <= k <= s <= na:
        raise ParameterError(f"need 0 <= k <= s <= n_a, got k={k}, s={s}, n_a={na}")
    top = p ** (s - k + 1) - (1 if s < na else 0)
    num = checked_mul(f.n // f.radical, f.totient_of(f.radical // p), top)
    return exact_div(num, p**s)


def double_totient_sum(f: Factorization, a: int, b: int, s: int, t: int) -> int:
    """Sum of phi(n / (p_a^k p_b^l)) over s <= k <= n_a, t <= l <= n_b."""
    if a == b:
        raise ParameterError("double_totient_sum needs a != b")
    pa, pb, na, nb = f.p(a), f.p(b), f.e(a), f.e(b)
    if not (0 <= s <= na and 0 <= t <= nb):
        raise ParameterError(f"need 0 <= s <= {na} and 0 <= t <= {nb}, got s={s}, t={t}")
    core = f.totient_of(f.n // (pa**na * pb**nb))
    return checked_mul(core, pa ** (na - s), pb ** (nb - t))
