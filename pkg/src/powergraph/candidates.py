"""Candidate cut-sets Z_a^s and X_{a,b}^{s,t} of P(C_n), plus the auxiliary sets.

Candidates are sets of divisor classes. Every size is produced twice: once
from its closed form and once by summing phi(d) over the enumerated member
classes. Construction refuses to return a candidate whose two sizes differ.

Prime indices are 1-based throughout, so ``z_candidate(f, 4, 1)`` is Z_4^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .arith import (
    DEFAULT_CLASS_CAP,
    DivisorClass,
    Factorization,
    checked,
    checked_mul,
    divisor_classes,
    double_totient_sum,
    exact_div,
)
from .errors import ConsistencyError, ParameterError

KIND_ORDER = {"Z": 0, "X": 1}


@dataclass(frozen=True)
class CutCandidate:
    kind: str
    params: tuple[int, ...]
    classes: tuple[DivisorClass, ...]  # sorted by divisor value
    size: int
    formula_size: int = field(repr=False)

    @property
    def values(self) -> frozenset[int]:
        return frozenset(c.value for c in self.classes)

    @property
    def label(self) -> str:
        if self.kind == "Z":
            a, s = self.params
            return f"Z_{a}^{s}"
        a, b, s, t = self.params
        return f"X_{{{a},{b}}}^{{{s},{t}}}"

    @property
    def sort_key(self):
        return (KIND_ORDER[self.kind], self.params)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "size": self.size,
            "classes": sorted(self.values),
        }


@dataclass(frozen=True)
class BoundaryLayers:
    l_size: int
    m_size: int
    n_size: int


def _classes(f: Factorization, classes) -> list[DivisorClass]:
    return divisor_classes(f, DEFAULT_CLASS_CAP) if classes is None else classes


def _weight(classes) -> int:
    return checked(sum(c.weight for c in classes))


def _check_range(name: str, value: int, hi: int) -> None:
    if not 1 <= value <= hi:
        raise ParameterError(f"{name}={value} outside [1, {hi}]")


def _check_pair(f: Factorization, a: int, b: int) -> None:
    f.p(a), f.p(b)
    if a == b:
        raise ParameterError(f"indices must differ, got a = b = {a}")


def _require_agree(what: str, formula: int, enumerated: int) -> None:
    if formula != enumerated:
        raise ConsistencyError(f"{what}: closed form {formula} != enumeration {enumerated}")


# -- Q_a^s: union of S_{n/(p_i p_a^s)}, i != a --------------------------------


def q_size(f: Factorization, a: int, s: int) -> int:
    if f.r < 2:
        raise ParameterError("no second prime")
    pa = f.p(a)
    _check_range("s", s, f.e(a))
    rest = f.radical // pa
    num = checked_mul(f.n // f.radical, rest - f.totient_of(rest))
    return exact_div(num, pa ** (s - 1))


def q_classes(f: Factorization, a: int, s: int, classes=None) -> list[DivisorClass]:
    pa = f.p(a)
    tops = [f.n // (f.p(i) * pa**s) for i in range(1, f.r + 1) if i != a]
    return [c for c in _classes(f, classes) if any(top % c.value == 0 for top in tops)]


# -- Q_{a,b}^s: union of S_{n/(p_i p_a^s)}, i not in {a, b} -------------------


def q_ab_size(f: Factorization, a: int, b: int, s: int) -> int:
    if f.r < 3:
        raise ParameterError(f"Q_{{a,b}}^s needs at least three primes, n={f.n} has {f.r}")
    _check_pair(f, a, b)
    pa, pb = f.p(a), f.p(b)
    _check_range("s", s, f.e(a))
    rest = f.radical // (pa * pb)
    num = checked_mul(f.n // f.radical, pb, rest - f.totient_of(rest))
    return exact_div(num, pa ** (s - 1))


def q_ab_classes(f: Factorization, a: int, b: int, s: int, classes=None) -> list[DivisorClass]:
    pa = f.p(a)
    tops = [f.n // (f.p(i) * pa**s) for i in range(1, f.r + 1) if i not in (a, b)]
    return [c for c in _classes(f, classes) if any(top % c.value == 0 for top in tops)]


# -- union of S_{n/(p_i p_a)} over i in I1 -------------------------------------


def union_subgroup_size(f: Factorization, I1, a: int) -> int:
    I1 = sorted(set(I1))
    if not I1:
        raise ParameterError("I1 must be nonempty")
    if a in I1:
        raise ParameterError(f"a={a} must not belong to I1={I1}")
    for i in (*I1, a):
        f.p(i)
    I2 = [j for j in range(1, f.r + 1) if j not in I1 and j != a]
    alpha = prod(f.p(i) for i in I1)
    phi_alpha = prod(f.p(i) - 1 for i in I1)
    return checked_mul(f.n // f.radical, prod(f.p(j) for j in I2), alpha - phi_alpha)


def union_subgroup_classes(f: Factorization, I1, a: int, classes=None) -> list[DivisorClass]:
    pa = f.p(a)
    tops = [f.n // (f.p(i) * pa) for i in sorted(set(I1))]
    return [c for c in _classes(f, classes) if any(top % c.value == 0 for top in tops)]


# -- first type -----------------------------------------------------------------


def z_size(f: Factorization, a: int, s: int) -> int:
    """|Z_a^s| from the closed form."""
    pa = f.p(a)
    rest = f.radical // pa
    scale = pa ** (s - 1)
    num = checked_mul(f.n // f.radical, rest + f.totient_of(rest) * (scale - 2))
    return checked(f.totient_of(f.n) + exact_div(num, scale))


def z_candidate(f: Factorization, a: int, s: int, classes=None) -> CutCandidate:
    if f.r < 2:
        raise ParameterError("complete graph has no cut-set")
    pa = f.p(a)
    _check_range("s", s, f.e(a))
    classes = _classes(f, classes)
    layer_values = {f.n // pa**l for l in range(s)}
    layers = [c for c in classes if c.value in layer_values]
    q = q_classes(f, a, s, classes)
    if set(layers) & set(q):
        raise ConsistencyError(f"Z_{a}^{s}: top layers overlap Q_{a}^{s}")
    _require_agree(f"|Q_{a}^{s}| (n={f.n})", q_size(f, a, s), _weight(q))
    members = tuple(sorted(layers + q, key=lambda c: c.value))
    size = _weight(members)
    formula = z_size(f, a, s)
    _require_agree(f"|Z_{a}^{s}| (n={f.n})", formula, size)
    return CutCandidate("Z", (a, s), members, size, formula)


# -- second type ----------------------------------------------------------------


def _box_sum(f: Factorization, a: int, b: int, s: int, t: int) -> int:
    """Sum of phi(n/(p_a^i p_b^j)) over 0 <= i <= s, 0 <= j <= t."""

    def tail(x, y):
        if x > f.e(a) or y > f.e(b):
            return 0
        return double_totient_sum(f, a, b, x, y)

    return checked(tail(0, 0) - tail(s + 1, 0) - tail(0, t + 1) + tail(s + 1, t + 1))


def x_size(f: Factorization, a: int, b: int, s: int, t: int) -> int:
    """|X_{a,b}^{s,t}| = |H| + |K| with H from box sums of phi and K = m - phi(m)."""
    m = f.n // (f.p(a) ** s * f.p(b) ** t)
    phi_m = f.totient_of(m)
    return checked(_box_sum(f, a, b, s, t) - phi_m + m - phi_m)


def _check_x_params(f: Factorization, a: int, b: int, s: int, t: int) -> None:
    if f.r < 3:
        raise ParameterError(f"X candidates need at least three primes, n={f.n} has {f.r}")
    _check_pair(f, a, b)
    _check_range("s", s, f.e(a))
    _check_range("t", t, f.e(b))


def x_candidate(f: Factorization, a: int, b: int, s: int, t: int, classes=None) -> CutCandidate:
    _check_x_params(f, a, b, s, t)
    classes = _classes(f, classes)
    m = f.n // (f.p(a) ** s * f.p(b) ** t)
    above = [c for c in classes if c.value % m == 0 and c.value != m]
    below = [c for c in classes if m % c.value == 0 and c.value != m]
    if set(above) & set(below):
        raise ConsistencyError(f"H and K intersect for n={f.n}, params {(a, b, s, t)}")
    members = tuple(sorted(above + below, key=lambda c: c.value))
    size = _weight(members)
    formula = x_size(f, a, b, s, t)
    _require_agree(f"|X_{{{a},{b}}}^{{{s},{t}}}| (n={f.n})", formula, size)
    return CutCandidate("X", (a, b, s, t), members, size, formula)


# -- boundary layers L, M, N of K_{a,b}^{s,t} -----------------------------------


def boundary_layer_classes(f: Factorization, a: int, b: int, s: int, t: int, classes=None):
    """(L, M, N) as class lists, straight from their definitions inside K."""
    _check_pair(f, a, b)
    _check_range("s", s, f.e(a))
    _check_range("t", t, f.e(b))
    m = f.n // (f.p(a) ** s * f.p(b) ** t)
    below = [c for c in _classes(f, classes) if m % c.value == 0 and c.value != m]
    dividing = [i for i in range(1, f.r + 1) if m % f.p(i) == 0]

    def outside(excluded):
        tops = [m // f.p(i) for i in dividing if i not in excluded]
        return [c for c in below if not any(top % c.value == 0 for top in tops)]

    return outside({a, b}), outside({a}), outside({b})


def boundary_layers(f: Factorization, a: int, b: int, s: int, t: int, classes=None) -> BoundaryLayers:
    _check_pair(f, a, b)
    pa, pb, na, nb = f.p(a), f.p(b), f.e(a), f.e(b)
    _check_range("s", s, na)
    _check_range("t", t, nb)
    box = pa ** (na - s) * pb ** (nb - t)
    l_size = checked_mul(f.totient_of(f.n // (pa**na * pb**nb)), box - f.totient_of(box))
    m_size = checked_mul(f.totient_of(f.n // (pa**na * pb**t)), pa ** (na - s - 1)) if s < na else 0
    n_size = checked_mul(f.totient_of(f.n // (pa**s * pb**nb)), pb ** (nb - t - 1)) if t < nb else 0
    layers = boundary_layer_classes(f, a, b, s, t, classes)
    for name, formula, members in zip("LMN", (l_size, m_size, n_size), layers):
        _require_agree(f"|{name}_{{{a},{b}}}^{{{s},{t}}}| (n={f.n})", formula, _weight(members))
    return BoundaryLayers(l_size, m_size, n_size)


# -- whole families ---------------------------------------------------------------


def all_z_candidates(f: Factorization, classes=None) -> list[CutCandidate]:
    classes = _classes(f, classes)
    return [z_candidate(f, a, s, classes) for a in range(1, f.r + 1) for s in range(1, f.e(a) + 1)]


def all_x_candidates(f: Factorization, classes=None) -> list[CutCandidate]:
    if f.r < 3:
        return []
    classes = _classes(f, classes)
    return [
        x_candidate(f, a, b, s, t, classes)
        for a in range(1, f.r + 1)
        for b in range(1, f.r + 1)
        if a != b
        for s in range(1, f.e(a) + 1)
        for t in range(1, f.e(b) + 1)
    ]
