"""Totient identities and inequalities the candidate sizes rely on.

Each ``check_*`` function evaluates one statement for a single n and returns
a list of :class:`Violation` (empty when it holds). :func:`run_all` bundles
them for sweeps; the CLI ``selftest`` command is a thin loop over it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod

from .arith import Factorization, divisor_classes, factorize
from .candidates import q_size, union_subgroup_classes, z_size


@dataclass(frozen=True)
class Violation:
    check: str
    n: int
    params: tuple
    detail: str


def _subsets(r: int, max_size: int | None = None):
    top = r if max_size is None else min(r, max_size)
    for t in range(1, top + 1):
        yield from combinations(range(1, r + 1), t)


def check_totient_monotone(f: Factorization) -> list[Violation]:
    """phi(n/p_i) >= phi(n/p_k) whenever i <= k."""
    phis = [f.totient_of(f.n // p) for p in f.primes]
    return [
        Violation("totient_monotone", f.n, (i + 1, k + 1), f"{phis[i]} < {phis[k]}")
        for i in range(f.r)
        for k in range(i + 1, f.r)
        if phis[i] < phis[k]
    ]


def eq2_equality_expected(f: Factorization, I) -> bool:
    ps = [f.p(i) for i in I]
    return (tuple(I) == (1,) and ps == [2]) or (tuple(I) == (1, 2) and ps == [2, 3])


def eq2_equality_cases(f: Factorization) -> list[tuple[int, ...]]:
    out = []
    for I in _subsets(f.r):
        eta = prod(f.p(i) for i in I)
        if (len(I) + 1) * prod(f.p(i) - 1 for i in I) == eta:
            out.append(I)
    return out


def check_radical_totient_bound(f: Factorization) -> list[Violation]:
    """(t+1) phi(prod_I p_i) >= prod_I p_i, with equality only in the two small cases."""
    out = []
    for I in _subsets(f.r):
        eta = prod(f.p(i) for i in I)
        lhs = (len(I) + 1) * prod(f.p(i) - 1 for i in I)
        if lhs < eta:
            out.append(Violation("radical_totient_bound", f.n, I, f"{lhs} < {eta}"))
        elif (lhs == eta) != eq2_equality_expected(f, I):
            out.append(Violation("radical_totient_bound", f.n, I, f"equality status wrong: {lhs} vs {eta}"))
    return out


def check_inclusion_exclusion(f: Factorization, max_size: int = 4) -> list[Violation]:
    """eta - phi(eta) equals the alternating sum of eta / prod_J p_j over nonempty J of I."""
    out = []
    for I in _subsets(f.r, max_size):
        ps = [f.p(i) for i in I]
        eta = prod(ps)
        alt = sum((-1) ** (len(J) - 1) * (eta // prod(J)) for J in _subsets_of(ps))
        if eta - prod(p - 1 for p in ps) != alt:
            out.append(Violation("inclusion_exclusion", f.n, I, f"{eta} - phi != {alt}"))
    return out


def _subsets_of(items):
    for t in range(1, len(items) + 1):
        yield from combinations(items, t)


def check_top_layer_beats_kernel(f: Factorization) -> list[Violation]:
    """phi(n/p_j) > n/(p_j p_r) - phi(n/(p_j p_r)) for j < r."""
    out = []
    pr = f.primes[-1]
    for j in range(1, f.r):
        pj = f.p(j)
        lhs = f.totient_of(f.n // pj)
        m = f.n // (pj * pr)
        rhs = m - f.totient_of(m)
        if not lhs > rhs:
            out.append(Violation("top_layer_beats_kernel", f.n, (j,), f"{lhs} <= {rhs}"))
    return out


def check_layer_plus_union(f: Factorization, classes=None) -> list[Violation]:
    """phi(n/p_a) + |T| > |Q_r^1| with T the union of S_{n/(p_b p_j)}, j not in {a, b}, p_b > 2."""
    if f.r < 3:
        return []
    classes = divisor_classes(f) if classes is None else classes
    out = []
    bound = q_size(f, f.r, 1)
    for a in range(1, f.r + 1):
        for b in range(1, f.r + 1):
            if a == b or f.p(b) == 2:
                continue
            rest = [j for j in range(1, f.r + 1) if j not in (a, b)]
            t_size = sum(c.weight for c in union_subgroup_classes(f, rest, b, classes))
            lhs = f.totient_of(f.n // f.p(a)) + t_size
            if not lhs > bound:
                out.append(Violation("layer_plus_union", f.n, (a, b), f"{lhs} <= {bound}"))
    return out


def check_q_monotone(f: Factorization) -> list[Violation]:
    """For r >= 3: |Q_a^1| > |Q_b^1| and |Z_a^1| > |Z_b^1| whenever a < b."""
    if f.r < 3:
        return []
    out = []
    for a, b in combinations(range(1, f.r + 1), 2):
        if not q_size(f, a, 1) > q_size(f, b, 1):
            out.append(Violation("q_monotone", f.n, (a, b), f"|Q_{a}^1| <= |Q_{b}^1|"))
        if not z_size(f, a, 1) > z_size(f, b, 1):
            out.append(Violation("q_monotone", f.n, (a, b), f"|Z_{a}^1| <= |Z_{b}^1|"))
    return out


def z_trend(f: Factorization, a: int) -> int:
    """Sign of 2 phi(R/p_a) - R/p_a, R the radical: +1 predicts growth in s, -1 decay."""
    rest = f.radical // f.p(a)
    diff = 2 * f.totient_of(rest) - rest
    return (diff > 0) - (diff < 0)


def check_z_monotone(f: Factorization) -> list[Violation]:
    """For r >= 3 and n_a >= 2, |Z_a^s| is strictly monotone in s, direction set by z_trend."""
    if f.r < 3:
        return []
    out = []
    for a in range(1, f.r + 1):
        if f.e(a) < 2:
            continue
        trend = z_trend(f, a)
        sizes = [z_size(f, a, s) for s in range(1, f.e(a) + 1)]
        steps = {(y > x) - (y < x) for x, y in zip(sizes, sizes[1:])}
        if trend == 0 or steps != {trend}:
            out.append(Violation("z_monotone", f.n, (a,), f"trend {trend}, sizes {sizes}"))
    return out


def check_r2_even_tie(f: Factorization) -> list[Violation]:
    """r = 2, p_1 = 2: all |Z_2^s| coincide."""
    if f.r != 2 or f.primes[0] != 2:
        return []
    sizes = {z_size(f, 2, s) for s in range(1, f.e(2) + 1)}
    return [] if len(sizes) == 1 else [Violation("r2_even_tie", f.n, (), f"sizes {sorted(sizes)}")]


CHECKS = {
    "totient_monotone": check_totient_monotone,
    "radical_totient_bound": check_radical_totient_bound,
    "inclusion_exclusion": check_inclusion_exclusion,
    "top_layer_beats_kernel": check_top_layer_beats_kernel,
    "layer_plus_union": check_layer_plus_union,
    "q_monotone": check_q_monotone,
    "z_monotone": check_z_monotone,
    "r2_even_tie": check_r2_even_tie,
}


def run_all(n: int) -> list[Violation]:
    f = factorize(n)
    return [v for check in CHECKS.values() for v in check(f)]
