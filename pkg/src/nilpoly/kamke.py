"""An explicit polynomial parameterization inside a Kamke domain

    U = {(l_1, ..., l_B) : k_1 < l_1,  k_v l_1^v < l_v < K_v l_1^v  (v = 2..B)}.

With ``y_i = x_i + (k_1 + eps)/n`` the map ``x -> (l_1, ..., l_B)``,

    l_1 = sum_i y_i,    l_v = C_v sum_i y_i^v + D_v l_1^v + eps,

sends all of ``Q>=0^n`` into ``U``.  Everything here is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .mpoly import MPoly, make_layout


@dataclass(frozen=True)
class KamkeSpec:
    B: int
    k1: Fraction
    k: Mapping[int, Fraction]
    K: Mapping[int, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "k1", Fraction(self.k1))
        object.__setattr__(self, "k", {int(v): Fraction(x) for v, x in self.k.items()})
        object.__setattr__(self, "K", {int(v): Fraction(x) for v, x in self.K.items()})
        if self.B < 2:
            raise ValueError("B must be >= 2")
        if self.k1 <= 0:
            raise ValueError("k1 must be positive")
        want = set(range(2, self.B + 1))
        if set(self.k) != want or set(self.K) != want:
            raise ValueError(f"need bounds k_v and K_v for every v in 2..{self.B}")
        for v in want:
            if not 0 < self.k[v] < self.K[v]:
                raise ValueError(f"need 0 < k_{v} < K_{v}, got {self.k[v]} and {self.K[v]}")

    def contains(self, l: Sequence[Fraction]) -> bool:
        l1 = l[0]
        if not l1 > self.k1:
            return False
        return all(self.k[v] * l1**v < l[v - 1] < self.K[v] * l1**v for v in range(2, self.B + 1))


@dataclass(frozen=True)
class KamkeParam:
    n: int
    C: dict
    D: dict
    eps: Fraction
    offset: Fraction  # (k1 + eps) / n, so y_i = x_i + offset
    q: tuple = field(repr=False)

    @property
    def B(self) -> int:
        return len(self.q)

    def values(self, x: Sequence) -> tuple[Fraction, ...]:
        """``(l_1, ..., l_B)`` at ``x`` via the closed formula."""
        if len(x) != self.n:
            raise ValueError(f"point must have {self.n} coordinates")
        y = [Fraction(xi) + self.offset for xi in x]
        l1 = sum(y)
        out = [l1]
        for v in range(2, self.B + 1):
            out.append(self.C[v] * sum(yi**v for yi in y) + self.D[v] * l1**v + self.eps)
        return tuple(out)


def _ceil_root(r: Fraction, e: int) -> int:
    """Exact ``ceil(r^(1/e))`` for rational ``r > 0``."""
    m = max(int(float(r) ** (1 / e)) - 1, 0)
    while Fraction(m) ** e < r:
        m += 1
    while m > 0 and Fraction(m - 1) ** e >= r:
        m -= 1
    return m


def choose_n(spec: KamkeSpec) -> int:
    """``max(B, 1 + ceil(max_v (K_v/k_v)^(1/(v-1))))``; this forces ``n^(v-1) > K_v/k_v``, i.e. ``D_v > 0``."""
    return max(spec.B, 1 + max(_ceil_root(spec.K[v] / spec.k[v], v - 1) for v in spec.k))


def kamke_solve(spec: KamkeSpec) -> KamkeParam:
    n = choose_n(spec)
    C, D = {}, {}
    for v in range(2, spec.B + 1):
        shrink = 1 - Fraction(1, n ** (v - 1))
        C[v] = (spec.K[v] - spec.k[v]) / shrink
        D[v] = spec.K[v] - C[v]
        assert D[v] == spec.k[v] - C[v] / n ** (v - 1) and D[v] > 0
    eps = Fraction(1, 2) * min([Fraction(1)] + [(spec.K[v] - spec.k[v]) * spec.k1**v for v in C])
    offset = (spec.k1 + eps) / n

    layout = make_layout(("x", n))
    ys = [MPoly.var(i, layout) + offset for i in range(n)]
    l1 = sum(ys[1:], ys[0])
    q = [l1]
    for v in range(2, spec.B + 1):
        power_sum = sum((y**v for y in ys[1:]), ys[0] ** v)
        q.append(power_sum * C[v] + l1**v * D[v] + eps)
    return KamkeParam(n, C, D, eps, offset, tuple(q))


def kamke_membership(param: KamkeParam, spec: KamkeSpec, x: Sequence) -> bool:
    if any(Fraction(xi) < 0 for xi in x):
        raise ValueError("point must be componentwise >= 0")
    return spec.contains(param.values(x))


def jacobian(param: KamkeParam, x: Sequence) -> list[list[Fraction]]:
    """Rows ``dl_1/dx = 1`` and ``dl_v/dx_i = v C_v y_i^(v-1) + v D_v l_1^(v-1)``."""
    y = [Fraction(xi) + param.offset for xi in x]
    l1 = sum(y)
    rows = [[Fraction(1)] * param.n]
    for v in range(2, param.B + 1):
        rows.append([v * param.C[v] * yi ** (v - 1) + v * param.D[v] * l1 ** (v - 1) for yi in y])
    return rows


def bareiss_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer-scaled rows."""
    rows = []
    for r in matrix:
        den = lcm(*(Fraction(c).denominator for c in r)) if r else 1
        rows.append([int(Fraction(c) * den) for c in r])
    if not rows or not rows[0]:
        return 0
    m, ncols = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == m:
            break
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, ncols):
                rows[r][c] = (p * rows[r][c] - rows[r][col] * rows[rank][c]) // prev
            rows[r][col] = 0
        prev = p
        rank += 1
    return rank


def kamke_jacobian_rank(param: KamkeParam, x: Sequence) -> int:
    return bareiss_rank(jacobian(param, x))


def proof_inequalities(param: KamkeParam, spec: KamkeSpec, x: Sequence) -> dict[str, bool]:
    """The power-mean and multinomial inequalities behind membership, per ``v``."""
    n = param.n
    y = [Fraction(xi) + param.offset for xi in x]
    l1 = sum(y)
    power_mean, multinomial = True, True
    for v in range(2, param.B + 1):
        ps = sum(yi**v for yi in y)
        power_mean &= (l1 / n) ** v <= ps / n
        multinomial &= l1**v >= ps + (1 - Fraction(1, n ** (v - 1))) * (spec.k1 + param.eps) ** v
    return {"power_mean": power_mean, "multinomial": multinomial}


def random_point(rng: random.Random, n: int, hi: int = 10, max_den: int = 16) -> list[Fraction]:
    out = []
    for _ in range(n):
        q = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(0, hi * q), q))
    return out


def sample_report(param: KamkeParam, spec: KamkeSpec, count: int = 1000, seed: int = 0,
                  hi: int = 10) -> dict:
    rng = random.Random(seed)
    failures, pm_fail, mn_fail = [], 0, 0
    for _ in range(count):
        x = random_point(rng, param.n, hi)
        if not kamke_membership(param, spec, x):
            failures.append(x)
        ineq = proof_inequalities(param, spec, x)
        pm_fail += not ineq["power_mean"]
        mn_fail += not ineq["multinomial"]
    return {
        "samples": count,
        "members": count - len(failures),
        "failures": [[str(c) for c in x] for x in failures[:10]],
        "power_mean_violations": pm_fail,
        "multinomial_violations": mn_fail,
    }
