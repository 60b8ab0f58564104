"""Polynomial sequences N_0 -> G.

Sequences into ``U_n(Z/m)`` are always represented by rational polynomials
that are evaluated and then reduced mod ``m``; coefficient identities mod m
say nothing about function identities (``t^2`` and ``t`` agree mod 2).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Callable, Iterable, Sequence

from .errors import InternalError, LayoutError, NotPolynomialError
from .mpoly import MPoly, lagrange_fit, make_layout
from .polymap import PolyMap, pm_degree
from .scalars import NEG_INF, ModInt
from .unitri import UniTri


def _check_sequence(f: PolyMap) -> None:
    if f.N != 1 or f.shift_blocks:
        raise LayoutError("a polynomial sequence needs exactly one active variable and no shift blocks")


def seq_eval(f: PolyMap, t: int, modulus: int | None = None) -> UniTri:
    """``f(t)``, reduced mod ``modulus`` when given (entries must then be integers)."""
    _check_sequence(f)
    if t < 0:
        raise ValueError("sequence index must be >= 0")
    value = f.evaluate([t])
    if modulus is None:
        return value
    return value.map(lambda v: ModInt(v, modulus), ModInt(0, modulus))


class _FastEval:
    """Integer Horner evaluation of every entry (common denominator per entry)."""

    def __init__(self, f: PolyMap):
        _check_sequence(f)
        self.rows = []
        for key, p in f.matrix.entries.items():
            deg = p.total_degree()
            if deg is NEG_INF:
                continue
            coeffs = [Fraction(0)] * (deg + 1)
            for (e,), c in p.terms.items():
                coeffs[e] = c
            den = lcm(*(c.denominator for c in coeffs))
            self.rows.append((key, [int(c * den) for c in reversed(coeffs)], den))

    def numerators(self, t: int) -> tuple:
        out = []
        for _, coeffs, _ in self.rows:
            v = 0
            for c in coeffs:
                v = v * t + c
            out.append(v)
        return tuple(out)

    def reduced(self, t: int, m: int) -> tuple:
        out = []
        for key, coeffs, den in self.rows:
            v = 0
            for c in coeffs:
                v = v * t + c
            if v % den:
                raise ValueError(f"entry {key} is not an integer at t={t}")
            out.append((v // den) % m)
        return tuple(out)


@dataclass(frozen=True)
class PeriodReport:
    period: int
    degree: object
    determining_set: tuple
    spot_checks: int


def seq_period(f: PolyMap, m: int, spot_checks: int = 100, seed: int = 0,
               horizon: int = 10**4) -> PeriodReport:
    """Least ``P >= 1`` with ``g(t + P) = g(t)`` on ``{0..d}``, ``g = f mod m``.

    ``g`` and its translate are polynomial sequences of degree <= d = deg f,
    and such sequences are determined by their values on ``{0..d}``; agreement
    there certifies the period.  The period is then spot-checked at random
    points up to ``horizon``.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    ev = _FastEval(f)
    d = pm_degree(f)
    top = 0 if d is NEG_INF else d
    determining = tuple(range(top + 1))
    nnz = sum(1 for _ in f.matrix.nonzero_entries())
    cap = m ** nnz * (top + 1)
    base = [ev.reduced(t, m) for t in determining]
    period = None
    for P in range(1, cap + 1):
        if all(ev.reduced(t + P, m) == base[t] for t in determining):
            period = P
            break
    if period is None:
        raise InternalError(f"no period found below the search cap {cap}")
    rng = random.Random(seed)
    for _ in range(spot_checks):
        t = rng.randint(0, horizon)
        if ev.reduced(t + period, m) != ev.reduced(t, m):
            raise InternalError(f"period {period} fails at t={t}")
    return PeriodReport(period, d, determining, spot_checks)


def seq_fit(samples: Sequence[tuple[int, UniTri]], entry_degree_bound: int) -> PolyMap:
    """Entrywise interpolation of rational unitriangular samples."""
    samples = list(samples)
    if not samples:
        raise ValueError("no samples")
    n = samples[0][1].n
    if any(g.n != n for _, g in samples):
        raise LayoutError("samples have different matrix sizes")
    blocks = make_layout(("t", 1))
    entries = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            try:
                p = lagrange_fit([(t, g[i, j]) for t, g in samples], entry_degree_bound)
            except NotPolynomialError as exc:
                raise NotPolynomialError(
                    f"not a polynomial sequence of claimed entry degree {entry_degree_bound}: "
                    f"entry ({i},{j}): {exc}"
                ) from None
            entries[i, j] = MPoly(p.terms, blocks)
    return PolyMap.from_entries(n, entries)


def multiplicity_bound(f: PolyMap) -> int:
    """Min degree over nonconstant entries: no value can repeat more often."""
    degs = [p.total_degree() for _, p in f.matrix.nonzero_entries() if p.total_degree() > 0]
    if not degs:
        raise ValueError("sequence is constant")
    return min(degs)


def seq_value_multiplicity(f: PolyMap, horizon: int) -> int:
    """Largest number of ``t`` in ``0..horizon`` sharing one value ``f(t)``."""
    multiplicity_bound(f)  # rejects constant sequences
    ev = _FastEval(f)
    counts = Counter(ev.numerators(t) for t in range(horizon + 1))
    return max(counts.values())


# the Fibonacci map in Z^2 x| Z

_A = ((1, 1), (1, 0))
_A_INV = ((0, 1), (1, -1))


def _mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _mat_pow(k: int):
    base = _A if k >= 0 else _A_INV
    k = abs(k)
    result = ((1, 0), (0, 1))
    while k:
        if k & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class SemidirectElem:
    """``(v, k)`` in ``Z^2 x| Z`` with ``(v, k)(w, l) = (v + A^k w, k + l)``, ``A = [[1,1],[1,0]]``.

    ``x = ((1,0),0)``, ``y = ((0,1),0)``, ``z = ((0,0),1)`` satisfy ``[x,y] = 1``,
    ``z x z^-1 = y x`` and ``z y z^-1 = x``.
    """

    v: tuple = (0, 0)
    k: int = 0

    def __mul__(self, other: SemidirectElem) -> SemidirectElem:
        a = _mat_pow(self.k)
        w = other.v
        return SemidirectElem(
            (self.v[0] + a[0][0] * w[0] + a[0][1] * w[1], self.v[1] + a[1][0] * w[0] + a[1][1] * w[1]),
            self.k + other.k,
        )

    def inverse(self) -> SemidirectElem:
        a = _mat_pow(-self.k)
        v = self.v
        return SemidirectElem((-(a[0][0] * v[0] + a[0][1] * v[1]), -(a[1][0] * v[0] + a[1][1] * v[1])), -self.k)

    def __pow__(self, e: int) -> SemidirectElem:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = SemidirectElem()
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return self.v == (0, 0) and self.k == 0


X = SemidirectElem((1, 0), 0)
Y = SemidirectElem((0, 1), 0)
Z = SemidirectElem((0, 0), 1)


def fib_map(n: int) -> SemidirectElem:
    """``z^n x z^-n``, which equals ``x^F(n+1) y^F(n)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Z**n * X * Z ** (-n)


def iterated_difference(func: Callable, word: str, t: int, mul: Callable, inv: Callable,
                        shift: int = 1, _memo: dict | None = None):
    """Evaluate ``D_{w[0]} D_{w[1]} ... D_{w[-1]} func`` at ``t``; ``w`` over ``{"L","R"}``."""
    memo = {} if _memo is None else _memo

    def ev(w: str, x: int):
        if not w:
            key = ("", x)
            if key not in memo:
                memo[key] = func(x)
            return memo[key]
        key = (w, x)
        if key in memo:
            return memo[key]
        inner = w[1:]
        later, now = ev(inner, x + shift), ev(inner, x)
        val = mul(later, inv(now)) if w[0] == "L" else mul(inv(now), later)
        memo[key] = val
        return val

    return ev(word, t)


def nonpoly_witness(func: Callable, mul: Callable, inv: Callable, is_identity: Callable,
                    depth: int, points: Iterable[int] = range(6), shift: int = 1) -> bool:
    """True iff no L/R word of length ``depth`` (all shifts ``shift``) kills ``func`` on ``points``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    points = list(points)
    memo: dict = {}
    for letters in product("LR", repeat=depth):
        word = "".join(letters)
        values = [iterated_difference(func, word, t, mul, inv, shift, memo) for t in points]
        if all(is_identity(v) for v in values):
            return False
    return True


def fib_nonpoly_witness(depth: int = 8) -> bool:
    return nonpoly_witness(fib_map, lambda a, b: a * b, lambda a: a.inverse(),
                           lambda a: a.is_identity(), depth)


def polymap_nonpoly_witness(f: PolyMap, depth: int) -> bool:
    """The same finite check for a genuine polynomial sequence."""
    return nonpoly_witness(lambda t: seq_eval(f, t), lambda a, b: a * b, lambda a: a.inverse(),
                           lambda a: a.is_identity(), depth)
