"""Polynomial maps ``Q>=0^N -> U_n(Q)`` and their difference calculus.

A :class:`PolyMap` is a unitriangular matrix whose entries are polynomials in
an active block ``t`` of ``N`` variables, possibly followed by parameter
blocks ``s1, s2, ...``.  Every application of a difference operator appends
one such block, which stands for a symbolic shift ``s`` ranging over the
whole semigroup.  A polynomial vanishes for every nonnegative shift iff it
is the zero polynomial, so identity tests on the symbolic result decide the
"for all s" quantifier exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import InternalError, LayoutError, RingError
from .mpoly import Block, Layout, MPoly, find_block, make_layout
from .scalars import NEG_INF, Degree
from .unitri import UniTri

T_BLOCK = "t"

LcDegree = tuple  # tuple[Degree, ...] of length n - 1, nondecreasing


class PolyMap:
    __slots__ = ("matrix", "blocks")

    def __init__(self, matrix: UniTri, blocks: Layout):
        blocks = tuple(blocks)
        if not blocks or blocks[0].name != T_BLOCK or blocks[0].start != 0:
            raise LayoutError("the first variable block must be the active block 't'")
        zero = matrix.zero
        if not isinstance(zero, MPoly) or zero.blocks != blocks:
            raise LayoutError("matrix entries must be polynomials in the map's layout")
        if zero.modulus is not None:
            raise RingError("polynomial maps are symbolic over Q only")
        for v in matrix.entries.values():
            if not isinstance(v, MPoly) or v.blocks != blocks or v.modulus is not None:
                raise LayoutError("every entry must share the map's block layout over Q")
        self.matrix = matrix
        self.blocks = blocks

    # construction

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], object], N: int = 1,
                     blocks: Layout | None = None) -> PolyMap:
        """Build from ``{(i, j): MPoly or number}``; missing entries are zero."""
        blocks = blocks if blocks is not None else make_layout((T_BLOCK, N))
        zero = MPoly.zero(blocks)
        conv = {}
        for key, v in entries.items():
            conv[key] = v if isinstance(v, MPoly) else MPoly.const(v, blocks)
        return cls(UniTri(n, conv, zero), blocks)

    @classmethod
    def identity(cls, n: int, N: int = 1) -> PolyMap:
        blocks = make_layout((T_BLOCK, N))
        return cls(UniTri.identity(n, MPoly.zero(blocks)), blocks)

    @classmethod
    def constant(cls, g: UniTri, N: int = 1) -> PolyMap:
        """The constant map with value ``g`` (rational entries)."""
        blocks = make_layout((T_BLOCK, N))
        return cls(g.map(lambda v: MPoly.const(v, blocks), MPoly.zero(blocks)), blocks)

    # basic properties

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def N(self) -> int:
        return self.blocks[0].length

    @property
    def shift_blocks(self) -> tuple[Block, ...]:
        return self.blocks[1:]

    @property
    def zero(self) -> MPoly:
        return self.matrix.zero

    def __getitem__(self, key):
        return self.matrix[key]

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def is_t_constant(self) -> bool:
        return not any(v.uses_block(T_BLOCK) for _, v in self.matrix.nonzero_entries())

    def is_constant(self) -> bool:
        return all(v.total_degree() == 0 for _, v in self.matrix.nonzero_entries())

    def entry_degrees(self) -> dict[tuple[int, int], Degree]:
        """Total degree in the active variables of each entry (``-inf`` for zero)."""
        return {key: v.degree_in(T_BLOCK) for key, v in self.matrix.entries.items()}

    def truncate(self, k: int) -> PolyMap:
        return PolyMap(self.matrix.truncate(k), self.blocks)

    def lc_height(self) -> int:
        return self.matrix.lcs_membership()

    def evaluate(self, point: Sequence) -> UniTri:
        """Value at a point of the full variable space (rational entries)."""
        return self.matrix.map(lambda p: p.evaluate(point), Fraction(0))

    def at(self, *t) -> UniTri:
        if self.shift_blocks:
            raise LayoutError("map still has shift parameters; use evaluate()")
        return self.evaluate(list(t))

    def map_entries(self, fn, blocks: Layout) -> PolyMap:
        return PolyMap(self.matrix.map(fn, MPoly.zero(blocks)), blocks)

    def extend(self, name: str, length: int) -> PolyMap:
        blocks = self.blocks + (Block(name, self.zero.arity, length),)
        return self.map_entries(lambda p: p.extend(name, length), blocks)

    def shift(self, name: str) -> PolyMap:
        """``t -> f(t + s)`` with ``s`` a fresh appended block called ``name``."""
        blocks = self.blocks + (Block(name, self.zero.arity, self.N),)
        return self.map_entries(lambda p: p.shift(name), blocks)

    def substitute(self, images: Sequence[MPoly], blocks: Layout) -> PolyMap:
        return self.map_entries(lambda p: p.substitute(images, blocks), blocks)

    def specialize(self, block: str, values: Sequence) -> PolyMap:
        blocks = MPoly.zero(self.blocks).specialize(block, values).blocks
        return self.map_entries(lambda p: p.specialize(block, values), blocks)

    def fresh_shift_name(self) -> str:
        names = {b.name for b in self.blocks}
        k = len(self.blocks)
        while f"s{k}" in names:
            k += 1
        return f"s{k}"

    # group structure

    def _check(self, other: PolyMap) -> None:
        if not isinstance(other, PolyMap):
            raise TypeError(f"expected PolyMap, got {type(other).__name__}")
        if other.n != self.n or other.blocks != self.blocks:
            raise LayoutError("polynomial maps differ in size or variable layout")

    def __mul__(self, other: PolyMap) -> PolyMap:
        if not isinstance(other, PolyMap):
            return NotImplemented
        self._check(other)
        return PolyMap(self.matrix * other.matrix, self.blocks)

    def inverse(self) -> PolyMap:
        return PolyMap(self.matrix.inverse(), self.blocks)

    def __pow__(self, k: int) -> PolyMap:
        return PolyMap(self.matrix ** k, self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.blocks == other.blocks and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.blocks, self.matrix))

    def __repr__(self) -> str:
        return f"PolyMap(n={self.n}, N={self.N}, {self.matrix!r})"


# difference operators


def diff_left(f: PolyMap, name: str | None = None) -> PolyMap:
    """``L_s(f)(t) = f(s + t) f(t)^-1`` with ``s`` a new symbolic block."""
    name = name or f.fresh_shift_name()
    return f.shift(name) * f.extend(name, f.N).inverse()


def diff_right(f: PolyMap, name: str | None = None) -> PolyMap:
    """``R_s(f)(t) = f(t)^-1 f(s + t)`` with ``s`` a new symbolic block."""
    name = name or f.fresh_shift_name()
    return f.extend(name, f.N).inverse() * f.shift(name)


# degrees


def _chain_best(d: Mapping[tuple[int, int], Degree], lo: int, hi: int) -> Degree:
    """Max over chains lo = k1 < ... < km = hi of the sum of d along the chain."""
    best = {lo: 0}
    for j in range(lo + 1, hi + 1):
        best[j] = max(best[i] + d[i, j] for i in range(lo, j))
    return best[hi]


def _clamped_degrees(f: PolyMap) -> dict:
    return {key: max(v, 0) for key, v in f.entry_degrees().items()}


def degree_bounds(f: PolyMap) -> tuple[Degree, Degree]:
    """``(lower, upper)`` with ``lower <= pm_degree(f) <= upper``.

    lower: max degree of the first-diagonal entries.  upper: max over chains
    ``1 = k1 <= ... <= kn = n`` of the summed entry degrees, where a zero entry
    off the diagonal counts as degree 0 (an entry that is identically zero is
    a polynomial of degree <= 0).  The identity map gets ``(-inf, -inf)``.
    """
    n = f.n
    if n == 1 or f.is_identity():
        return NEG_INF, NEG_INF
    d = f.entry_degrees()
    lower = max(d[k, k + 1] for k in range(1, n))
    upper = _chain_best(_clamped_degrees(f), 1, n)
    return lower, upper


def lc_degree_bounds(f: PolyMap) -> list[tuple[Degree, Degree]]:
    """Bracket each component of the lc-degree.

    Component 1 is exact (lower == upper).  Component ``i`` is bounded above by
    the best chain confined to a window ``[k, k + i]`` and below by component 1.
    """
    n = f.n
    if n == 1:
        return []
    d = f.entry_degrees()
    dc = _clamped_degrees(f)
    first = max(d[k, k + 1] for k in range(1, n))
    out = [(first, first)]
    for i in range(2, n):
        if f.truncate(i).is_identity():
            out.append((NEG_INF, NEG_INF))
            continue
        upper = max(_chain_best(dc, k, k + i) for k in range(1, n - i + 1))
        out.append((first, upper))
    return out


def _level_key(f: PolyMap) -> tuple:
    return (f.blocks, f.matrix.key())


def _degree_in_quotient(f: PolyMap, level: int, cap: Degree) -> Degree:
    """Degree of ``f`` modulo ``U_{n, level+1}``.

    Both L and R branches are followed at every level; results are memoised
    on the exact entry polynomials.
    """
    memo: dict = {}

    def rec(g: PolyMap, depth: int) -> Degree:
        key = _level_key(g)
        if key in memo:
            return memo[key]
        if g.is_identity():
            result = NEG_INF
        elif g.is_t_constant():
            result = 0
        else:
            if cap is NEG_INF or depth >= cap:
                raise InternalError(
                    f"difference depth {depth} exceeds the degree upper bound {cap}"
                )
            name = g.fresh_shift_name()
            left = diff_left(g, name).truncate(level)
            right = diff_right(g, name).truncate(level)
            result = 1 + max(rec(left, depth + 1), rec(right, depth + 1))
        memo[key] = result
        return result

    return rec(f.truncate(level), 0)


def pm_degree(f: PolyMap) -> Degree:
    """Exact degree: least ``d`` such that every L/R word of length ``d + 1`` kills ``f``."""
    if f.n == 1:
        return NEG_INF
    _, upper = degree_bounds(f)
    return _degree_in_quotient(f, f.n - 1, upper)


def pm_lc_degree(f: PolyMap) -> LcDegree:
    """``(d_1, ..., d_{n-1})`` with ``d_i`` the degree of ``f`` modulo ``U_{n,i+1}``."""
    if f.n == 1:
        return ()
    _, upper = degree_bounds(f)
    return tuple(_degree_in_quotient(f, i, upper) for i in range(1, f.n))


def superadditive_closure(d: Sequence[Degree]) -> LcDegree:
    """Least superadditive vector dominating the nondecreasing vector ``d``."""
    d = tuple(d)
    for a, b in zip(d, d[1:]):
        if b < a:
            raise ValueError(f"lc-degree vector must be nondecreasing, got {d}")
    e: list[Degree] = []
    for i, di in enumerate(d):
        # i is 0-based; component i+1 dominates e_j + e_{i+1-j}
        cands = [di] + ([e[i - 1]] if i else [])
        cands += [e[j] + e[i - 1 - j] for j in range(i)]
        e.append(max(cands))
    return tuple(e)


def is_superadditive(d: Sequence[Degree]) -> bool:
    d = tuple(d)
    n = len(d)
    if any(d[j] < d[i] for i in range(n) for j in range(i, n)):
        return False
    return all(d[i] + d[j] <= d[i + j + 1] for i in range(n) for j in range(n) if i + j + 1 < n)


def lc_leq(a: Sequence[Degree], b: Sequence[Degree]) -> bool:
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


# products and other operations


def pm_product(f: PolyMap, g: PolyMap) -> PolyMap:
    return f * g


def pm_inverse(f: PolyMap) -> PolyMap:
    return f.inverse()


def pm_commutator(f: PolyMap, g: PolyMap) -> PolyMap:
    f._check(g)
    return PolyMap(f.matrix.commutator(g.matrix), f.blocks)


def pm_conjugate(f: PolyMap, g: UniTri | PolyMap) -> PolyMap:
    """``t -> g f(t) g^-1`` for a constant ``g``."""
    if isinstance(g, PolyMap):
        if not g.is_constant():
            raise ValueError("conjugating element must be constant")
        gm = g.matrix.map(lambda p: p.constant_term(), Fraction(0))
    else:
        gm = g
    if any(isinstance(v, MPoly) for v in gm.entries.values()):
        raise ValueError("conjugating element must have numeric entries")
    if gm.n != f.n:
        raise LayoutError(f"size mismatch: {f.n} vs {gm.n}")
    lifted = gm.map(lambda v: MPoly.const(v, f.blocks), f.zero)
    return PolyMap(f.matrix.conjugate_by(lifted), f.blocks)


def pm_permute(f: PolyMap, sigma: Sequence[int]) -> PolyMap:
    """``sigma(f)``: permute the active variables of every entry (0-based one-line sigma)."""
    return f.map_entries(lambda p: p.permute(sigma, T_BLOCK), f.blocks)


def ordered_product(f: PolyMap, k: int) -> PolyMap:
    """``(t1, ..., tk) -> f(t1) f(t2) ... f(tk)`` on ``k * N`` active variables."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if f.shift_blocks:
        raise LayoutError("ordered product needs a map without shift parameters")
    N = f.N
    blocks = make_layout((T_BLOCK, k * N))
    result = None
    for c in range(k):
        index_map = [c * N + i for i in range(N)]
        copy = f.map_entries(lambda p: p.relayout(blocks, index_map), blocks)
        result = copy if result is None else result * copy
    return result


def pm_lc_height(f: PolyMap) -> int:
    return f.lc_height()


def chains(n: int):
    """All strictly increasing chains from 1 to n (for tests and reports)."""
    inner = range(2, n)
    for r in range(len(inner) + 1):
        for mid in combinations(inner, r):
            yield (1, *mid, n)
