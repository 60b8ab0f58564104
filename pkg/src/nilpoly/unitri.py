"""Upper unitriangular matrices over a commutative ring.

Entries may be ``Fraction``, ``ModInt`` or ``MPoly``; the code only uses
``+``, ``-``, ``*`` and truthiness (nonzero test), so the same class serves
numeric group elements and matrices of polynomials.  Indices are 1-based
``(i, j)`` with ``1 <= i < j <= n``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import LayoutError, MembershipError, RingError
from .mpoly import MPoly
from .scalars import ModInt


def _ring_key(zero):
    if isinstance(zero, MPoly):
        return ("poly", zero.blocks, zero.modulus)
    if isinstance(zero, ModInt):
        return ("mod", zero.modulus)
    return ("rational",)


def _pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class UniTri:
    __slots__ = ("n", "entries", "zero", "_hash")

    def __init__(self, n: int, entries: Mapping[tuple[int, int], object] | None = None, zero=None):
        if n < 1:
            raise LayoutError(f"matrix size must be >= 1, got {n}")
        zero = Fraction(0) if zero is None else zero
        full = {}
        entries = entries or {}
        for (i, j) in entries:
            if not 1 <= i < j <= n:
                raise LayoutError(f"entry ({i},{j}) is not strictly upper triangular in size {n}")
        for key in _pairs(n):
            v = entries.get(key)
            if v is None:
                v = zero
            elif not isinstance(v, (MPoly, ModInt)):
                v = zero + v
            full[key] = v
        self.n = n
        self.entries = full
        self.zero = zero
        self._hash = None

    @classmethod
    def _raw(cls, n: int, entries: dict, zero) -> UniTri:
        u = object.__new__(cls)
        u.n, u.entries, u.zero, u._hash = n, entries, zero, None
        return u

    @classmethod
    def identity(cls, n: int, zero=None) -> UniTri:
        return cls(n, {}, zero)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, a, zero=None) -> UniTri:
        """``T_{i,j}(a) = I + a E_{i,j}``."""
        return cls(n, {(i, j): a}, zero)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], zero=None) -> UniTri:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise LayoutError("matrix must be square")
        entries = {}
        for i in range(n):
            for j in range(n):
                v = rows[i][j]
                if i == j and v != 1:
                    raise MembershipError(f"diagonal entry ({i + 1},{j + 1}) is {v}, not 1")
                if i > j and v != 0:
                    raise MembershipError(f"entry ({i + 1},{j + 1}) below the diagonal is nonzero")
                if i < j:
                    entries[i + 1, j + 1] = v
        return cls(n, entries, zero)

    def one(self):
        return self.zero + 1

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(key)
        if i < j:
            return self.entries[i, j]
        return self.one() if i == j else self.zero

    def to_rows(self) -> list[list]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def _check(self, other: UniTri) -> None:
        if not isinstance(other, UniTri):
            raise TypeError(f"expected UniTri, got {type(other).__name__}")
        if other.n != self.n:
            raise LayoutError(f"size mismatch: {self.n} vs {other.n}")
        if _ring_key(self.zero) != _ring_key(other.zero):
            raise RingError(f"ring mismatch: {_ring_key(self.zero)} vs {_ring_key(other.zero)}")

    # group law

    def __mul__(self, other: UniTri) -> UniTri:
        if not isinstance(other, UniTri):
            return NotImplemented
        self._check(other)
        a, b, n = self.entries, other.entries, self.n
        out = {}
        for i, j in a:
            v = a[i, j] + b[i, j]
            for k in range(i + 1, j):
                x = a[i, k]
                if x:
                    y = b[k, j]
                    if y:
                        v = v + x * y
            out[i, j] = v
        return UniTri._raw(n, out, self.zero)

    def _strict_mul(self, x: dict, y: dict) -> dict:
        # product of two strictly upper triangular matrices given as entry dicts
        out = {}
        for i, j in x:
            v = self.zero
            for k in range(i + 1, j):
                if x[i, k] and y[k, j]:
                    v = v + x[i, k] * y[k, j]
            out[i, j] = v
        return out

    def inverse(self) -> UniTri:
        """``I + sum_{k=1}^{n-1} (-T_u)^k`` where ``T = I + T_u``."""
        neg = {key: -v for key, v in self.entries.items()}
        acc = dict(neg)
        power = neg
        for _ in range(self.n - 2):
            power = self._strict_mul(power, neg)
            acc = {key: acc[key] + power[key] for key in acc}
        return UniTri._raw(self.n, acc, self.zero)

    def __pow__(self, k: int) -> UniTri:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = UniTri.identity(self.n, self.zero)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def commutator(self, other: UniTri) -> UniTri:
        """``[a, b] = a b a^-1 b^-1``."""
        return self * other * self.inverse() * other.inverse()

    def conjugate_by(self, g: UniTri) -> UniTri:
        """``g a g^-1``."""
        return g * self * g.inverse()

    # structure

    def is_identity(self) -> bool:
        return not any(self.entries.values())

    def diagonal(self, k: int) -> list:
        """Entries on the ``k``-th superdiagonal, top to bottom."""
        if not 1 <= k <= self.n - 1:
            raise ValueError(f"diagonal index must be in [1, {self.n - 1}], got {k}")
        return [self.entries[i, i + k] for i in range(1, self.n - k + 1)]

    def lcs_membership(self) -> int:
        """Largest ``k`` with this matrix in ``U_{n,k}``; ``n`` for the identity."""
        for k in range(1, self.n):
            if any(self.diagonal(k)):
                return k
        return self.n

    def phi(self, k: int) -> list:
        """The homomorphism ``U_{n,k} -> R^{n-k}`` reading off the ``k``-th diagonal."""
        if not 1 <= k <= self.n - 1:
            raise ValueError(f"k must be in [1, {self.n - 1}], got {k}")
        if self.lcs_membership() < k:
            raise MembershipError(f"not in U_{{{self.n},{k}}}")
        return self.diagonal(k)

    def truncate(self, k: int) -> UniTri:
        """Zero every diagonal beyond ``k``: the image in ``U_n / U_{n,k+1}``."""
        if not 0 <= k <= max(self.n - 1, 0):
            raise ValueError(f"truncation level must be in [0, {self.n - 1}], got {k}")
        out = {(i, j): (v if j - i <= k else self.zero) for (i, j), v in self.entries.items()}
        return UniTri._raw(self.n, out, self.zero)

    def map(self, fn: Callable, zero) -> UniTri:
        """Apply ``fn`` entrywise; ``zero`` is the zero of the target ring."""
        return UniTri(self.n, {key: fn(v) for key, v in self.entries.items()}, zero)

    def nonzero_entries(self) -> Iterable[tuple[tuple[int, int], object]]:
        return ((key, v) for key, v in self.entries.items() if v)

    # comparison / display

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniTri):
            return NotImplemented
        return (
            self.n == other.n
            and _ring_key(self.zero) == _ring_key(other.zero)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, _ring_key(self.zero), tuple(sorted(self.entries.items(), key=lambda kv: kv[0]))))
        return self._hash

    def key(self) -> tuple:
        return tuple(self.entries[p] for p in _pairs(self.n))

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.to_rows())
        return f"UniTri([{rows}])"


def commutator(a: UniTri, b: UniTri) -> UniTri:
    return a.commutator(b)
