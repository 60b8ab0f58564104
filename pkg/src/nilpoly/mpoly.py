"""Sparse multivariate polynomials over Q or Z/m with named variable blocks.

A polynomial stores a map ``exponent tuple -> nonzero coefficient``.  The
variables are grouped into consecutive named blocks, e.g. the active block
``t`` of a polynomial map followed by shift blocks ``s1, s2, ...`` that
difference operators append.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import LayoutError, NotPolynomialError, RingError
from .scalars import NEG_INF, Degree, ModInt, Scalar, format_rational, to_scalar


@dataclass(frozen=True)
class Block:
    name: str
    start: int
    length: int

    @property
    def stop(self) -> int:
        return self.start + self.length


Layout = tuple  # tuple[Block, ...]


def make_layout(*spec: tuple[str, int]) -> Layout:
    """``make_layout(("t", 2), ("s1", 2))`` -> contiguous blocks."""
    blocks, start = [], 0
    names = set()
    for name, length in spec:
        if name in names:
            raise LayoutError(f"duplicate block name {name!r}")
        if length < 0:
            raise LayoutError(f"negative block length for {name!r}")
        names.add(name)
        blocks.append(Block(name, start, length))
        start += length
    return tuple(blocks)


def layout_arity(blocks: Layout) -> int:
    return blocks[-1].stop if blocks else 0


def find_block(blocks: Layout, name: str) -> Block:
    for b in blocks:
        if b.name == name:
            return b
    raise LayoutError(f"no block named {name!r}")


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MPoly:
    __slots__ = ("terms", "blocks", "modulus", "_hash")

    def __init__(
        self,
        terms: Mapping[tuple[int, ...], object] | None = None,
        blocks: Layout = (),
        modulus: int | None = None,
    ):
        arity = layout_arity(blocks)
        clean: dict[tuple[int, ...], Scalar] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise LayoutError(f"exponent vector {exps} has length {len(exps)}, expected {arity}")
            if any(e < 0 for e in exps):
                raise LayoutError(f"negative exponent in {exps}")
            c = to_scalar(c, modulus)
            if c:
                clean[exps] = c
        self.terms = clean
        self.blocks = tuple(blocks)
        self.modulus = modulus
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, blocks: Layout, modulus: int | None) -> MPoly:
        p = object.__new__(cls)
        p.terms = terms
        p.blocks = blocks
        p.modulus = modulus
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, blocks: Layout, modulus: int | None = None) -> MPoly:
        return cls._raw({}, tuple(blocks), modulus)

    @classmethod
    def const(cls, c, blocks: Layout, modulus: int | None = None) -> MPoly:
        return cls({(0,) * layout_arity(blocks): c}, blocks, modulus)

    @classmethod
    def var(cls, index: int, blocks: Layout, block: str | None = None, modulus: int | None = None) -> MPoly:
        """The variable ``index`` (0-based) of ``block`` (default: first block)."""
        b = find_block(blocks, block) if block is not None else blocks[0]
        if not 0 <= index < b.length:
            raise LayoutError(f"variable index {index} out of range for block {b.name!r}")
        exps = [0] * layout_arity(blocks)
        exps[b.start + index] = 1
        return cls._raw({tuple(exps): to_scalar(1, modulus)}, tuple(blocks), modulus)

    @classmethod
    def univariate(cls, coeffs: Sequence, blocks: Layout | None = None) -> MPoly:
        """``coeffs[k]`` is the coefficient of ``t**k``; default layout is one variable ``t``."""
        blocks = blocks if blocks is not None else make_layout(("t", 1))
        if layout_arity(blocks) != 1:
            raise LayoutError("univariate polynomial needs a one-variable layout")
        return cls({(k,): c for k, c in enumerate(coeffs)}, blocks)

    # basic queries

    @property
    def arity(self) -> int:
        return layout_arity(self.blocks)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> Degree:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, block: str) -> Degree:
        b = find_block(self.blocks, block)
        if not self.terms:
            return NEG_INF
        return max(sum(e[b.start:b.stop]) for e in self.terms)

    def uses_block(self, block: str) -> bool:
        b = find_block(self.blocks, block)
        return any(any(e[b.start:b.stop]) for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.arity, to_scalar(0, self.modulus))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # arithmetic

    def _check(self, other: MPoly) -> None:
        if self.modulus != other.modulus:
            raise RingError(f"ring mismatch: {self._ring_name()} vs {other._ring_name()}")
        if self.blocks != other.blocks:
            raise LayoutError(f"block layout mismatch: {self.blocks} vs {other.blocks}")

    def _ring_name(self) -> str:
        return "Q" if self.modulus is None else f"Z/{self.modulus}"

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ModInt)):
            return MPoly.const(other, self.blocks, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(out, self.blocks, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.blocks, self.modulus)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModInt)):
            c = to_scalar(other, self.modulus)
            if not c:
                return MPoly.zero(self.blocks, self.modulus)
            return MPoly._raw({e: v * c for e, v in self.terms.items()}, self.blocks, self.modulus)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.blocks, self.modulus)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw({e: c for e, c in out.items() if c}, self.blocks, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(1, self.blocks, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.modulus == other.modulus and self.blocks == other.blocks and self.terms == other.terms
        if isinstance(other, (int, Fraction, ModInt)):
            return self == MPoly.const(other, self.blocks, self.modulus)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.blocks, self.modulus, frozenset(self.terms.items())))
        return self._hash

    # layout changes

    def extend(self, name: str, length: int) -> MPoly:
        """Append an unused block of ``length`` variables."""
        if any(b.name == name for b in self.blocks):
            raise LayoutError(f"duplicate block name {name!r}")
        blocks = self.blocks + (Block(name, self.arity, length),)
        pad = (0,) * length
        return MPoly._raw({e + pad: c for e, c in self.terms.items()}, blocks, self.modulus)

    def shift(self, name: str, block: str = "t") -> MPoly:
        """Substitute ``t_i -> t_i + s_i`` with ``s`` a fresh block called ``name``.

        The fresh block is appended, so the arity grows by the length of ``block``.
        """
        b = find_block(self.blocks, block)
        shifted = self.extend(name, b.length)
        base = self.arity
        out: dict = {}
        for e, c in shifted.terms.items():
            splits = []
            for i in range(b.length):
                k = e[b.start + i]
                splits.append([(a, k - a, comb(k, a)) for a in range(k + 1)])
            for choice in itertools.product(*splits):
                ne = list(e)
                coeff = c
                for i, (a, rest, binom) in enumerate(choice):
                    ne[b.start + i] = a
                    ne[base + i] = rest
                    if binom != 1:
                        coeff = coeff * binom
                key = tuple(ne)
                v = out.get(key)
                out[key] = coeff if v is None else v + coeff
        return MPoly._raw({e: c for e, c in out.items() if c}, shifted.blocks, self.modulus)

    def permute(self, sigma: Sequence[int], block: str = "t") -> MPoly:
        """Act by ``sigma`` (0-based one-line notation) on the variables of ``block``.

        Variable ``t_i`` is replaced by ``t_{sigma[i]}``, so ``sigma(f)(t) = f(t_sigma(0), ...)``.
        This is a left action: ``p.permute(tau).permute(sigma) == p.permute(sigma o tau)``.
        """
        b = find_block(self.blocks, block)
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(b.length)):
            raise ValueError(f"{sigma} is not a permutation of 0..{b.length - 1}")
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i in range(b.length):
                ne[b.start + sigma[i]] = e[b.start + i]
            out[tuple(ne)] = c
        return MPoly._raw(out, self.blocks, self.modulus)

    def relayout(self, blocks: Layout, index_map: Sequence[int]) -> MPoly:
        """Move variable ``i`` to position ``index_map[i]`` of the new layout."""
        if len(index_map) != self.arity:
            raise LayoutError("index map length must equal arity")
        arity = layout_arity(blocks)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * arity
            for i, k in enumerate(e):
                if k:
                    ne[index_map[i]] += k
            key = tuple(ne)
            v = out.get(key)
            out[key] = c if v is None else v + c
        return MPoly._raw({e: c for e, c in out.items() if c}, tuple(blocks), self.modulus)

    def substitute(self, images: Sequence[MPoly], blocks: Layout) -> MPoly:
        """Replace variable ``i`` by ``images[i]`` (all living in ``blocks``)."""
        if len(images) != self.arity:
            raise LayoutError("need one image per variable")
        result = MPoly.zero(blocks, self.modulus)
        powers: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            if (i, k) not in powers:
                powers[i, k] = images[i] ** k
            return powers[i, k]

        for e, c in self.terms.items():
            term = MPoly.const(c, blocks, self.modulus)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def specialize(self, block: str, values: Sequence) -> MPoly:
        """Set the variables of ``block`` to constants and drop the block."""
        b = find_block(self.blocks, block)
        if len(values) != b.length:
            raise LayoutError(f"block {block!r} has {b.length} variables, got {len(values)} values")
        values = [to_scalar(v, self.modulus) for v in values]
        blocks, start = [], 0
        for bb in self.blocks:
            if bb.name != block:
                blocks.append(Block(bb.name, start, bb.length))
                start += bb.length
        out: dict = {}
        for e, c in self.terms.items():
            for i in range(b.length):
                k = e[b.start + i]
                if k:
                    c = c * values[i] ** k
            if not c:
                continue
            key = e[: b.start] + e[b.stop:]
            v = out.get(key)
            out[key] = c if v is None else v + c
        return MPoly._raw({e: c for e, c in out.items() if c}, tuple(blocks), self.modulus)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.arity:
            raise LayoutError(f"point has length {len(point)}, expected {self.arity}")
        point = [to_scalar(x, self.modulus) for x in point]
        total = to_scalar(0, self.modulus)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def map_coefficients(self, fn, modulus: int | None) -> MPoly:
        return MPoly({e: fn(c) for e, c in self.terms.items()}, self.blocks, modulus)

    # display

    def _var_names(self) -> list[str]:
        names = []
        for b in self.blocks:
            if b.length == 1:
                names.append(b.name)
            else:
                names.extend(f"{b.name}{i + 1}" if b.name == "t" else f"{b.name}_{i + 1}" for i in range(b.length))
        return names

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self._var_names()
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            cs = format_rational(c) if isinstance(c, Fraction) else str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MPoly({self})"


def lagrange_fit(samples: Iterable[tuple[int, object]], degree_bound: int) -> MPoly:
    """Fit the unique polynomial of degree <= ``degree_bound`` through the samples.

    The first ``degree_bound + 1`` samples determine the polynomial; every
    further sample must agree with it, otherwise ``NotPolynomialError``.
    """
    samples = [(int(t), Fraction(v)) for t, v in samples]
    nodes = [t for t, _ in samples]
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate sample nodes")
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    if len(samples) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} samples, got {len(samples)}")
    head = samples[: degree_bound + 1]

    # Newton divided differences, then expand the Newton form into monomials.
    xs = [Fraction(t) for t, _ in head]
    table = [v for _, v in head]
    newton = [table[0]]
    for level in range(1, len(head)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])
    coeffs = [Fraction(0)]
    for k in range(len(newton) - 1, -1, -1):
        # coeffs <- coeffs * (t - xs[k]) + newton[k]
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= xs[k] * c
        shifted[0] += newton[k]
        coeffs = shifted
    poly = MPoly.univariate(coeffs)

    for t, v in samples[degree_bound + 1:]:
        got = poly.evaluate([t])
        if got != v:
            raise NotPolynomialError(
                f"not a polynomial of claimed degree {degree_bound}: "
                f"sample ({t}, {format_rational(v)}) != {format_rational(got)}"
            )
    return poly
