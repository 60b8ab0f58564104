"""Iterated symmetrization of polynomial maps under the S_N action on variables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .errors import InternalError, MembershipError
from .polymap import PolyMap, pm_permute

Perm = tuple  # 0-based one-line notation


def all_perms(N: int) -> list[Perm]:
    """S_N in lexicographic order of one-line notation."""
    return list(permutations(range(N)))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """``(sigma tau)(i) = sigma(tau(i))``."""
    return tuple(sigma[i] for i in tau)


def adjacent_transpositions(N: int) -> list[Perm]:
    out = []
    for i in range(N - 1):
        p = list(range(N))
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return out


def symmetrize_round(g: PolyMap) -> PolyMap:
    """Product of ``sigma(g)`` over S_N, left to right in lexicographic order."""
    result = None
    for sigma in all_perms(g.N):
        term = pm_permute(g, sigma)
        result = term if result is None else result * term
    return result


def is_symmetric(g: PolyMap, level: int | None = None) -> bool:
    """Invariance under every adjacent transposition, optionally modulo ``U_{n,level+1}``."""
    for tau in adjacent_transpositions(g.N):
        moved = pm_permute(g, tau)
        if level is not None:
            if moved.truncate(level) != g.truncate(level):
                return False
        elif moved != g:
            return False
    return True


def symmetrize(f: PolyMap) -> tuple[PolyMap, int]:
    """Run ``n - 1`` rounds; returns the symmetric map and its factor count ``(N!)^(n-1)``."""
    g = f
    rounds = max(f.n - 1, 0)
    for _ in range(rounds):
        g = symmetrize_round(g)
    if not is_symmetric(g):
        raise InternalError("symmetrization did not produce an S_N-invariant map")
    return g, factorial(f.N) ** rounds


@dataclass(frozen=True)
class Cocycle:
    level: int
    values: dict  # Perm -> PolyMap

    def __getitem__(self, sigma: Perm) -> PolyMap:
        return self.values[tuple(sigma)]

    def check_identity(self) -> list[tuple[Perm, Perm]]:
        """Pairs ``(sigma, tau)`` violating ``a_{sigma tau} = a_sigma sigma(a_tau)``."""
        bad = []
        for sigma, a_s in self.values.items():
            for tau, a_t in self.values.items():
                if self.values[compose(sigma, tau)] != a_s * pm_permute(a_t, sigma):
                    bad.append((sigma, tau))
        return bad


def extract_cocycle(g: PolyMap, level: int) -> Cocycle:
    """``alpha_sigma = g^-1 sigma(g)`` for every sigma in S_N.

    ``g`` should be the output of ``level`` symmetrization rounds, so each
    ``alpha_sigma`` lands in ``C^{level+1}``: its first ``level`` diagonals vanish.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    g_inv = g.inverse()
    values = {}
    for sigma in all_perms(g.N):
        alpha = g_inv * pm_permute(g, sigma)
        if alpha.lc_height() < level + 1:
            raise MembershipError(f"not symmetric modulo C^{level + 1}")
        values[sigma] = alpha
    return Cocycle(level, values)
