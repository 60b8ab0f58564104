"""Walk through iterated symmetrization round by round, checking each cocycle.

    python scripts/symmetrize_demo.py            # the two-variable U_3 example
    python scripts/symmetrize_demo.py --n 4 --N 3 --random
"""

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from nilpoly import MPoly, PolyMap, make_layout, pm_lc_degree, superadditive_closure
from nilpoly.symmetrize import extract_cocycle, is_symmetric, symmetrize_round


@dataclass
class DemoConfig:
    n: int = 3
    N: int = 2
    random: bool = False
    seed: int = 0


def start_map(cfg: DemoConfig) -> PolyMap:
    blocks = make_layout(("t", cfg.N))
    t = [MPoly.var(i, blocks) for i in range(cfg.N)]
    if not cfg.random:
        # I + t_1 E_12 + t_2 E_23 + ... cycling through the variables
        return PolyMap.from_entries(cfg.n, {(i, i + 1): t[(i - 1) % cfg.N] for i in range(1, cfg.n)}, blocks=blocks)
    rng = random.Random(cfg.seed)
    entries = {
        (i, j): sum((v * Fraction(rng.randint(-2, 2)) for v in t), MPoly.const(rng.randint(-1, 1), blocks))
        for i in range(1, cfg.n + 1)
        for j in range(i + 1, cfg.n + 1)
    }
    return PolyMap.from_entries(cfg.n, entries, blocks=blocks)


def show(g: PolyMap) -> None:
    for (i, j), p in sorted(g.matrix.entries.items()):
        if p:
            print(f"    ({i},{j}) {p}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    cfg = DemoConfig(**vars(p.parse_args()))

    f = start_map(cfg)
    print("start, lc-degree", pm_lc_degree(f))
    show(f)
    closure = superadditive_closure(pm_lc_degree(f))
    g = f
    for r in range(1, cfg.n):
        g = symmetrize_round(g)
        print(f"round {r}: symmetric mod level {r}: {is_symmetric(g, level=r)}, "
              f"fully symmetric: {is_symmetric(g)}, lc-degree {pm_lc_degree(g)} (closure {closure})")
        show(g)
        if r < cfg.n - 1:
            co = extract_cocycle(g, r)
            print(f"  cocycle at level {r}: {len(co.values)} values, identity violations {len(co.check_identity())}")


if __name__ == "__main__":
    main()
