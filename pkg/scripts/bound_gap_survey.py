"""Survey how tight the chain bounds are on random polynomial maps.

    python scripts/bound_gap_survey.py --n 4 --count 200 --deg 2
"""

import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

from nilpoly import MPoly, PolyMap, degree_bounds, make_layout, pm_degree, pm_lc_degree
from nilpoly.polymap import lc_degree_bounds
from nilpoly.scalars import NEG_INF


@dataclass
class SurveyConfig:
    n: int = 4
    N: int = 1
    deg: int = 2
    count: int = 200
    density: float = 0.7  # chance that an entry is nonzero
    seed: int = 0


def random_map(rng: random.Random, cfg: SurveyConfig) -> PolyMap:
    blocks = make_layout(("t", cfg.N))
    entries = {}
    for i in range(1, cfg.n + 1):
        for j in range(i + 1, cfg.n + 1):
            if rng.random() > cfg.density:
                continue
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exps = [0] * cfg.N
                for _ in range(rng.randint(0, cfg.deg)):
                    exps[rng.randrange(cfg.N)] += 1
                terms[tuple(exps)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            entries[i, j] = MPoly(terms, blocks)
    return PolyMap.from_entries(cfg.n, entries, blocks=blocks)


def run(cfg: SurveyConfig) -> dict:
    rng = random.Random(cfg.seed)
    gaps_upper, gaps_lower, lc_exact = Counter(), Counter(), 0
    start = time.perf_counter()
    done = 0
    while done < cfg.count:
        f = random_map(rng, cfg)
        d = pm_degree(f)
        if d is NEG_INF:
            continue
        lo, hi = degree_bounds(f)
        assert lo <= d <= hi
        gaps_upper[hi - d] += 1
        gaps_lower["first diagonal zero" if lo is NEG_INF else d - lo] += 1
        lc = pm_lc_degree(f)
        lc_exact += all(lo_i == hi_i == x for (lo_i, hi_i), x in zip(lc_degree_bounds(f), lc))
        done += 1
    return {
        "config": asdict(cfg),
        "upper_minus_degree": dict(sorted(gaps_upper.items())),
        "degree_minus_lower": dict(sorted(gaps_lower.items(), key=str)),
        "lc_bounds_tight_everywhere": lc_exact,
        "seconds": round(time.perf_counter() - start, 2),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SurveyConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = SurveyConfig(**vars(p.parse_args()))
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
