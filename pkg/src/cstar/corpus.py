"""Seeded sample surfaces and diagrams used by tests, benchmarks and the CLI."""

import random

from .degeneration import (
    exceptional_of_move,
    hirzebruch_diagram,
    legal_moves,
    toric_deformation_diagram,
)
from .multidivisor import BULLET, Multidivisor, blowups, picard_rank
from .toric_core import enumerate_surfaces, rays_from_b


def seed_multidivisors():
    seeds = [hirzebruch_diagram(r, a).M for r in range(3) for a in (1, 2)]
    seeds.append(Multidivisor.make({}, BULLET, BULLET))
    return seeds


def random_multidivisors(count=300, seed=1, max_blowups=5, max_rank=8):
    """Smooth multidivisors reached by random invariant blowups of small seeds."""
    rng = random.Random(seed)
    seeds = seed_multidivisors()
    out = dict.fromkeys(seeds)
    for _ in range(count):
        M = rng.choice(seeds)
        for _ in range(rng.randint(1, max_blowups)):
            if picard_rank(M) >= max_rank:
                break
            options = blowups(M)
            if not options:
                break
            M, _ = rng.choice(options)
            out[M] = None
    return list(out)


def base_diagrams(lo=-3, hi=3, rays=(5, 6)):
    """Hirzebruch families plus every toric deformation of small fans."""
    out = [hirzebruch_diagram(r, a) for r in range(3) for a in (1, 2, 3)]
    for n in rays:
        for b in enumerate_surfaces(n, lo, hi):
            for p in range(n):
                bb = b[p:] + b[:p]
                if bb[0] < 0:
                    for r in range(-bb[0] + 1):
                        out.append(toric_deformation_diagram(rays_from_b(bb), r))
    return out


def random_diagram_walks(count=200, seed=2, max_moves=3):
    """Random chains of diagram blowups; yields ``(d, move, blown, E0)``."""
    rng = random.Random(seed)
    base = base_diagrams()
    for _ in range(count):
        d = rng.choice(base)
        for _ in range(rng.randint(1, max_moves)):
            moves = legal_moves(d)
            if not moves:
                break
            m, d2 = rng.choice(moves)
            yield d, m, d2, exceptional_of_move(d, m, d2)
            d = d2
