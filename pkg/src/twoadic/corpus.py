"""Shared test corpus: a spread of maps over ergodic/non-ergodic,
bijective/non-bijective, smooth/non-smooth behavior.

Used by the cross-validation suites; the random slice is reproducible from
the seed and merged in a fixed order.
"""

from __future__ import annotations

import random
from typing import List, Tuple

from .maps import CompatibleMap, affine, dsl, polynomial
from .monomial import PerturbedMonomial

#: Perturbations used by the monomial decision grid.
U_SOURCES = ("0", "1", "x", "x + 1", "x ** 2", "x xor 5")

#: Grid ranges for the monomial decision cross-check.
GRID_EXPONENTS = range(1, 17)
GRID_LEVELS = (1, 2, 3)


def monomial_grid() -> List[PerturbedMonomial]:
    grid = []
    for s in GRID_EXPONENTS:
        for r in GRID_LEVELS:
            for u_src in U_SOURCES:
                grid.append(PerturbedMonomial(s, r, dsl(u_src)))
    return grid


def corpus_maps(seed: int = 2024, random_polys: int = 500) -> List[Tuple[str, CompatibleMap]]:
    out: List[Tuple[str, CompatibleMap]] = [
        ("identity", dsl("x")),
        ("x + 1", dsl("x + 1")),
        ("x + 2", dsl("x + 2")),
    ]
    for c0 in range(8):
        for c1 in range(8):
            out.append((f"affine({c0},{c1})", affine(c0, c1)))
    for a0 in range(8):
        for a1 in range(8):
            for a2 in range(8):
                out.append((f"poly[{a0},{a1},{a2}]", polynomial((a0, a1, a2))))
    rng = random.Random(seed)
    for i in range(random_polys):
        coeffs = tuple(rng.randrange(16) for _ in range(5))
        out.append((f"rpoly{i}{list(coeffs)}", polynomial(coeffs)))
    for c in (1, 3, 5, 7):
        out.append((f"x xor {c}", dsl(f"x xor {c}")))
        out.append((f"x + (x and {c})", dsl(f"x + (x and {c})")))
    for pm in monomial_grid():
        out.append((
            f"monomial(s={pm.s},r={pm.r},u={pm.u.label})",
            pm.to_map(),
        ))
    return out
