"""Shared test helpers."""

import random
from fractions import Fraction

from gftables.pascal import PascalParams

F = Fraction


def draw_params(rng: random.Random, case: int, n_max: int = 4) -> PascalParams:
    """A random nonzero coefficient set landing in the requested solver case.

    Case 3 draws are rejected while the affine parameter b/d t^-N sits on a
    pole of the terminating series.
    """
    while True:
        vals = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(5)]
        a, b, c, d, t = vals
        if 0 in (a, b, c, d):
            continue
        if case == 1:
            t, d = F(1), b
        elif case == 2:
            t = F(1)
            if b == d:
                continue
        else:
            if t in (0, 1, -1):
                continue
            if any((b / d) * t ** (j - n_max) == 1 for j in range(2 * n_max + 1)):
                continue
        sigma = F(rng.randint(-3, 3), rng.randint(1, 3))
        if sigma == 0:
            continue
        return PascalParams(a, b, c, d, t, sigma, n_max)
