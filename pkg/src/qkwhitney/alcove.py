"""Reduced lambda-chains from a generic straight segment.

A base point ``p`` in the fundamental alcove is walked along ``p - t*lam``
for ``t in [0, 1]``.  Each hyperplane ``H_{alpha, m}`` crossed contributes one
step ``(gamma, l)`` with ``gamma = sign(<lam, alpha^vee>) * alpha``.  The level
``l`` is chosen so that the crossed wall is ``H_{gamma, -l}``.  A straight
segment meets each separating hyperplane once, so the chain is reduced.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rootsys import Root, Weight, pairing, positive_roots

MAX_SEED_RETRIES = 64
DENOM = 1_000_003

Point = tuple[Fraction, ...]


class DegenerateBasePoint(RuntimeError):
    pass


@dataclass(frozen=True)
class ChainStep:
    gamma: Root
    level: int

    def __str__(self) -> str:
        return f"({self.gamma}, {self.level})"


@dataclass(frozen=True)
class LambdaChain:
    lam: Weight
    steps: tuple[ChainStep, ...]
    seed: int

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(s.gamma for s in self.steps)

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda": list(self.lam.coords),
                "seed": self.seed,
                "steps": [{"gamma": list(s.gamma.vec), "level": s.level} for s in self.steps],
            },
            sort_keys=True,
        )

    def render(self) -> str:
        return "[" + ", ".join(str(s) for s in self.steps) + "]"


def _pair_point(x: Point, alpha: Root) -> Fraction:
    return sum((a * c for a, c in zip(x, alpha.coroot().coords)), Fraction(0))


def in_fundamental_alcove(x: Point) -> bool:
    n = len(x)
    return all(0 < _pair_point(x, a) < 1 for a in positive_roots(n))


def base_point(n: int, seed: int) -> Point:
    """A rational point of the fundamental alcove chosen by ``seed``.

    The alcove is ``1 > x_1 + x_2``, ``x_1 > ... > x_n > 0`` (and ``x_1 < 1/2``
    when ``n = 1``).  Points are drawn with denominator ``DENOM`` by rejection
    sampling, so different seeds spread over the whole alcove and usually give
    different crossing orders.
    """
    rng = random.Random(f"alcove-{n}-{seed}")
    while True:
        x = tuple(sorted((Fraction(rng.randrange(1, DENOM), DENOM) for _ in range(n)), reverse=True))
        if in_fundamental_alcove(x):
            return x


def _crossings(lam: Weight, p: Point) -> list[tuple[Fraction, Root, int]]:
    out = []
    for alpha in positive_roots(lam.rank):
        c = pairing(lam, alpha)
        if c == 0:
            continue
        f0 = _pair_point(p, alpha)
        # f(t) = f0 - t*c runs from f0 in (0, 1) to f0 - c
        ms = range(0, -c, -1) if c > 0 else range(1, -c + 1)
        for m in ms:
            t = (f0 - m) / c
            out.append((t, alpha, m))
    out.sort(key=lambda x: x[0])
    return out


def reduced_chain(lam: Weight, seed: int = 0) -> LambdaChain:
    """Reduced ``lam``-chain built from the segment starting at ``base_point(n, seed)``.

    Raises :class:`DegenerateBasePoint` if no generic base point is found
    within ``MAX_SEED_RETRIES`` consecutive seeds.
    """
    return _reduced_chain(lam, seed)


@lru_cache(maxsize=None)
def _reduced_chain(lam: Weight, seed: int) -> LambdaChain:
    n = lam.rank
    for s in range(seed, seed + MAX_SEED_RETRIES):
        p = base_point(n, s)
        cr = _crossings(lam, p)
        if any(a[0] == b[0] for a, b in zip(cr, cr[1:])):
            continue
        steps = []
        for _, alpha, m in cr:
            sgn = 1 if pairing(lam, alpha) > 0 else -1
            gamma = alpha if sgn > 0 else -alpha
            steps.append(ChainStep(gamma, -sgn * m))
        return LambdaChain(lam, tuple(steps), seed)
    raise DegenerateBasePoint(f"no generic base point for {lam} from seed {seed}")


def affine_reflect(step: ChainStep, mu: Weight) -> Weight:
    """``s_{gamma, -l}(mu) = mu - (<mu, gamma^vee> + l) gamma``."""
    k = pairing(mu, step.gamma) + step.level
    return Weight(tuple(m - k * g for m, g in zip(mu.coords, step.gamma.vec)))


def _affine_reflect_point(step: ChainStep, x: Point) -> Point:
    k = _pair_point(x, step.gamma) + step.level
    return tuple(a - k * g for a, g in zip(x, step.gamma.vec))


def _separating_walls(x: Point, y: Point) -> int:
    n = len(x)
    return sum(
        abs(math.floor(_pair_point(x, a)) - math.floor(_pair_point(y, a)))
        for a in positive_roots(n)
    )


def chain_length_bound(lam: Weight) -> int:
    """Number of hyperplanes separating ``A_o`` from ``A_o - lam``."""
    return sum(abs(pairing(lam, a)) for a in positive_roots(lam.rank))


def validate_chain(chain: LambdaChain, seed: int | None = None) -> list[str]:
    """Replay ``chain`` on an interior point and report every violated property.

    Checks: each step reflects the tracked point into an adjacent alcove
    through its wall ``H_{gamma, -l}``, moving in direction ``-gamma``; the end
    point lies in ``A_o - lam``; the length is the reduced length.
    """
    n = chain.lam.rank
    problems = []
    x = base_point(n, chain.seed if seed is None else seed)
    for k, step in enumerate(chain.steps, start=1):
        side = _pair_point(x, step.gamma) + step.level
        if side <= 0:
            problems.append(f"step {k}: point not on the +gamma side of its wall")
        y = _affine_reflect_point(step, x)
        if _separating_walls(x, y) != 1:
            problems.append(f"step {k}: alcoves are not adjacent")
        x = y
    end = tuple(a + b for a, b in zip(x, chain.lam.coords))
    if not in_fundamental_alcove(end):
        problems.append("end point is not in A_o - lambda")
    if len(chain) != chain_length_bound(chain.lam):
        problems.append("chain is not reduced")
    return problems
