"""Admissible subsets and the Chevalley operators built from them.

For a start element ``w`` and a lambda-chain ``(gamma_1, ..., gamma_r)``, an
admissible subset ``{i_1 < ... < i_t}`` traces a path
``w -> w s_|gamma_i1| -> ...`` in the quantum Bruhat graph.  Each subset
contributes ``(-1)^{n(A)} e^{-wt(A)} Q^{down(A)} [O^{ed(A)}]`` to the product
of the line bundle class with ``[O^w]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .alcove import LambdaChain, affine_reflect, reduced_chain
from .polyring import (
    CharElem,
    NovikovPoly,
    QKClass,
    _accumulate_shift,
    geometric_factor,
)
from .qbg import EdgeKind, edge_type
from .rootsys import Coroot, SignedPerm, Vector, Weight, boundary_sets, signed_subset_of


class UnsupportedWeight(ValueError):
    pass


@dataclass(frozen=True)
class AdmissibleRecord:
    end: SignedPerm
    neg_count: int
    wt: Weight
    down: Coroot
    positions: tuple[int, ...]

    def to_row(self) -> dict:
        return {
            "positions": [p + 1 for p in self.positions],
            "end": list(self.end.window),
            "neg_count": self.neg_count,
            "wt": list(self.wt.coords),
            "down": list(self.down.coords),
        }


def admissible_subsets(w: SignedPerm, chain: LambdaChain) -> list[AdmissibleRecord]:
    """All ``w``-admissible subsets of ``chain``, in DFS order with skip before take."""
    steps = chain.steps
    r = len(steps)
    n = w.rank
    minus_lam = -chain.lam
    out: list[AdmissibleRecord] = []

    def finish(cur: SignedPerm, neg: int, down: Coroot, taken: list[int]) -> None:
        mu = minus_lam
        for k in reversed(taken):
            mu = affine_reflect(steps[k], mu)
        out.append(AdmissibleRecord(cur, neg, -w.apply(mu), down, tuple(taken)))

    def dfs(k: int, cur: SignedPerm, neg: int, down: Coroot, taken: list[int]) -> None:
        if k == r:
            finish(cur, neg, down, taken)
            return
        dfs(k + 1, cur, neg, down, taken)
        gamma = steps[k].gamma
        label = gamma.abs()
        kind = edge_type(cur, label)
        if kind is EdgeKind.NONE:
            return
        if kind is EdgeKind.QUANTUM:
            down = down + label.coroot()
        taken.append(k)
        dfs(k + 1, cur.reflect(label), neg + (0 if gamma.is_positive() else 1), down, taken)
        taken.pop()

    dfs(0, w, 0, Coroot.zero(n), [])
    return out


def dump_records(records: list[AdmissibleRecord]) -> str:
    return "\n".join(json.dumps(r.to_row(), sort_keys=True) for r in records)


# (end, sign, e-exponent of e^{-wt}, Q-exponent of Q^{down})
Term = tuple[SignedPerm, int, Vector, Vector]


@lru_cache(maxsize=None)
def chevalley_terms(lam: Weight, w: SignedPerm, seed: int = 0, classical: bool = False) -> tuple[Term, ...]:
    """Monomial expansion of ``[O(lam)] * [O^w]`` as a tuple of terms.

    With ``classical=True`` only subsets with ``down(A) = 0`` are kept.
    """
    chain = reduced_chain(lam, seed)
    terms = []
    for rec in admissible_subsets(w, chain):
        if classical and not rec.down.is_zero():
            continue
        q = rec.down.simple_coords()
        if any(k < 0 for k in q):
            raise AssertionError(f"down(A) = {rec.down.coords} is not in Q^vee,+")
        sign = -1 if rec.neg_count % 2 else 1
        terms.append((rec.end, sign, tuple(-c for c in rec.wt.coords), q))
    return tuple(terms)


def _apply_terms(lam: Weight, Z: QKClass, seed: int, classical: bool) -> QKClass:
    if lam.rank != Z.n:
        raise ValueError("rank mismatch")
    out: dict = {}
    for w, p in Z._c.items():
        for end, sign, e, q in chevalley_terms(lam, w, seed, classical):
            acc = out.get(end)
            if acc is None:
                acc = out[end] = {}
            _accumulate_shift(acc, p, q, e, sign, Z.D)
    return QKClass._wrap(Z.n, Z.D, {w: p for w, p in out.items() if p})


def classical_line_mult(lam: Weight, Z: QKClass, seed: int = 0) -> QKClass:
    """``[O(lam)] . Z`` by the classical alcove-model Chevalley formula, any ``lam``."""
    return _apply_terms(lam, Z, seed, classical=True)


def check_supported(lam: Weight) -> tuple[int, frozenset[int]]:
    """Return ``(sign, J)`` with ``lam = sign * eps_J`` or raise UnsupportedWeight."""
    sj = signed_subset_of(lam)
    if sj is None:
        raise UnsupportedWeight(
            f"unsupported weight class {lam}: quantum products are only available for +-eps_J"
        )
    return sj


def quantum_line_mult(lam: Weight, Z: QKClass, seed: int = 0) -> QKClass:
    """Quantum product ``[O(lam)] * Z`` for ``lam = +-eps_J``.

    Every admissible subset contributes, weighted by ``Q^{down(A)}``; the
    ``1/(1 - st_j)`` factors of the semi-infinite formula cancel against the
    ``(1 - st_j)`` factors relating the two line bundle classes.
    """
    check_supported(lam)
    return _apply_terms(lam, Z, seed, classical=False)


class SemiInfiniteClass:
    """``sum c_{w, xi} st_xi [O_{Q(w)}]`` with ``xi`` in simple-coroot coordinates."""

    __slots__ = ("n", "D", "_c")

    def __init__(self, n: int, D: int, coeffs: Mapping[tuple[SignedPerm, Vector], CharElem] | None = None):
        self.n, self.D = n, D
        self._c: dict = {}
        for (w, xi), ch in (coeffs or {}).items():
            if sum(xi) <= D and not ch.is_zero():
                self._c[(w, tuple(xi))] = ch

    @property
    def coeffs(self) -> dict[tuple[SignedPerm, Vector], CharElem]:
        return dict(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemiInfiniteClass):
            return NotImplemented
        if other.D != self.D:
            raise ValueError("truncation mismatch")
        return self._c == other._c

    __hash__ = None  # type: ignore[assignment]

    def to_qk_raw(self) -> dict:
        out: dict = {}
        for (w, xi), ch in self._c.items():
            out.setdefault(w, {})[xi] = dict(ch.terms)
        return out

    @classmethod
    def from_qk_raw(cls, n: int, D: int, raw: dict) -> SemiInfiniteClass:
        obj = cls(n, D)
        for w, p in raw.items():
            for xi, ch in p.items():
                if ch:
                    obj._c[(w, xi)] = CharElem._wrap(n, dict(ch))
        return obj

    def times_st_factor(self, j: int, inverse: bool = False) -> SemiInfiniteClass:
        """Multiply by ``(1 - st_j)``, or by ``1/(1 - st_j)`` when ``inverse``."""
        factor = geometric_factor(j, self.n, self.D) if inverse else 1 - NovikovPoly.Q(j, self.n, self.D)
        Z = QKClass._wrap(self.n, self.D, self.to_qk_raw())
        return SemiInfiniteClass.from_qk_raw(self.n, self.D, Z.scale(factor)._c)

    def render(self) -> str:
        if not self._c:
            return "0"
        keys = sorted(self._c, key=lambda k: (sum(k[1]), k[0].length(), k[0].window, k[1]))
        return "\n".join(f"st{list(xi)} O_Q{w}: {self._c[(w, xi)].render()}" for w, xi in keys)


def phi(Z: QKClass) -> SemiInfiniteClass:
    """Module isomorphism ``e^mu Q^xi [O^w] -> e^{-mu} st_xi [O_{Q(w)}]``."""
    out = SemiInfiniteClass(Z.n, Z.D)
    for w, p in Z._c.items():
        for xi, ch in p.items():
            out._c[(w, xi)] = CharElem._wrap(Z.n, {tuple(-x for x in e): c for e, c in ch.items()})
    return out


def par_indices(lam: Weight) -> frozenset[int]:
    """Indices ``j`` carrying a ``1/(1 - st_j)`` factor: ``L_J`` for ``+eps_J``, ``M_J`` for ``-eps_J``."""
    sign, J = check_supported(lam)
    L, M = boundary_sets(J, lam.rank)
    return L if sign > 0 else M


def semi_infinite_expand(lam: Weight, w: SignedPerm, D: int, seed: int = 0) -> SemiInfiniteClass:
    """``[O_{Q(w)}(lam)]`` with the partition factors kept explicit."""
    n = lam.rank
    raw: dict = {}
    for end, sign, e, q in chevalley_terms(lam, w, seed):
        # Phi^{-1} convention: e^{wt} here is e^{-e} in the QK picture
        if sum(q) > D:
            continue
        acc = raw.setdefault(end, {}).setdefault(q, {})
        ee = tuple(-x for x in e)
        v = acc.get(ee, 0) + sign
        if v:
            acc[ee] = v
        else:
            del acc[ee]
    out = SemiInfiniteClass.from_qk_raw(n, D, raw)
    for j in sorted(par_indices(lam)):
        out = out.times_st_factor(j, inverse=True)
    return out


def schubert_class(w: SignedPerm, D: int) -> QKClass:
    return QKClass.schubert(w, D)
