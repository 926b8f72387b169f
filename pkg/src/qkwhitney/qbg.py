"""Edges of the quantum Bruhat graph of type C_n.

Two independent criteria are provided.  :func:`edge_type_by_length` uses the
length function directly and serves as the oracle; :func:`edge_type_by_pattern`
inspects the signed window on the barred interval ``1 < ... < n < nbar < ... < 1bar``
and is what the admissible-subset enumeration calls.
"""

from __future__ import annotations

import enum
import json
from functools import lru_cache

from .rootsys import Root, SignedPerm, barred_key, pairing, positive_roots, rho, weyl_group


class EdgeKind(enum.Enum):
    BRUHAT = "Bruhat"
    QUANTUM = "Quantum"
    NONE = "None"


def _require_positive(alpha: Root) -> None:
    if not alpha.is_positive():
        raise ValueError(f"edge label {alpha} must be a positive root")


def edge_type_by_length(w: SignedPerm, alpha: Root) -> EdgeKind:
    _require_positive(alpha)
    lw = w.length()
    lv = w.reflect(alpha).length()
    if lv == lw + 1:
        return EdgeKind.BRUHAT
    if lv == lw + 1 - 2 * pairing(rho(w.rank), alpha):
        return EdgeKind.QUANTUM
    return EdgeKind.NONE


@lru_cache(maxsize=None)
def _edge_by_pattern(window: tuple[int, ...], i: int, j: int) -> EdgeKind:
    n = len(window)

    def val(k: int) -> int:
        # w(k) as a position on the barred interval, for barred k as well
        v = window[abs(k) - 1]
        return barred_key(v if k > 0 else -v, n)

    if j > 0:
        # alpha = eps_i - eps_j
        a, b = val(i), val(j)
        between = [val(k) for k in range(i + 1, j)]
        if a < b:
            if not any(a < c < b for c in between):
                return EdgeKind.BRUHAT
            return EdgeKind.NONE
        if all(b < c < a for c in between):
            return EdgeKind.QUANTUM
        return EdgeKind.NONE

    jj = -j
    # positions strictly between i and jbar on the barred interval
    between_pos = list(range(i + 1, n + 1)) + list(range(-n, -jj))
    between = [val(k) for k in between_pos]
    a, b = val(i), val(j)
    if jj != i:
        # alpha = eps_i + eps_j: Bruhat edges only
        same_sign = (window[i - 1] > 0) == (-window[jj - 1] > 0)
        if a < b and same_sign and not any(a < c < b for c in between):
            return EdgeKind.BRUHAT
        return EdgeKind.NONE
    # alpha = 2 eps_i
    if a < b:
        if not any(a < c < b for c in between):
            return EdgeKind.BRUHAT
        return EdgeKind.NONE
    if all(b < c < a for c in between):
        return EdgeKind.QUANTUM
    return EdgeKind.NONE


def edge_type_by_pattern(w: SignedPerm, alpha: Root) -> EdgeKind:
    _require_positive(alpha)
    i, j = alpha.support()
    return _edge_by_pattern(w.window, i, j)


def edge_type(w: SignedPerm, alpha: Root) -> EdgeKind:
    """Production edge query."""
    return edge_type_by_pattern(w, alpha)


def qbg_adjacency(n: int) -> dict:
    """The whole graph as a JSON-ready dict (vertices are windows)."""
    verts = sorted(weyl_group(n), key=lambda w: (w.length(), w.window))
    edges = []
    for w in verts:
        for a in positive_roots(n):
            kind = edge_type(w, a)
            if kind is not EdgeKind.NONE:
                edges.append(
                    {
                        "source": list(w.window),
                        "target": list(w.reflect(a).window),
                        "root": list(a.vec),
                        "kind": kind.value,
                    }
                )
    return {"n": n, "vertices": [list(w.window) for w in verts], "edges": edges}


def dump_qbg(n: int) -> str:
    return json.dumps(qbg_adjacency(n), indent=1, sort_keys=True)
