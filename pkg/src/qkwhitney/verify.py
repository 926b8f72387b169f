"""One check per identity of the quantum K-ring of the type C flag manifold.

Each check builds both sides from :mod:`qkring` primitives and compares them
exactly.  Checks never raise on a mathematical mismatch; they return a failing
:class:`CheckResult` whose residual is the rendered difference.

Most checks accept ``mutate=True``, which removes one quantum correction
factor from the identity.  A mutated check is expected to fail; this is how
the suite guards against vacuous passes.
"""

from __future__ import annotations

import fnmatch
import json
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .alcove import reduced_chain
from .chevalley import (
    admissible_subsets,
    classical_line_mult,
    par_indices,
    phi,
    quantum_line_mult,
    semi_infinite_expand,
)
from .polyring import (
    CharElem,
    NovikovPoly,
    QKClass,
    elementary_symmetric,
    elementary_symmetric_char,
    geometric_factor,
    sum_classes,
)
from .qbg import edge_type_by_length, edge_type_by_pattern
from .qkring import (
    Bundle,
    LambdaYPoly,
    LineCombo,
    lambda_y,
    lambda_y_combo,
    line_bundle_class,
    poly_mult,
    wedge_combo,
)
from .rootsys import SignedPerm, Weight, barred_interval, eps_J, positive_roots, weyl_group


@dataclass
class CheckResult:
    name: str
    params: dict
    status: str
    residual: str = ""
    wall_time: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.name}[{inner}]"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "status": self.status,
            "residual": self.residual,
            "wall_time_ms": round(self.wall_time * 1000, 3),
        }
        if self.notes:
            out["notes"] = {k: _jsonable(v) for k, v in self.notes.items()}
        return out


def _fmt(v) -> str:
    if isinstance(v, (set, frozenset, tuple, list)):
        return "{" + ",".join(str(x) for x in sorted(v)) + "}"
    return str(v)


def _jsonable(v):
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, Weight):
        return list(v.coords)
    return v


def _render_diff(diff) -> str:
    return diff.render()


class _Collector:
    """Accumulates named sub-comparisons and builds the final result."""

    def __init__(self, name: str, params: dict):
        self.name, self.params = name, params
        self.t0 = time.perf_counter()
        self.failures: list[str] = []
        self.notes: dict = {}

    def compare(self, label: str, lhs, rhs) -> bool:
        if lhs == rhs:
            return True
        self.failures.append(f"{label}:\n{_render_diff(lhs - rhs)}")
        return False

    def require(self, label: str, ok: bool, detail: str = "") -> bool:
        if not ok:
            self.failures.append(f"{label}: {detail}" if detail else label)
        return ok

    def result(self) -> CheckResult:
        return CheckResult(
            self.name,
            self.params,
            "fail" if self.failures else "pass",
            "\n".join(self.failures),
            time.perf_counter() - self.t0,
            self.notes,
        )


def _Q(j: int, n: int, D: int) -> NovikovPoly:
    return NovikovPoly.Q(j, n, D)


def _Q_run(p: int, n: int, D: int) -> NovikovPoly:
    """``Q_p Q_{p+1} ... Q_n``."""
    return NovikovPoly.q_power(tuple(1 if i >= p else 0 for i in range(1, n + 1)), n, D)


def _one(n: int, D: int) -> NovikovPoly:
    return NovikovPoly.one(n, D)


def _line(lam: Weight, D: int) -> LineCombo:
    return LineCombo.line(lam, D)


# quantum inverse


def check_quantum_inverse(j: int, n: int, D: int, seed: int = 0, mutate: bool = False) -> CheckResult:
    """``[O(-eps_j)] * [O(eps_j)] = (1 - Q_{j-1})(1 - Q_j)``."""
    col = _Collector("quantum_inverse", {"n": n, "D": D, "j": j})
    lhs = _line(Weight.eps(-j, n), D).apply(line_bundle_class(Weight.eps(j, n), D, seed), seed)
    factor = (1 - _Q(j, n, D)) if mutate else (1 - _Q(j - 1, n, D)) * (1 - _Q(j, n, D))
    col.compare("product", lhs, QKClass.unit(n, D).scale(factor))
    return col.result()


# Whitney relations 1 and 2


def check_whitney_rel1(k: int, n: int, D: int, seed: int = 0, mutate: bool = False, dual: bool = False) -> CheckResult:
    """Quantum Whitney relation for ``S_{k-1} -> S_k -> S_k/S_{k-1}`` (or the duals)."""
    name = "whitney_rel2" if dual else "whitney_rel1"
    col = _Collector(name, {"n": n, "D": D, "k": k})
    S = Bundle.S_dual if dual else Bundle.S
    quot = Bundle.quotient_dual(k) if dual else Bundle.quotient(k)

    lhs = poly_mult(lambda_y_combo(S(k - 1), n, D), lambda_y(quot, n, D, seed), seed)
    rhs = lambda_y(S(k), n, D, seed)
    if not mutate:
        coef = _Q(k - 1, n, D) * geometric_factor(k - 1, n, D)
        inner = lambda_y(S(k - 1), n, D, seed) - lambda_y(S(k - 2), n, D, seed)
        corr = poly_mult([lambda_y_combo(quot, n, D)[1]], inner, seed).shift(1).scale(coef)
        rhs = rhs - corr
    _compare_by_degree(col, lhs, rhs)
    return col.result()


def check_whitney_rel2(k: int, n: int, D: int, seed: int = 0, mutate: bool = False) -> CheckResult:
    return check_whitney_rel1(k, n, D, seed, mutate, dual=True)


def _compare_by_degree(col: _Collector, lhs: LambdaYPoly, rhs: LambdaYPoly) -> None:
    m = max(len(lhs.coeffs), len(rhs.coeffs))
    for d in range(m):
        col.compare(f"y^{d}", lhs.degree_coeff(d), rhs.degree_coeff(d))


# Whitney relation 3


def _reduced_combo(p: int, d: int, dual: bool, n: int, D: int) -> LineCombo:
    """``[Lambda^d S_{p-1}] - Q_{p-1} [Lambda^d S_{p-2}]`` as an operator."""
    return wedge_combo(p - 1, d, dual, n, D) - wedge_combo(p - 2, d, dual, n, D).scale(_Q(p - 1, n, D))


def check_whitney_rel3(n: int, D: int, seed: int = 0, mutate: bool = False) -> CheckResult:
    """``lambda_y(S_n) * lambda_y(S_n^vee)`` against ``lambda_y(C^{2n})`` plus the y^2 correction."""
    col = _Collector("whitney_rel3", {"n": n, "D": D})
    lhs = poly_mult(lambda_y_combo(Bundle.S(n), n, D), lambda_y(Bundle.S_dual(n), n, D, seed), seed)
    rhs = lambda_y(Bundle.trivial(), n, D, seed)
    for p in range(1, n + 1):
        coef = _Q_run(p, n, D)
        if not mutate:
            coef = coef * geometric_factor(p - 1, n, D)
        left = [_reduced_combo(p, d, False, n, D) for d in range(p)]
        right = LambdaYPoly(
            n, D, [_reduced_combo(p, d, True, n, D).as_class(seed) for d in range(p)]
        )
        rhs = rhs - poly_mult(left, right, seed).shift(2).scale(coef)
    _compare_by_degree(col, lhs, rhs)
    return col.result()


# Borel relations


def phi_factor(J: frozenset[int], j: int, n: int, D: int, mutate: bool = False, literal_zero: bool = False) -> NovikovPoly:
    """``phi_J(j)`` for ``J`` a subset of the barred interval, ``jbar`` stored as ``-j``.

    ``phi_J(j)`` for unbarred ``j`` is ``1/(1 - Q_j)`` when ``j`` and its
    successor (``nbar`` for ``j = n``) are in ``J`` and 1 otherwise;
    ``literal_zero`` uses 0 instead of 1 there.  ``mutate`` drops the
    quantum part of the first ``phi_J(jbar)`` branch.
    """
    if j > 0:
        succ = j + 1 if j < n else -n
        if j in J and succ in J:
            return geometric_factor(j, n, D)
        return NovikovPoly.zero(n, D) if literal_zero else _one(n, D)
    jj = -j
    if jj == 1:
        return _one(n, D)
    between = set(range(jj, n + 1)) | set(range(-n, -jj + 1))
    if (jj - 1) in J and -(jj - 1) in J and not (J & between):
        if mutate:
            return _one(n, D)
        return _one(n, D) + _Q_run(jj - 1, n, D) * geometric_factor(jj - 1, n, D)
    if j in J and -(jj - 1) in J:
        return geometric_factor(jj - 1, n, D)
    return _one(n, D)


def _barred_weight(j: int, n: int) -> Weight:
    # eps_{jbar} = -eps_j, so [O(-eps_{jbar})] = [O(eps_j)]
    return Weight.eps(-j, n)


@lru_cache(maxsize=None)
def _ordered_products(n: int, D: int, seed: int) -> dict[frozenset[int], QKClass]:
    """``prod* [O(-eps_j)]`` over every subset of the barred interval, sharing prefixes."""
    order = barred_interval(n)
    out: dict[frozenset[int], QKClass] = {}

    def walk(pos: int, chosen: tuple[int, ...], cls: QKClass) -> None:
        if pos == len(order):
            out[frozenset(chosen)] = cls
            return
        walk(pos + 1, chosen, cls)
        j = order[pos]
        walk(pos + 1, chosen + (j,), quantum_line_mult(_barred_weight(j, n), cls, seed))

    walk(0, (), QKClass.unit(n, D))
    return out


def borel_lhs(d: int, n: int, D: int, seed: int = 0, mutate: bool = False, literal_zero: bool = False) -> QKClass:
    prods = _ordered_products(n, D, seed)
    parts = []
    for J in combinations(barred_interval(n), d):
        Js = frozenset(J)
        coef = _one(n, D)
        for j in barred_interval(n):
            coef = coef * phi_factor(Js, j, n, D, mutate, literal_zero)
        parts.append(prods[Js].scale(coef))
    return sum_classes(parts, n, D)


def check_borel(d: int, n: int, D: int, seed: int = 0, mutate: bool = False, literal_zero: bool = False) -> CheckResult:
    col = _Collector("borel", {"n": n, "D": D, "d": d})
    rhs = QKClass.unit(n, D).scale(elementary_symmetric_char(d, n))
    col.compare("sum", borel_lhs(d, n, D, seed, mutate, literal_zero), rhs)
    return col.result()


# products of line bundles


def check_multiple_line(J: Iterable[int], k: int, n: int, D: int, seed: int = 0, dual: bool = False, mutate: bool = False) -> CheckResult:
    """``[O(-eps_{J+k})] = c [O(-eps_J)] * [O(-eps_k)]`` with ``c = 1/(1 - Q_{k-1})`` iff ``k-1 in J``."""
    J = frozenset(J)
    if k in J or any(j >= k for j in J):
        raise ValueError("J must lie in [1, k-1]")
    col = _Collector("multiple_line", {"n": n, "D": D, "J": J, "k": k, "sign": "+" if dual else "-"})
    sign = 1 if dual else -1
    lhs = line_bundle_class(eps_J(J | {k}, n, sign), D, seed)
    prod = _line(eps_J(J, n, sign), D).apply(line_bundle_class(eps_J([k], n, sign), D, seed), seed)
    if (k - 1) in J and not mutate:
        prod = prod.scale(geometric_factor(k - 1, n, D))
    col.compare("product", lhs, prod)
    return col.result()


# the two intermediate lemmas behind relation 3


def _max_pair_sum(d: int, p: int, n: int, D: int, seed: int) -> QKClass:
    """Sum of ``[O(-eps_J)] * [O(eps_K)]`` over ``|J| + |K| = d``, ``max J = max K = p``."""
    parts = []
    below = range(1, p)
    for a in range(0, d - 1):
        b = d - 2 - a
        if a > p - 1 or b > p - 1:
            continue
        for Ja in combinations(below, a):
            for Kb in combinations(below, b):
                J, K = set(Ja) | {p}, set(Kb) | {p}
                cls = _line(eps_J(J, n, -1), D).apply(line_bundle_class(eps_J(K, n, 1), D, seed), seed)
                parts.append(cls)
    return sum_classes(parts, n, D)


def check_lemma_products(d: int, p: int, n: int, D: int, seed: int = 0, mutate: bool = False) -> CheckResult:
    col = _Collector("lemma_products", {"n": n, "D": D, "d": d, "p": p})
    # first lemma
    lhs = sum_classes(
        (wedge_combo(n, k, False, n, D).apply(wedge_combo(n, d - k, True, n, D).as_class(seed), seed) for k in range(d + 1)),
        n,
        D,
    )
    rhs = QKClass.unit(n, D).scale(elementary_symmetric_char(d, n))
    for q in range(1, n + 1):
        coef = _Q_run(q, n, D) * geometric_factor(q, n, D)
        rhs = rhs - _max_pair_sum(d, q, n, D, seed).scale(coef)
    col.compare("lem1", lhs, rhs)
    # second lemma
    lhs2 = _max_pair_sum(d, p, n, D, seed)
    inner = sum_classes(
        (
            _reduced_combo(p, a, False, n, D).apply(_reduced_combo(p, d - 2 - a, True, n, D).as_class(seed), seed)
            for a in range(0, d - 1)
        ),
        n,
        D,
    )
    if not mutate:
        inner = inner.scale((1 - _Q(p, n, D)) * geometric_factor(p - 1, n, D))
    col.compare("lem2", lhs2, inner)
    return col.result()


# presentation


def check_presentation(n: int, D: int, seed: int = 0, mutate: bool = False) -> CheckResult:
    """Every generator of the Whitney-type ideal maps to zero."""
    col = _Collector("presentation", {"n": n, "D": D})
    zero = QKClass.zero(n, D)

    @lru_cache(maxsize=None)
    def F(k: int, d: int, dual: bool) -> QKClass:
        return wedge_combo(k, d, dual, n, D).as_class(seed)

    def x(j: int, dual: bool) -> QKClass:
        return line_bundle_class(Weight.eps(j if dual else -j, n), D, seed)

    for dual, tag in ((False, "def1"), (True, "def2")):
        for k in range(1, n + 1):
            for d in range(1, k + 1):
                coef = _one(n, D) if mutate else geometric_factor(k - 1, n, D)
                op = wedge_combo(k - 1, d - 1, dual, n, D) - wedge_combo(k - 2, d - 1, dual, n, D).scale(_Q(k - 1, n, D))
                gen = F(k, d, dual) - (F(k - 1, d, dual) + op.apply(x(k, dual), seed).scale(coef))
                col.compare(f"{tag}[k={k},d={d}]", gen, zero)
    for d in range(1, n + 1):
        total = sum_classes(
            (wedge_combo(n, k, False, n, D).apply(F(n, d - k, True), seed) for k in range(d + 1)), n, D
        )
        corr = zero
        for p in range(1, n + 1):
            coef = _Q_run(p, n, D) * geometric_factor(p - 1, n, D)
            inner = sum_classes(
                (_reduced_combo(p, r, False, n, D).apply(_reduced_combo(p, d - 2 - r, True, n, D).as_class(seed), seed) for r in range(0, d - 1)),
                n,
                D,
            )
            corr = corr + inner.scale(coef)
        expected = QKClass.unit(n, D).scale(elementary_symmetric_char(d, n)) - corr
        col.compare(f"def3[d={d}]", total - expected, zero)
    col.compare("initial_1", F(1, 1, False) - x(1, False), zero)
    col.compare("initial_2", F(1, 1, True) - x(1, True), zero)
    for j in range(1, n + 1):
        prod = _line(Weight.eps(-j, n), D).apply(x(j, True), seed)
        target = QKClass.unit(n, D).scale((1 - _Q(j - 1, n, D)) * (1 - _Q(j, n, D)))
        col.compare(f"inverse[j={j}]", prod - target, zero)
    return col.result()


# classical limit


def elementary_by_recursion(d: int, xs: Sequence[CharElem], n: int) -> CharElem:
    """``e_d`` via ``e_d(x_1..x_k) = e_d(x_1..x_{k-1}) + e_{d-1}(x_1..x_{k-1}) x_k``."""
    row = [CharElem.one(n)] + [CharElem.zero(n)] * d
    for x in xs:
        for m in range(d, 0, -1):
            row[m] = row[m] + row[m - 1] * x
    return row[d]


def check_elementary_oracle(n: int) -> CheckResult:
    """Subset enumeration, recursion and the convolution identity agree."""
    col = _Collector("elementary_oracle", {"n": n})
    xs = [CharElem.var(i, n) for i in range(1, n + 1)]
    inv = [CharElem.var(i, n, -1) for i in range(1, n + 1)]
    for k in range(1, n + 1):
        for d in range(0, k + 2):
            col.compare(f"recursion[k={k},d={d}]", elementary_by_recursion(d, xs[:k], n), elementary_symmetric(d, xs[:k], n))
    for d in range(2 * n + 1):
        conv = CharElem.zero(n)
        for k in range(d + 1):
            conv = conv + elementary_symmetric(k, xs, n) * elementary_symmetric(d - k, inv, n)
        col.compare(f"convolution[d={d}]", conv, elementary_symmetric_char(d, n))
    return col.result()


def _signed_subsets(n: int) -> Iterator[Weight]:
    for r in range(1, n + 1):
        for J in combinations(range(1, n + 1), r):
            yield eps_J(J, n, 1)
            yield eps_J(J, n, -1)


def check_classical_limit(n: int, seed: int = 0) -> CheckResult:
    """At ``D = 0`` the quantum engine is the classical one and the classical Whitney relations hold."""
    col = _Collector("classical_limit", {"n": n})
    D = 0
    for lam in _signed_subsets(n):
        for w in weyl_group(n):
            Z = QKClass.schubert(w, D)
            col.compare(f"chevalley[{lam},{w}]", quantum_line_mult(lam, Z, seed), classical_line_mult(lam, Z, seed))
    for k in range(1, n + 1):
        for dual in (False, True):
            S = Bundle.S_dual if dual else Bundle.S
            quot = Bundle.quotient_dual(k) if dual else Bundle.quotient(k)
            lhs = poly_mult(lambda_y_combo(S(k - 1), n, D), lambda_y(quot, n, D, seed), seed)
            label = "whitney_classical_2" if dual else "whitney_classical_1"
            for d in range(k + 1):
                col.compare(f"{label}[k={k}] y^{d}", lhs.degree_coeff(d), lambda_y(S(k), n, D, seed).degree_coeff(d))
    lhs = poly_mult(lambda_y_combo(Bundle.S(n), n, D), lambda_y(Bundle.S_dual(n), n, D, seed), seed)
    triv = lambda_y(Bundle.trivial(), n, D, seed)
    for d in range(2 * n + 1):
        col.compare(f"whitney_classical_3 y^{d}", lhs.degree_coeff(d), triv.degree_coeff(d))
    return col.result()


# alcove-model properties


def check_qam_am(J: Iterable[int], sign: int, n: int, seeds: Sequence[int] = (0, 1)) -> CheckResult:
    """Every admissible subset from ``e`` for ``sign * eps_J`` has ``down = 0``."""
    J = frozenset(J)
    col = _Collector("qam_am", {"n": n, "J": J, "sign": "+" if sign > 0 else "-"})
    lam = eps_J(J, n, sign)
    e = SignedPerm.identity(n)
    count = 0
    for s in seeds:
        for rec in admissible_subsets(e, reduced_chain(lam, s)):
            count += 1
            col.require(
                f"seed {s}, positions {[p + 1 for p in rec.positions]}",
                rec.down.is_zero(),
                f"down = {list(rec.down.coords)}",
            )
    col.notes["records"] = count
    return col.result()


def check_qam_am_control(seed: int = 0) -> CheckResult:
    """From ``s_1`` at rank 1 a quantum edge is taken, so the ``w = e`` restriction matters."""
    col = _Collector("qam_am_control", {"n": 1})
    recs = admissible_subsets(SignedPerm((-1,)), reduced_chain(Weight((-1,)), seed))
    col.require("quantum record from s_1", any(not r.down.is_zero() for r in recs), "no record with down != 0")
    return col.result()


def check_chain_independence(lam: Weight, n: int, D: int, seeds: Sequence[int] = (0, 1)) -> CheckResult:
    col = _Collector("chain_independence", {"n": n, "D": D, "lambda": lam})
    s1, s2 = seeds
    col.notes["chains_differ"] = reduced_chain(lam, s1).steps != reduced_chain(lam, s2).steps
    for w in weyl_group(n):
        Z = QKClass.schubert(w, D)
        col.compare(f"O^{w}", quantum_line_mult(lam, Z, s1), quantum_line_mult(lam, Z, s2))
    return col.result()


def check_commutativity(n: int, D: int, seed: int = 0, pairs: Sequence[tuple[Weight, Weight]] | None = None) -> CheckResult:
    """``[O(lam)] * ([O(mu)] * Z) = [O(mu)] * ([O(lam)] * Z)`` on Schubert classes."""
    col = _Collector("commutativity", {"n": n, "D": D})
    if pairs is None:
        ws = list(_signed_subsets(n))
        pairs = [(a, b) for i, a in enumerate(ws) for b in ws[i + 1 :]]
    for lam, mu in pairs:
        for w in weyl_group(n):
            Z = QKClass.schubert(w, D)
            ab = quantum_line_mult(lam, quantum_line_mult(mu, Z, seed), seed)
            ba = quantum_line_mult(mu, quantum_line_mult(lam, Z, seed), seed)
            col.compare(f"{lam},{mu},O^{w}", ab, ba)
    return col.result()


def check_semi_infinite(lam: Weight, n: int, D: int, seed: int = 0) -> CheckResult:
    """``Phi([O(lam)] * [O^w]) = prod (1 - st_j) [O_{Q(w)}(lam)]`` for every ``w``."""
    col = _Collector("semi_infinite", {"n": n, "D": D, "lambda": lam})
    js = sorted(par_indices(lam))
    for w in weyl_group(n):
        raw = semi_infinite_expand(lam, w, D, seed)
        for j in js:
            raw = raw.times_st_factor(j)
        got = phi(quantum_line_mult(lam, QKClass.schubert(w, D), seed))
        if got != raw:
            col.failures.append(f"O^{w}:\nexpected\n{raw.render()}\ngot\n{got.render()}")
    return col.result()


def check_edge_equivalence(n: int) -> CheckResult:
    col = _Collector("edge_equivalence", {"n": n})
    pairs = 0
    for w in weyl_group(n):
        for a in positive_roots(n):
            pairs += 1
            x, y = edge_type_by_length(w, a), edge_type_by_pattern(w, a)
            col.require(f"{w} --{a}-->", x is y, f"length says {x.value}, pattern says {y.value}")
    col.notes["pairs"] = pairs
    return col.result()


# rank-1 localization oracle


def _divide_by_one_minus_x_inv2(r: dict[int, int]) -> dict[int, int] | None:
    """Exact quotient ``r / (1 - x^{-2})`` in ``Z[x, x^{-1}]``, or None."""
    r = dict(r)
    out: dict[int, int] = {}
    if not r:
        return out
    # the quotient spans [min(r) + 2, max(r)], so the loop is bounded
    for _ in range((max(r) - min(r)) // 2 + 1):
        if not r:
            break
        top = max(r)
        c = out[top] = r[top]
        for e, v in ((top, -c), (top - 2, c)):
            nv = r.get(e, 0) + v
            if nv:
                r[e] = nv
            else:
                r.pop(e, None)
    return None if r else out


def rank1_localization_expansion(sign: int) -> dict[str, dict[int, int]]:
    """Schubert coefficients of ``[O(sign * eps_1)]`` on ``P^1`` by fixed-point restriction.

    Restrictions: ``[O(lam)]|_w = e^{-w lam}``, ``[O^e]|_w = 1`` and
    ``[O^{s_1}]`` is ``0`` at ``e`` and ``1 - e^{-2 eps_1}`` at ``s_1``.
    Coefficients are returned as ``{exponent: coeff}`` in ``x = e^{eps_1}``.
    """
    at_e = {-sign: 1}
    at_s = {sign: 1}
    rem = dict(at_s)
    for e, c in at_e.items():
        v = rem.get(e, 0) - c
        if v:
            rem[e] = v
        else:
            rem.pop(e, None)
    b = _divide_by_one_minus_x_inv2(rem)
    if b is None:
        raise ArithmeticError("localization system has no Laurent solution")
    return {"e": at_e, "s1": b}


def check_rank1_oracle(D: int = 3, seed: int = 0) -> CheckResult:
    col = _Collector("rank1_oracle", {"n": 1, "D": D})
    e, s1 = SignedPerm((1,)), SignedPerm((-1,))
    for sign in (1, -1):
        exp = rank1_localization_expansion(sign)
        oracle = QKClass(
            1,
            D,
            {
                e: NovikovPoly.const(CharElem(1, {(k,): v for k, v in exp["e"].items()}), 1, D),
                s1: NovikovPoly.const(CharElem(1, {(k,): v for k, v in exp["s1"].items()}), 1, D),
            },
        )
        col.compare(f"O({'+' if sign > 0 else '-'}e1)", line_bundle_class(Weight((sign,)), D, seed), oracle)
    return col.result()


# registry


@dataclass(frozen=True)
class CheckFamily:
    name: str
    description: str
    build: Callable[[int, int, int, int], list[Callable[[], CheckResult]]]


def _fam_quantum_inverse(n, D, s, s2):
    return [lambda j=j: check_quantum_inverse(j, n, D, s) for j in range(1, n + 1)]


def _fam_rel(dual):
    def build(n, D, s, s2):
        f = check_whitney_rel2 if dual else check_whitney_rel1
        return [lambda k=k: f(k, n, D, s) for k in range(1, n + 1)]

    return build


def _fam_rel3(n, D, s, s2):
    return [lambda: check_whitney_rel3(n, D, s)]


def _fam_borel(n, D, s, s2):
    return [lambda d=d: check_borel(d, n, D, s) for d in range(2 * n + 1)]


def _fam_multiple(n, D, s, s2):
    out = []
    for k in range(2, n + 1):
        for r in range(0, k):
            for J in combinations(range(1, k), r):
                for dual in (False, True):
                    out.append(lambda J=J, k=k, dual=dual: check_multiple_line(J, k, n, D, s, dual))
    return out


def _fam_lemma(n, D, s, s2):
    return [lambda d=d, p=p: check_lemma_products(d, p, n, D, s) for d in range(1, 2 * n + 1) for p in range(1, n + 1)]


def _fam_presentation(n, D, s, s2):
    return [lambda: check_presentation(n, D, s)]


def _fam_classical(n, D, s, s2):
    return [lambda: check_classical_limit(n, s), lambda: check_elementary_oracle(n)]


def _fam_qam(n, D, s, s2):
    out = []
    for r in range(0, n + 1):
        for J in combinations(range(1, n + 1), r):
            for sign in (1, -1):
                out.append(lambda J=J, sign=sign: check_qam_am(J, sign, n, (s, s2)))
    out.append(lambda: check_qam_am_control(s))
    return out


def _fam_chain(n, D, s, s2):
    return [lambda lam=lam: check_chain_independence(lam, n, D, (s, s2)) for lam in _signed_subsets(n)]


def _fam_comm(n, D, s, s2):
    return [lambda: check_commutativity(n, D, s)]


def _fam_semi(n, D, s, s2):
    return [lambda lam=lam: check_semi_infinite(lam, n, D, s) for lam in _signed_subsets(n)]


def _fam_edges(n, D, s, s2):
    return [lambda: check_edge_equivalence(n)]


def _fam_rank1(n, D, s, s2):
    return [lambda: check_rank1_oracle(D, s)]


FAMILIES: tuple[CheckFamily, ...] = (
    CheckFamily("borel", "Borel-type relations for 0 <= d <= 2n", _fam_borel),
    CheckFamily("chain_independence", "Chevalley output under two chain seeds", _fam_chain),
    CheckFamily("classical_limit", "Q = 0 degeneration and elementary symmetric oracle", _fam_classical),
    CheckFamily("commutativity", "line-bundle operators commute", _fam_comm),
    CheckFamily("edge_equivalence", "length vs pattern quantum Bruhat edge criteria", _fam_edges),
    CheckFamily("lemma_products", "intermediate identities behind Whitney relation 3", _fam_lemma),
    CheckFamily("multiple_line", "line bundles of eps_J as products of single ones", _fam_multiple),
    CheckFamily("presentation", "generators of the Whitney-type ideal vanish", _fam_presentation),
    CheckFamily("qam_am", "admissible subsets from e have down = 0", _fam_qam),
    CheckFamily("quantum_inverse", "[O(-eps_j)] * [O(eps_j)] = (1-Q_{j-1})(1-Q_j)", _fam_quantum_inverse),
    CheckFamily("rank1_oracle", "rank-1 line bundles against localization", _fam_rank1),
    CheckFamily("semi_infinite", "raw semi-infinite expansion vs the quantum operator", _fam_semi),
    CheckFamily("whitney_rel1", "quantum Whitney relation for S_k", _fam_rel(False)),
    CheckFamily("whitney_rel2", "quantum Whitney relation for S_k dual", _fam_rel(True)),
    CheckFamily("whitney_rel3", "quantum Whitney relation for C^{2n}", _fam_rel3),
)


class UnknownCheck(ValueError):
    pass


def family_names() -> list[str]:
    return [f.name for f in FAMILIES]


def select_families(patterns: Sequence[str]) -> list[CheckFamily]:
    """Families matching any glob in ``patterns``, in registry order."""
    chosen = []
    for p in patterns:
        if not any(fnmatch.fnmatchcase(f.name, p) for f in FAMILIES):
            raise UnknownCheck(f"no check matches {p!r}; available checks: {', '.join(family_names())}")
    for f in FAMILIES:
        if any(fnmatch.fnmatchcase(f.name, p) for p in patterns):
            chosen.append(f)
    return chosen


def run_checks(patterns: Sequence[str], n: int, D: int, seed: int = 0, seed2: int = 1) -> list[CheckResult]:
    results = []
    for fam in select_families(patterns):
        for thunk in fam.build(n, D, seed, seed2):
            results.append(thunk())
    return results


# golden files


def golden_payload(n: int, D: int, seed: int = 0) -> dict:
    """Canonical renderings of every ``[O(+-eps_J)]`` at rank ``n``."""
    classes = {str(lam): line_bundle_class(lam, D, seed).render() for lam in _signed_subsets(n)}
    return {"n": n, "D": D, "classes": classes}


def check_golden(path: str, seed: int = 0) -> CheckResult:
    with open(path, encoding="utf-8") as fh:
        stored = json.load(fh)
    col = _Collector("golden", {"file": os.path.basename(path)})
    fresh = golden_payload(stored["n"], stored["D"], seed)["classes"]
    for key in sorted(set(stored["classes"]) | set(fresh)):
        want, got = stored["classes"].get(key), fresh.get(key)
        if want != got:
            col.failures.append(f"O{key}:\nstored\n{want}\ncomputed\n{got}")
    return col.result()
