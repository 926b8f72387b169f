"""Line bundles, wedge powers of tautological bundles and lambda_y classes.

Every product is evaluated operator-on-class: the left factor is written as a
:class:`LineCombo`, a linear combination of line-bundle operators
``[O(lam)] * -`` with ``lam = +-eps_J``, and applied to a :class:`QKClass`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .chevalley import check_supported, quantum_line_mult
from .polyring import NovikovPoly, QKClass, Scalar, elementary_symmetric_char, sum_classes
from .rootsys import Weight, eps_J


def _as_scalar(s: Scalar, n: int, D: int) -> NovikovPoly:
    if isinstance(s, NovikovPoly):
        if s.D != D:
            raise ValueError(f"truncation mismatch: {D} vs {s.D}")
        return s
    return NovikovPoly.const(s, n, D)


class LineCombo:
    """The operator ``sum_i s_i [O(lam_i)] * -``."""

    __slots__ = ("n", "D", "terms")

    def __init__(self, n: int, D: int, terms: Iterable[tuple[Scalar, Weight]] = ()):
        self.n, self.D = n, D
        merged: dict[Weight, NovikovPoly] = {}
        for s, lam in terms:
            if lam.rank != n:
                raise ValueError("rank mismatch")
            check_supported(lam)
            s = _as_scalar(s, n, D)
            merged[lam] = merged[lam] + s if lam in merged else s
        self.terms: tuple[tuple[NovikovPoly, Weight], ...] = tuple(
            (s, lam) for lam, s in sorted(merged.items()) if not s.is_zero()
        )

    @classmethod
    def zero(cls, n: int, D: int) -> LineCombo:
        return cls(n, D)

    @classmethod
    def unit(cls, n: int, D: int) -> LineCombo:
        return cls(n, D, [(1, Weight.zero(n))])

    @classmethod
    def line(cls, lam: Weight, D: int) -> LineCombo:
        return cls(lam.rank, D, [(1, lam)])

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: LineCombo) -> LineCombo:
        return LineCombo(self.n, self.D, self.terms + other.terms)

    def __neg__(self) -> LineCombo:
        return self.scale(-1)

    def __sub__(self, other: LineCombo) -> LineCombo:
        return self + (-other)

    def scale(self, s: Scalar) -> LineCombo:
        s = _as_scalar(s, self.n, self.D)
        return LineCombo(self.n, self.D, [(s * t, lam) for t, lam in self.terms])

    __rmul__ = scale

    def apply(self, Z: QKClass, seed: int = 0) -> QKClass:
        """``self * Z``."""
        if Z.n != self.n or Z.D != self.D:
            raise ValueError("rank/truncation mismatch")
        parts = []
        for s, lam in self.terms:
            parts.append(quantum_line_mult(lam, Z, seed).scale(s))
        return sum_classes(parts, self.n, self.D)

    def as_class(self, seed: int = 0) -> QKClass:
        return self.apply(QKClass.unit(self.n, self.D), seed)

    def __repr__(self) -> str:
        body = " + ".join(f"({s.render()})*O{lam}" for s, lam in self.terms) or "0"
        return f"LineCombo[{body}]"


def mult(A: LineCombo, Z: QKClass, seed: int = 0) -> QKClass:
    return A.apply(Z, seed)


def line_bundle_class(lam: Weight, D: int, seed: int = 0) -> QKClass:
    """``[O(lam)]`` for ``lam = +-eps_J``."""
    return quantum_line_mult(lam, QKClass.unit(lam.rank, D), seed)


def wedge_combo(k: int, d: int, dual: bool, n: int, D: int) -> LineCombo:
    """``[Lambda^d S_k]`` (or of ``S_k^vee``) as a sum of ``C(k, d)`` line bundles.

    ``S_{-1}`` and ``S_0`` are the zero bundle, so only ``d = 0`` survives
    there, and ``d > k`` gives zero.
    """
    if not -1 <= k <= n:
        raise ValueError(f"bundle index {k} outside [-1, {n}]")
    if d < 0 or d > max(k, 0):
        return LineCombo.zero(n, D)
    sign = 1 if dual else -1
    return LineCombo(n, D, [(1, eps_J(J, n, sign)) for J in combinations(range(1, k + 1), d)])


def wedge_class(k: int, d: int, dual: bool, n: int, D: int, seed: int = 0) -> QKClass:
    return wedge_combo(k, d, dual, n, D).as_class(seed)


@dataclass(frozen=True)
class Bundle:
    """One of ``S_k``, ``S_k^vee``, ``S_k/S_{k-1}``, its dual, or trivial ``C^{2n}``."""

    kind: str
    k: int = 0

    KINDS = ("S", "S_dual", "quotient", "quotient_dual", "trivial")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown bundle kind {self.kind!r}")

    @classmethod
    def S(cls, k: int) -> Bundle:
        return cls("S", k)

    @classmethod
    def S_dual(cls, k: int) -> Bundle:
        return cls("S_dual", k)

    @classmethod
    def quotient(cls, k: int) -> Bundle:
        return cls("quotient", k)

    @classmethod
    def quotient_dual(cls, k: int) -> Bundle:
        return cls("quotient_dual", k)

    @classmethod
    def trivial(cls) -> Bundle:
        return cls("trivial")

    def rank(self, n: int) -> int:
        if self.kind == "trivial":
            return 2 * n
        if self.kind.startswith("quotient"):
            return 1
        return max(self.k, 0)


def lambda_y_combo(bundle: Bundle, n: int, D: int) -> list[LineCombo]:
    """``lambda_y(bundle)`` as operators, indexed by y-degree."""
    kind, k = bundle.kind, bundle.k
    if kind in ("S", "S_dual"):
        return [wedge_combo(k, d, kind == "S_dual", n, D) for d in range(max(k, 0) + 1)]
    if kind in ("quotient", "quotient_dual"):
        if not 1 <= k <= n:
            raise ValueError(f"quotient index {k} outside [1, {n}]")
        sign = 1 if kind == "quotient_dual" else -1
        return [LineCombo.unit(n, D), LineCombo.line(Weight.eps(sign * k, n), D)]
    return [LineCombo.unit(n, D).scale(elementary_symmetric_char(d, n)) for d in range(2 * n + 1)]


class LambdaYPoly:
    """Polynomial in ``y`` with :class:`QKClass` coefficients."""

    __slots__ = ("n", "D", "coeffs")

    def __init__(self, n: int, D: int, coeffs: Sequence[QKClass]):
        self.n, self.D = n, D
        self.coeffs = list(coeffs)
        for c in self.coeffs:
            if c.n != n or c.D != D:
                raise ValueError("rank/truncation mismatch")

    def degree_coeff(self, d: int) -> QKClass:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return QKClass.zero(self.n, self.D)

    def _binop(self, other: LambdaYPoly, sign: int) -> LambdaYPoly:
        m = max(len(self.coeffs), len(other.coeffs))
        out = []
        for d in range(m):
            a, b = self.degree_coeff(d), other.degree_coeff(d)
            out.append(a + b if sign > 0 else a - b)
        return LambdaYPoly(self.n, self.D, out)

    def __add__(self, other: LambdaYPoly) -> LambdaYPoly:
        return self._binop(other, 1)

    def __sub__(self, other: LambdaYPoly) -> LambdaYPoly:
        return self._binop(other, -1)

    def scale(self, s: Scalar) -> LambdaYPoly:
        return LambdaYPoly(self.n, self.D, [c.scale(s) for c in self.coeffs])

    def shift(self, k: int) -> LambdaYPoly:
        """Multiply by ``y^k``."""
        z = QKClass.zero(self.n, self.D)
        return LambdaYPoly(self.n, self.D, [z] * k + self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaYPoly):
            return NotImplemented
        m = max(len(self.coeffs), len(other.coeffs))
        return all(self.degree_coeff(d) == other.degree_coeff(d) for d in range(m))

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"y^{d}:\n" + "\n".join("  " + ln for ln in c.render().splitlines()))
        return "\n".join(parts) or "0"


def lambda_y(bundle: Bundle, n: int, D: int, seed: int = 0) -> LambdaYPoly:
    return LambdaYPoly(n, D, [c.as_class(seed) for c in lambda_y_combo(bundle, n, D)])


def poly_mult(P: Sequence[LineCombo], R: LambdaYPoly, seed: int = 0) -> LambdaYPoly:
    """Convolve y-degrees, applying each operator of ``P`` to ``R``."""
    n, D = R.n, R.D
    out = [QKClass.zero(n, D) for _ in range(len(P) + len(R.coeffs) - 1)] if P and R.coeffs else []
    for i, A in enumerate(P):
        if A.is_zero():
            continue
        for j, Z in enumerate(R.coeffs):
            if not Z.is_zero():
                out[i + j] = out[i + j] + A.apply(Z, seed)
    return LambdaYPoly(n, D, out)
