"""Exact coefficient rings.

* :class:`CharElem` -- integer Laurent polynomials in ``x_i = e^{eps_i}``,
  i.e. the representation ring ``R(T)``.
* :class:`NovikovPoly` -- polynomials in ``Q_1..Q_n`` of total degree at most
  ``D`` with :class:`CharElem` coefficients.  Anything above ``D`` is dropped.
* :class:`QKClass` -- finite Schubert expansion ``sum_w c_w [O^w]``.

All values are immutable; the raw nested dicts behind them are never
mutated after construction.  Coefficients are Python ints, so there is no
overflow.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

from .rootsys import Coroot, SignedPerm, Vector

RawChar = dict  # Vector -> int
RawNovikov = dict  # Vector (Q exponent) -> RawChar


def _vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _add_into(acc: RawChar, src: Mapping[Vector, int], scale: int = 1) -> None:
    for e, c in src.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _mul_raw_char(a: Mapping[Vector, int], b: Mapping[Vector, int]) -> RawChar:
    out: RawChar = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _vadd(ea, eb)
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _render_monomial(coeff: int, factors: list[str], first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    body = "*".join(factors)
    if not body:
        body = str(mag)
    elif mag != 1:
        body = f"{mag}*{body}"
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


def _factors(prefix: str, exps: Vector) -> list[str]:
    out = []
    for i, k in enumerate(exps, start=1):
        if k == 1:
            out.append(f"{prefix}{i}")
        elif k:
            out.append(f"{prefix}{i}^{k}")
    return out


class CharElem:
    """Element of ``Z[x_1^{+-1}, ..., x_n^{+-1}]``."""

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[Vector, int] | None = None):
        self.n = n
        t: RawChar = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for rank {n}")
                if c:
                    t[e] = t.get(e, 0) + int(c)
            t = {e: c for e, c in t.items() if c}
        self._t = t

    @classmethod
    def _wrap(cls, n: int, raw: RawChar) -> CharElem:
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = raw
        return obj

    @classmethod
    def one(cls, n: int) -> CharElem:
        return cls._wrap(n, {(0,) * n: 1})

    @classmethod
    def zero(cls, n: int) -> CharElem:
        return cls._wrap(n, {})

    @classmethod
    def monomial(cls, exps: Vector, coeff: int = 1) -> CharElem:
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def var(cls, i: int, n: int, power: int = 1) -> CharElem:
        e = [0] * n
        e[i - 1] = power
        return cls._wrap(n, {tuple(e): 1})

    @property
    def terms(self) -> Mapping[Vector, int]:
        return self._t

    def is_zero(self) -> bool:
        return not self._t

    def _coerce(self, other) -> CharElem:
        if isinstance(other, CharElem):
            if other.n != self.n:
                raise ValueError("rank mismatch")
            return other
        if isinstance(other, int):
            return CharElem._wrap(self.n, {(0,) * self.n: other} if other else {})
        return NotImplemented

    def __add__(self, other) -> CharElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        _add_into(t, o._t)
        return CharElem._wrap(self.n, t)

    __radd__ = __add__

    def __neg__(self) -> CharElem:
        return CharElem._wrap(self.n, {e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> CharElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        _add_into(t, o._t, -1)
        return CharElem._wrap(self.n, t)

    def __rsub__(self, other) -> CharElem:
        return (-self) + other

    def __mul__(self, other) -> CharElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CharElem._wrap(self.n, _mul_raw_char(self._t, o._t))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CharElem:
        out = CharElem.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (CharElem, int)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self._t == o._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def dual(self) -> CharElem:
        """Apply ``e^mu -> e^{-mu}``."""
        return CharElem._wrap(self.n, {tuple(-x for x in e): c for e, c in self._t.items()})

    def render(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for k, e in enumerate(sorted(self._t, reverse=True)):
            parts.append(_render_monomial(self._t[e], _factors("x", e), k == 0))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CharElem({self.render()})"


class NovikovPoly:
    """Polynomial in ``Q_1..Q_n`` truncated at total degree ``D``."""

    __slots__ = ("n", "D", "_t")

    def __init__(self, n: int, D: int, terms: Mapping[Vector, CharElem | Mapping[Vector, int]] | None = None):
        if D < 0:
            raise ValueError("truncation degree must be >= 0")
        self.n = n
        self.D = D
        t: RawNovikov = {}
        for q, ch in (terms or {}).items():
            q = tuple(q)
            if len(q) != n or any(k < 0 for k in q):
                raise ValueError(f"bad Q exponent {q}")
            if sum(q) > D:
                continue
            raw = ch._t if isinstance(ch, CharElem) else dict(ch)
            acc = t.setdefault(q, {})
            _add_into(acc, raw)
            if not acc:
                del t[q]
        self._t = t

    @classmethod
    def _wrap(cls, n: int, D: int, raw: RawNovikov) -> NovikovPoly:
        obj = cls.__new__(cls)
        obj.n, obj.D, obj._t = n, D, raw
        return obj

    @classmethod
    def zero(cls, n: int, D: int) -> NovikovPoly:
        return cls._wrap(n, D, {})

    @classmethod
    def one(cls, n: int, D: int) -> NovikovPoly:
        return cls._wrap(n, D, {(0,) * n: {(0,) * n: 1}})

    @classmethod
    def const(cls, ch: CharElem | int, n: int, D: int) -> NovikovPoly:
        if isinstance(ch, int):
            ch = CharElem(n, {(0,) * n: ch})
        if ch.is_zero():
            return cls.zero(n, D)
        return cls._wrap(n, D, {(0,) * n: dict(ch._t)})

    @classmethod
    def q_power(cls, q: Vector, n: int, D: int, coeff: int = 1) -> NovikovPoly:
        q = tuple(q)
        if sum(q) > D or not coeff:
            return cls.zero(n, D)
        return cls._wrap(n, D, {q: {(0,) * n: coeff}})

    @classmethod
    def Q(cls, j: int, n: int, D: int) -> NovikovPoly:
        """The variable ``Q_j``; ``Q_0`` is the zero constant."""
        if j == 0:
            return cls.zero(n, D)
        q = [0] * n
        q[j - 1] = 1
        return cls.q_power(tuple(q), n, D)

    @property
    def terms(self) -> dict[Vector, CharElem]:
        return {q: CharElem._wrap(self.n, ch) for q, ch in self._t.items()}

    def is_zero(self) -> bool:
        return not self._t

    def _check(self, other: NovikovPoly) -> None:
        if other.n != self.n:
            raise ValueError("rank mismatch")
        if other.D != self.D:
            raise ValueError(f"truncation mismatch: {self.D} vs {other.D}")

    def _coerce(self, other) -> NovikovPoly:
        if isinstance(other, NovikovPoly):
            self._check(other)
            return other
        if isinstance(other, (int, CharElem)):
            return NovikovPoly.const(other, self.n, self.D)
        return NotImplemented

    def __add__(self, other) -> NovikovPoly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = {q: dict(ch) for q, ch in self._t.items()}
        for q, ch in o._t.items():
            acc = t.setdefault(q, {})
            _add_into(acc, ch)
            if not acc:
                del t[q]
        return NovikovPoly._wrap(self.n, self.D, t)

    __radd__ = __add__

    def __neg__(self) -> NovikovPoly:
        return NovikovPoly._wrap(
            self.n, self.D, {q: {e: -c for e, c in ch.items()} for q, ch in self._t.items()}
        )

    def __sub__(self, other) -> NovikovPoly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> NovikovPoly:
        return (-self) + other

    def __mul__(self, other) -> NovikovPoly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t: RawNovikov = {}
        for qa, ca in self._t.items():
            da = sum(qa)
            for qb, cb in o._t.items():
                if da + sum(qb) > self.D:
                    continue
                q = _vadd(qa, qb)
                acc = t.setdefault(q, {})
                _add_into(acc, _mul_raw_char(ca, cb))
                if not acc:
                    del t[q]
        return NovikovPoly._wrap(self.n, self.D, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> NovikovPoly:
        out = NovikovPoly.one(self.n, self.D)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, (NovikovPoly, int, CharElem)):
            return NotImplemented
        return self._t == self._coerce(other)._t

    def __hash__(self) -> int:
        return hash(frozenset((q, frozenset(ch.items())) for q, ch in self._t.items()))

    def shifted(self, q: Vector, e: Vector, coeff: int = 1) -> NovikovPoly:
        """Multiply by the monomial ``coeff * Q^q * x^e``."""
        out: RawNovikov = {}
        _accumulate_shift(out, self._t, q, e, coeff, self.D)
        return NovikovPoly._wrap(self.n, self.D, out)

    def truncate(self, D: int) -> NovikovPoly:
        if D > self.D:
            raise ValueError("cannot raise truncation degree")
        return NovikovPoly._wrap(
            self.n, D, {q: dict(ch) for q, ch in self._t.items() if sum(q) <= D}
        )

    def at_q_zero(self) -> CharElem:
        return CharElem._wrap(self.n, dict(self._t.get((0,) * self.n, {})))

    def monomials(self) -> Iterator[tuple[Vector, Vector, int]]:
        """``(q, e, coeff)`` triples in canonical order."""
        for q in sorted(self._t, key=lambda q: (sum(q), tuple(-k for k in q))):
            ch = self._t[q]
            for e in sorted(ch, reverse=True):
                yield q, e, ch[e]

    def render(self) -> str:
        parts = []
        for k, (q, e, c) in enumerate(self.monomials()):
            parts.append(_render_monomial(c, _factors("x", e) + _factors("Q", q), k == 0))
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"NovikovPoly[D={self.D}]({self.render()})"


def _accumulate_shift(
    out: RawNovikov, src: RawNovikov, q: Vector, e: Vector, coeff: int, D: int
) -> None:
    """``out += coeff * Q^q x^e * src`` with truncation at degree ``D``."""
    dq = sum(q)
    for qa, ch in src.items():
        if sum(qa) + dq > D:
            continue
        qn = _vadd(qa, q)
        acc = out.get(qn)
        if acc is None:
            acc = out[qn] = {}
        for ea, c in ch.items():
            en = _vadd(ea, e)
            v = acc.get(en, 0) + coeff * c
            if v:
                acc[en] = v
            else:
                del acc[en]
        if not acc:
            del out[qn]


Scalar = Union[int, CharElem, NovikovPoly]


def _w_sort_key(w: SignedPerm) -> tuple:
    return (w.length(), w.window)


class QKClass:
    """Schubert expansion ``sum_w c_w [O^w]`` with NovikovPoly coefficients."""

    __slots__ = ("n", "D", "_c")

    def __init__(self, n: int, D: int, coeffs: Mapping[SignedPerm, NovikovPoly] | None = None):
        self.n, self.D = n, D
        c: dict[SignedPerm, RawNovikov] = {}
        for w, p in (coeffs or {}).items():
            if p.D != D or p.n != n:
                raise ValueError("coefficient truncation/rank mismatch")
            if not p.is_zero():
                c[w] = {q: dict(ch) for q, ch in p._t.items()}
        self._c = c

    @classmethod
    def _wrap(cls, n: int, D: int, raw: dict[SignedPerm, RawNovikov]) -> QKClass:
        obj = cls.__new__(cls)
        obj.n, obj.D, obj._c = n, D, raw
        return obj

    @classmethod
    def zero(cls, n: int, D: int) -> QKClass:
        return cls._wrap(n, D, {})

    @classmethod
    def schubert(cls, w: SignedPerm, D: int) -> QKClass:
        n = w.rank
        return cls._wrap(n, D, {w: {(0,) * n: {(0,) * n: 1}}})

    @classmethod
    def unit(cls, n: int, D: int) -> QKClass:
        """``[O^e]``, the class of the whole flag manifold."""
        return cls.schubert(SignedPerm.identity(n), D)

    @property
    def coeffs(self) -> dict[SignedPerm, NovikovPoly]:
        return {w: NovikovPoly._wrap(self.n, self.D, p) for w, p in self._c.items()}

    def coeff(self, w: SignedPerm) -> NovikovPoly:
        return NovikovPoly._wrap(self.n, self.D, self._c.get(w, {}))

    def support(self) -> list[SignedPerm]:
        return sorted(self._c, key=_w_sort_key)

    def is_zero(self) -> bool:
        return not self._c

    def num_terms(self) -> int:
        return sum(len(ch) for p in self._c.values() for ch in p.values())

    def _check(self, other: QKClass) -> None:
        if other.n != self.n:
            raise ValueError("rank mismatch")
        if other.D != self.D:
            raise ValueError(f"truncation mismatch: {self.D} vs {other.D}")

    def __add__(self, other: QKClass) -> QKClass:
        if not isinstance(other, QKClass):
            return NotImplemented
        self._check(other)
        out = _copy_class(self._c)
        _add_class_into(out, other._c, 1)
        return QKClass._wrap(self.n, self.D, out)

    def __neg__(self) -> QKClass:
        return self.scale(-1)

    def __sub__(self, other: QKClass) -> QKClass:
        if not isinstance(other, QKClass):
            return NotImplemented
        self._check(other)
        out = _copy_class(self._c)
        _add_class_into(out, other._c, -1)
        return QKClass._wrap(self.n, self.D, out)

    def scale(self, s: Scalar) -> QKClass:
        """Multiply every coefficient by a scalar from ``R(T)[[Q]]``."""
        if isinstance(s, int):
            if s == 0:
                return QKClass.zero(self.n, self.D)
            return QKClass._wrap(
                self.n,
                self.D,
                {w: {q: {e: s * c for e, c in ch.items()} for q, ch in p.items()} for w, p in self._c.items()},
            )
        if isinstance(s, CharElem):
            s = NovikovPoly.const(s, self.n, self.D)
        if s.D != self.D:
            raise ValueError(f"truncation mismatch: {self.D} vs {s.D}")
        out: dict[SignedPerm, RawNovikov] = {}
        for w, p in self._c.items():
            acc: RawNovikov = {}
            for q, ch in s._t.items():
                for e, c in ch.items():
                    _accumulate_shift(acc, p, q, e, c, self.D)
            if acc:
                out[w] = acc
        return QKClass._wrap(self.n, self.D, out)

    __rmul__ = scale

    def truncate(self, D: int) -> QKClass:
        if D > self.D:
            raise ValueError("cannot raise truncation degree")
        out = {}
        for w, p in self._c.items():
            t = {q: dict(ch) for q, ch in p.items() if sum(q) <= D}
            if t:
                out[w] = t
        return QKClass._wrap(self.n, D, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QKClass):
            return NotImplemented
        return qk_equal(self, other)

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        if not self._c:
            return "0"
        lines = []
        for w in self.support():
            lines.append(f"O^{w}: {NovikovPoly._wrap(self.n, self.D, self._c[w]).render()}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"QKClass[n={self.n}, D={self.D}]({self.render()!r})"


def _copy_class(c: dict[SignedPerm, RawNovikov]) -> dict[SignedPerm, RawNovikov]:
    return {w: {q: dict(ch) for q, ch in p.items()} for w, p in c.items()}


def _add_class_into(out: dict, src: dict, scale: int) -> None:
    for w, p in src.items():
        tgt = out.setdefault(w, {})
        for q, ch in p.items():
            acc = tgt.setdefault(q, {})
            _add_into(acc, ch, scale)
            if not acc:
                del tgt[q]
        if not tgt:
            del out[w]


def sum_classes(classes: Iterable[QKClass], n: int, D: int) -> QKClass:
    out: dict = {}
    for c in classes:
        if c.n != n or c.D != D:
            raise ValueError("rank/truncation mismatch")
        _add_class_into(out, c._c, 1)
    return QKClass._wrap(n, D, out)


def qk_equal(A: QKClass, B: QKClass) -> bool:
    """Coefficient-wise equality of two classes with the same truncation."""
    if A.D != B.D:
        raise ValueError(f"truncation mismatch: {A.D} vs {B.D}")
    if A.n != B.n:
        raise ValueError("rank mismatch")
    return A._c == B._c


def q_monomial_of_coroot(xi: Coroot, D: int) -> NovikovPoly:
    """``Q^xi`` for ``xi`` in the non-negative span of simple coroots."""
    n = len(xi.coords)
    d = xi.simple_coords()
    if any(k < 0 for k in d):
        raise ValueError(f"{xi.coords} is not in Q^vee,+")
    return NovikovPoly.q_power(d, n, D)


def geometric_factor(j: int, n: int, D: int) -> NovikovPoly:
    """``1/(1 - Q_j)`` expanded to degree ``D``; ``j = 0`` gives 1."""
    if not 0 <= j <= n:
        raise ValueError(f"index {j} outside [0, {n}]")
    if j == 0:
        return NovikovPoly.one(n, D)
    terms = {}
    for m in range(D + 1):
        q = [0] * n
        q[j - 1] = m
        terms[tuple(q)] = {(0,) * n: 1}
    return NovikovPoly._wrap(n, D, terms)


def elementary_symmetric(d: int, xs: list[CharElem], n: int) -> CharElem:
    """``e_d`` of the given elements, by subset enumeration."""
    out = CharElem.zero(n)
    for combo in combinations(xs, d):
        term = CharElem.one(n)
        for x in combo:
            term = term * x
        out = out + term
    return out


def elementary_symmetric_char(d: int, n: int) -> CharElem:
    """``e_d(x_1, ..., x_n, x_n^{-1}, ..., x_1^{-1})``, the class of ``Lambda^d C^{2n}``."""
    if not 0 <= d <= 2 * n:
        raise ValueError(f"degree {d} outside [0, {2 * n}]")
    xs = [CharElem.var(i, n) for i in range(1, n + 1)]
    xs += [CharElem.var(i, n, -1) for i in range(n, 0, -1)]
    return elementary_symmetric(d, xs, n)
