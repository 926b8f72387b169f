"""Type C_n roots, weights and the Weyl group as signed permutations.

Weights are integer vectors in the epsilon basis.  Coroots are integer
vectors in the dual basis, so ``<lambda, alpha^vee>`` is a plain dot
product.  A barred index ``jbar`` is stored as ``-j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]


def _vec(coords: Iterable[int]) -> Vector:
    return tuple(int(c) for c in coords)


@dataclass(frozen=True, order=True)
class Weight:
    """Element of the weight lattice, coordinates in the epsilon basis."""

    coords: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _vec(self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, n: int) -> Weight:
        return cls((0,) * n)

    @classmethod
    def eps(cls, i: int, n: int) -> Weight:
        """``eps_i`` for ``1 <= i <= n``; ``eps(-i)`` is ``-eps_i``."""
        c = [0] * n
        c[abs(i) - 1] = 1 if i > 0 else -1
        return cls(tuple(c))

    @classmethod
    def fundamental(cls, j: int, n: int) -> Weight:
        return cls((1,) * j + (0,) * (n - j))

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> Weight:
        return Weight(tuple(k * a for a in self.coords))

    def fundamental_coeffs(self) -> Vector:
        """Coefficients ``m_i`` with ``self = sum m_i varpi_i``."""
        c = self.coords + (0,)
        return tuple(c[i] - c[i + 1] for i in range(self.rank))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True, order=True)
class Coroot:
    """Element of the coroot lattice in epsilon-dual coordinates."""

    coords: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _vec(self.coords))

    @classmethod
    def zero(cls, n: int) -> Coroot:
        return cls((0,) * n)

    def __add__(self, other: Coroot) -> Coroot:
        return Coroot(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Coroot:
        return Coroot(tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def simple_coords(self) -> Vector:
        """Coordinates in the simple coroots ``alpha_i^vee``.

        ``alpha_i^vee = e_i - e_{i+1}`` for ``i < n`` and ``alpha_n^vee = e_n``,
        so the ``i``-th coordinate is the partial sum ``c_1 + ... + c_i``.
        """
        out, acc = [], 0
        for c in self.coords:
            acc += c
            out.append(acc)
        return tuple(out)


def _is_root_vector(v: Vector) -> bool:
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1:
        return abs(nz[0][1]) == 2
    if len(nz) == 2:
        return abs(nz[0][1]) == 1 and abs(nz[1][1]) == 1
    return False


@dataclass(frozen=True, order=True)
class Root:
    """A root ``+-eps_i +- eps_j`` (i < j) or ``+-2 eps_i``."""

    vec: Vector

    def __post_init__(self) -> None:
        v = _vec(self.vec)
        if not _is_root_vector(v):
            raise ValueError(f"{v} is not a root of type C_{len(v)}")
        object.__setattr__(self, "vec", v)

    @property
    def rank(self) -> int:
        return len(self.vec)

    @property
    def weight(self) -> Weight:
        return Weight(self.vec)

    def is_positive(self) -> bool:
        return next(c for c in self.vec if c) > 0

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.vec))

    def abs(self) -> Root:
        """The positive representative ``|alpha|``."""
        return self if self.is_positive() else -self

    def coroot(self) -> Coroot:
        # alpha^vee = 2 alpha / (alpha, alpha); long roots 2eps_i have norm 4
        if sum(c * c for c in self.vec) == 4:
            return Coroot(tuple(c // 2 for c in self.vec))
        return Coroot(self.vec)

    def support(self) -> tuple[int, int]:
        """``(i, j)`` in barred notation: ``(i, j)``, ``(i, -j)`` or ``(i, -i)``.

        Only meaningful for positive roots.
        """
        nz = [i + 1 for i, c in enumerate(self.vec) if c]
        if len(nz) == 1:
            return nz[0], -nz[0]
        i, j = nz
        return (i, j) if self.vec[j - 1] < 0 else (i, -j)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.vec):
            if c:
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(f"{sign}{mag}e{i + 1}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple[Root, ...]:
    """All ``n**2`` positive roots, ordered lexicographically by ``(i, kind, j)``.

    Kind 0 is ``eps_i - eps_j``, kind 1 is ``eps_i + eps_j``, kind 2 is ``2 eps_i``.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    keyed = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = [0] * n
            v[i - 1], v[j - 1] = 1, -1
            keyed.append(((i, 0, j), Root(tuple(v))))
            v = [0] * n
            v[i - 1], v[j - 1] = 1, 1
            keyed.append(((i, 1, j), Root(tuple(v))))
        v = [0] * n
        v[i - 1] = 2
        keyed.append(((i, 2, i), Root(tuple(v))))
    keyed.sort(key=lambda kv: kv[0])
    return tuple(r for _, r in keyed)


def simple_roots(n: int) -> tuple[Root, ...]:
    out = []
    for i in range(1, n):
        v = [0] * n
        v[i - 1], v[i] = 1, -1
        out.append(Root(tuple(v)))
    v = [0] * n
    v[n - 1] = 2
    out.append(Root(tuple(v)))
    return tuple(out)


def rho(n: int) -> Weight:
    return Weight(tuple(range(n, 0, -1)))


def pairing(lam: Weight | Vector, alpha: Root | Coroot) -> int:
    """``<lam, alpha^vee>``; a Coroot argument is used as-is."""
    lc = lam.coords if isinstance(lam, Weight) else lam
    cc = alpha.coroot().coords if isinstance(alpha, Root) else alpha.coords
    return sum(a * b for a, b in zip(lc, cc))


@dataclass(frozen=True, order=True)
class SignedPerm:
    """Weyl group element in window notation ``(w(1), ..., w(n))``."""

    window: Vector

    def __post_init__(self) -> None:
        w = _vec(self.window)
        if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a signed permutation")
        object.__setattr__(self, "window", w)

    @property
    def rank(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> SignedPerm:
        return cls(tuple(range(-1, -n - 1, -1)))

    @classmethod
    def simple(cls, i: int, n: int) -> SignedPerm:
        return cls.identity(n).reflect(simple_roots(n)[i - 1])

    def __call__(self, j: int) -> int:
        """Image of a signed index; ``w(-j) = -w(j)``."""
        v = self.window[abs(j) - 1]
        return v if j > 0 else -v

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        return SignedPerm(tuple(self(other(k)) for k in range(1, self.rank + 1)))

    def inverse(self) -> SignedPerm:
        inv = [0] * self.rank
        for k, v in enumerate(self.window, start=1):
            inv[abs(v) - 1] = k if v > 0 else -k
        return SignedPerm(tuple(inv))

    def apply(self, lam: Weight) -> Weight:
        """``w(eps_j) = eps_{w(j)}``, extended linearly."""
        out = [0] * self.rank
        for j, c in enumerate(lam.coords, start=1):
            v = self.window[j - 1]
            out[abs(v) - 1] += c if v > 0 else -c
        return Weight(tuple(out))

    def apply_root(self, alpha: Root) -> Root:
        return Root(self.apply(alpha.weight).coords)

    def reflect(self, alpha: Root) -> SignedPerm:
        """Right multiplication ``w * s_alpha`` for a positive root ``alpha``."""
        i, j = alpha.support()
        w = list(self.window)
        if j > 0:
            w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        elif -j == i:
            w[i - 1] = -w[i - 1]
        else:
            a, b = w[i - 1], w[-j - 1]
            w[i - 1], w[-j - 1] = -b, -a
        return SignedPerm(tuple(w))

    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(
            1 for a in positive_roots(self.rank) if not self.apply_root(a).is_positive()
        )

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.window) + "]"


def weyl_group(n: int) -> Iterator[SignedPerm]:
    """All ``2**n * n!`` elements, in a fixed order."""
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield SignedPerm(tuple(s * p for s, p in zip(signs, perm)))


def eps_J(J: Iterable[int], n: int, sign: int = 1) -> Weight:
    c = [0] * n
    for j in J:
        if not 1 <= j <= n:
            raise ValueError(f"index {j} outside [1, {n}]")
        c[j - 1] = sign
    return Weight(tuple(c))


def boundary_sets(J: Iterable[int], n: int) -> tuple[frozenset[int], frozenset[int]]:
    """``(L_J, M_J)``: right ends of runs of ``J`` and positions just before runs."""
    Js = set(J)
    L = frozenset(j for j in range(1, n + 1) if j in Js and j + 1 not in Js)
    M = frozenset(j for j in range(1, n + 1) if j not in Js and j + 1 in Js)
    return L, M


def signed_subset_of(lam: Weight) -> tuple[int, frozenset[int]] | None:
    """Return ``(sign, J)`` when ``lam = sign * eps_J``, else ``None``.

    The zero weight is reported as ``(1, {})``.
    """
    vals = set(lam.coords) - {0}
    if not vals:
        return 1, frozenset()
    if vals == {1} or vals == {-1}:
        (s,) = vals
        return s, frozenset(i + 1 for i, c in enumerate(lam.coords) if c)
    return None


def parse_weight(text: str, n: int | None = None) -> Weight:
    """Parse ``"1,0,-1"`` or ``"(1,0,-1)"`` into a Weight."""
    parts = [p for p in text.strip().strip("()[]").split(",") if p.strip()]
    w = Weight(tuple(int(p) for p in parts))
    if n is not None and w.rank != n:
        raise ValueError(f"weight {text!r} has rank {w.rank}, expected {n}")
    return w


def barred_key(v: int, n: int) -> int:
    """Position of a signed index in ``1 < ... < n < nbar < ... < 1bar``."""
    return v if v > 0 else 2 * n + 1 + v


def barred_interval(n: int) -> Sequence[int]:
    return tuple(range(1, n + 1)) + tuple(range(-n, 0))
