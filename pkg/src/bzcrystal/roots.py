"""Index combinatorics for type A: intervals, Cartan entries, Weyl group
elements as finitely supported permutations of the integers, and chamber
weights as semi-infinite subsets of the integers.

A chamber weight ``-w Lambda_i`` is stored as the set ``S = w(Z_{<=i})``.
The normalized form is ``Z_{<=anchor} | extras`` with every extra above
``anchor + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CapacityError, DomainError

MAX_GAMMA_RANK = 14


@dataclass(frozen=True, order=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        lo, _, hi = text.partition(":")
        try:
            return cls(int(lo), int(hi) if hi else int(lo))
        except ValueError as exc:
            raise DomainError(f"cannot parse interval {text!r}") from exc

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, i) -> bool:
        return self.lo <= i <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.size

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def points(self) -> range:
        """The points ``lo .. hi+1`` permuted by the Weyl group of the interval."""
        return range(self.lo, self.hi + 2)

    def widen(self, left: int, right: int | None = None) -> "Interval":
        return Interval(self.lo - left, self.hi + (left if right is None else right))

    def shift(self, k: int) -> "Interval":
        return Interval(self.lo + k, self.hi + k)

    def to_json(self):
        return [self.lo, self.hi]


def hull(points: Iterable[int]) -> Interval:
    pts = list(points)
    return Interval(min(pts), max(pts))


# ---------------------------------------------------------------- Cartan data


def cartan_entry(i: int, j: int) -> int:
    """Cartan entry for finite type A and for A_infinity."""
    d = abs(i - j)
    return 2 if d == 0 else (-1 if d == 1 else 0)


def affine_cartan_entry(i: int, j: int, ell: int) -> int:
    """Entry of the generalized Cartan matrix of type A_ell^(1), indices mod ell+1."""
    if ell < 2:
        raise DomainError("affine rank must be at least 2")
    n = ell + 1
    i, j = i % n, j % n
    if i == j:
        return 2
    d = abs(i - j)
    return -1 if d in (1, ell) else 0


@dataclass(frozen=True)
class CartanSpec:
    kind: str  # "finite", "a_infinity" or "affine"
    interval: Interval | None = None
    ell: int | None = None

    def __post_init__(self):
        if self.kind == "finite" and self.interval is None:
            raise DomainError("finite Cartan data needs an interval")
        if self.kind == "affine" and (self.ell is None or self.ell < 2):
            raise DomainError("affine Cartan data needs ell >= 2")
        if self.kind not in ("finite", "a_infinity", "affine"):
            raise DomainError(f"unknown Cartan kind {self.kind!r}")

    def entry(self, i: int, j: int) -> int:
        if self.kind == "affine":
            return affine_cartan_entry(i, j, self.ell)
        return cartan_entry(i, j)

    def indices(self) -> tuple[int, ...]:
        if self.kind == "finite":
            return tuple(self.interval)
        if self.kind == "affine":
            return tuple(range(self.ell + 1))
        raise DomainError("A_infinity has no finite index set")

    def matrix(self) -> list[list[int]]:
        idx = self.indices()
        return [[self.entry(i, j) for j in idx] for i in idx]


# ------------------------------------------------------------ chamber weights


@dataclass(frozen=True, order=True)
class ChamberWeight:
    anchor: int
    extras: tuple[int, ...] = ()

    def __post_init__(self):
        ex = tuple(sorted(set(self.extras)))
        if ex and ex[0] <= self.anchor:
            ex = tuple(x for x in ex if x > self.anchor)
        a = self.anchor
        while ex and ex[0] == a + 1:
            a += 1
            ex = ex[1:]
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "extras", ex)

    @classmethod
    def from_window(cls, base: int, members: Iterable[int]) -> "ChamberWeight":
        """``Z_{<=base}`` together with ``members``."""
        return cls(base, tuple(members))

    def __contains__(self, x: int) -> bool:
        return x <= self.anchor or x in self.extras

    @property
    def charge(self) -> int:
        return self.anchor + len(self.extras)

    @property
    def top(self) -> int:
        return self.extras[-1] if self.extras else self.anchor

    def members_above(self, base: int) -> list[int]:
        """Members strictly greater than ``base``."""
        out = [x for x in range(base + 1, self.anchor + 1)]
        out.extend(x for x in self.extras if x > base)
        return out

    def window_members(self, lo: int, hi: int) -> frozenset[int]:
        return frozenset(x for x in range(lo, hi + 1) if x in self)

    def shift(self, k: int) -> "ChamberWeight":
        return ChamberWeight(self.anchor + k, tuple(x + k for x in self.extras))

    def pairing_support(self) -> dict[int, int]:
        """Nonzero values of ``pairing(p, self)``."""
        out = {}
        for p in range(self.anchor, self.top + 1):
            v = pairing(p, self)
            if v:
                out[p] = v
        return out

    def to_json(self):
        return {"anchor": self.anchor, "extras": list(self.extras)}

    @classmethod
    def from_json(cls, obj) -> "ChamberWeight":
        try:
            return cls(int(obj["anchor"]), tuple(int(x) for x in obj.get("extras", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad chamber weight JSON: {obj!r}") from exc

    def __repr__(self):
        if not self.extras:
            return f"Z<={self.anchor}"
        return f"Z<={self.anchor}+{set(self.extras)}"


def pairing(p: int, gamma: ChamberWeight) -> int:
    """The pairing of the simple coroot ``h_p`` with ``gamma``."""
    return (p + 1 in gamma) - (p in gamma)


def reflect(q: int, gamma: ChamberWeight) -> ChamberWeight:
    """Apply the simple reflection ``s_q``: swap the membership of q and q+1."""
    a, b = q in gamma, q + 1 in gamma
    if a == b:
        return gamma
    base = min(gamma.anchor, q - 1)
    members = set(gamma.members_above(base))
    if a:
        members.discard(q)
        members.add(q + 1)
    else:
        members.discard(q + 1)
        members.add(q)
    return ChamberWeight(base, tuple(members))


def neg_fundamental(i: int) -> ChamberWeight:
    """The chamber weight ``-Lambda_i``, i.e. ``Z_{<=i}``."""
    return ChamberWeight(i)


def fundamental(interval: Interval, i: int) -> ChamberWeight:
    """The fundamental chamber weight of index ``i`` attached to ``interval``."""
    if i not in interval:
        raise DomainError(f"{i} is not in {interval}")
    return ChamberWeight(interval.lo - 1, tuple(range(i + 1, interval.hi + 2)))


def window_weight(interval: Interval, members: Iterable[int]) -> ChamberWeight:
    """``Z_{<=lo-1}`` plus a subset of the points ``lo .. hi+1``."""
    return ChamberWeight(interval.lo - 1, tuple(members))


def window_pattern(interval: Interval, gamma: ChamberWeight) -> frozenset[int] | None:
    """The subset of ``lo .. hi+1`` describing gamma, or None if gamma is not in Gamma_I."""
    lo, hi = interval.lo, interval.hi + 1
    if gamma.anchor < lo - 1 or gamma.top > hi:
        return None
    t = gamma.window_members(lo, hi)
    if not t or len(t) == hi - lo + 1:
        return None
    return t


def in_gamma(interval: Interval, gamma: ChamberWeight) -> bool:
    return window_pattern(interval, gamma) is not None


def negate_in(interval: Interval, gamma: ChamberWeight) -> ChamberWeight:
    """Negation inside Gamma_I: complement of the window pattern."""
    t = window_pattern(interval, gamma)
    if t is None:
        raise DomainError(f"{gamma!r} is not a chamber weight of {interval}")
    return window_weight(interval, set(interval.points()) - t)


def enumerate_gamma(interval: Interval, max_rank: int = MAX_GAMMA_RANK) -> list[ChamberWeight]:
    """All chamber weights of the interval, found as the Weyl orbit of the fundamentals."""
    if interval.size > max_rank:
        raise CapacityError(f"interval of size {interval.size} exceeds limit {max_rank}")
    return list(_gamma_orbit(interval))


@lru_cache(maxsize=64)
def _gamma_orbit(interval: Interval) -> tuple[ChamberWeight, ...]:
    seen = {fundamental(interval, i) for i in interval}
    queue = deque(seen)
    while queue:
        g = queue.popleft()
        for q in interval:
            h = reflect(q, g)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return tuple(sorted(seen))


# ------------------------------------------------------------ Weyl elements


@dataclass(frozen=True)
class WeylElem:
    """A finitely supported permutation of Z, stored by its moved points."""

    moves: tuple[tuple[int, int], ...] = ()
    word: tuple[int, ...] | None = field(default=None, compare=False, hash=False)

    @classmethod
    def identity(cls) -> "WeylElem":
        return cls((), ())

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], word=None) -> "WeylElem":
        moves = tuple(sorted((a, b) for a, b in mapping.items() if a != b))
        if sorted(a for a, _ in moves) != sorted(b for _, b in moves):
            raise DomainError("mapping is not a permutation")
        return cls(moves, None if word is None else tuple(word))

    @classmethod
    def simple(cls, i: int) -> "WeylElem":
        return cls(((i, i + 1), (i + 1, i)), (i,))

    @classmethod
    def from_word(cls, word: Iterable[int]) -> "WeylElem":
        word = tuple(word)
        mapping: dict[int, int] = {}
        # left to right: w <- w * s_i, so the rightmost letter acts first
        for i in word:
            pts = set(mapping) | {i, i + 1}
            mapping = {x: mapping.get(_swap(i, x), _swap(i, x)) for x in pts}
        return cls.from_mapping(mapping, word)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.moves)

    def __call__(self, x: int) -> int:
        for a, b in self.moves:
            if a == x:
                return b
        return x

    def as_dict(self) -> dict[int, int]:
        return dict(self.moves)

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        pts = set(self.support) | set(other.support)
        mapping = {x: self(other(x)) for x in pts}
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElem.from_mapping(mapping, word)

    def inverse(self) -> "WeylElem":
        word = None if self.word is None else tuple(reversed(self.word))
        return WeylElem.from_mapping({b: a for a, b in self.moves}, word)

    def length(self) -> int:
        return length(self)

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word, found by peeling right descents."""
        mapping = self.as_dict()
        out = []
        while True:
            pts = sorted(a for a, b in mapping.items() if a != b)
            if not pts:
                break
            for i in range(pts[0], pts[-1]):
                if mapping.get(i, i) > mapping.get(i + 1, i + 1):
                    break
            else:  # pragma: no cover - a nontrivial permutation has a descent
                raise AssertionError("no descent found")
            out.append(i)
            a, b = mapping.get(i, i), mapping.get(i + 1, i + 1)
            mapping[i], mapping[i + 1] = b, a
        return tuple(reversed(out))

    def with_word(self) -> "WeylElem":
        if self.word is not None:
            return self
        return WeylElem(self.moves, self.reduced_word())

    def act(self, gamma: ChamberWeight) -> ChamberWeight:
        """Image of the chamber weight under this element."""
        if not self.moves:
            return gamma
        base = min(gamma.anchor, min(self.support) - 1)
        return ChamberWeight(base, tuple(self(x) for x in gamma.members_above(base)))

    def shift(self, k: int) -> "WeylElem":
        word = None if self.word is None else tuple(i + k for i in self.word)
        return WeylElem(tuple((a + k, b + k) for a, b in self.moves), word)

    def to_json(self):
        return {"word": list(self.with_word().word)}

    @classmethod
    def from_json(cls, obj) -> "WeylElem":
        try:
            return cls.from_word(int(i) for i in obj["word"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad Weyl element JSON: {obj!r}") from exc

    def __repr__(self):
        w = self.word if self.word is not None else self.reduced_word()
        return "s" + ".".join(map(str, w)) if w else "e"


def _swap(i: int, y: int) -> int:
    if y == i:
        return i + 1
    if y == i + 1:
        return i
    return y


def length(w: WeylElem) -> int:
    """Number of inversions of the permutation."""
    if not w.moves:
        return 0
    lo, hi = min(w.support), max(w.support)
    vals = [w(x) for x in range(lo, hi + 1)]
    return sum(1 for a in range(len(vals)) for b in range(a + 1, len(vals)) if vals[a] > vals[b])


def longest_element(interval: Interval) -> WeylElem:
    """The element reversing the points ``lo .. hi+1``."""
    lo, top = interval.lo, interval.hi + 1
    w = WeylElem.from_mapping({x: lo + top - x for x in range(lo, top + 1)})
    return w.with_word()


def omega_flip(interval: Interval, i: int) -> int:
    if i not in interval:
        raise DomainError(f"{i} is not in {interval}")
    return interval.lo + interval.hi - i


def weyl_group(interval: Interval) -> list[WeylElem]:
    """All elements of W_I in breadth-first (length) order, each with a reduced word."""
    ident = WeylElem.identity()
    seen = {ident: ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for i in interval:
            v = w * WeylElem.simple(i)
            if v not in seen:
                seen[v] = v
                order.append(v)
                queue.append(v)
    return order


def sigma_shift(x, ell: int, k: int = 1):
    """Shift every index by ``k(ell+1)``."""
    if ell < 2:
        raise DomainError("affine rank must be at least 2")
    d = k * (ell + 1)
    if isinstance(x, (ChamberWeight, WeylElem, Interval)):
        return x.shift(d)
    if isinstance(x, int):
        return x + d
    raise DomainError(f"cannot shift {type(x).__name__}")
