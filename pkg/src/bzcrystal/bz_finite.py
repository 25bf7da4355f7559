"""Finite-type BZ data over an interval I.

A datum is a dense integer vector indexed by Gamma_I. Internally each chamber
weight of Gamma_I is a bitmask over the points ``lo .. hi+1`` (bit k stands
for ``lo + k``); the per-interval lookup tables live in :class:`GammaTable`.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import CapacityError, DomainError
from .roots import (
    ChamberWeight,
    Interval,
    WeylElem,
    enumerate_gamma,
    fundamental,
    window_pattern,
    window_weight,
)

MAX_WEYL_RANK = 7


def _mask_of(interval: Interval, gamma: ChamberWeight) -> int:
    t = window_pattern(interval, gamma)
    if t is None:
        raise DomainError(f"{gamma!r} is not a chamber weight of {interval}")
    return sum(1 << (x - interval.lo) for x in t)


def _apply_perm(perm: tuple[int, ...], mask: int) -> int:
    out = 0
    k = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[k]
        mask >>= 1
        k += 1
    return out


def _swap_bits(mask: int, k: int) -> int:
    a, b = (mask >> k) & 1, (mask >> (k + 1)) & 1
    if a == b:
        return mask
    return mask ^ (0b11 << k)


class GammaTable:
    """Index tables for Gamma_I: positions, reflections and Weyl-orbit terms."""

    def __init__(self, interval: Interval):
        self.interval = interval
        self.gammas = tuple(enumerate_gamma(interval))
        self.index = {g: n for n, g in enumerate(self.gammas)}
        self.masks = tuple(_mask_of(interval, g) for g in self.gammas)
        self.by_mask = {m: n for n, m in enumerate(self.masks)}
        lo = interval.lo
        self.fund = {i: self.index[fundamental(interval, i)] for i in interval}
        self.s_fund = {
            i: self.by_mask[_swap_bits(self.masks[self.fund[i]], i - lo)] for i in interval
        }
        # -varpi_i = Z_{<=i}, and -s_i varpi_i = Z_{<=i-1} + {i+1}
        self.neg_fund = {i: self.index[ChamberWeight(i)] for i in interval}
        self.neg_s_fund = {i: self.index[ChamberWeight(i - 1, (i + 1,))] for i in interval}
        self.reflect = {}
        self.lower_pairs = {}
        for p in interval:
            k = p - lo
            refl = tuple(self.by_mask[_swap_bits(m, k)] for m in self.masks)
            self.reflect[p] = refl
            # pairing(p, gamma) > 0 iff p+1 in S and p not in S
            self.lower_pairs[p] = tuple(
                (n, refl[n])
                for n, m in enumerate(self.masks)
                if (m >> (k + 1)) & 1 and not (m >> k) & 1
            )

    def __len__(self):
        return len(self.gammas)

    # -- Weyl group data, built on first use ------------------------------

    @property
    def weyl(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Pairs (permutation of window offsets, reduced word), by length."""
        if not hasattr(self, "_weyl"):
            self._weyl = _weyl_perms(self.interval)
        return self._weyl

    def weyl_elements(self) -> list[WeylElem]:
        lo = self.interval.lo
        return [
            WeylElem.from_mapping({lo + k: lo + v for k, v in enumerate(perm)}, word)
            for perm, word in self.weyl
        ]

    def act(self, perm: tuple[int, ...], n: int) -> int:
        return self.by_mask[_apply_perm(perm, self.masks[n])]

    @property
    def edge_terms(self):
        """Distinct edge inequalities as (rep, i, a, b, cs):
        M[a] + M[b] - sum M[cs] <= 0, shortest representatives first."""
        if not hasattr(self, "_edge"):
            self._edge = self._build_edge()
        return self._edge

    @property
    def tpr_terms(self):
        """Distinct Pluecker relations as (rep, i, i+1, (l1, l2, r1, r2, r3, r4)):
        M[l1] + M[l2] == min(M[r1] + M[r2], M[r3] + M[r4])."""
        if not hasattr(self, "_tpr"):
            self._tpr = self._build_tpr()
        return self._tpr

    # A term at (w, i) only depends on the values w takes at i, i+1 (and i+2
    # for the Pluecker relations) and on the set D = w{i+2, ..}; enumerating
    # those directly avoids walking the whole Weyl group.

    def _build_edge(self):
        n = self.interval.size + 1
        full = (1 << n) - 1
        idx = self.by_mask
        out = []
        for d in range(n - 1):
            for D in _subsets(n, d):
                rest = [x for x in range(n) if not (D >> x) & 1]
                for x in rest:
                    for y in rest:
                        if x == y:
                            continue
                        # w(i) = x, w(i+1) = y, w{i+2..} = D, so i = lo + n - d - 2
                        k = n - d - 2
                        cs = []
                        if k > 0:
                            cs.append(idx[D | (1 << x) | (1 << y)])
                        if D:
                            cs.append(idx[D])
                        low = full & ~(D | (1 << x) | (1 << y))
                        rep = (low, (x, y), D)
                        out.append((_rep_length(rep), rep, self.interval.lo + k,
                                    idx[D | (1 << y)], idx[D | (1 << x)], tuple(cs)))
        out.sort(key=lambda t: t[0])
        return tuple(t[1:] for t in out)

    def _build_tpr(self):
        n = self.interval.size + 1
        full = (1 << n) - 1
        idx = self.by_mask
        out = []
        for d in range(n - 2):
            for D in _subsets(n, d):
                rest = [x for x in range(n) if not (D >> x) & 1]
                for a, b, c in itertools.combinations(rest, 3):
                    A, B, C = 1 << a, 1 << b, 1 << c
                    terms = (
                        idx[D | A | C], idx[D | B], idx[D | B | C],
                        idx[D | A], idx[D | C], idx[D | A | B],
                    )
                    rep = (full & ~(D | A | B | C), (a, b, c), D)
                    i = self.interval.lo + n - d - 3
                    out.append((_rep_length(rep), rep, i, i + 1, terms))
        out.sort(key=lambda t: t[0])
        return tuple(t[1:] for t in out)

    def rep_word(self, rep) -> tuple[int, ...]:
        """Reduced word of the shortest w realising a term representative."""
        low, mid, D = rep
        perm = _bits(low) + list(mid) + _bits(D)
        word = []
        # bubble sort: perm * s_k swaps positions k, k+1
        for top in range(len(perm) - 1, 0, -1):
            for k in range(top):
                if perm[k] > perm[k + 1]:
                    perm[k], perm[k + 1] = perm[k + 1], perm[k]
                    word.append(self.interval.lo + k)
        return tuple(reversed(word))


def _bits(mask: int) -> list[int]:
    out, k = [], 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _subsets(n: int, d: int):
    for c in itertools.combinations(range(n), d):
        yield sum(1 << x for x in c)


def _rep_length(rep) -> int:
    """Inversions of the permutation low (ascending), mid, D (ascending)."""
    low, mid, D = rep
    inv = 0
    later = D
    for x in reversed(mid):
        inv += (later & ((1 << x) - 1)).bit_count()
        later |= 1 << x
    for x in _bits(low):
        inv += (later & ((1 << x) - 1)).bit_count()
    return inv


@lru_cache(maxsize=32)
def gamma_table(interval: Interval) -> GammaTable:
    return GammaTable(interval)


def _weyl_perms(interval: Interval):
    if interval.size > MAX_WEYL_RANK:
        raise CapacityError(f"Weyl group of rank {interval.size} is too large to enumerate")
    n = interval.size + 1
    ident = tuple(range(n))
    seen = {ident}
    out = [(ident, ())]
    queue = deque(out)
    while queue:
        perm, word = queue.popleft()
        for k in range(n - 1):
            # (w s_i)(x) = w(s_i(x)): swap the entries at positions k, k+1
            p = list(perm)
            p[k], p[k + 1] = p[k + 1], p[k]
            p = tuple(p)
            if p not in seen:
                seen.add(p)
                item = (p, word + (interval.lo + k,))
                out.append(item)
                queue.append(item)
    return out


# ---------------------------------------------------------------- the datum


class FiniteBZDatum:
    """An integer-valued map on Gamma_I, stored densely."""

    __slots__ = ("interval", "values", "_hash")

    def __init__(self, interval: Interval, values: Iterable[int]):
        self.interval = interval
        self.values = tuple(int(v) for v in values)
        if len(self.values) != len(gamma_table(interval)):
            raise DomainError(
                f"expected {len(gamma_table(interval))} components, got {len(self.values)}"
            )
        self._hash = None

    @classmethod
    def zero(cls, interval: Interval) -> "FiniteBZDatum":
        return cls(interval, [0] * len(gamma_table(interval)))

    @classmethod
    def from_mapping(cls, interval: Interval, comps: Mapping[ChamberWeight, int]) -> "FiniteBZDatum":
        table = gamma_table(interval)
        if set(comps) != set(table.gammas):
            raise DomainError("component keys must be exactly Gamma_I")
        return cls(interval, [comps[g] for g in table.gammas])

    @property
    def table(self) -> GammaTable:
        return gamma_table(self.interval)

    def __getitem__(self, gamma: ChamberWeight) -> int:
        try:
            return self.values[self.table.index[gamma]]
        except KeyError:
            raise DomainError(f"{gamma!r} is not a chamber weight of {self.interval}") from None

    def items(self):
        return zip(self.table.gammas, self.values)

    def as_dict(self) -> dict[ChamberWeight, int]:
        return dict(self.items())

    def replace(self, updates: Mapping[ChamberWeight, int]) -> "FiniteBZDatum":
        vals = list(self.values)
        for g, v in updates.items():
            vals[self.table.index[g]] = v
        return FiniteBZDatum(self.interval, vals)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteBZDatum)
            and self.interval == other.interval
            and self.values == other.values
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.interval, self.values))
        return self._hash

    def __repr__(self):
        nz = {g: v for g, v in self.items() if v}
        return f"FiniteBZDatum({self.interval.lo}:{self.interval.hi}, {nz})"

    def to_json(self):
        return {
            "interval": self.interval.to_json(),
            "components": [{"weight": g.to_json(), "value": v} for g, v in self.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "FiniteBZDatum":
        try:
            lo, hi = obj["interval"]
            interval = Interval(int(lo), int(hi))
            comps = {}
            for item in obj["components"]:
                g = ChamberWeight.from_json(item["weight"])
                if g in comps:
                    raise DomainError(f"duplicate component {g!r}")
                comps[g] = int(item["value"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed datum JSON: {exc}") from exc
        return cls.from_mapping(interval, comps)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge" or "tpr"
    word: tuple[int, ...]
    i: int
    j: int | None
    slack: int

    def describe(self) -> str:
        w = "e" if not self.word else "s" + ".".join(map(str, self.word))
        if self.kind == "edge":
            return f"edge w={w} i={self.i} slack=+{self.slack}"
        return f"tpr w={w} i={self.i} j={self.j} lhs-rhs={self.slack:+d}"


@dataclass
class ValidationReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.checked + other.checked, self.violations + other.violations)

    def summary(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'}: {self.checked} checks, {len(self.violations)} violations"
        return "\n".join([head] + [v.describe() for v in self.violations])


def check_edge(M: FiniteBZDatum, first_only: bool = False) -> ValidationReport:
    """Edge inequalities over every w in W_I and i in I."""
    vals = M.values
    report = ValidationReport()
    for rep, i, a, b, cs in M.table.edge_terms:
        report.checked += 1
        s = vals[a] + vals[b] - sum(vals[c] for c in cs)
        if s > 0:
            report.violations.append(Violation("edge", M.table.rep_word(rep), i, None, s))
            if first_only:
                break
    return report


def check_tpr(M: FiniteBZDatum, first_only: bool = False) -> ValidationReport:
    """Tropical Pluecker relations at every w with two adjacent ascents."""
    v = M.values
    report = ValidationReport()
    for rep, i, j, (l1, l2, r1, r2, r3, r4) in M.table.tpr_terms:
        report.checked += 1
        d = v[l1] + v[l2] - min(v[r1] + v[r2], v[r3] + v[r4])
        if d:
            report.violations.append(Violation("tpr", M.table.rep_word(rep), i, j, d))
            if first_only:
                break
    return report


def validate(M: FiniteBZDatum) -> ValidationReport:
    return check_edge(M) + check_tpr(M)


def is_bz_datum(M: FiniteBZDatum) -> bool:
    return check_edge(M, first_only=True).ok and check_tpr(M, first_only=True).ok


def in_bz_I(M: FiniteBZDatum) -> bool:
    """All components at the negated fundamentals vanish."""
    t = M.table
    return all(M.values[t.neg_fund[i]] == 0 for i in M.interval)


# ----------------------------------------------------------- polytope data


def coroot_coords(interval: Interval, a: int, b: int) -> tuple[int, ...]:
    """``e_a - e_b`` written in the basis ``h_lo .. h_hi``."""
    out = [0] * interval.size
    if a < b:
        for k in range(a, b):
            out[k - interval.lo] += 1
    else:
        for k in range(b, a):
            out[k - interval.lo] -= 1
    return tuple(out)


def mv_vertices(M: FiniteBZDatum) -> dict[WeylElem, tuple[int, ...]]:
    """Vertex ``mu_w = sum_i M[w varpi_i] w h_i`` for every w in W_I."""
    t = M.table
    I = M.interval
    out = {}
    for (perm, _), w in zip(t.weyl, t.weyl_elements()):
        vec = [0] * I.size
        for i in I:
            m = M.values[t.act(perm, t.fund[i])]
            if m:
                for k, c in enumerate(coroot_coords(I, w(i), w(i + 1))):
                    vec[k] += m * c
        out[w] = tuple(vec)
    return out


def weight(M: FiniteBZDatum) -> tuple[int, ...]:
    """Coefficients of wt(M) on ``h_i``, i in I."""
    t = M.table
    return tuple(M.values[t.fund[i]] for i in M.interval)


# ------------------------------------------------------------ restrictions


def _check_sub(M: FiniteBZDatum, K: Interval):
    if not M.interval.contains_interval(K):
        raise DomainError(f"{K} is not contained in {M.interval}")


def restrict_down(M: FiniteBZDatum, K: Interval) -> FiniteBZDatum:
    """Components of M on Gamma_K, which sits inside Gamma_I literally."""
    _check_sub(M, K)
    return FiniteBZDatum(K, [M[g] for g in gamma_table(K).gammas])


def lift_weight(I: Interval, K: Interval, gamma: ChamberWeight) -> ChamberWeight:
    """Send ``w varpi_i^K`` to ``w varpi_i^I`` for w in W_K and i in K."""
    t = window_pattern(K, gamma)
    if t is None:
        raise DomainError(f"{gamma!r} is not a chamber weight of {K}")
    return window_weight(I, set(t) | set(range(K.hi + 2, I.hi + 2)))


def restrict_up(M: FiniteBZDatum, K: Interval) -> FiniteBZDatum:
    """The datum ``M^K`` read off on ``{w varpi_i^I : w in W_K, i in K}``."""
    _check_sub(M, K)
    I = M.interval
    return FiniteBZDatum(K, [M[lift_weight(I, K, g)] for g in gamma_table(K).gammas])
