"""Multiplicity oracles that do not use BZ data: positive roots with
multiplicities, Kostant partition counts, the Weyl dimension formula, and
Freudenthal's recursion for finite and affine type A.

Weights below a highest weight are written by their deficit: a vector of
nonnegative coefficients on the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod

from .errors import CapacityError, DomainError, IntegrityError
from .roots import Interval, affine_cartan_entry, cartan_entry


@dataclass(frozen=True)
class RootSystemSpec:
    kind: str  # "finite" or "affine"
    rank: int  # m for A_m, ell for A_ell^(1)
    height_bound: int = 12
    _roots: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def finite(cls, interval_or_rank, height_bound: int = 12) -> "RootSystemSpec":
        m = interval_or_rank.size if isinstance(interval_or_rank, Interval) else int(interval_or_rank)
        return cls("finite", m, height_bound)

    @classmethod
    def affine(cls, ell: int, height_bound: int = 12) -> "RootSystemSpec":
        if ell < 2:
            raise DomainError("affine rank must be at least 2")
        return cls("affine", ell, height_bound)

    @property
    def dim(self) -> int:
        return self.rank if self.kind == "finite" else self.rank + 1

    def cartan(self, i: int, j: int) -> int:
        if self.kind == "finite":
            return cartan_entry(i, j)
        return affine_cartan_entry(i, j, self.rank)

    def form(self, a, b) -> int:
        return sum(a[i] * b[j] * self.cartan(i, j) for i in range(self.dim) if a[i] for j in range(self.dim) if b[j])

    def positive_roots(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Pairs (root in simple-root coordinates, multiplicity) up to the height bound."""
        return _positive_roots(self.kind, self.rank, self.height_bound)


@lru_cache(maxsize=None)
def _positive_roots(kind: str, rank: int, height: int):
    if kind == "finite":
        out = []
        for a in range(rank):
            for b in range(a, rank):
                if b - a + 1 <= height:
                    out.append((tuple(1 if a <= k <= b else 0 for k in range(rank)), 1))
        return tuple(out)
    ell = rank
    n = ell + 1
    out = []
    # finite roots of A_ell on indices 1..ell, positive and negative
    fin = []
    for a in range(1, ell + 1):
        for b in range(a, ell + 1):
            fin.append(tuple(1 if a <= k <= b else 0 for k in range(n)))
    delta = tuple([1] * n)
    for k in range(0, height // n + 2):
        for r in fin:
            pos = tuple(x + k * y for x, y in zip(r, delta))
            if sum(pos) <= height:
                out.append((pos, 1))
            if k >= 1:
                neg = tuple(k * y - x for x, y in zip(r, delta))
                if sum(neg) <= height:
                    out.append((neg, 1))
        if k >= 1 and k * n <= height:
            out.append((tuple(k * y for y in delta), ell))
    return tuple(sorted(out))


def _check_height(R: RootSystemSpec, beta):
    if len(beta) != R.dim:
        raise DomainError(f"expected {R.dim} coordinates")
    if any(b < 0 for b in beta):
        raise DomainError("coordinates must be nonnegative")
    if sum(beta) > R.height_bound:
        raise CapacityError(f"height {sum(beta)} exceeds bound {R.height_bound}")


def kostant_count(R: RootSystemSpec, beta) -> int:
    """Number of ways to write beta as a sum of positive roots, counted with multiplicity."""
    beta = tuple(beta)
    _check_height(R, beta)
    return _kostant(R.kind, R.rank, R.height_bound, beta)


@lru_cache(maxsize=None)
def _kostant_table(kind: str, rank: int, height: int, beta: tuple[int, ...]):
    roots = [(r, m) for r, m in _positive_roots(kind, rank, height) if all(x <= y for x, y in zip(r, beta))]
    # coin-change over vectors; a root of multiplicity m counts as m coins
    boxes = list(product(*(range(b + 1) for b in beta)))
    table = {v: 0 for v in boxes}
    table[tuple([0] * len(beta))] = 1
    for r, m in roots:
        for _ in range(m):
            for v in boxes:
                src = tuple(x - y for x, y in zip(v, r))
                if min(src) >= 0:
                    table[v] += table[src]
    return table


def _kostant(kind, rank, height, beta):
    return _kostant_table(kind, rank, height, beta)[beta]


def weyl_dim(interval_or_rank, lam) -> int:
    """Dimension of the irreducible A_m module with highest weight lam (Dynkin labels)."""
    lam = list(lam)
    m = len(lam)
    num = prod(sum(lam[k] + 1 for k in range(a, b + 1)) for a in range(m) for b in range(a, m))
    den = prod(b - a + 1 for a in range(m) for b in range(a, m))
    return num // den


class Freudenthal:
    """Weight multiplicities of the irreducible module of highest weight lam."""

    def __init__(self, R: RootSystemSpec, lam):
        self.R = R
        self.lam = tuple(lam)
        if len(self.lam) != R.dim or any(c < 0 for c in self.lam):
            raise DomainError("highest weight must be dominant with one label per simple root")
        self._memo: dict[tuple[int, ...], int] = {}

    def _lam_rho(self, beta) -> int:
        return sum(b * (l + 1) for b, l in zip(beta, self.lam))

    def mult(self, beta) -> int:
        beta = tuple(beta)
        _check_height(self.R, beta)
        for h in range(sum(beta) + 1):
            self._layer(h, beta)
        return self._memo.get(beta, 0)

    def _layer(self, h: int, bound):
        """Fill every deficit of height h dominated by ``bound``."""
        for beta in _vectors_of_height(len(bound), h):
            if beta in self._memo or any(x > y for x, y in zip(beta, bound)):
                continue
            self._memo[beta] = self._compute(beta)

    def _compute(self, beta) -> int:
        if not any(beta):
            return 1
        R = self.R
        denom = 2 * self._lam_rho(beta) - R.form(beta, beta)
        total = Fraction(0)
        for alpha, mult in R.positive_roots():
            k = 1
            while True:
                b2 = tuple(x - k * y for x, y in zip(beta, alpha))
                if min(b2) < 0:
                    break
                m2 = self._memo.get(b2)
                if m2 is None:
                    m2 = self._memo[b2] = self._compute(b2)
                if m2:
                    # (mu + k alpha, alpha) with mu = lam - beta
                    ip = sum(a * l for a, l in zip(alpha, self.lam)) - R.form(beta, alpha) + k * R.form(alpha, alpha)
                    total += mult * ip * m2
                k += 1
        total *= 2
        if denom == 0:
            if total:
                raise IntegrityError(f"vanishing denominator with nonzero sum at {beta}")
            return 0
        val = total / denom
        if val.denominator != 1 or val < 0:
            raise IntegrityError(f"non-integral multiplicity {val} at {beta}")
        return int(val)


def _vectors_of_height(dim: int, h: int):
    if dim == 1:
        yield (h,)
        return
    for a in range(h + 1):
        for rest in _vectors_of_height(dim - 1, h - a):
            yield (a,) + rest


def freudenthal_mult(R: RootSystemSpec, lam, beta) -> int:
    """Multiplicity of the weight ``lam - beta``."""
    return Freudenthal(R, lam).mult(beta)


def basic_rep_series(ell: int, terms: int) -> list[int]:
    """Coefficients of ``prod_k (1 - q^k)^(-ell)``."""
    coeffs = [1] + [0] * (terms - 1)
    for k in range(1, terms):
        for _ in range(ell):
            for n in range(k, terms):
                coeffs[n] += coeffs[n - k]
    return coeffs


@dataclass
class CharacterReport:
    compared: int = 0
    mismatches: list[tuple[tuple[int, ...], int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'}: {self.compared} weights compared, {len(self.mismatches)} mismatches"
        lines = [f"deficit {b}: graph {g}, oracle {o}" for b, g, o in self.mismatches]
        return "\n".join([head] + lines)


def compare_character(G, R: RootSystemSpec, lam=None) -> CharacterReport:
    """Compare node counts per weight with Kostant counts (no lam) or Freudenthal (with lam).

    Every weight whose depth is within the explored range is compared,
    including those the graph never reached.
    """
    limit = G.depth_limit
    if limit is None:
        limit = max(n.depth for n in G.nodes) + 1
    counts: dict[tuple[int, ...], int] = {}
    for n in G.nodes:
        beta = tuple(-x for x in n.weight)
        counts[beta] = counts.get(beta, 0) + 1
    R = RootSystemSpec(R.kind, R.rank, max(R.height_bound, limit))
    oracle = Freudenthal(R, lam) if lam is not None else None
    report = CharacterReport()
    for h in range(limit + 1):
        for beta in _vectors_of_height(R.dim, h):
            want = oracle.mult(beta) if oracle else kostant_count(R, beta)
            got = counts.get(beta, 0)
            report.compared += 1
            if want != got:
                report.mismatches.append((beta, got, want))
    for beta in counts:
        if sum(beta) > limit:
            report.mismatches.append((beta, counts[beta], 0))
    return report
