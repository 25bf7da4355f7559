"""Kashiwara operators on finite-type BZ data and on the truncation by a
dominant weight, and breadth-first generation of the crystal graphs."""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable

from .bz_finite import FiniteBZDatum, check_edge, check_tpr, weight
from .errors import CapacityError, DomainError, IntegrityError
from .graph import CrystalGraph, assemble
from .roots import Interval

DEFAULT_MAX_NODES = 200_000


@dataclass(frozen=True)
class DominantWeight:
    """Pairings of a dominant weight with the simple roots, listed by index."""

    indices: tuple[int, ...]
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.coeffs):
            raise DomainError("one coefficient per index is required")
        if any(c < 0 for c in self.coeffs):
            raise DomainError("dominant weight coefficients must be nonnegative")

    @classmethod
    def of(cls, indices: Iterable[int], coeffs: Iterable[int]) -> "DominantWeight":
        return cls(tuple(indices), tuple(int(c) for c in coeffs))

    @classmethod
    def parse(cls, indices: Iterable[int], text: str) -> "DominantWeight":
        try:
            coeffs = [int(x) for x in text.split(",") if x.strip()]
        except ValueError as exc:
            raise DomainError(f"cannot parse weight {text!r}") from exc
        return cls.of(indices, coeffs)

    def __getitem__(self, p: int) -> int:
        try:
            return self.coeffs[self.indices.index(p)]
        except ValueError:
            raise DomainError(f"index {p} not in {self.indices}") from None


@dataclass
class RaiseStats:
    calls: int = 0
    fallbacks: int = 0
    candidates_tried: int = 0


raise_stats = RaiseStats()


def _check_color(M: FiniteBZDatum, p: int):
    if p not in M.interval:
        raise DomainError(f"color {p} not in {M.interval}")


def epsilon(M: FiniteBZDatum, p: int) -> int:
    _check_color(M, p)
    t, v = M.table, M.values
    s = v[t.fund[p]] + v[t.s_fund[p]]
    for q in (p - 1, p + 1):
        if q in M.interval:
            s -= v[t.fund[q]]
    return -s


def root_pairing(M: FiniteBZDatum, p: int) -> int:
    """``<wt(M), alpha_p>``."""
    t, v = M.table, M.values
    s = 2 * v[t.fund[p]]
    for q in (p - 1, p + 1):
        if q in M.interval:
            s -= v[t.fund[q]]
    return s


def phi(M: FiniteBZDatum, p: int) -> int:
    _check_color(M, p)
    return root_pairing(M, p) + epsilon(M, p)


def shift_constant(M: FiniteBZDatum, p: int) -> int:
    """``c_p(M) = M[varpi_p] - M[s_p varpi_p] - 1``."""
    t, v = M.table, M.values
    return v[t.fund[p]] - v[t.s_fund[p]] - 1


def lower_f(M: FiniteBZDatum, p: int) -> FiniteBZDatum:
    _check_color(M, p)
    c = shift_constant(M, p)
    vals = list(M.values)
    old = M.values
    for n, r in M.table.lower_pairs[p]:
        cand = old[r] + c
        if cand < old[n]:
            vals[n] = cand
    return FiniteBZDatum(M.interval, vals)


def raise_e(M: FiniteBZDatum, p: int) -> FiniteBZDatum | None:
    """Inverse of ``lower_f`` along color p, or None when eps_p vanishes.

    Components with nonpositive pairing are kept. For a positive pairing the
    relation ``M = f_p N`` forces ``N = M`` unless M sits exactly on the
    lowered value, in which case N is M or M+1 there. The all-raised choice
    is tried first; other assignments are searched only if it fails.
    """
    _check_color(M, p)
    if epsilon(M, p) == 0:
        return None
    raise_stats.calls += 1
    t = M.table
    old = M.values
    c = shift_constant(M, p)
    fixed = list(old)
    fixed[t.fund[p]] = old[t.fund[p]] + 1
    ambiguous = [n for n, r in t.lower_pairs[p] if n != t.fund[p] and old[n] == old[r] + c + 1]

    def attempt(raised, base=fixed):
        vals = list(base)
        for n in raised:
            vals[n] += 1
        N = FiniteBZDatum(M.interval, vals)
        raise_stats.candidates_tried += 1
        if lower_f(N, p) != M:
            return None
        if not check_edge(N, first_only=True).ok or not check_tpr(N, first_only=True).ok:
            return None
        return N

    N = attempt(ambiguous)
    if N is not None:
        return N
    raise_stats.fallbacks += 1
    # pin down what the Pluecker relations force, then search the rest
    vals = list(fixed)
    for n in ambiguous:
        vals[n] = None
    rest = sorted(_propagate(t, vals, set(ambiguous)))
    base = [old[n] if v is None else v for n, v in enumerate(vals)]
    for size in range(len(rest), -1, -1):
        for raised in itertools.combinations(rest, size):
            N = attempt(raised, base)
            if N is not None:
                return N
    raise IntegrityError(f"no raising candidate verifies for color {p} on {M!r}")


def _propagate(table, vals: list, unknown: set[int]) -> set[int]:
    """Fill unknown entries of vals determined by a single Pluecker relation.

    Returns the indices that stay unknown.
    """
    terms = table.tpr_terms
    watch = defaultdict(list)
    for k, term in enumerate(terms):
        for n in term[3]:
            if n in unknown:
                watch[n].append(k)
    queue = deque(k for n in sorted(unknown) for k in watch[n])
    while queue:
        idx = terms[queue.popleft()][3]
        missing = [n for n in idx if vals[n] is None]
        if len(missing) != 1:
            continue
        x = missing[0]
        got = _solve_tpr(vals, idx, x)
        if got is not None:
            vals[x] = got
            unknown.discard(x)
            queue.extend(watch[x])
    return unknown


def _solve_tpr(vals, idx, x):
    l1, l2, r1, r2, r3, r4 = idx
    v = lambda n: 0 if n == x else vals[n]  # noqa: E731
    rhs = (v(r1) + v(r2), v(r3) + v(r4))
    if x in (l1, l2):
        return min(rhs) - (v(l1) + v(l2))
    lhs = v(l1) + v(l2)
    mine, other = (rhs[0], rhs[1]) if x in (r1, r2) else (rhs[1], rhs[0])
    # x only matters if its side attains the minimum strictly
    if lhs < other:
        return lhs - mine
    return None


# ---------------------------------------------------------------- truncation


def truncate_membership(M: FiniteBZDatum, lam: DominantWeight) -> bool:
    t, v = M.table, M.values
    return all(v[t.neg_s_fund[i]] >= -lam[i] for i in M.interval)


def cap_F(M: FiniteBZDatum, lam: DominantWeight, p: int) -> FiniteBZDatum | None:
    N = lower_f(M, p)
    return N if truncate_membership(N, lam) else None


def Phi(M: FiniteBZDatum, lam: DominantWeight, p: int) -> int:
    _check_color(M, p)
    t, v = M.table, M.values
    return v[t.fund[p]] - v[t.s_fund[p]] + lam[p]


def big_weight(M: FiniteBZDatum, lam: DominantWeight) -> tuple[int, ...]:
    """``lambda + wt(M)``, given by its pairings with the simple roots."""
    return tuple(lam[p] + root_pairing(M, p) for p in M.interval)


# ---------------------------------------------------------------- generation


def _bfs(start, colors, step, annotate, depth, max_nodes):
    records = {start.values: annotate(start, 0)}
    edges = []
    queue = deque([(start, 0)])
    while queue:
        M, d = queue.popleft()
        if depth is not None and d >= depth:
            records[M.values]["complete"] = False
            continue
        for p in colors:
            N = step(M, p)
            if N is None:
                continue
            if N.values not in records:
                if len(records) >= max_nodes:
                    partial = assemble(colors, records, edges, {}, lambda k: k)
                    raise CapacityError(f"node budget {max_nodes} exceeded", partial)
                records[N.values] = annotate(N, d + 1)
                queue.append((N, d + 1))
            edges.append((M.values, N.values, p))
    return records, edges


def generate_binf(I: Interval, depth: int, max_nodes: int = DEFAULT_MAX_NODES) -> CrystalGraph:
    """B(infinity) for the interval, explored from O to the given depth."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    colors = tuple(I)

    def annotate(M, d):
        eps = tuple(epsilon(M, p) for p in colors)
        ph = tuple(root_pairing(M, p) + e for p, e in zip(colors, eps))
        return {"weight": weight(M), "eps": eps, "phi": ph, "depth": d, "complete": True}

    records, edges = _bfs(FiniteBZDatum.zero(I), colors, lower_f, annotate, depth, max_nodes)
    meta = {"type": "finite", "interval": I.to_json(), "depth_limit": depth, "lambda": None}
    return assemble(colors, records, edges, meta, lambda k: k)


def generate_blambda(I: Interval, lam: DominantWeight, max_nodes: int = DEFAULT_MAX_NODES) -> CrystalGraph:
    """The truncated crystal B(lambda), explored to exhaustion."""
    colors = tuple(I)
    if lam.indices != colors:
        raise DomainError(f"weight must have one coefficient per index of {I}")

    def annotate(M, d):
        eps = tuple(epsilon(M, p) for p in colors)
        ph = tuple(Phi(M, lam, p) for p in colors)
        return {"weight": weight(M), "eps": eps, "phi": ph, "depth": d, "complete": True}

    step = lambda M, p: cap_F(M, lam, p)  # noqa: E731
    records, edges = _bfs(FiniteBZDatum.zero(I), colors, step, annotate, None, max_nodes)
    meta = {"type": "finite", "interval": I.to_json(), "depth_limit": None, "lambda": list(lam.coeffs)}
    return assemble(colors, records, edges, meta, lambda k: k)


def graph_data(G: CrystalGraph) -> list[FiniteBZDatum]:
    """The BZ data behind the nodes of a freshly generated finite graph."""
    I = Interval(*G.meta["interval"])
    return [FiniteBZDatum(I, n.key) for n in G.nodes]
