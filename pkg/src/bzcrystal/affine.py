"""sigma-invariant BZ data of type A_ell^(1) and the folded Kashiwara
operators.

An element is a word of residues applied as folded lowering operators to O.
A component is evaluated on demand: the outermost folded operator at residue
p expands, for the queried chamber weight gamma, into the finite composition
of ordinary lowering operators over ``L(gamma, p)``, and each ordinary step
only needs the tail element at gamma and at one reflected weight.

Two elements are identified through their raising normal form: repeatedly
remove the least residue whose folded epsilon is positive. The parent along
a residue is located among the already complete previous layer by ruling
out every other candidate with an explicit component witness.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterator

from .bz_finite import FiniteBZDatum, gamma_table
from .crystal_finite import DominantWeight, raise_e
from .errors import CapacityError, DomainError, EvaluationError, IntegrityError
from .graph import CrystalGraph, assemble
from .roots import (
    ChamberWeight,
    Interval,
    WeylElem,
    affine_cartan_entry,
    enumerate_gamma,
    fundamental,
    hull,
    pairing,
    reflect,
)

DEFAULT_MAX_PAD_DOUBLINGS = 5
DEFAULT_PROBE_RADIUS = 4
DEFAULT_MAX_NODES = 50_000


def Lset(gamma: ChamberWeight, p: int, ell: int) -> list[int]:
    """All ``q = p mod ell+1`` with positive pairing against gamma, ascending."""
    n = ell + 1
    return [q for q in range(gamma.anchor, gamma.top + 1) if (q - p) % n == 0 and pairing(q, gamma) > 0]


class FoldedEvaluator:
    """Memoized component and theta evaluation for one affine rank."""

    def __init__(self, ell: int, max_doublings: int = DEFAULT_MAX_PAD_DOUBLINGS, normalize: bool = True):
        if ell < 2:
            raise DomainError("affine rank must be at least 2")
        self.ell = ell
        self.n = ell + 1
        self.max_doublings = max_doublings
        self.normalize = normalize
        self._partial: dict = {}
        self._theta: dict = {}

    # sigma moves every index by n; a sigma-invariant element does not see it
    def _shift_to_base(self, gamma: ChamberWeight) -> int:
        if not self.normalize:
            return 0
        return -(gamma.anchor // self.n) * self.n

    def component(self, word: tuple[int, ...], gamma: ChamberWeight) -> int:
        if not word:
            return 0
        return self.partial(word[:-1], tuple(Lset(gamma, word[-1], self.ell)), gamma)

    def partial(self, tail: tuple[int, ...], qs: tuple[int, ...], gamma: ChamberWeight) -> int:
        """Component at gamma of ``f_{qs[-1]} ... f_{qs[0]}`` applied to the tail element."""
        if not qs:
            return self.component(tail, gamma)
        k = self._shift_to_base(gamma)
        if k:
            gamma = gamma.shift(k)
            qs = tuple(q + k for q in qs)
        key = (tail, qs, gamma)
        hit = self._partial.get(key)
        if hit is not None:
            return hit
        q, rest = qs[-1], qs[:-1]
        val = self.partial(tail, rest, gamma)
        if pairing(q, gamma) > 0:
            # The other members of qs lie at least ell+1 >= 3 away from q, so
            # they change neither Theta at Lambda_q nor at s_q Lambda_q: the
            # shift constant of the partial product equals that of the tail.
            c = self.theta(tail, WeylElem.identity(), q) - self.theta(tail, WeylElem.simple(q), q) - 1
            val = min(val, self.partial(tail, rest, reflect(q, gamma)) + c)
        self._partial[key] = val
        return val

    def theta(self, word: tuple[int, ...], w: WeylElem, i: int) -> int:
        """Stabilized ``M_{w Lambda_i}``: evaluate at ``w varpi_i^J`` on growing windows."""
        if self.normalize:
            k = -(i // self.n) * self.n
            if k:
                w, i = w.shift(k), i + k
        key = (word, w, i)
        hit = self._theta.get(key)
        if hit is not None:
            return hit
        pts = [i]
        if w.support:
            pts += [min(w.support), max(w.support) - 1]
        core = hull(pts)
        pad = self.n
        prev = None
        for _ in range(self.max_doublings + 1):
            J = core.widen(pad)
            v = self.component(word, w.act(fundamental(J, i)))
            if prev is not None and v == prev:
                self._theta[key] = v
                return v
            prev = v
            pad *= 2
        raise EvaluationError(f"theta of {word} at ({w!r}, {i}) did not settle")


_EVALUATORS: dict[int, FoldedEvaluator] = {}


def evaluator(ell: int) -> FoldedEvaluator:
    ev = _EVALUATORS.get(ell)
    if ev is None:
        ev = _EVALUATORS[ell] = FoldedEvaluator(ell)
    return ev


@dataclass(frozen=True)
class LazyBZElement:
    """``f_{w[-1]} ... f_{w[0]} O`` with folded operators; residues in 0..ell."""

    ell: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        if self.ell < 2:
            raise DomainError("affine rank must be at least 2")
        n = self.ell + 1
        object.__setattr__(self, "word", tuple(int(p) % n for p in self.word))

    @property
    def depth(self) -> int:
        return len(self.word)

    def component(self, gamma: ChamberWeight) -> int:
        return evaluator(self.ell).component(self.word, gamma)

    def __repr__(self):
        return f"LazyBZElement(ell={self.ell}, word={list(self.word)})"


def origin(ell: int) -> LazyBZElement:
    return LazyBZElement(ell, ())


def component(M: LazyBZElement, gamma: ChamberWeight) -> int:
    return M.component(gamma)


def fold_theta(M: LazyBZElement, w: WeylElem, i: int) -> int:
    return evaluator(M.ell).theta(M.word, w, i)


def residues(ell: int) -> range:
    return range(ell + 1)


def fold_wt(M: LazyBZElement) -> tuple[int, ...]:
    e = WeylElem.identity()
    return tuple(fold_theta(M, e, i) for i in residues(M.ell))


def wt_root_pairing(wt: tuple[int, ...], p: int, ell: int) -> int:
    """``<wt, alpha_p>`` for a weight given by coefficients on the coroots."""
    return sum(c * affine_cartan_entry(p, i, ell) for i, c in enumerate(wt))


def fold_epsilon(M: LazyBZElement, p: int) -> int:
    e, sp = WeylElem.identity(), WeylElem.simple(p)
    th = lambda w, i: fold_theta(M, w, i)  # noqa: E731
    val = -(th(e, p) + th(sp, p) - th(e, p - 1) - th(e, p + 1))
    if val < 0:
        raise IntegrityError(f"negative epsilon {val} at {p} for {M!r}")
    return val


def fold_phi(M: LazyBZElement, p: int) -> int:
    return wt_root_pairing(fold_wt(M), p % (M.ell + 1), M.ell) + fold_epsilon(M, p)


def fold_f(M: LazyBZElement, p: int) -> LazyBZElement:
    return LazyBZElement(M.ell, M.word + (p % (M.ell + 1),))


# ----------------------------------------------------------- truncation


def _lambda_check(lam: DominantWeight, ell: int):
    if lam.indices != tuple(residues(ell)):
        raise DomainError(f"weight must list coefficients for residues 0..{ell}")


def neg_s_fundamental(i: int) -> ChamberWeight:
    """``-s_i Lambda_i``: the set ``Z_{<=i-1} + {i+1}``."""
    return ChamberWeight(i - 1, (i + 1,))


def affine_lambda_membership(M: LazyBZElement, lam: DominantWeight) -> bool:
    _lambda_check(lam, M.ell)
    return all(M.component(neg_s_fundamental(i)) >= -lam[i] for i in residues(M.ell))


def cap_F_affine(M: LazyBZElement, lam: DominantWeight, p: int) -> LazyBZElement | None:
    """Folded lowering kept only if the result stays in the truncation.

    Lowering at residue p can only break the inequality at residue p, since
    ``L(-s_i Lambda_i, p)`` is empty unless i = p mod ell+1.
    """
    _lambda_check(lam, M.ell)
    N = fold_f(M, p)
    r = p % (M.ell + 1)
    return N if N.component(neg_s_fundamental(r)) >= -lam[r] else None


def Phi_affine(M: LazyBZElement, lam: DominantWeight, p: int) -> int:
    _lambda_check(lam, M.ell)
    r = p % (M.ell + 1)
    return fold_theta(M, WeylElem.identity(), r) - fold_theta(M, WeylElem.simple(r), r) + lam[r]


def big_weight_affine(M: LazyBZElement, lam: DominantWeight) -> tuple[int, ...]:
    """``lambda + wt(M)`` by its pairings with the simple roots."""
    wt = fold_wt(M)
    return tuple(lam[p] + wt_root_pairing(wt, p, M.ell) for p in residues(M.ell))


# -------------------------------------------------- layers and normal forms


def probe_weights(ell: int, radius: int) -> Iterator[ChamberWeight]:
    """Chamber weights of the windows ``[-k, ell+k]``, k = 0 .. radius, without repeats."""
    seen: set[ChamberWeight] = set()
    for k in range(radius + 1):
        for g in enumerate_gamma(Interval(-k, ell + k)):
            if g not in seen:
                seen.add(g)
                yield g


class FoldedCrystal:
    """Breadth-first layers of B(infinity) (or of a truncation) with canonical keys.

    A key is the raising normal form: the sequence of residues removed by
    repeatedly raising at the least residue with positive epsilon. The
    canonical word of a node is its key reversed.
    """

    def __init__(self, ell: int, lam: DominantWeight | None = None,
                 probe_radius: int = DEFAULT_PROBE_RADIUS, max_nodes: int = DEFAULT_MAX_NODES):
        if lam is not None:
            _lambda_check(lam, ell)
        self.ell = ell
        self.lam = lam
        self.probe_radius = probe_radius
        self.max_nodes = max_nodes
        self.layers: list[dict[tuple, LazyBZElement]] = [{(): origin(ell)}]
        self.edges: list[tuple[tuple, tuple, int]] = []
        self.witness_probes = 0
        self._eps: dict = {}

    @property
    def size(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def eps_vector(self, M: LazyBZElement) -> tuple[int, ...]:
        v = self._eps.get(M.word)
        if v is None:
            v = self._eps[M.word] = tuple(fold_epsilon(M, p) for p in residues(self.ell))
        return v

    def step(self, M: LazyBZElement, p: int) -> LazyBZElement | None:
        if self.lam is None:
            return fold_f(M, p)
        return cap_F_affine(M, self.lam, p)

    def ensure_depth(self, depth: int) -> None:
        while len(self.layers) <= depth:
            self._grow()

    def _grow(self) -> None:
        d = len(self.layers) - 1
        new: dict[tuple, LazyBZElement] = {}
        for key in sorted(self.layers[d]):
            X = self.layers[d][key]
            for p in residues(self.ell):
                Y = self.step(X, p)
                if Y is None:
                    continue
                k = self.key_of(Y, parent=(p, key))
                if k not in new:
                    if self.size + len(new) >= self.max_nodes:
                        raise CapacityError(f"node budget {self.max_nodes} exceeded", self)
                    new[k] = LazyBZElement(self.ell, tuple(reversed(k)))
                self.edges.append((key, k, p))
        self.layers.append(new)

    def key_of(self, Y: LazyBZElement, parent: tuple[int, tuple] | None = None) -> tuple:
        """Canonical key of Y; ``parent = (p, key)`` records a known ``Y = f_p X``."""
        if Y.depth == 0:
            return ()
        eps = self.eps_vector(Y)
        r = next((p for p, e in enumerate(eps) if e > 0), None)
        if r is None:
            raise IntegrityError(f"{Y!r} has no positive epsilon but is not O")
        if parent is not None and parent[0] == r:
            return (r,) + parent[1]
        if parent is None and Y.word[-1] == r:
            return (r,) + self.key_of(LazyBZElement(self.ell, Y.word[:-1]))
        return (r,) + self.parent_key(Y, r)

    def parent_key(self, Y: LazyBZElement, r: int) -> tuple:
        """Key of ``e_r Y`` in the previous layer."""
        d = Y.depth
        self.ensure_depth(d - 1)
        eps = self.eps_vector(Y)
        if eps[r] == 0:
            raise DomainError(f"epsilon_{r} vanishes")
        if Y.word[-1] == r and Y.word[:-1] in {M.word for M in self.layers[d - 1].values()}:
            return tuple(reversed(Y.word[:-1]))
        target = list(fold_wt(Y))
        target[r] += 1
        target = tuple(target)
        cands = [
            k for k, Z in sorted(self.layers[d - 1].items())
            if self.eps_vector(Z)[r] == eps[r] - 1 and fold_wt(Z) == target
        ]
        cands = [k for k in cands if self.eps_vector(fold_f(self.layers[d - 1][k], r)) == eps]
        if len(cands) > 1:
            cands = self._eliminate(Y, r, cands, d - 1)
        if not cands:
            raise IntegrityError(f"no parent of {Y!r} along residue {r}")
        return cands[0]

    def _eliminate(self, Y: LazyBZElement, r: int, cands: list[tuple], layer: int) -> list[tuple]:
        alive = {k: fold_f(self.layers[layer][k], r) for k in cands}
        for g in probe_weights(self.ell, self.probe_radius):
            self.witness_probes += 1
            y = Y.component(g)
            alive = {k: Z for k, Z in alive.items() if Z.component(g) == y}
            if len(alive) <= 1:
                return list(alive)
        raise EvaluationError(
            f"{len(alive)} candidates for the parent of {Y!r} agree on all probes up to radius {self.probe_radius}"
        )

    def normal_form(self, M: LazyBZElement) -> list[int]:
        return list(self.key_of(M))

    def raise_along(self, M: LazyBZElement, p: int) -> LazyBZElement | None:
        r = p % (self.ell + 1)
        if self.eps_vector(M)[r] == 0:
            return None
        if M.word[-1] == r:
            return LazyBZElement(self.ell, M.word[:-1])
        return LazyBZElement(self.ell, tuple(reversed(self.parent_key(M, r))))

    def graph(self, depth: int) -> CrystalGraph:
        self.ensure_depth(depth)
        records = {}
        for d in range(depth + 1):
            for k, M in self.layers[d].items():
                eps = self.eps_vector(M)
                wt = fold_wt(M)
                if self.lam is None:
                    ph = tuple(wt_root_pairing(wt, p, self.ell) + eps[p] for p in residues(self.ell))
                else:
                    ph = tuple(Phi_affine(M, self.lam, p) for p in residues(self.ell))
                records[k] = {"weight": wt, "eps": eps, "phi": ph, "depth": d, "complete": d < depth}
        edges = [(a, b, p) for a, b, p in self.edges if len(a) < depth]
        meta = {
            "type": "affine",
            "ell": self.ell,
            "depth_limit": depth,
            "lambda": None if self.lam is None else list(self.lam.coeffs),
        }
        return assemble(tuple(residues(self.ell)), records, edges, meta, lambda k: k)


_CRYSTALS: dict[int, FoldedCrystal] = {}


def _binf_layers(ell: int) -> FoldedCrystal:
    fc = _CRYSTALS.get(ell)
    if fc is None:
        fc = _CRYSTALS[ell] = FoldedCrystal(ell)
    return fc


def fold_e(M: LazyBZElement, p: int) -> LazyBZElement | None:
    """Folded raising, realized by locating the parent along residue p."""
    if fold_epsilon(M, p) == 0:
        return None
    return _binf_layers(M.ell).raise_along(M, p)


def normal_form(M: LazyBZElement) -> list[int]:
    return _binf_layers(M.ell).normal_form(M)


def same_element(M: LazyBZElement, N: LazyBZElement) -> bool:
    return M.ell == N.ell and normal_form(M) == normal_form(N)


def generate_affine_binf(ell: int, depth: int, max_nodes: int = DEFAULT_MAX_NODES) -> CrystalGraph:
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    fc = FoldedCrystal(ell, max_nodes=max_nodes)
    try:
        return fc.graph(depth)
    except CapacityError as exc:
        raise CapacityError(str(exc), fc.graph(len(fc.layers) - 1)) from None


def generate_affine_blambda(ell: int, lam: DominantWeight, depth: int,
                            max_nodes: int = DEFAULT_MAX_NODES) -> CrystalGraph:
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    fc = FoldedCrystal(ell, lam, max_nodes=max_nodes)
    try:
        return fc.graph(depth)
    except CapacityError as exc:
        raise CapacityError(str(exc), fc.graph(len(fc.layers) - 1)) from None


# --------------------------------------------------- secondary evaluators


def window_datum(M: LazyBZElement, J: Interval) -> FiniteBZDatum:
    """Dense restriction of M to Gamma_J."""
    return FiniteBZDatum(J, [M.component(g) for g in gamma_table(J).gammas])


def raise_component_by_window(M: LazyBZElement, p: int, gamma: ChamberWeight, pad: int | None = None) -> int | None:
    """``(e_L M)_gamma`` with ``L = L(gamma, p)``, computed with finite raising on a window.

    Independent of the normal-form parent search; used as a cross-check.
    """
    ell = M.ell
    pad = ell + 1 if pad is None else pad
    L = Lset(gamma, p, ell)
    pts = L + [gamma.anchor, gamma.top]
    J = hull(pts).widen(pad)
    D = window_datum(M, J)
    for q in L:
        D = raise_e(D, q)
        if D is None:
            return None
    return D[gamma]


def unfolded_word(word: tuple[int, ...], gamma: ChamberWeight, ell: int, extra: int = 0) -> tuple[int, ...]:
    """Ordinary lowering word standing for a folded word in two residues at gamma.

    Every letter p expands to ``L_p``, a common translate-closed set of
    representatives containing ``L(gamma, p)`` for both residues.
    """
    n = ell + 1
    res = sorted(set(word))
    if len(res) > 2:
        raise DomainError("locality words use at most two residues")
    offsets: set[int] = set()
    for r in res:
        for q in Lset(gamma, r, ell):
            offsets.add(q - r)
    if offsets:
        lo, hi = min(offsets), max(offsets)
        offsets |= set(range(lo - extra * n, hi + extra * n + 1, n))
    out = []
    for r in word:
        out.extend(sorted(r + t for t in offsets))
    return tuple(out)


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
