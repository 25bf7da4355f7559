"""Type A_infinity BZ data through finite windows.

An element is recorded by the sequence of Kashiwara operators that produced
it from O. Its restriction to a window J is obtained by replaying that
sequence with the finite operators over J; the true component at a chamber
weight is the value once enlarging the window stops changing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bz_finite import FiniteBZDatum, gamma_table, restrict_down
from .crystal_finite import epsilon, lower_f, raise_e
from .errors import DomainError, IntegrityError, StabilizationError
from .roots import (
    ChamberWeight,
    Interval,
    WeylElem,
    fundamental,
    hull,
    in_gamma,
    reflect,
    weyl_group,
)

DEFAULT_MARGIN = 2
# pointwise evaluation only touches the components it needs, so its windows
# can be much wider than the ones that are materialized densely
DEFAULT_MAX_WINDOW = 40
DENSE_MAX_WINDOW = 9


@lru_cache(maxsize=4096)
def _replay(history: tuple[tuple[str, int], ...], window: Interval) -> FiniteBZDatum | None:
    if not history:
        return FiniteBZDatum.zero(window)
    prev = _replay(history[:-1], window)
    if prev is None:
        return None
    op, p = history[-1]
    if p not in window:
        raise DomainError(f"color {p} outside window {window}")
    return lower_f(prev, p) if op == "f" else raise_e(prev, p)


@lru_cache(maxsize=1 << 18)
def _window_value(history: tuple[tuple[str, int], ...], window: Interval, gamma: ChamberWeight) -> int | None:
    """One component of the replayed datum on ``window``, without the others.

    None means a raising step vanished because the window is too small.
    """
    if not history:
        return 0
    op, p = history[-1]
    if p not in window:
        raise DomainError(f"color {p} outside window {window}")
    if op == "e":
        if window.size > DENSE_MAX_WINDOW:
            raise StabilizationError(f"raising needs a dense window, {window} is too wide")
        D = _replay(history, window)
        return None if D is None else D[gamma]
    prev = history[:-1]
    val = _window_value(prev, window, gamma)
    if val is None or not pairing_positive(p, gamma):
        return val
    fp = fundamental(window, p)
    c = _window_value(prev, window, fp) - _window_value(prev, window, reflect(p, fp)) - 1
    return min(val, _window_value(prev, window, reflect(p, gamma)) + c)


@dataclass(frozen=True)
class WindowedBZ:
    history: tuple[tuple[str, int], ...]
    window: Interval
    datum: FiniteBZDatum = field(compare=False, repr=False)
    margin: int = DEFAULT_MARGIN
    max_window: int = DEFAULT_MAX_WINDOW

    @classmethod
    def origin(cls, window: Interval, margin: int = DEFAULT_MARGIN, max_window: int = DEFAULT_MAX_WINDOW):
        return cls((), window, FiniteBZDatum.zero(window), margin, max_window)

    @classmethod
    def from_word(cls, word, window: Interval | None = None, **kw) -> "WindowedBZ":
        """``f_{p_k} ... f_{p_1} O`` for word ``[p_1, ..., p_k]``."""
        M = cls.origin(window or hull(list(word) or [0]).widen(1), **kw)
        for p in word:
            M = inf_f(M, p)
        return M

    @property
    def colors(self) -> set[int]:
        return {p for _, p in self.history}

    def at_window(self, J: Interval) -> FiniteBZDatum:
        if J.size > min(self.max_window, DENSE_MAX_WINDOW):
            raise StabilizationError(f"window {J} is too wide to materialize")
        D = _replay(self.history, J)
        if D is None:
            raise StabilizationError(f"raising step vanished on window {J}")
        return D

    def value_at(self, J: Interval, gamma: ChamberWeight) -> int | None:
        """The component at gamma of the replay on window J (None if it vanished)."""
        if J.size > self.max_window:
            raise StabilizationError(f"window {J} exceeds maximum size {self.max_window}")
        return _window_value(self.history, J, gamma)

    def grown(self, J: Interval) -> "WindowedBZ":
        J = hull([J.lo, J.hi, self.window.lo, self.window.hi])
        return WindowedBZ(self.history, J, self.at_window(J), self.margin, self.max_window)

    def shifted(self, k: int) -> "WindowedBZ":
        hist = tuple((op, p + k) for op, p in self.history)
        J = self.window.shift(k)
        return WindowedBZ(hist, J, _replay(hist, J), self.margin, self.max_window)

    def to_json(self):
        out = self.datum.to_json()
        out["window"] = self.window.to_json()
        out["margin"] = self.margin
        return out


def _windows(M: WindowedBZ, start: Interval):
    J = start
    while True:
        yield J
        J = J.widen(M.margin)


def _base_window(M: WindowedBZ, pts) -> Interval:
    return hull(list(pts) + sorted(M.colors))


def _stabilize(M: WindowedBZ, start: Interval, value_at):
    last = []
    prev = None
    for J in _windows(M, start):
        if J.size > M.max_window:
            raise StabilizationError(f"no stable value before window size {M.max_window}", last[-2:])
        v = value_at(J)
        last.append(v)
        if v is not None and prev is not None and prev[1] == v:
            return prev
        prev = (J, v)


def _theta_start(M: WindowedBZ, w: WeylElem, i: int, pad: int) -> Interval:
    pts = [i]
    if w.support:
        pts += [min(w.support), max(w.support) - 1]
    return _base_window(M, pts).widen(pad)


def stabilization_interval(M: WindowedBZ, w: WeylElem, i: int, pad: int = 1) -> Interval:
    """First window in the growth sequence whose value agrees with the next one."""
    start = _theta_start(M, w, i, pad)
    J, _ = _stabilize(M, start, lambda J: M.value_at(J, w.act(fundamental(J, i))))
    return J


def theta(M: WindowedBZ, w: WeylElem, i: int, pad: int = 1) -> int:
    """The stabilized component ``M_{w Lambda_i}``."""
    start = _theta_start(M, w, i, pad)
    _, v = _stabilize(M, start, lambda J: M.value_at(J, w.act(fundamental(J, i))))
    return v


def component(M: WindowedBZ, gamma: ChamberWeight) -> int:
    """The stabilized value of M at a chamber weight of Gamma_Z."""
    start = _base_window(M, [gamma.anchor, max(gamma.top - 1, gamma.anchor)]).widen(1)
    while not in_gamma(start, gamma):
        start = start.widen(1)
    _, v = _stabilize(M, start, lambda J: M.value_at(J, gamma))
    return v


def restriction(M: WindowedBZ, I: Interval) -> FiniteBZDatum:
    """The true restriction ``M_I``, read from a window large enough to be stable."""
    vals = [component(M, g) for g in gamma_table(I).gammas]
    return FiniteBZDatum(I, vals)


def shift_constant(M: WindowedBZ, p: int) -> int:
    sp = WeylElem.simple(p)
    return theta(M, WeylElem.identity(), p) - theta(M, sp, p) - 1


def inf_epsilon(M: WindowedBZ, p: int) -> int:
    e = WeylElem.identity()
    return -(theta(M, e, p) + theta(M, WeylElem.simple(p), p) - theta(M, e, p - 1) - theta(M, e, p + 1))


def _interior(M: WindowedBZ, p: int) -> WindowedBZ:
    if M.window.lo < p - 1 and p + 1 < M.window.hi:
        return M
    return M.grown(hull([p - 2, p + 2]))


def inf_f(M: WindowedBZ, p: int) -> WindowedBZ:
    """Lowering with the stabilized shift constant, applied on the window."""
    M = _interior(M, p)
    c = shift_constant(M, p)
    t = M.datum.table
    vals = list(M.datum.values)
    old = M.datum.values
    for n, r in t.lower_pairs[p]:
        vals[n] = min(old[n], old[r] + c)
    D = FiniteBZDatum(M.window, vals)
    return WindowedBZ(M.history + (("f", p),), M.window, D, M.margin, M.max_window)


def inf_e(M: WindowedBZ, p: int) -> WindowedBZ | None:
    """Raising along p, recorded as a lowering word whenever one is found."""
    if inf_epsilon(M, p) == 0:
        return None
    M = _interior(M, p)
    hist = _cancel_raise(M.history, p)
    if hist is not None:
        return WindowedBZ(hist, M.window, _replay(hist, M.window), M.margin, M.max_window)
    J = M.window
    while True:
        N = raise_e(M.at_window(J), p)
        if N is not None:
            break
        J = J.widen(M.margin)
        if J.size > min(M.max_window, DENSE_MAX_WINDOW):
            raise StabilizationError(f"raising along {p} did not settle on a dense window")
    hist = _as_lowering_history(M, N, p)
    if hist is None:
        hist = M.history + (("e", p),)
    return WindowedBZ(hist, M.window, restrict_down(N, M.window), M.margin, M.max_window)


def _as_lowering_history(M: WindowedBZ, N: FiniteBZDatum, p: int):
    """A lowering word for the raised element, checked against M on a wider window."""
    word = []
    X = N
    while True:
        q = next((q for q in X.interval if epsilon(X, q) > 0), None)
        if q is None:
            break
        word.append(q)
        X = raise_e(X, q)
    hist = tuple(("f", q) for q in reversed(word))
    J = N.interval
    if J.widen(M.margin).size <= DENSE_MAX_WINDOW:
        J = J.widen(M.margin)
    before = _replay(M.history, J)
    if before is None or _replay(hist + (("f", p),), J) != before:
        return None
    return hist


def _cancel_raise(history, p):
    """Drop the latest f_p that commutes up to the end, since e_p f_p = 1.

    Operators of colors more than one apart commute on B(infinity).
    """
    for k in range(len(history) - 1, -1, -1):
        op, q = history[k]
        if q == p and op == "f":
            return history[:k] + history[k + 1:]
        if abs(q - p) <= 1:
            return None
    return None


def stability_class(M: WindowedBZ, I: Interval, K: Interval) -> bool:
    """Whether every ``v varpi_k^I`` (v in W_K, k in K) already carries its stable value."""
    if not I.contains_interval(K):
        raise DomainError(f"{K} is not contained in {I}")
    R = restriction(M, I)
    for v in weyl_group(K):
        for k in K:
            if R[v.act(fundamental(I, k))] != theta(M, v, k):
                return False
    return True


def check_window_agreement(M: WindowedBZ) -> None:
    """The materialized window must agree with the stabilized components."""
    for g, val in M.datum.items():
        if component(M, g) != val:
            raise IntegrityError(f"window value at {g!r} is not stable")


# ------------------------------------------------------ pointwise evaluation


class LazyWordBZ:
    """Pointwise evaluation of ``f_{p_k} ... f_{p_1} O`` in A_infinity.

    Each lowering step needs the previous element at gamma and at
    ``s_q gamma``, plus its stabilized shift constant; nothing is
    materialized beyond a memo table.
    """

    def __init__(self, margin: int = DEFAULT_MARGIN, max_pad: int = 64):
        self.margin = margin
        self.max_pad = max_pad
        self._memo: dict = {}
        self._const: dict = {}

    def component(self, word: tuple[int, ...], gamma: ChamberWeight) -> int:
        word = tuple(word)
        if not word:
            return 0
        key = (word, gamma)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        q = word[-1]
        tail = word[:-1]
        val = self.component(tail, gamma)
        if pairing_positive(q, gamma):
            val = min(val, self.component(tail, reflect(q, gamma)) + self.shift_constant(tail, q))
        self._memo[key] = val
        return val

    def theta(self, word: tuple[int, ...], w: WeylElem, i: int) -> int:
        word = tuple(word)
        pts = [i] + list(word)
        if w.support:
            pts += [min(w.support), max(w.support) - 1]
        J = hull(pts).widen(1)
        prev = None
        pad = 0
        while pad <= self.max_pad:
            v = self.component(word, w.act(fundamental(J, i)))
            if prev is not None and prev == v:
                return v
            prev = v
            J = J.widen(self.margin)
            pad += self.margin
        raise StabilizationError(f"theta did not settle for {w!r}, {i}")

    def shift_constant(self, word: tuple[int, ...], q: int) -> int:
        key = (word, q)
        if key not in self._const:
            self._const[key] = (
                self.theta(word, WeylElem.identity(), q) - self.theta(word, WeylElem.simple(q), q) - 1
            )
        return self._const[key]

    def epsilon(self, word: tuple[int, ...], p: int) -> int:
        e = WeylElem.identity()
        th = lambda w, i: self.theta(word, w, i)  # noqa: E731
        return -(th(e, p) + th(WeylElem.simple(p), p) - th(e, p - 1) - th(e, p + 1))


def pairing_positive(q: int, gamma: ChamberWeight) -> bool:
    return q + 1 in gamma and q not in gamma
