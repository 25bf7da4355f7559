"""Stembridge's local conditions (C1)-(C6) evaluated on a crystal graph.

Each condition instance is evaluated by a small function returning "pass",
"fail", "skip" (a needed node was not expanded) or None (the hypothesis does
not apply). For B(infinity)-type graphs, where no dominant weight is given,
phi is the value recomputed from the weight and epsilon; the phi-string
part of semiregularity and (C6) are then not evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .graph import CrystalGraph

UNKNOWN = object()

CONDITIONS = ("semiregular", "C1", "C2", "C3", "C4", "C5", "C6")


@dataclass
class ConditionResult:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    applicable: bool = True
    witnesses: list[tuple] = field(default_factory=list)

    def record(self, outcome, witness, keep: int):
        if outcome is None:
            return
        if outcome == "pass":
            self.passed += 1
        elif outcome == "skip":
            self.skipped += 1
        else:
            self.failed += 1
            if len(self.witnesses) < keep:
                self.witnesses.append(witness)


@dataclass
class StembridgeReport:
    results: dict[str, ConditionResult]

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results.values())

    @property
    def failures(self) -> int:
        return sum(r.failed for r in self.results.values())

    @property
    def skipped(self) -> int:
        return sum(r.skipped for r in self.results.values())

    def summary(self) -> str:
        lines = [f"{'PASS' if self.ok else 'FAIL'}: {self.failures} failures, {self.skipped} skipped"]
        for name in CONDITIONS:
            r = self.results[name]
            if not r.applicable:
                lines.append(f"{name}: not applicable")
                continue
            lines.append(f"{name}: pass={r.passed} fail={r.failed} skip={r.skipped}")
            for w in r.witnesses:
                lines.append(f"  witness {w}")
        return "\n".join(lines)


class _View:
    """Partial operators on a graph; f out of an unexpanded node is UNKNOWN."""

    def __init__(self, G: CrystalGraph, lam):
        self.G = G
        self.lam = None if lam is None else tuple(lam)
        self.pos = {p: k for k, p in enumerate(G.colors)}

    def f(self, x, p):
        if x is None or x is UNKNOWN:
            return x
        y = self.G.f(x, p)
        if y is None and not self.G.nodes[x].complete:
            return UNKNOWN
        return y

    def e(self, x, p):
        if x is None or x is UNKNOWN:
            return x
        return self.G.e(x, p)

    def eps(self, x, p):
        return self.G.nodes[x].eps[self.pos[p]]

    def phi(self, x, p):
        return self.G.nodes[x].phi[self.pos[p]]

    def run(self, x, ops):
        """Apply ops left to right, e.g. ("e", p) then ("f", q)."""
        for kind, p in ops:
            x = self.e(x, p) if kind == "e" else self.f(x, p)
            if x is None or x is UNKNOWN:
                return x
        return x


def _semiregular(V: _View, x, p, _q):
    n, y = 0, V.e(x, p)
    while y is not None:
        n, y = n + 1, V.e(y, p)
    if n != V.eps(x, p):
        return "fail"
    if V.lam is None:
        return "pass"
    n, y = 0, V.f(x, p)
    while y is not None and y is not UNKNOWN:
        n, y = n + 1, V.f(y, p)
    if y is UNKNOWN:
        return "skip"
    return "pass" if n == V.phi(x, p) else "fail"


def _c1(V: _View, x, p, q):
    y = V.e(x, p)
    if y is None:
        return None
    if V.eps(x, q) > V.eps(y, q):
        return "fail"
    if V.lam is not None and V.phi(y, q) > V.phi(x, q):
        return "fail"
    return "pass"


def _c2(V: _View, x, p, q):
    ep, eq = V.e(x, p), V.e(x, q)
    if ep is None or eq is None or V.eps(ep, q) != V.eps(x, q):
        return None
    a, b = V.e(eq, p), V.e(ep, q)
    return "pass" if a is not None and a == b else "fail"


def _c3(V: _View, x, p, q):
    ep, eq = V.e(x, p), V.e(x, q)
    if ep is None or eq is None:
        return None
    if V.eps(ep, q) != V.eps(x, q) + 1 or V.eps(eq, p) != V.eps(x, p) + 1:
        return None
    a = V.run(x, [("e", p), ("e", q), ("e", q), ("e", p)])
    b = V.run(x, [("e", q), ("e", p), ("e", p), ("e", q)])
    if a is None or b is None or a != b:
        return "fail"
    if V.lam is not None:
        if V.phi(ep, q) != V.phi(V.run(x, [("e", q), ("e", p), ("e", p)]), q):
            return "fail"
        if V.phi(eq, p) != V.phi(V.run(x, [("e", p), ("e", q), ("e", q)]), p):
            return "fail"
    return "pass"


def _c4(V: _View, x, p, q):
    fp, fq = V.f(x, p), V.f(x, q)
    if fp is UNKNOWN or fq is UNKNOWN:
        return "skip"
    # the hypothesis is the phi-dual of (C2); the epsilon form contradicts B(rho) of A_2
    if fp is None or fq is None or V.phi(fp, q) != V.phi(x, q):
        return None
    a, b = V.f(fq, p), V.f(fp, q)
    if a is UNKNOWN or b is UNKNOWN:
        return "skip"
    return "pass" if a is not None and a == b else "fail"


def _c5(V: _View, x, p, q):
    fp, fq = V.f(x, p), V.f(x, q)
    if fp is UNKNOWN or fq is UNKNOWN:
        return "skip"
    if fp is None or fq is None:
        return None
    if V.phi(fp, q) != V.phi(x, q) + 1 or V.phi(fq, p) != V.phi(x, p) + 1:
        return None
    a = V.run(x, [("f", p), ("f", q), ("f", q), ("f", p)])
    b = V.run(x, [("f", q), ("f", p), ("f", p), ("f", q)])
    if a is UNKNOWN or b is UNKNOWN:
        return "skip"
    if a is None or b is None or a != b:
        return "fail"
    c = V.run(x, [("f", q), ("f", p), ("f", p)])
    d = V.run(x, [("f", p), ("f", q), ("f", q)])
    if V.eps(fp, q) != V.eps(c, q) or V.eps(fq, p) != V.eps(d, p):
        return "fail"
    return "pass"


_CHECKS = {"semiregular": _semiregular, "C1": _c1, "C2": _c2, "C3": _c3, "C4": _c4, "C5": _c5}


def replay(G: CrystalGraph, name: str, witness: tuple, lam=None):
    """Re-evaluate one condition instance in isolation."""
    V = _View(G, lam)
    if name == "C6":
        return _c6(V)[0]
    x, p, q = witness
    return _CHECKS[name](V, x, p, q)


def _c6(V: _View):
    G = V.G
    zero = tuple([0] * len(G.colors))
    for n in G.nodes:
        if n.weight != zero:
            continue
        if all(V.e(n.id, p) is None for p in G.colors) and all(
            V.phi(n.id, p) == V.lam[k] for k, p in enumerate(G.colors)
        ):
            return "pass", n.id
    return "fail", None


def check_stembridge(G: CrystalGraph, lam=None, keep_witnesses: int = 5) -> StembridgeReport:
    if lam is None and G.meta.get("lambda") is not None:
        lam = G.meta["lambda"]
    if lam is not None and len(lam) != len(G.colors):
        raise DomainError("weight length does not match the number of colors")
    V = _View(G, lam)
    results = {name: ConditionResult() for name in CONDITIONS}
    if lam is None:
        results["C6"].applicable = False
    for n in G.nodes:
        x = n.id
        for p in G.colors:
            results["semiregular"].record(_semiregular(V, x, p, None), (x, p, None), keep_witnesses)
            for q in G.colors:
                if p == q:
                    continue
                for name in ("C1", "C2", "C3", "C4", "C5"):
                    if not results[name].applicable:
                        continue
                    results[name].record(_CHECKS[name](V, x, p, q), (x, p, q), keep_witnesses)
    if lam is not None:
        outcome, _ = _c6(V)
        results["C6"].record(outcome, ("C6",), keep_witnesses)
    return StembridgeReport(results)
