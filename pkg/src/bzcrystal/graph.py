"""Colored directed crystal graphs with per-node annotations, plus JSON and
DOT serialization.

Weights are stored as coefficient vectors on the simple coroots relative to
the highest element: the root has weight zero and a p-colored edge subtracts
``h_p``. A dominant weight used for truncation is kept in ``meta["lambda"]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import DomainError

PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


@dataclass
class Node:
    id: int
    weight: tuple[int, ...]
    eps: tuple[int, ...]
    phi: tuple[int, ...]
    depth: int
    complete: bool
    key: Any = None  # canonical identity used during generation; not serialized

    def to_json(self):
        return {
            "id": self.id,
            "weight": list(self.weight),
            "eps": list(self.eps),
            "phi": list(self.phi),
            "depth": self.depth,
            "complete": self.complete,
        }


@dataclass
class CrystalGraph:
    colors: tuple[int, ...]
    nodes: list[Node] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    root: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index()

    def _index(self):
        self._out: dict[tuple[int, int], int] = {}
        self._in: dict[tuple[int, int], int] = {}
        for a, b, p in self.edges:
            if (a, p) in self._out or (b, p) in self._in:
                raise DomainError(f"node has two {p}-colored edges in the same direction")
            self._out[(a, p)] = b
            self._in[(b, p)] = a

    def add_edge(self, a: int, b: int, p: int):
        if (a, p) in self._out or (b, p) in self._in:
            raise DomainError(f"node has two {p}-colored edges in the same direction")
        self.edges.append((a, b, p))
        self._out[(a, p)] = b
        self._in[(b, p)] = a

    def color_pos(self, p: int) -> int:
        return self.colors.index(p)

    def f(self, x: int, p: int):
        """Target of the p-edge out of x; None if absent (meaningful only for complete x)."""
        return self._out.get((x, p))

    def e(self, x: int, p: int):
        return self._in.get((x, p))

    def __len__(self):
        return len(self.nodes)

    @property
    def depth_limit(self):
        return self.meta.get("depth_limit")

    def weight_counts(self) -> dict[tuple[int, ...], int]:
        out: dict[tuple[int, ...], int] = {}
        for n in self.nodes:
            out[n.weight] = out.get(n.weight, 0) + 1
        return out

    def depth_counts(self) -> list[int]:
        out: list[int] = []
        for n in self.nodes:
            while len(out) <= n.depth:
                out.append(0)
            out[n.depth] += 1
        return out

    def check_structure(self) -> list[str]:
        """Edge bookkeeping: weight drops by h_p and eps_p rises by one."""
        problems = []
        for a, b, p in self.edges:
            k = self.color_pos(p)
            x, y = self.nodes[a], self.nodes[b]
            expect = tuple(w - (1 if n == k else 0) for n, w in enumerate(x.weight))
            if y.weight != expect:
                problems.append(f"weight mismatch on edge {a}->{b} color {p}")
            if y.eps[k] != x.eps[k] + 1:
                problems.append(f"eps mismatch on edge {a}->{b} color {p}")
        return problems

    def relabeled(self, perm: list[int]) -> "CrystalGraph":
        """Copy with node ``n`` renamed ``perm[n]``."""
        nodes = [None] * len(self.nodes)
        for n in self.nodes:
            nodes[perm[n.id]] = Node(perm[n.id], n.weight, n.eps, n.phi, n.depth, n.complete, n.key)
        edges = [(perm[a], perm[b], p) for a, b, p in self.edges]
        return CrystalGraph(self.colors, nodes, edges, perm[self.root], dict(self.meta))

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "colors": list(self.colors),
            "root": self.root,
            "meta": self.meta,
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [{"from": a, "to": b, "color": p} for a, b, p in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, obj) -> "CrystalGraph":
        try:
            nodes = [
                Node(
                    int(n["id"]),
                    tuple(n["weight"]),
                    tuple(n["eps"]),
                    tuple(n["phi"]),
                    int(n["depth"]),
                    bool(n["complete"]),
                )
                for n in obj["nodes"]
            ]
            nodes.sort(key=lambda n: n.id)
            if [n.id for n in nodes] != list(range(len(nodes))):
                raise DomainError("node ids must be 0..n-1")
            edges = [(int(e["from"]), int(e["to"]), int(e["color"])) for e in obj["edges"]]
            colors = tuple(obj.get("colors") or sorted({p for _, _, p in edges}))
            return cls(colors, nodes, edges, int(obj.get("root", 0)), dict(obj.get("meta", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed graph JSON: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "CrystalGraph":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DomainError(f"not JSON: {exc}") from exc

    def to_dot(self) -> str:
        lines = ["digraph crystal {", "  node [shape=box, fontsize=10];"]
        for n in self.nodes:
            label = ",".join(map(str, n.weight))
            style = "" if n.complete else ", style=dashed"
            lines.append(f'  n{n.id} [label="({label})"{style}];')
        for a, b, p in self.edges:
            col = PALETTE[self.color_pos(p) % len(PALETTE)]
            lines.append(f'  n{a} -> n{b} [label="{p}", color={col}, fontcolor={col}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def assemble(colors, records, edges, meta, sort_key) -> CrystalGraph:
    """Build a graph with ids assigned by a canonical sort.

    ``records`` maps a generation key to a dict with weight, eps, phi, depth,
    complete; ``edges`` holds (key, key, color) triples.
    """
    order = sorted(records, key=lambda k: (records[k]["depth"], sort_key(k)))
    ids = {k: n for n, k in enumerate(order)}
    nodes = [
        Node(ids[k], tuple(r["weight"]), tuple(r["eps"]), tuple(r["phi"]), r["depth"], r["complete"], k)
        for k, r in ((k, records[k]) for k in order)
    ]
    es = sorted((ids[a], ids[b], p) for a, b, p in edges)
    return CrystalGraph(tuple(colors), nodes, es, 0, meta)
