"""``bzcli``: generate, validate and verify BZ crystals from the shell.

Exit codes: 0 success, 1 a validation or verification failure, 2 a node
budget or window limit was hit, 64 bad usage or an unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .affine import LazyBZElement, evaluator, generate_affine_binf, generate_affine_blambda
from .bz_finite import FiniteBZDatum, validate
from .crystal_finite import DominantWeight, generate_binf, generate_blambda
from .errors import CapacityError, DomainError, EvaluationError, StabilizationError
from .graph import CrystalGraph
from .oracles import RootSystemSpec, compare_character
from .roots import ChamberWeight, Interval
from .stembridge import check_stembridge

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CAPACITY = 2
EXIT_USAGE = 64

COMMANDS = ("validate", "gen", "component", "check-stembridge", "char", "export")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    file: Path | None = None
    type: str = "finite"
    interval: Interval | None = None
    ell: int | None = None
    depth: int | None = None
    lam: tuple[int, ...] | None = None
    word: tuple[int, ...] = ()
    gamma: ChamberWeight | None = None
    oracle: str = "kostant"
    max_nodes: int = 200_000
    max_window: int = 5  # doublings of the theta window in affine evaluation
    recursion_limit: int = 20_000
    out: Path | None = None
    dot: Path | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command}")
        if self.max_nodes <= 0 or self.max_window <= 0 or self.recursion_limit <= 0:
            raise UsageError("budgets must be positive")
        if self.depth is not None and self.depth < 0:
            raise UsageError("--depth must be nonnegative")
        if self.command == "gen":
            if self.type == "finite":
                if self.interval is None:
                    raise UsageError("finite generation needs --interval")
                if self.lam is None and self.depth is None:
                    raise UsageError("B(infinity) generation needs --depth")
                rank = self.interval.size
            else:
                if self.ell is None or self.ell < 2:
                    raise UsageError("affine generation needs --ell of at least 2")
                if self.depth is None:
                    raise UsageError("affine generation needs --depth")
                rank = self.ell + 1
            if self.lam is not None and len(self.lam) != rank:
                raise UsageError(f"--lambda needs {rank} coefficients")
            if self.out is None and self.dot is None:
                raise UsageError("give --out and/or --dot")
        if self.command == "component":
            if self.ell is None or self.ell < 2 or self.gamma is None:
                raise UsageError("component needs --ell (at least 2), --word and --gamma")
        if self.command in ("validate", "check-stembridge", "char", "export") and self.file is None:
            raise UsageError(f"{self.command} needs an input file")
        if self.lam is not None and any(c < 0 for c in self.lam):
            raise UsageError("--lambda coefficients must be nonnegative")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _interval(text: str) -> Interval:
    try:
        return Interval.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _gamma(text: str) -> ChamberWeight:
    try:
        return ChamberWeight.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad chamber weight {text!r}: {exc}") from None


def _add_evaluation_budgets(p: argparse.ArgumentParser):
    p.add_argument("--max-window", type=int, help="window doublings allowed when a component stabilizes")
    p.add_argument("--recursion-limit", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bzcli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check edge inequalities and tropical Plucker relations")
    p.add_argument("file", type=Path)

    p = sub.add_parser("gen", help="generate a crystal graph")
    p.add_argument("--type", choices=("finite", "affine"), default="finite")
    p.add_argument("--interval", type=_interval)
    p.add_argument("--ell", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--lambda", dest="lam", type=_int_list)
    p.add_argument("--max-nodes", type=int)
    _add_evaluation_budgets(p)
    p.add_argument("--out", type=Path)
    p.add_argument("--dot", type=Path)

    p = sub.add_parser("component", help="evaluate one component of a folded element")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--word", type=_int_list, default=())
    p.add_argument("--gamma", type=_gamma, required=True)
    _add_evaluation_budgets(p)

    p = sub.add_parser("check-stembridge", help="check the local Stembridge conditions")
    p.add_argument("file", type=Path)
    p.add_argument("--lambda", dest="lam", type=_int_list)

    p = sub.add_parser("char", help="compare weight multiplicities with an oracle")
    p.add_argument("file", type=Path)
    p.add_argument("--oracle", choices=("kostant", "freudenthal"), required=True)
    p.add_argument("--lambda", dest="lam", type=_int_list)

    p = sub.add_parser("export", help="re-serialize a graph as JSON and/or DOT")
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path)
    p.add_argument("--dot", type=Path)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    budget = getattr(ns, "max_nodes", None)
    env = os.environ.get("BZCLI_BUDGET_NODES")
    if env is not None:
        try:
            budget = int(env)
        except ValueError:
            raise UsageError(f"BZCLI_BUDGET_NODES must be an integer, got {env!r}") from None
    cfg = RunConfig(command=ns.command)
    names = ("file", "type", "interval", "ell", "depth", "lam", "word", "gamma", "oracle",
             "max_window", "recursion_limit", "out", "dot")
    for name in names:
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    if budget is not None:
        cfg.max_nodes = budget
    return cfg


# ------------------------------------------------------------------ commands


def _read(path: Path):
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: Path) -> CrystalGraph:
    try:
        return CrystalGraph.loads(_read(path))
    except DomainError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write_graph(G: CrystalGraph, out: Path | None, dot: Path | None):
    if out is not None:
        out.write_text(G.dumps())
    if dot is not None:
        dot.write_text(G.to_dot())


def _root_system(G: CrystalGraph) -> RootSystemSpec:
    kind = G.meta.get("type")
    if kind == "affine":
        return RootSystemSpec.affine(int(G.meta["ell"]))
    if kind == "finite":
        return RootSystemSpec.finite(len(G.colors))
    raise UsageError("graph meta does not record its type")


def _graph_lambda(cfg: RunConfig, G: CrystalGraph):
    lam = cfg.lam if cfg.lam is not None else G.meta.get("lambda")
    if lam is not None and len(lam) != len(G.colors):
        raise UsageError(f"--lambda needs {len(G.colors)} coefficients")
    return None if lam is None else tuple(lam)


def cmd_validate(cfg: RunConfig) -> int:
    try:
        M = FiniteBZDatum.from_json(json.loads(_read(cfg.file)))
    except (ValueError, DomainError) as exc:
        raise UsageError(f"{cfg.file}: {exc}") from None
    report = validate(M)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(cfg: RunConfig) -> int:
    try:
        G = _generate(cfg)
    except CapacityError as exc:
        if isinstance(exc.partial, CrystalGraph):
            _write_graph(exc.partial, cfg.out, cfg.dot)
        raise
    _write_graph(G, cfg.out, cfg.dot)
    print(f"{len(G)} nodes, {len(G.edges)} edges; depth counts {G.depth_counts()}")
    return EXIT_OK


def _generate(cfg: RunConfig) -> CrystalGraph:
    if cfg.type == "finite":
        I = cfg.interval
        if cfg.lam is not None:
            G = generate_blambda(I, DominantWeight.of(I, cfg.lam), cfg.max_nodes)
        else:
            G = generate_binf(I, cfg.depth, cfg.max_nodes)
    else:
        if cfg.lam is not None:
            lam = DominantWeight.of(range(cfg.ell + 1), cfg.lam)
            G = generate_affine_blambda(cfg.ell, lam, cfg.depth, cfg.max_nodes)
        else:
            G = generate_affine_binf(cfg.ell, cfg.depth, cfg.max_nodes)
    return G


def cmd_component(cfg: RunConfig) -> int:
    M = LazyBZElement(cfg.ell, tuple(cfg.word))
    print(M.component(cfg.gamma))
    return EXIT_OK


def cmd_check_stembridge(cfg: RunConfig) -> int:
    G = _load_graph(cfg.file)
    report = check_stembridge(G, _graph_lambda(cfg, G))
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_char(cfg: RunConfig) -> int:
    G = _load_graph(cfg.file)
    lam = _graph_lambda(cfg, G)
    if cfg.oracle == "freudenthal" and lam is None:
        raise UsageError("the freudenthal oracle needs a highest weight (--lambda)")
    if cfg.oracle == "kostant":
        lam = None
    report = compare_character(G, _root_system(G), lam)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_export(cfg: RunConfig) -> int:
    G = _load_graph(cfg.file)
    if cfg.out is None and cfg.dot is None:
        sys.stdout.write(G.dumps())
    else:
        _write_graph(G, cfg.out, cfg.dot)
    return EXIT_OK


HANDLERS = {
    "validate": cmd_validate,
    "gen": cmd_gen,
    "component": cmd_component,
    "check-stembridge": cmd_check_stembridge,
    "char": cmd_char,
    "export": cmd_export,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        sys.setrecursionlimit(max(sys.getrecursionlimit(), cfg.recursion_limit))
        if cfg.ell is None:
            return HANDLERS[cfg.command](cfg)
        ev = evaluator(cfg.ell)
        saved, ev.max_doublings = ev.max_doublings, cfg.max_window
        try:
            return HANDLERS[cfg.command](cfg)
        finally:
            ev.max_doublings = saved
    except UsageError as exc:
        print(f"bzcli: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, StabilizationError, EvaluationError) as exc:
        print(f"bzcli: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"bzcli: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"bzcli: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
