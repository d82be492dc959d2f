"""Command-line interface.

Exit codes: 0 realised (or demo matches), 1 refuted (or demo mismatch),
2 unknown, 64 usage error, 65 input that does not parse.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .dyadic import ONE, ZERO, DyadicRational, parse_dyadic
from .formula import ClassError, Formula, SentenceClass, classify, parse_formula, print_formula
from .machine.codec import decode
from .machine.cylinder import FULL, Cylinder
from .machine.interp import OutOfFuel
from .machine.text import parse_code, print_term
from .realisability.context import DEFAULT_DEPTH, DEFAULT_FORALL_BUDGET, DEFAULT_FUEL, DEFAULT_TRUTH_BUDGET, CheckCtx, WitnessDB
from .realisability.verdict import Status
from .sexpr import SExprError

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65
FAMILIES = ("cif", "comeagre", "measure-one", "positive")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    forall_budget: int = DEFAULT_FORALL_BUDGET
    truth_budget: int = DEFAULT_TRUTH_BUDGET
    max_k: int = 100_000
    structured: bool = False

    def __post_init__(self) -> None:
        for name in ("fuel", "depth", "forall_budget", "truth_budget", "max_k"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")

    def ctx(self, db: WitnessDB | None = None) -> CheckCtx:
        return CheckCtx(self.fuel, self.forall_budget, self.depth, self.truth_budget, db or WitnessDB())


def default_fuel() -> int:
    text = os.environ.get("RANDREAL_DEFAULT_FUEL")
    if not text:
        return DEFAULT_FUEL
    try:
        value = int(text)
    except ValueError:
        raise UsageError("RANDREAL_DEFAULT_FUEL must be a positive integer") from None
    if value <= 0:
        raise UsageError("RANDREAL_DEFAULT_FUEL must be a positive integer")
    return value


# ---------------------------------------------------------------- input


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _formula(path: str | None, inline: str | None = None) -> Formula:
    text = inline if inline is not None else _read(path)
    try:
        return parse_formula(text, closed=True)
    except (SExprError, ValueError) as e:
        raise InputError(f"formula: {e}") from None


def _code(path: str) -> int:
    try:
        return parse_code(_read(path))
    except (SExprError, ValueError) as e:
        raise InputError(f"realiser: {e}") from None


def _db(path: str | None) -> WitnessDB:
    if path is None:
        return WitnessDB()
    try:
        return WitnessDB.from_sexpr(_read(path))
    except (SExprError, ValueError) as e:
        raise InputError(f"witness database: {e}") from None


def _dyadic(text: str) -> DyadicRational:
    try:
        return parse_dyadic(text)
    except ValueError:
        raise UsageError(f"not a dyadic rational: {text}") from None


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(args.fuel, args.depth, args.forall_budget, args.truth_budget, args.max_k, args.format == "structured")


def _emit(cfg: RunConfig, pairs: list[tuple[str, object]], body: str = "") -> None:
    for key, value in pairs:
        print(f"{key} {value}" if cfg.structured else f"{key}: {value}")
    if body:
        print(body, end="" if body.endswith("\n") else "\n")


def _status_exit(status: Status) -> int:
    return {Status.REALISED: EXIT_OK, Status.REFUTED: EXIT_REFUTED, Status.UNKNOWN: EXIT_UNKNOWN}[status]


def _family(name: str):
    from .bigreal import FamilyKind

    return {
        "cif": FamilyKind.CO_INTERVAL_FREE,
        "comeagre": FamilyKind.COMEAGRE,
        "measure-one": FamilyKind.MEASURE_ONE,
        "positive": FamilyKind.POSITIVE_MEASURE,
    }[name]


# ---------------------------------------------------------------- commands


def cmd_check(args: argparse.Namespace) -> int:
    cfg = _config(args)
    phi, p = _formula(args.formula), _code(args.realiser)
    ctx = cfg.ctx(_db(args.witness_db))
    if args.mode == "classical":
        from .realisability import check_classical

        v = check_classical(p, phi, ctx)
        _emit(cfg, [("verdict", v)])
        return _status_exit(v.status)
    if args.mode == "mu":
        from .mu import MuStatus, check_mu

        r = _dyadic(args.r) if args.r else None
        v = check_mu(p, phi, r, ctx)
        pairs = [("verdict", v.status.value)]
        if v.at_least is not None:
            pairs.append(("at-least", v.at_least))
        _emit(cfg, pairs, v.report.to_text())
        return {MuStatus.REALISED: EXIT_OK, MuStatus.REFUTED: EXIT_REFUTED}.get(v.status, EXIT_UNKNOWN)
    from .bigreal import check_F

    res = check_F(p, phi, _family(args.family), ctx)
    _emit(cfg, [("verdict", res.verdict)], res.certificate.to_text())
    return _status_exit(res.status)


def cmd_synth(args: argparse.Namespace) -> int:
    from .realisability import check_classical, synth_pi1, synth_sigma1

    cfg = _config(args)
    phi = _formula(args.formula)
    cls = classify(phi)
    if cls is SentenceClass.OTHER:
        raise UsageError("synth needs a pretty Σ₁ or universal Π₁ sentence")
    code = synth_pi1(phi) if cls is SentenceClass.UNIVERSAL_PI1 else synth_sigma1(phi, cfg.fuel)
    if isinstance(code, OutOfFuel):
        _emit(cfg, [("verdict", "Unknown"), ("reason", f"no realiser found within fuel {cfg.fuel}")])
        return EXIT_UNKNOWN
    if args.output:
        Path(args.output).write_text(f"{code}\n")
    v = check_classical(code, phi, cfg.ctx())
    _emit(cfg, [("class", cls.value), ("code", code), ("recheck", v)])
    return _status_exit(v.status)


def cmd_measure(args: argparse.Namespace) -> int:
    from .mu import check_O

    cfg = _config(args)
    phi, p = _formula(args.formula), _code(args.realiser)
    try:
        cyl = Cylinder.from_pattern(args.cylinder) if args.cylinder else FULL
    except ValueError as e:
        raise UsageError(f"cylinder: {e}") from None
    report = check_O(p, phi, cyl, cfg.ctx(_db(args.witness_db)))
    _emit(cfg, [], report.to_text())
    iv = report.interval
    return EXIT_OK if iv.lo > ZERO else EXIT_REFUTED if iv.hi == ZERO else EXIT_UNKNOWN


def cmd_translate(args: argparse.Namespace) -> int:
    cfg = _config(args)
    phi, p = _formula(args.formula), _code(args.realiser)
    ctx = cfg.ctx()
    if args.dir == "mu":
        from .mu import check_mu, translate_Pmu

        out = translate_Pmu(p, phi)
        v = check_mu(out, phi, None, ctx)
        _emit(cfg, [("code", out), ("verdict", v.status.value), ("interval", v.report.interval)])
        return EXIT_OK if v.realised else EXIT_REFUTED if v.refuted else EXIT_UNKNOWN
    elif args.dir == "mu-inv":
        from .mu import translate_Pmu_inv
        from .realisability import check_classical

        out = translate_Pmu_inv(p, phi, ctx)
        if isinstance(out, OutOfFuel):
            _emit(cfg, [("verdict", "Unknown"), ("reason", "re-synthesis ran out of fuel")])
            return EXIT_UNKNOWN
        v = check_classical(out, phi, ctx)
        status = v.status
        _emit(cfg, [("code", out), ("verdict", v)])
    elif args.dir == "f":
        from .bigreal import check_F, translate_PF

        out = translate_PF(p, phi)
        res = check_F(out, phi, _family(args.family), ctx)
        status = res.status
        _emit(cfg, [("code", out), ("verdict", res.verdict)])
    else:
        from .bigreal import SearchExhausted, translate_PF_inv
        from .realisability import check_classical

        try:
            out = translate_PF_inv(p, phi, cfg.max_k)
        except SearchExhausted as e:
            _emit(cfg, [("verdict", "Unknown"), ("reason", str(e))])
            return EXIT_UNKNOWN
        v = check_classical(out, phi, ctx)
        status = v.status
        _emit(cfg, [("code", out), ("verdict", v)])
    return _status_exit(status)


def cmd_extract(args: argparse.Namespace) -> int:
    from .logic import ProofError, extract, parse_proof, verify

    cfg = _config(args)
    try:
        proof = parse_proof(_read(args.proof))
    except (SExprError, ValueError) as e:
        raise InputError(f"proof: {e}") from None
    try:
        e = extract(proof)
    except ProofError as err:
        print(f"proof error: {err}", file=sys.stderr)
        return EXIT_REFUTED
    v = verify(e, cfg.ctx(_db(args.witness_db)))
    _emit(
        cfg,
        [("conclusion", print_formula(e.sentence)), ("rml", print_term(decode(e.code))), ("code", e.code), ("verdict", v.status.value)],
        v.report.to_text(),
    )
    return EXIT_OK if v.realised else EXIT_REFUTED if v.refuted else EXIT_UNKNOWN


def cmd_bes(args: argparse.Namespace) -> int:
    from .bigreal import Exhausted, bounded_exhaustive_search

    cfg = _config(args)
    p = _code(args.code)
    found = bounded_exhaustive_search(p, args.input, cfg.max_k)
    if isinstance(found, Exhausted):
        _emit(cfg, [("result", "Exhausted"), ("max-k", found.max_k)])
        return EXIT_UNKNOWN
    pairs = [("value", found.value), ("k", found.k), ("s", found.bits or "-"), ("steps", found.steps)]
    if found.interval_sensitive:
        pairs.append(("flag", "interval-sensitive"))
    _emit(cfg, pairs)
    return EXIT_OK


# ---------------------------------------------------------------- demos


def _compare(cfg: RunConfig, label: str, expected: str, computed: str, ok: bool) -> int:
    _emit(cfg, [("demo", label), ("expected", expected), ("computed", computed), ("match", "yes" if ok else "no")])
    return EXIT_OK if ok else EXIT_REFUTED


def demo_diagonal(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .mu import measure_C
    from .mu.diagonal import diagonal_bound, diagonal_realiser, diagonal_sentence

    bound = diagonal_bound(args.K)
    iv = measure_C(diagonal_realiser(args.table), diagonal_sentence(args.K, args.table), cfg.ctx())
    return _compare(cfg, f"diagonal K={args.K}", f"lo >= {bound}", str(iv), iv.lo >= bound)


def demo_induction(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .logic import induction_counterexample
    from .mu import check_mu, measure_C

    c = induction_counterexample(args.n, args.table)
    iv = measure_C(c.realiser, c.formula, cfg.ctx())
    step = check_mu(c.step_realiser, c.step, None, c.step_ctx(cfg.ctx()))
    want = DyadicRational.pow2(args.n)
    ok = iv.exact and iv.lo == want and step.realised
    return _compare(cfg, f"induction n={args.n}", f"[{want}, {want}] Exact, step MuRealised", f"{iv}, step {step.status.value}", ok)


def demo_lem(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .logic import lem_instance, lem_realiser
    from .mu import check_mu

    ctx = cfg.ctx()
    code = lem_realiser(args.k, args.table, cfg.fuel)
    v = check_mu(code, lem_instance(args.k, args.table), None, ctx) if code is not None else None
    # the uniform sentence over the full enumeration has no realiser
    full = lem_instance(None, "enum")
    false_hits = sum(check_mu(c, full, None, ctx).realised for c in range(args.candidates))
    ok = v is not None and v.realised and false_hits == 0
    computed = f"instance {v.status.value if v else 'unsettled'}, full sentence realised by {false_hits} of {args.candidates} candidates"
    return _compare(cfg, f"lem k={args.k}", "instance MuRealised, no candidate realises the full sentence", computed, ok)


def demo_pushup(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .mu import measure_C
    from .mu.fixtures import or_pair_demo
    from .mu.pushup import push_up

    target = _dyadic(args.target)
    if not (ZERO < target < ONE):
        raise UsageError("--target must lie strictly between 0 and 1")
    fx = or_pair_demo()
    before = measure_C(fx.code, fx.formula, cfg.ctx())
    res = push_up(fx.code, fx.formula, target, cfg.ctx())
    computed = f"{before.lo} -> {res.interval.lo if res.found else 'not found'}"
    return _compare(cfg, f"pushup target={target}", f"new lower bound > {target}", computed, res.found and res.interval.lo > target)


def demo_positive(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .bigreal import FamilyKind, Undecided, check_F, encode_for_positive_measure

    phi = _formula(None, args.formula)
    try:
        enc = encode_for_positive_measure(phi, cfg.truth_budget)
    except Undecided as e:
        _emit(cfg, [("demo", "positive-measure"), ("refused", e)])
        return EXIT_REFUTED
    res = check_F(enc.reader, phi, FamilyKind.POSITIVE_MEASURE, cfg.ctx(), enc.cylinder)
    want = DyadicRational.pow2(len(enc.tape))
    got = res.certificate.absolute_lo
    ok = res.realised and got is not None and got >= want
    return _compare(cfg, f"positive-measure |s|={len(enc.tape)}", f"lower bound >= {want}", f"{got} ({res.verdict})", ok)


DEMOS: dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "diagonal": demo_diagonal,
    "induction": demo_induction,
    "lem": demo_lem,
    "pushup": demo_pushup,
    "positive-measure": demo_positive,
}


def cmd_demo(args: argparse.Namespace) -> int:
    return DEMOS[args.demo](args, _config(args))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=default_fuel())
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--forall-budget", type=int, default=DEFAULT_FORALL_BUDGET)
    common.add_argument("--truth-budget", type=int, default=DEFAULT_TRUTH_BUDGET)
    common.add_argument("--max-k", type=int, default=100_000)
    common.add_argument("--format", choices=("text", "structured"), default="text")

    parser = _Parser(prog="randreal", description="Randomised realisability checker.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="check a realiser against a sentence")
    p.add_argument("formula")
    p.add_argument("realiser")
    p.add_argument("--mode", choices=("classical", "mu", "F"), default="mu")
    p.add_argument("--family", choices=FAMILIES, default="cif")
    p.add_argument("--r", help="required probability, a dyadic such as 1/2^1 or 3/4")
    p.add_argument("--witness-db")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("synth", parents=[common], help="synthesize a classical realiser")
    p.add_argument("formula")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("measure", parents=[common], help="exact measure report")
    p.add_argument("formula")
    p.add_argument("realiser")
    p.add_argument("--cylinder")
    p.add_argument("--witness-db")
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("translate", parents=[common], help="translate between realisability notions")
    p.add_argument("formula")
    p.add_argument("realiser")
    p.add_argument("--dir", choices=("mu", "mu-inv", "f", "f-inv"), required=True)
    p.add_argument("--family", choices=FAMILIES[:3], default="cif")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("extract", parents=[common], help="extract a realiser from a Hilbert proof")
    p.add_argument("--proof", required=True)
    p.add_argument("--witness-db")
    p.set_defaults(run=cmd_extract)

    p = sub.add_parser("bes", parents=[common], help="bounded exhaustive search")
    p.add_argument("--code", required=True)
    p.add_argument("--input", type=int, default=0)
    p.set_defaults(run=cmd_bes)

    p = sub.add_parser("demo", parents=[common], help="worked examples with their expected values")
    p.add_argument("demo", choices=sorted(DEMOS))
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--table")
    p.add_argument("--candidates", type=int, default=1024)
    p.add_argument("--target", default="3/4")
    p.add_argument("--formula", default="(or (= 0 1) (= 1 1))")
    p.set_defaults(run=cmd_demo)
    return parser


_DEFAULT_TABLES = {"diagonal": "diag4", "induction": "mixed", "lem": "halting"}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if getattr(args, "demo", None) and args.table is None:
            args.table = _DEFAULT_TABLES.get(args.demo)
        return args.run(args)
    except UsageError as e:
        print(f"randreal: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"randreal: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ClassError as e:
        print(f"randreal: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
