"""``efgpath`` command line: validate, solve, verify, generate, bench.

Exit codes are the machine contract.  Anything meant for other programs
(traces, profiles, bench tables) goes to files; stdout is for people.
Set ``EFG_LOG`` to DEBUG, INFO or WARNING to change log verbosity.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .game import GameError, GameSemanticError, load_game, serialize, validate_perfect_recall
from .generate import GenerationError, GenSpec, generate, infoset_counts
from .homotopy import CsvTraceSink, SolverConfig, TraceFailure, trace_path
from .profiles import BehaviorProfile, BeliefSystem
from .verify import default_tol, verify_profile

log = logging.getLogger("efgpath")

OK, IO_ERROR, INVALID, TRACE_FAILED, CHECK_FAILED = 0, 1, 2, 3, 4

BENCH_COLUMNS = ["family", "n", "m", "branching", "L", "method", "refinement", "stat", "time_s", "iters"]
INSTANCE_COLUMNS = ["family", "n", "m", "branching", "L", "seed", "method", "refinement",
                    "status", "time_s", "iters"]


def _setup_logging() -> None:
    level = os.environ.get("EFG_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _fmt_vec(labels, values) -> str:
    return ", ".join(f"{a}:{v:.6g}" for a, v in zip(labels, values))


def _print_assessment(game, beta, beta_tilde=None, mu=None) -> None:
    for iid, info in game.infosets.items():
        print(f"  {iid} (player {info.player}): {_fmt_vec(info.actions, beta[iid])}")
    if beta_tilde is not None:
        print("companion:")
        for iid, info in game.infosets.items():
            print(f"  {iid}: {_fmt_vec(info.actions, beta_tilde[iid])}")
    if mu is not None:
        print("beliefs:")
        for iid, info in game.infosets.items():
            print(f"  {iid}: {_fmt_vec(info.members, mu[iid])}")


# validate

def cmd_validate(args) -> int:
    try:
        game = load_game(args.game, check_recall=False)
    except OSError as exc:
        return _fail(f"cannot read {args.game}: {exc}", IO_ERROR)
    except GameSemanticError as exc:
        print(f"invalid: {exc}")
        return INVALID
    except GameError as exc:
        return _fail(f"cannot parse {args.game}: {exc}", IO_ERROR)
    broken = validate_perfect_recall(game)
    if broken:
        for v in broken:
            print(f"invalid: infoset {v.infoset} breaks perfect recall "
                  f"(members {v.first} and {v.second} have different histories)")
        return INVALID
    decisions = sum(1 for n in game.nodes.values() if n.kind == "decision")
    print(f"valid: {game.num_players} players, {len(game.nodes)} nodes "
          f"({decisions} decision, {len(game.terminals)} terminal), {len(game.infosets)} infosets")
    return OK


# solve

def endpoint_tol(game, config: SolverConfig) -> float:
    """Check tolerance for a traced endpoint: the residual there is of order t_min."""
    return max(1e-5, 10.0 * config.t_min * (1.0 + game.max_abs_payoff()))


def _write_assessment(path: str, result) -> None:
    doc = {"beta": result.beta.to_dict(), "beta_tilde": result.beta_tilde.to_dict(),
           "mu": result.mu.to_dict()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def cmd_solve(args) -> int:
    try:
        game = load_game(args.game)
    except OSError as exc:
        return _fail(f"cannot read {args.game}: {exc}", IO_ERROR)
    except GameError as exc:
        return _fail(str(exc), IO_ERROR)
    overrides = {"t_min": args.t_min}
    if args.max_iters is not None:
        overrides["max_iters"] = args.max_iters
    if args.timeout is not None:
        overrides["timeout_s"] = args.timeout
    config = SolverConfig.default(game, alpha_norm=args.alpha_norm, seed=args.seed, **overrides)
    trace_fh = open(args.trace, "w", encoding="utf-8", newline="") if args.trace else None
    try:
        sink = CsvTraceSink(trace_fh) if trace_fh else None
        result = trace_path(game, None, config, args.method, args.refinement, sink=sink,
                            polish=args.polish)
    except TraceFailure as exc:
        print(f"trace failed after {exc.iterations} steps: {exc.reason}")
        return TRACE_FAILED
    finally:
        if trace_fh:
            trace_fh.close()

    print(f"{args.method} / {args.refinement}: {result.iterations} steps, "
          f"{result.wall_time:.3f} s, t = {result.state.t:.3e}"
          + (" (polished)" if result.polished else ""))
    print("profile:")
    _print_assessment(game, result.beta, result.beta_tilde, result.mu)
    if args.out:
        _write_assessment(args.out, result)
    tol = endpoint_tol(game, config)
    report = verify_profile(game, result.beta, args.refinement, tol,
                            beta_tilde=result.beta_tilde, mu=result.mu)
    print(report.summary())
    return OK if report.passed else CHECK_FAILED


# verify

def _load_profile(game, path: str):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("profile file must hold a JSON object")
    if "beta" in doc:
        beta = BehaviorProfile.from_mapping(game, doc["beta"])
        bt = doc.get("beta_tilde")
        mu = doc.get("mu")
        bt = None if bt is None else BehaviorProfile.from_mapping(game, bt)
        mu = None if mu is None else BeliefSystem.from_mapping(game, mu)
        return beta, bt, mu
    return BehaviorProfile.from_mapping(game, doc), None, None


def cmd_verify(args) -> int:
    try:
        game = load_game(args.game)
    except OSError as exc:
        return _fail(f"cannot read {args.game}: {exc}", IO_ERROR)
    except GameError as exc:
        return _fail(str(exc), IO_ERROR)
    try:
        beta, beta_tilde, mu = _load_profile(game, args.profile)
    except (OSError, ValueError) as exc:
        # json.JSONDecodeError and DimensionError are ValueErrors
        return _fail(f"bad profile {args.profile}: {exc}", IO_ERROR)
    if beta.simplex_defect() > 1e-9:
        return _fail(f"bad profile {args.profile}: not a distribution at every infoset", IO_ERROR)
    tol = args.tol if args.tol is not None else default_tol(game)
    report = verify_profile(game, beta, args.refinement, tol, beta_tilde=beta_tilde, mu=mu,
                            reach_tol=tol)
    for iid, rep in report.infosets.items():
        print(f"  {iid}: worst {rep.worst():.3e}")
    print(report.summary())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return OK if report.passed else CHECK_FAILED


# generate

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _spec_from_file(path: str) -> GenSpec:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise GenerationError("generator spec must be a JSON object")
    try:
        return GenSpec(
            str(doc["family"]), int(doc["n"]), tuple(doc["branching"]),
            layers=int(doc.get("L", doc.get("layers", 1))), seed=int(doc.get("seed", 0)),
            payoff_range=tuple(doc.get("payoff_range", (-10, 10))),
            zero_prob_max=float(doc.get("zero_prob_max", 0.5)),
            m=tuple(doc["m"]) if doc.get("m") is not None else None)
    except (KeyError, TypeError) as exc:
        raise GenerationError(f"bad generator spec: {exc}") from exc


def cmd_generate(args) -> int:
    try:
        if args.spec:
            spec = _spec_from_file(args.spec)
        else:
            missing = [f"--{k}" for k in ("family", "n", "branching") if getattr(args, k) is None]
            if missing:
                return _fail(f"need {', '.join(missing)} or --spec", IO_ERROR)
            spec = GenSpec(args.family, args.n, args.branching, layers=args.layers,
                           seed=args.seed, payoff_range=tuple(args.payoff_range),
                           zero_prob_max=args.zero_prob_max, m=args.m)
        game = generate(spec)
    except OSError as exc:
        return _fail(f"cannot read {args.spec}: {exc}", IO_ERROR)
    except ValueError as exc:
        # GenerationError and JSON decode errors
        return _fail(str(exc), IO_ERROR)
    text = serialize(game) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}: {len(game.nodes)} nodes, {len(game.infosets)} infosets")
    return OK


# bench

@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    m: tuple[int, ...]
    branching: tuple[int, ...]
    layers: int
    instances: int
    seed: int


@dataclass(frozen=True)
class BenchPlan:
    rows: tuple[BenchRow, ...]
    methods: tuple[str, ...]
    refinement: str
    max_iters: int
    timeout_s: float | None
    t_min: float


class BenchSpecError(ValueError):
    pass


def parse_bench_spec(doc) -> BenchPlan:
    """Bench spec: a list of rows, or ``{"rows": [...], "methods": [...], ...}``.

    Each row needs ``family``, ``n`` and ``branching``; ``m``, ``L`` (layers),
    ``instances`` (10) and ``seed`` (0) are optional.  A given ``m`` must match
    the counts the family produces.
    """
    if isinstance(doc, list):
        doc = {"rows": doc}
    if not isinstance(doc, dict) or not isinstance(doc.get("rows", []), list):
        raise BenchSpecError("spec must be a list of rows or an object with a 'rows' list")
    methods = doc.get("methods", ["logm", "cqpm"])
    if isinstance(methods, str):
        methods = [methods]
    if not methods or any(m not in ("logm", "cqpm") for m in methods):
        raise BenchSpecError("methods must be drawn from logm, cqpm")
    refinement = doc.get("refinement", "nash")
    if refinement not in ("nash", "sgpe"):
        raise BenchSpecError("refinement must be nash or sgpe")
    rows = []
    for k, raw in enumerate(doc.get("rows", [])):
        try:
            row = BenchRow(
                family=str(raw["family"]), n=int(raw["n"]),
                m=tuple(int(x) for x in raw["m"]) if raw.get("m") is not None else None,
                branching=tuple(int(x) for x in raw["branching"]),
                layers=int(raw.get("L", raw.get("layers", 1))),
                instances=int(raw.get("instances", 10)), seed=int(raw.get("seed", 0)))
            spec = GenSpec(row.family, row.n, row.branching, layers=row.layers, seed=row.seed, m=row.m)
        except (KeyError, TypeError, ValueError) as exc:
            raise BenchSpecError(f"row {k}: {exc}") from exc
        if row.instances < 0:
            raise BenchSpecError(f"row {k}: instances must be non-negative")
        counts = infoset_counts(spec)
        if row.m is not None and row.m != counts:
            raise BenchSpecError(f"row {k}: family {row.family} with branching {row.branching} "
                                 f"gives infoset counts {counts}, not {row.m}")
        row = BenchRow(row.family, row.n, counts, row.branching, row.layers, row.instances, row.seed)
        rows.append(row)
    try:
        max_iters = int(doc.get("max_iters", 100_000))
        timeout = doc.get("timeout_s")
        timeout = None if timeout is None else float(timeout)
        t_min = float(doc.get("t_min", 1e-5))
    except (TypeError, ValueError) as exc:
        raise BenchSpecError(str(exc)) from exc
    return BenchPlan(tuple(rows), tuple(methods), refinement, max_iters, timeout, t_min)


def run_instance(job) -> tuple[str, float, int]:
    """Solve one generated instance; returns ``(status, seconds, steps)``."""
    row, seed, method, plan = job
    game = generate(GenSpec(row.family, row.n, row.branching, layers=row.layers, seed=seed))
    config = SolverConfig.default(game, max_iters=plan.max_iters, timeout_s=plan.timeout_s,
                                  t_min=plan.t_min)
    try:
        result = trace_path(game, None, config, method, plan.refinement)
    except TraceFailure as exc:
        return "failed", float("nan"), exc.iterations
    report = verify_profile(game, result.beta, plan.refinement, endpoint_tol(game, config),
                            beta_tilde=result.beta_tilde, mu=result.mu)
    return ("ok" if report.passed else "unverified"), result.wall_time, result.iterations


def _row_keys(row: BenchRow) -> list[str]:
    join = lambda v: " ".join(str(x) for x in v)
    return [row.family, str(row.n), join(row.m), join(row.branching), str(row.layers)]


def _num(x: float) -> str:
    return f"{x:.6f}"


def run_bench(plan: BenchPlan, workers: int = 1):
    """All instance outcomes, grouped by (row, method) in spec order."""
    jobs = [(row, row.seed + k, method, plan)
            for row in plan.rows for method in plan.methods for k in range(row.instances)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_instance, jobs))
    else:
        outcomes = [run_instance(j) for j in jobs]
    return list(zip(jobs, outcomes))


def write_bench(plan: BenchPlan, results, out, instances_out=None) -> None:
    table = csv.writer(out, lineterminator="\n")
    table.writerow(BENCH_COLUMNS)
    per = csv.writer(instances_out, lineterminator="\n") if instances_out else None
    if per:
        per.writerow(INSTANCE_COLUMNS)
    k = 0
    for row in plan.rows:
        for method in plan.methods:
            chunk = results[k:k + row.instances]
            k += row.instances
            good = [o for _, o in chunk if o[0] == "ok"]
            keys = _row_keys(row) + [method, plan.refinement]
            for stat, fn in (("avg", np.mean), ("min", np.min), ("max", np.max)):
                if good:
                    times = [o[1] for o in good]
                    iters = [o[2] for o in good]
                    iters_s = f"{fn(iters):.1f}" if stat == "avg" else str(int(fn(iters)))
                    table.writerow(keys + [stat, _num(fn(times)), iters_s])
                else:
                    table.writerow(keys + [stat, "-", "-"])
            if per:
                for (_, seed, _, _), (status, secs, iters) in chunk:
                    time_s = "-" if status == "failed" else _num(secs)
                    per.writerow(_row_keys(row)[:5] + [str(seed), method, plan.refinement,
                                                       status, time_s, str(iters)])


def cmd_bench(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            plan = parse_bench_spec(json.load(fh))
    except OSError as exc:
        return _fail(f"cannot read {args.spec}: {exc}", IO_ERROR)
    except (ValueError, BenchSpecError) as exc:
        return _fail(f"bad bench spec: {exc}", IO_ERROR)
    if args.max_iters is not None:
        plan = BenchPlan(plan.rows, plan.methods, plan.refinement, args.max_iters, plan.timeout_s,
                         plan.t_min)
    if args.timeout is not None:
        plan = BenchPlan(plan.rows, plan.methods, plan.refinement, plan.max_iters, args.timeout,
                         plan.t_min)
    log.info("bench: %d rows, methods %s", len(plan.rows), ",".join(plan.methods))
    results = run_bench(plan, workers=args.workers)
    inst = open(args.instances, "w", encoding="utf-8", newline="") if args.instances else None
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as out:
            write_bench(plan, results, out, inst)
    finally:
        if inst:
            inst.close()
    for row in plan.rows:
        print(f"{row.family} n={row.n} m={row.m} b={row.branching} L={row.layers}: "
              f"{row.instances} instances x {len(plan.methods)} methods")
    failed = sum(1 for _, o in results if o[0] != "ok")
    print(f"wrote {args.out}; {len(results) - failed}/{len(results)} solves verified")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="efgpath", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check structure and perfect recall")
    v.add_argument("game")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="trace a homotopy path to an equilibrium")
    s.add_argument("game")
    s.add_argument("--method", choices=("logm", "cqpm"), default="logm")
    s.add_argument("--refinement", choices=("nash", "sgpe"), default="nash")
    s.add_argument("--seed", type=int, default=0, help="seed for the alpha direction")
    s.add_argument("--alpha-norm", type=float, default=0.0)
    s.add_argument("--t-min", type=float, default=1e-5)
    s.add_argument("--max-iters", type=int)
    s.add_argument("--timeout", type=float, help="seconds")
    s.add_argument("--trace", help="write every accepted point to this CSV")
    s.add_argument("--out", help="write the final assessment as JSON")
    s.add_argument("--polish", action="store_true", help="refine the endpoint on its support")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("verify", help="check a profile against an equilibrium notion")
    c.add_argument("game")
    c.add_argument("--profile", required=True)
    c.add_argument("--refinement", choices=("nash", "sgpe", "semiseq", "sgpe-semiseq"),
                   default="nash")
    c.add_argument("--tol", type=float)
    c.add_argument("--report", help="write the full residual report as JSON")
    c.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write a random game")
    g.add_argument("--spec", help="JSON file with the generator fields (overrides flags)")
    g.add_argument("--family", choices=("A", "B", "C"))
    g.add_argument("--n", type=int)
    g.add_argument("--branching", type=_int_list, help="e.g. 2,3,3")
    g.add_argument("--m", type=_int_list, help="expected infoset counts per player")
    g.add_argument("--layers", "-L", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--payoff-range", type=int, nargs=2, default=(-10, 10), metavar=("LO", "HI"))
    g.add_argument("--zero-prob-max", type=float, default=0.5)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="solve generated instances and tabulate time and steps")
    b.add_argument("--spec", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--instances", help="also write one line per solved instance")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--max-iters", type=int)
    b.add_argument("--timeout", type=float, help="seconds per instance")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
