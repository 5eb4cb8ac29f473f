"""Acceptance suite: seven end-to-end checks, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import csv
import functools
import json
import pathlib
import sys
import tempfile

import numpy as np

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE))

import cases  # noqa: E402
from efgpath.cli import main as cli_main  # noqa: E402
from efgpath.fixtures import example1_distance, example1_game, example3_distance, example3_game  # noqa: E402
from efgpath.generate import GenSpec, generate  # noqa: E402
from efgpath.homotopy import (PathSystem, SolverConfig, TraceFailure, corrector_tolerance,  # noqa: E402
                              trace_path)
from efgpath.profiles import BehaviorProfile  # noqa: E402
from efgpath.verify import brute_force_nash_check, default_tol, verify_profile  # noqa: E402

# pinned tolerances
T_END = 1e-5            # traces stop below this t
MAX_ITERS = 10**5
FIXTURE_DIST = 1e-4     # L-infinity distance of an endpoint to the known equilibrium set
ORACLE_TOL = 1e-5       # brute-force check of solver endpoints
AGREE_TOL = 1e-6        # checker vs brute force on perturbed profiles
CHAR_TOL = 1e-9         # round trip on exact equilibrium points
INVARIANT_FACTOR = 10   # path invariants within this multiple of the corrector tolerance
START_TOL = 1e-12
FD_REL = 1e-6
BENCH_MIN_OK = 9        # of 10 instances per row and method
BENCH_MIN_ORDER = 7     # of 10 shared instances with logm steps <= cqpm steps

RESULTS: dict[int, tuple[bool, str, str]] = {}

TITLES = {
    1: "fixture equilibria from uniform starts",
    2: "subgame-perfect fixture and nash/sgpe split",
    3: "solver endpoints vs brute force, checker vs brute force",
    4: "equilibrium list round trip",
    5: "path invariants and exact start points",
    6: "desk-scale benchmark table",
    7: "jacobian accuracy and byte-identical traces",
}


def _record(k: int, ok: bool, detail: str) -> bool:
    RESULTS[k] = (ok, TITLES[k], detail)
    return ok


def report_lines() -> list[str]:
    return [f"{'PASS' if ok else 'FAIL'}  [{k}] {title}: {detail}"
            for k, (ok, title, detail) in sorted(RESULTS.items())]


# traced paths are shared between the criteria that produce them and the
# invariant check that inspects them
TRACES: list[tuple] = []


def _trace(label, game, method, refinement):
    cfg = SolverConfig.default(game, max_iters=MAX_ITERS, t_min=T_END)
    res = trace_path(game, None, cfg, method, refinement, keep_points=True)
    TRACES.append((label, game, cfg, res, method, refinement))
    return res


@functools.cache
def criterion_1():
    game = example1_game()
    notes, ok = [], True
    for method in ("logm", "cqpm"):
        try:
            res = _trace(f"example1 {method}", game, method, "nash")
        except TraceFailure as exc:
            ok = False
            notes.append(f"{method} failed ({exc.reason})")
            continue
        dist = example1_distance(res.beta)
        good = res.state.t < T_END and res.iterations <= MAX_ITERS and dist <= FIXTURE_DIST
        ok &= good
        notes.append(f"{method} {res.iterations} steps dist {dist:.1e}")
    return _record(1, ok, "; ".join(notes))


@functools.cache
def criterion_2():
    game = example3_game()
    try:
        sg = _trace("example3 logm sgpe", game, "logm", "sgpe")
        nash = _trace("example3 logm nash", game, "logm", "nash")
    except TraceFailure as exc:
        return _record(2, False, f"trace failed ({exc.reason})")
    dist = example3_distance(sg.beta)
    rep = verify_profile(game, nash.beta, "nash", default_tol(game), nash.beta_tilde, nash.mu)
    ok = sg.state.t < T_END and dist <= FIXTURE_DIST and rep.passed
    return _record(2, ok, f"sgpe endpoint dist {dist:.1e}; nash endpoint residual "
                          f"{rep.max_residual:.1e} (tol {rep.tol:.0e})")


def _probe_profiles(game, endpoint, rng, count=5):
    """Pure profiles, nudged endpoints and random interior profiles."""
    out = []
    for j in range(count):
        kind = j % 3
        if kind == 0:
            out.append(BehaviorProfile.pure(game, {i: rng.choice(info.actions)
                                                   for i, info in game.infosets.items()}))
        elif kind == 1:
            b = endpoint.copy()
            iid = rng.choice(list(game.infosets))
            s = game.action_slice(iid)
            v = np.zeros(s.stop - s.start)
            v[rng.integers(v.size)] = 1.0
            eps = rng.uniform(0.05, 0.3)
            b.flat[s] = (1 - eps) * b.flat[s] + eps * v
            out.append(b)
        else:
            out.append(BehaviorProfile(game, np.concatenate(
                [rng.dirichlet(np.ones(len(info.actions))) for info in game.infosets.values()])))
    return out


@functools.cache
def criterion_3():
    rng = np.random.default_rng(2024)
    endpoint_bad, trace_bad, probes, disagree, both_pass = 0, 0, 0, 0, 0
    for seed in range(100):
        game = generate(GenSpec("A", 3, (2, 2, 2), seed=seed))
        endpoint = None
        for method in ("logm", "cqpm"):
            try:
                res = _trace(f"typeA seed {seed} {method}", game, method, "nash")
            except TraceFailure:
                trace_bad += 1
                continue
            if endpoint is None:
                endpoint = res.beta
            if not brute_force_nash_check(game, res.beta, ORACLE_TOL):
                endpoint_bad += 1
        for b in _probe_profiles(game, BehaviorProfile(game) if endpoint is None else endpoint, rng):
            probes += 1
            a = verify_profile(game, b, "nash", AGREE_TOL).passed
            bf = bool(brute_force_nash_check(game, b, AGREE_TOL))
            disagree += a != bf
            both_pass += a and bf
    ok = endpoint_bad == 0 and trace_bad == 0 and disagree == 0 and probes == 500
    return _record(3, ok, f"200 traces, {trace_bad} failed, {endpoint_bad} endpoints refuted; "
                          f"{probes} probes, {disagree} disagreements ({both_pass} equilibria)")


@functools.cache
def criterion_4():
    ex1, ex3 = example1_game(), example3_game()
    bad = []
    for name, point in cases.example1_equilibria():
        if not verify_profile(ex1, BehaviorProfile.from_mapping(ex1, point), "nash", CHAR_TOL).passed:
            bad.append(name)
    for name, point in cases.example3_nash():
        if not verify_profile(ex3, BehaviorProfile.from_mapping(ex3, point), "nash", CHAR_TOL).passed:
            bad.append(name)
    for name, point in cases.example3_sgpe():
        if not verify_profile(ex3, BehaviorProfile.from_mapping(ex3, point), "sgpe", CHAR_TOL).passed:
            bad.append(name)
    refuted = [(ex1, "nash", p) for p in cases.EXAMPLE1_REFUTATIONS] \
        + [(ex3, "nash", p) for p in cases.EXAMPLE3_REFUTATIONS] \
        + [(ex3, "sgpe", cases.EXAMPLE3_NASH_NOT_SGPE)]
    for game, ref, (name, point) in refuted:
        if verify_profile(game, BehaviorProfile.from_mapping(game, point), ref, CHAR_TOL).passed:
            bad.append(f"refutation {name}")
    n_eq = len(cases.example1_equilibria()) + len(cases.example3_nash()) + len(cases.example3_sgpe())
    detail = f"{n_eq} equilibria certified, {len(refuted)} refutations rejected"
    if bad:
        detail = "wrong verdict on " + ", ".join(bad)
    return _record(4, not bad, detail)


def _invariant_gap(game, cfg, res, method, refinement):
    system = PathSystem(game, cfg, method, refinement)
    worst = 0.0
    for p in res.points:
        beta, bt, mu, xi = system.profiles(p.x)
        tol = INVARIANT_FACTOR * corrector_tolerance(cfg, p.t)
        gaps = [np.abs(np.add.reduceat(v, system.act_starts) - 1.0).max() for v in (beta, bt)]
        gaps.append(np.abs(np.add.reduceat(mu, system.mem_starts) - 1.0).max())
        gaps.append(np.abs(np.add.reduceat(xi, system.mem_starts) - p.t).max())
        if method == "logm" and min(beta.min(), bt.min(), xi.min()) <= 0:
            return np.inf
        worst = max(worst, max(gaps) / tol)
    return worst


@functools.cache
def criterion_5():
    for crit in (criterion_1, criterion_2, criterion_3):
        crit()
    worst, points = 0.0, 0
    for _, game, cfg, res, method, refinement in TRACES:
        worst = max(worst, _invariant_gap(game, cfg, res, method, refinement))
        points += len(res.points)
    start = 0.0
    for game in [example1_game(), example3_game()] + [
            generate(GenSpec("A", 3, (2, 2, 2), seed=s)) for s in range(10)]:
        cfg = SolverConfig.default(game)
        for method in ("logm", "cqpm"):
            for refinement in ("nash", "sgpe"):
                system = PathSystem(game, cfg, method, refinement)
                y = np.append(system.start_vector(), 1.0)
                start = max(start, float(np.abs(system.residual(y)).max()))
    ok = worst <= 1.0 and start <= START_TOL and points > 0
    return _record(5, ok, f"{len(TRACES)} paths, {points} points, worst gap {worst:.2e} of the "
                          f"allowance; start residual {start:.1e}")


BENCH_SPEC = {
    "rows": [
        {"family": "A", "n": 3, "m": [1, 1, 2], "branching": [2, 3, 3], "instances": 10},
        # (1,2,2,5) cannot arise from branching (2,2,2,2); counts follow the wiring
        {"family": "B", "n": 4, "branching": [2, 2, 2, 2], "instances": 10},
        {"family": "C", "n": 2, "branching": [2, 2], "L": 2, "instances": 10},
    ],
    "methods": ["logm", "cqpm"],
}


@functools.cache
def criterion_6():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        spec = tmp / "bench.json"
        spec.write_text(json.dumps(BENCH_SPEC))
        code = cli_main(["bench", "--spec", str(spec), "--out", str(tmp / "table.csv"),
                         "--instances", str(tmp / "instances.csv")])
        table = list(csv.reader((tmp / "table.csv").open()))
        inst = list(csv.DictReader((tmp / "instances.csv").open()))
    shape_ok = (code == 0 and table[0] == ["family", "n", "m", "branching", "L", "method",
                                           "refinement", "stat", "time_s", "iters"]
                and len(table) == 1 + 3 * 2 * 3)
    notes, ok = [], shape_ok
    for fam in ("A", "B", "C"):
        by = {m: {r["seed"]: r for r in inst if r["family"] == fam and r["method"] == m}
              for m in ("logm", "cqpm")}
        good = {m: sum(r["status"] == "ok" for r in by[m].values()) for m in by}
        shared = [s for s in by["logm"] if by["logm"][s]["status"] == "ok"
                  and by["cqpm"].get(s, {}).get("status") == "ok"]
        order = sum(int(by["logm"][s]["iters"]) <= int(by["cqpm"][s]["iters"]) for s in shared)
        ok &= min(good.values()) >= BENCH_MIN_OK and order >= BENCH_MIN_ORDER
        notes.append(f"{fam}: ok {good['logm']}/{good['cqpm']}, logm<=cqpm {order}/{len(shared)}")
    return _record(6, ok, ("table shape ok; " if shape_ok else "bad table shape; ") + "; ".join(notes))


def _random_state(system, rng):
    g = system.game
    parts = [np.concatenate([rng.dirichlet(np.ones(len(i.actions))) for i in g.infosets.values()])
             for _ in range(2)]
    mu = np.concatenate([rng.dirichlet(np.ones(len(i.members))) for i in g.infosets.values()])
    t = rng.uniform(0.05, 0.95)
    xi = t * np.concatenate([rng.dirichlet(np.ones(len(i.members))) for i in g.infosets.values()])
    return np.concatenate(parts + [mu, xi, [t]])


@functools.cache
def criterion_7():
    rng = np.random.default_rng(77)
    games = [example1_game(), example3_game(), generate(GenSpec("B", 3, (2, 3, 2), seed=1)),
             generate(GenSpec("C", 2, (2, 2), layers=2, seed=2))]
    worst = 0.0
    for k in range(20):
        game = games[k % len(games)]
        system = PathSystem(game, SolverConfig.default(game), "logm",
                            "sgpe" if k % 2 else "nash")
        y = _random_state(system, rng)
        J, _ = system.jacobian(y)
        for c in range(y.size):
            h = 1e-5 * (1 + abs(y[c]))
            e = np.zeros_like(y)
            e[c] = h
            col = (system.residual(y + e) - system.residual(y - e)) / (2 * h)
            worst = max(worst, np.abs(J[:, c] - col).max() / max(1.0, np.abs(col).max()))
    same = True
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        game = tmp / "g.json"
        cli_main(["generate", "--family", "B", "--n", "3", "--branching", "2,3,2", "--seed", "9",
                  "-o", str(game)])
        for method in ("logm", "cqpm"):
            runs = []
            for r in range(2):
                out = tmp / f"{method}{r}.csv"
                cli_main(["solve", str(game), "--method", method, "--seed", "5",
                          "--alpha-norm", "1e-4", "--trace", str(out)])
                runs.append(out.read_bytes())
            same &= runs[0] == runs[1] and len(runs[0]) > 0
    ok = worst <= FD_REL and same
    return _record(7, ok, f"worst column gap {worst:.1e} relative over 20 states; "
                          f"trace CSVs {'identical' if same else 'differ'}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def test_fixture_equilibria():
    assert criterion_1(), RESULTS[1][2]


def test_subgame_perfect_fixture():
    assert criterion_2(), RESULTS[2][2]


def test_oracle_equivalence():
    assert criterion_3(), RESULTS[3][2]


def test_equilibrium_list_round_trip():
    assert criterion_4(), RESULTS[4][2]


def test_path_invariants():
    assert criterion_5(), RESULTS[5][2]


def test_benchmark_table():
    assert criterion_6(), RESULTS[6][2]


def test_numerical_hygiene():
    assert criterion_7(), RESULTS[7][2]


if __name__ == "__main__":
    import contextlib
    import io
    for crit in CRITERIA:
        with contextlib.redirect_stdout(io.StringIO()):
            crit()
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
