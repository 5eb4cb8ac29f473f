"""Path-following equilibrium solvers.

Two smooth homotopies are provided.  ``logm`` keeps every strategy, belief
and slack coordinate strictly positive through a logarithmic-barrier style
system; ``cqpm`` works with unconstrained coordinates whose positive and
negative parts (``phi1``/``phi2``) play the role of probabilities and
complementary multipliers.  Both start at a unique solution at ``t = 1`` and
are traced towards ``t = 0`` by a pseudo-arclength predictor-corrector.

Each comes in a Nash variant and a subgame-perfect variant; the latter
measures reach from the root of the smallest subgame around each infoset.
"""

from __future__ import annotations

import csv
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Protocol, TextIO

import numpy as np

from .compiled import compile_game
from .game import Game, SubgameIndex, subgame_decomposition
from .kernels import infoset_values
from .profiles import BehaviorProfile, BeliefSystem

log = logging.getLogger("efgpath.homotopy")

METHODS = ("logm", "cqpm")
REFINEMENTS = ("nash", "sgpe")
EPS = np.finfo(float).eps
FD_SCALE = math.sqrt(EPS)


class NonPositiveCoordinate(ArithmeticError):
    """A positivity-constrained coordinate left the open orthant."""


class TraceFailure(RuntimeError):
    def __init__(self, reason: str, state: "HomotopyState | None", iterations: int):
        super().__init__(f"{reason} (after {iterations} steps, t={getattr(state, 't', float('nan')):.3e})")
        self.reason = reason
        self.state = state
        self.iterations = iterations


def phi1(v):
    return np.maximum(v, 0.0) ** 2


def phi2(v):
    return np.minimum(v, 0.0) ** 2


@dataclass(frozen=True)
class SolverConfig:
    beta0: np.ndarray
    beta_tilde0: np.ndarray
    eta0: np.ndarray
    alpha: np.ndarray | None = None
    step_c: float = 0.1
    step_p: float = 0.2
    corr_p: float = 0.5
    # Newton stops at this fraction of the t-dependent accuracy schedule
    corr_ratio: float = 1e-3
    t_min: float = 1e-5
    max_iters: int = 100_000
    newton_max: int = 20
    max_halvings: int = 12
    max_damping: int = 8
    min_step: float = 1e-14
    timeout_s: float | None = None

    @classmethod
    def default(cls, game: Game, alpha_norm: float = 0.0, seed: int = 0,
                eta_mass: float = 0.5, **overrides) -> "SolverConfig":
        """Uniform starts, ``eta0`` spreading ``eta_mass`` evenly over each infoset."""
        beta0 = BehaviorProfile(game).flat
        eta0 = beta0 * eta_mass
        alpha = None
        if alpha_norm > 0:
            dim = 2 * game.num_action_slots + 2 * game.num_member_slots
            v = np.random.default_rng(seed).standard_normal(dim)
            alpha = v * (alpha_norm / np.linalg.norm(v))
        return cls(beta0=beta0, beta_tilde0=beta0.copy(), eta0=eta0, alpha=alpha, **overrides)

    def validate(self, game: Game) -> None:
        m0 = game.num_action_slots
        for name in ("beta0", "beta_tilde0", "eta0"):
            if np.shape(getattr(self, name)) != (m0,):
                raise ValueError(f"{name} must have {m0} entries")
        if min(self.beta0.min(initial=1), self.beta_tilde0.min(initial=1), self.eta0.min(initial=1)) <= 0:
            raise ValueError("beta0, beta_tilde0 and eta0 must be strictly positive")
        for iid in game.infosets:
            s = game.action_slice(iid)
            if abs(self.beta0[s].sum() - 1) > 1e-10 or abs(self.beta_tilde0[s].sum() - 1) > 1e-10:
                raise ValueError(f"start profile is not a distribution at {iid!r}")
            if self.eta0[s].sum() >= 1:
                raise ValueError(f"eta0 mass at {iid!r} must be below 1")
        if not 0 < self.t_min < 1:
            raise ValueError("t_min must lie in (0, 1)")


def perturb(profile: BehaviorProfile, t: float, eta0) -> BehaviorProfile:
    """Blend ``profile`` towards ``eta0`` with weight ``t^2 (1 - t^2)``; exact at t = 0 and 1."""
    game = profile.game
    eta0 = np.asarray(eta0.flat if isinstance(eta0, BehaviorProfile) else eta0, dtype=float)
    tau = _slot_totals(game, eta0)
    c = t * t * (1 - t * t)
    return BehaviorProfile(game, (1 - c * tau) * profile.flat + c * eta0)


def _slot_totals(game: Game, v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    for iid in game.infosets:
        s = game.action_slice(iid)
        out[s] = v[s].sum()
    return out


class PathSystem:
    """Residual map of one homotopy on one game, in batched form.

    Unknowns are laid out as ``[beta | beta_tilde | mu | xi]`` for logm and
    ``[z | z_tilde | mu | w]`` for cqpm; the homotopy parameter is appended
    as the last coordinate of every point ``y``.  Rows of the residual are
    grouped block by block: action-difference rows of the first and second
    blocks (non-reference actions), member-difference rows of the slack
    block (non-reference members), the belief-coupling rows (all members),
    then the three families of normalization rows.
    """

    def __init__(self, game: Game, config: SolverConfig, method: str = "logm",
                 refinement: str = "nash", subindex: SubgameIndex | None = None):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        if refinement not in REFINEMENTS:
            raise ValueError(f"unknown refinement {refinement!r}")
        config.validate(game)
        self.game, self.config = game, config
        self.method, self.refinement = method, refinement
        self.subindex = subindex or subgame_decomposition(game)
        self.cg = compile_game(game, self.subindex)
        cg = self.cg
        self.m0, self.p0 = cg.num_action_slots, cg.num_member_slots
        self.dim = 2 * self.m0 + 2 * self.p0
        self.sgpe = refinement == "sgpe"

        self.act_starts = cg.act_ptr[:-1]
        self.mem_starts = cg.mem_ptr[:-1]
        self.slot_inf = np.repeat(np.arange(len(self.act_starts)), np.diff(cg.act_ptr))
        self.mem_inf = np.repeat(np.arange(len(self.mem_starts)), np.diff(cg.mem_ptr))
        self.slot_ref = self.act_starts[self.slot_inf]
        self.mem_ref = self.mem_starts[self.mem_inf]
        self.nonref_slots = np.setdiff1d(np.arange(self.m0), self.act_starts)
        self.nonref_mems = np.setdiff1d(np.arange(self.p0), self.mem_starts)

        self.beta0 = np.asarray(config.beta0, float)
        self.beta_tilde0 = np.asarray(config.beta_tilde0, float)
        self.eta0 = np.asarray(config.eta0, float)
        self.tau = _slot_totals(game, self.eta0)
        alpha = np.zeros(self.dim) if config.alpha is None else np.asarray(config.alpha, float)
        if alpha.shape != (self.dim,):
            raise ValueError(f"alpha must have {self.dim} entries")
        self.alpha = alpha
        _, _, kh = infoset_values(cg, self.beta0, self.beta0, np.zeros(self.p0), self.sgpe)
        kh = kh[0]
        self.xi0 = kh / self._seg(kh[None, :], self.mem_starts)[0][self.mem_inf]

    @staticmethod
    def _seg(x: np.ndarray, starts: np.ndarray) -> np.ndarray:
        return np.add.reduceat(x, starts, axis=1)

    # coordinates

    def split(self, X: np.ndarray):
        m0, p0 = self.m0, self.p0
        return X[..., :m0], X[..., m0:2 * m0], X[..., 2 * m0:2 * m0 + p0], X[..., 2 * m0 + p0:]

    def start_vector(self) -> np.ndarray:
        if self.method == "logm":
            return np.concatenate([self.beta0, self.beta_tilde0, self.xi0, self.xi0])
        return np.concatenate([np.sqrt(self.beta0), np.sqrt(self.beta_tilde0), self.xi0,
                               np.sqrt(self.xi0)])

    def profiles(self, x: np.ndarray):
        """(beta, beta_tilde, mu, xi) as flat arrays."""
        a, b, mu, c = self.split(np.asarray(x))
        if self.method == "cqpm":
            a, b, c = phi1(a), phi1(b), phi1(c)
        return a, b, mu, c

    def coordinate_names(self) -> list[str]:
        g = self.game
        acts = [f"{iid}:{a}" for iid, info in g.infosets.items() for a in info.actions]
        mems = [f"{iid}:{h}" for iid, info in g.infosets.items() for h in info.members]
        raw = ("beta", "beta_tilde", "mu", "xi") if self.method == "logm" else ("z", "z_tilde", "mu", "w")
        names = ([f"{raw[0]}[{s}]" for s in acts] + [f"{raw[1]}[{s}]" for s in acts]
                 + [f"{raw[2]}[{s}]" for s in mems] + [f"{raw[3]}[{s}]" for s in mems])
        if self.method == "cqpm":
            names += [f"beta[{s}]" for s in acts] + [f"beta_tilde[{s}]" for s in acts]
        return names

    def coordinates(self, x: np.ndarray) -> np.ndarray:
        if self.method == "logm":
            return x
        b, bt, _, _ = self.profiles(x)
        return np.concatenate([x, b, bt])

    # residual

    def residual_batch(self, Y: np.ndarray) -> np.ndarray:
        """Residuals of the rows of ``Y`` (each row is unknowns followed by t)."""
        Y = np.atleast_2d(np.asarray(Y, dtype=float))
        t = Y[:, -1:]
        X = Y[:, :-1]
        one_t = 1.0 - t
        a, b, mu, c = self.split(X)
        if self.method == "logm":
            beta, beta_t, xi = a, b, c
            if (beta <= 0).any() or (beta_t <= 0).any() or (xi <= 0).any():
                raise NonPositiveCoordinate("non-positive strategy or slack coordinate")
        else:
            beta, beta_t, xi = phi1(a), phi1(b), phi1(c)
            lam, lam_t, rho = phi2(a), phi2(b), phi2(c)
        w = t * t * (1.0 - t * t)
        P = (1.0 - w * self.tau) * beta + w * self.eta0
        U1, U2, KH = infoset_values(self.cg, P, beta_t, mu, self.sgpe)
        inf, starts, mstarts = self.slot_inf, self.act_starts, self.mem_starts
        nr, nrm = self.nonref_slots, self.nonref_mems

        if self.method == "logm":
            def block(bv, U, b0):
                s = self._seg(bv, starts)[:, inf]
                wsum = self._seg(bv * U, starts)[:, inf]
                return (one_t * bv * (U * s - wsum) + t * (b0 * s - bv))[:, nr]
            first = block(beta, U1, self.beta0)
            second = block(beta_t, U2, self.beta_tilde0)
            sxi = self._seg(xi, mstarts)[:, self.mem_inf]
            third = (self.xi0 * sxi - xi)[:, nrm]
        else:
            ref, mref = self.slot_ref, self.mem_ref

            def block(U, lm, bv, b0):
                return (one_t * (U - U[:, ref]) + lm - lm[:, ref]
                        - t * (bv - bv[:, ref] - (b0 - b0[ref])))[:, nr]
            first = block(U1, lam, beta, self.beta0)
            second = block(U2, lam_t, beta_t, self.beta_tilde0)
            third = (rho - rho[:, mref] - t * (xi - xi[:, mref] - (self.xi0 - self.xi0[mref])))[:, nrm]
        KI = self._seg(KH, mstarts)[:, self.mem_inf]
        fourth = (one_t * KI + t) * mu - xi - one_t * KH
        norms = [self._seg(beta, starts) - 1.0, self._seg(beta_t, starts) - 1.0,
                 self._seg(mu, mstarts) - 1.0]
        H = np.concatenate([first, second, third, fourth] + norms, axis=1)
        return H - (t * one_t) * self.alpha

    def residual(self, y: np.ndarray) -> np.ndarray:
        return self.residual_batch(np.asarray(y, float)[None, :])[0]

    def jacobian(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Forward-difference Jacobian in all coordinates (t last) and the residual at ``y``."""
        return fd_jacobian(self.residual_batch, y)


def fd_jacobian(batch_fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray):
    """Forward differences with step sqrt(eps)*(1+|x_k|); one batched call.

    Returns ``(J, f(x))``.
    """
    x = np.asarray(x, dtype=float)
    h = FD_SCALE * (1.0 + np.abs(x))
    pts = np.tile(x, (x.size + 1, 1))
    idx = np.arange(x.size)
    pts[idx + 1, idx] += h
    h = pts[idx + 1, idx] - x
    vals = batch_fn(pts)
    f0 = vals[0]
    J = (vals[1:] - f0).T / h
    return J, f0


def jacobian(residual_fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
             batched: bool = False) -> np.ndarray:
    """Forward-difference Jacobian of ``residual_fn`` at ``x``."""
    if batched:
        return fd_jacobian(residual_fn, x)[0]
    return fd_jacobian(lambda pts: np.array([residual_fn(p) for p in pts]), x)[0]


@dataclass
class HomotopyState:
    method: str
    refinement: str
    t: float
    x: np.ndarray
    system: PathSystem = field(repr=False)

    @property
    def y(self) -> np.ndarray:
        return np.append(self.x, self.t)

    def parts(self):
        return self.system.profiles(self.x)

    @property
    def beta(self) -> BehaviorProfile:
        return BehaviorProfile(self.system.game, _renormalize(self.system, self.parts()[0]))

    @property
    def beta_tilde(self) -> BehaviorProfile:
        return BehaviorProfile(self.system.game, _renormalize(self.system, self.parts()[1]))

    @property
    def mu(self) -> BeliefSystem:
        mu = np.clip(self.parts()[2], 0.0, None)
        sums = np.add.reduceat(mu, self.system.mem_starts)[self.system.mem_inf]
        return BeliefSystem(self.system.game, mu / sums)

    @property
    def xi(self) -> np.ndarray:
        return self.parts()[3]


def _renormalize(system: PathSystem, v: np.ndarray) -> np.ndarray:
    v = np.clip(v, 0.0, None)
    return v / np.add.reduceat(v, system.act_starts)[system.slot_inf]


def start_point(game: Game, config: SolverConfig, method: str = "logm", refinement: str = "nash",
                subindex: SubgameIndex | None = None) -> HomotopyState:
    system = PathSystem(game, config, method, refinement, subindex)
    return HomotopyState(method, refinement, 1.0, system.start_vector(), system)


def residual_logm(game: Game, subindex: SubgameIndex | None, state: HomotopyState,
                  config: SolverConfig) -> np.ndarray:
    system = PathSystem(game, config, "logm", state.refinement, subindex)
    return system.residual(np.append(state.x, state.t))


def residual_cqpm(game: Game, subindex: SubgameIndex | None, state: HomotopyState,
                  config: SolverConfig) -> np.ndarray:
    system = PathSystem(game, config, "cqpm", state.refinement, subindex)
    return system.residual(np.append(state.x, state.t))


# tracing

@dataclass(frozen=True)
class TracePoint:
    iteration: int
    t: float
    step: float
    corrector_iters: int
    residual_norm: float
    x: np.ndarray


class TraceSink(Protocol):
    def __call__(self, point: TracePoint, system: PathSystem) -> None: ...


class CsvTraceSink:
    """Writes one CSV row per accepted point, header on first use.

    Columns: ``iter, t, step, corrector_iters, residual_norm`` followed by
    the unknowns (infosets by id, actions and members in listed order); cqpm
    rows also carry the derived ``beta`` and ``beta_tilde``.
    """

    def __init__(self, stream: TextIO):
        self.writer = csv.writer(stream, lineterminator="\n")
        self._started = False

    def __call__(self, point: TracePoint, system: PathSystem) -> None:
        if not self._started:
            self.writer.writerow(["iter", "t", "step", "corrector_iters", "residual_norm"]
                                 + system.coordinate_names())
            self._started = True
        row = [str(point.iteration), repr(float(point.t)), repr(float(point.step)),
               str(point.corrector_iters), repr(float(point.residual_norm))]
        row += [repr(v) for v in system.coordinates(point.x).tolist()]
        self.writer.writerow(row)


@dataclass
class TraceResult:
    beta: BehaviorProfile
    beta_tilde: BehaviorProfile
    mu: BeliefSystem
    state: HomotopyState
    iterations: int
    wall_time: float
    points: list[TracePoint] | None = None
    polished: bool = False


def corrector_tolerance(config: SolverConfig, t: float) -> float:
    return config.step_c * 10.0 ** (config.corr_p * math.log(max(t, 1e-300)))


def step_cap(config: SolverConfig, t: float) -> float:
    return config.step_c * 10.0 ** (config.step_p * math.log(max(t, 1e-300)))


def _tangent(J: np.ndarray, previous: np.ndarray) -> np.ndarray:
    """Unit null vector of ``J`` with positive component along ``previous``."""
    A = np.vstack([J, previous])
    rhs = np.zeros(A.shape[0])
    rhs[-1] = 1.0
    try:
        v = np.linalg.solve(A, rhs)
        if not np.all(np.isfinite(v)):
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        v = np.linalg.svd(J)[2][-1]
        if v @ previous < 0:
            v = -v
    return v / np.linalg.norm(v)


NEWTON_FLOOR = 1e-10


class _Corrector:
    def __init__(self, system: PathSystem, config: SolverConfig):
        self.system, self.config = system, config
        self.damped = system.method == "cqpm"

    def _norm(self, y):
        try:
            r = self.system.residual(y)
        except NonPositiveCoordinate:
            return math.inf, None
        n = float(np.linalg.norm(r))
        return (n if math.isfinite(n) else math.inf), r

    def run(self, y_pred: np.ndarray, tangent: np.ndarray, step: float):
        """Newton on the residual plus the hyperplane through ``y_pred``.

        Returns ``(y, iterations, residual_norm, jacobian)`` or None.
        """
        cfg = self.config
        tol = cfg.corr_ratio * corrector_tolerance(cfg, max(y_pred[-1], cfg.t_min * 0.1))
        y = y_pred.copy()
        J = None
        first = 0.0
        norm, _ = self._norm(y)
        for k in range(cfg.newton_max + 1):
            if not math.isfinite(norm):
                return None
            # one Newton pass even inside tol keeps accepted points near the path
            if norm <= tol and (k >= 1 or norm <= NEWTON_FLOOR):
                break
            if k == cfg.newton_max:
                return None
            try:
                J, r = self.system.jacobian(y)
            except NonPositiveCoordinate:
                return None
            A = np.vstack([J, tangent])
            rhs = -np.append(r, tangent @ (y - y_pred))
            try:
                delta = np.linalg.solve(A, rhs)
            except np.linalg.LinAlgError:
                return None
            lam = 1.0
            new_norm, _ = self._norm(y + delta)
            if self.damped:
                for _ in range(cfg.max_damping):
                    if new_norm < norm:
                        break
                    lam *= 0.5
                    new_norm, _ = self._norm(y + lam * delta)
            y = y + lam * delta
            norm = new_norm
            if k == 0:
                first = lam * float(np.linalg.norm(delta))
        # the first Newton step measures how far y_pred sat from the path;
        # landing well beyond that and beyond the step means another branch
        if np.linalg.norm(y - y_pred) > max(step, 2.0 * first) or y[-1] <= 0:
            return None
        return y, k, norm, J


def trace_path(game: Game, subindex: SubgameIndex | None, config: SolverConfig,
               method: str = "logm", refinement: str = "nash", sink: TraceSink | None = None,
               keep_points: bool = False, polish: bool = False) -> TraceResult:
    """Follow the homotopy from its t = 1 start until t < ``config.t_min``.

    Every accepted point (the start included, as iteration 0) goes to
    ``sink``.  The iteration count is the number of accepted
    predictor-corrector steps.  Raises TraceFailure on iteration cap, step
    underflow, exhausted halvings or timeout.
    """
    started = time.perf_counter()
    system = PathSystem(game, config, method, refinement, subindex)
    points: list[TracePoint] | None = [] if keep_points else None

    def emit(point: TracePoint) -> None:
        if sink is not None:
            sink(point, system)
        if points is not None:
            points.append(point)

    y = np.append(system.start_vector(), 1.0)
    state = lambda: HomotopyState(method, refinement, float(y[-1]), y[:-1].copy(), system)
    emit(TracePoint(0, 1.0, 0.0, 0, float(np.linalg.norm(system.residual(y))), y[:-1].copy()))

    if system.dim == 0:
        y[-1] = 0.0
        return _finish(system, state(), 0, started, points, polish)

    corrector = _Corrector(system, config)
    J, _ = system.jacobian(y)
    direction = np.zeros(system.dim + 1)
    direction[-1] = -1.0
    tangent = _tangent(J, direction)
    step = step_cap(config, 1.0)
    iterations = 0
    streak = 0
    while True:
        if config.timeout_s is not None and time.perf_counter() - started > config.timeout_s:
            raise TraceFailure("timeout", state(), iterations)
        step = min(step, step_cap(config, y[-1]))
        halvings = 0
        while True:
            h = step
            if tangent[-1] < 0:
                # do not predict past t = 0; aim just below the stopping level
                landing = (y[-1] - 0.5 * config.t_min) / -tangent[-1]
                if 0 < landing < h:
                    h = landing
            y_pred = y + h * tangent
            outcome = corrector.run(y_pred, tangent, h) if y_pred[-1] > 0 else None
            if outcome is not None:
                break
            step *= 0.5
            halvings += 1
            if step < config.min_step:
                raise TraceFailure("step underflow", state(), iterations)
            if halvings > config.max_halvings:
                raise TraceFailure("corrector failed at every step size", state(), iterations)
        y_new, n_newton, rnorm, J = outcome
        y = y_new
        iterations += 1
        emit(TracePoint(iterations, float(y[-1]), h, n_newton, rnorm, y[:-1].copy()))
        if halvings == 0:
            streak += 1
            if streak >= 3:
                step *= 2.0
                streak = 0
        else:
            streak = 0
        if y[-1] < config.t_min:
            break
        if iterations >= config.max_iters:
            raise TraceFailure("iteration limit reached", state(), iterations)
        if J is None:
            J, _ = system.jacobian(y)
        tangent = _tangent(J, tangent)
    log.debug("trace finished: %d steps, t=%.3e", iterations, y[-1])
    return _finish(system, state(), iterations, started, points, polish)


def _finish(system, st, iterations, started, points, polish) -> TraceResult:
    beta, beta_tilde, mu = st.beta, st.beta_tilde, st.mu
    polished = False
    if polish:
        better = polish_endpoint(system, beta, beta_tilde)
        if better is not None:
            beta, polished = better, True
    return TraceResult(beta, beta_tilde, mu, st, iterations, time.perf_counter() - started,
                       points, polished)


def polish_endpoint(system: PathSystem, beta: BehaviorProfile, beta_tilde: BehaviorProfile,
                    support_tol: float = 1e-4) -> BehaviorProfile | None:
    """One Gauss-Newton step making payoffs equal across each infoset's support.

    The companion ``beta_tilde`` is held fixed.  Returns None when the step
    leaves the simplex or fails to reduce the support residual.
    """
    cg, m0 = system.cg, system.m0
    support = beta.flat > support_tol
    idx = np.flatnonzero(support)
    if idx.size == 0:
        return None
    first_of = {}
    rows_a, rows_b = [], []
    for s in idx:
        k = system.slot_inf[s]
        if k in first_of:
            rows_a.append(s)
            rows_b.append(first_of[k])
        else:
            first_of[k] = s
    infs = sorted(first_of)

    def F(V):
        V = np.atleast_2d(V)
        P = np.zeros((V.shape[0], m0))
        P[:, idx] = V
        U1, _, _ = infoset_values(cg, P, np.broadcast_to(beta_tilde.flat, P.shape),
                                  np.zeros((V.shape[0], system.p0)), system.sgpe)
        sums = np.add.reduceat(P, system.act_starts, axis=1)[:, infs] - 1.0
        return np.concatenate([U1[:, rows_a] - U1[:, rows_b], sums], axis=1)

    v0 = beta.flat[idx]
    try:
        J, f0 = fd_jacobian(F, v0)
        delta = np.linalg.lstsq(J, -f0, rcond=None)[0]
    except np.linalg.LinAlgError:
        return None
    v1 = v0 + delta
    if (v1 < 0).any() or np.linalg.norm(F(v1)[0]) >= np.linalg.norm(f0):
        return None
    out = np.zeros(m0)
    out[idx] = v1
    return BehaviorProfile(system.game, _renormalize(system, out))


def solve(game: Game, method: str = "logm", refinement: str = "nash", config: SolverConfig | None = None,
          **kwargs) -> TraceResult:
    """Convenience wrapper: uniform start unless ``config`` is given."""
    config = config or SolverConfig.default(game)
    return trace_path(game, None, config, method, refinement, **kwargs)

