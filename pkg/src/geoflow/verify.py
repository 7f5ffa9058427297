"""Self-contained invariant battery behind the ``verify`` subcommand.

Each suite re-checks the mathematical contracts of one module on the
shared fixtures, independently of the unit tests, so an installed copy
can certify itself from the command line.  Checks report the worst
measured discrepancy next to the tolerance they were held to.

``flip_nonmetricity_sign=True`` negates the closed-form non-metricity
route before comparison.  That is a negative control: the definition
route is untouched, so the agreement check must fail, proving the
battery can actually catch a wrong sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numdiff
from .comparison import CURVE1_FASTER, compare, equidistant_seed
from .dually_flat import (
    HessianModel,
    canonical_divergence,
    dual_model,
    exponential_model,
    fujiwara_amari_residual,
    gaussian_natural_model,
    legendre_dual,
    metric_field,
    quadratic_model,
)
from .errors import CriticalPointError
from .fixtures import (
    euclidean_quadratic,
    gaussian_mode,
    hessian_exp,
    sphere_height,
    two_mode_chain,
)
from .gaussian_chain import (
    ChainSpec,
    ModeState,
    analytic_variance,
    cubic_closed_form,
    ode_rhs,
    potential_F,
    scalar_curvature_mode,
    spectrum,
    universal_asymmetry_experiment,
)
from .manifold import (
    MetricField,
    christoffel_levi_civita,
    covariant_acceleration,
    gradient,
    integrate_flow,
    integrate_geodesic,
    levi_civita_connection,
    metric_inverse,
)
from .parallel import parallel_map
from .straightening import (
    nonmetricity_closed_form,
    nonmetricity_cubic,
    nonmetricity_tensor,
    pregeodesic_residual,
    scalar_curvature,
    straightening_connection,
)

__all__ = ["CheckResult", "SUITE_NAMES", "run_suites"]

SUITE_NAMES = (
    "manifold-core",
    "straightening",
    "gradient-flow",
    "fujiwara-amari",
    "gaussian-chain",
)

MODE_LEVEL = 2.0 * np.log(2.0) - 1.0


@dataclass(frozen=True)
class CheckResult:
    """One invariant check: worst measured value against its tolerance."""

    suite: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def _fixture_points(rng, name, n):
    """Random in-domain sample points for each named fixture."""
    if name == "euclidean-quadratic":
        pts = rng.uniform(-2.0, 2.0, size=(n, 2))
        return pts[np.linalg.norm(pts, axis=1) > 0.05]
    if name == "gaussian-mode":
        return rng.uniform(1.2, 5.0, size=(n, 1))
    if name == "two-mode":
        return rng.uniform(0.3, 4.0, size=(n, 2))
    if name == "sphere":
        th = rng.uniform(0.3, np.pi - 0.3, size=n)
        ph = rng.uniform(0.0, 6.0, size=n)
        return np.column_stack([th, ph])
    if name == "hessian-exp":
        return rng.uniform(-1.5, 1.5, size=(n, 1))
    raise ValueError(f"unknown fixture {name!r}")


def _segment_midpoints(traj, n):
    ts = traj.ts
    if len(ts) < 2:
        return np.array([ts[0]])
    mids = 0.5 * (ts[:-1] + ts[1:])
    idx = np.linspace(0, len(mids) - 1, min(n, len(mids))).astype(int)
    return mids[idx]


# ------------------------------------------------------------ manifold-core


def _suite_manifold(rng) -> list[CheckResult]:
    out = []
    fixtures = [("sphere", *sphere_height()),
                ("gaussian-mode", *gaussian_mode()),
                ("euclidean-quadratic", *euclidean_quadratic())]

    # directional derivative of g(V, W) along random curves equals the
    # covariant product rule for the metric connection
    worst = 0.0
    for name, g, _ in fixtures:
        lc = levi_civita_connection(g)
        for x in _fixture_points(rng, name, 20):
            v = rng.standard_normal(g.chart.dim)
            v0, v1, w0, w1 = rng.standard_normal((4, g.chart.dim))

            def gvw(t):
                return ((v0 + t * v1) @ g(x + t * v) @ (w0 + t * w1))

            h = 1e-5
            if not (g.chart.contains(x + 2 * h * v)
                    and g.chart.contains(x - 2 * h * v)):
                continue
            lhs = (-gvw(2 * h) + 8 * gvw(h) - 8 * gvw(-h) + gvw(-2 * h)) / (12 * h)
            gam = lc(x)
            dv = v1 + np.einsum("kij,i,j->k", gam, v, v0)
            dw = w1 + np.einsum("kij,i,j->k", gam, v, w0)
            rhs = dv @ g(x) @ w0 + v0 @ g(x) @ dw
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out.append(CheckResult("manifold-core", "metric-compatibility",
                           worst < 1e-6, worst, 1e-6,
                           "product rule for g(V,W) along random curves"))

    # g(grad f, w) against df(w), closing the loop through the inverse
    worst = 0.0
    for name, g, f in fixtures:
        for x in _fixture_points(rng, name, 100):
            w = rng.standard_normal(g.chart.dim)
            df = f.gradient_covector(x)
            lhs = gradient(g, f, x) @ g(x) @ w
            rhs = df @ w
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out.append(CheckResult("manifold-core", "gradient-duality",
                           worst < 1e-8, worst, 1e-8,
                           "g(grad f, w) = df(w), 100 points per fixture"))

    # df/dt = -|xdot|^2 along flows
    worst = 0.0
    for g, f, x0 in [(*gaussian_mode(), np.array([2.5])),
                     (*euclidean_quadratic(), np.array([1.2, -0.7]))]:
        traj = integrate_flow(g, f, x0, 2.0, tol=1e-10)
        for t in _segment_midpoints(traj, 12):
            fdot = numdiff.curve_derivative(lambda s: f(traj.position(s)),
                                            t, traj.span)
            v = traj.velocity(t)
            speed2 = float(v @ g(traj.position(t)) @ v)
            worst = max(worst, abs(fdot + speed2) / max(1.0, speed2))
    out.append(CheckResult("manifold-core", "energy-identity",
                           worst < 1e-6, worst, 1e-6,
                           "df/dt = -|velocity|^2_g on dense samples"))

    # geodesics carry vanishing covariant acceleration.  Pointwise values
    # from the dense interpolant float at ~tol^{4/5} (its derivative error),
    # so the check integrates the residual over each accepted step, which
    # is the defect the integrator actually bounds.
    g, _ = sphere_height()
    tol = 1e-10
    lc = levi_civita_connection(g)
    traj = integrate_geodesic(lc, [np.pi / 3, 0.2], [0.3, 0.8], 1.5, tol=tol)
    worst = 0.0
    for i in range(len(traj.ts) - 1):
        t0, t1 = traj.ts[i], traj.ts[i + 1]
        nodes = np.linspace(t0, t1, 5)
        vals = []
        for t in nodes:
            x, v = traj.position(t), traj.velocity(t)
            vals.append(np.einsum("kij,i,j->k", lc(x), v, v))
        h = (t1 - t0) / 4.0
        integral = h / 3.0 * (vals[0] + 4 * vals[1] + 2 * vals[2]
                              + 4 * vals[3] + vals[4])
        defect = np.linalg.norm(traj.vs[i + 1] - traj.vs[i] + integral)
        worst = max(worst, float(defect))
    out.append(CheckResult("manifold-core", "geodesic-residual",
                           worst <= 10 * tol, worst, 10 * tol,
                           "step-integrated covariant acceleration on a "
                           "sphere geodesic"))

    # finite-difference coefficients converge to the analytic ones
    g_num = MetricField(g.chart, lambda x: np.diag([1.0, np.sin(x[0]) ** 2]))
    x = np.array([np.pi / 4, 0.3])
    ref = christoffel_levi_civita(g, x)
    e1 = np.abs(christoffel_levi_civita(g_num, x, step=1e-2) - ref).max()
    e2 = np.abs(christoffel_levi_civita(g_num, x, step=5e-3) - ref).max()
    ratio = e1 / max(e2, 1e-300)
    out.append(CheckResult("manifold-core", "fd-consistency",
                           ratio >= 3.5, ratio, 3.5,
                           "halving h shrinks the Christoffel error"))
    return out


# ------------------------------------------------------------ straightening


def _suite_straightening(rng, flip_sign=False) -> list[CheckResult]:
    out = []
    fixtures = [("euclidean-quadratic", *euclidean_quadratic()),
                ("gaussian-mode", *gaussian_mode()),
                ("two-mode", *two_mode_chain()),
                ("hessian-exp", *hessian_exp())]

    # gradient lines are pregeodesics of the straightened connection
    worst = 0.0
    for name, g, f in fixtures:
        for lam in (0.0, 1.0):
            for x in _fixture_points(rng, name, 100):
                try:
                    r = pregeodesic_residual(g, f, lam, x)
                except CriticalPointError:
                    continue
                worst = max(worst, r)
    out.append(CheckResult("straightening", "pregeodesic",
                           worst < 1e-8, worst, 1e-8,
                           "relative pregeodesic residual, lam in {0, 1}"))

    # definition-based non-metricity against the closed form
    worst = 0.0
    sign = -1.0 if flip_sign else 1.0
    for name, g, f in [fixtures[1], fixtures[2]]:
        conn = straightening_connection(g, f, 0.0)
        for x in _fixture_points(rng, name, 20):
            if np.linalg.norm(f.gradient_covector(x)) < 1e-6:
                continue
            c_def = nonmetricity_tensor(conn, g, x)
            w, xv, yv = rng.standard_normal((3, g.chart.dim))
            lhs = float(np.einsum("kij,k,i,j->", c_def, w, xv, yv))
            rhs = sign * nonmetricity_closed_form(g, f, 0.0, x, w, xv, yv)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out.append(CheckResult("straightening", "closed-form-nonmetricity",
                           worst < 1e-8, worst, 1e-8,
                           "definition route = product closed form"
                           + (" [sign flipped: negative control]"
                              if flip_sign else "")))

    # the tensor is not totally symmetric: off-diagonal witness
    g, f = two_mode_chain()
    conn = straightening_connection(g, f, 0.0)
    x = np.array([3.0, 1.0])
    e1, e2 = np.eye(2)
    from .straightening import nonmetricity
    witness = abs(nonmetricity(conn, g, x, e2, e2, e1)
                  - nonmetricity(conn, g, x, e1, e2, e2))
    out.append(CheckResult("straightening", "asymmetric-nonmetricity",
                           witness > 1e-3, witness, 1e-3,
                           "argument-order asymmetry exceeds the floor"))

    # lam moves the covariant acceleration from 0 to grad f
    g, f = euclidean_quadratic()
    traj = integrate_flow(g, f, [1.3, -0.7], 1.0, tol=1e-10)
    worst = 0.0
    for lam in (0.0, 1.0):
        conn = straightening_connection(g, f, lam)
        for t in _segment_midpoints(traj, 8):
            acc = covariant_acceleration(conn, traj, t)
            want = lam * gradient(g, f, traj.position(t))
            worst = max(worst, float(np.abs(acc - want).max()))
    out.append(CheckResult("straightening", "lambda-consistency",
                           worst < 1e-7, worst, 1e-7,
                           "flow acceleration is lam * grad f"))

    # second-derivative identity along descent curves
    worst = 0.0
    for g, f, x0 in [(*gaussian_mode(), np.array([2.0])),
                     (*euclidean_quadratic(), np.array([1.3, -0.7]))]:
        for lam in (0.0, 1.0):
            traj = integrate_flow(g, f, x0, 1.0, tol=1e-10)
            for t in _segment_midpoints(traj, 8):
                fdot = numdiff.curve_derivative(
                    lambda s: f(traj.position(s)), t, traj.span)
                fddot = numdiff.curve_derivative(
                    lambda s: f(traj.position(s)), t, traj.span, order=2)
                c = nonmetricity_cubic(g, f, lam, traj, t)
                resid = abs(fddot + c + 2.0 * lam * fdot)
                worst = max(worst, resid / max(1.0, abs(fddot)))
    out.append(CheckResult("straightening", "identity-chain",
                           worst < 1e-5, worst, 1e-5,
                           "f'' + cubic + 2 lam f' = 0 on flows"))
    return out


# ------------------------------------------------------------ gradient-flow


def _suite_gradient_flow(rng) -> list[CheckResult]:
    out = []
    g, f = gaussian_mode()
    pair = equidistant_seed(g, f, MODE_LEVEL, [-1.0], [1.0])
    tol = 1e-10
    rep = compare(g, f, 0.0, pair, 10.0, tol=tol)

    pin0 = abs(rep.delta_f[0])
    pin1 = abs(rep.delta_f[-1])
    converged = rep.traj1.converged and rep.traj2.converged
    pinned = pin0 <= 1e-9 and (not converged or pin1 < 10 * tol)
    out.append(CheckResult("gradient-flow", "endpoint-pinning",
                           pinned, max(pin0, pin1), 1e-9,
                           "delta_f vanishes at both ends"))

    sound = (rep.verdict != CURVE1_FASTER) or rep.delta_f.min() >= -1e-9
    out.append(CheckResult("gradient-flow", "verdict-soundness",
                           sound, float(rep.delta_f.min()), -1e-9,
                           "faster verdict never contradicts sampled delta_f"))

    # at coincidence times the loss rates agree and the curvature of
    # delta_f opposes the cubic gap
    worst = 0.0
    ok = True
    span = rep.ts[-1] - rep.ts[0]

    def delta_at(t):
        return f(rep.traj2.position(t)) - f(rep.traj1.position(t))

    for t_star, gap in zip(rep.coincidence_times, rep.cubic_gaps):
        r1 = numdiff.curve_derivative(
            lambda s: f(rep.traj1.position(s)), t_star, (rep.ts[0], rep.ts[-1]))
        r2 = numdiff.curve_derivative(
            lambda s: f(rep.traj2.position(s)), t_star, (rep.ts[0], rep.ts[-1]))
        worst = max(worst, abs(r1 - r2))
        h = min(1e-2, 0.05 * span)
        if t_star - h >= rep.ts[0] and t_star + h <= rep.ts[-1]:
            curv = delta_at(t_star + h) - 2 * delta_at(t_star) + delta_at(t_star - h)
            if abs(curv) > 1e-14 and abs(gap) > 1e-10:
                ok = ok and (np.sign(curv) == -np.sign(gap))
    out.append(CheckResult("gradient-flow", "critical-point-characterization",
                           ok and worst < 1e-8, worst, 1e-8,
                           "matched loss rates; delta curvature opposes gap"))

    rep_half = compare(g, f, 0.0, pair, 10.0, tol=tol / 2)
    out.append(CheckResult("gradient-flow", "reparametrization-neutrality",
                           rep_half.verdict == rep.verdict, 0.0, 0.0,
                           f"verdict stable under tol halving: {rep.verdict}"))
    return out


# ----------------------------------------------------------- fujiwara-amari


def _models() -> list[tuple[str, HessianModel, np.ndarray, float]]:
    # name, model, reference point, sampling half-width
    return [("quadratic", quadratic_model(2), np.zeros(2), 1.5),
            ("exponential", exponential_model(), np.zeros(1), 1.5),
            ("gaussian-natural", gaussian_natural_model(),
             np.array([0.0, -0.5]), 0.3)]


def _suite_dually_flat(rng) -> list[CheckResult]:
    out = []
    models = _models()

    worst = 0.0
    for name, model, center, width in models:
        dm = dual_model(model, theta0=center)
        for _ in range(25):
            th = center + rng.uniform(-width, width, size=center.size)
            eta, _ = legendre_dual(model, th)
            th_back, _ = legendre_dual(dm, eta)
            worst = max(worst, float(np.abs(th_back - th).max())
                        / max(1.0, float(np.abs(th).max())))
    out.append(CheckResult("fujiwara-amari", "legendre-involution",
                           worst < 1e-8, worst, 1e-8,
                           "double transform returns the primal point"))

    worst_primal = 0.0
    worst_dual = 0.0
    for name, model, center, width in models:
        g = metric_field(model)
        dm = dual_model(model, theta0=center)
        pts = center + rng.uniform(-width, width, size=(100, center.size))
        for i, th in enumerate(pts):
            h = model.hessian(th)
            worst_primal = max(worst_primal,
                               float(np.abs(h - g(th)).max())
                               / max(1.0, float(np.abs(h).max())))
            if i % 10 == 0:
                eta, _ = legendre_dual(model, th)
                h_dual = dm.hessian(eta)
                resid = h_dual @ h - np.eye(center.size)
                worst_dual = max(worst_dual, float(np.abs(resid).max()))
    out.append(CheckResult("fujiwara-amari", "metric-consistency",
                           worst_primal < 1e-8, worst_primal, 1e-8,
                           "Hessian of the potential is the metric"))
    out.append(CheckResult("fujiwara-amari", "dual-metric-inverse",
                           worst_dual < 1e-6, worst_dual, 1e-6,
                           "dual Hessian inverts the primal one"))

    min_off = np.inf
    worst_diag = 0.0
    for name, model, center, width in models:
        pts = center + rng.uniform(-width, width, size=(12, center.size))
        for p in pts:
            worst_diag = max(worst_diag, abs(canonical_divergence(model, p, p)))
            for q in pts:
                if np.linalg.norm(p - q) < 1e-8:
                    continue
                min_off = min(min_off, canonical_divergence(model, p, q))
    out.append(CheckResult("fujiwara-amari", "divergence-positivity",
                           min_off > 0.0 and worst_diag < 1e-12,
                           float(min_off), 0.0,
                           "D > 0 off the diagonal, D = 0 on it"))

    def residual_cell(args):
        model, center, width, seed = args
        local = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(100):
            q = center + local.uniform(-width, width, size=center.size)
            x = center + local.uniform(-width, width, size=center.size)
            if np.linalg.norm(x - q) < 1e-3:
                continue
            for pipeline in ("analytic", "fd"):
                worst = max(worst, fujiwara_amari_residual(
                    model, q, x, pipeline=pipeline))
        return worst

    seeds = rng.integers(0, 2 ** 31, size=len(models))
    cells = [(m, c, w, int(s))
             for (_, m, c, w), s in zip(models, seeds)]
    worst = max(parallel_map(residual_cell, cells))
    out.append(CheckResult("fujiwara-amari", "fujiwara-amari",
                           worst < 1e-6, worst, 1e-6,
                           "divergence gradient flows are autoparallel, "
                           "100 pairs per model, both pipelines"))
    return out


# ----------------------------------------------------------- gaussian-chain


def _suite_gaussian_chain(rng) -> list[CheckResult]:
    out = []

    # integrated flow against the closed-form relaxation
    worst = 0.0
    for n_beads in (2, 5):
        sp = spectrum(ChainSpec(n_beads))
        g, f = _chain_pair(sp)
        t_end = 5.0 / sp.lambdas[0]
        for t_tilde in (0.25, 0.5, 2.0, 4.0):
            spec_t = ChainSpec(n_beads, t_tilde=t_tilde)
            traj = integrate_flow(g, f, t_tilde * sp.a_star, t_end, tol=1e-11)
            for t in np.linspace(0.0, t_end, 9):
                want = np.array([analytic_variance(spec_t, sp, k, t)
                                 for k in range(sp.n_modes)])
                got = traj.position(t)
                worst = max(worst, float(np.abs(got - want).max()
                                         / np.abs(want).max()))
    out.append(CheckResult("gaussian-chain", "ode-closed-form",
                           worst < 1e-8, worst, 1e-8,
                           "integrated relaxation matches the exponential law"))

    # the mode ODE is exactly the Fisher gradient flow
    sp = spectrum(ChainSpec(6))
    g, f = _chain_pair(sp)
    worst = 0.0
    for _ in range(1000):
        a = sp.a_star * rng.uniform(0.2, 4.0, size=sp.n_modes)
        rhs = ode_rhs(sp, ModeState(a))
        grad_flow = -np.linalg.solve(g(a), f.gradient_covector(a))
        worst = max(worst, float(np.abs(rhs - grad_flow).max()
                                 / max(1.0, np.abs(rhs).max())))
    out.append(CheckResult("gaussian-chain", "gradient-identity",
                           worst < 1e-10, worst, 1e-10,
                           "-grad F equals the mode ODE at 1000 states"))

    # closed-form cubic against the trajectory route
    sp1 = spectrum(ChainSpec(2))
    g1, f1 = _mode_pair(sp1)
    worst = 0.0
    for t_tilde in (2.0, 0.5):
        traj = integrate_flow(g1, f1, [t_tilde * sp1.a_star[0]], 3.0,
                              tol=1e-11)
        for t in rng.uniform(0.0, 2.0, size=8):
            a_t = traj.position(t)
            closed = cubic_closed_form(sp1, ModeState(a_t), 0)
            traj_route = nonmetricity_cubic(g1, f1, 0.0, traj, t)
            worst = max(worst, abs(traj_route + closed) / max(1.0, abs(closed)))
    out.append(CheckResult("gaussian-chain", "cubic-cross-validation",
                           worst < 1e-6, worst, 1e-6,
                           "closed-form cubic = trajectory evaluation"))

    # closed-form curvature against the numeric pipeline; nonzero values
    # certify the model is not dually flat
    from .gaussian_chain import mode_plane_manifold
    g2, f2 = mode_plane_manifold(sp1, 0)
    conn = straightening_connection(g2, f2, 0.0)
    worst = 0.0
    smallest = np.inf
    for ratio in (0.2, 0.5, 0.8, 1.2, 2.0, 3.5, 5.0):
        a = ratio * sp1.a_star[0]
        closed = scalar_curvature_mode(sp1, 0, a)
        num = scalar_curvature(conn, np.array([0.0, a]))
        worst = max(worst, abs(num - closed) / max(1.0, abs(closed)))
        if ratio != 5.0:
            smallest = min(smallest, abs(closed))
    out.append(CheckResult("gaussian-chain", "curvature-cross-validation",
                           worst < 1e-4 and smallest > 0.1, worst, 1e-4,
                           "closed-form s = numeric s; s not identically 0"))

    # the warming/cooling asymmetry holds across the whole grid
    def sweep_cell(args):
        n_beads, t_plus = args
        sp_cell = spectrum(ChainSpec(n_beads))
        t_end = 12.0 / sp_cell.lambdas[0]
        res = universal_asymmetry_experiment(ChainSpec(n_beads), t_plus,
                                             t_end, per_mode=False)
        d = res.full.delta_f
        return (res.full.verdict == CURVE1_FASTER,
                float(d.min()), float(d[len(d) // 2]))

    grid = [(n + 1, t_plus) for n in (1, 2, 5, 10, 32)
            for t_plus in (1.1, 1.5, 2.0, 4.0, 8.0)]
    cells = parallel_map(sweep_cell, grid)
    all_faster = all(c[0] for c in cells)
    worst_min = min(c[1] for c in cells)
    mid_positive = all(c[2] > 0.0 for c in cells)
    out.append(CheckResult("gaussian-chain", "universality-sweep",
                           all_faster and worst_min >= -1e-9 and mid_positive,
                           worst_min, -1e-9,
                           "warming faster on the full (N, T+) grid"))

    # both trajectories stay on their own side of equilibrium.  Strict
    # inequality is checked per mode out to 10/lambda_k; past that the gap
    # a*(T-1)e^{-2 lambda t} drops under one ulp of a*, so only the
    # non-strict ordering is representable.
    sp = spectrum(ChainSpec(4))
    from .gaussian_chain import equidistant_temperatures
    t_plus = 2.0
    t_minus = equidistant_temperatures(t_plus)
    spec_hot = ChainSpec(4, t_tilde=t_plus)
    spec_cold = ChainSpec(4, t_tilde=t_minus)
    margin = np.inf
    ordered = True
    for k in range(sp.n_modes):
        for t in np.linspace(0.0, 10.0 / sp.lambdas[k], 60):
            hot = analytic_variance(spec_hot, sp, k, t)
            cold = analytic_variance(spec_cold, sp, k, t)
            margin = min(margin, hot - sp.a_star[k], sp.a_star[k] - cold)
        for t in np.linspace(0.0, 200.0 / sp.lambdas[k], 60):
            hot = analytic_variance(spec_hot, sp, k, t)
            cold = analytic_variance(spec_cold, sp, k, t)
            ordered = ordered and (cold <= sp.a_star[k] <= hot)
    out.append(CheckResult("gaussian-chain", "order-relation",
                           ordered and margin > 0.0, float(margin), 0.0,
                           "cold < equilibrium < hot, strictly until one ulp"))
    return out


def _chain_pair(sp):
    from .gaussian_chain import chain_manifold
    return chain_manifold(sp)


def _mode_pair(sp):
    from .gaussian_chain import mode_manifold
    return mode_manifold(sp, 0)


# ------------------------------------------------------------------ driver


def run_suites(seed: int = 0, suites=None,
               flip_nonmetricity_sign: bool = False) -> list[CheckResult]:
    """Run the named suites (all by default) and return their check results."""
    chosen = tuple(suites) if suites else SUITE_NAMES
    unknown = [s for s in chosen if s not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}; "
                         f"expected a subset of {', '.join(SUITE_NAMES)}")
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    if "manifold-core" in chosen:
        results.extend(_suite_manifold(rng))
    if "straightening" in chosen:
        results.extend(_suite_straightening(
            rng, flip_sign=flip_nonmetricity_sign))
    if "gradient-flow" in chosen:
        results.extend(_suite_gradient_flow(rng))
    if "fujiwara-amari" in chosen:
        results.extend(_suite_dually_flat(rng))
    if "gaussian-chain" in chosen:
        results.extend(_suite_gaussian_chain(rng))
    return results
