"""Charts, metrics, potentials, connections, and ODE integration.

The geometric substrate: everything else in the package is built from the
types and operations here.  Charts are single global coordinate patches;
there is no atlas machinery.  Metrics and potentials evaluate pointwise and
may carry analytic derivative closures; absent those, derivatives fall back
to the 4th-order central differences in :mod:`geoflow.numdiff`.

Index conventions used throughout:

* metric partials are stored as ``D[l, i, j] = d_l g_ij``
* connection coefficients as ``G[k, i, j] = Gamma^k_ij``
* field Jacobians as ``J[k, i] = d_i V^k``
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import RK45

from . import numdiff
from .errors import (
    CriticalPointError,
    NonConvergenceError,
    OutOfSpanError,
    SingularMatrixError,
    StepUnderflowError,
)

__all__ = [
    "Chart",
    "MetricField",
    "ScalarPotential",
    "AffineConnection",
    "Trajectory",
    "metric_inverse",
    "gradient",
    "grad_norm_sq",
    "christoffel_levi_civita",
    "levi_civita_connection",
    "covariant_acceleration",
    "integrate_geodesic",
    "integrate_flow",
]

#: condition-number ceiling beyond which a metric counts as degenerate
COND_LIMIT = 1e12

#: time step (relative) for differentiating dense output along a curve
CURVE_STEP = 1e-4

#: accepted steps per non-convergence monitoring window
_MONITOR_WINDOW = 64


@dataclass(frozen=True)
class Chart:
    """A single global coordinate patch.

    Parameters
    ----------
    dim : int
        Number of coordinates.
    domain_check : callable, optional
        Predicate marking the valid region.  ``None`` means the whole of
        R^dim is valid.
    name : str
        Label used in error messages.
    """

    dim: int
    domain_check: Callable[[np.ndarray], bool] | None = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("chart dimension must be >= 1")

    def contains(self, x: np.ndarray) -> bool:
        if self.domain_check is None:
            return True
        return bool(self.domain_check(np.asarray(x, dtype=float)))


class MetricField:
    """Position-dependent symmetric positive-definite bilinear form.

    Parameters
    ----------
    chart : Chart
    matrix : callable
        ``matrix(x) -> (dim, dim)`` array of components g_ij.
    partials : callable, optional
        Analytic closure ``partials(x) -> (dim, dim, dim)`` with
        ``D[l, i, j] = d_l g_ij``.  When omitted, partials come from finite
        differences of ``matrix``.
    name : str

    Positive-definiteness is checked lazily via :meth:`check_positive_definite`
    on fixture points, not on every evaluation.
    """

    def __init__(self, chart: Chart, matrix: Callable[[np.ndarray], np.ndarray],
                 partials: Callable[[np.ndarray], np.ndarray] | None = None,
                 name: str = ""):
        self.chart = chart
        self._matrix = matrix
        self._partials = partials
        self.name = name

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._matrix(np.asarray(x, dtype=float)), dtype=float)

    @property
    def has_analytic_partials(self) -> bool:
        return self._partials is not None

    def partials(self, x: np.ndarray) -> np.ndarray:
        """Partial derivatives ``D[l, i, j] = d_l g_ij`` at x."""
        x = np.asarray(x, dtype=float)
        if self._partials is not None:
            return np.asarray(self._partials(x), dtype=float)
        jac = numdiff.jacobian_fd(self.__call__, x, scale=numdiff.STEP_EXACT)
        return np.einsum("ijl->lij", jac)

    def check_positive_definite(self, points: Sequence[np.ndarray]) -> None:
        """Raise if the metric is non-symmetric or not positive definite anywhere."""
        for x in points:
            m = self(x)
            if not np.allclose(m, m.T, atol=1e-12):
                raise ValueError(f"metric not symmetric at {x}")
            if np.linalg.eigvalsh(m).min() <= 0.0:
                raise ValueError(f"metric not positive definite at {x}")

    def norm(self, x: np.ndarray, v: np.ndarray) -> float:
        """Riemannian norm of a tangent vector."""
        v = np.asarray(v, dtype=float)
        return float(np.sqrt(max(v @ self(x) @ v, 0.0)))


class ScalarPotential:
    """Smooth scalar function with (optionally) a designated minimum.

    Parameters
    ----------
    value : callable
        ``value(x) -> float``.
    gradient : callable, optional
        Analytic partials ``gradient(x) -> (dim,)`` covector.  Finite
        differences otherwise.
    minimum_q : array-like, optional
        The designated minimum.  ``None`` for potentials whose infimum lies
        outside the chart; operations that need q raise in that case.
    min_value : float
        Value at the minimum.
    """

    def __init__(self, value: Callable[[np.ndarray], float],
                 gradient: Callable[[np.ndarray], np.ndarray] | None = None,
                 minimum_q: np.ndarray | None = None,
                 min_value: float = 0.0,
                 name: str = ""):
        self._value = value
        self._gradient = gradient
        self.minimum_q = None if minimum_q is None else np.asarray(minimum_q, dtype=float)
        self.min_value = float(min_value)
        self.name = name

    def __call__(self, x: np.ndarray) -> float:
        return float(self._value(np.asarray(x, dtype=float)))

    @property
    def has_analytic_gradient(self) -> bool:
        return self._gradient is not None

    def gradient_covector(self, x: np.ndarray) -> np.ndarray:
        """Partial derivatives (d_i f) at x."""
        x = np.asarray(x, dtype=float)
        if self._gradient is not None:
            return np.asarray(self._gradient(x), dtype=float)
        return numdiff.gradient_fd(self.__call__, x, scale=numdiff.STEP_EXACT)


@dataclass(frozen=True)
class AffineConnection:
    """Coefficient field Gamma^k_ij over a chart.

    ``coeffs(x)`` returns the (dim, dim, dim) array ``G[k, i, j]``.  The
    optional ``metric`` back-reference supplies the g used for curvature
    contraction and norm computations; ``coeff_step`` is the relative step
    used when the coefficients themselves are differentiated (curvature).
    """

    coeffs: Callable[[np.ndarray], np.ndarray]
    symmetric: bool = True
    chart: Chart | None = None
    metric: MetricField | None = None
    coeff_step: float = numdiff.STEP_COEFFS

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.coeffs(np.asarray(x, dtype=float)), dtype=float)


def metric_inverse(g: MetricField, x: np.ndarray) -> np.ndarray:
    """Inverse metric components g^{ij} at x.

    Raises
    ------
    SingularMatrixError
        If the condition number exceeds 1e12.
    """
    m = g(x)
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrixError(
            f"metric at {np.asarray(x)} has condition number {cond:.3e}")
    return np.linalg.inv(m)


def gradient(g: MetricField, f: ScalarPotential, x: np.ndarray) -> np.ndarray:
    """Riemannian gradient g^{ij} d_j f, the unique vector with g(grad f, .) = df."""
    return metric_inverse(g, x) @ f.gradient_covector(x)


def grad_norm_sq(g: MetricField, f: ScalarPotential, x: np.ndarray) -> float:
    """Squared Riemannian norm of grad f, i.e. d_i f g^{ij} d_j f."""
    df = f.gradient_covector(x)
    return float(df @ metric_inverse(g, x) @ df)


def christoffel_levi_civita(g: MetricField, x: np.ndarray,
                            step: float | None = None) -> np.ndarray:
    """Levi-Civita coefficients Gamma^k_ij = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij).

    ``step`` forces a fixed finite-difference step for the metric partials
    (a warning fires if it is small enough for roundoff to dominate);
    otherwise analytic partials are used when the metric has them, with the
    standard step policy as fallback.
    """
    x = np.asarray(x, dtype=float)
    ginv = metric_inverse(g, x)
    if step is not None:
        jac = numdiff.jacobian_fd(g.__call__, x, step=step)
        dg = np.einsum("ijl->lij", jac)
    else:
        dg = g.partials(x)
    term = (np.einsum("ijl->ijl", dg) + np.einsum("jil->ijl", dg)
            - np.einsum("lij->ijl", dg))
    return 0.5 * np.einsum("kl,ijl->kij", ginv, term)


def levi_civita_connection(g: MetricField) -> AffineConnection:
    """The metric connection of g as an AffineConnection."""
    step = numdiff.STEP_NESTED if not g.has_analytic_partials else numdiff.STEP_COEFFS
    return AffineConnection(
        coeffs=lambda x: christoffel_levi_civita(g, x),
        symmetric=True,
        chart=g.chart,
        metric=g,
        coeff_step=max(step, numdiff.STEP_COEFFS),
    )


class Trajectory:
    """Integrated curve with dense output.

    Samples are the accepted integrator steps; between them, position (and
    velocity, for second-order states) comes from the integrator's own
    per-step interpolants, so dense queries carry the integration tolerance.

    Attributes
    ----------
    ts, xs, vs : ndarray
        Sample times, positions, velocities.
    exited_domain : bool
        True when integration stopped early at the last in-domain state.
    converged : bool
        True when a stop condition (gradient-norm threshold) fired.
    """

    def __init__(self, ts, xs, vs, segments, dim: int,
                 velocity_field: Callable[[np.ndarray], np.ndarray] | None = None,
                 exited_domain: bool = False, converged: bool = False):
        self.ts = np.asarray(ts, dtype=float)
        self.xs = np.asarray(xs, dtype=float)
        self.vs = np.asarray(vs, dtype=float)
        self._segments = segments          # list of (t_hi, dense_output)
        self._seg_ends = [s[0] for s in segments]
        self._dim = dim
        self._velocity_field = velocity_field
        self.exited_domain = exited_domain
        self.converged = converged

    @property
    def span(self) -> tuple[float, float]:
        return float(self.ts[0]), float(self.ts[-1])

    def _state(self, t: float) -> np.ndarray:
        t0, t1 = self.span
        # tolerate roundoff-level overshoot at the ends
        slack = 1e-12 * max(1.0, abs(t0), abs(t1))
        if t < t0 - slack or t > t1 + slack:
            raise OutOfSpanError(f"t={t} outside trajectory span [{t0}, {t1}]")
        t = min(max(t, t0), t1)
        if not self._segments:
            return np.concatenate([self.xs[0], self.vs[0]])[: self.xs.shape[1] * 2]
        idx = bisect.bisect_left(self._seg_ends, t)
        idx = min(idx, len(self._segments) - 1)
        return self._segments[idx][1](t)

    def position(self, t: float) -> np.ndarray:
        return self._state(t)[: self._dim]

    def velocity(self, t: float) -> np.ndarray:
        if self._velocity_field is not None:
            return np.asarray(self._velocity_field(self.position(t)), dtype=float)
        return self._state(t)[self._dim:]

    def acceleration(self, t: float) -> np.ndarray:
        """d(velocity)/dt from the dense output (5-point stencil)."""
        return np.asarray(
            numdiff.curve_derivative(self.velocity, t, self.span, order=1,
                                     step=CURVE_STEP),
            dtype=float,
        ).reshape(-1)


def _integrate(rhs, y0, t_end, tol, *, in_domain, stop=None, grad_monitor=None,
               max_step=np.inf):
    """Drive scipy's RK45 step by step; collect dense output and flags."""
    y0 = np.asarray(y0, dtype=float)
    solver = RK45(rhs, 0.0, y0, t_bound=float(t_end), rtol=tol, atol=tol,
                  max_step=max_step)
    ts = [0.0]
    ys = [y0.copy()]
    segments: list[tuple[float, object]] = []
    exited = False
    converged = False
    window: list[float] = []
    prev_window_min = np.inf
    while solver.status == "running":
        msg = solver.step()
        if solver.status == "failed":
            raise StepUnderflowError(msg or "adaptive step size underflow")
        if not in_domain(solver.y):
            exited = True
            break
        segments.append((solver.t, solver.dense_output()))
        ts.append(solver.t)
        ys.append(solver.y.copy())
        if stop is not None and stop(solver.y):
            converged = True
            break
        if grad_monitor is not None:
            window.append(grad_monitor(solver.y))
            if len(window) == _MONITOR_WINDOW:
                wmin = min(window)
                floor = 1e-13 * (1.0 + float(np.linalg.norm(solver.y)))
                if wmin >= prev_window_min and wmin > floor:
                    raise NonConvergenceError(
                        "gradient norm failed to decrease over a full "
                        f"window of {_MONITOR_WINDOW} steps")
                prev_window_min = wmin
                window = []
    return np.array(ts), np.array(ys), segments, exited, converged


def integrate_geodesic(conn: AffineConnection, x0, v0, t_end: float,
                       tol: float = 1e-10) -> Trajectory:
    """Solve the geodesic equation xdd^k = -Gamma^k_ij xd^i xd^j.

    Integration stops early, flagged via ``Trajectory.exited_domain``, if the
    curve leaves the chart domain.  With identical (x0, v0, t_end, tol) the
    result is reproducible bit for bit.
    """
    x0 = np.asarray(x0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    n = x0.size
    chart = conn.chart

    def rhs(_t, y):
        x, v = y[:n], y[n:]
        acc = -np.einsum("kij,i,j->k", conn(x), v, v)
        return np.concatenate([v, acc])

    def in_domain(y):
        return chart is None or chart.contains(y[:n])

    ts, ys, segments, exited, _ = _integrate(rhs, np.concatenate([x0, v0]),
                                             t_end, tol, in_domain=in_domain)
    return Trajectory(ts, ys[:, :n], ys[:, n:], segments, n,
                      exited_domain=exited)


def integrate_flow(g: MetricField, f: ScalarPotential, x0, t_end: float,
                   tol: float = 1e-10,
                   stop_grad_norm: float | None = None) -> Trajectory:
    """Integrate the gradient descent xd = -grad f.

    Parameters
    ----------
    stop_grad_norm : float, optional
        Stop early (flagged ``converged``) once the Riemannian gradient norm
        falls below this threshold.

    Raises
    ------
    NonConvergenceError
        If the gradient norm fails to decrease over a full output window,
        the numerical stand-in for a flow that is not relaxing.
    """
    x0 = np.asarray(x0, dtype=float)
    chart = g.chart

    def field(x):
        return -gradient(g, f, x)

    def monitor(x):
        return np.sqrt(max(grad_norm_sq(g, f, x), 0.0))

    stop = None
    if stop_grad_norm is not None:
        stop = lambda x: monitor(x) < stop_grad_norm  # noqa: E731

    ts, ys, segments, exited, converged = _integrate(
        lambda _t, x: field(x), x0, t_end, tol,
        in_domain=lambda x: chart is None or chart.contains(x),
        stop=stop, grad_monitor=monitor)
    vs = np.array([field(x) for x in ys])
    return Trajectory(ts, ys, vs, segments, x0.size, velocity_field=field,
                      exited_domain=exited, converged=converged)


def covariant_acceleration(conn: AffineConnection, traj: Trajectory,
                           t: float) -> np.ndarray:
    """nabla_{xd} xd at time t: xdd^k + Gamma^k_ij xd^i xd^j.

    The coordinate acceleration comes from differentiating the trajectory's
    dense velocity output; the connection term is evaluated at x(t).
    """
    x = traj.position(t)
    v = traj.velocity(t)
    acc = traj.acceleration(t)
    return acc + np.einsum("kij,i,j->k", conn(x), v, v)
