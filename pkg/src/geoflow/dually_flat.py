"""Hessian manifolds, Legendre duality, and the canonical divergence.

A convex potential phi on an affine chart induces the dually flat structure:
metric g = Hess(phi), dual coordinates eta = d(phi), dual potential
psi = theta . eta - phi, and the divergence

    D(p, q) = phi(p) + psi(q) - theta(p) . eta(q).

These are the classical fixtures against which the straightening machinery
is validated: the gradient field of D_q(.) = D(q, .) in theta-coordinates
is affine (V(x) = x - q), so (dV)V = V identically, and its gradient curves
run along straight chart lines.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import numdiff
from .errors import CriticalPointError, NonConvergenceError, NonConvexError
from .manifold import Chart, MetricField

__all__ = [
    "HessianModel",
    "legendre_dual",
    "canonical_divergence",
    "canonical_divergence_dual",
    "fujiwara_amari_residual",
    "metric_field",
    "dual_model",
    "quadratic_model",
    "exponential_model",
    "gaussian_natural_model",
]


class HessianModel:
    """Convex potential phi over an affine chart, with derived structure.

    ``eta`` and ``hessian`` closures are optional; finite differences of
    phi fill in for value-only models.
    """

    def __init__(self, phi: Callable[[np.ndarray], float], chart: Chart,
                 eta: Callable[[np.ndarray], np.ndarray] | None = None,
                 hessian: Callable[[np.ndarray], np.ndarray] | None = None,
                 name: str = ""):
        self.phi_fn = phi
        self.chart = chart
        self._eta = eta
        self._hessian = hessian
        self.name = name

    def phi(self, theta: np.ndarray) -> float:
        return float(self.phi_fn(np.asarray(theta, dtype=float)))

    @property
    def has_analytic_eta(self) -> bool:
        return self._eta is not None

    def eta(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self._eta is not None:
            return np.asarray(self._eta(theta), dtype=float)
        return numdiff.gradient_fd(self.phi, theta, scale=numdiff.STEP_EXACT)

    def hessian(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self._hessian is not None:
            h = np.asarray(self._hessian(theta), dtype=float)
        elif self._eta is not None:
            h = numdiff.jacobian_fd(self._eta, theta, scale=numdiff.STEP_EXACT)
            h = 0.5 * (h + h.T)
        else:
            h = numdiff.jacobian_fd(
                lambda y: numdiff.gradient_fd(self.phi, y,
                                              scale=numdiff.STEP_EXACT),
                theta, scale=numdiff.STEP_NESTED)
            h = 0.5 * (h + h.T)
        if np.linalg.eigvalsh(h).min() <= 0.0:
            raise NonConvexError(
                f"Hessian of {self.name or 'phi'} not positive definite "
                f"at {theta}")
        return h

    def psi(self, theta: np.ndarray) -> float:
        theta = np.asarray(theta, dtype=float)
        return float(theta @ self.eta(theta) - self.phi(theta))


def metric_field(model: HessianModel) -> MetricField:
    """The Hessian metric of the model as a MetricField over its chart."""
    return MetricField(model.chart, model.hessian, name=model.name)


def legendre_dual(model: HessianModel, theta) -> tuple[np.ndarray, float]:
    """Dual coordinates and dual potential: (eta, psi) at theta.

    Raises
    ------
    NonConvexError
        If the Hessian at theta is not positive definite.
    """
    theta = np.asarray(theta, dtype=float)
    model.hessian(theta)
    return model.eta(theta), model.psi(theta)


def canonical_divergence(model: HessianModel, p, q) -> float:
    """D(p, q) = phi(p) + psi(q) - theta(p) . eta(q), both points in theta."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return model.phi(p) + model.psi(q) - float(p @ model.eta(q))


def canonical_divergence_dual(model: HessianModel, p, q) -> float:
    """The dual divergence D*(p, q) = D(q, p)."""
    return canonical_divergence(model, q, p)


def _invert_eta(model: HessianModel, target: np.ndarray,
                x0: np.ndarray | None = None) -> np.ndarray:
    """Solve eta(theta) = target by damped Newton in the theta chart."""
    target = np.asarray(target, dtype=float)
    theta = np.zeros_like(target) if x0 is None else np.array(x0, dtype=float)
    if not model.chart.contains(theta):
        raise NonConvergenceError(
            "eta inversion needs an in-chart starting point; the default "
            "origin is outside this model's chart")
    scale = 1.0 + float(np.linalg.norm(target))
    for _ in range(60):
        resid = model.eta(theta) - target
        if np.linalg.norm(resid) < 1e-13 * scale:
            return theta
        step = np.linalg.solve(model.hessian(theta), resid)
        damp = 1.0
        base = np.linalg.norm(resid)
        for _ in range(30):
            cand = theta - damp * step
            if model.chart.contains(cand) and \
                    np.linalg.norm(model.eta(cand) - target) < base:
                theta = cand
                break
            damp *= 0.5
        else:
            break
    raise NonConvergenceError(
        f"eta inversion stalled at |eta - target| = "
        f"{np.linalg.norm(model.eta(theta) - target):.3e}")


def dual_model(model: HessianModel,
               theta0: np.ndarray | None = None) -> HessianModel:
    """The Legendre-dual model: potential psi over eta-coordinates.

    Evaluations invert eta(theta) by damped Newton iteration started from
    ``theta0`` (an in-chart point; origin by default), so the dual chart
    carries no explicit domain predicate; out-of-image points fail with a
    non-convergence error.  Evaluators are pure and may run concurrently.
    """
    dim = model.chart.dim
    start = None if theta0 is None else np.array(theta0, dtype=float)

    def invert(eta_pt):
        return _invert_eta(model, eta_pt, x0=start)

    def phi_dual(eta_pt):
        theta = invert(eta_pt)
        return float(np.asarray(eta_pt, dtype=float) @ theta
                     - model.phi(theta))

    return HessianModel(phi_dual, Chart(dim), eta=invert,
                        name=(model.name + "-dual") if model.name else "dual")


def fujiwara_amari_residual(model: HessianModel, q, x,
                            pipeline: str = "auto") -> float:
    """Defect of the affine-gradient property of D_q(.) = D(q, .).

    Builds the Hessian-metric gradient field V of D_q and returns
    ``|(dV) V - V| / |V|`` at x; near zero certifies that gradient curves
    of the divergence are pregeodesics of the flat chart connection.

    pipeline="analytic" uses the chain-rule derivative of D_q (needs an
    analytic eta); "fd" differentiates divergence values only; "auto"
    picks "analytic" when available.
    """
    q = np.asarray(q, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.linalg.norm(x - q) < 1e-12:
        raise CriticalPointError(
            "x = q: the divergence gradient vanishes on the diagonal")
    if pipeline == "auto":
        pipeline = "analytic" if model.has_analytic_eta else "fd"

    if pipeline == "analytic":
        if not model.has_analytic_eta:
            raise ValueError("analytic pipeline needs a model with eta")

        def v_field(y):
            h = model.hessian(y)
            return np.linalg.solve(h, h @ (y - q))
    elif pipeline == "fd":
        # divergence values are exact compositions when eta is analytic;
        # value-only models carry FD noise and need the coarser step
        inner = (numdiff.STEP_EXACT if model.has_analytic_eta
                 else numdiff.STEP_NESTED)

        def d_q(y):
            return canonical_divergence(model, q, y)

        def v_field(y):
            grad = numdiff.gradient_fd(d_q, y, scale=inner)
            return np.linalg.solve(model.hessian(y), grad)
    else:
        raise ValueError(f"unknown pipeline {pipeline!r}")

    # the property under test makes V affine, so the outer derivative has
    # no truncation error at any step; a wide step drowns the FD noise the
    # fd pipeline injects into each V evaluation
    outer = numdiff.STEP_NESTED if pipeline == "analytic" else 1e-2
    v = v_field(x)
    jac = numdiff.jacobian_fd(v_field, x, scale=outer)
    defect = jac @ v - v
    return float(np.linalg.norm(defect) / np.linalg.norm(v))


def quadratic_model(dim: int = 1) -> HessianModel:
    """Self-dual model phi = |theta|^2 / 2 (Euclidean chart)."""
    return HessianModel(
        lambda th: 0.5 * float(th @ th),
        Chart(dim),
        eta=lambda th: np.array(th, dtype=float),
        hessian=lambda th: np.eye(dim),
        name="quadratic",
    )


def exponential_model() -> HessianModel:
    """phi = e^theta on the line; dual potential eta ln eta - eta."""
    return HessianModel(
        lambda th: float(np.exp(th[0])),
        Chart(1),
        eta=lambda th: np.exp(th),
        hessian=lambda th: np.array([[np.exp(th[0])]]),
        name="exponential",
    )


def gaussian_natural_model() -> HessianModel:
    """Log-partition of the 1-D Gaussian in natural parameters.

    theta = (mu/s, -1/(2s)) for mean mu and variance s; the chart is the
    half-plane theta_2 < 0.  phi = -theta_1^2/(4 theta_2) - ln(-2 theta_2)/2,
    eta = (mean, second moment), and the canonical divergence reproduces
    the KL divergence between the underlying densities.
    """
    chart = Chart(2, domain_check=lambda th: th[1] < 0.0, name="gauss-natural")

    def phi(th):
        return -th[0] ** 2 / (4.0 * th[1]) - 0.5 * np.log(-2.0 * th[1])

    def eta(th):
        mean = -th[0] / (2.0 * th[1])
        var = -1.0 / (2.0 * th[1])
        return np.array([mean, mean ** 2 + var])

    def hessian(th):
        var = -1.0 / (2.0 * th[1])
        mean = -th[0] / (2.0 * th[1])
        return np.array([
            [var, 2.0 * mean * var],
            [2.0 * mean * var, 4.0 * mean ** 2 * var + 2.0 * var ** 2],
        ])

    return HessianModel(phi, chart, eta=eta, hessian=hessian,
                        name="gauss-natural")
