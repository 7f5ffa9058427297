"""Equidistant seeds and relaxation-speed comparison of paired flows.

Two trajectories started on the same level set of f relax toward the same
minimum; which one is faster is decided by the sign of the cubic
non-metricity gap at every time where their speeds coincide, cross-checked
against the directly sampled difference Delta f = f(curve2) - f(curve1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainExitError,
    LevelUnreachableError,
    MissingMinimumError,
    NonEquidistantError,
)
from .manifold import MetricField, ScalarPotential, Trajectory, integrate_flow
from .parallel import parallel_map
from .straightening import nonmetricity_cubic

__all__ = [
    "CURVE1_FASTER",
    "CURVE2_FASTER",
    "INCONCLUSIVE",
    "EquidistantPair",
    "AsymmetryReport",
    "equidistant_seed",
    "compare",
    "metric_symmetry_check",
]

CURVE1_FASTER = "Curve1Faster"
CURVE2_FASTER = "Curve2Faster"
INCONCLUSIVE = "Inconclusive"

#: |f - c| tolerance for a point to count as on-level
LEVEL_TOL = 1e-10

#: delta_f slack when certifying a one-sided verdict
DELTA_TOL = 1e-9

#: speeds below this fraction of the run maximum are treated as converged
#: noise and excluded from coincidence detection
SPEED_FLOOR = 1e-8

_GRID = 512


@dataclass(frozen=True)
class EquidistantPair:
    """Two seeds on the same level set of f."""

    x1_0: np.ndarray
    x2_0: np.ndarray
    level: float

    def validate(self, f: ScalarPotential) -> None:
        for x in (self.x1_0, self.x2_0):
            err = abs(f(x) - self.level)
            if err > LEVEL_TOL:
                raise NonEquidistantError(
                    f"|f(x) - c| = {err:.3e} at seed {x} (limit {LEVEL_TOL})")
        if f.minimum_q is not None and not self.level > f(f.minimum_q):
            raise NonEquidistantError(
                f"level {self.level} does not exceed the minimum value")


@dataclass
class AsymmetryReport:
    """Outcome of a paired-relaxation comparison.

    ``delta_f[i] = f(curve2(ts[i])) - f(curve1(ts[i]))``; a positive sign
    means curve 1 sits lower, i.e. has relaxed further.  ``cubic_gaps[j]``
    is C(curve2) - C(curve1) at ``coincidence_times[j]``.
    """

    ts: np.ndarray
    delta_f: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    coincidence_times: list[float]
    cubic_gaps: list[float]
    verdict: str
    notes: list[str] = field(default_factory=list)
    traj1: Trajectory | None = None
    traj2: Trajectory | None = None
    level: float = np.nan


def _seed_along(g: MetricField, f: ScalarPotential, q: np.ndarray, c: float,
                direction: np.ndarray) -> np.ndarray:
    d = np.asarray(direction, dtype=float)
    nd = np.linalg.norm(d)
    if nd == 0.0:
        raise ValueError("seed direction must be nonzero")
    d = d / nd
    chart = g.chart

    def on_ray(s):
        return q + s * d

    def level_gap(s):
        return f(on_ray(s)) - c

    # expand until the ray crosses the level or leaves the chart
    s_lo, s_hi = 0.0, 1e-3
    while level_gap(s_hi) < 0.0:
        if chart is not None and not chart.contains(on_ray(s_hi)):
            raise DomainExitError(
                f"ray from {q} along {d} leaves the chart at s={s_hi:.3e} "
                f"before reaching level {c}")
        s_lo, s_hi = s_hi, 2.0 * s_hi
        if s_hi > 1e8:
            raise LevelUnreachableError(
                f"level {c} not reached within s <= 1e8 along {d}")
    if chart is not None and not chart.contains(on_ray(s_hi)):
        raise DomainExitError(
            f"level {c} is only crossed outside the chart along {d}")

    for _ in range(80):
        s_mid = 0.5 * (s_lo + s_hi)
        if level_gap(s_mid) < 0.0:
            s_lo = s_mid
        else:
            s_hi = s_mid

    s = 0.5 * (s_lo + s_hi)
    for _ in range(25):
        gap = level_gap(s)
        if abs(gap) < LEVEL_TOL:
            break
        slope = float(f.gradient_covector(on_ray(s)) @ d)
        if slope == 0.0:
            break
        s -= gap / slope
    if abs(level_gap(s)) >= LEVEL_TOL:
        raise LevelUnreachableError(
            f"root polish stalled at |f - c| = {abs(level_gap(s)):.3e}")
    return on_ray(s)


def equidistant_seed(g: MetricField, f: ScalarPotential, c: float,
                     direction1, direction2) -> EquidistantPair:
    """Find the two points where rays from the minimum cross the level c.

    Scalar root-finding (bisection, then Newton polish to |f - c| < 1e-10)
    along each direction from f.minimum_q.

    Raises
    ------
    MissingMinimumError
        If the potential has no designated minimum.
    LevelUnreachableError, DomainExitError
        If a ray fails to cross the level inside the chart.
    """
    if f.minimum_q is None:
        raise MissingMinimumError(
            "equidistant seeding needs a potential with a designated minimum")
    q = f.minimum_q
    if not c > f(q):
        raise ValueError(
            f"level c={c} must exceed the minimum value f(q)={f(q)}")
    x1 = _seed_along(g, f, q, c, direction1)
    x2 = _seed_along(g, f, q, c, direction2)
    pair = EquidistantPair(x1, x2, float(c))
    pair.validate(f)
    return pair


def _speed(g: MetricField, traj: Trajectory, t: float) -> float:
    x = traj.position(t)
    v = traj.velocity(t)
    return float(np.sqrt(max(v @ g(x) @ v, 0.0)))


def compare(g: MetricField, f: ScalarPotential, lam: float,
            pair: EquidistantPair, t_end: float, tol: float = 1e-10,
            n_samples: int = _GRID) -> AsymmetryReport:
    """Integrate both relaxations and issue the asymmetry verdict.

    Speed-coincidence times are the bracketed sign changes of
    |curve1'| - |curve2'| on the dense output (plus t=0 when the seeds
    already move at equal speed), located to 1e-9 in t.  The verdict is
    CURVE1_FASTER only when every cubic gap is positive and the sampled
    delta_f never dips below -1e-9; symmetrically for CURVE2_FASTER;
    anything else is INCONCLUSIVE.  Sign changes where both speeds have
    decayed below 1e-8 of the run maximum are roundoff chatter near
    equilibrium, not coincidences, and are skipped.
    """
    pair.validate(f)
    traj1, traj2 = parallel_map(
        lambda x0: integrate_flow(g, f, x0, t_end, tol=tol,
                                  stop_grad_norm=1e-6),
        [pair.x1_0, pair.x2_0])

    t_hi = min(traj1.span[1], traj2.span[1])
    ts = np.linspace(0.0, t_hi, n_samples)
    f1 = np.array([f(traj1.position(t)) for t in ts])
    f2 = np.array([f(traj2.position(t)) for t in ts])
    delta = f2 - f1

    s1 = np.array([_speed(g, traj1, t) for t in ts])
    s2 = np.array([_speed(g, traj2, t) for t in ts])
    diff = s1 - s2
    floor = SPEED_FLOOR * max(s1.max(), s2.max())
    live = np.maximum(s1, s2) > floor

    notes: list[str] = []
    roots: list[float] = []
    if abs(diff[0]) <= floor:
        roots.append(0.0)
    for i in range(len(ts) - 1):
        if not (live[i] and live[i + 1]):
            continue
        a, b = diff[i], diff[i + 1]
        if a == 0.0 and ts[i] > 0.0:
            roots.append(float(ts[i]))
        elif a * b < 0.0:
            r = brentq(lambda t: _speed(g, traj1, t) - _speed(g, traj2, t),
                       ts[i], ts[i + 1], xtol=1e-12)
            roots.append(float(r))
    dedup: list[float] = []
    for r in roots:
        if not dedup or r - dedup[-1] > 1e-9:
            dedup.append(r)

    gaps = [nonmetricity_cubic(g, f, lam, traj2, r)
            - nonmetricity_cubic(g, f, lam, traj1, r) for r in dedup]

    if gaps:
        if max(abs(gp) for gp in gaps) < 1e-10:
            notes.append("zero-gap: every cubic gap vanishes to tolerance "
                         "(symmetric relaxation)")
            verdict = INCONCLUSIVE
        elif all(gp > 0.0 for gp in gaps) and delta.min() >= -DELTA_TOL:
            verdict = CURVE1_FASTER
        elif all(gp < 0.0 for gp in gaps) and delta.max() <= DELTA_TOL:
            verdict = CURVE2_FASTER
        else:
            verdict = INCONCLUSIVE
    else:
        notes.append("no-coincidence: speeds never re-coincide after t=0; "
                     "verdict rests on the sampled delta_f alone")
        if np.abs(delta).max() <= DELTA_TOL:
            notes.append("zero-gap: delta_f vanishes to tolerance "
                         "(symmetric relaxation)")
            verdict = INCONCLUSIVE
        elif delta.min() >= -DELTA_TOL:
            verdict = CURVE1_FASTER
        elif delta.max() <= DELTA_TOL:
            verdict = CURVE2_FASTER
        else:
            verdict = INCONCLUSIVE

    return AsymmetryReport(ts=ts, delta_f=delta, f1=f1, f2=f2,
                           coincidence_times=dedup, cubic_gaps=gaps,
                           verdict=verdict, notes=notes,
                           traj1=traj1, traj2=traj2, level=pair.level)


def metric_symmetry_check(g: MetricField, f: ScalarPotential,
                          pair: EquidistantPair, t_end: float) -> bool:
    """True iff the paired relaxations are indistinguishable in f.

    The witness that a potential admits a metric straightening connection:
    max_t |delta_f| < 1e-7 * level.
    """
    report = compare(g, f, 0.0, pair, t_end)
    scale = max(abs(pair.level), 1e-30)
    return bool(np.abs(report.delta_f).max() < 1e-7 * scale)
