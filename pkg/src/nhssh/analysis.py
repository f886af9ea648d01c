"""Growth classification and packet kinematics on recorded trajectories.

The classifier implements the threshold trichotomy: below the tuned gain
the Dirac norm oscillates, at it the norm grows linearly, above it
exponentially.  The decision rule is documented and scale-invariant;
nothing is decided by eye.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .propagate import Trajectory
from .states import fwhm_interval

# a local maximum followed by a >= 20% drop marks oscillation
OSCILLATION_DROP = 0.20
# trimmed from each side of the inter-reflection window (bounce clearance)
WINDOW_MARGIN_FRAC = 0.08
# packets count as separated only when their FWHM intervals clear this gap;
# the 1/n coefficient tails reach well beyond the half-maximum interval
SEPARATION_PAD_SITES = 40


class AnalysisError(RuntimeError):
    """Trajectory does not support the requested analysis."""


@dataclass
class GrowthReport:
    label: str  # "Exponential" | "Linear" | "Oscillatory"
    fit_params: dict
    r_squared: float
    window: tuple


def _r_squared(values: np.ndarray, predicted: np.ndarray) -> float:
    ss_tot = np.sum((values - values.mean()) ** 2)
    if ss_tot == 0.0:
        return 0.0
    return float(1.0 - np.sum((values - predicted) ** 2) / ss_tot)


def classify_growth(times: np.ndarray, norms: np.ndarray, window: tuple) -> GrowthReport:
    """Label a norm series Exponential, Linear or Oscillatory on a window.

    Rule: if the series drops by at least 20% from a running maximum the
    label is Oscillatory; otherwise a linear and a log-linear model are
    fitted and the better R^2 in norm space wins.  Multiplying the series
    by any constant leaves the outcome unchanged.
    """
    times = np.asarray(times, dtype=float)
    norms = np.asarray(norms, dtype=float)
    lo, hi = window
    sel = (times >= lo) & (times <= hi)
    if sel.sum() < 50:
        raise AnalysisError(f"window [{lo}, {hi}] holds {sel.sum()} samples; need >= 50")
    t = times[sel]
    p = norms[sel]
    spread = p.max() - p.min()
    if spread <= 1e-12 * max(abs(p).max(), 1e-300):
        raise AnalysisError("indeterminate: norm series is constant on the window")

    drawdown = float((p / np.maximum.accumulate(p)).min())

    lin = np.polyfit(t, p, 1)
    r2_lin = _r_squared(p, np.polyval(lin, t))
    log_p = np.log(np.maximum(p, 1e-300))
    exp_fit = np.polyfit(t, log_p, 1)
    r2_exp = _r_squared(p, np.exp(np.polyval(exp_fit, t)))

    fits = {
        "linear": {"slope": float(lin[0]), "intercept": float(lin[1]), "r_squared": r2_lin},
        "exponential": {
            "rate": float(exp_fit[0]),
            "log_intercept": float(exp_fit[1]),
            "r_squared": r2_exp,
        },
        "drawdown": drawdown,
    }
    if drawdown <= 1.0 - OSCILLATION_DROP:
        label, r2 = "Oscillatory", max(r2_lin, r2_exp)
    elif r2_exp > r2_lin:
        label, r2 = "Exponential", r2_exp
    else:
        label, r2 = "Linear", r2_lin
    return GrowthReport(label=label, fit_params=fits, r_squared=max(0.0, min(1.0, r2)), window=(lo, hi))


def reflection_symmetry(traj: Trajectory, t_reflect: float, delta_t: float) -> float:
    """Worst L1 mirror mismatch of profiles about t_reflect, lags up to delta_t.

    Normalized by the Dirac norm at the reflection instant (the norm at
    the packet's turning point sets the natural scale; the norm at t = 0
    is nearly zero at the tuned gain and would be meaningless here).
    """
    k0 = traj.index_at(t_reflect)
    lags = int(round(delta_t / traj.dt))
    if k0 - lags < 0 or k0 + lags >= len(traj.times):
        raise AnalysisError(
            f"trajectory span does not cover t_reflect +/- delta_t = {t_reflect} +/- {delta_t}"
        )
    scale = traj.norms[k0]
    worst = 0.0
    for d in range(1, lags + 1):
        mismatch = np.abs(traj.profiles[k0 + d] - traj.profiles[k0 - d]).sum() / scale
        worst = max(worst, float(mismatch))
    return worst


@dataclass
class TranslationReport:
    window: tuple
    norm_drift: float
    center_velocity: float
    reflection_times: tuple


def translation_window(traj: Trajectory) -> TranslationReport:
    """Inter-reflection window of a single off-center packet.

    Boundary reflections show up as the turning points of the half-maximum
    interval endpoints: the lower endpoint bottoms out at the left wall,
    the upper tops out at the right wall.  Between the two events the
    packet translates; reported are the max relative norm spread and the
    fitted center velocity on that window (margins trimmed to clear the
    bounces).
    """
    ends = np.array([fwhm_interval(p) for p in traj.profiles])
    lo, hi = ends[:, 0], ends[:, 1]
    i_left = int(np.argmin(lo))
    i_right = int(np.argmax(hi))
    i1, i2 = sorted((i_left, i_right))
    n = len(traj.times)
    if i1 == i2 or i1 == 0 or i2 >= n - 1:
        raise AnalysisError("no pair of boundary reflections found inside the trajectory span")
    margin = int(round(WINDOW_MARGIN_FRAC * (i2 - i1)))
    w0, w1 = i1 + margin, i2 - margin
    if w1 - w0 < 10:
        raise AnalysisError("inter-reflection window too short to analyze")

    norms = traj.norms[w0 : w1 + 1]
    drift = float((norms.max() - norms.min()) / norms.mean())
    sites = np.arange(1, traj.profiles.shape[1] + 1)
    centers = (traj.profiles[w0 : w1 + 1] * sites).sum(axis=1) / norms
    velocity = float(np.polyfit(traj.times[w0 : w1 + 1], centers, 1)[0])
    return TranslationReport(
        window=(float(traj.times[w0]), float(traj.times[w1])),
        norm_drift=drift,
        center_velocity=velocity,
        reflection_times=(float(traj.times[i1]), float(traj.times[i2])),
    )


@dataclass
class InterferenceReport:
    overlap_window: tuple
    p_ratio_extremum: float
    ratio_max: float
    ratio_min: float
    p_before: float
    separated: np.ndarray = field(repr=False, default=None)


def interference_report(
    pair_traj: Trajectory,
    single_trajs: tuple[Trajectory, Trajectory],
) -> InterferenceReport:
    """Norm ratios of a two-packet state across its first collision.

    The collision window is where the constituent packets' half-maximum
    intervals intersect; the constituents evolve independently (the model
    is linear), so their own trajectories define the intervals.  Ratios
    compare the pair norm inside the window to the mean norm just before
    it.  ``separated`` marks samples where the intervals clear a
    40-site pad, the regime where the pair norm should equal the sum of
    the single norms.
    """
    t1, t2 = single_trajs
    n = len(pair_traj.times)
    if len(t1.times) != n or len(t2.times) != n:
        raise AnalysisError("pair and single trajectories must share the sampling grid")
    overlap = np.zeros(n, dtype=bool)
    separated = np.zeros(n, dtype=bool)
    for i in range(n):
        a0, a1 = fwhm_interval(t1.profiles[i])
        b0, b1 = fwhm_interval(t2.profiles[i])
        overlap[i] = (a0 <= b1) and (b0 <= a1)
        separated[i] = not (
            (a0 <= b1 + SEPARATION_PAD_SITES) and (b0 <= a1 + SEPARATION_PAD_SITES)
        )
    if not overlap.any():
        raise AnalysisError("packets never meet inside the trajectory span")
    i0 = int(np.argmax(overlap))
    after = ~overlap[i0:]
    i1 = i0 + (int(np.argmax(after)) - 1 if after.any() else len(after) - 1)
    if i0 < 3:
        raise AnalysisError("packets overlap from the start; no pre-collision baseline")
    p_before = float(pair_traj.norms[max(0, i0 - 6) : i0].mean())
    inside = pair_traj.norms[i0 : i1 + 1]
    ratio_max = float(inside.max() / p_before)
    ratio_min = float(inside.min() / p_before)
    extremum = ratio_max if abs(ratio_max - 1.0) >= abs(1.0 - ratio_min) else ratio_min
    return InterferenceReport(
        overlap_window=(float(pair_traj.times[i0]), float(pair_traj.times[i1])),
        p_ratio_extremum=extremum,
        ratio_max=ratio_max,
        ratio_min=ratio_min,
        p_before=p_before,
        separated=separated,
    )
