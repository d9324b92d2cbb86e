"""Susceptibility ingestion and (J, g) estimation.

The fitter is a damped Gauss-Newton (Levenberg-Marquardt) loop with the
analytic Jacobian of the dimer susceptibility. Data are normalized to the
canonical emu/mol frame internally, so the convergence thresholds mean the
same thing whatever unit or overall scale the caller works in; the reported
rss is converted back to input units squared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import CURIE_EMU_K_PER_MOL, SI_M3_PER_EMU, TOOL_VERSION
from .core import DimerParams
from .errors import DataError, NumericError
from .models import (
    ChiUnit,
    SusceptibilityPoint,
    coherence_from_chi,
    coherence_longitudinal,
)
from .sweep import SweepTable, _read_two_column_csv

MIN_POINTS = 8
MAX_ITERATIONS = 500
STEP_RTOL = 1e-10
GRADIENT_TOL = 1e-12
_LAMBDA_INIT = 1e-3
_LAMBDA_MAX = 1e12


@dataclass(frozen=True)
class SusceptibilitySeries:
    """An ordered chi(T) measurement run on one sample."""

    points: tuple[SusceptibilityPoint, ...]
    sample_id: str = ""
    unit: ChiUnit = ChiUnit.EMU_PER_MOL

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("series needs at least one point")
        if any(p.unit is not self.unit for p in self.points):
            raise ValueError("all points must share the series unit")
        temps = [p.temperature for p in self.points]
        if any(a >= b for a, b in zip(temps, temps[1:])):
            raise DataError("temperatures not increasing")

    def temperatures(self) -> np.ndarray:
        return np.array([p.temperature for p in self.points])

    def chi_values(self) -> np.ndarray:
        """In the series unit, as stored."""
        return np.array([p.chi for p in self.points])


@dataclass(frozen=True)
class FitResult:
    """Least-squares estimate of (J/k_B, g) with 1-sigma errors."""

    j_over_kb: float
    g: float
    rss: float
    stderr_j: float
    stderr_g: float
    iterations: int
    converged: bool
    rss_trace: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.stderr_j < 0.0 or self.stderr_g < 0.0:
            raise ValueError("standard errors must be >= 0")


def load_series(
    path: str | Path,
    unit: ChiUnit = ChiUnit.EMU_PER_MOL,
    sample_id: str | None = None,
) -> SusceptibilitySeries:
    """Read a `T_kelvin,chi` CSV into a validated series.

    Strict dialect: UTF-8, exact header, `#` comments, one point per line.
    Bad rows are reported with their (1-based) data row index.
    """
    _, rows = _read_two_column_csv(path, "T_kelvin,chi")
    if len(rows) < MIN_POINTS:
        raise DataError(
            f"need at least {MIN_POINTS} points for a fit, got {len(rows)}"
        )
    points = []
    for i, (t, chi) in enumerate(rows, start=1):
        try:
            points.append(SusceptibilityPoint(t, chi, unit))
        except ValueError as exc:
            raise DataError(f"row {i}: {exc}") from exc
    return SusceptibilitySeries(
        points=tuple(points),
        sample_id=sample_id if sample_id is not None else Path(path).stem,
        unit=unit,
    )


def _bb_curve(t: np.ndarray, j: float, g: float) -> np.ndarray:
    """Model chi in emu/mol on a temperature grid, overflow-safe."""
    with np.errstate(over="ignore"):
        e = np.exp(-j / t)
    u = 1.0 / (3.0 + e)
    return 2.0 * CURIE_EMU_K_PER_MOL * g * g * u / t


def _bb_jacobian(t: np.ndarray, j: float, g: float) -> np.ndarray:
    """Columns (dchi/dJ, dchi/dg) of the model, overflow-safe.

    Uses e/(3+e)^2 = u - 3u^2 with u = 1/(3+e), which stays finite when
    the Boltzmann factor overflows to inf.
    """
    with np.errstate(over="ignore"):
        e = np.exp(-j / t)
    u = 1.0 / (3.0 + e)
    dj = 2.0 * CURIE_EMU_K_PER_MOL * g * g * (u - 3.0 * u * u) / (t * t)
    dg = 4.0 * CURIE_EMU_K_PER_MOL * g * u / t
    return np.column_stack([dj, dg])


def _default_init(t0: float, chi0: float) -> tuple[float, float]:
    """Invert the model at the lowest-T point assuming g = 2.

    chi = 2 g^2 K / (T (3 + q)) with q = e^(-J/T) gives J = -T ln q; the
    sign of the recovered J is the low-temperature slope information. Falls
    back to a mild AFM guess when the point is outside the invertible range.
    """
    g0 = 2.0
    if chi0 > 0.0:
        q = 2.0 * g0 * g0 * CURIE_EMU_K_PER_MOL / (t0 * chi0) - 3.0
        if q > 0.0:
            j0 = -t0 * math.log(q)
            if math.isfinite(j0):
                return max(-100.0, min(100.0, j0)), g0
    return -1.0, g0


def fit_bleaney_bowers(
    series: SusceptibilitySeries,
    init: tuple[float, float] | None = None,
    model_scale: float = 1.0,
) -> FitResult:
    """Minimize sum [chi_i - scale * chi_model(T_i; J, g)]^2.

    `model_scale` multiplies the model (beyond the series-unit conversion);
    passing k here while scaling all chi by k reproduces the same (J, g).
    n_moles is fixed at 1: the data are molar by contract.
    """
    if len(series.points) < MIN_POINTS:
        raise DataError(
            f"need at least {MIN_POINTS} points for a fit, got {len(series.points)}"
        )
    if not (math.isfinite(model_scale) and model_scale > 0.0):
        raise ValueError("model_scale must be finite and > 0")

    unit_scale = 1.0 if series.unit is ChiUnit.EMU_PER_MOL else SI_M3_PER_EMU
    total_scale = model_scale * unit_scale
    t = series.temperatures()
    # Canonical frame: divide out the total scale so residuals, gradient,
    # and damping behave identically for emu, SI, or rescaled data.
    y = series.chi_values() / total_scale

    j, g = init if init is not None else _default_init(float(t[0]), float(y[0]))

    def rss_at(jv: float, gv: float) -> float:
        r = y - _bb_curve(t, jv, gv)
        return float(r @ r)

    lam = _LAMBDA_INIT
    rss = rss_at(j, g)
    trace = [rss]
    iterations = 0
    converged = False
    n = len(t)

    while iterations < MAX_ITERATIONS:
        iterations += 1
        residual = y - _bb_curve(t, j, g)
        jac = _bb_jacobian(t, j, g)
        jtj = jac.T @ jac
        # Both model derivatives vanish at g = 0, so the gradient is zero
        # there without being a minimum; that must not read as convergence.
        if not np.all(np.diag(jtj) > 0.0):
            raise NumericError("degenerate fit")
        grad = jac.T @ residual
        if float(np.abs(grad).max()) < GRADIENT_TOL:
            converged = True
            break
        damp = np.diag(np.diag(jtj))
        try:
            step = np.linalg.solve(jtj + lam * damp, grad)
        except np.linalg.LinAlgError as exc:
            raise NumericError("degenerate fit") from exc
        if not np.all(np.isfinite(step)):
            raise NumericError("degenerate fit")
        j_new, g_new = j + float(step[0]), g + float(step[1])
        rss_new = rss_at(j_new, g_new)
        if math.isfinite(rss_new) and rss_new < rss:
            rel_step = float(np.abs(step).max()) / max(
                1e-30, abs(j_new), abs(g_new)
            )
            j, g, rss = j_new, g_new, rss_new
            trace.append(rss)
            lam = max(lam / 10.0, 1e-15)
            if rel_step < STEP_RTOL:
                converged = True
                break
        else:
            lam *= 10.0
            if lam > _LAMBDA_MAX:
                break

    # The model depends on g only through g^2.
    g = abs(g)

    jac = _bb_jacobian(t, j, g)
    jtj = jac.T @ jac
    if n > 2 and converged:
        try:
            cov = np.linalg.inv(jtj) * rss / (n - 2)
            stderr_j = math.sqrt(max(0.0, float(cov[0, 0])))
            stderr_g = math.sqrt(max(0.0, float(cov[1, 1])))
        except np.linalg.LinAlgError as exc:
            raise NumericError("degenerate fit") from exc
    else:
        stderr_j = stderr_g = 0.0

    return FitResult(
        j_over_kb=j,
        g=g,
        rss=rss * total_scale**2,
        stderr_j=stderr_j,
        stderr_g=stderr_g,
        iterations=iterations,
        converged=converged,
        rss_trace=tuple(r * total_scale**2 for r in trace),
    )


def coherence_series(series: SusceptibilitySeries, fit: FitResult) -> SweepTable:
    """Experimental vs fitted zero-field coherence, point by point.

    Points whose chi implies a correlation outside the physical band are
    flagged "unphysical" and carried as NaN rows instead of aborting.
    """
    if not fit.converged:
        raise DataError("fit did not converge; refusing to build the series")
    temps: list[float] = []
    c_exp: list[float] = []
    c_th: list[float] = []
    resid: list[float] = []
    flags: list[str] = []
    for point in series.points:
        t = point.temperature
        theory = coherence_longitudinal(
            DimerParams(fit.j_over_kb, fit.g, t, 0.0)
        ).value
        try:
            experimental = coherence_from_chi(point, fit.g).value
            flag = ""
        except DataError:
            experimental = math.nan
            flag = "unphysical"
        temps.append(t)
        c_exp.append(experimental)
        c_th.append(theory)
        resid.append(experimental - theory)
        flags.append(flag)
    return SweepTable(
        column_names=("T_kelvin", "C_experimental", "C_theoretical", "residual"),
        values=np.array([temps, c_exp, c_th, resid], dtype=float).T,
        annotations={"flag": tuple(flags)},
        metadata={
            "sample_id": series.sample_id,
            "j_over_kb": repr(fit.j_over_kb),
            "g": repr(fit.g),
            "rss": repr(fit.rss),
            "tool_version": TOOL_VERSION,
        },
    )


__all__ = [
    "FitResult",
    "SusceptibilitySeries",
    "coherence_series",
    "fit_bleaney_bowers",
    "load_series",
]
