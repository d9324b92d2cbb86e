"""Closed-form thermodynamics and coherence of the spin-1/2 dimer.

Dimer susceptibility (Bleaney-Bowers), the susceptibility -> correlation ->
coherence pipeline at zero field, the field-dressed thermal density matrices
in both product bases, the partition function, the longitudinal and
transverse coherence expressions, and the singlet level-crossing field.

Every function here has an independent brute-force counterpart in `core`;
the test suite holds the two routes together at tight tolerances.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import (
    CURIE_EMU_K_PER_MOL,
    MU_B_KELVIN_PER_TESLA,
    OERSTED_PER_TESLA,
    SI_M3_PER_EMU,
)
from .core import (
    SINGLET,
    Basis,
    DensityMatrix4,
    DimerParams,
    build_hamiltonian,
    eigensystem,
)
from .errors import DataError, NumericError
from .quantifiers import CoherenceValue

# Noisy experimental points may fall slightly outside the physical
# correlation range; anything beyond this band is a unit or normalization
# mistake, not noise.
CORRELATION_NOISE_TOL = 0.02

_BISECTION_B_MAX = 100.0
_BISECTION_WIDTH = 1e-12
_CROSS_CHECK_ATOL = 1e-9


class ChiUnit(Enum):
    """Units a susceptibility value is reported in."""

    EMU_PER_MOL = "emu_per_mol"
    SI_M3_PER_MOL = "si_m3_per_mol"


@dataclass(frozen=True)
class SusceptibilityPoint:
    """One (temperature, susceptibility) sample."""

    temperature: float
    chi: float
    unit: ChiUnit = ChiUnit.EMU_PER_MOL

    def __post_init__(self) -> None:
        if not (np.isfinite(self.temperature) and np.isfinite(self.chi)):
            raise ValueError("susceptibility point must be finite")
        if self.temperature <= 0.0:
            raise ValueError("temperature must be > 0 K")
        if self.chi < 0.0:
            raise ValueError("susceptibility must be >= 0 for this model")

    def chi_emu(self) -> float:
        """Susceptibility in emu/mol regardless of the stored unit."""
        if self.unit is ChiUnit.EMU_PER_MOL:
            return self.chi
        return self.chi / SI_M3_PER_EMU


@dataclass(frozen=True)
class CorrelationValue:
    """Dimensionless spin-spin correlation extracted from susceptibility.

    Physical states require c in [-1, 1/3]; a small band beyond that is
    tolerated for noisy data (the zero-field state builder still rejects it).
    """

    c: float

    def __post_init__(self) -> None:
        lo = -1.0 - CORRELATION_NOISE_TOL
        hi = 1.0 / 3.0 + CORRELATION_NOISE_TOL
        if not lo <= self.c <= hi:
            raise ValueError(f"correlation {self.c} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class CriticalField:
    """Singlet / polarized-triplet level-crossing field.

    `tesla` is the closed-form value |J| k_B / (g mu_B); `tesla_bisection`
    comes from bisecting the brute-force ground-state identity. The two are
    cross-checked at construction time by `critical_field`.
    """

    tesla: float
    oersted: float
    tesla_bisection: float


def bleaney_bowers_chi(
    j_over_kb: float,
    g: float,
    temperature: float,
    n_moles: float = 1.0,
    unit: ChiUnit = ChiUnit.EMU_PER_MOL,
) -> SusceptibilityPoint:
    """Dimer susceptibility 2 N (g mu_B)^2 / (k_B T) / (3 + exp(-J/k_B T)).

    N = n_moles * N_A dimers; with the default n_moles = 1 the result is
    molar. The requested unit only rescales the stored value.
    """
    if temperature <= 0.0:
        raise ValueError("temperature must be > 0 K")
    chi_emu = (
        n_moles
        * 2.0
        * g**2
        * CURIE_EMU_K_PER_MOL
        / (temperature * (3.0 + math.exp(-j_over_kb / temperature)))
    )
    chi = chi_emu if unit is ChiUnit.EMU_PER_MOL else chi_emu * SI_M3_PER_EMU
    return SusceptibilityPoint(temperature, chi, unit)


def correlation_from_chi(
    point: SusceptibilityPoint, g: float, n_moles: float = 1.0
) -> CorrelationValue:
    """Spin-spin correlation c = 2 k_B T chi_molar / (N_A g^2 mu_B^2) - 1.

    No clamping: values outside the physical range by more than the noise
    band raise "unphysical data point".
    """
    chi_molar = point.chi_emu() / n_moles
    c = 2.0 * point.temperature * chi_molar / (g**2 * CURIE_EMU_K_PER_MOL) - 1.0
    if not (-1.0 - CORRELATION_NOISE_TOL <= c <= 1.0 / 3.0 + CORRELATION_NOISE_TOL):
        raise DataError(f"unphysical data point: correlation {c:.6g}")
    return CorrelationValue(c)


def rho_zero_field(c: CorrelationValue) -> DensityMatrix4:
    """Zero-field thermal state of the dimer, parametrized by c.

    Diagonal (1+c, 1-c, 1-c, 1+c)/4 with +-c/2 mixing the central block;
    positivity requires c in [-1, 1/3].
    """
    cv = c.c
    if not -1.0 - 1e-12 <= cv <= 1.0 / 3.0 + 1e-12:
        raise DataError(f"nonpositive state: correlation {cv:.6g}")
    rho = 0.25 * np.array(
        [
            [1.0 + cv, 0.0, 0.0, 0.0],
            [0.0, 1.0 - cv, 2.0 * cv, 0.0],
            [0.0, 2.0 * cv, 1.0 - cv, 0.0],
            [0.0, 0.0, 0.0, 1.0 + cv],
        ]
    )
    return DensityMatrix4(rho.astype(complex), Basis.SZ)


def coherence_from_chi(
    point: SusceptibilityPoint, g: float, n_moles: float = 1.0
) -> CoherenceValue:
    """l1 coherence |c| of the zero-field state, straight from susceptibility."""
    c = correlation_from_chi(point, g, n_moles)
    return CoherenceValue(abs(c.c), Basis.SZ)


def _x_and_bh(params: DimerParams) -> tuple[float, float]:
    """Dimensionless exponents x = J/(4T) and beta*h of the closed forms."""
    return (
        params.j_over_kb / (4.0 * params.temperature),
        params.zeeman_kelvin / params.temperature,
    )


def partition_function(params: DimerParams) -> float:
    """Z = e^x + e^(-3x) + 2 e^x cosh(beta h), with x = J/(4T)."""
    x, bh = _x_and_bh(params)
    # math.exp raises once an exponent passes ~709.8, i.e. k_B T far below
    # the level spacing; report that as the same underflow condition.
    try:
        z = math.exp(x) + math.exp(-3.0 * x) + 2.0 * math.exp(x) * math.cosh(bh)
    except OverflowError as exc:
        raise NumericError("temperature underflow") from exc
    if not math.isfinite(z):
        raise NumericError("temperature underflow")
    return z


def coherence_longitudinal(params: DimerParams) -> CoherenceValue:
    """Thermal l1 coherence in the S_z basis under a longitudinal field:
    |(1 - e^(-4x)) / (1 + e^(-4x) + 2 cosh(beta h))|."""
    x, bh = _x_and_bh(params)
    try:
        e4 = math.exp(-4.0 * x)
        value = abs((1.0 - e4) / (1.0 + e4 + 2.0 * math.cosh(bh)))
    except OverflowError as exc:
        raise NumericError("temperature underflow") from exc
    if not math.isfinite(value):
        raise NumericError("temperature underflow")
    return CoherenceValue(value, Basis.SZ)


def coherence_transverse(params: DimerParams) -> CoherenceValue:
    """Thermal l1 coherence in the S_x basis under a field along z:
    (e^x/Z) (|cosh(bh) - 1| + 4|sinh(bh)| + |cosh(bh) - e^(-4x)|)."""
    x, bh = _x_and_bh(params)
    z = partition_function(params)
    try:
        e4 = math.exp(-4.0 * x)
        value = (
            math.exp(x)
            / z
            * (
                abs(math.cosh(bh) - 1.0)
                + 4.0 * abs(math.sinh(bh))
                + abs(math.cosh(bh) - e4)
            )
        )
    except OverflowError as exc:
        raise NumericError("temperature underflow") from exc
    if not math.isfinite(value):
        raise NumericError("temperature underflow")
    return CoherenceValue(value, Basis.SX)


def rho_longitudinal(params: DimerParams) -> DensityMatrix4:
    """Field-dressed thermal state in the S_z product basis (X-shaped)."""
    x, bh = _x_and_bh(params)
    z = partition_function(params)
    try:
        e4 = math.exp(-4.0 * x)
        pref = math.exp(x) / (2.0 * z)
        rho = pref * np.array(
            [
                [2.0 * math.exp(bh), 0.0, 0.0, 0.0],
                [0.0, 1.0 + e4, 1.0 - e4, 0.0],
                [0.0, 1.0 - e4, 1.0 + e4, 0.0],
                [0.0, 0.0, 0.0, 2.0 * math.exp(-bh)],
            ]
        )
    except OverflowError as exc:
        raise NumericError("temperature underflow") from exc
    if not np.all(np.isfinite(rho)):
        raise NumericError("temperature underflow")
    return DensityMatrix4(rho.astype(complex), Basis.SZ)


def rho_transverse(params: DimerParams) -> DensityMatrix4:
    """Field-dressed thermal state re-expressed in the S_x product basis."""
    x, bh = _x_and_bh(params)
    z = partition_function(params)
    try:
        e4 = math.exp(-4.0 * x)
        ch, sh = math.cosh(bh), math.sinh(bh)
        pref = math.exp(x) / (2.0 * z)
        rho = pref * np.array(
            [
                [ch + 1.0, sh, sh, ch - 1.0],
                [sh, ch + e4, ch - e4, sh],
                [sh, ch - e4, ch + e4, sh],
                [ch - 1.0, sh, sh, ch + 1.0],
            ]
        )
    except OverflowError as exc:
        raise NumericError("temperature underflow") from exc
    if not np.all(np.isfinite(rho)):
        raise NumericError("temperature underflow")
    return DensityMatrix4(rho.astype(complex), Basis.SX)


def _ground_is_singlet(j_over_kb: float, g: float, b_tesla: float) -> bool:
    """Brute-force ground-state identity used by the bisection route."""
    params = DimerParams(j_over_kb, g, temperature=1.0, b_field=b_tesla)
    _, evecs = eigensystem(build_hamiltonian(params))
    ground = evecs[:, 0]
    return float(np.dot(SINGLET, ground) ** 2) > 0.5


def critical_field(j_over_kb: float, g: float) -> CriticalField:
    """Field at which the singlet ground state crosses the polarized |00>.

    Computed twice: closed form |J| k_B / (g mu_B), and bisection on the
    brute-force ground-state identity over B in [0, 100 T]. Disagreement
    beyond 1e-9 T raises NumericError.
    """
    if j_over_kb >= 0.0:
        raise DataError("no level crossing: coupling must be antiferromagnetic (J < 0)")
    b_closed = -j_over_kb / (g * MU_B_KELVIN_PER_TESLA)

    lo, hi = 0.0, _BISECTION_B_MAX
    if not _ground_is_singlet(j_over_kb, g, lo):
        raise NumericError("bisection bracket failed at B = 0")
    if _ground_is_singlet(j_over_kb, g, hi):
        raise NumericError(f"no ground-state crossing below {_BISECTION_B_MAX} T")
    while hi - lo > _BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if _ground_is_singlet(j_over_kb, g, mid):
            lo = mid
        else:
            hi = mid
    b_bisect = 0.5 * (lo + hi)

    if abs(b_bisect - b_closed) > _CROSS_CHECK_ATOL:
        raise NumericError(
            f"critical-field routes disagree: closed form {b_closed!r} T, "
            f"bisection {b_bisect!r} T"
        )
    return CriticalField(b_closed, b_closed * OERSTED_PER_TESLA, b_bisect)
