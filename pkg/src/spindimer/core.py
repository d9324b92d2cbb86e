"""Exact operator algebra for a spin-1/2 dimer in a longitudinal field.

Everything here is brute force on purpose: Hamiltonians are assembled from
Kronecker products of single-spin operators, thermal states come from a full
eigendecomposition, and basis changes are explicit unitary conjugations.
The closed-form expressions elsewhere in the package are checked against
this layer, never the other way around.

Conventions: |0> is the spin-up S_z eigenstate, the two-spin product basis
is ordered {|00>, |01>, |10>, |11>}, and all energies are stored in kelvin
(divided by k_B) so matrix entries stay O(1).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import MU_B_KELVIN_PER_TESLA
from .errors import NumericError

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


class Basis(Enum):
    """Two-spin product eigenbasis a density matrix is expressed in."""

    SZ = "z"
    SX = "x"


# Single-spin operators (spin 1/2).
_ID2 = np.eye(2)
_SX1 = 0.5 * np.array([[0.0, 1.0], [1.0, 0.0]])
_SY1 = 0.5 * np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ1 = 0.5 * np.array([[1.0, 0.0], [0.0, -1.0]])

# S1.S2 is real in the product basis even though S_y is not.
_S1_DOT_S2 = (
    np.kron(_SX1, _SX1) + np.kron(_SY1, _SY1) + np.kron(_SZ1, _SZ1)
).real
_SZ_TOTAL = np.kron(_SZ1, _ID2) + np.kron(_ID2, _SZ1)

# Single-qubit rotation mapping S_z eigenstates onto S_x eigenstates,
# |+-> = (|0> +- |1>)/sqrt(2). Symmetric, orthogonal, self-inverse.
_R = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
_R2 = np.kron(_R, _R)

SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
TRIPLET_ZERO = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)


@dataclass(frozen=True)
class DimerParams:
    """Physical parameters of one computation.

    j_over_kb is the isotropic exchange constant divided by k_B, in kelvin;
    negative values are antiferromagnetic. b_field is the magnitude of the
    field applied along z, in tesla.
    """

    j_over_kb: float
    g: float
    temperature: float
    b_field: float = 0.0

    def __post_init__(self) -> None:
        for name in ("j_over_kb", "g", "temperature", "b_field"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.temperature <= 0.0:
            raise ValueError("temperature must be > 0 K")
        if self.g <= 0.0:
            raise ValueError("g must be > 0")

    @property
    def zeeman_kelvin(self) -> float:
        """Zeeman energy scale h = g mu_B B / k_B, in kelvin."""
        return self.g * MU_B_KELVIN_PER_TESLA * self.b_field


@dataclass(frozen=True)
class Hamiltonian4:
    """4x4 real symmetric two-spin Hamiltonian, entries in kelvin."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.entries, dtype=float)
        if h.shape != (4, 4):
            raise ValueError("Hamiltonian must be 4x4")
        scale = max(1.0, float(np.abs(h).max()))
        if np.abs(h - h.T).max() > HERMITICITY_ATOL * scale:
            raise ValueError("Hamiltonian must be symmetric")
        object.__setattr__(self, "entries", h)
        h.flags.writeable = False


@dataclass(frozen=True)
class DensityMatrix4:
    """Two-qubit state: Hermitian, unit trace, positive semidefinite,
    tagged with the product basis its entries refer to."""

    entries: np.ndarray
    basis: Basis

    def __post_init__(self) -> None:
        rho = np.asarray(self.entries, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        if np.abs(rho - rho.conj().T).max() > HERMITICITY_ATOL:
            raise ValueError("density matrix must be Hermitian")
        if abs(rho.trace() - 1.0) > TRACE_ATOL:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(rho).min() < EIGENVALUE_FLOOR:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "entries", rho)
        rho.flags.writeable = False


def build_hamiltonian(params: DimerParams) -> Hamiltonian4:
    """Assemble -J S1.S2 - g mu_B B (S1z + S2z) in the S_z product basis.

    The spectrum is {-J/4 - h, -J/4, -J/4 + h, 3J/4} in kelvin, with
    h = g mu_B B / k_B.
    """
    j = params.j_over_kb
    h = params.zeeman_kelvin
    return Hamiltonian4(-j * _S1_DOT_S2 - h * _SZ_TOTAL)


def eigensystem(h: Hamiltonian4) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (as columns).

    Signs are fixed deterministically: the largest-magnitude component of
    each eigenvector is made positive.
    """
    evals, evecs = np.linalg.eigh(h.entries)
    for k in range(4):
        lead = np.argmax(np.abs(evecs[:, k]))
        if evecs[lead, k] < 0.0:
            evecs[:, k] = -evecs[:, k]
    return evals, evecs


def gibbs_state(h: Hamiltonian4, temperature: float) -> DensityMatrix4:
    """Thermal state exp(-H/T)/Z via eigendecomposition.

    Energies are shifted by the ground energy before exponentiating, so the
    Boltzmann weights cannot overflow even at sub-microkelvin temperatures;
    anything non-finite that slips through raises NumericError.
    """
    if temperature <= 0.0:
        raise ValueError("temperature must be > 0 K")
    evals, evecs = np.linalg.eigh(h.entries)
    shifted = evals - evals.min()
    weights = np.exp(-shifted / temperature)
    if not np.all(np.isfinite(weights)):
        raise NumericError("temperature underflow")
    weights /= weights.sum()
    rho = (evecs * weights) @ evecs.T
    return DensityMatrix4(rho.astype(complex), Basis.SZ)


def rotate_to_sx(rho: DensityMatrix4) -> DensityMatrix4:
    """Re-express an S_z-basis state in the S_x product basis."""
    if rho.basis is not Basis.SZ:
        raise ValueError("rotate_to_sx expects a state in the Sz basis")
    return DensityMatrix4(_R2 @ rho.entries @ _R2, Basis.SX)


def rotate_to_sz(rho: DensityMatrix4) -> DensityMatrix4:
    """Inverse of rotate_to_sx (the rotation is an involution)."""
    if rho.basis is not Basis.SX:
        raise ValueError("rotate_to_sz expects a state in the Sx basis")
    return DensityMatrix4(_R2 @ rho.entries @ _R2, Basis.SZ)
