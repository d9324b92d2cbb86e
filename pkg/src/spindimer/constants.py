"""Pinned physical constants and unit conversion factors.

All SI defining constants use their exact 2019 values; the Bohr magneton is
the CODATA 2018 recommended value. Every other number in the package derives
from these, so results are reproducible bit for bit.
"""

import math

TOOL_VERSION = "0.1.0"

BOLTZMANN_J_PER_K = 1.380649e-23          # k_B, exact
BOHR_MAGNETON_J_PER_T = 9.2740100783e-24  # mu_B, CODATA 2018
AVOGADRO_PER_MOL = 6.02214076e23          # N_A, exact

# Zeeman energy per unit g-factor and unit field, expressed in kelvin:
# mu_B * 1 T / k_B.
MU_B_KELVIN_PER_TESLA = BOHR_MAGNETON_J_PER_T / BOLTZMANN_J_PER_K

# N_A * mu_B^2 / k_B in CGS molar units (emu K / mol); the factor 10 converts
# J/T -> erg/G (1e3) and J -> erg (1e7). This is the Curie-constant scale of
# a mole of g = 1 spins.
CURIE_EMU_K_PER_MOL = (
    AVOGADRO_PER_MOL * BOHR_MAGNETON_J_PER_T**2 / (10.0 * BOLTZMANN_J_PER_K)
)

# Field and susceptibility unit conversions (exact).
OERSTED_PER_TESLA = 1.0e4
# 1 emu/mol = 4*pi*1e-6 m^3/mol.
SI_M3_PER_EMU = 4.0 * math.pi * 1.0e-6


def constants_summary() -> str:
    """One-line-per-constant text block, printed by the CLI version flag."""
    return "\n".join(
        [
            f"k_B  = {BOLTZMANN_J_PER_K!r} J/K",
            f"mu_B = {BOHR_MAGNETON_J_PER_T!r} J/T",
            f"N_A  = {AVOGADRO_PER_MOL!r} 1/mol",
            f"mu_B/k_B = {MU_B_KELVIN_PER_TESLA!r} K/T",
            f"N_A*mu_B^2/k_B = {CURIE_EMU_K_PER_MOL!r} emu K/mol",
            f"1 T = {OERSTED_PER_TESLA!r} Oe",
            f"1 emu/mol = {SI_M3_PER_EMU!r} m^3/mol",
        ]
    )
