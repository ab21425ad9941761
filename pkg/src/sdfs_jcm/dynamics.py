"""Exact Jaynes-Cummings evolution in the interaction picture.

A two-level atom starting in its excited state couples to one cavity
mode under the rotating-wave approximation. With initial field
amplitudes q_n the state at scaled time lambda*t is

    |psi(t)> = sum_n A_n(t) |n, e> + B_n(t) |n+1, g>,

    A_n = q_n [cos(lt nu_n) - i (Delta/2lambda) sin(lt nu_n)/nu_n],
    B_n = -i q_n sqrt(n+1) sin(lt nu_n)/nu_n,
    nu_n = sqrt(Delta^2/(4 lambda^2) + n + 1).

Time is always the scaled variable lambda*t; the detuning enters only
through Delta/lambda. Probability conservation |A_n|^2 + |B_n|^2 = |q_n|^2
holds identically and is asserted by the tests, never enforced at
runtime, so formula errors surface instead of being papered over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockVector


@dataclass(frozen=True)
class JcmConfig:
    """Coupling/detuning/truncation of one atom-cavity run."""

    n_max: int
    coupling: float = 1.0
    detuning_ratio: float = 0.0  # Delta / lambda

    def __post_init__(self):
        if self.coupling <= 0:
            raise ValueError("coupling must be > 0")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")


@dataclass(frozen=True, eq=False)
class EvolvedState:
    """Coefficient arrays A_n, B_n (n = 0..n_max) at one scaled time."""

    t_scaled: float
    a_coeffs: np.ndarray
    b_coeffs: np.ndarray

    def __post_init__(self):
        a = np.array(self.a_coeffs, dtype=complex)
        b = np.array(self.b_coeffs, dtype=complex)
        if a.shape != b.shape or a.ndim != 1 or a.size < 1:
            raise ValueError("a_coeffs and b_coeffs must be equal-length 1-D arrays")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a_coeffs", a)
        object.__setattr__(self, "b_coeffs", b)

    @property
    def n_max(self) -> int:
        return self.a_coeffs.size - 1


@dataclass(frozen=True, eq=False)
class FieldDensity:
    """Component vectors of the rank-2 reduced field state
    rho_f = |C><C| + |S><S|: C_n = A_n and S_{n+1} = B_n."""

    c_vec: FockVector
    s_vec: FockVector


def rabi_freq(n: int, cfg: JcmConfig) -> float:
    """Generalized Rabi frequency sqrt(Delta^2/(4 lambda^2) + n + 1)."""
    if n < 0:
        raise ValueError("photon index n must be >= 0")
    return math.sqrt(0.25 * cfg.detuning_ratio**2 + n + 1.0)


def evolve(q: FockVector, t_scaled: float, cfg: JcmConfig) -> EvolvedState:
    """Closed-form coefficients A_n(t), B_n(t) for initial field amplitudes q."""
    if q.dim != cfg.n_max + 1:
        raise ValueError(f"q has dim {q.dim}, expected n_max + 1 = {cfg.n_max + 1}")
    deficit = abs(q.norm_sq() - 1.0)
    if deficit > 1e-8:
        raise ValueError(f"initial field amplitudes not normalized (|norm^2 - 1| = {deficit:.3e})")
    ns = np.arange(q.dim)
    nu = np.sqrt(0.25 * cfg.detuning_ratio**2 + ns + 1.0)
    ph = t_scaled * nu
    sin_over_nu = np.sin(ph) / nu
    a = q.amps * (np.cos(ph) - 0.5j * cfg.detuning_ratio * sin_over_nu)
    b = -1j * q.amps * np.sqrt(ns + 1.0) * sin_over_nu
    return EvolvedState(float(t_scaled), a, b)


def conservation_residual(st: EvolvedState) -> float:
    """|sum_n (|A_n|^2 + |B_n|^2) - 1|, zero for the exact solution."""
    total = np.sum(np.abs(st.a_coeffs) ** 2 + np.abs(st.b_coeffs) ** 2)
    return float(abs(total - 1.0))


def field_density(st: EvolvedState) -> FieldDensity:
    """|C(t)> and |S(t)> on a basis extended by one photon (dim n_max + 2)."""
    dim = st.n_max + 2
    c = np.zeros(dim, dtype=complex)
    s = np.zeros(dim, dtype=complex)
    c[:-1] = st.a_coeffs
    s[1:] = st.b_coeffs
    return FieldDensity(FockVector(c), FockVector(s))


def density_element(st: EvolvedState, l: int, j: int) -> complex:
    """Reduced field matrix element rho_lj = A_l A_j* + B_{l-1} B_{j-1}*.

    Valid for 0 <= l, j <= n_max + 1, with A_{n_max+1} and B_{-1} equal
    to zero.
    """
    hi = st.n_max + 1
    if not (0 <= l <= hi and 0 <= j <= hi):
        raise IndexError(f"indices ({l}, {j}) outside [0, {hi}]")

    def _a(i: int) -> complex:
        return complex(st.a_coeffs[i]) if i <= st.n_max else 0j

    def _b(i: int) -> complex:
        return complex(st.b_coeffs[i]) if i >= 0 else 0j

    return _a(l) * np.conj(_a(j)) + _b(l - 1) * np.conj(_b(j - 1))
