"""Truncated Fock-space linear algebra.

Everything downstream represents the cavity field on the finite photon
basis |0>, ..., |dim-1>. This module provides the ladder-operator
matrices, a dense matrix-exponential apply, inner products, and the
direct operator construction of squeezed displaced Fock states

    D(alpha0) S(z) |m>,   D(alpha0) = exp(alpha0 a+ - alpha0* a),
                          S(z)      = exp((z*/2) a^2 - (z/2) a+^2),

obtained by exponentiating the generators on the truncated space. The
operator construction is deliberately independent of the closed-form
amplitudes in `sdfs`; it is the reference the analytic formulas are
validated against.

All values are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

if TYPE_CHECKING:  # pragma: no cover
    from .sdfs import SdfsParams

# Dense matrices only; the photon-number regimes treated here (<n> up to
# a few tens) never need more than this, and dense beats sparse machinery
# at these sizes.
DIM_CAP = 512


@dataclass(frozen=True, eq=False)
class FockVector:
    """Complex amplitudes over the truncated number basis.

    ``amps[n]`` is the amplitude on |n>. A vector constructed with
    ``normalized=True`` is checked to satisfy |sum |amps|^2 - 1| <= 1e-10.
    """

    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("FockVector needs a nonempty 1-D amplitude array")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)
        if self.normalized and abs(self.norm_sq() - 1.0) > 1e-10:
            raise ValueError(
                "vector tagged normalized violates |norm^2 - 1| <= 1e-10"
            )

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def _check_dim(dim: int) -> int:
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise ValueError("dimension must be a positive integer")
    if dim > DIM_CAP:
        raise ValueError(f"dimension {dim} exceeds the dense cap {DIM_CAP}")
    return int(dim)


def basis_state(dim: int, n: int) -> FockVector:
    """Number state |n> on a dim-dimensional truncation."""
    dim = _check_dim(dim)
    if not 0 <= n < dim:
        raise ValueError(f"basis index {n} outside [0, {dim - 1}]")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps, normalized=True)


def annihilation_matrix(dim: int) -> np.ndarray:
    """Truncated annihilation operator: entry (n-1, n) = sqrt(n)."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def creation_matrix(dim: int) -> np.ndarray:
    """Truncated creation operator, the conjugate transpose of `annihilation_matrix`."""
    return annihilation_matrix(dim).conj().T


def displacement_generator(alpha: complex, dim: int) -> np.ndarray:
    """Anti-Hermitian generator alpha a+ - alpha* a of the displacement D(alpha)."""
    a = annihilation_matrix(dim)
    return alpha * a.conj().T - np.conjugate(alpha) * a


def squeeze_generator(r: float, phi: float, dim: int) -> np.ndarray:
    """Anti-Hermitian generator (z*/2) a^2 - (z/2) a+^2 of S(z), z = r e^{i phi}."""
    z = r * cmath.exp(1j * phi)
    a = annihilation_matrix(dim)
    a2 = a @ a
    return 0.5 * np.conjugate(z) * a2 - 0.5 * z * a2.conj().T


def matrix_exp_apply(mat: np.ndarray, v: FockVector) -> FockVector:
    """Apply exp(mat) to v with a dense scaling-and-squaring exponential.

    Accurate to ~1e-10 relative for the operator norms arising here
    (displacements |alpha| <= 6, squeezes r <= 2, dim <= 256).
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if mat.shape[0] != v.dim:
        raise ValueError(f"matrix dim {mat.shape[0]} != vector dim {v.dim}")
    _check_dim(mat.shape[0])
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix has non-finite entries")
    return FockVector(expm(mat) @ v.amps)


def inner_product(u: FockVector, v: FockVector) -> complex:
    """<u|v> = sum_n conj(u_n) v_n."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} != {v.dim}")
    return complex(np.vdot(u.amps, v.amps))


def coherent_state(alpha: complex, dim: int) -> FockVector:
    """Coherent-state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!).

    Magnitudes are assembled in log-domain so large |alpha| and large n
    stay representable.
    """
    dim = _check_dim(dim)
    alpha = complex(alpha)
    if alpha == 0:
        return basis_state(dim, 0)
    ns = np.arange(dim)
    logmag = (
        -0.5 * abs(alpha) ** 2
        + ns * math.log(abs(alpha))
        - 0.5 * gammaln(ns + 1.0)
    )
    phase = np.exp(1j * ns * cmath.phase(alpha))
    return FockVector(np.exp(logmag) * phase)


def build_sdfs_oracle(p: "SdfsParams", dim: int) -> FockVector:
    """Squeezed displaced Fock state built directly as D(alpha0) S(z) |m>.

    Two successive matrix exponentials: the squeeze generator applied to
    |m>, then the displacement generator. The caller must choose ``dim``
    large enough that the target state's tail mass beyond the truncation
    is negligible; doubling the truncation returned by
    ``sdfs.choose_truncation`` keeps boundary contamination below 1e-12
    for r <= 2.
    """
    dim = _check_dim(dim)
    if p.m >= dim:
        raise ValueError(f"seed Fock number {p.m} does not fit in dim {dim}")
    v = basis_state(dim, p.m)
    v = matrix_exp_apply(squeeze_generator(p.r, p.phi, dim), v)
    v = matrix_exp_apply(displacement_generator(p.alpha0, dim), v)
    norm_sq = v.norm_sq()
    return FockVector(v.amps, normalized=abs(norm_sq - 1.0) <= 1e-10)
