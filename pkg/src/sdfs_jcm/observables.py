"""Measured quantities of the atom-cavity evolution.

Atomic inversion, von Neumann entropy of the reduced field state, the
time-dependent photon-number distribution, the Pegg-Barnett phase
distribution, the Husimi Q function, and the collapse-revival time
estimate. Everything is derived from the coefficient arrays in
`dynamics`; the reduced field state is rank <= 2, which all formulas
here exploit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dynamics import EvolvedState, FieldDensity, field_density
from .fock import inner_product
from .sdfs import SdfsParams

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GramData:
    """Inner products of the field component vectors: <C|C>, <S|S>, <C|S>."""

    cc: float
    ss: float
    cs: complex


@dataclass(frozen=True)
class EntropyPoint:
    """Eigenvalues and von Neumann entropy (nats) of the rank-2 field state.

    theta is the hyperbolic mixing angle sinh^-1((cc - ss)/(2|cs|)); it is
    +-inf when the components are orthogonal.
    """

    lambda_plus: float
    lambda_minus: float
    entropy: float
    theta: float


@dataclass(frozen=True, eq=False)
class PhaseDistribution:
    """Phase density P(eta) per radian on angles in [-pi, pi)."""

    etas: np.ndarray
    values: np.ndarray
    eta0: float = 0.0


@dataclass(frozen=True, eq=False)
class QGrid:
    """Husimi Q values on a rectangular grid of alpha = x + iy.

    values[iy, ix] is Q at (x_axis[ix], y_axis[iy]); density per unit
    area of the complex plane.
    """

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray


def atomic_inversion(st: EvolvedState) -> float:
    """W(t) = sum_n (|A_n|^2 - |B_n|^2), in [-1, 1]."""
    return float(np.sum(np.abs(st.a_coeffs) ** 2 - np.abs(st.b_coeffs) ** 2))


def gram(fd: FieldDensity) -> GramData:
    """The three inner products that determine the rank-2 field spectrum."""
    cc = fd.c_vec.norm_sq()
    ss = fd.s_vec.norm_sq()
    cs = inner_product(fd.c_vec, fd.s_vec)
    return GramData(cc, ss, cs)


def field_entropy(g: GramData, cs_floor: float = 1e-14) -> EntropyPoint:
    """Eigenvalues lambda+- and entropy -sum lambda ln lambda of rho_f.

    For |<C|S>| above ``cs_floor`` the eigenvalues come from the
    hyperbolic-angle split lambda+- = cc + e^{-+theta}|cs| (evaluated in
    the cancellation-free form (cc+ss)/2 +- hypot((cc-ss)/2, |cs|));
    below it the indeterminate theta is bypassed and the eigenvalues are
    just {max, min}(cc, ss). Eigenvalues are clamped to [0, 1] only
    within 1e-12 slack; anything worse is rejected.
    """
    cc, ss, acs = g.cc, g.ss, abs(g.cs)
    if not (-1e-12 <= cc <= 1.0 + 1e-12 and -1e-12 <= ss <= 1.0 + 1e-12):
        raise ValueError(f"cc={cc}, ss={ss} outside [0, 1]")
    if abs(cc + ss - 1.0) > 1e-10:
        raise ValueError(f"trace cc + ss = {cc + ss} deviates from 1 beyond 1e-10")
    if acs**2 > cc * ss + 1e-12:
        raise ValueError("|<C|S>|^2 exceeds <C|C><S|S> beyond 1e-12")

    half_gap = 0.5 * (cc - ss)
    if acs > cs_floor:
        theta = math.asinh(half_gap / acs)
        split = math.hypot(half_gap, acs)
    else:
        theta = math.inf if cc > ss else (-math.inf if cc < ss else 0.0)
        split = abs(half_gap)
    lam_p = 0.5 * (cc + ss) + split
    lam_m = 0.5 * (cc + ss) - split
    if lam_m < -1e-12 or lam_p > 1.0 + 1e-12:
        raise ValueError(f"eigenvalues ({lam_p}, {lam_m}) outside [0, 1] beyond slack")
    lam_p = min(max(lam_p, 0.0), 1.0)
    lam_m = min(max(lam_m, 0.0), 1.0)
    entropy = 0.0
    for lam in (lam_p, lam_m):
        if lam > 0.0:
            entropy -= lam * math.log(lam)
    return EntropyPoint(lam_p, lam_m, entropy, theta)


def photon_number_dist_t(fd: FieldDensity, n: int) -> float:
    """P(n, t) = <n|rho_f|n> = |C_n|^2 + |S_n|^2."""
    if not 0 <= n < fd.c_vec.dim:
        raise IndexError(f"photon number {n} outside [0, {fd.c_vec.dim - 1}]")
    return float(abs(fd.c_vec.amps[n]) ** 2 + abs(fd.s_vec.amps[n]) ** 2)


def photon_number_distribution(fd: FieldDensity) -> np.ndarray:
    """All P(n, t) at once."""
    return np.abs(fd.c_vec.amps) ** 2 + np.abs(fd.s_vec.amps) ** 2


def default_etas(n_points: int = 512) -> np.ndarray:
    """Uniform phase grid on [-pi, pi)."""
    if n_points < 1:
        raise ValueError("need at least one phase point")
    return np.linspace(-math.pi, math.pi, n_points, endpoint=False)


def phase_distribution(st: EvolvedState, etas: np.ndarray) -> PhaseDistribution:
    """Pegg-Barnett phase density P(eta, t) with reference angle eta0 = 0.

    The double sum (1/2pi) sum_{l,j} rho_lj e^{i(j-l)eta} over the full
    truncated space factorizes through the rank-2 structure into
    (1/2pi) (|sum_n C_n e^{-in eta}|^2 + |sum_n S_n e^{-in eta}|^2),
    which is evaluated exactly (no truncation beyond the state itself)
    and is manifestly real and nonnegative.
    """
    etas = np.asarray(etas, dtype=float)
    if etas.size and (etas.min() < -math.pi - 1e-12 or etas.max() >= math.pi + 1e-12):
        raise ValueError("phase angles must lie in [-pi, pi)")
    fd = field_density(st)
    ns = np.arange(fd.c_vec.dim)
    kernel = np.exp(-1j * np.outer(etas, ns))
    vals = (
        np.abs(kernel @ fd.c_vec.amps) ** 2 + np.abs(kernel @ fd.s_vec.amps) ** 2
    ) / _TWO_PI
    return PhaseDistribution(etas, vals)


def _coherent_bras(alphas: np.ndarray, dim: int) -> np.ndarray:
    """Rows <alpha|n> = e^{-|alpha|^2/2} (alpha*)^n / sqrt(n!), log-domain."""
    alphas = np.asarray(alphas, dtype=complex).ravel()
    mags = np.abs(alphas)
    ns = np.arange(dim)
    with np.errstate(divide="ignore", invalid="ignore"):
        la = np.log(mags)
        logmag = (
            -0.5 * mags[:, None] ** 2
            + ns[None, :] * la[:, None]
            - 0.5 * gammaln(ns + 1.0)[None, :]
        )
    logmag[:, 0] = -0.5 * mags**2  # fix 0 * log(0) at the origin
    phase = np.exp(-1j * ns[None, :] * np.angle(alphas)[:, None])
    return np.exp(logmag) * phase


def q_function(st: EvolvedState, alpha: complex) -> float:
    """Husimi Q(alpha) = <alpha|rho_f|alpha>/pi = (|<alpha|C>|^2 + |<alpha|S>|^2)/pi.

    The rank-2 contraction is algebraically identical to the full
    double sum over rho_nm but costs O(n_max) per point.
    """
    fd = field_density(st)
    row = _coherent_bras(np.array([alpha]), fd.c_vec.dim)[0]
    return float(
        (abs(row @ fd.c_vec.amps) ** 2 + abs(row @ fd.s_vec.amps) ** 2) / math.pi
    )


def q_function_grid(
    st: EvolvedState, x_axis: np.ndarray, y_axis: np.ndarray
) -> QGrid:
    """Husimi Q on the rectangular grid alpha = x + iy."""
    x_axis = np.asarray(x_axis, dtype=float)
    y_axis = np.asarray(y_axis, dtype=float)
    fd = field_density(st)
    alphas = (x_axis[None, :] + 1j * y_axis[:, None]).ravel()
    rows = _coherent_bras(alphas, fd.c_vec.dim)
    vals = (
        np.abs(rows @ fd.c_vec.amps) ** 2 + np.abs(rows @ fd.s_vec.amps) ** 2
    ) / math.pi
    return QGrid(x_axis, y_axis, vals.reshape(y_axis.size, x_axis.size))


def revival_time(p: SdfsParams) -> float:
    """Heuristic rephasing time 2 pi sqrt(|alpha0|^2 + sinh^2 r) in scaled time.

    The estimate comes from neighbouring Rabi terms getting back in
    phase near the mean photon number; it ignores the seed Fock number
    m. A field with alpha0 = 0 and r = 0 has no collapse-revival
    structure, so that case is rejected.
    """
    if p.alpha0 == 0 and p.r == 0.0:
        raise ValueError("no collapse-revival structure without displacement or squeezing")
    return _TWO_PI * math.sqrt(abs(p.alpha0) ** 2 + math.sinh(p.r) ** 2)
