import math

import numpy as np
import pytest
from scipy.special import gammaln

from sdfs_jcm.fock import build_sdfs_oracle, inner_product
from sdfs_jcm.sdfs import (
    SdfsParams,
    choose_truncation,
    mean_photon_number,
    photon_distribution,
    sdfs_amplitude,
    sdfs_state,
)

SINH1_SQ = math.sinh(1.0) ** 2


def test_params_validation():
    with pytest.raises(ValueError):
        SdfsParams(r=-0.5)
    with pytest.raises(ValueError):
        SdfsParams(m=-1)
    p = SdfsParams(phi=7.0)
    assert 0.0 <= p.phi < 2 * math.pi
    assert p.mu**2 - abs(p.nu) ** 2 == pytest.approx(1.0, abs=1e-14)


def test_coherent_amplitude_value():
    amp = sdfs_amplitude(SdfsParams(alpha0=2.0), 3)
    assert amp == pytest.approx(math.exp(-2.0) * 8.0 / math.sqrt(6.0), abs=1e-14)


def test_squeezed_vacuum_odd_amplitude_vanishes():
    assert sdfs_amplitude(SdfsParams(r=1.0), 1) == 0


def test_amplitude_matches_oracle():
    p = SdfsParams(alpha0=3.0, r=1.0, phi=0.0, m=1)
    oracle = build_sdfs_oracle(p, 128)
    assert sdfs_amplitude(p, 5) == pytest.approx(complex(oracle.amps[5]), abs=1e-8)


def test_parity_of_undisplaced_states():
    for r in (0.4, 1.0):
        for m in (0, 1, 2):
            p = SdfsParams(r=r, m=m)
            amps = sdfs_state(p, choose_truncation(p, 1e-12)).amps
            ns = np.arange(amps.size)
            np.testing.assert_allclose(amps[(ns - m) % 2 == 1], 0, atol=1e-15)


def test_state_vacuum():
    np.testing.assert_allclose(sdfs_state(SdfsParams(), 4).amps, [1, 0, 0, 0, 0])


def test_state_matches_oracle_componentwise():
    p = SdfsParams(alpha0=0.5, r=1.0, phi=0.0, m=0)
    n_max = choose_truncation(p, 1e-12)
    state = sdfs_state(p, n_max)
    oracle = build_sdfs_oracle(p, 2 * (n_max + 1))
    np.testing.assert_allclose(state.amps, oracle.amps[: n_max + 1], atol=1e-8)


def test_state_normalization():
    for p in (
        SdfsParams(alpha0=3.0, r=1.0, m=2),
        SdfsParams(alpha0=1 + 1j, r=0.3, phi=1.0, m=1),
        SdfsParams(alpha0=0.5, r=0.0, m=0),
    ):
        state = sdfs_state(p, choose_truncation(p, 1e-12))
        assert state.norm_sq() == pytest.approx(1.0, abs=1e-10)
        assert state.normalized


def test_under_truncation_is_an_error():
    with pytest.raises(ValueError, match="truncation"):
        sdfs_state(SdfsParams(alpha0=3.0), 4)


def test_photon_distribution_poisson():
    p = SdfsParams(alpha0=3.0)
    dist = photon_distribution(p, choose_truncation(p, 1e-12))
    assert dist.probs[9] == pytest.approx(math.exp(-9.0) * 9.0**9 / math.factorial(9), abs=1e-12)
    ns = np.arange(dist.probs.size)
    poisson = np.exp(ns * math.log(9.0) - 9.0 - gammaln(ns + 1.0))
    np.testing.assert_allclose(dist.probs, poisson, atol=1e-10)


def test_photon_distribution_fock():
    dist = photon_distribution(SdfsParams(m=2), 2)
    np.testing.assert_allclose(dist.probs, [0, 0, 1])
    assert dist.tail_mass == 0.0


def test_photon_distribution_matches_oracle():
    p = SdfsParams(alpha0=0.5, r=1.0, m=2)
    n_max = choose_truncation(p, 1e-12)
    dist = photon_distribution(p, n_max)
    oracle = build_sdfs_oracle(p, 2 * (n_max + 1))
    np.testing.assert_allclose(dist.probs, np.abs(oracle.amps[: n_max + 1]) ** 2, atol=1e-8)
    assert dist.probs.sum() + dist.tail_mass == pytest.approx(1.0, abs=1e-10)


def test_mean_photon_number_values():
    assert mean_photon_number(SdfsParams(alpha0=2.0)) == pytest.approx(4.0)
    assert mean_photon_number(SdfsParams(alpha0=3.0, r=1.0)) == pytest.approx(9.0 + SINH1_SQ)
    expected = 2.0 * (math.cosh(1.0) ** 2 + SINH1_SQ) + SINH1_SQ + 9.0
    assert mean_photon_number(SdfsParams(alpha0=3.0, r=1.0, m=2)) == pytest.approx(expected)


def test_mean_photon_number_against_number_operator():
    for p in (SdfsParams(alpha0=3.0, r=1.0), SdfsParams(alpha0=3.0, r=1.0, m=2)):
        n_max = choose_truncation(p, 1e-12)
        oracle = build_sdfs_oracle(p, 2 * (n_max + 1))
        numeric = float(np.sum(np.arange(oracle.dim) * np.abs(oracle.amps) ** 2))
        assert numeric == pytest.approx(mean_photon_number(p), abs=1e-9)


def test_mean_consistency_with_distribution():
    for p in (SdfsParams(alpha0=3.0, r=1.0, m=1), SdfsParams(alpha0=1 + 1j, r=0.3, m=2)):
        dist = photon_distribution(p, choose_truncation(p, 1e-12))
        ns = np.arange(dist.probs.size)
        assert float(np.sum(ns * dist.probs)) == pytest.approx(
            mean_photon_number(p), abs=1e-6
        )


def test_choose_truncation_fock_state():
    assert choose_truncation(SdfsParams(m=2), 1e-12) == 2


def test_choose_truncation_coherent():
    n_max = choose_truncation(SdfsParams(alpha0=3.0), 1e-12)
    assert n_max >= 40
    # direct Poisson tail check at the returned truncation
    ns = np.arange(n_max + 1)
    covered = np.sum(np.exp(ns * math.log(9.0) - 9.0 - gammaln(ns + 1.0)))
    assert 1.0 - covered < 1e-12


def test_choose_truncation_oracle_tail():
    p = SdfsParams(alpha0=3.0, r=1.0, m=2)
    n_max = choose_truncation(p, 1e-12)
    oracle = build_sdfs_oracle(p, 2 * (n_max + 1))
    tail = 1.0 - float(np.sum(np.abs(oracle.amps[: n_max + 1]) ** 2))
    assert tail < 1e-12


def test_choose_truncation_bad_tol():
    with pytest.raises(ValueError):
        choose_truncation(SdfsParams(alpha0=1.0), 0.0)


def test_choose_truncation_cap():
    with pytest.raises(ValueError):
        choose_truncation(SdfsParams(alpha0=3.0, r=2.5), 1e-12)
