import math

import numpy as np
import pytest

from chiralwalk.bloch import WalkParameters, band_structure
from chiralwalk.errors import DomainError
from chiralwalk.realspace import (
    CoinProfile,
    build_floquet,
    effective_gibbs_energies,
    find_edge_states,
    quasienergy_spectrum,
    thermal_position_distribution,
    wall_peak_site,
)


@pytest.fixture(scope="module")
def wall_spectrum():
    profile = CoinProfile.bdi_wall(128)
    return profile, quasienergy_spectrum(build_floquet(profile))


class TestCoinProfile:
    def test_wall_site_belongs_to_right_segment(self):
        profile = CoinProfile(32, -math.pi / 2, 1.0, 2.0, 10)
        theta = profile.theta2_of_site()
        assert theta[9] == 1.0 and theta[10] == 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            CoinProfile(8, 0.0, 1.0, 2.0, 4)  # too few sites
        with pytest.raises(ValueError):
            CoinProfile(32, 0.0, 1.0, 2.0, 40)  # wall out of range
        with pytest.raises(ValueError):
            CoinProfile(32, 0.0, 1.0, 2.0, 10, boundary="open")
        with pytest.raises(ValueError):
            CoinProfile(32, 0.0, 1.0, 2.0, 10, axis=(0.0, 1.0, 1.0))


class TestBuildFloquet:
    def test_identity_coins_give_permutation(self):
        profile = CoinProfile.uniform(16, 0.0, 0.0)
        u = build_floquet(profile)
        n = profile.n_sites
        for x in range(n):
            src0 = np.zeros(2 * n)
            src0[2 * x] = 1.0  # coin 0 moves one site right
            dst = u @ src0
            assert abs(dst[2 * ((x + 1) % n)] - 1.0) < 1e-14
            src1 = np.zeros(2 * n)
            src1[2 * x + 1] = 1.0  # coin 1 moves one site left
            dst = u @ src1
            assert abs(dst[2 * ((x - 1) % n) + 1] - 1.0) < 1e-14

    def test_unitarity(self, wall_spectrum):
        profile, _ = wall_spectrum
        u = build_floquet(profile)
        assert np.abs(u @ u.conj().T - np.eye(2 * profile.n_sites)).max() < 1e-10

    def test_uniform_profile_matches_momentum_bands(self):
        for n in (32, 64):
            profile = CoinProfile.uniform(n, -math.pi / 2, math.pi / 4)
            spec = quasienergy_spectrum(build_floquet(profile))
            band = band_structure(WalkParameters.bdi(math.pi / 4), n)
            want = np.sort(np.concatenate([band.energy, -band.energy]))
            assert np.abs(np.sort(spec.quasienergies) - want).max() < 1e-8


class TestQuasienergySpectrum:
    def test_identity_matrix(self):
        spec = quasienergy_spectrum(np.eye(8, dtype=complex))
        assert np.abs(spec.quasienergies).max() == 0.0

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            quasienergy_spectrum(np.diag([2.0, 1.0]).astype(complex))

    def test_orthonormal_eigenvectors(self, wall_spectrum):
        _, spec = wall_spectrum
        v = spec.eigenvectors
        assert np.abs(v.conj().T @ v - np.eye(v.shape[0])).max() < 1e-8

    def test_eigen_residual(self, wall_spectrum):
        profile, spec = wall_spectrum
        u = build_floquet(profile)
        lam = np.exp(-1j * spec.quasienergies)
        assert np.abs(u @ spec.eigenvectors - spec.eigenvectors * lam).max() < 1e-8

    def test_per_state_normalization(self, wall_spectrum):
        _, spec = wall_spectrum
        assert np.abs(spec.site_probabilities.sum(axis=1) - 1.0).max() < 1e-10

    def test_gapped_uniform_bulk_has_no_midgap_states(self):
        profile = CoinProfile.uniform(64, -math.pi / 2, math.pi / 4)
        spec = quasienergy_spectrum(build_floquet(profile))
        folded = effective_gibbs_energies(spec.quasienergies)
        assert folded.min() > 0.05

    def test_chiral_pairing_of_uniform_spectrum(self):
        profile = CoinProfile.uniform(64, -math.pi / 2, math.pi / 4)
        spec = quasienergy_spectrum(build_floquet(profile))
        eps = np.sort(spec.quasienergies)
        assert np.abs(eps + eps[::-1]).max() < 1e-8


class TestEdgeStates:
    def test_gapped_uniform_walk_has_none(self):
        profile = CoinProfile.uniform(64, -math.pi / 2, math.pi / 4)
        spec = quasienergy_spectrum(build_floquet(profile))
        assert find_edge_states(spec) == []

    def test_wall_profile_hosts_two_localized_modes(self, wall_spectrum):
        profile, spec = wall_spectrum
        edges = find_edge_states(spec, e_tol=1e-6, ipr_factor=5.0)
        assert len(edges) >= 2
        n = profile.n_sites
        for e in edges:
            assert min(abs(e.quasienergy), math.pi - abs(e.quasienergy)) < 1e-6
            assert e.ipr > 5.0 / n
        # peaks cluster at the wall and at the periodic seam
        x0 = profile.wall_position
        dist_wall = [min(abs(e.peak_site - x0), n - abs(e.peak_site - x0)) for e in edges]
        dist_seam = [min(e.peak_site, n - e.peak_site) for e in edges]
        assert min(dist_wall) <= 2
        assert min(dist_seam) <= 2

    def test_symmetry_respecting_perturbation_keeps_count(self, wall_spectrum):
        profile, spec = wall_spectrum
        count = len(find_edge_states(spec, e_tol=1e-6, ipr_factor=5.0))
        bumped = CoinProfile(
            profile.n_sites,
            profile.theta1,
            profile.theta2_left + 0.05,
            profile.theta2_right - 0.05,
            profile.wall_position,
        )
        spec2 = quasienergy_spectrum(build_floquet(bumped))
        assert len(find_edge_states(spec2, e_tol=1e-6, ipr_factor=5.0)) == count


class TestEffectiveGibbsEnergies:
    def test_promotion_rule(self):
        eps = np.array([0.0, math.pi, -math.pi / 2, math.pi / 2, 1.0])
        folded = effective_gibbs_energies(eps)
        assert folded[0] == 0.0
        assert folded[1] == pytest.approx(0.0, abs=1e-15)
        assert folded[2] == pytest.approx(math.pi / 2)
        assert folded[3] == pytest.approx(math.pi / 2)
        assert folded[4] == pytest.approx(1.0)


class TestThermalDistribution:
    def test_normalization(self, wall_spectrum):
        _, spec = wall_spectrum
        for T in (0.05, 0.7, 100.0):
            p = thermal_position_distribution(spec, T)
            assert abs(p.sum() - 1.0) < 1e-10

    def test_high_temperature_is_uniform(self, wall_spectrum):
        profile, spec = wall_spectrum
        p = thermal_position_distribution(spec, 1e6)
        assert np.abs(p - 1.0 / profile.n_sites).max() < 1e-4

    def test_low_T_peak_exceeds_bulk(self, wall_spectrum):
        profile, spec = wall_spectrum
        p = thermal_position_distribution(spec, 0.05)
        site = wall_peak_site(spec, profile.wall_position)
        assert p[site] > 5.0 * np.median(p)

    def test_peak_smears_monotonically(self, wall_spectrum):
        profile, spec = wall_spectrum
        site = wall_peak_site(spec, profile.wall_position)
        temps = np.logspace(math.log10(0.05), math.log10(5.0), 10)
        peaks = [thermal_position_distribution(spec, t)[site] for t in temps]
        assert all(b <= a + 1e-8 for a, b in zip(peaks, peaks[1:]))

    def test_colder_is_sharper(self, wall_spectrum):
        profile, spec = wall_spectrum
        site = wall_peak_site(spec, profile.wall_position)
        p_cold = thermal_position_distribution(spec, 0.1)
        p_warm = thermal_position_distribution(spec, 1.0)
        assert p_cold[site] > p_warm[site]

    def test_rejects_nonpositive_temperature(self, wall_spectrum):
        _, spec = wall_spectrum
        with pytest.raises(DomainError):
            thermal_position_distribution(spec, 0.0)
