import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from becspectra import presets
from becspectra.errors import BreakdownAtTrialEnergy, DomainError, IntegrableDegenerate, NotAnEigenvalue
from becspectra.linalg import eigen_sym_dense
from becspectra.two_mode import (
    Regime,
    TwoModeCouplings,
    TwoModeSector,
    alpha_top,
    build_sector,
    classify_regime,
    diag_element,
    eigenvector,
    recursion_state,
    spectrum,
    spectrum_via_recursion,
)

from conftest import spectral_width

CLOSED = TwoModeCouplings(u11=1.0, mu1=0.5, ej=2.0)  # N=1: [[1.5, -1], [-1, 0]] -> {-0.5, 2}

finite = st.floats(-50, 50, allow_nan=False)


@st.composite
def couplings(draw, min_ej=1e-3):
    ej = draw(st.floats(min_ej, 50)) * draw(st.sampled_from([-1, 1]))
    return TwoModeCouplings(*(draw(finite) for _ in range(5)), ej)


def direct_energy(c, n1, n2):
    return c.u11 * n1**2 + c.u12 * n1 * n2 + c.u22 * n2**2 + c.mu1 * n1 + c.mu2 * n2


class TestDiagonal:
    def test_zero_couplings(self):
        assert diag_element(TwoModeCouplings(), 7, 3) == 0.0

    def test_u11_only(self):
        c = TwoModeCouplings(u11=1.0)
        assert [diag_element(c, 2, m) for m in range(3)] == [4.0, 1.0, 0.0]

    def test_matches_number_operator_form(self):
        c = presets.get("I.tri").couplings
        assert diag_element(c, 1000, 500) == pytest.approx(direct_energy(c, 500, 500), rel=1e-14)
        for m in (0, 1, 17, 999, 1000):
            assert diag_element(c, 1000, m) == pytest.approx(direct_energy(c, 1000 - m, m), rel=1e-13, abs=1e-9)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            diag_element(TwoModeCouplings(), 2, 3)

    def test_sector_type(self):
        assert TwoModeSector(5).dimension == 6
        with pytest.raises(DomainError):
            TwoModeSector(-1)


class TestBuild:
    def test_single_particle_tunneling(self):
        m = build_sector(TwoModeCouplings(ej=1.0), 1)
        assert m.diag.tolist() == [0.0, 0.0] and m.offdiag.tolist() == [-0.5]

    def test_two_particles(self):
        m = build_sector(TwoModeCouplings(u11=1.0, ej=2.0), 2)
        assert m.diag.tolist() == [4.0, 1.0, 0.0]
        np.testing.assert_allclose(m.offdiag, [-math.sqrt(2), -math.sqrt(2)], rtol=1e-15)
        np.testing.assert_allclose(spectrum(TwoModeCouplings(u11=1.0, ej=2.0), 2), eigen_sym_dense(m.to_dense(), True)[0], atol=1e-12)

    def test_closed_form(self):
        np.testing.assert_allclose(spectrum(CLOSED, 1), [-0.5, 2.0], atol=1e-11)


class TestSpectrum:
    def test_vacuum(self):
        # N=0 holds only the vacuum, whose energy is zero for any couplings
        assert spectrum(presets.get("II.plus").couplings, 0).tolist() == [0.0]

    def test_single_particle_without_tunneling(self):
        c = TwoModeCouplings(u11=2.0, u22=-1.0, mu1=0.5, mu2=0.25)
        assert spectrum(c, 1).tolist() == sorted([c.u11 + c.mu1, c.u22 + c.mu2])

    def test_table_ii_sector_360(self):
        c = presets.get("II.star").couplings
        vals = spectrum(c, 360)
        assert vals.size == 361
        tr = build_sector(c, 360).diag.sum()
        assert abs(vals.sum() - tr) <= 1e-9 * abs(tr)


class TestAlphaTop:
    def test_root_bracketing(self):
        c = presets.get("II.plus").couplings
        vals = spectrum(c, 12)
        d = 1e-8 * spectral_width(vals)
        for e in vals:
            s_lo, _ = alpha_top(c, 12, e - d)
            s_hi, _ = alpha_top(c, 12, e + d)
            assert s_lo != s_hi

    def test_closed_form_root(self):
        assert alpha_top(CLOSED, 1, 2.0 - 1e-6)[0] != alpha_top(CLOSED, 1, 2.0 + 1e-6)[0]

    def test_no_root_beyond_spectrum(self):
        w = 2.5
        signs = {alpha_top(CLOSED, 1, 2.0 + k * w)[0] for k in (10, 20, 40, 80)}
        # leading term prod_j (-2E / (E_J (j+1))) is positive for E_J = 2 and N + 1 = 2
        assert signs == {1.0}

    def test_log_magnitude_matches_product(self):
        st_ = recursion_state(CLOSED, 1, 0.3)
        # alpha_1 = X_0, alpha_2 = X_0 X_1 - alpha_0 (m - N - 1)/(m + 1) with m = 1
        x0 = 2 * (1.5 - 0.3) / 2
        x1 = 2 * (0 - 0.3) / (2 * 2)
        alpha2 = x1 * x0 + (1 - 1 - 1) / 2 * 1.0
        assert st_.sign_alpha[-1] * math.exp(st_.log_alpha[-1]) == pytest.approx(alpha2, rel=1e-14)
        assert st_.ys[0] == 1.0

    def test_degenerate(self):
        with pytest.raises(IntegrableDegenerate):
            alpha_top(TwoModeCouplings(u11=1.0), 3, 0.1)

    def test_breakdown(self):
        # X_0 vanishes when E equals the m = 0 diagonal energy
        with pytest.raises(BreakdownAtTrialEnergy):
            alpha_top(CLOSED, 1, 1.5)


class TestRecursionSpectrum:
    def test_closed_form(self):
        np.testing.assert_allclose(spectrum_via_recursion(CLOSED, 1), [-0.5, 2.0], atol=1e-10)

    def test_table_ii_plus(self):
        c = presets.get("II.plus").couplings
        ref = spectrum(c, 40)
        np.testing.assert_allclose(spectrum_via_recursion(c, 40), ref, rtol=0, atol=1e-8 * spectral_width(ref))

    def test_two_particles_dense(self):
        c = TwoModeCouplings(u11=1.0, ej=2.0)
        dense = eigen_sym_dense(build_sector(c, 2).to_dense(), want_vectors=True)[0]
        np.testing.assert_allclose(spectrum_via_recursion(c, 2), dense, atol=1e-10 * spectral_width(dense))

    def test_degenerate(self):
        with pytest.raises(IntegrableDegenerate):
            spectrum_via_recursion(TwoModeCouplings(u11=1.0), 3)

    @pytest.mark.parametrize("name", ["II.star", "II.dot", "II.x", "II.sq", "I.dot"])
    def test_benchmark_sector_400(self, name):
        c = presets.get(name).couplings
        ref = spectrum(c, 400)
        np.testing.assert_allclose(spectrum_via_recursion(c, 400), ref, rtol=0, atol=1e-8 * spectral_width(ref))


class TestEigenvector:
    def test_symmetric_ground_state(self):
        np.testing.assert_allclose(eigenvector(TwoModeCouplings(ej=1.0), 1, -0.5), [2**-0.5, 2**-0.5], atol=1e-12)

    def test_antisymmetric_state(self):
        np.testing.assert_allclose(eigenvector(TwoModeCouplings(ej=1.0), 1, 0.5), [2**-0.5, -(2**-0.5)], atol=1e-12)

    @pytest.mark.parametrize("name,n", [("II.dot", 20), ("II.plus", 100), ("II.x", 60), ("II.star", 200)])
    def test_residual(self, name, n):
        c = presets.get(name).couplings
        H = build_sector(c, n).to_dense()
        vals = spectrum(c, n)
        w = spectral_width(vals)
        for e in vals:
            v = eigenvector(c, n, e)
            assert abs(np.linalg.norm(v) - 1) < 1e-12
            assert np.linalg.norm(H @ v - e * v) <= 1e-7 * w

    def test_accepts_perturbed_energy(self):
        c = presets.get("II.dot").couplings
        vals = spectrum(c, 20)
        w = spectral_width(vals)
        v = eigenvector(c, 20, vals[3] + 5e-7 * w)
        H = build_sector(c, 20).to_dense()
        assert np.linalg.norm(H @ v - vals[3] * v) <= 1e-7 * w

    def test_not_an_eigenvalue(self):
        c = presets.get("II.dot").couplings
        vals = spectrum(c, 20)
        with pytest.raises(NotAnEigenvalue):
            eigenvector(c, 20, 0.5 * (vals[0] + vals[1]))


class TestRegime:
    @pytest.mark.parametrize("name,regime", [("I.tri", Regime.RABI), ("I.sq", Regime.JOSEPHSON), ("I.dot", Regime.FOCK)])
    def test_table_i(self, name, regime):
        assert classify_regime(presets.get(name).couplings, 1000) is regime

    def test_unclassified_when_couplings_differ(self):
        assert classify_regime(presets.get("II.plus").couplings, 400) is Regime.UNCLASSIFIED

    def test_no_tunneling_is_fock(self):
        assert classify_regime(TwoModeCouplings(u11=1, u22=1, u12=-2), 10) is Regime.FOCK


class TestInvariants:
    @given(couplings(), st.integers(1, 60))
    def test_recursion_equals_matrix(self, c, n):
        ref = spectrum(c, n)
        got = spectrum_via_recursion(c, n)
        np.testing.assert_allclose(got, ref, rtol=0, atol=1e-8 * spectral_width(ref))

    @given(couplings(min_ej=0.0), st.integers(0, 120))
    def test_trace(self, c, n):
        vals = spectrum(c, n)
        tr = sum(diag_element(c, n, m) for m in range(n + 1))
        assert abs(vals.sum() - tr) <= 1e-9 * (abs(tr) + spectral_width(vals))

    @given(couplings(), st.integers(0, 80), finite)
    def test_chemical_potential_shift(self, c, n, delta):
        shifted = TwoModeCouplings(c.u11, c.u22, c.u12, c.mu1 + delta, c.mu2 + delta, c.ej)
        a, b = spectrum(c, n), spectrum(shifted, n)
        tol = 1e-12 * abs(delta * n) + 1e-10 * max(spectral_width(a), spectral_width(b))
        assert np.max(np.abs(b - a - delta * n)) <= tol

    @given(couplings(), st.integers(0, 80))
    def test_mode_relabeling(self, c, n):
        swapped = TwoModeCouplings(c.u22, c.u11, c.u12, c.mu2, c.mu1, c.ej)
        a = spectrum(c, n)
        np.testing.assert_allclose(spectrum(swapped, n), a, rtol=0, atol=1e-10 * spectral_width(a))

    @given(couplings(), st.integers(0, 80))
    def test_tunneling_sign(self, c, n):
        flipped = TwoModeCouplings(c.u11, c.u22, c.u12, c.mu1, c.mu2, -c.ej)
        a = spectrum(c, n)
        np.testing.assert_allclose(spectrum(flipped, n), a, rtol=0, atol=1e-10 * spectral_width(a))

    @given(couplings(), st.integers(0, 80))
    def test_no_tunneling_is_diagonal(self, c, n):
        c0 = TwoModeCouplings(c.u11, c.u22, c.u12, c.mu1, c.mu2, 0.0)
        expected = sorted(diag_element(c0, n, m) for m in range(n + 1))
        assert spectrum(c0, n).tolist() == expected
