import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from becspectra import presets
from becspectra.errors import DomainError
from becspectra.linalg import eigen_sym_dense
from becspectra.three_mode import (
    ThreeModeBasisState,
    ThreeModeCouplings,
    ThreeModeSector,
    build_integrable_sector,
    build_nonintegrable_sector,
    full_basis,
    full_sector_dimension,
    imbalances,
    restricted_dimension,
    spectrum_integrable,
    spectrum_integrable_restricted,
    spectrum_nonintegrable,
)

from conftest import spectral_width

OMEGA_ONLY = ThreeModeCouplings(omega=1.0)
moderate = st.floats(-5, 5, allow_nan=False)


@st.composite
def couplings(draw):
    return ThreeModeCouplings(*(draw(moderate) for _ in range(10)))


def enumerate_states(na):
    return [(l, m, n) for l, m, n in product(range(na + 1), repeat=3) if l + m + 2 * n == na]


def dense_oracle(c, na, h1=0.0):
    """H0 (+ h1 H1) built element by element from the ladder-operator action."""
    states = enumerate_states(na)
    pos = {s: k for k, s in enumerate(states)}
    H = np.zeros((len(states), len(states)))
    for k, (l, m, n) in enumerate(states):
        H[k, k] = c.diagonal(l, m, n)
        # c^+ b a |l,m,n> = sqrt(l m (n+1)) |l-1,m-1,n+1>
        if l and m:
            H[pos[(l - 1, m - 1, n + 1)], k] += c.omega * math.sqrt(l * m * (n + 1))
        # a^+ b^+ c |l,m,n> = sqrt((l+1)(m+1) n) |l+1,m+1,n-1>
        if n:
            H[pos[(l + 1, m + 1, n - 1)], k] += c.omega * math.sqrt((l + 1) * (m + 1) * n)
        if m:
            H[pos[(l + 1, m - 1, n)], k] += h1 * math.sqrt((l + 1) * m)
        if l:
            H[pos[(l - 1, m + 1, n)], k] += h1 * math.sqrt(l * (m + 1))
    return states, H


class TestTypes:
    def test_basis_labels(self):
        s = ThreeModeBasisState(3, 1, 2)
        assert (s.n_atoms, s.imbalance) == (8, 2)

    def test_sector_basis(self):
        sec = ThreeModeSector(6, 2)
        assert sec.dimension == 3
        assert sec.basis == [(4, 2, 0), (3, 1, 1), (2, 0, 2)]
        assert all(b.n_atoms == 6 and b.imbalance == 2 for b in sec.basis)

    @pytest.mark.parametrize("na,i", [(3, 0), (2, 4), (-1, 1)])
    def test_inadmissible(self, na, i):
        with pytest.raises(DomainError):
            ThreeModeSector(na, i)

    def test_nonfinite_coupling(self):
        with pytest.raises(DomainError):
            ThreeModeCouplings(omega=float("inf"))


class TestDimensions:
    def test_restricted_count_400(self):
        assert restricted_dimension(400) == 20301

    def test_vacuum(self):
        assert restricted_dimension(0) == 1 and full_sector_dimension(0) == 1

    def test_small_odd(self):
        assert restricted_dimension(7) == 10
        assert full_sector_dimension(5) == 12

    def test_mixed_run_counts(self):
        assert full_sector_dimension(50) == 676
        assert full_sector_dimension(100) == 2601
        assert sum(full_sector_dimension(n) for n in range(50, 101, 10)) == 9331

    @pytest.mark.parametrize("na", range(65))
    def test_enumeration(self, na):
        states = enumerate_states(na)
        assert full_sector_dimension(na) == len(states) == len(full_basis(na))
        assert restricted_dimension(na) == sum(1 for l, m, _ in states if l >= m)
        assert restricted_dimension(na) == sum(ThreeModeSector(na, i).dimension for i in imbalances(na))

    def test_full_basis_order(self):
        assert full_basis(2) == [(0, 2, 0), (1, 1, 0), (2, 0, 0), (0, 0, 1)]

    def test_negative_atoms(self):
        with pytest.raises(DomainError):
            restricted_dimension(-2)


class TestIntegrable:
    def test_two_atoms_balanced(self):
        m = build_integrable_sector(OMEGA_ONLY, 2, 0)
        assert m.diag.tolist() == [0.0, 0.0] and m.offdiag.tolist() == [1.0]
        np.testing.assert_allclose(spectrum_integrable(OMEGA_ONLY, 2)[0][1], [-1, 1], atol=1e-13)

    def test_two_atoms_fully_imbalanced(self):
        c = ThreeModeCouplings(uaa=0.7, mua=-0.3, omega=1.0)
        m = build_integrable_sector(c, 2, 2)
        assert m.dim == 1 and m.diag.tolist() == [4 * 0.7 + 2 * -0.3]

    def test_table_iii_plus_against_dense(self):
        c = presets.get("III.plus").couplings
        states, H = dense_oracle(c, 6)
        keep = [k for k, (l, m, _) in enumerate(states) if l - m == 0]
        oracle = np.linalg.eigvalsh(H[np.ix_(keep, keep)])
        assert len(keep) == 4
        np.testing.assert_allclose(spectrum_integrable(c, 6)[0][1], oracle, rtol=0, atol=1e-12 * spectral_width(oracle))

    def test_restricted_union(self):
        secs = spectrum_integrable_restricted(OMEGA_ONLY, 2)
        assert [lab for lab, _ in secs] == [(2, 0), (2, 2)]
        np.testing.assert_allclose(np.sort(np.concatenate([v for _, v in secs])), [-1, 0, 1], atol=1e-13)

    def test_three_mode_run_level_count(self):
        secs = spectrum_integrable_restricted(presets.get("III.star").couplings, 400)
        assert sum(v.size for _, v in secs) == 20301

    def test_sector_traces(self):
        c = presets.get("III.x").couplings
        for (na, i), vals in spectrum_integrable_restricted(c, 40):
            tr = build_integrable_sector(c, na, i).diag.sum()
            assert abs(vals.sum() - tr) <= 1e-9 * max(abs(tr), spectral_width(vals))
            assert np.all(np.diff(vals) >= 0)

    def test_negative_imbalances(self):
        assert imbalances(4, nonnegative=False) == [-4, -2, 0, 2, 4]
        assert sum(v.size for _, v in spectrum_integrable(OMEGA_ONLY, 9, nonnegative=False)) == full_sector_dimension(9)


class TestNonintegrable:
    def test_single_atom(self):
        H = build_nonintegrable_sector(ThreeModeCouplings(), 1).entries
        assert H.tolist() == [[0.0, 1.0], [1.0, 0.0]]
        np.testing.assert_allclose(spectrum_nonintegrable(ThreeModeCouplings(), 1), [-1, 1], atol=1e-14)

    def test_two_atoms_pure_h1(self):
        np.testing.assert_allclose(spectrum_nonintegrable(ThreeModeCouplings(), 2), [-2, 0, 0, 2], atol=1e-11)

    def test_fifty_atoms(self):
        c = presets.get("III.star").couplings
        vals = spectrum_nonintegrable(c, 50)
        assert vals.size == 676
        tr = np.trace(build_nonintegrable_sector(c, 50).entries)
        assert abs(vals.sum() - tr) <= 1e-9 * abs(tr)

    @pytest.mark.parametrize("na", [1, 6, 13])
    def test_against_enumerated_oracle(self, na):
        c = presets.get("III.dia").couplings
        states, H = dense_oracle(c, na, h1=1.0)
        np.testing.assert_array_equal(build_nonintegrable_sector(c, na).entries, H[np.ix_(*[[states.index(s) for s in full_basis(na)]] * 2)])

    @given(couplings(), st.integers(0, 16))
    def test_no_h1_is_union_of_sectors(self, c, na):
        vals = spectrum_nonintegrable(c, na, h1_strength=0.0)
        union = np.sort(np.concatenate([v for _, v in spectrum_integrable(c, na, nonnegative=False)]))
        np.testing.assert_allclose(vals, union, rtol=0, atol=1e-9 * spectral_width(union))

    @given(st.integers(0, 10_000), st.integers(1, 12))
    def test_permutation_invariance(self, seed, na):
        c = presets.get("III.x").couplings
        H = build_nonintegrable_sector(c, na).entries
        p = np.random.default_rng(seed).permutation(H.shape[0])
        a = spectrum_nonintegrable(c, na)
        np.testing.assert_allclose(eigen_sym_dense(H[np.ix_(p, p)]), a, rtol=0, atol=1e-10 * spectral_width(a))


class TestInvariants:
    @given(couplings(), st.integers(0, 20))
    def test_sectors_match_dense_oracle(self, c, na):
        states, H = dense_oracle(c, na)
        for (_, i), vals in spectrum_integrable(c, na):
            keep = [k for k, (l, m, _) in enumerate(states) if l - m == i]
            oracle = np.linalg.eigvalsh(H[np.ix_(keep, keep)])
            np.testing.assert_allclose(vals, oracle, rtol=0, atol=1e-9 * spectral_width(oracle))

    @given(couplings(), st.integers(0, 30), moderate)
    def test_total_number_shift(self, c, na, d):
        shifted = ThreeModeCouplings(**{**c.__dict__, "mua": c.mua + d, "mub": c.mub + d, "muc": c.muc + 2 * d})
        for (_, a), (_, b) in zip(spectrum_integrable(c, na), spectrum_integrable(shifted, na)):
            tol = 1e-12 * abs(d * na) + 1e-10 * max(spectral_width(a), spectral_width(b))
            assert np.max(np.abs(b - a - d * na)) <= tol

    @given(couplings(), st.integers(0, 12), moderate)
    def test_total_number_shift_nonintegrable(self, c, na, d):
        shifted = ThreeModeCouplings(**{**c.__dict__, "mua": c.mua + d, "mub": c.mub + d, "muc": c.muc + 2 * d})
        a, b = spectrum_nonintegrable(c, na), spectrum_nonintegrable(shifted, na)
        tol = 1e-12 * abs(d * na) + 1e-10 * max(spectral_width(a), spectral_width(b))
        assert np.max(np.abs(b - a - d * na)) <= tol

    @given(couplings(), st.integers(0, 30), moderate)
    def test_imbalance_shift(self, c, na, d):
        shifted = ThreeModeCouplings(**{**c.__dict__, "mua": c.mua + d, "mub": c.mub - d})
        for ((_, i), a), (_, b) in zip(spectrum_integrable(c, na), spectrum_integrable(shifted, na)):
            tol = 1e-12 * abs(d * i) + 1e-10 * max(spectral_width(a), spectral_width(b))
            assert np.max(np.abs(b - a - d * i)) <= tol

    @given(couplings(), st.integers(0, 30))
    def test_omega_sign(self, c, na):
        flipped = ThreeModeCouplings(**{**c.__dict__, "omega": -c.omega})
        for (_, a), (_, b) in zip(spectrum_integrable(c, na), spectrum_integrable(flipped, na)):
            np.testing.assert_allclose(b, a, rtol=0, atol=1e-10 * spectral_width(a))

    @given(couplings(), st.integers(0, 20))
    def test_mode_swap(self, c, na):
        d = c.__dict__
        swapped = ThreeModeCouplings(
            **{**d, "uaa": d["ubb"], "ubb": d["uaa"], "uac": d["ubc"], "ubc": d["uac"], "mua": d["mub"], "mub": d["mua"]}
        )
        full = {i: v for (_, i), v in spectrum_integrable(c, na, nonnegative=False)}
        for (_, i), v in spectrum_integrable(swapped, na, nonnegative=False):
            np.testing.assert_allclose(v, full[-i], rtol=0, atol=1e-10 * spectral_width(v))
        a = np.sort(np.concatenate(list(full.values())))
        b = np.sort(np.concatenate([v for _, v in spectrum_integrable(swapped, na, nonnegative=False)]))
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-10 * spectral_width(a))
