import numpy as np
import pytest

from widthlab import (
    InputError,
    ellipsoid,
    ellipsoid_membership,
    kolmogorov_widths,
    scale_ellipsoid,
    section_spectrum,
    singular_spectrum,
    truncate_ellipsoid,
)
from widthlab.spectra import nullspace_basis


def random_orthogonal(rng, d):
    return np.linalg.qr(rng.normal(size=(d, d)))[0]


class TestSingularSpectrum:
    def test_diagonal(self):
        spec = singular_spectrum(np.diag([3.0, 2.0, 1.0]))
        np.testing.assert_array_equal(spec.values, [3.0, 2.0, 1.0])
        assert spec.rank == 3
        assert spec.s(1) == 3.0 and spec.s(4) == 0.0

    def test_permutation_is_isometry(self):
        spec = singular_spectrum(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(spec.values, [1.0, 1.0])

    def test_against_symmetric_eigenvalue_oracle(self):
        # independent route: sqrt of the eigenvalues of A^T A
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = rng.normal(size=(4, 4))
            expected = np.sqrt(np.clip(np.linalg.eigvalsh(a.T @ a), 0.0, None))[::-1]
            got = singular_spectrum(a).values
            np.testing.assert_allclose(got, expected, rtol=1e-10, atol=1e-10 * expected[0])

    def test_orthogonal_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            a = rng.normal(size=(5, 5))
            u, v = random_orthogonal(rng, 5), random_orthogonal(rng, 5)
            s0 = singular_spectrum(a).values
            s1 = singular_spectrum(u @ a @ v).values
            np.testing.assert_allclose(s1, s0, rtol=1e-10, atol=1e-10 * s0[0])

    def test_rank_cutoff_is_relative(self):
        spec = singular_spectrum(np.diag([1.0, 1e-13]))
        assert spec.rank == 1

    def test_rejects_non_finite(self):
        with pytest.raises(InputError, match="finite"):
            singular_spectrum(np.array([[np.nan, 0.0], [0.0, 1.0]]))


class TestWidths:
    def test_diagonal_shift_identity(self):
        w = kolmogorov_widths(ellipsoid(np.diag([3.0, 2.0, 1.0])))
        np.testing.assert_array_equal(w.values, [3.0, 2.0, 1.0])
        assert w.width(3) == 0.0

    def test_zero_matrix(self):
        w = kolmogorov_widths(ellipsoid(np.zeros((3, 3))))
        np.testing.assert_array_equal(w.values, np.zeros(3))

    def test_width_equals_next_s_number(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = rng.normal(size=(6, 6))
            e = ellipsoid(a)
            w = kolmogorov_widths(e)
            for n in range(6):
                assert w.width(n) == e.spectrum.s(n + 1)

    def test_orthogonal_conjugation_matches_diagonal_model(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(5, 5))
        e = ellipsoid(a)
        diag_model = ellipsoid(np.diag(e.spectrum.values))
        np.testing.assert_allclose(
            kolmogorov_widths(e).values,
            kolmogorov_widths(diag_model).values,
            rtol=0, atol=1e-12 * e.spectrum.s(1),
        )


class TestSections:
    def test_axis_aligned_drops_top(self):
        e = ellipsoid(np.diag([3.0, 2.0, 1.0]))
        sec = section_spectrum(e, np.array([[1.0, 0.0, 0.0]]).T)
        np.testing.assert_allclose(sec.values, [2.0, 1.0])

    def test_empty_subspace_is_noop(self):
        e = ellipsoid(np.diag([3.0, 2.0, 1.0]))
        sec = section_spectrum(e, np.zeros((3, 0)))
        np.testing.assert_array_equal(sec.values, e.spectrum.values)

    def test_interlacing_random(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            a = rng.normal(size=(6, 6))
            e = ellipsoid(a)
            y = np.linalg.qr(rng.normal(size=(6, 2)))[0]
            sec = section_spectrum(e, y)
            s = e.spectrum
            slack = 1e-9 * s.s(1)
            for n in range(1, len(sec) + 1):
                assert sec.s(n) <= s.s(n) + slack
                assert sec.s(n) >= s.s(n + 2) - slack

    def test_rejects_non_orthonormal(self):
        e = ellipsoid(np.diag([3.0, 2.0, 1.0]))
        with pytest.raises(InputError, match="orthonormal"):
            section_spectrum(e, np.array([[1.0, 1.0, 0.0]]).T)


class TestTruncation:
    def test_diagonal_example(self):
        e = ellipsoid(np.diag([3.0, 2.0, 1.0]))
        t = truncate_ellipsoid(e, 2)
        np.testing.assert_allclose(t.generator, np.diag([3.0, 2.0, 0.0]), atol=1e-14)
        np.testing.assert_array_equal(t.spectrum.values, [3.0, 2.0])

    def test_full_rank_keeps_spectrum(self):
        rng = np.random.default_rng(23)
        a = rng.normal(size=(4, 4))
        e = ellipsoid(a)
        t = truncate_ellipsoid(e, e.rank)
        np.testing.assert_allclose(t.spectrum.values, e.spectrum.values, rtol=1e-12)

    def test_rank_one_keeps_top_value(self):
        rng = np.random.default_rng(29)
        a = rng.normal(size=(5, 5))
        e = ellipsoid(a)
        t = truncate_ellipsoid(e, 1)
        assert t.spectrum.values[0] == pytest.approx(e.spectrum.s(1), rel=1e-13)

    def test_width_monotonicity(self):
        rng = np.random.default_rng(31)
        a = rng.normal(size=(5, 5))
        e = ellipsoid(a)
        for r in range(1, e.rank + 1):
            wt = kolmogorov_widths(truncate_ellipsoid(e, r))
            we = kolmogorov_widths(e)
            for n in range(r):
                assert wt.width(n) == pytest.approx(we.width(n), rel=1e-13)
            for n in range(r, 6):
                assert wt.width(n) == 0.0

    def test_out_of_range(self):
        e = ellipsoid(np.diag([3.0, 2.0, 1.0]))
        with pytest.raises(InputError, match="truncation rank"):
            truncate_ellipsoid(e, 4)


class TestMembership:
    def test_boundary_point(self):
        e = ellipsoid(np.diag([2.0, 1.0]))
        assert ellipsoid_membership(e, [2.0, 0.0])

    def test_just_outside(self):
        e = ellipsoid(np.diag([2.0, 1.0]))
        assert not ellipsoid_membership(e, [0.0, 1.01])

    def test_random_boundary_samples(self):
        rng = np.random.default_rng(37)
        a = rng.normal(size=(4, 4))
        e = ellipsoid(a)
        u = rng.normal(size=(4, 1000))
        u /= np.linalg.norm(u, axis=0)
        pts = a @ u
        assert all(ellipsoid_membership(e, pts[:, i]) for i in range(pts.shape[1]))

    def test_off_range_point(self):
        e = ellipsoid(np.diag([1.0, 0.0]))
        assert not ellipsoid_membership(e, [0.0, 0.5])
        assert ellipsoid_membership(e, [0.5, 0.0])


class TestHelpers:
    def test_nullspace_basis(self):
        rng = np.random.default_rng(41)
        m = rng.normal(size=(2, 6))
        n = nullspace_basis(m)
        assert n.shape == (6, 4)
        assert np.abs(m @ n).max() < 1e-12
        np.testing.assert_allclose(n.T @ n, np.eye(4), atol=1e-12)

    def test_nullspace_zero_columns_exact(self):
        m = np.array([[0.0, 2.0, 0.0], [0.0, 0.0, 0.0]])
        n = nullspace_basis(m)
        assert n.shape == (3, 2)
        assert np.abs(m @ n).max() == 0.0

    def test_scale_ellipsoid(self):
        e = ellipsoid(np.diag([2.0, 1.0]))
        s = scale_ellipsoid(e, 3.0)
        np.testing.assert_array_equal(s.spectrum.values, [6.0, 3.0])
        np.testing.assert_array_equal(s.generator, np.diag([6.0, 3.0]))
