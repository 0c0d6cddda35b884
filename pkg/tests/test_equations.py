import numpy as np
import pytest

from widthlab import (
    Geometric,
    InfeasibleError,
    InputError,
    UnsolvableError,
    approx_factorization,
    factor_pair,
    first_component_member,
    match_invertible,
    solve_xay,
    xay_solvable,
)


def random_with_rank(rng, d, r):
    return rng.normal(size=(d, r)) @ rng.normal(size=(r, d))


class TestSolvability:
    def test_diagonal_example(self):
        v = xay_solvable(np.diag([1.0, 2.0]), np.diag([3.0, 0.0]))
        assert v.solvable and (v.rank_A, v.rank_B) == (2, 1)

    def test_zero_a_nonzero_b(self):
        v = xay_solvable(np.zeros((2, 2)), np.eye(2))
        assert not v.solvable

    def test_rank_deficit_with_brute_force_confirmation(self):
        rng = np.random.default_rng(1)
        a = random_with_rank(rng, 6, 3)
        b = random_with_rank(rng, 6, 4)
        assert not xay_solvable(a, b).solvable
        # no (X, Y) can beat the rank barrier
        for _ in range(200):
            x, y = rng.normal(size=(6, 6)), rng.normal(size=(6, 6))
            assert np.linalg.matrix_rank(x @ a @ y, tol=1e-9) <= 3

    def test_asymptotic_branch(self):
        v = xay_solvable(np.eye(2), np.eye(2), Geometric(0.5), Geometric(0.25))
        assert v.asymptotic is not None and v.asymptotic.holds

    def test_shape_mismatch(self):
        with pytest.raises(InputError):
            xay_solvable(np.eye(2), np.eye(3))


class TestSolveXAY:
    def test_diagonal_example(self):
        a, b = np.diag([1.0, 2.0]), np.diag([3.0, 0.0])
        pair = solve_xay(a, b)
        np.testing.assert_allclose(pair.X @ a @ pair.Y, b, atol=1e-12)

    def test_b_equals_a(self):
        a = np.diag([1.0, 2.0])
        pair = solve_xay(a, a)
        assert pair.residual <= 1e-12

    def test_random_solvable_instances(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            d = int(rng.integers(2, 9))
            ra = int(rng.integers(1, d + 1))
            a = random_with_rank(rng, d, ra)
            b = rng.normal(size=(d, d)) @ a @ rng.normal(size=(d, d))
            pair = solve_xay(a, b)
            assert pair.residual <= 1e-9

    def test_unsolvable_carries_verdict(self):
        with pytest.raises(UnsolvableError) as err:
            solve_xay(np.zeros((2, 2)), np.eye(2))
        assert err.value.verdict.rank_B == 2

    def test_zero_b(self):
        pair = solve_xay(np.eye(3), np.zeros((3, 3)))
        assert pair.residual == 0.0


class TestFirstComponent:
    def test_identity(self):
        a = np.diag([1.0, 2.0])
        assert first_component_member(np.eye(2), a, a)

    def test_zero_x(self):
        assert not first_component_member(np.zeros((2, 2)), np.eye(2), np.eye(2))

    def test_constructed_solutions_belong(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            d = 5
            a = random_with_rank(rng, d, 3)
            b = rng.normal(size=(d, d)) @ a @ rng.normal(size=(d, d))
            pair = solve_xay(a, b)
            assert first_component_member(np.asarray(pair.X), a, b)

    def test_deficient_composition_excluded(self):
        rng = np.random.default_rng(4)
        a = np.eye(4)
        b = random_with_rank(rng, 4, 3)
        x = random_with_rank(rng, 4, 2)  # rank(XA) = 2 < rank(B) = 3
        assert not first_component_member(x, a, b)


class TestFactorPair:
    def test_diagonal(self):
        b = np.diag([1.0, 2.0])
        pair = factor_pair(b)
        assert np.linalg.norm(pair.X @ pair.Y - b) <= 1e-14

    def test_zero_b_keeps_injectivity(self):
        pair = factor_pair(np.zeros((2, 2)))
        assert np.linalg.norm(pair.X @ pair.Y) == 0.0
        assert np.linalg.matrix_rank(np.asarray(pair.Y)) == 2

    def test_random_instances_full_rank(self):
        rng = np.random.default_rng(5)
        for d in (2, 5, 10):
            b = rng.normal(size=(d, d))
            pair = factor_pair(b)
            assert pair.residual <= 1e-12
            assert np.linalg.matrix_rank(np.asarray(pair.X)) == d
            assert np.linalg.matrix_rank(np.asarray(pair.Y)) == d


class TestMatchInvertible:
    def test_exact_targets_give_zero_residuals(self):
        e = np.eye(4)
        cert = match_invertible([e[:, 0]], [e[:, 0]], [e[:, 1]], [e[:, 1]], eps=1.0)
        assert max(cert.x_residuals + cert.y_residuals) == 0.0

    def test_cross_targets(self):
        e = np.eye(8)
        cert = match_invertible([e[:, 0]], [e[:, 1]], [e[:, 2]], [e[:, 3]], eps=1e-6)
        v = np.asarray(cert.operator)
        assert np.linalg.norm(v @ e[:, 0] - e[:, 1]) < 1e-6
        assert np.linalg.norm(np.linalg.inv(v) @ e[:, 2] - e[:, 3]) < 1e-6
        assert np.linalg.svd(v, compute_uv=False)[-1] > 0

    def test_random_instances(self):
        rng = np.random.default_rng(6)
        d = 10
        for trial in range(25):
            xs = [rng.normal(size=d) for _ in range(3)]
            ys = [rng.normal(size=d) for _ in range(3)]
            xst = [rng.normal(size=d) for _ in range(3)]
            yst = [rng.normal(size=d) for _ in range(3)]
            cert = match_invertible(xs, xst, ys, yst, eps=1e-4, seed=trial)
            assert max(cert.x_residuals + cert.y_residuals) < 1e-4
            v = np.asarray(cert.operator)
            assert np.linalg.svd(v, compute_uv=False)[-1] > 0
            assert np.isfinite(cert.condition)

    def test_coinciding_constraints_force_perturbation(self):
        # identical image requirements for V and V^-1 sides are degenerate
        # until nudged; the certificate still meets eps
        e = np.eye(4)
        cert = match_invertible([e[:, 0]], [e[:, 1]], [e[:, 1]], [e[:, 0]], eps=1e-3)
        assert max(cert.x_residuals + cert.y_residuals) < 1e-3

    def test_dependent_inputs_rejected(self):
        e = np.eye(4)
        with pytest.raises(InputError, match="independent"):
            match_invertible([e[:, 0], 2 * e[:, 0]], [e[:, 1], e[:, 2]],
                             [e[:, 3]], [e[:, 3]], eps=1e-3)

    def test_dimension_floor(self):
        e = np.eye(2)
        with pytest.raises(InputError, match="ambient dimension"):
            match_invertible([e[:, 0]], [e[:, 0]],
                             [e[:, 0], e[:, 1]], [e[:, 0], e[:, 1]], eps=1e-3)


class TestApproxFactorization:
    def test_already_factored_targets(self):
        rng = np.random.default_rng(7)
        x0 = rng.normal(size=(3, 3))
        y0 = rng.normal(size=(3, 3))
        b = x0 @ y0
        pair = approx_factorization(b, x0, y0, [np.eye(3)[:, 0]], eps=1e-2)
        assert pair.residual <= 1e-9

    def test_identity_targets(self):
        b = np.diag([1.0, 2.0])
        pair = approx_factorization(b, np.eye(2), np.eye(2), [np.array([1.0, 0.0])], eps=1e-2)
        x, y = np.asarray(pair.X), np.asarray(pair.Y)
        np.testing.assert_allclose(x @ y, b, atol=1e-9)
        u1 = np.vstack([np.eye(2), np.zeros((2, 2))])
        v = np.array([1.0, 0.0])
        assert np.linalg.norm(y @ v - u1 @ v) < 1e-2
        assert np.linalg.norm(x @ (u1 @ v) - v) < 1e-2

    def test_random_instances(self):
        rng = np.random.default_rng(8)
        d = 6
        u1 = np.vstack([np.eye(d), np.zeros((d, d))])
        for trial in range(10):
            b = rng.normal(size=(d, d))
            x0 = rng.normal(size=(d, d))
            y0 = rng.normal(size=(d, d))
            vs = [rng.normal(size=d) for _ in range(3)]
            pair = approx_factorization(b, x0, y0, vs, eps=1e-3, seed=trial)
            x, y = np.asarray(pair.X), np.asarray(pair.Y)
            assert np.linalg.norm(x @ y - b) <= 1e-9 * (1 + np.linalg.norm(b))
            for v in vs:
                assert np.linalg.norm(y @ v - u1 @ (y0 @ v)) < 1e-3
                assert np.linalg.norm(x @ (u1 @ v) - x0 @ v) < 1e-3

    def test_dependent_test_vectors_followed_by_linearity(self):
        rng = np.random.default_rng(9)
        d = 6
        b = rng.normal(size=(d, d))
        v1, v2 = rng.normal(size=d), rng.normal(size=d)
        vs = [v1, v2, v1 + v2]
        pair = approx_factorization(b, rng.normal(size=(d, d)), rng.normal(size=(d, d)),
                                    vs, eps=1e-3)
        assert pair.residual <= 1e-9

    def test_zero_test_vector_rejected(self):
        with pytest.raises(InputError, match="zero"):
            approx_factorization(np.eye(2), np.eye(2), np.eye(2),
                                 [np.zeros(2)], eps=1e-3)

    def test_infeasible_eps_reports_achieved(self):
        b = np.diag([1.0, 2.0])
        with pytest.raises((InfeasibleError, InputError)):
            approx_factorization(b, 1e6 * np.eye(2), np.eye(2),
                                 [np.array([1.0, 0.0])], eps=1e-300)
