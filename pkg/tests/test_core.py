import itertools

import numpy as np
import pytest

from pcmlex import (
    CompleteMatrix,
    TriadIndex,
    WeightVector,
    check_ordinal_violation,
    inconsistency_profile,
    is_consistent,
    koczkodaj_ki,
    llsm_weights,
    ratio_matrix,
    saaty_lambda_max,
    triad_ti,
    validate_reciprocal,
)
from pcmlex.errors import (
    AsymmetricMissingnessError,
    DimensionMismatchError,
    MatrixTooSmallError,
    NonPositiveEntryError,
    NonSquareError,
    ReciprocityViolationError,
)

from conftest import EXAMPLE2_RAW, random_reciprocal
from oracles import dense_lambda_max

# The worked example completed at its optimum x13 = 4, x14 = 8.
EXAMPLE2_COMPLETED = [
    [1, 2, 4, 8],
    [1 / 2, 1, 1, 8],
    [1 / 4, 1, 1, 1],
    [1 / 8, 1 / 8, 1, 1],
]


def example2_theta_oracle(x13: float, x14: float) -> np.ndarray:
    """The four triad inconsistencies of the worked 4x4, written out."""
    ti_123 = max(x13 / 2, 2 / x13)
    ti_124 = max(x14 / 16, 16 / x14)
    ti_134 = max(x14 / x13, x13 / x14)
    ti_234 = max(8, 1 / 8)
    return np.sort([ti_123, ti_124, ti_134, ti_234])[::-1]


class TestValidation:
    def test_2x2_reciprocal_is_valid_and_complete(self):
        m = validate_reciprocal([[1, 2], [0.5, 1]])
        assert m.is_complete
        assert m.missing_pairs == ()

    def test_example2_missing_set(self, example2):
        assert example2.missing_pairs == ((0, 2), (0, 3))
        assert example2[1, 3] == 8
        assert example2[0, 2] is None

    def test_reciprocity_violation_reports_worst_pair(self):
        with pytest.raises(ReciprocityViolationError) as err:
            validate_reciprocal([[1, 2], [3, 1]])
        assert err.value.pair == (0, 1)

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            validate_reciprocal([[1, 2, 3], [0.5, 1, 1]])

    def test_order_one_rejected(self):
        with pytest.raises(NonSquareError):
            validate_reciprocal([[1]])

    def test_non_positive_entry(self):
        with pytest.raises(NonPositiveEntryError):
            validate_reciprocal([[1, -2], [-0.5, 1]])

    def test_asymmetric_missingness(self):
        with pytest.raises(AsymmetricMissingnessError):
            validate_reciprocal([[1, 2, None], [0.5, 1, 4], [3, 0.25, 1]])

    def test_missing_diagonal_rejected(self):
        with pytest.raises(AsymmetricMissingnessError):
            validate_reciprocal([[None, 2], [0.5, 1]])

    def test_bad_diagonal_rejected(self):
        with pytest.raises(ReciprocityViolationError):
            validate_reciprocal([[2, 2], [0.5, 1]])

    def test_reciprocity_closure_is_exact_by_construction(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            m = validate_reciprocal(random_reciprocal(n, rng))
            for i in range(n):
                for j in range(i + 1, n):
                    # lower triangle is derived, not independently stored
                    assert m.entries[j, i] == 1.0 / m.entries[i, j]

    def test_nan_treated_as_missing(self):
        m = validate_reciprocal(
            np.array([[1, 2, np.nan], [0.5, 1, 4], [np.nan, 0.25, 1]])
        )
        assert m.missing_pairs == ((0, 2),)


class TestConsistency:
    def test_ratio_matrix_is_consistent(self):
        m = ratio_matrix([1, 2, 4])
        assert is_consistent(m, 1e-9)

    def test_example2_completion_is_inconsistent(self):
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        assert not is_consistent(m, 1e-9)
        assert triad_ti(m, TriadIndex(1, 2, 3)) == pytest.approx(8.0)

    def test_2x2_always_consistent(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            v = float(np.exp(rng.normal(0, 1)))
            m = CompleteMatrix.from_array([[1, v], [1 / v, 1]])
            assert is_consistent(m, 1e-9)


class TestTriadTi:
    def test_consistent_triad_is_one(self):
        m = ratio_matrix([1, 2, 4, 8])
        for t in itertools.combinations(range(4), 3):
            assert triad_ti(m, TriadIndex(*t)) == pytest.approx(1.0)

    def test_known_triad_value(self):
        # a23 = 1, a24 = 8, a34 = 1 pins the triad at 8
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        assert triad_ti(m, TriadIndex(1, 2, 3)) == pytest.approx(8.0)

    def test_single_missing_formula_at_4(self):
        # a12 = 2, a23 = 1, so TI over (1,2,3) is max(x/2, 2/x); x = 4 gives 2
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        assert triad_ti(m, TriadIndex(0, 1, 2)) == pytest.approx(2.0)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            m = CompleteMatrix.from_array(random_reciprocal(5, rng))
            i, j, k = map(int, rng.choice(5, size=3, replace=False))
            vals = {
                triad_ti(m, TriadIndex(*perm))
                for perm in itertools.permutations((i, j, k))
            }
            assert max(vals) - min(vals) < 1e-12


class TestProfile:
    def test_consistent_profile_all_ones(self):
        prof = inconsistency_profile(ratio_matrix([3, 1, 4, 2]))
        assert prof.theta == pytest.approx(np.ones(4))

    def test_example2_profile(self):
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        prof = inconsistency_profile(m)
        assert prof.theta == pytest.approx(example2_theta_oracle(4.0, 8.0))
        assert prof.theta == pytest.approx([8.0, 2.0, 2.0, 2.0])

    def test_profile_sorted_and_sized(self):
        rng = np.random.default_rng(11)
        for n in (3, 5, 7):
            m = CompleteMatrix.from_array(random_reciprocal(n, rng))
            prof = inconsistency_profile(m)
            assert len(prof.theta) == n * (n - 1) * (n - 2) // 6
            assert np.all(np.diff(prof.theta) <= 0)
            assert np.all(prof.theta >= 1.0)

    def test_n3_single_element(self):
        m = CompleteMatrix.from_array([[1, 2, 2], [0.5, 1, 3], [0.5, 1 / 3, 1]])
        assert inconsistency_profile(m).theta.shape == (1,)

    def test_too_small(self):
        with pytest.raises(MatrixTooSmallError):
            inconsistency_profile(CompleteMatrix.from_array([[1, 2], [0.5, 1]]))

    def test_consistency_iff_profile_at_one(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n = int(rng.integers(3, 7))
            if rng.random() < 0.5:
                m = ratio_matrix(np.exp(rng.normal(0, 1, n)))
            else:
                m = CompleteMatrix.from_array(random_reciprocal(n, rng))
            prof = inconsistency_profile(m)
            assert is_consistent(m, 1e-9) == bool(np.all(prof.theta <= 1 + 1e-9))


class TestKoczkodaj:
    def test_consistent_is_zero(self):
        assert koczkodaj_ki(ratio_matrix([1, 2, 4])) == pytest.approx(0.0, abs=1e-12)

    def test_example2_value(self):
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        assert koczkodaj_ki(m) == pytest.approx(0.875, abs=1e-12)

    def test_identity_with_max_ti(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(3, 8))
            m = CompleteMatrix.from_array(random_reciprocal(n, rng))
            prof = inconsistency_profile(m)
            assert abs(koczkodaj_ki(m) - (1 - 1 / prof.max_ti)) <= 1e-12
            assert 0.0 <= koczkodaj_ki(m) < 1.0


class TestLambdaMax:
    def test_consistent_equals_n(self):
        for n in (3, 4, 6):
            v = np.arange(1, n + 1, dtype=float)
            assert saaty_lambda_max(ratio_matrix(v)) == pytest.approx(n, abs=1e-9)

    def test_all_ones_matrix(self):
        m = CompleteMatrix.from_array(np.ones((4, 4)))
        assert saaty_lambda_max(m) == pytest.approx(4.0, abs=1e-9)

    def test_against_dense_eigensolver(self):
        m = CompleteMatrix.from_array(EXAMPLE2_COMPLETED)
        lam = saaty_lambda_max(m)
        assert lam >= 4.0
        assert lam == pytest.approx(dense_lambda_max(m.entries), abs=1e-9)

    def test_lower_bound_and_equality_iff_consistent(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            n = int(rng.integers(3, 7))
            base = np.exp(rng.normal(0, 1, n))
            m = ratio_matrix(base)
            assert saaty_lambda_max(m) == pytest.approx(n, abs=1e-9)
            # multiplicative noise breaks consistency and lifts the eigenvalue
            noisy = m.entries.copy()
            noisy[0, 1] *= 2.0
            noisy[1, 0] = 1.0 / noisy[0, 1]
            mp = CompleteMatrix.from_array(noisy)
            assert not is_consistent(mp, 1e-9)
            assert saaty_lambda_max(mp) > n + 1e-9


class TestOrdinalViolation:
    def test_clean_pair(self):
        a = validate_reciprocal([[1, 2], [0.5, 1]])
        assert check_ordinal_violation(a, [0.6, 0.4]) == []

    def test_strict_violation(self):
        a = validate_reciprocal([[1, 2], [0.5, 1]])
        out = check_ordinal_violation(a, [0.4, 0.6])
        assert len(out) == 1
        assert (out[0].i, out[0].j, out[0].kind) == (0, 1, "strict")

    def test_equality_branch(self):
        a = validate_reciprocal([[1, 1.0], [1.0, 1]])
        assert check_ordinal_violation(a, [0.5, 0.5]) == []
        out = check_ordinal_violation(a, [0.7, 0.3])
        assert len(out) == 1 and out[0].kind == "equality"

    def test_dimension_mismatch(self):
        a = validate_reciprocal([[1, 2], [0.5, 1]])
        with pytest.raises(DimensionMismatchError):
            check_ordinal_violation(a, [0.2, 0.3, 0.5])

    def test_consistent_matrix_row_means_have_no_violation(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            n = int(rng.integers(3, 8))
            m = ratio_matrix(np.exp(rng.normal(0, 1, n)))
            w = llsm_weights(m)
            inc = validate_reciprocal(m.entries.astype(object))
            assert check_ordinal_violation(inc, w) == []

    def test_missing_pairs_are_ignored(self, example2):
        # only known pairs can violate; (0,2) and (0,3) never appear
        out = check_ordinal_violation(example2, [0.1, 0.2, 0.3, 0.4])
        assert all((v.i, v.j) not in {(0, 2), (0, 3), (2, 0), (3, 0)} for v in out)


class TestWeightVector:
    def test_normalization(self):
        w = WeightVector.from_raw([2.0, 2.0])
        assert w.w == pytest.approx([0.5, 0.5])
        assert abs(w.w.sum() - 1.0) <= 1e-12

    def test_positive_required(self):
        with pytest.raises(NonPositiveEntryError):
            WeightVector.from_raw([1.0, 0.0])
