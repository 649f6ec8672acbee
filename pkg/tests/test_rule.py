"""Tests for quadrature rule construction and derivative weights."""

import math

import numpy as np
import pytest

from quadsum.errors import NumericalError, ValidationError
from quadsum.families import Charlier, Krawtchouk, Meixner, recurrence
from quadsum.jacobi import JacobiMatrix, build, power_element
from quadsum.rule import (
    InterlacingError,
    QuadratureRule,
    derivative_weights,
    gauss_rule,
    gauss_rule_eigenvalue_only,
)


class TestGaussRule:
    def test_one_point(self):
        r = gauss_rule(build(recurrence(Charlier(2.0)), 1))
        assert r.nodes.tolist() == [2.0]
        assert r.weights.tolist() == [1.0]
        assert r.order == 1

    def test_charlier_two_point(self):
        r = gauss_rule(build(recurrence(Charlier(2.0)), 2))
        assert r.nodes == pytest.approx([1.0, 4.0], rel=1e-14)
        assert r.weights == pytest.approx([2.0 / 3.0, 1.0 / 3.0], rel=1e-14)

    def test_mean_matches_first_matrix_element(self):
        st = recurrence(Charlier(2.0))
        r = gauss_rule(build(st, 2))
        mean = math.fsum(w * x for x, w in zip(r.nodes, r.weights))
        assert mean == pytest.approx(power_element(st, 1, 0, 0), rel=1e-14)

    def test_unit_mass_and_positivity(self):
        for spec, n in [(Charlier(2.0), 15), (Meixner(2.0, 0.6), 15), (Krawtchouk(100, 0.01), 50)]:
            r = gauss_rule(build(recurrence(spec), n))
            assert abs(math.fsum(r.weights.tolist()) - 1.0) <= 1e-12
            assert np.all(r.weights > 0.0)
            assert np.all(np.diff(r.nodes) > 0.0)


class TestEigenvalueOnlyRule:
    def test_two_point_arithmetic(self):
        # w0 = (1-3)/(1-4), w1 = (4-3)/(4-1) by direct substitution
        r = gauss_rule_eigenvalue_only(build(recurrence(Charlier(2.0)), 2))
        assert r.weights == pytest.approx([2.0 / 3.0, 1.0 / 3.0], rel=1e-13)

    def test_agrees_with_eigenvector_route(self):
        j = build(recurrence(Charlier(2.0)), 5)
        a = gauss_rule(j)
        b = gauss_rule_eigenvalue_only(j)
        assert np.max(np.abs(b.weights - a.weights) / a.weights) < 1e-11
        assert np.array_equal(a.nodes, b.nodes)

    def test_needs_two_points(self):
        with pytest.raises(ValidationError):
            gauss_rule_eigenvalue_only(build(recurrence(Charlier(2.0)), 1))

    def test_interlacing_breakdown_detected(self):
        # eigenvalues of this matrix coincide to machine precision, so the
        # submatrix spectrum cannot strictly separate them
        j = JacobiMatrix(np.array([1.0, 1.0]), np.array([1e-300]))
        with pytest.raises(InterlacingError):
            gauss_rule_eigenvalue_only(j)

    def test_log_space_survives_product_overflow(self):
        # a power-of-two rescaling leaves the weights unchanged (exactly, in
        # floating point) while blowing the raw spacing products past the
        # double range; the log-space route must not care
        base = build(recurrence(Charlier(2500.0)), 8)
        scale = 2.0**145
        j = JacobiMatrix(base.diag * scale, base.offdiag * scale)
        r5 = gauss_rule(j)
        r6 = gauss_rule_eigenvalue_only(j)
        with np.errstate(over="ignore"):
            naive = max(
                np.prod(np.abs(r6.nodes[k] - np.delete(r6.nodes, k)))
                for k in range(r6.order)
            )
        assert math.isinf(naive)
        assert np.all(np.isfinite(r6.weights)) and np.all(r6.weights > 0.0)
        assert np.max(np.abs(r6.weights - r5.weights) / r5.weights) < 1e-9


class TestQuadratureRuleValidation:
    def test_rejects_unsorted_nodes(self):
        with pytest.raises(NumericalError, match="increasing"):
            QuadratureRule(np.array([1.0, 1.0]), np.array([0.5, 0.5]))

    def test_rejects_negative_weights(self):
        with pytest.raises(NumericalError, match="negative"):
            QuadratureRule(np.array([0.0, 1.0]), np.array([1.1, -0.1]))

    def test_rejects_wrong_mass(self):
        with pytest.raises(NumericalError, match="sum"):
            QuadratureRule(np.array([0.0, 1.0]), np.array([0.6, 0.6]))

    def test_rejects_nonfinite(self):
        with pytest.raises(NumericalError):
            QuadratureRule(np.array([0.0, math.nan]), np.array([0.5, 0.5]))


class TestDerivativeWeights:
    def test_unit_weight_function(self):
        r = gauss_rule(build(recurrence(Charlier(2.0)), 4))
        assert derivative_weights(r, lambda x: 1.0) == pytest.approx(r.weights)

    def test_constant_weight_function(self):
        r = gauss_rule(build(recurrence(Charlier(2.0)), 4))
        assert derivative_weights(r, lambda x: 2.0) == pytest.approx(r.weights / 2.0)

    def test_positive_outputs(self):
        spec = Charlier(2.0)
        from quadsum.families import measure

        chi = measure(spec).discrete.density
        r = gauss_rule(build(recurrence(spec), 7))
        assert np.all(derivative_weights(r, chi) > 0.0)

    def test_rejects_nonpositive_weight_function(self):
        r = gauss_rule(build(recurrence(Charlier(2.0)), 3))
        with pytest.raises(ValidationError, match="positive"):
            derivative_weights(r, lambda x: 0.0)
        with pytest.raises(ValidationError, match="positive"):
            derivative_weights(r, lambda x: -1.0)
        with pytest.raises(ValidationError, match="positive"):
            derivative_weights(r, lambda x: math.nan)
