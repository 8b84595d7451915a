import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from nonharmonic import (
    CosineTerm,
    FourierSumRecovery,
    canonicalize,
    coefficients,
    validate_coefficient_arrays,
)


def test_fit_predict_round_trip():
    truth = canonicalize(
        [CosineTerm(1.0, math.sqrt(2.0)), CosineTerm(1.0, math.sqrt(3.0))]
    )
    data = coefficients(truth, 1.0, range(1, 8))
    est = FourierSumRecovery(period=1.0).fit(data.indices, data.values)
    assert est.n_terms_ == 2
    t = np.linspace(0.0, 1.0, 33)
    assert np.allclose(est.predict(t), truth.evaluate(t), atol=1e-9)


def test_fit_accepts_column_vector_and_c0():
    truth = canonicalize([CosineTerm(2.0, math.sqrt(5.0), 0.3)], constant=1.5)
    data = coefficients(truth, 2.0, range(0, 6))
    X = np.concatenate([[0], data.indices])[:, None]
    y = np.concatenate([[data.c0], data.values])
    est = FourierSumRecovery(period=2.0).fit(X, y)
    assert est.model_.constant == pytest.approx(1.5, abs=1e-9)


def test_get_set_params_and_clone():
    est = FourierSumRecovery(period=4.0, tol=1e-12, mmax=9)
    params = est.get_params()
    assert params["period"] == 4.0 and params["tol"] == 1e-12 and params["mmax"] == 9
    other = clone(est)
    assert other.get_params() == params
    other.set_params(periodic_eps=1e-5)
    assert other.periodic_eps == 1e-5


def test_sigma_attribute():
    truth = canonicalize([CosineTerm(1.0, 2.0, 0.1), CosineTerm(1.0, math.sqrt(2.0))])
    data = coefficients(truth, 1.0, range(1, 7))
    est = FourierSumRecovery(period=1.0).fit(data.indices, data.values)
    assert est.sigma_ == {2}


def test_predict_before_fit_raises():
    with pytest.raises(NotFittedError):
        FourierSumRecovery().predict([0.0])


def test_validation_rejects_bad_inputs():
    with pytest.raises(ValueError):
        validate_coefficient_arrays([1.5, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        validate_coefficient_arrays([1, 1], [1.0, 2.0])
    with pytest.raises(ValueError):
        validate_coefficient_arrays([-1, 2], [1.0, 2.0])
    with pytest.raises(ValueError):
        validate_coefficient_arrays([1, 2], [1.0])
    with pytest.raises(ValueError):
        validate_coefficient_arrays([1, 2], [np.nan, 1.0])
    with pytest.raises(ValueError):
        validate_coefficient_arrays(np.ones((2, 2)), np.ones(4))


def test_validation_splits_c0():
    idx, values, c0 = validate_coefficient_arrays([0, 1, 2], [5.0, 1.0j, 2.0])
    assert c0 == 5.0 + 0j
    assert list(idx) == [1, 2]
    assert list(values) == [1.0j, 2.0 + 0j]


def test_invalid_period_rejected():
    est = FourierSumRecovery(period=-1.0)
    with pytest.raises(ValueError):
        est.fit([1, 2, 3], [1.0, 2.0, 3.0])
