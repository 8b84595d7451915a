import json
import math

import numpy as np
import pytest

from nonharmonic import CosineTerm, Kind, SignalModel, canonicalize, model_from_dict, model_to_dict
from nonharmonic.errors import DuplicateFrequencyError


def test_canonicalize_sorts_by_frequency():
    model = canonicalize(
        [CosineTerm(1.0, math.sqrt(3.0)), CosineTerm(1.0, math.sqrt(2.0))]
    )
    assert [t.freq for t in model.terms] == [math.sqrt(2.0), math.sqrt(3.0)]


def test_canonicalize_trig_before_hyperbolic():
    model = canonicalize(
        [
            CosineTerm(1.0, 0.5, 0.0, Kind.HYPERBOLIC),
            CosineTerm(1.0, 2.0),
            CosineTerm(1.0, 1.5, -0.3, Kind.HYPERBOLIC),
        ]
    )
    assert [t.kind for t in model.terms] == [Kind.TRIG, Kind.HYPERBOLIC, Kind.HYPERBOLIC]
    assert model.terms[1].freq == 0.5


def test_canonicalize_reduces_trig_phase_mod_2pi():
    model = canonicalize([CosineTerm(1.0, 1.0, -0.1)])
    assert model.terms[0].phase == pytest.approx(2 * math.pi - 0.1, abs=1e-15)


def test_hyperbolic_phase_not_reduced():
    model = canonicalize([CosineTerm(1.0, 1.0, -7.5, Kind.HYPERBOLIC)])
    assert model.terms[0].phase == -7.5


def test_duplicate_frequency_rejected():
    with pytest.raises(DuplicateFrequencyError):
        canonicalize([CosineTerm(1.0, math.sqrt(2.0)), CosineTerm(2.0, math.sqrt(2.0))])


def test_same_frequency_different_kind_allowed():
    model = canonicalize(
        [CosineTerm(1.0, 2.0), CosineTerm(1.0, 2.0, 0.0, Kind.HYPERBOLIC)]
    )
    assert len(model.terms) == 2


def test_canonicalize_idempotent_and_order_insensitive(rng):
    for _ in range(25):
        count = int(rng.integers(1, 6))
        terms = [
            CosineTerm(
                float(rng.uniform(0.1, 5.0)),
                float(rng.uniform(0.1, 20.0)),
                float(rng.uniform(-10, 10)),
                Kind.TRIG if rng.random() < 0.7 else Kind.HYPERBOLIC,
            )
            for _ in range(count)
        ]
        model = canonicalize(terms, constant=float(rng.normal()))
        again = canonicalize(model.terms, model.constant)
        assert again == model
        perm = [terms[i] for i in rng.permutation(count)]
        assert canonicalize(perm, model.constant) == model


def test_evaluate_two_cosines_at_zero():
    model = canonicalize(
        [CosineTerm(1.0, math.sqrt(2.0)), CosineTerm(1.0, math.sqrt(3.0))]
    )
    assert model.evaluate(0.0) == pytest.approx(2.0, abs=1e-15)


def test_evaluate_constant_only():
    model = SignalModel(constant=5.0)
    assert model.evaluate(123.45) == 5.0


def test_evaluate_cosh_at_zero():
    model = canonicalize([CosineTerm(2.0, 1.0, 0.0, Kind.HYPERBOLIC)])
    assert model.evaluate(0.0) == pytest.approx(2.0, abs=1e-15)


def test_evaluate_at_zero_matches_direct_sum(rng):
    for _ in range(20):
        terms = [
            CosineTerm(
                float(rng.uniform(0.1, 3.0)),
                float(rng.uniform(0.1, 9.0)),
                float(rng.uniform(0, 2 * math.pi)),
                Kind.TRIG if rng.random() < 0.5 else Kind.HYPERBOLIC,
            )
            for _ in range(int(rng.integers(1, 5)))
        ]
        const = float(rng.normal())
        model = canonicalize(terms, const)
        expected = const + sum(
            t.gamma * (math.cos(t.phase) if t.kind is Kind.TRIG else math.cosh(t.phase))
            for t in terms
        )
        assert model.evaluate(0.0) == pytest.approx(expected, rel=1e-14, abs=1e-14)


def test_evaluate_vectorized_matches_scalar(rng):
    model = canonicalize(
        [CosineTerm(1.3, 2.7, 0.4), CosineTerm(0.6, 0.8, -0.2, Kind.HYPERBOLIC)], 1.5
    )
    t = rng.uniform(-2, 2, size=17)
    vec = model.evaluate(t)
    assert vec.shape == (17,)
    for ti, vi in zip(t, vec):
        assert vi == pytest.approx(model.evaluate(float(ti)), rel=1e-15)


def test_term_validation():
    with pytest.raises(ValueError):
        CosineTerm(0.0, 1.0)
    with pytest.raises(ValueError):
        CosineTerm(-1.0, 1.0)
    with pytest.raises(ValueError):
        CosineTerm(1.0, 0.0)


def test_json_round_trip(tmp_path):
    model = canonicalize(
        [CosineTerm(1.5, math.sqrt(2.0), 0.25), CosineTerm(0.5, 1.1, 1.0, Kind.HYPERBOLIC)],
        constant=-2.0,
    )
    payload = model_to_dict(model, period=4.0)
    text = json.dumps(payload)
    back, period = model_from_dict(json.loads(text))
    assert period == 4.0
    assert back == model
    assert payload["terms"][0]["kind"] == "trig"
    assert payload["terms"][1]["kind"] == "hyperbolic"
