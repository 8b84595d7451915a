"""Shared fixtures: the two benchmark models and random-model generators."""

import math

import numpy as np
import pytest

from nonharmonic import CosineTerm, Kind, SignalModel, canonicalize


def exp1_model() -> SignalModel:
    """Six cosines, two of which are periodic on (0, 4) and (0, 8)."""
    return canonicalize(
        [
            CosineTerm(1.0, 5.0),
            CosineTerm(1.0, 4.9),
            CosineTerm(2.0, 1.0),
            CosineTerm(1.0, 0.96),
            CosineTerm(1.0, 0.92),
            CosineTerm(1.0, 0.9),
        ]
    )


def exp2_model() -> SignalModel:
    """Five square-root frequencies plus one 1-periodic term."""
    return canonicalize(
        [
            CosineTerm(0.5, math.sqrt(89.0), 0.5),
            CosineTerm(3.0, math.sqrt(29.0), 0.7),
            CosineTerm(2.0, math.sqrt(21.0), 0.0),
            CosineTerm(2.0, math.sqrt(3.0), 0.3),
            CosineTerm(1.0, math.sqrt(2.0), 0.2),
            CosineTerm(1.0, 4.0, 0.2),
        ]
    )


def draw_trig_scaled_freqs(rng, count, lo=1.5, hi=14.0, sep=0.6, int_gap=0.1):
    """Draw freq*P values: separated, away from integers."""
    xs = []
    while len(xs) < count:
        x = float(rng.uniform(lo, hi))
        if abs(x - round(x)) < int_gap:
            continue
        if any(abs(x - y) < sep for y in xs):
            continue
        xs.append(x)
    return xs


def random_nonperiodic_model(rng, K, period) -> SignalModel:
    """Trig-only model with no P-periodic terms; well-separated poles."""
    xs = draw_trig_scaled_freqs(rng, K)
    return canonicalize(
        [
            CosineTerm(
                float(rng.uniform(0.5, 3.0)), x / period, float(rng.uniform(0, 2 * math.pi))
            )
            for x in xs
        ]
    )


def random_mixed_model(rng, K, period, max_index) -> SignalModel:
    """Mixed trig/hyperbolic model with up to two periodic terms and a constant.

    Periodic frequencies are integers/P within the given index range so their
    spikes are observable.
    """
    n_per = int(rng.integers(0, min(2, K) + 1))
    n_hyp = int(rng.integers(0, min(2, K - n_per) + 1))
    n_trig = K - n_per - n_hyp
    terms = []
    for x in draw_trig_scaled_freqs(rng, n_trig):
        terms.append(
            CosineTerm(
                float(rng.uniform(0.5, 3.0)), x / period, float(rng.uniform(0, 2 * math.pi))
            )
        )
    if n_per:
        for n in rng.choice(np.arange(1, max_index + 1), size=n_per, replace=False):
            terms.append(
                CosineTerm(
                    float(rng.uniform(0.5, 3.0)),
                    float(n) / period,
                    float(rng.uniform(0, 2 * math.pi)),
                )
            )
    hs = []
    for _ in range(n_hyp):
        while True:
            x = float(rng.uniform(0.5, 1.6))
            if all(abs(x - y) >= 0.4 for y in hs):
                hs.append(x)
                break
        terms.append(
            CosineTerm(
                float(rng.uniform(0.5, 3.0)),
                hs[-1] / period,
                float(rng.uniform(-1.5, 1.5)),
                Kind.HYPERBOLIC,
            )
        )
    constant = float(rng.uniform(-3.0, 3.0)) if rng.random() < 0.7 else 0.0
    return canonicalize(terms, constant)


def phase_distance(b1: float, b2: float, kind: Kind = Kind.TRIG) -> float:
    if kind is Kind.HYPERBOLIC:
        return abs(b1 - b2)
    d = abs(b1 - b2) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def max_term_errors(truth: SignalModel, recovered: SignalModel):
    """Termwise sup-norm errors (freq, phase, amplitude) in canonical order."""
    assert len(truth.terms) == len(recovered.terms), (
        f"term count {len(recovered.terms)} != {len(truth.terms)}"
    )
    da = db = dg = 0.0
    for t, r in zip(truth.terms, recovered.terms):
        assert t.kind is r.kind
        da = max(da, abs(r.freq - t.freq))
        db = max(db, phase_distance(t.phase, r.phase, t.kind))
        dg = max(dg, abs(r.gamma - t.gamma))
    return da, db, dg


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
