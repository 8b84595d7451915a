"""Sparse cosine/cosh sum model: terms, canonical form, time-domain evaluation.

A signal is a finite sum

    f(t) = c0 + sum_j gamma_j * cos(2*pi*a_j*t + b_j)    (trig terms)
              + sum_j gamma_j * cosh(2*pi*a_j*t + b_j)   (hyperbolic terms)

with positive amplitudes and pairwise distinct (kind, frequency) pairs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateFrequencyError

TWO_PI = 2.0 * math.pi

#: Relative tolerance used to flag two frequencies as duplicates.
FREQ_DUPLICATE_RTOL = 1e-12


class Kind(str, enum.Enum):
    TRIG = "trig"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class CosineTerm:
    """One term gamma * cos(2*pi*freq*t + phase) (or cosh for hyperbolic kind).

    Amplitude and frequency must be positive. Phases are accepted as arbitrary
    reals; ``canonicalize`` reduces trig phases into [0, 2*pi). Hyperbolic
    phases are unrestricted (cosh is not periodic).
    """

    gamma: float
    freq: float
    phase: float = 0.0
    kind: Kind = Kind.TRIG

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ValueError(f"amplitude must be positive, got {self.gamma}")
        if not self.freq > 0.0:
            raise ValueError(f"frequency must be positive, got {self.freq}")

    def evaluate(self, t):
        arg = TWO_PI * self.freq * np.asarray(t, dtype=float) + self.phase
        if self.kind is Kind.TRIG:
            return np.cos(arg)[()] * self.gamma
        return np.cosh(arg)[()] * self.gamma


@dataclass(frozen=True)
class SignalModel:
    """Canonically ordered sum of cosine/cosh terms plus a signed constant."""

    terms: tuple[CosineTerm, ...] = ()
    constant: float = 0.0

    def evaluate(self, t):
        """Evaluate the signal at time(s) t (scalar or array)."""
        out = np.full_like(np.asarray(t, dtype=float), self.constant)
        for term in self.terms:
            out = out + term.evaluate(t)
        return out[()]

    @property
    def trig_terms(self) -> tuple[CosineTerm, ...]:
        return tuple(u for u in self.terms if u.kind is Kind.TRIG)

    @property
    def hyperbolic_terms(self) -> tuple[CosineTerm, ...]:
        return tuple(u for u in self.terms if u.kind is Kind.HYPERBOLIC)


def canonicalize(terms, constant: float = 0.0) -> SignalModel:
    """Build the canonical model: trig phases reduced mod 2*pi, terms sorted.

    Sorting puts all trig terms first (ascending frequency), then all
    hyperbolic terms (ascending frequency), so structural equality compares
    models. Raises DuplicateFrequencyError when two terms share (kind, freq)
    within relative tolerance 1e-12.
    """
    reduced = []
    for term in terms:
        if term.kind is Kind.TRIG:
            phase = term.phase % TWO_PI
            # The modulo can round up to 2*pi when phase is a tiny negative.
            if phase >= TWO_PI:
                phase -= TWO_PI
            reduced.append(CosineTerm(term.gamma, term.freq, phase, Kind.TRIG))
        else:
            reduced.append(term)

    ordered = sorted(reduced, key=lambda u: (u.kind is Kind.HYPERBOLIC, u.freq))
    for prev, cur in zip(ordered, ordered[1:]):
        if prev.kind is cur.kind and math.isclose(
            prev.freq, cur.freq, rel_tol=FREQ_DUPLICATE_RTOL, abs_tol=0.0
        ):
            raise DuplicateFrequencyError(
                f"terms share frequency {cur.freq} (kind={cur.kind.value})"
            )
    return SignalModel(tuple(ordered), float(constant))


def evaluate(model: SignalModel, t):
    """Functional alias for SignalModel.evaluate."""
    return model.evaluate(t)


def model_to_dict(model: SignalModel, period: float) -> dict:
    """JSON-ready dict. The period rides along for CLI round trips."""
    return {
        "P": float(period),
        "constant": float(model.constant),
        "terms": [
            {
                "kind": u.kind.value,
                "gamma": float(u.gamma),
                "freq": float(u.freq),
                "phase": float(u.phase),
            }
            for u in model.terms
        ],
    }


def model_from_dict(payload: dict) -> tuple[SignalModel, float]:
    """Parse the model JSON schema; returns (model, period)."""
    period = float(payload["P"])
    terms = [
        CosineTerm(
            gamma=float(u["gamma"]),
            freq=float(u["freq"]),
            phase=float(u["phase"]),
            kind=Kind(u["kind"]),
        )
        for u in payload.get("terms", [])
    ]
    return canonicalize(terms, float(payload.get("constant", 0.0))), period


def save_model(model: SignalModel, period: float, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model, period), fh, indent=2)
        fh.write("\n")


def load_model(path) -> tuple[SignalModel, float]:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
