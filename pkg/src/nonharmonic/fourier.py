"""Fourier coefficients of sparse cosine/cosh sums on (0, P).

Coefficients follow the analysis convention

    c_n = (1/P) * integral_0^P f(t) * exp(-2*pi*i*n*t/P) dt.

For a trig term with x = freq * P not an integer,

    Re c_n = gamma * x * sin(pi*x) * cos(pi*x + b) / (pi * (x^2 - n^2)),
    Im c_n = gamma * n * sin(pi*x) * sin(pi*x + b) / (pi * (x^2 - n^2)),

which is the rational form (A + i*B*n) / (n^2 - C) with C = x^2. When x is an
integer m the term is P-periodic and only c_m = gamma/2 * (cos b + i sin b)
survives (verified against quadrature; the sign of the imaginary part follows
from the kernel convention above). Hyperbolic terms give the same rational
form with C = -x^2 < 0, so their coefficients never vanish.

This module also provides the modified-coefficient transform
c~_n = Re c_n + (i/n) Im c_n, its exact inverse, the forward parameter map
(A, B, C), an adaptive-quadrature oracle, and CSV I/O for coefficient files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import PeriodicTermError, QuadratureNoConvergenceError
from .model import CosineTerm, Kind, SignalModel

#: |freq * P - round(freq * P)| below this counts as exactly P-periodic.
PERIODIC_ATOL = 1e-8


@dataclass(frozen=True)
class FourierData:
    """Indexed Fourier coefficients {(n, c_n) : n >= 1} plus optional c_0."""

    period: float
    indices: np.ndarray
    values: np.ndarray
    c0: complex | None = None

    def __post_init__(self):
        indices = np.asarray(self.indices, dtype=int)
        values = np.asarray(self.values, dtype=complex)
        if not self.period > 0.0:
            raise ValueError(f"period must be positive, got {self.period}")
        if indices.ndim != 1 or values.shape != indices.shape:
            raise ValueError("indices and values must be matching 1-d arrays")
        if indices.size and indices.min() < 1:
            raise ValueError("coefficient indices must be >= 1 (c_0 is separate)")
        if len(np.unique(indices)) != len(indices):
            raise ValueError("coefficient indices must be pairwise distinct")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class ModifiedCoefficients:
    """Transformed samples c~_n = Re c_n + (i/n) Im c_n, indices n >= 1."""

    period: float
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        indices = np.asarray(self.indices, dtype=int)
        values = np.asarray(self.values, dtype=complex)
        if indices.size and indices.min() < 1:
            raise ValueError("modified coefficients are defined for n >= 1 only")
        if len(np.unique(indices)) != len(indices):
            raise ValueError("indices must be pairwise distinct")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.indices)


class AbcTriple(tuple):
    """Partial-fraction triple: c_n(term) = (A + i*B*n) / (n^2 - C)."""

    __slots__ = ()

    def __new__(cls, A: float, B: float, C: float):
        return super().__new__(cls, (float(A), float(B), float(C)))

    @property
    def A(self) -> float:
        return self[0]

    @property
    def B(self) -> float:
        return self[1]

    @property
    def C(self) -> float:
        return self[2]


def _trig_coefficient(gamma: float, freq: float, phase: float, period: float, n: int) -> complex:
    # Split x = freq*P into nearest integer m and remainder delta; then
    # sin(pi*x)*cos(pi*x+b) = sin(pi*delta)*cos(pi*delta+b) (the (-1)^m pair
    # cancels) and x - n = delta is exact when n = m. Evaluating through delta
    # keeps the removable singularity at x -> m benign.
    x = freq * period
    m = round(x)
    delta = x - m
    cos_term = math.cos(math.pi * delta + phase)
    sin_term = math.sin(math.pi * delta + phase)
    if n == m:
        # sinc(delta) = sin(pi*delta)/(pi*delta); exact limit at delta = 0.
        scale = gamma * float(np.sinc(delta)) / (x + n)
        return complex(scale * x * cos_term, scale * n * sin_term)
    s = math.sin(math.pi * delta)
    denom = math.pi * (x - n) * (x + n)
    return complex(
        gamma * x * s * cos_term / denom,
        gamma * n * s * sin_term / denom,
    )


def _hyperbolic_coefficient(gamma, freq, phase, period, n) -> complex:
    x = freq * period
    sh = math.sinh(math.pi * x)
    denom = math.pi * (x * x + n * n)
    return complex(
        gamma * x * sh * math.cosh(math.pi * x + phase) / denom,
        gamma * n * sh * math.sinh(math.pi * x + phase) / denom,
    )


def coefficient_closed_form(term: CosineTerm, period: float, n: int) -> complex:
    """Closed-form c_n of a single term on (0, period), n >= 0."""
    if term.kind is Kind.TRIG:
        return _trig_coefficient(term.gamma, term.freq, term.phase, period, n)
    return _hyperbolic_coefficient(term.gamma, term.freq, term.phase, period, n)


def coefficients(model: SignalModel, period: float, indices) -> FourierData:
    """Exact Fourier coefficients of a model at the given indices.

    Index 0, if requested, is returned in the ``c0`` slot and includes the
    model constant (the constant contributes to c_0 only).
    """
    indices = np.asarray(indices, dtype=int)
    c0 = None
    if (indices == 0).any():
        c0 = complex(model.constant) + sum(
            (coefficient_closed_form(u, period, 0) for u in model.terms), 0j
        )
        indices = indices[indices != 0]
    values = np.array(
        [
            sum((coefficient_closed_form(u, period, int(n)) for u in model.terms), 0j)
            for n in indices
        ],
        dtype=complex,
    )
    return FourierData(period, indices, values, c0)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)

#: Maximum number of integrand evaluations before giving up.
QUADRATURE_BUDGET = 1 << 20


def _panel(f, lo: float, hi: float) -> complex:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return half * complex(np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES)))


def coefficient_quadrature(model: SignalModel, period: float, n: int, tol: float = 1e-10) -> complex:
    """Independent oracle: c_n by adaptive bisection quadrature.

    Panels use a fixed 15-point Gauss-Legendre rule; a panel is accepted when
    halving it changes the estimate by less than its share of ``tol``.
    Raises QuadratureNoConvergenceError once the evaluation budget is spent.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")

    def integrand(t):
        return model.evaluate(t) * np.exp(-2j * np.pi * n * t / period)

    evals = 0
    total = 0j
    stack = [(0.0, period, _panel(integrand, 0.0, period), tol * period)]
    evals += _GL_NODES.size
    while stack:
        lo, hi, coarse, budget_tol = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(integrand, lo, mid)
        right = _panel(integrand, mid, hi)
        evals += 2 * _GL_NODES.size
        if evals > QUADRATURE_BUDGET:
            raise QuadratureNoConvergenceError(
                f"no convergence to tol={tol} within {QUADRATURE_BUDGET} evaluations"
            )
        fine = left + right
        # Second clause: halving differences at the rounding floor of the
        # panel value cannot be refined away in double precision.
        if abs(fine - coarse) <= budget_tol or abs(fine - coarse) <= 1e-14 * abs(fine):
            total += fine
        else:
            stack.append((lo, mid, left, 0.5 * budget_tol))
            stack.append((mid, hi, right, 0.5 * budget_tol))
    return total / period


def modify(data: FourierData) -> ModifiedCoefficients:
    """c~_n = Re c_n + (i/n) Im c_n for every entry (n >= 1)."""
    values = data.values.real + 1j * data.values.imag / data.indices
    return ModifiedCoefficients(data.period, data.indices.copy(), values)


def unmodify(mc: ModifiedCoefficients) -> FourierData:
    """Exact inverse of ``modify``: c_n = Re c~_n + i*n*Im c~_n."""
    values = mc.values.real + 1j * mc.indices * mc.values.imag
    return FourierData(mc.period, mc.indices.copy(), values, None)


def forward_abc(term: CosineTerm, period: float) -> AbcTriple:
    """Map a term to its rational-form parameters (A, B, C).

    Trig terms require freq * period to be non-integral; P-periodic terms
    have no rational representation (PeriodicTermError).
    """
    x = term.freq * period
    if term.kind is Kind.TRIG:
        m = round(x)
        delta = x - m
        if abs(delta) < PERIODIC_ATOL:
            raise PeriodicTermError(
                f"freq*period = {x} is integral; the term is P-periodic"
            )
        s = math.sin(math.pi * delta)
        A = -period * term.gamma * term.freq / math.pi * s * math.cos(math.pi * delta + term.phase)
        B = -term.gamma / math.pi * s * math.sin(math.pi * delta + term.phase)
        return AbcTriple(A, B, x * x)
    sh = math.sinh(math.pi * x)
    A = term.gamma * x / math.pi * sh * math.cosh(math.pi * x + term.phase)
    B = term.gamma / math.pi * sh * math.sinh(math.pi * x + term.phase)
    return AbcTriple(A, B, -x * x)


def write_coefficients_csv(data: FourierData, path) -> None:
    """Write rows ``n,re,im`` (c_0 first when present), shortest round-trip reprs."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "re", "im"])
        if data.c0 is not None:
            writer.writerow([0, repr(float(data.c0.real)), repr(float(data.c0.imag))])
        for n, v in zip(data.indices, data.values):
            writer.writerow([int(n), repr(float(v.real)), repr(float(v.imag))])


def read_coefficients_csv(path, period: float) -> FourierData:
    """Parse a ``n,re,im`` coefficient CSV back into FourierData."""
    indices: list[int] = []
    values: list[complex] = []
    c0 = None
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["n", "re", "im"]:
            raise ValueError(f"{path}: expected header 'n,re,im', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                n = int(row[0])
                value = complex(float(row[1]), float(row[2]))
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: bad row {row}") from exc
            if n == 0:
                c0 = value
            else:
                indices.append(n)
                values.append(value)
    return FourierData(period, np.array(indices, dtype=int), np.array(values, dtype=complex), c0)
