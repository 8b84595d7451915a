"""Inverse parameter maps and the full coefficient-to-model pipeline.

Each partial-fraction triple (A, B, C) maps back to one term:

* C > 0 (trig): a = sqrt(C)/P, gamma = pi*sqrt(A^2 + C*B^2)/(sqrt(C)*|sin(sqrt(C)*pi)|),
  and the phase follows from arccot(A/(sqrt(C)*B)) up to a half-turn that the
  sign of A - B*sqrt(C)*cot(sqrt(C)*pi) resolves (that expression equals
  (gamma*sqrt(C)/pi)*sin b; degenerate near-zero cases are settled by scoring
  both candidates through the forward map).
* C < 0 (hyperbolic): a = sqrt(|C|)/P, gamma = pi*sqrt(A^2 + C*B^2)/(sqrt(|C|)*sinh(sqrt(|C|)*pi)),
  b = sign(B)*arccosh(A/sqrt(A^2 + C*B^2)) - sqrt(|C|)*pi.

P-periodic terms never enter the rational part; they are read off afterwards
from the residuals d_n = c~_n - r(n^2), which equal gamma/2*(cos b + (i/n) sin b)
at n = freq*P and vanish elsewhere. The constant comes from c_0 minus the
rational part's value at n = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .aaa import (
    DEFAULT_TOL,
    DEFAULT_WEIGHT_EPS,
    AaaDiagnostics,
    BarycentricRational,
    evaluate_barycentric,
    prune_vanishing_weights,
    refit_weights,
    run_aaa,
)
from .errors import (
    ComplexPoleError,
    InsufficientDataError,
    InvalidTripleError,
    MissingC0Error,
    PeriodicPoleError,
)
from .fourier import (
    AbcTriple,
    FourierData,
    coefficient_closed_form,
    forward_abc,
    modify,
)
from .model import CosineTerm, Kind, SignalModel, canonicalize, model_to_dict
from .partial_fractions import (
    DEFAULT_IMAG_EPS,
    DEFAULT_RESIDUE_EPS,
    ILL_CONDITIONED_THRESHOLD,
    PartialFraction,
    finite_eigenvalues,
    polish_partial_fraction,
    require_real_poles,
    residues,
)

#: Default relative residual threshold for detecting periodic spikes.
DEFAULT_PERIODIC_EPS = 1e-6

#: sqrt(C) closer than this to an integer cannot come from a rational term.
PERIODIC_POLE_ATOL = 1e-8

#: Coarse per-eigenvalue realness gate inside the pipeline; imaginary parts
#: below this are rounding contamination that the polish step repairs.
REAL_POLE_COARSE_RTOL = 1e-2

#: The polished real-pole fraction must reproduce the samples this well
#: (relative to their peak), or the poles were not genuinely real.
POLISH_CERT_RTOL = 1e-8


def _arccot(x: float) -> float:
    """Inverse cotangent onto [-pi/2, pi/2] (x = 0 maps to +pi/2)."""
    return math.pi / 2 if x == 0.0 else math.atan(1.0 / x)


def _abc_mismatch(term: CosineTerm, period: float, abc: AbcTriple) -> float:
    cand = forward_abc(term, period)
    return math.hypot(cand.A - abc.A, cand.B - abc.B)


def invert_parameters(abc: AbcTriple, period: float) -> CosineTerm:
    """Map one triple (A, B, C) back to a cosine (C > 0) or cosh (C < 0) term."""
    A, B, C = abc
    if abs(C) < 1e-10:
        raise InvalidTripleError("C ~ 0: frequency zero is reserved for the constant")
    disc = A * A + C * B * B
    if disc <= 0.0:
        raise InvalidTripleError(f"A^2 + C*B^2 = {disc} must be positive")

    if C > 0.0:
        root_c = math.sqrt(C)
        if abs(root_c - round(root_c)) < PERIODIC_POLE_ATOL:
            raise PeriodicPoleError(
                f"sqrt(C) = {root_c} is integral; P-periodic terms have no pole"
            )
        freq = root_c / period
        theta = math.pi * root_c
        gamma = math.pi * math.sqrt(disc) / (root_c * abs(math.sin(theta)))
        if B != 0.0:
            base = (_arccot(A / (root_c * B)) - theta) % math.pi
        else:
            base = (-theta) % math.pi
        # sin(b) has the sign of A - B*sqrt(C)*cot(sqrt(C)*pi); when that
        # expression degenerates, let the forward map pick the candidate.
        sign_expr = A - B * root_c / math.tan(theta)
        candidates = (base, base + math.pi)
        if abs(sign_expr) <= 1e-10 * (abs(A) + abs(B) * root_c):
            phase = min(
                candidates,
                key=lambda b: _abc_mismatch(
                    CosineTerm(gamma, freq, b % (2 * math.pi), Kind.TRIG), period, abc
                ),
            )
        else:
            phase = candidates[0] if sign_expr > 0 else candidates[1]
        return CosineTerm(gamma, freq, phase % (2 * math.pi), Kind.TRIG)

    root_c = math.sqrt(-C)
    freq = root_c / period
    gamma = math.pi * math.sqrt(disc) / (root_c * math.sinh(root_c * math.pi))
    if A <= 0.0:
        raise InvalidTripleError("hyperbolic terms force A > 0")
    ratio = max(A / math.sqrt(disc), 1.0)
    phase = math.copysign(1.0, B) * math.acosh(ratio) - root_c * math.pi
    if B == 0.0:
        phase = -root_c * math.pi
    return CosineTerm(gamma, freq, phase, Kind.HYPERBOLIC)


def extract_periodic(
    data: FourierData,
    rational,
    periodic_eps: float = DEFAULT_PERIODIC_EPS,
) -> tuple[list[CosineTerm], set[int]]:
    """Read P-periodic terms off the residuals of the rational fit.

    For every given n >= 1, d_n = c~_n - r(n^2); indices with |d_n| above
    periodic_eps * max(1, max |c~|) form the spike set Sigma, and each spike
    inverts to (freq = n/P, gamma = 2*sqrt((Re d)^2 + n^2 (Im d)^2),
    b = atan2(n*Im d, Re d)). ``rational`` is any callable z -> r(z), e.g. a
    BarycentricRational or a PartialFraction.
    """
    if not periodic_eps > 0.0:
        raise ValueError("periodic_eps must be positive")
    mc = modify(data)
    fitted = rational(mc.indices.astype(float) ** 2)
    d = mc.values - fitted
    threshold = periodic_eps * max(1.0, float(np.max(np.abs(mc.values))) if len(mc) else 1.0)
    terms: list[CosineTerm] = []
    sigma: set[int] = set()
    for n, dn in zip(mc.indices, d):
        if abs(dn) <= threshold:
            continue
        n = int(n)
        sigma.add(n)
        gamma = 2.0 * math.hypot(dn.real, n * dn.imag)
        phase = math.atan2(n * dn.imag, dn.real) % (2 * math.pi)
        terms.append(CosineTerm(gamma, n / data.period, phase, Kind.TRIG))
    return terms, sigma


def extract_constant(data: FourierData, pf: PartialFraction) -> float:
    """Constant term: c_0 minus the rational part's value at n = 0."""
    if data.c0 is None:
        raise MissingC0Error("constant extraction needs the index-0 coefficient")
    return float(data.c0.real + np.sum(pf.a / pf.c))


@dataclass
class ReconstructionReport:
    """Everything the pipeline learned: model, spikes, diagnostics, residual."""

    model: SignalModel
    periodic_indices: set[int]
    aaa: AaaDiagnostics
    froissart_removed: int
    residual_max: float
    warnings: list[str] = field(default_factory=list)

    def to_dict(self, period: float) -> dict:
        return {
            "model": model_to_dict(self.model, period),
            "sigma": sorted(self.periodic_indices),
            "iterations": self.aaa.iterations,
            "selection_order": [int(n) for n in self.aaa.selection_order],
            "residual_max": float(self.residual_max),
            "froissart_removed": self.froissart_removed,
            "converged": bool(self.aaa.converged),
            "warnings": list(self.warnings),
        }


def _polish_against_samples(
    pf: PartialFraction,
    rational: BarycentricRational,
    mc,
    tol: float,
    aaa_residual: float,
    periodic_eps: float,
) -> PartialFraction:
    """Refine (A, B, C) on the non-spike samples and certify the real fit.

    Pole realness was only gated coarsely; the certificate that the data is
    representable with real poles is the polished fraction reproducing the
    samples (periodic spikes excluded) at fit accuracy. Failing that, the
    truncated imaginary parts were genuine and the pipeline aborts.
    """
    if len(pf) == 0:
        return pf
    z = mc.indices.astype(float) ** 2
    d = np.abs(mc.values - evaluate_barycentric(rational, z))
    peak = float(np.max(np.abs(mc.values)))
    spike_free = d <= periodic_eps * max(1.0, peak)
    pf, fit_residual = polish_partial_fraction(pf, z[spike_free], mc.values[spike_free])
    certify = max(10.0 * tol, POLISH_CERT_RTOL * (1.0 + peak), 10.0 * aaa_residual)
    if fit_residual > certify:
        raise ComplexPoleError(
            f"real-pole fit only reaches residual {fit_residual:.2e}; "
            "the rational part is not representable with real poles"
        )
    return pf


def _resynthesis_residual(data: FourierData, model: SignalModel) -> float:
    worst = 0.0
    for n, given in zip(data.indices, data.values):
        synth = sum(
            (coefficient_closed_form(u, data.period, int(n)) for u in model.terms), 0j
        )
        worst = max(worst, abs(synth - given))
    if data.c0 is not None:
        synth0 = model.constant + sum(
            (coefficient_closed_form(u, data.period, 0) for u in model.terms), 0j
        )
        worst = max(worst, abs(synth0 - data.c0))
    return worst


def reconstruct(
    data: FourierData,
    tol: float = DEFAULT_TOL,
    mmax: int | None = None,
    weight_eps: float = DEFAULT_WEIGHT_EPS,
    residue_eps: float = DEFAULT_RESIDUE_EPS,
    periodic_eps: float = DEFAULT_PERIODIC_EPS,
    imag_eps: float = DEFAULT_IMAG_EPS,
) -> ReconstructionReport:
    """Recover the sparse model behind a set of Fourier coefficients.

    Pipeline: modified-coefficient transform, greedy rational fit, weight
    pruning, pole/residue extraction, Froissart removal, inverse parameter
    maps, periodic-spike post-processing, and constant extraction when c_0 is
    present. The report's residual_max re-synthesizes every given coefficient
    from the recovered model, so it is trustworthy without ground truth.

    Raises InsufficientDataError for fewer than 3 positive-index samples and
    propagates numerical errors from the component stages.
    """
    if len(data) < 3:
        raise InsufficientDataError(
            f"need at least 3 coefficients with n >= 1, got {len(data)}"
        )
    warnings: list[str] = []
    mc = modify(data)

    peak = float(np.max(np.abs(mc.values)))
    coeff_peak = max(
        float(np.max(np.abs(data.values))), abs(data.c0) if data.c0 is not None else 0.0
    )
    if peak <= 1e-14 * coeff_peak or peak == 0.0:
        # No rational content at all (e.g. a pure constant): skip the fit.
        rational = BarycentricRational(np.empty(0, int), np.empty(0), np.empty(0))
        diag = AaaDiagnostics(converged=True)
        pf = PartialFraction.empty()
        removed = 0
    else:
        fitted, diag = run_aaa(mc, tol=tol, mmax=mmax)
        rational, pruned = prune_vanishing_weights(fitted, weight_eps)
        if pruned:
            rational = refit_weights(rational, mc, exclude=pruned)
        if rational.support_size >= 2:
            # Froissart doublets may sit at complex locations, so realness is
            # only enforced on the poles that survive residue thresholding.
            eig = finite_eigenvalues(rational)
            x, cond = residues(rational, eig)
            if cond > ILL_CONDITIONED_THRESHOLD:
                warnings.append(f"ill-conditioned residue solve (cond ~ {cond:.2e})")
            mags = np.abs(x)
            keep = mags > residue_eps * mags.max()
            removed = int((~keep).sum())
            real_poles = require_real_poles(
                eig[keep], max(imag_eps, REAL_POLE_COARSE_RTOL)
            )
            order = np.argsort(eig[keep].real)
            pf = PartialFraction(x[keep][order].real, x[keep][order].imag, real_poles)
            pf = _polish_against_samples(
                pf, rational, mc, tol, diag.final_residual, periodic_eps
            )
        else:
            # A single surviving node means the rational part is a constant;
            # anything nonzero there is unexplained signal.
            leftover = float(np.abs(rational.values).max()) if rational.support_size else 0.0
            if leftover > periodic_eps * max(1.0, peak):
                warnings.append(
                    f"single-node rational with non-vanishing value {leftover:.2e}"
                )
            pf = PartialFraction.empty()
            removed = 0

    terms = [invert_parameters(triple, data.period) for triple in pf.triples()]
    # The polished fraction is the more accurate evaluator at the spike
    # locations, which were left out of every fit.
    residual_source = pf if len(pf) else rational
    periodic_terms, sigma = extract_periodic(data, residual_source, periodic_eps)
    constant = extract_constant(data, pf) if data.c0 is not None else 0.0

    model = canonicalize(terms + periodic_terms, constant)
    residual_max = _resynthesis_residual(data, model)
    return ReconstructionReport(
        model=model,
        periodic_indices=sigma,
        aaa=diag,
        froissart_removed=removed,
        residual_max=residual_max,
        warnings=warnings,
    )
