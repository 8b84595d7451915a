"""Greedy barycentric rational approximation of modified Fourier coefficients.

The modified coefficients of the non-P-periodic part of a sparse sum satisfy
c~_n = r(n^2) for a rational r of type (K-1, K). The iteration below builds r
in barycentric form

    r(z) = (sum_j w_j c~_{n_j} / (z - n_j^2)) / (sum_j w_j / (z - n_j^2)),

interpolating at a growing support set while fitting the remaining samples in
a linearized least-squares sense. Two side conditions shape the weight vector
at every step: ||w||_2 = 1 and the bilinear constraint w^T c~_S = 0, which
drops the numerator degree one below the denominator. Weights solve

    min ||A_m w||_2   over   A_m = ((c~_n - c~_k) / (n^2 - k^2))_{n not in S, k in S}

approximately, as a combination of the two right singular vectors of the two
smallest singular values. On exact data the iteration terminates with support
size K+1 because A_{K+1} then has a kernel vector that already satisfies the
side condition; P-periodic components reveal themselves as support points
whose weights are driven to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AllWeightsPrunedError,
    DegenerateWeightsError,
    InsufficientDataError,
    PoleHitError,
)
from .fourier import ModifiedCoefficients

#: Denominator magnitudes below this (relative) raise PoleHitError.
POLE_HIT_RTOL = 1e-14

#: Default absolute residual tolerance for run_aaa.
DEFAULT_TOL = 1e-13

#: Default relative threshold below which a weight counts as vanished.
DEFAULT_WEIGHT_EPS = 1e-8


@dataclass(frozen=True)
class BarycentricRational:
    """Support indices n_j, interpolation values c~_{n_j}, and weights w_j."""

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=int))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=complex))
        if len(np.unique(self.nodes)) != len(self.nodes):
            raise ValueError("support indices must be pairwise distinct")
        if self.values.shape != self.nodes.shape or self.weights.shape != self.nodes.shape:
            raise ValueError("nodes, values and weights must have matching shapes")

    def __call__(self, z):
        return evaluate_barycentric(self, z)

    @property
    def support_size(self) -> int:
        return len(self.nodes)


@dataclass
class AaaDiagnostics:
    """Bookkeeping for one run: selection order, residual, convergence."""

    iterations: int = 0
    selection_order: list[int] = field(default_factory=list)
    final_residual: float = 0.0
    converged: bool = False

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "selection_order": [int(n) for n in self.selection_order],
            "final_residual": float(self.final_residual),
            "converged": bool(self.converged),
        }


def evaluate_barycentric(r: BarycentricRational, z):
    """Evaluate r at z (scalar or array) in the z = n^2 domain.

    At a support square n_k^2 the interpolation limit c~_{n_k} is returned
    when w_k != 0; zero-weight nodes are skipped, so their squares evaluate
    through the reduced sum. Raises PoleHitError if the denominator vanishes
    (relative to the size of its terms) away from the support.
    """
    z_in = np.asarray(z, dtype=complex)
    zz = z_in.reshape(-1)
    if r.support_size == 0:
        return 0j if z_in.ndim == 0 else np.zeros(z_in.shape, dtype=complex)
    nodes2 = r.nodes.astype(float) ** 2
    diff = zz[:, None] - nodes2[None, :]
    hit = diff == 0
    live_hit = hit & (r.weights != 0)[None, :]

    inv = np.zeros_like(diff)
    np.divide(1.0, diff, out=inv, where=~hit)
    num = inv @ (r.weights * r.values)
    den = inv @ r.weights
    scale = np.abs(inv) @ np.abs(r.weights)

    out = np.empty_like(zz)
    interp_rows = live_hit.any(axis=1)
    if interp_rows.any():
        out[interp_rows] = r.values[np.argmax(live_hit[interp_rows], axis=1)]
    rest = ~interp_rows
    bad = rest & (np.abs(den) <= POLE_HIT_RTOL * scale) & (scale > 0)
    if bad.any():
        raise PoleHitError(f"denominator vanishes at z={zz[bad][0]}")
    out[rest] = num[rest] / den[rest]
    return out[0] if z_in.ndim == 0 else out.reshape(z_in.shape)


def _offsupport_residuals(r: BarycentricRational, mc: ModifiedCoefficients, remaining: np.ndarray) -> np.ndarray:
    # Matrix route p = C (w .* c~_S), q = C w; a transient pole at a sample
    # square gives an infinite residual there, which simply promotes that
    # sample to the next interpolation point.
    pos = {int(n): i for i, n in enumerate(mc.indices)}
    vals = mc.values[[pos[int(n)] for n in remaining]]
    inv = 1.0 / (
        remaining.astype(float)[:, None] ** 2 - r.nodes.astype(float)[None, :] ** 2
    )
    num = inv @ (r.weights * r.values)
    den = inv @ r.weights
    with np.errstate(divide="ignore", invalid="ignore"):
        res = np.abs(num / den - vals)
    res[~np.isfinite(res)] = np.inf
    return res


def initialize(mc: ModifiedCoefficients) -> tuple[BarycentricRational, np.ndarray]:
    """Start the iteration from the two samples of largest modulus.

    The weights (-c~_{n_2}, c~_{n_1}) / sqrt(|c~_{n_1}|^2 + |c~_{n_2}|^2)
    satisfy both side conditions by construction. Ties in modulus are broken
    toward the smaller index. Returns the rational and the remaining indices.
    """
    if len(mc) < 3:
        raise InsufficientDataError(f"need at least 3 coefficients, got {len(mc)}")
    order = np.lexsort((mc.indices, -np.abs(mc.values)))
    i1, i2 = order[0], order[1]
    c1, c2 = mc.values[i1], mc.values[i2]
    norm = np.hypot(abs(c1), abs(c2))
    if norm == 0.0:
        raise DegenerateWeightsError("all candidate samples are zero")
    r = BarycentricRational(
        nodes=np.array([mc.indices[i1], mc.indices[i2]]),
        values=np.array([c1, c2]),
        weights=np.array([-c2, c1]) / norm,
    )
    keep = np.ones(len(mc), dtype=bool)
    keep[[i1, i2]] = False
    return r, np.sort(mc.indices[keep])


def _solve_weights(
    nodes: np.ndarray, values: np.ndarray, row_indices: np.ndarray, row_values: np.ndarray
) -> np.ndarray:
    """Weight vector for a fixed support from the divided-difference matrix.

    Builds A = ((c~_n - c~_k) / (n^2 - k^2)) over the fit rows and combines
    the right singular vectors v_1, v_2 of its two smallest singular values as

        w = (v_2^T c~_S) v_1 - (v_1^T c~_S) v_2,   normalized to ||w||_2 = 1,

    with plain (unconjugated) transpose products, which makes w^T c~_S = 0
    hold identically.
    """
    denom = row_indices.astype(float)[:, None] ** 2 - nodes.astype(float)[None, :] ** 2
    A = (row_values[:, None] - values[None, :]) / denom
    _, _, vh = np.linalg.svd(A, full_matrices=True)
    v1 = vh[-1].conj()
    v2 = vh[-2].conj()
    t1 = np.dot(v1, values)
    t2 = np.dot(v2, values)
    w = t2 * v1 - t1 * v2
    norm = np.linalg.norm(w)
    scale = max(1.0, float(np.linalg.norm(values)))
    if norm < 1e-14 * scale:
        # Both bilinear products vanish: the kernel is (at least) two
        # dimensional and every kernel vector already satisfies the side
        # condition, so the smallest singular vector is optimal. This is the
        # situation when a periodic spike was absorbed at the last step.
        if abs(t1) > 1e-10 * scale:
            raise DegenerateWeightsError("zero combination without a side-condition kernel")
        return v1
    return w / norm


def iterate(
    r: BarycentricRational, mc: ModifiedCoefficients, remaining: np.ndarray
) -> tuple[BarycentricRational, np.ndarray]:
    """One greedy step: absorb the worst sample, re-solve the weights.

    The argmax-residual index moves into the support (ties toward the smaller
    index), then the weights are recomputed per ``_solve_weights`` with the
    still-remaining samples as fit rows.
    """
    remaining = np.asarray(remaining, dtype=int)
    if remaining.size < 2:
        raise InsufficientDataError(
            "need at least 2 remaining samples to absorb one and keep a fit row"
        )
    res = _offsupport_residuals(r, mc, remaining)
    k = remaining[int(np.argmax(res))]  # first max = smallest index (sorted input)

    pos = {int(n): i for i, n in enumerate(mc.indices)}
    nodes = np.append(r.nodes, k)
    values = np.append(r.values, mc.values[pos[int(k)]])
    remaining = remaining[remaining != k]

    rem_vals = mc.values[[pos[int(n)] for n in remaining]]
    w = _solve_weights(nodes, values, remaining, rem_vals)
    return BarycentricRational(nodes, values, w), remaining


def run_aaa(
    mc: ModifiedCoefficients, tol: float = DEFAULT_TOL, mmax: int | None = None
) -> tuple[BarycentricRational, AaaDiagnostics]:
    """Full iteration: initialize, then absorb samples until the fit converges.

    Parameters
    ----------
    mc : ModifiedCoefficients
        Samples c~_n; at least 3 entries.
    tol : float
        Absolute bound on max_n |r(n^2) - c~_n| over off-support indices.
    mmax : int, optional
        Maximum support size. Defaults to min(L - 1, L // 2 + 1), which admits
        K+1 points for L = 2K+1 exact samples and K+2 for L = 2K+2 (enough for
        one absorbed periodic spike per the exact-termination analysis).

    Returns
    -------
    (BarycentricRational, AaaDiagnostics)
        The rational holds the final support and weights; the diagnostics
        record selection order, main-loop pass count, the final off-support
        residual, and whether the tolerance was met.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    L = len(mc)
    if mmax is None:
        mmax = min(L - 1, L // 2 + 1)
    if not 2 <= mmax <= L - 1:
        raise ValueError(f"mmax must be in [2, {L - 1}], got {mmax}")

    r, remaining = initialize(mc)
    diag = AaaDiagnostics(selection_order=[int(n) for n in r.nodes])
    residual = float(np.max(_offsupport_residuals(r, mc, remaining)))
    while residual >= tol and r.support_size < mmax:
        r, remaining = iterate(r, mc, remaining)
        diag.selection_order.append(int(r.nodes[-1]))
        diag.iterations += 1
        residual = float(np.max(_offsupport_residuals(r, mc, remaining)))
    diag.final_residual = residual
    diag.converged = residual < tol
    return r, diag


def refit_weights(
    r: BarycentricRational, mc: ModifiedCoefficients, exclude=()
) -> BarycentricRational:
    """Re-solve the weights of an existing support against clean fit rows.

    After pruning unattainable (periodic-spike) support points, the surviving
    weights still carry the near-kernel contamination of the spike columns;
    one more weight solve on the reduced support, with the spike indices
    excluded from the fit rows, restores the accuracy the reduced support can
    deliver. Falls back to the input weights when the solve degenerates.
    """
    skip = set(int(n) for n in r.nodes) | set(int(n) for n in exclude)
    rows = np.array([i for i, n in enumerate(mc.indices) if int(n) not in skip])
    if r.support_size < 2 or rows.size < 1:
        return r
    try:
        w = _solve_weights(r.nodes, r.values, mc.indices[rows], mc.values[rows])
    except DegenerateWeightsError:
        return r
    return BarycentricRational(r.nodes, r.values, w)


def prune_vanishing_weights(
    r: BarycentricRational, weight_eps: float = DEFAULT_WEIGHT_EPS
) -> tuple[BarycentricRational, list[int]]:
    """Drop support points whose weights vanished (relative to the largest).

    Vanishing weights mark unattainable interpolation points, i.e. samples
    carrying a P-periodic spike; the returned pruned indices are the
    candidates for the periodic part. Remaining weights are renormalized.
    """
    if not weight_eps > 0.0:
        raise ValueError("weight_eps must be positive")
    mags = np.abs(r.weights)
    keep = mags > weight_eps * mags.max()
    if not keep.any():
        raise AllWeightsPrunedError("every weight fell below the pruning threshold")
    if keep.all():
        return r, []
    pruned = sorted(int(n) for n in r.nodes[~keep])
    weights = r.weights[keep]
    return (
        BarycentricRational(r.nodes[keep], r.values[keep], weights / np.linalg.norm(weights)),
        pruned,
    )
