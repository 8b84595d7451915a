"""Pole/residue extraction from the barycentric rational.

The poles C_j are the zeros of the barycentric denominator, found as the
finite eigenvalues of the arrowhead pencil

    [ 0   w_1 ... w_m ]        [ 0          ]
    [ 1   n_1^2       ]  v  =  [   1        ] lambda v ;
    [ ...      ...    ]        [     ...    ]
    [ 1         n_m^2 ]        [          1 ]

two eigenvalues escape to infinity and are discarded. Residues A_j + i B_j
then solve the Cauchy system (1/(n_j^2 - C_k)) x = c~_S in least squares.
A kernel-system oracle provides an independent route to the same rational for
exactness checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .aaa import BarycentricRational
from .errors import (
    ComplexPoleError,
    KernelNotOneDimensionalError,
    WrongPoleCountError,
)
from .fourier import AbcTriple, ModifiedCoefficients

#: Default relative bound on |Im lambda| for accepting an eigenvalue as a pole.
DEFAULT_IMAG_EPS = 1e-8

#: Default relative threshold below which a residue marks a Froissart doublet.
DEFAULT_RESIDUE_EPS = 1e-8

#: Condition estimates beyond this flag the residue solve as ill-conditioned.
ILL_CONDITIONED_THRESHOLD = 1e14

#: Eigenvalues larger than this multiple of max n_j^2 count as infinite.
INFINITE_POLE_FACTOR = 1e12


@dataclass(frozen=True)
class PartialFraction:
    """Terms sum_j (A_j + i B_j) / (z - C_j) as parallel real arrays."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))
        if not (self.a.shape == self.b.shape == self.c.shape):
            raise ValueError("a, b, c must have matching shapes")

    def __len__(self) -> int:
        return len(self.c)

    def triples(self) -> list[AbcTriple]:
        return [AbcTriple(A, B, C) for A, B, C in zip(self.a, self.b, self.c)]

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        if len(self) == 0:
            return np.zeros(z.shape, dtype=complex)[()]
        return np.sum((self.a + 1j * self.b) / (z[..., None] - self.c), axis=-1)[()]

    __call__ = evaluate

    @classmethod
    def empty(cls) -> "PartialFraction":
        return cls(np.empty(0), np.empty(0), np.empty(0))


def finite_eigenvalues(r: BarycentricRational) -> np.ndarray:
    """Finite eigenvalues of the arrowhead pencil, i.e. denominator zeros.

    The two structurally infinite eigenvalues are discarded (non-finite or
    beyond INFINITE_POLE_FACTOR times the largest node square); exactly
    support_size - 1 must remain (WrongPoleCountError otherwise). Values may
    still be complex: spurious Froissart poles are only removed later.
    """
    m = r.support_size
    if m < 2:
        raise ValueError("pole extraction needs a support of at least 2 points")
    nodes2 = r.nodes.astype(float) ** 2
    pencil = np.zeros((m + 1, m + 1), dtype=complex)
    pencil[0, 1:] = r.weights
    pencil[1:, 0] = 1.0
    pencil[1:, 1:] = np.diag(nodes2)
    mass = np.eye(m + 1)
    mass[0, 0] = 0.0
    eigvals = scipy.linalg.eigvals(pencil, mass)

    cap = INFINITE_POLE_FACTOR * nodes2.max()
    finite = eigvals[np.isfinite(eigvals) & (np.abs(eigvals) <= cap)]
    # A (near-)zero weight decouples its node from the pencil and parks a
    # spurious eigenvalue on the node square; genuine poles avoid the nodes.
    at_node = np.min(np.abs(finite[:, None] - nodes2[None, :]), axis=1) <= 1e-10 * (
        1.0 + np.abs(finite)
    )
    finite = finite[~at_node]
    if len(finite) != m - 1:
        raise WrongPoleCountError(
            f"expected {m - 1} finite eigenvalues, found {len(finite)}"
        )
    return finite[np.argsort(finite.real)]


def require_real_poles(values: np.ndarray, imag_eps: float = DEFAULT_IMAG_EPS) -> np.ndarray:
    """Assert |Im| <= imag_eps * (1 + |Re|) per pole; return the real parts."""
    values = np.asarray(values, dtype=complex)
    bad = np.abs(values.imag) > imag_eps * (1.0 + np.abs(values.real))
    if bad.any():
        raise ComplexPoleError(
            f"complex pole {values[bad][0]} (real signals force real poles)"
        )
    return np.sort(values.real)


def poles(r: BarycentricRational, imag_eps: float = DEFAULT_IMAG_EPS) -> np.ndarray:
    """Finite zeros of the barycentric denominator, as sorted real values.

    Exactly support_size - 1 finite eigenvalues must survive the infinite
    filter (WrongPoleCountError otherwise), and each must be real to within
    imag_eps relative (ComplexPoleError otherwise: real signals cannot
    produce complex C_j).
    """
    return require_real_poles(finite_eigenvalues(r), imag_eps)


def residues(r: BarycentricRational, poles_c) -> tuple[np.ndarray, float]:
    """Least-squares residues x_k of sum_k x_k / (z - C_k) at the support.

    Returns (x, condition estimate). Callers should treat estimates above
    ILL_CONDITIONED_THRESHOLD as a diagnostic warning; the solution is still
    returned.
    """
    poles_c = np.asarray(poles_c, dtype=complex)
    if poles_c.size == 0:
        return np.empty(0, dtype=complex), 1.0
    cauchy = 1.0 / (r.nodes.astype(float)[:, None] ** 2 - poles_c[None, :])
    x, _, _, sv = np.linalg.lstsq(cauchy, r.values, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    return x, cond


def polish_partial_fraction(
    pf: PartialFraction, z, values, max_iter: int = 6
) -> tuple[PartialFraction, float]:
    """Gauss-Newton refinement of sum_j (A_j + i B_j)/(z - C_j) on samples.

    The eigenvalue/least-squares extraction loses digits when poles cluster
    or residues span a wide dynamic range; a few Newton steps on the exact
    nonlinear fit restore them. Returns the refined fraction and its max
    absolute sample residual; the input is returned unchanged if refinement
    does not improve the fit.
    """
    z = np.asarray(z, dtype=float)
    values = np.asarray(values, dtype=complex)
    if len(pf) == 0 or z.size == 0:
        return pf, float(np.max(np.abs(values))) if values.size else 0.0

    def residual(a, b, c):
        return (a + 1j * b) @ (1.0 / (z[None, :] - c[:, None])) - values

    a, b, c = pf.a.copy(), pf.b.copy(), pf.c.copy()
    best = (a, b, c)
    best_res = float(np.max(np.abs(residual(a, b, c))))
    for _ in range(max_iter):
        g = 1.0 / (z[:, None] - c[None, :])
        jac = np.hstack([g, 1j * g, (a + 1j * b)[None, :] * g * g])
        jac_real = np.vstack([jac.real, jac.imag])
        rhs = residual(a, b, c)
        step, *_ = np.linalg.lstsq(jac_real, -np.concatenate([rhs.real, rhs.imag]), rcond=None)
        K = len(c)
        a, b, c = a + step[:K], b + step[K : 2 * K], c + step[2 * K :]
        res = float(np.max(np.abs(residual(a, b, c))))
        if res < best_res:
            best, best_res = (a.copy(), b.copy(), c.copy()), res
        elif res > 10.0 * best_res:
            break
    return PartialFraction(*best), best_res


def remove_froissart(
    pf: PartialFraction, residue_eps: float = DEFAULT_RESIDUE_EPS
) -> tuple[PartialFraction, int]:
    """Drop spurious pole/zero pairs: residues tiny relative to the largest."""
    if not residue_eps > 0.0:
        raise ValueError("residue_eps must be positive")
    if len(pf) == 0:
        return pf, 0
    mags = np.hypot(pf.a, pf.b)
    keep = mags > residue_eps * mags.max()
    removed = int((~keep).sum())
    if removed == 0:
        return pf, 0
    return PartialFraction(pf.a[keep], pf.b[keep], pf.c[keep]), removed


def _kernel_polynomials(
    mc: ModifiedCoefficients, order: int, sample_indices
) -> tuple[np.ndarray, np.ndarray]:
    """Solve the 2K x (2K+1) interpolation kernel system for p and q.

    Rows demand p(n^2) = c~_n q(n^2) with deg p <= K-1 and q monic of degree
    K. The kernel is computed from the SVD of the (variable-rescaled) system;
    coefficients are returned in ascending power order, q including its unit
    leading coefficient. Raises KernelNotOneDimensionalError when a second
    numerical kernel direction exists (wrong K or inexact data).
    """
    K = int(order)
    samples = np.asarray(sample_indices, dtype=int)
    if K < 1:
        raise ValueError("order must be >= 1")
    if len(samples) != 2 * K or len(np.unique(samples)) != 2 * K:
        raise ValueError(f"need exactly 2K = {2 * K} distinct sample indices")
    pos = {int(n): i for i, n in enumerate(mc.indices)}
    try:
        vals = mc.values[[pos[int(n)] for n in samples]]
    except KeyError as exc:
        raise ValueError(f"sample index {exc} not among the given coefficients") from exc

    # Rescale z = n^2 by its largest sample to keep the monomial columns tame.
    scale = float(samples.max()) ** 2
    u = samples.astype(float) ** 2 / scale
    powers = u[:, None] ** np.arange(K + 1)[None, :]
    W = np.hstack([-powers[:, :K], vals[:, None] * powers])

    _, sv, vh = np.linalg.svd(W, full_matrices=True)
    # W has one structural null direction; a vanishing smallest singular
    # value would add a second kernel dimension (wrong K or inexact data).
    if sv[-1] <= 1e-6 * sv[-2]:
        raise KernelNotOneDimensionalError(
            f"kernel has dimension >= 2 (sigma ratio {sv[-1] / sv[-2]:.2e})"
        )
    null = vh[-1].conj()
    if null[-1] == 0:
        raise KernelNotOneDimensionalError("kernel vector has zero leading q coefficient")
    null = null / null[-1]
    # Undo the rescaling: q(z) = s^K q'(z/s) stays monic, p scales alongside,
    # so the coefficient of z^r picks up s^(K-r) in both polynomials.
    unscale = scale ** np.arange(K, -1, -1.0)
    p = null[:K] * unscale[:-1]
    q = null[K:] * unscale
    return p, q


def kernel_oracle(
    mc: ModifiedCoefficients,
    order: int,
    sample_indices,
    heldout_indices,
    tol: float = 1e-8,
) -> bool:
    """Validate the rational structure independently of the greedy iteration.

    Fits p/q of type (K-1, K) through exactly 2K samples via the kernel
    system, then checks |p(n^2)/q(n^2) - c~_n| <= tol * (1 + |c~_n|) at every
    held-out index.
    """
    p, q = _kernel_polynomials(mc, order, sample_indices)
    heldout = np.asarray(heldout_indices, dtype=int)
    pos = {int(n): i for i, n in enumerate(mc.indices)}
    vals = mc.values[[pos[int(n)] for n in heldout]]
    z = heldout.astype(float) ** 2
    num = np.polynomial.polynomial.polyval(z, p)
    den = np.polynomial.polynomial.polyval(z, q)
    return bool(np.all(np.abs(num / den - vals) <= tol * (1.0 + np.abs(vals))))
