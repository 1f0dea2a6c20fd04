"""Dense complex linear-algebra kernels shared by every other module.

All functions operate on plain ``numpy`` arrays (complex entries, row-major)
and are pure: no shared state, safe to call concurrently.  Operator p-norms
are restricted to p in {1, 2, inf}; those three are what every invertibility
and gain diagnostic in the package needs.

The 1-norm and the inf-norm are computed with an explicit per-column /
per-row reduction over contiguous copies so that ``pnorm_operator(A, 1)``
and ``pnorm_operator(A.conj().T, inf)`` add exactly the same floats in
exactly the same order — the duality identity then holds bit for bit.
"""

from dataclasses import dataclass
import math

import numpy as np
import scipy.linalg as sla

from .errors import (
    NonSquareError,
    NonHermitianError,
    NotPositiveDefiniteError,
    NumericalFailureError,
)

# Tolerance budget, chosen so double-precision dense solvers pass on n <= 4096.
TOL_EIG = 1e-10     # relative: eigen-reconstruction and unitarity residuals
TOL_HERM = 1e-12    # absolute: max-abs asymmetry allowed before symmetrizing
TOL_PD = 1e-12      # absolute: smallest eigenvalue must exceed this for powers
TOL_SING = 1e-12    # relative to the spectral norm: singularity flag threshold
TOL_CALC = 1e-8     # relative: composed-operation consistency (sqrt squared, ...)

#: Admissible operator-norm indices.
NORM_INDICES = (1, 2, math.inf)


def _check_norm_index(p):
    if p not in NORM_INDICES:
        raise ValueError(f"norm index must be 1, 2 or inf, got {p!r}")


def as_matrix(a) -> np.ndarray:
    """Validate and return ``a`` as a complex 2-D array with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _require_square(m: np.ndarray):
    if m.shape[0] != m.shape[1]:
        raise NonSquareError(f"matrix is {m.shape[0]}x{m.shape[1]}, square required")


def _require_hermitian(m: np.ndarray) -> np.ndarray:
    """Check asymmetry against TOL_HERM and return the symmetrized matrix."""
    _require_square(m)
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > TOL_HERM:
        raise NonHermitianError(
            f"max |A - A^H| = {asym:.3e} exceeds tol_herm = {TOL_HERM:.0e}"
        )
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Hermitian eigendecomposition: ascending eigenvalues, unitary columns."""

    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # unitary, column k pairs with eigenvalues[k]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(a) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian within ``TOL_HERM`` (max-abs); it is
    symmetrized via (A + A^H)/2 before the solve.  Eigenvalues come back
    ascending, and the reconstruction residual ||A - V diag(w) V^H||_2 is
    bounded by ``TOL_EIG * ||A||_2``.
    """
    m = _require_hermitian(as_matrix(a))
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare in LAPACK
        raise NumericalFailureError(f"eigensolver did not converge: {exc}") from exc
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def matrix_power(a, alpha: float) -> np.ndarray:
    """Fractional power A^alpha of a Hermitian positive definite matrix.

    Computed spectrally as V diag(w**alpha) V^H.  Raises
    ``NotPositiveDefiniteError`` when the smallest eigenvalue is at or below
    ``TOL_PD`` — fractional powers need the spectrum strictly inside the
    right half line.
    """
    dec = hermitian_eig(a)
    w = dec.eigenvalues
    if w[0] <= TOL_PD:
        raise NotPositiveDefiniteError(
            f"smallest eigenvalue {w[0]:.3e} <= tol_pd = {TOL_PD:.0e}"
        )
    v = dec.eigenvectors
    return (v * np.power(w, alpha)) @ v.conj().T


def _abs_sum(vec) -> float:
    # Contiguous copy first: np.add.reduce then walks the same value sequence
    # regardless of the strides of the slice it came from.
    return float(np.add.reduce(np.abs(np.ascontiguousarray(vec))))


def pnorm_operator(a, p) -> float:
    """Operator p-norm for p in {1, 2, inf}.

    p=1 is the maximum absolute column sum (columns summed in row-index
    order), p=inf the maximum absolute row sum, p=2 the largest singular
    value.
    """
    _check_norm_index(p)
    m = as_matrix(a)
    if p == 2:
        return float(sla.svdvals(m)[0])
    if p == 1:
        return max(_abs_sum(m[:, j]) for j in range(m.shape[1]))
    return max(_abs_sum(m[i, :]) for i in range(m.shape[0]))


def condition_p(a, p) -> float:
    """Condition number ||A||_p * ||A^-1||_p, or ``math.inf`` as singular flag.

    A is flagged singular when sigma_min <= TOL_SING * sigma_max, i.e. the
    threshold scales with the spectral norm.
    """
    _check_norm_index(p)
    m = as_matrix(a)
    _require_square(m)
    sv = sla.svdvals(m)
    smax, smin = float(sv[0]), float(sv[-1])
    if smin <= TOL_SING * smax:
        return math.inf
    if p == 2:
        return smax / smin
    try:
        inv = sla.inv(m)
    except sla.LinAlgError as exc:
        raise NumericalFailureError(f"inversion failed: {exc}") from exc
    return pnorm_operator(m, p) * pnorm_operator(inv, p)


@dataclass(frozen=True)
class GainBracket:
    """Certified bracket for the smallest p-norm gain of a matrix.

    ``lower <= inf_{||x||_p = 1} ||A x||_p <= upper`` always.  For p=2 both
    ends coincide with sigma_min; for p in {1, inf} the exact infimum is not
    tractable and the bracket is what callers get.
    """

    lower: float
    upper: float


def smallest_gain(a, p) -> GainBracket:
    """Bracket the smallest gain inf ||Ax||_p over unit-p-norm vectors x.

    p=2: exact, both ends equal sigma_min (0 when there are more columns
    than rows — the map then has a nullspace).  p in {1, inf}: the certified
    lower bound is sigma_min / sqrt(rows*cols) and the upper bound comes
    from probing with the coordinate unit vectors.
    """
    _check_norm_index(p)
    m = as_matrix(a)
    rows, cols = m.shape
    if cols > rows:
        smin = 0.0
    else:
        smin = float(sla.svdvals(m)[-1])
    if p == 2:
        return GainBracket(lower=smin, upper=smin)
    absm = np.abs(m)
    if p == 1:
        probe = min(_abs_sum(m[:, j]) for j in range(cols))
    else:
        probe = float(np.min(absm.max(axis=0)))
    lower = smin / math.sqrt(rows * cols)
    return GainBracket(lower=lower, upper=probe)
