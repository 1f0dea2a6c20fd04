"""Finite truncations of vector families and their frame-related operators.

A countable family indexed by ``{1..M}`` is represented by the N x M matrix
of its expansion coefficients against an ambient orthonormal reference basis
(column k = member k).  The inner product convention is linear in the first
slot: ``<f, g> = sum_i f_i * conj(g_i)``.

Everything here is a finite-dimensional proxy.  The coordinate image under
the canonical-dual analysis map stands in for the p-normed coefficient space
of a family (for p = inf this is the plain coordinate max-norm; the
pointwise-limit completion that the infinite-dimensional theory needs has no
finite-dimensional counterpart and is deliberately not modelled).  Whether a
family "is" a frame or a Riesz sequence is always a verdict *at this
truncation*: a lower bound above ``TOL_FRAME``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import linalg
from .errors import (
    DimensionMismatchError,
    LadderTooShortError,
    NonSquareError,
    NotAFrameError,
)

#: Lower bounds at or below this are reported as numerically zero.
TOL_FRAME = 1e-10


def inner(f, g) -> complex:
    """Inner product, linear in the first argument: sum_i f_i conj(g_i)."""
    return complex(np.vdot(np.asarray(g), np.asarray(f)))


@dataclass(frozen=True)
class VectorFamily:
    """A finite vector family in coefficients against the ambient ONB.

    ``coeffs`` is N x M complex; column k holds member k.  Instances are
    immutable: the array is copied and marked read-only.
    """

    coeffs: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = linalg.as_matrix(np.array(self.coeffs, dtype=complex))
        m.flags.writeable = False
        object.__setattr__(self, "coeffs", m)

    @property
    def ambient_dim(self) -> int:
        return self.coeffs.shape[0]

    @property
    def member_count(self) -> int:
        return self.coeffs.shape[1]

    def member(self, k: int) -> np.ndarray:
        return self.coeffs[:, k]

    def scaled(self, c) -> "VectorFamily":
        return VectorFamily(c * self.coeffs, label=self.label)

    def to_json(self) -> dict:
        """Serialize to the interchange schema (row-major [re, im] pairs)."""
        flat = self.coeffs.reshape(-1)
        return {
            "label": self.label,
            "ambient_dim": self.ambient_dim,
            "member_count": self.member_count,
            "coeffs": np.stack([flat.real, flat.imag], axis=1).tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VectorFamily":
        n = int(obj["ambient_dim"])
        m = int(obj["member_count"])
        pairs = obj["coeffs"]
        if len(pairs) != n * m:
            raise DimensionMismatchError(
                f"coeffs has {len(pairs)} entries, expected {n}*{m}"
            )
        flat = np.array([complex(re, im) for re, im in pairs], dtype=complex)
        return cls(coeffs=flat.reshape(n, m), label=str(obj.get("label", "")))

    @classmethod
    def onb(cls, n: int, label: str = "onb") -> "VectorFamily":
        return cls(np.eye(n, dtype=complex), label=label)


@dataclass(frozen=True)
class FrameBounds:
    """Two-sided bound pair; ``lower > 0`` is the positive verdict."""

    lower: float
    upper: float

    def is_frame(self, tol: float = TOL_FRAME) -> bool:
        return self.lower > tol


@dataclass(frozen=True)
class TruncationLadder:
    """Strictly increasing truncation sizes used to probe uniformity claims."""

    sizes: tuple = (16, 32, 64)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) < 2:
            raise LadderTooShortError("a ladder needs at least two sizes")
        if any(s < 1 for s in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise LadderTooShortError(f"sizes must be positive and strictly increasing: {sizes}")
        object.__setattr__(self, "sizes", sizes)

    def __iter__(self):
        return iter(self.sizes)


def _check_same_ambient(psi: VectorFamily, phi: VectorFamily):
    if psi.ambient_dim != phi.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dims differ: {psi.ambient_dim} vs {phi.ambient_dim}"
        )


def cross_gram(psi: VectorFamily, phi: VectorFamily) -> np.ndarray:
    """Cross Gram matrix with entry (k, l) = <phi_l, psi_k>.

    Equals the composition of the analysis map of ``psi`` with the synthesis
    map of ``phi``; its conjugate transpose is ``cross_gram(phi, psi)``.
    """
    _check_same_ambient(psi, phi)
    return psi.coeffs.conj().T @ phi.coeffs


def gram(psi: VectorFamily) -> np.ndarray:
    """Gram matrix of a single family (Hermitian positive semidefinite)."""
    return cross_gram(psi, psi)


def analysis(psi: VectorFamily, f) -> np.ndarray:
    """Analysis coefficients (<f, psi_k>)_k of a vector f."""
    v = np.asarray(f, dtype=complex)
    if v.shape != (psi.ambient_dim,):
        raise DimensionMismatchError(
            f"vector has shape {v.shape}, expected ({psi.ambient_dim},)"
        )
    return psi.coeffs.conj().T @ v


def synthesis(psi: VectorFamily, c) -> np.ndarray:
    """Synthesis sum_k c_k psi_k of a coefficient vector c."""
    v = np.asarray(c, dtype=complex)
    if v.shape != (psi.member_count,):
        raise DimensionMismatchError(
            f"coefficients have shape {v.shape}, expected ({psi.member_count},)"
        )
    return psi.coeffs @ v


def frame_operator(psi: VectorFamily) -> np.ndarray:
    """Frame operator as an N x N matrix (synthesis composed with analysis)."""
    return psi.coeffs @ psi.coeffs.conj().T


def frame_bounds(psi: VectorFamily) -> FrameBounds:
    """Extremal eigenvalues of the frame operator (tiny negatives clipped to 0)."""
    w = linalg.hermitian_eig(frame_operator(psi)).eigenvalues
    return FrameBounds(lower=max(float(w[0]), 0.0), upper=max(float(w[-1]), 0.0))


def riesz_bounds(psi: VectorFamily) -> FrameBounds:
    """Extremal eigenvalues of the Gram matrix (Riesz-sequence verdict)."""
    w = linalg.hermitian_eig(gram(psi)).eigenvalues
    return FrameBounds(lower=max(float(w[0]), 0.0), upper=max(float(w[-1]), 0.0))


def canonical_dual(psi: VectorFamily, tol: float = TOL_FRAME) -> VectorFamily:
    """Canonical dual family: columns are S^-1 applied to the members.

    Raises ``NotAFrameError`` when the lower frame bound is numerically zero
    at this truncation.
    """
    s = frame_operator(psi)
    w = linalg.hermitian_eig(s).eigenvalues
    if w[0] <= tol:
        raise NotAFrameError(
            f"lower frame bound {max(float(w[0]), 0.0):.3e} <= {tol:.0e}"
        )
    dual = sla.solve(s, np.asarray(psi.coeffs), assume_a="her")
    return VectorFamily(dual, label=f"dual({psi.label})" if psi.label else "dual")


def power_transform(phi: VectorFamily, alpha: float,
                    tol: float = TOL_FRAME) -> VectorFamily:
    """Apply a fractional power of the frame operator to every member.

    alpha = -1/2 orthonormalizes a Riesz basis; alpha = -1 gives the
    canonical dual.
    """
    s = frame_operator(phi)
    w = linalg.hermitian_eig(s).eigenvalues
    if w[0] <= tol:
        raise NotAFrameError(
            f"lower frame bound {max(float(w[0]), 0.0):.3e} <= {tol:.0e}"
        )
    p = linalg.matrix_power(s, alpha)
    lab = f"S^{alpha:g}({phi.label})" if phi.label else f"S^{alpha:g}"
    return VectorFamily(p @ phi.coeffs, label=lab)


def vector_pnorm(v, p) -> float:
    linalg._check_norm_index(p)
    a = np.abs(np.asarray(v, dtype=complex))
    if p == 1:
        return float(np.add.reduce(a))
    if p == 2:
        return float(np.sqrt(np.add.reduce(a * a)))
    return float(a.max()) if a.size else 0.0


def coorbit_norm(phi: VectorFamily, f, p) -> float:
    """Coordinate p-norm of f against the canonical dual of ``phi``.

    This is the finite-truncation stand-in for the coefficient-space norm a
    localized frame induces; for an ONB it reduces to the plain p-norm of
    the coordinates.
    """
    return vector_pnorm(analysis(canonical_dual(phi), f), p)


def coorbit_condition(phi: VectorFamily, t, p) -> float:
    """Condition number of an operator in dual-coordinate representation.

    The N x N matrix ``t`` is conjugated into the coordinates induced by
    ``phi`` (analysis with the canonical dual, synthesis with ``phi``) and
    measured with ``condition_p``.  Requires a square family so that the
    coordinate map is invertible.  Returns ``math.inf`` as the singular flag.
    """
    tm = linalg.as_matrix(t)
    linalg._require_square(tm)
    if tm.shape[0] != phi.ambient_dim:
        raise DimensionMismatchError(
            f"operator is {tm.shape[0]}x{tm.shape[1]}, ambient dim is {phi.ambient_dim}"
        )
    if phi.member_count != phi.ambient_dim:
        raise NonSquareError("coordinate representation needs a square (basis) family")
    dual = canonical_dual(phi)
    coord = dual.coeffs.conj().T @ tm @ phi.coeffs
    return linalg.condition_p(coord, p)
