"""Frame-core tests: Gram identities, bounds, duals, powers, coordinate norms.

Oracles: naive double/triple loops over inner products, Monte-Carlo Rayleigh
quotients, the 2x2 closed-form spectrum, and eigenvalue brackets.
"""

import math

import numpy as np
import pytest

from framebench import frames, linalg
from framebench.errors import (
    DimensionMismatchError,
    LadderTooShortError,
    NotAFrameError,
)
from framebench.frames import TruncationLadder, VectorFamily


def random_family(n, m, seed, spread=1.0):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return VectorFamily(np.eye(n, m) + spread * c / math.sqrt(n), label=f"rand{seed}")


def riesz_basis(n, seed, eps=0.4):
    rng = np.random.default_rng(seed)
    e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    e *= eps / linalg.pnorm_operator(e, 2)
    return VectorFamily(np.eye(n) + e, label=f"riesz{seed}")


def naive_cross_gram(psi, phi):
    g = np.empty((psi.member_count, phi.member_count), dtype=complex)
    for k in range(psi.member_count):
        for l in range(phi.member_count):
            g[k, l] = frames.inner(phi.member(l), psi.member(k))
    return g


# --------------------------------------------------------------------------
# Gram matrices / analysis / synthesis
# --------------------------------------------------------------------------

def test_cross_gram_onb_is_identity():
    e = VectorFamily.onb(5)
    assert np.array_equal(frames.cross_gram(e, e), np.eye(5))


def test_cross_gram_scaling():
    e = VectorFamily.onb(4)
    assert np.allclose(frames.cross_gram(e.scaled(2.0), e), 2.0 * np.eye(4))


@pytest.mark.parametrize("seed", range(3))
def test_cross_gram_matches_naive_loop(seed):
    psi = random_family(6, 5, seed)
    phi = random_family(6, 5, seed + 100)
    assert np.allclose(frames.cross_gram(psi, phi), naive_cross_gram(psi, phi),
                       atol=1e-14)


def test_cross_gram_adjoint_identity():
    psi = random_family(7, 7, 1)
    phi = random_family(7, 7, 2)
    assert np.max(np.abs(frames.cross_gram(psi, phi).conj().T -
                         frames.cross_gram(phi, psi))) <= 1e-14


def test_cross_gram_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        frames.cross_gram(VectorFamily.onb(3), VectorFamily.onb(4))


def test_gram_is_cross_gram_with_itself():
    psi = random_family(5, 5, 9)
    assert np.array_equal(frames.gram(psi), frames.cross_gram(psi, psi))


def test_gram_diagonal_family():
    f = VectorFamily(np.diag(1.0 / np.arange(1, 5)))
    assert np.allclose(frames.gram(f), np.diag([1, 1 / 4, 1 / 9, 1 / 16]))


def test_gram_hermitian_psd():
    g = frames.gram(random_family(8, 8, 3))
    assert np.max(np.abs(g - g.conj().T)) <= 1e-14
    assert linalg.hermitian_eig(g).eigenvalues[0] >= -1e-12


def test_analysis_basics():
    e = VectorFamily.onb(4)
    f = np.zeros(4, dtype=complex)
    f[1] = 1.0
    assert np.allclose(frames.analysis(e, f), [0, 1, 0, 0])
    d = VectorFamily(np.diag(1.0 / np.arange(1, 4)))
    assert np.allclose(frames.analysis(d, np.ones(3)), [1, 1 / 2, 1 / 3])


@pytest.mark.parametrize("seed", range(3))
def test_analysis_synthesis_match_naive(seed):
    psi = random_family(6, 4, seed)
    rng = np.random.default_rng(seed + 7)
    f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    naive_an = np.array([frames.inner(f, psi.member(k)) for k in range(4)])
    naive_syn = sum(c[k] * psi.member(k) for k in range(4))
    assert np.allclose(frames.analysis(psi, f), naive_an, atol=1e-14)
    assert np.allclose(frames.synthesis(psi, c), naive_syn, atol=1e-14)
    # adjointness: <D c, f> = <c, C f>
    lhs = frames.inner(frames.synthesis(psi, c), f)
    rhs = frames.inner(c, frames.analysis(psi, f))
    assert abs(lhs - rhs) <= 1e-12


def test_analysis_dimension_check():
    with pytest.raises(DimensionMismatchError):
        frames.analysis(VectorFamily.onb(3), np.ones(4))
    with pytest.raises(DimensionMismatchError):
        frames.synthesis(VectorFamily.onb(3), np.ones(4))


# --------------------------------------------------------------------------
# frame operator and bounds
# --------------------------------------------------------------------------

def test_frame_operator_onb_and_repeats():
    assert np.array_equal(frames.frame_operator(VectorFamily.onb(3)), np.eye(3))
    twice = VectorFamily(np.array([[1.0, 1.0], [0.0, 0.0]]))
    assert np.allclose(frames.frame_operator(twice), np.diag([2.0, 0.0]))


def test_frame_operator_is_synthesis_after_analysis_columnwise():
    psi = random_family(5, 5, 12)
    s = frames.frame_operator(psi)
    for j in range(5):
        e = np.zeros(5, dtype=complex)
        e[j] = 1.0
        col = frames.synthesis(psi, frames.analysis(psi, e))
        assert np.allclose(s[:, j], col, atol=1e-13)


def test_frame_bounds_onb():
    b = frames.frame_bounds(VectorFamily.onb(6))
    assert (b.lower, b.upper) == (1.0, 1.0)


def test_frame_bounds_harmonic_diagonal():
    # member k scaled by 1/k against an ONB: spectrum {1/k^2}
    n = 8
    fam = VectorFamily(np.diag(1.0 / np.arange(1, n + 1)))
    b = frames.frame_bounds(fam)
    assert np.isclose(b.lower, 1.0 / n**2, rtol=1e-12)
    assert np.isclose(b.upper, 1.0, rtol=1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_frame_bounds_bracket_rayleigh_quotients(seed):
    psi = random_family(6, 6, seed, spread=0.8)
    b = frames.frame_bounds(psi)
    s = frames.frame_operator(psi)
    rng = np.random.default_rng(seed + 50)
    for _ in range(1000):
        f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        f /= np.linalg.norm(f)
        q = frames.inner(s @ f, f).real
        assert b.lower - 1e-10 <= q <= b.upper + 1e-10


def test_riesz_bounds_two_member_closed_form():
    fam = VectorFamily(np.array([[1.0, 1 / math.sqrt(2)],
                                 [0.0, 1 / math.sqrt(2)]]))
    b = frames.riesz_bounds(fam)
    assert np.isclose(b.lower, 1 - 1 / math.sqrt(2), rtol=1e-12)
    assert np.isclose(b.upper, 1 + 1 / math.sqrt(2), rtol=1e-12)


def test_riesz_bounds_collapse_for_harmonic_family():
    n = 16
    fam = VectorFamily(np.diag(1.0 / np.arange(1, n + 1)))
    b = frames.riesz_bounds(fam)
    assert np.isclose(b.lower, 1.0 / n**2, rtol=1e-12)


def test_frame_and_gram_spectra_agree_on_nonzeros():
    psi = random_family(7, 5, 31)  # rectangular: 5 members in dim 7
    se = linalg.hermitian_eig(frames.frame_operator(psi)).eigenvalues
    ge = linalg.hermitian_eig(frames.gram(psi)).eigenvalues
    # frame operator has ambient_dim - member_count extra (near-)zeros
    assert np.allclose(se[2:], ge, atol=1e-10 * max(ge.max(), 1.0))
    assert np.allclose(se[:2], 0.0, atol=1e-10)


# --------------------------------------------------------------------------
# canonical dual, power transform
# --------------------------------------------------------------------------

def test_canonical_dual_onb_and_scaling():
    e = VectorFamily.onb(4)
    assert np.allclose(frames.canonical_dual(e).coeffs, e.coeffs)
    doubled = e.scaled(2.0)
    assert np.allclose(frames.canonical_dual(doubled).coeffs, 0.5 * np.eye(4))


@pytest.mark.parametrize("seed", range(3))
def test_canonical_dual_reconstructs(seed):
    psi = riesz_basis(6, seed)
    dual = frames.canonical_dual(psi)
    rng = np.random.default_rng(seed + 5)
    for _ in range(10):
        f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        rec1 = frames.synthesis(psi, frames.analysis(dual, f))
        rec2 = frames.synthesis(dual, frames.analysis(psi, f))
        assert np.linalg.norm(rec1 - f) <= 1e-8 * np.linalg.norm(f)
        assert np.linalg.norm(rec2 - f) <= 1e-8 * np.linalg.norm(f)


def test_canonical_dual_involution():
    psi = riesz_basis(5, 8)
    again = frames.canonical_dual(frames.canonical_dual(psi))
    assert np.max(np.abs(again.coeffs - psi.coeffs)) <= linalg.TOL_CALC


def test_canonical_dual_rejects_rank_deficient():
    fam = VectorFamily(np.array([[1.0, 2.0], [0.0, 0.0]]))
    with pytest.raises(NotAFrameError):
        frames.canonical_dual(fam)


def test_power_transform_onb_fixed_point():
    e = VectorFamily.onb(5)
    for alpha in (-0.5, 0.25, 2.0):
        assert np.allclose(frames.power_transform(e, alpha).coeffs, e.coeffs)


def test_power_transform_scaled_onb():
    fam = VectorFamily.onb(4).scaled(3.0)
    out = frames.power_transform(fam, -0.5)
    assert np.allclose(out.coeffs, np.eye(4))


@pytest.mark.parametrize("seed", range(3))
def test_power_transform_orthonormalizes_riesz_basis(seed):
    phi = riesz_basis(6, seed)
    out = frames.power_transform(phi, -0.5)
    assert linalg.pnorm_operator(frames.gram(out) - np.eye(6), 2) <= 1e-8


# --------------------------------------------------------------------------
# coordinate norms
# --------------------------------------------------------------------------

def test_coorbit_norm_onb_values():
    e = VectorFamily.onb(4)
    f = np.array([1.0, 1.0, 0.0, 0.0], dtype=complex)
    assert np.isclose(frames.coorbit_norm(e, f, 1), 2.0)
    assert np.isclose(frames.coorbit_norm(e, f, math.inf), 1.0)
    assert np.isclose(frames.coorbit_norm(e, f, 2), math.sqrt(2))


def test_coorbit_norm_onb_equals_plain_norm():
    e = VectorFamily.onb(6)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    for p in (1, 2, math.inf):
        assert np.isclose(frames.coorbit_norm(e, f, p), frames.vector_pnorm(f, p))


@pytest.mark.parametrize("seed", range(3))
def test_coorbit_two_norm_bracketed_by_frame_bounds(seed):
    phi = riesz_basis(6, seed)
    b = frames.frame_bounds(phi)
    rng = np.random.default_rng(seed + 30)
    for _ in range(50):
        f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        ratio = frames.coorbit_norm(phi, f, 2) / np.linalg.norm(f)
        assert 1 / math.sqrt(b.upper) - 1e-9 <= ratio <= 1 / math.sqrt(b.lower) + 1e-9


def test_coorbit_condition_identity_and_diagonal():
    phi = VectorFamily.onb(5)
    for p in (1, 2, math.inf):
        assert np.isclose(frames.coorbit_condition(phi, np.eye(5), p), 1.0)
    d = np.diag([3.0, 1.0, 0.5, 2.0, 1.5])
    assert np.isclose(frames.coorbit_condition(phi, d, 2), 6.0, rtol=1e-12)


def test_coorbit_condition_grows_for_harmonic_frame_operator():
    # frame operator of the harmonic family in ONB coordinates: diag(1/k^2)
    values = []
    for n in (8, 16, 32):
        phi = VectorFamily.onb(n)
        s = np.diag(1.0 / np.arange(1, n + 1) ** 2)
        values.append(frames.coorbit_condition(phi, s, 1))
    assert np.allclose(values, [64.0, 256.0, 1024.0], rtol=1e-9)


def _banded_riesz_master(seed, size=64, bandwidth=2, amp=0.25):
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    off = np.abs(np.subtract.outer(np.arange(size), np.arange(size)))
    return amp * np.where((off >= 1) & (off <= bandwidth),
                          raw / (1.0 + off) ** 2, 0.0)


MASTER_E = _banded_riesz_master(99)


def test_coorbit_condition_ladder_sweep_over_random_riesz_basis():
    # harmonic-family frame operator over a nested banded random Riesz basis:
    # the dual-coordinate condition number blows up like size^2
    sizes = (8, 16, 32, 64)
    values = []
    for n in sizes:
        phi = VectorFamily(np.eye(n) + MASTER_E[:n, :n])
        dual = frames.canonical_dual(phi)
        weights = 1.0 / np.arange(1, n + 1)
        psi = VectorFamily(dual.coeffs * weights)
        values.append(frames.coorbit_condition(phi, frames.frame_operator(psi), 1))
    slope = np.polyfit(np.log(sizes), np.log(values), 1)[0]
    assert 1.8 <= slope <= 2.2
    assert values[-1] / values[0] > 30.0  # singular-flag trend across the ladder


# --------------------------------------------------------------------------
# ladder type + serialization
# --------------------------------------------------------------------------

def test_truncation_ladder_validation():
    with pytest.raises(LadderTooShortError):
        TruncationLadder((8,))
    with pytest.raises(LadderTooShortError):
        TruncationLadder((8, 8))
    with pytest.raises(LadderTooShortError):
        TruncationLadder((0, 4))
    assert tuple(TruncationLadder((4, 8))) == (4, 8)


def test_vector_family_json_roundtrip():
    fam = random_family(3, 4, 77)
    again = VectorFamily.from_json(fam.to_json())
    assert np.array_equal(again.coeffs, fam.coeffs)
    assert again.label == fam.label


def test_vector_family_rejects_nonfinite():
    with pytest.raises(ValueError):
        VectorFamily(np.array([[np.nan, 0.0]]))


def test_vector_family_immutable():
    fam = VectorFamily.onb(3)
    with pytest.raises(ValueError):
        fam.coeffs[0, 0] = 5.0
