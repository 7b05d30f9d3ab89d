"""Dense matrices and state vectors for clock/shift operators and generalized Bell states.

Bipartite amplitudes are indexed ``alice * d + bob``; Alice is the first tensor factor.
All unitaries are returned normalized, including H_alpha (scaled by 1/sqrt(d)).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .weyl import DomainError, WeylOp, s_sum


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def _roots(d: int) -> np.ndarray:
    # exact-angle table avoids accumulating error from repeated powers
    return np.exp(2j * np.pi * np.arange(d) / d)


def _check_dim(d: int) -> None:
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")


@lru_cache(maxsize=None)
def _build_x(d: int) -> np.ndarray:
    x = np.zeros((d, d), dtype=complex)
    x[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    x.setflags(write=False)
    return x


@lru_cache(maxsize=None)
def _build_z(d: int) -> np.ndarray:
    z = np.diag(_roots(d))
    z.setflags(write=False)
    return z


def build_x(d: int) -> np.ndarray:
    """Cyclic shift |l> -> |l+1 mod d>."""
    _check_dim(d)
    return _build_x(d).copy()


def build_z(d: int) -> np.ndarray:
    """Clock matrix diag(1, w, ..., w^(d-1))."""
    _check_dim(d)
    return _build_z(d).copy()


@lru_cache(maxsize=None)
def _build_h(alpha: int, d: int) -> np.ndarray:
    j = np.arange(d)[:, None]
    k = np.arange(d)[None, :]
    s = np.array([s_sum(kk, d) for kk in range(d)])[None, :]
    exps = (-j * k - alpha * s) % d
    h = _roots(d)[exps] / np.sqrt(d)
    h.setflags(write=False)
    return h


def build_h(alpha: int, d: int) -> np.ndarray:
    """Normalized H_alpha with entries w^(-jk - alpha s_k) / sqrt(d)."""
    _check_dim(d)
    if not 0 <= alpha < d:
        raise DomainError(f"alpha must lie in [0, {d}), got {alpha}")
    return _build_h(alpha, d).copy()


def h_matrix(alpha: int, d: int) -> np.ndarray:
    """Read-only cached H_alpha; alpha is taken mod d."""
    _check_dim(d)
    return _build_h(alpha % d, d)


def weyl_matrix(op: WeylOp) -> np.ndarray:
    """Dense matrix of w^t X^a Z^b."""
    d = op.dim
    mat = np.zeros((d, d), dtype=complex)
    i = np.arange(d)
    # X^a Z^b |i> = w^(b i) |i + a>
    mat[(i + op.x) % d, i] = _roots(d)[(op.z * i + op.phase) % d]
    return mat


def psi0(d: int) -> np.ndarray:
    _check_dim(d)
    return np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)


def gbs_state(d: int, m: int, n: int) -> np.ndarray:
    """|psi_{m,n}> = (X^m Z^n (x) I)|psi_0>, amplitude w^(n i)/sqrt(d) on |i+m>|i>."""
    _check_dim(d)
    if not (0 <= m < d and 0 <= n < d):
        raise DomainError(f"labels must lie in [0, {d}), got ({m}, {n})")
    psi = np.zeros((d, d), dtype=complex)
    i = np.arange(d)
    psi[(i + m) % d, i] = _roots(d)[(n * i) % d] / np.sqrt(d)
    return psi.reshape(d * d)


def apply_local(a: np.ndarray, b: np.ndarray, state: np.ndarray) -> np.ndarray:
    """(a (x) b) state, without forming the d^2 x d^2 Kronecker product."""
    a = np.asarray(a)
    b = np.asarray(b)
    d = a.shape[0]
    if a.shape != (d, d) or b.shape != (d, d) or state.shape != (d * d,):
        raise DomainError(
            f"shape mismatch: a{a.shape}, b{b.shape}, state{state.shape}"
        )
    psi = state.reshape(d, d)
    return (a @ psi @ b.T).reshape(d * d)


def ricochet(mat: np.ndarray) -> float:
    """Max deviation between (M (x) I)|psi_0> and (I (x) M^T)|psi_0>."""
    mat = np.asarray(mat, dtype=complex)
    d = mat.shape[0]
    eye = np.eye(d)
    v = psi0(d)
    lhs = np.kron(mat, eye) @ v
    rhs = np.kron(eye, mat.T) @ v
    return float(np.max(np.abs(lhs - rhs)))


def phase_aligned_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Max elementwise |e^{i phi} a - b| for the phase maximizing Re<e^{i phi} a, b>."""
    a = np.asarray(a)
    b = np.asarray(b)
    overlap = np.vdot(a, b)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.max(np.abs(phase * a - b)))


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> bool:
    return phase_aligned_deviation(a, b) < tol


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) < tol)


def gram_deviation(d: int) -> float:
    """Max |G - I| over the Gram matrix of all d^2 generalized Bell states."""
    basis = np.array([gbs_state(d, m, n) for m in range(d) for n in range(d)])
    gram = basis.conj() @ basis.T
    return float(np.max(np.abs(gram - np.eye(d * d))))


def lemma1_deviation(alpha: int, m: int, n: int, d: int) -> float:
    """Phase-aligned deviation between H X^m Z^n H^dagger and X^(alpha m + n) Z^(-m)."""
    h = h_matrix(alpha, d)
    lhs = h @ weyl_matrix(WeylOp(d, m, n)) @ h.conj().T
    rhs = weyl_matrix(WeylOp(d, alpha * m + n, -m))
    return phase_aligned_deviation(lhs, rhs)


def lemma1_max_deviation(d: int, alphas=None) -> float:
    """Worst Lemma-1 deviation over all (m, n) and the given alphas (default: parity-valid)."""
    if alphas is None:
        alphas = [a for a in range(d) if d % 2 == 1 or a % 2 == 0]
    return max(
        lemma1_deviation(a, m, n, d) for a in alphas for m in range(d) for n in range(d)
    )
