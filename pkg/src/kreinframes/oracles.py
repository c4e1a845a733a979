"""Independent brute-force checkers used by the test suite.

None of these call the implementation path they validate: the Rayleigh
oracle samples quotients directly instead of solving the pencil, the
projection oracle is a least-squares solve, and the gamma oracle combines
random search over the row space with solve-based inverse iteration
(no SVD).  They are slow by design.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import Operator
from .errors import NotAFrameError
from .fusion import WeightedFamily, certify, definite_span, frame_operator_part
from .sampling import random_complex, rng_from_seed

__all__ = ["OracleConfig", "rayleigh_extremes", "projection_oracle", "gamma_oracle"]


@dataclass(frozen=True)
class OracleConfig:
    n_samples: int = 10000
    seed: int = 0
    tolerance: float = 1e-9
    refine: bool = True

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")


def _quotients(a: np.ndarray, p: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Generalized Rayleigh quotients c*Ac / c*Pc for a batch of columns."""
    num = np.einsum("ij,ik,kj->j", coeffs.conj(), a, coeffs).real
    den = np.einsum("ij,ik,kj->j", coeffs.conj(), p, coeffs).real
    return num / den


def _random_search(a, p, c0, rng, minimize, rounds=40, batch=64):
    """Shrinking random perturbation search around the best sampled point."""
    k = c0.shape[0]
    best = c0 / np.linalg.norm(c0)
    sign = 1.0 if minimize else -1.0
    best_val = sign * _quotients(a, p, best[:, None])[0]
    scale = 0.5
    for _ in range(rounds):
        cand = best[:, None] + scale * random_complex(rng, k, batch)
        cand /= np.linalg.norm(cand, axis=0, keepdims=True)
        vals = sign * _quotients(a, p, cand)
        j = int(np.argmin(vals))
        if vals[j] < best_val:
            best_val = vals[j]
            best = cand[:, j]
        else:
            scale *= 0.7
    return sign * best_val


def rayleigh_extremes(
    F: WeightedFamily, sign: int, config: OracleConfig = OracleConfig()
) -> tuple[float, float]:
    """Sampled extremes of the frame quotient over the signed span.

    Draws unit coefficient vectors in the span, evaluates
    sum v_i^2 [pi_{W_i} J f, f] / [f, f] directly, and (optionally)
    sharpens both extremes by local random search.  Never solves an
    eigenproblem.
    """
    if not certify(F).is_frame:
        raise NotAFrameError("the Rayleigh oracle requires a certified frame")
    m = definite_span(F, sign)
    if m is None:
        raise NotAFrameError(f"the side {sign:+d} is empty")
    u = m.ortho_basis
    k = u.shape[1]
    space = F.space
    s_part = frame_operator_part(F, sign).matrix
    a = u.conj().T @ (space.J @ s_part) @ u
    a = 0.5 * (a + a.conj().T)
    p = u.conj().T @ space.J @ u
    p = 0.5 * (p + p.conj().T)
    rng = rng_from_seed(config.seed)
    coeffs = random_complex(rng, k, config.n_samples)
    coeffs /= np.linalg.norm(coeffs, axis=0, keepdims=True)
    vals = _quotients(a, p, coeffs)
    lo_i, hi_i = int(np.argmin(vals)), int(np.argmax(vals))
    lo, hi = float(vals[lo_i]), float(vals[hi_i])
    if config.refine:
        lo = min(lo, _random_search(a, p, coeffs[:, lo_i], rng, minimize=True))
        hi = max(hi, _random_search(a, p, coeffs[:, hi_i], rng, minimize=False))
    return lo, hi


def projection_oracle(W, x) -> np.ndarray:
    """Euclidean-nearest point of W to x, via a least-squares solve."""
    x = W.space.check_vector(x)
    coeff, *_ = np.linalg.lstsq(W.basis, x, rcond=None)
    return W.basis @ coeff


def gamma_oracle(T, config: OracleConfig = OracleConfig()) -> float:
    """Reduced minimum modulus by minimizing ||Tx|| over the row space.

    The null-space complement comes from a pivoted QR factorization of T*;
    random sampling provides candidates and solve-based inverse iteration
    on the restricted normal matrix drives the minimum down.  No singular
    value decomposition is involved.
    """
    if isinstance(T, Operator):
        T = T.matrix
    t = np.asarray(T, dtype=complex)
    q, r, _ = scipy.linalg.qr(t.conj().T, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        return 0.0
    rank = int(np.count_nonzero(diag > 1e-10 * diag[0]))
    if rank == 0:
        return 0.0
    basis = q[:, :rank]  # orthonormal basis of the row space
    b = t @ basis
    rng = rng_from_seed(config.seed)
    coeffs = random_complex(rng, rank, config.n_samples)
    coeffs /= np.linalg.norm(coeffs, axis=0, keepdims=True)
    norms = np.linalg.norm(b @ coeffs, axis=0)
    j = int(np.argmin(norms))
    best = float(norms[j])
    if config.refine:
        # inverse iteration on B*B, started from the best sample
        normal = b.conj().T @ b
        x = coeffs[:, j]
        for _ in range(50):
            x = np.linalg.solve(normal, x)
            x /= np.linalg.norm(x)
        best = min(best, float(np.linalg.norm(b @ x)))
    return best
