"""Vector J-frames, canonical J-dual frames and the dual-bound relations.

A vector J-frame is a finite family of non-neutral vectors whose positive
members span a maximal uniformly positive subspace and whose negative
members span a maximal uniformly negative one.  The frame operator
S f = sum_i sigma_i [f, f_i] f_i is then bijective and J-selfadjoint; the
canonical dual {S^-1 f_i} reconstructs every vector and has reciprocal
optimal bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import KreinSpace, Operator, Subspace, SubspaceKind
from .errors import (
    DefinitenessTransportError,
    MemberClassificationError,
    NotAFrameError,
    SingularOperatorError,
)
from .fusion import (
    FrameBounds,
    WeightedFamily,
    _optimal_bounds,
    _rayleigh_extremes,
    certify,
    definite_span,
    frame_operator,
)

__all__ = [
    "VectorFrame",
    "DualBoundsReport",
    "FusionDualReport",
    "vframe_operator",
    "partial_frame_operator",
    "is_j_frame",
    "vframe_optimal_bounds",
    "canonical_dual",
    "dual_bounds_check",
    "fundamental_identity_sides",
    "fundamental_identity_residual",
    "fusion_dual_bounds_check",
    "as_weighted_family",
]


class VectorFrame:
    """A finite family of non-neutral vectors with signs from [f_i, f_i]."""

    def __init__(self, space: KreinSpace, vectors):
        cols = [space.check_vector(v) for v in vectors]
        if not cols:
            raise MemberClassificationError(0, "a vector frame needs members")
        matrix = np.column_stack(cols)
        signs = []
        for i, f in enumerate(cols):
            nrm2 = float(np.vdot(f, f).real)
            if nrm2 == 0.0:
                raise MemberClassificationError(i, "zero vector")
            val = float(np.vdot(f, space.J @ f).real)
            if abs(val) <= space.tol.tau_def * nrm2:
                raise MemberClassificationError(
                    i, f"vector is neutral within tau_def ([f,f]/||f||^2 = {val / nrm2:g})"
                )
            signs.append(1 if val > 0 else -1)
        self.space = space
        self.matrix = matrix
        self.matrix.flags.writeable = False
        self.signs = signs
        self.plus_indices = [i for i, s in enumerate(signs) if s == 1]
        self.minus_indices = [i for i, s in enumerate(signs) if s == -1]
        self.m_plus = (
            Subspace.from_spanning(space, matrix[:, self.plus_indices])
            if self.plus_indices
            else None
        )
        self.m_minus = (
            Subspace.from_spanning(space, matrix[:, self.minus_indices])
            if self.minus_indices
            else None
        )

    def __len__(self):
        return self.matrix.shape[1]

    def vector(self, i) -> np.ndarray:
        return self.matrix[:, i]

    def __repr__(self):
        return (
            f"VectorFrame({len(self)} vectors, "
            f"|I+|={len(self.plus_indices)}, |I-|={len(self.minus_indices)})"
        )


def vframe_operator(F: VectorFrame) -> Operator:
    """S f = sum_i sigma_i [f, f_i] f_i."""
    d = np.diag(np.asarray(F.signs, dtype=float))
    s = F.matrix @ d @ F.matrix.conj().T @ F.space.J
    return Operator(F.space, s)


def partial_frame_operator(F: VectorFrame, subset) -> Operator:
    """S restricted to a member subset; S_I1 + S_I1c = S by construction."""
    subset = sorted(set(int(i) for i in subset))
    for i in subset:
        if i < 0 or i >= len(F):
            raise IndexError(f"member index {i} out of range 0..{len(F) - 1}")
    n = F.space.dim
    s = np.zeros((n, n), dtype=complex)
    for i in subset:
        f = F.matrix[:, i : i + 1]
        s += F.signs[i] * (f @ f.conj().T @ F.space.J)
    return Operator(F.space, s)


def _side_ok(m, sign, space) -> bool:
    p, q = space.signature
    needed = p if sign == 1 else q
    if m is None:
        return needed == 0
    cls = m.classify()
    want = (
        SubspaceKind.UNIFORMLY_POSITIVE
        if sign == 1
        else SubspaceKind.UNIFORMLY_NEGATIVE
    )
    return cls.kind is want and m.dim == needed


def is_j_frame(F: VectorFrame) -> bool:
    """True when both signed spans are maximal uniformly definite."""
    return _side_ok(F.m_plus, 1, F.space) and _side_ok(F.m_minus, -1, F.space)


def vframe_optimal_bounds(
    F: VectorFrame,
    over_plus: Subspace | None = None,
    over_minus: Subspace | None = None,
) -> FrameBounds:
    """Extreme values of sum_i sigma_i |[f, f_i]|^2 / [f, f] over each span.

    By default the quotients range over the frame's own signed spans.  A
    family can also act as a frame for another pair of uniformly definite
    subspaces; pass those as over_plus / over_minus to bound the quotients
    there instead (used for canonical duals, whose coefficients reconstruct
    along the original frame's spans).
    """
    if not is_j_frame(F):
        raise NotAFrameError("not a J-frame; no optimal bounds")
    m_plus = F.m_plus if over_plus is None else over_plus
    m_minus = F.m_minus if over_minus is None else over_minus
    a_plus = b_plus = a_minus = b_minus = None
    if m_plus is not None:
        fp = F.matrix[:, F.plus_indices]
        s_part = fp @ fp.conj().T @ F.space.J
        a_plus, b_plus = _rayleigh_extremes(F.space, m_plus, s_part, 1)
    if m_minus is not None:
        fm = F.matrix[:, F.minus_indices]
        s_part = fm @ fm.conj().T @ F.space.J
        b_minus, a_minus = _rayleigh_extremes(F.space, m_minus, s_part, -1)
    return FrameBounds(b_minus, a_minus, a_plus, b_plus)


def _inverse_frame_operator(F: VectorFrame) -> np.ndarray:
    s = vframe_operator(F).matrix
    if np.linalg.cond(s) > 1.0 / F.space.tol.tau_def:
        raise SingularOperatorError(
            "frame operator is numerically singular (cond = %g)" % np.linalg.cond(s)
        )
    return np.linalg.inv(s)


def canonical_dual(F: VectorFrame) -> VectorFrame:
    """The dual frame {S^-1 f_i}; member signs must transport unchanged."""
    if not is_j_frame(F):
        raise NotAFrameError("canonical dual is defined for J-frames only")
    s_inv = _inverse_frame_operator(F)
    duals = s_inv @ F.matrix
    try:
        dual = VectorFrame(F.space, duals.T)
    except MemberClassificationError as exc:
        raise DefinitenessTransportError(
            f"inverse frame operator produced a neutral dual vector: {exc}"
        ) from exc
    if dual.signs != F.signs:
        raise DefinitenessTransportError(
            "inverse frame operator changed the sign pattern: "
            f"{F.signs} -> {dual.signs}"
        )
    return dual


@dataclass(frozen=True)
class DualBoundsReport:
    original: FrameBounds
    dual: FrameBounds
    dual_own_spans: FrameBounds
    expected: FrameBounds
    max_rel_error: float
    ok: bool


def _reciprocal_expected(b: FrameBounds) -> FrameBounds:
    inv = lambda x: None if x is None else 1.0 / x
    return FrameBounds(inv(b.a_minus), inv(b.b_minus), inv(b.b_plus), inv(b.a_plus))


def _bounds_rel_error(actual: FrameBounds, expected: FrameBounds) -> float:
    err = 0.0
    for a, e in zip(actual.as_tuple(), expected.as_tuple()):
        if (a is None) != (e is None):
            return float("inf")
        if a is None:
            continue
        err = max(err, abs(a - e) / max(1.0, abs(e)))
    return err


def dual_bounds_check(F: VectorFrame) -> DualBoundsReport:
    """Optimal bounds of the canonical dual against the reciprocal relation.

    The dual's bounds are taken over the original frame's signed spans: the
    dual coefficients [f, S^-1 f_i] reconstruct vectors along those spans,
    and there the positive-side quotient equals [S^-1 f, f] / [f, f], whose
    range is exactly [1/B+, 1/A+] (the compression of S^-1 to the positive
    span is the inverse of the compressed frame operator).  Over the dual's
    own spans (the J-orthogonal complements of the opposite originals) the
    reciprocal relation fails in general; those bounds are reported as
    dual_own_spans for comparison.
    """
    original = vframe_optimal_bounds(F)
    dual_frame = canonical_dual(F)
    dual = vframe_optimal_bounds(dual_frame, F.m_plus, F.m_minus)
    dual_own = vframe_optimal_bounds(dual_frame)
    expected = _reciprocal_expected(original)
    err = _bounds_rel_error(dual, expected)
    return DualBoundsReport(
        original, dual, dual_own, expected, err, err < F.space.tol.tau_num
    )


def fundamental_identity_sides(F: VectorFrame, subset, f) -> tuple[float, float]:
    """Both sides of the partial-sum identity for a member subset."""
    if not is_j_frame(F):
        raise NotAFrameError("the identity requires a J-frame")
    f = F.space.check_vector(f)
    subset = sorted(set(int(i) for i in subset))
    comp = [i for i in range(len(F)) if i not in subset]
    s_inv = _inverse_frame_operator(F)
    duals = s_inv @ F.matrix
    J = F.space.J

    def coeff_sum(indices, g):
        # sum over indices of sigma_i |[g, f_i]|^2
        if not indices:
            return 0.0
        cols = F.matrix[:, indices]
        vals = np.abs(cols.conj().T @ (J @ g)) ** 2
        sg = np.asarray([F.signs[i] for i in indices], dtype=float)
        return float(sg @ vals)

    def dual_sum(g):
        # sum over all i of sigma_i |[g, S^-1 f_i]|^2
        vals = np.abs(duals.conj().T @ (J @ g)) ** 2
        return float(np.asarray(F.signs, dtype=float) @ vals)

    s1 = partial_frame_operator(F, subset).matrix @ f
    s2 = partial_frame_operator(F, comp).matrix @ f
    lhs = coeff_sum(subset, f) - dual_sum(s1)
    rhs = coeff_sum(comp, f) - dual_sum(s2)
    return lhs, rhs


def fundamental_identity_residual(F: VectorFrame, subset, f) -> float:
    lhs, rhs = fundamental_identity_sides(F, subset, f)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class FusionDualReport:
    dual_is_frame: bool
    original: FrameBounds
    dual: FrameBounds | None
    dual_over_original_spans: FrameBounds | None
    expected: FrameBounds
    max_rel_error: float | None
    holds: bool
    note: str


def fusion_dual_bounds_check(F: WeightedFamily) -> FusionDualReport:
    """Reciprocal-bounds check for the dual family {(S^-1 W_i, v_i)}.

    The result is an empirical per-instance finding: the dual family is
    certified from scratch, and a certification failure is reported as a
    counterexample rather than raised.
    """
    cert = certify(F)
    if not cert.is_frame:
        raise NotAFrameError("fusion dual check requires a certified frame")
    s = frame_operator(F).matrix
    if np.linalg.cond(s) > 1.0 / F.space.tol.tau_def:
        raise SingularOperatorError(
            "fusion frame operator is numerically singular (cond = %g)"
            % np.linalg.cond(s)
        )
    original = cert.optimal_bounds
    expected = _reciprocal_expected(original)
    try:
        dual_subspaces = [
            Subspace(F.space, np.linalg.solve(s, w.basis)) for w in F.subspaces
        ]
        dual_family = WeightedFamily(F.space, dual_subspaces, F.weights)
    except MemberClassificationError as exc:
        return FusionDualReport(
            False, original, None, None, expected, None, False,
            f"dual member failed classification: {exc}",
        )
    dual_cert = certify(dual_family)
    if not dual_cert.is_frame:
        return FusionDualReport(
            False, original, None, None, expected, None, False,
            "dual family failed frame certification",
        )
    dual_bounds = dual_cert.optimal_bounds
    over_original = _optimal_bounds(
        dual_family, definite_span(F, 1), definite_span(F, -1)
    )
    err = _bounds_rel_error(dual_bounds, expected)
    holds = err < F.space.tol.tau_num
    note = (
        "reciprocal relation verified on this instance"
        if holds
        else "reciprocal relation does not hold on this instance "
        "(empirical finding for the assumed dual construction)"
    )
    return FusionDualReport(
        True, original, dual_bounds, over_original, expected, err, holds, note
    )


def as_weighted_family(F: VectorFrame) -> WeightedFamily:
    """One-dimensional family equivalent of a vector frame.

    Weights ||f_i|| make the weighted projection sums coincide with the
    vector-frame coefficient sums, so bounds and certification agree.
    """
    subspaces = [
        Subspace(F.space, F.matrix[:, i : i + 1]) for i in range(len(F))
    ]
    weights = [float(np.linalg.norm(F.matrix[:, i])) for i in range(len(F))]
    return WeightedFamily(F.space, subspaces, weights)
