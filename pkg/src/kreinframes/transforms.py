"""Operators mapping J-fusion frames to J-fusion frames.

Whether a bounded operator preserves definiteness, maximality or
regularity of subspaces is a universally quantified property; the
predicates here are sampling-based refutation procedures.  A
``holds-on-samples`` verdict is evidence, not proof, and the reports say
so explicitly.  The exact sufficient certificate for invertible operators
is :func:`is_j_isometry_multiple` (a scalar multiple of a J-isometry
preserves all three properties).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    KreinSpace,
    Operator,
    Subspace,
    SubspaceKind,
    Tolerances,
    DEFAULT_TOLERANCES,
    j_adjoint,
    j_projection,
)
from .errors import (
    ClassificationError,
    DegenerateSubspaceError,
    HypothesisNotMetError,
    NotSurjectiveError,
)
from .fusion import WeightedFamily, FrameCertificate, certify
from .sampling import (
    random_definite_subspace,
    random_maximal_definite_subspace,
    random_regular_subspace,
    rng_from_seed,
)

__all__ = [
    "PredicateVerdict",
    "PreservationReport",
    "image_subspace",
    "preserves_definiteness_with_sign",
    "preserves_maximality",
    "preserves_regularity",
    "preservation_report",
    "transform_family",
    "projection_commutation_check",
    "is_j_isometry_multiple",
    "necessary_conditions_check",
    "NecessaryConditionsReport",
    "alternating_signature_space",
    "neutral_image_operator",
]

EPISTEMIC_NOTE = (
    "sampling-based refutation: 'holds-on-samples' is evidence over the "
    "tested subspaces, not a proof over all subspaces"
)


@dataclass(frozen=True)
class PredicateVerdict:
    status: str  # "holds-on-samples" | "counterexample"
    counterexample: Subspace | None
    detail: str
    samples_tested: int
    note: str = EPISTEMIC_NOTE

    @property
    def holds(self) -> bool:
        return self.status == "holds-on-samples"


@dataclass(frozen=True)
class PreservationReport:
    definiteness_with_sign: PredicateVerdict
    maximality: PredicateVerdict
    regularity: PredicateVerdict


def image_subspace(T: Operator, V: Subspace) -> Subspace | None:
    """Column space of T applied to V; None when the image is {0}."""
    return Subspace.from_spanning(T.space, T.matrix @ V.basis)


def _run_predicate(subspaces, check) -> PredicateVerdict:
    tested = 0
    for v in subspaces:
        tested += 1
        bad = check(v)
        if bad is not None:
            return PredicateVerdict("counterexample", v, bad, tested)
    return PredicateVerdict("holds-on-samples", None, "", tested)


def preserves_definiteness_with_sign(
    T: Operator, subspaces=(), n_random: int = 200, seed: int = 0
) -> PredicateVerdict:
    """Images of uniformly definite subspaces stay definite with their sign."""
    rng = rng_from_seed(seed)
    pool = list(subspaces)
    p, q = T.space.signature
    for _ in range(n_random):
        sign = 1 if (q == 0 or (p > 0 and rng.uniform() < 0.5)) else -1
        pool.append(random_definite_subspace(T.space, rng, sign))

    def check(v):
        cls = v.classify()
        if not cls.uniformly_definite:
            raise ClassificationError(
                "definiteness predicate only tests uniformly definite subspaces"
            )
        img = image_subspace(T, v)
        if img is None:
            return "image is the zero subspace"
        icls = img.classify()
        if icls.sign != cls.sign:
            return (
                f"image of a {cls.kind.value} subspace classifies as "
                f"{icls.kind.value}"
            )
        return None

    return _run_predicate(pool, check)


def preserves_maximality(
    T: Operator, subspaces=(), n_random: int = 200, seed: int = 0
) -> PredicateVerdict:
    """Images of maximal uniformly definite subspaces stay maximal definite."""
    rng = rng_from_seed(seed)
    pool = list(subspaces)
    p, q = T.space.signature
    for _ in range(n_random):
        sign = 1 if (q == 0 or (p > 0 and rng.uniform() < 0.5)) else -1
        pool.append(random_maximal_definite_subspace(T.space, rng, sign))

    def check(v):
        img = image_subspace(T, v)
        if img is None:
            return "image is the zero subspace"
        icls = img.classify()
        if not icls.uniformly_definite:
            return f"image classifies as {icls.kind.value}"
        if not icls.maximal_definite:
            return (
                f"image is uniformly definite but of dimension {img.dim}, "
                "not maximal"
            )
        return None

    return _run_predicate(pool, check)


def preserves_regularity(
    T: Operator, subspaces=(), n_random: int = 200, seed: int = 0
) -> PredicateVerdict:
    """Images of regular subspaces stay regular."""
    rng = rng_from_seed(seed)
    pool = list(subspaces)
    for _ in range(n_random):
        pool.append(random_regular_subspace(T.space, rng))

    def check(v):
        img = image_subspace(T, v)
        if img is None:
            return None  # the zero subspace is trivially regular
        if not img.classify().regular:
            return "image is degenerate"
        return None

    return _run_predicate(pool, check)


def preservation_report(
    T: Operator, subspaces=(), n_random: int = 200, seed: int = 0
) -> PreservationReport:
    definite = [s for s in subspaces if s.classify().uniformly_definite]
    maximal = [s for s in definite if s.classify().maximal_definite]
    regular = [s for s in subspaces if s.classify().regular]
    return PreservationReport(
        preserves_definiteness_with_sign(T, definite, n_random, seed),
        preserves_maximality(T, maximal, n_random, seed),
        preserves_regularity(T, regular, n_random, seed),
    )


def _operator_rank(T: Operator) -> int:
    s = np.linalg.svd(T.matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > T.space.tol.tau_rank * s[0]))


def transform_family(
    T: Operator, F: WeightedFamily
) -> tuple[WeightedFamily, FrameCertificate]:
    """The image family {(T(W_i), v_i)} together with its certificate.

    Raises MemberClassificationError when some image is not uniformly
    definite; that is exactly a definiteness-preservation failure.
    """
    if _operator_rank(T) < T.space.dim:
        raise NotSurjectiveError("transform requires a surjective operator")
    images = []
    for w in F.subspaces:
        img = image_subspace(T, w)
        if img is None:
            raise NotSurjectiveError("a member was annihilated by the operator")
        images.append(img)
    family = WeightedFamily(F.space, images, F.weights)
    return family, certify(family)


def projection_commutation_check(T: Operator, V: Subspace) -> float:
    """Residual of Q_V T# = Q_V T# Q_{T(V)} for a regular V with regular image."""
    q_v = j_projection(V).matrix  # raises DegenerateSubspaceError if V degenerate
    img = image_subspace(T, V)
    if img is None:
        raise DegenerateSubspaceError(
            "image of V is the zero subspace; the commutation identity "
            "requires a regular image"
        )
    q_img = j_projection(img).matrix
    lhs = q_v @ j_adjoint(T).matrix
    return float(np.linalg.norm(lhs - lhs @ q_img, 2))


def is_j_isometry_multiple(T: Operator) -> tuple[bool, float]:
    """Whether T# T = c I for a real c > 0; returns (verdict, c).

    Such operators scale the indefinite product by c and therefore preserve
    definiteness with sign, maximality and regularity exactly.
    """
    g = j_adjoint(T).matrix @ T.matrix
    n = T.space.dim
    c = complex(np.trace(g)) / n
    residual = np.linalg.norm(g - c * np.eye(n), 2)
    tol = T.space.tol.tau_num * max(1.0, abs(c)) * n
    scalar = residual < tol and abs(c.imag) < tol
    return bool(scalar and c.real > 0), float(c.real)


@dataclass(frozen=True)
class NecessaryConditionsReport:
    positive_image_dim: int
    negative_image_dim: int
    positive_image_maximal: bool
    negative_image_maximal: bool
    direct_sum: bool
    holds: bool


def necessary_conditions_check(
    T: Operator, F: WeightedFamily
) -> NecessaryConditionsReport:
    """Decomposition induced by a frame-preserving operator.

    When both F and its image family are frames, the signed image spans
    must decompose the space as a direct sum of maximal uniformly definite
    subspaces of opposite signs.
    """
    if not certify(F).is_frame:
        raise HypothesisNotMetError("F must be a certified J-fusion frame")
    family, cert = transform_family(T, F)
    if not cert.is_frame:
        raise HypothesisNotMetError("the image family must also certify as a frame")

    def signed_span(sign):
        idx = F.plus_indices if sign == 1 else F.minus_indices
        cols = np.hstack([family.subspaces[i].ortho_basis for i in idx])
        return Subspace.from_spanning(F.space, cols)

    p, q = F.space.signature
    span_p = signed_span(1) if F.plus_indices else None
    span_m = signed_span(-1) if F.minus_indices else None
    dim_p = span_p.dim if span_p is not None else 0
    dim_m = span_m.dim if span_m is not None else 0
    max_p = (dim_p == p == 0) or (
        span_p is not None
        and span_p.classify().kind is SubspaceKind.UNIFORMLY_POSITIVE
        and dim_p == p
    )
    max_m = (dim_m == q == 0) or (
        span_m is not None
        and span_m.classify().kind is SubspaceKind.UNIFORMLY_NEGATIVE
        and dim_m == q
    )
    pieces = [s.ortho_basis for s in (span_p, span_m) if s is not None]
    stacked = np.hstack(pieces)
    sv = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.count_nonzero(sv > F.space.tol.tau_rank * sv[0]))
    direct = rank == dim_p + dim_m == F.space.dim
    return NecessaryConditionsReport(
        dim_p, dim_m, max_p, max_m, direct, max_p and max_m and direct
    )


def alternating_signature_space(
    m: int = 4, tol: Tolerances = DEFAULT_TOLERANCES
) -> KreinSpace:
    """C^m with the alternating diagonal symmetry diag(1, -1, 1, -1, ...)."""
    if m < 2:
        raise ValueError("need at least two coordinates")
    signs = [1.0 if i % 2 == 0 else -1.0 for i in range(m)]
    return KreinSpace(np.diag(signs), tol=tol)


def neutral_image_operator(space: KreinSpace) -> Operator:
    """Invertible operator sending the first axis onto a neutral line.

    Acts as [[1, 1], [1, 2]] on the first two coordinates and as the
    identity beyond; on an alternating-signature space the image of
    span{e_1} is the neutral line span{(1, 1, 0, ...)}.
    """
    m = space.dim
    if m < 2:
        raise ValueError("need at least two coordinates")
    t = np.eye(m, dtype=complex)
    t[0, 0], t[0, 1] = 1.0, 1.0
    t[1, 0], t[1, 1] = 1.0, 2.0
    return Operator(space, t)
