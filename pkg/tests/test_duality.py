"""Tests for vector J-frames, canonical duals and the dual-bound relations."""

import numpy as np
import pytest

from kreinframes import (
    KreinSpace,
    MemberClassificationError,
    NotAFrameError,
    Subspace,
    VectorFrame,
    as_weighted_family,
    canonical_dual,
    certify,
    dual_bounds_check,
    fundamental_identity_residual,
    fusion_dual_bounds_check,
    indefinite_product,
    is_j_frame,
    j_adjoint,
    partial_frame_operator,
    vframe_operator,
    vframe_optimal_bounds,
)
from kreinframes.duality import fundamental_identity_sides
from kreinframes.fusion import WeightedFamily
from kreinframes.sampling import (
    random_complex,
    random_fusion_frame,
    random_space,
    random_vector_frame,
    rng_from_seed,
)


def parseval_frame(n=3):
    space = KreinSpace(np.eye(n))
    return VectorFrame(space, list(np.eye(n)))


class TestVectorFrame:
    def test_signs(self, coupled_frame):
        assert coupled_frame.signs == [1, 1, -1]
        assert coupled_frame.plus_indices == [0, 1]
        assert coupled_frame.minus_indices == [2]

    def test_neutral_member_rejected(self, minkowski):
        with pytest.raises(MemberClassificationError) as err:
            VectorFrame(minkowski, [[1.0, 1.0]])
        assert "neutral" in str(err.value)

    def test_zero_member_rejected(self, minkowski):
        with pytest.raises(MemberClassificationError):
            VectorFrame(minkowski, [[0.0, 0.0]])

    def test_signed_spans_recorded(self, coupled_frame):
        assert coupled_frame.m_plus.dim == 2
        assert coupled_frame.m_minus.dim == 1
        assert coupled_frame.m_minus.contains([0, 1, 2])


class TestVframeOperator:
    def test_parseval_identity(self):
        frame = parseval_frame()
        np.testing.assert_allclose(vframe_operator(frame).matrix, np.eye(3))

    def test_minkowski_axes_identity(self, minkowski):
        frame = VectorFrame(minkowski, [[1.0, 0.0], [0.0, 1.0]])
        np.testing.assert_allclose(
            vframe_operator(frame).matrix, np.eye(2), atol=1e-12
        )

    def test_j_selfadjoint_random(self):
        rng = rng_from_seed(30)
        for _ in range(10):
            space = random_space(rng, int(rng.integers(2, 7)))
            frame = random_vector_frame(space, rng)
            s = vframe_operator(frame)
            np.testing.assert_allclose(j_adjoint(s).matrix, s.matrix, atol=1e-9)

    def test_agrees_with_weighted_family(self, coupled_frame):
        fam = as_weighted_family(coupled_frame)
        from kreinframes import frame_operator

        np.testing.assert_allclose(
            frame_operator(fam).matrix,
            vframe_operator(coupled_frame).matrix,
            atol=1e-10,
        )


class TestIsJFrame:
    def test_axes(self, minkowski):
        assert is_j_frame(VectorFrame(minkowski, [[1.0, 0.0], [0.0, 1.0]]))

    def test_one_side_missing(self, minkowski):
        assert not is_j_frame(VectorFrame(minkowski, [[1.0, 0.0]]))

    def test_coupled_frame(self, coupled_frame):
        assert is_j_frame(coupled_frame)


class TestVframeOptimalBounds:
    def test_parseval(self):
        bounds = vframe_optimal_bounds(parseval_frame())
        assert bounds.b_minus is None and bounds.a_minus is None
        assert bounds.a_plus == pytest.approx(1.0)
        assert bounds.b_plus == pytest.approx(1.0)

    def test_weighted_axes(self, axis_frame):
        np.testing.assert_allclose(
            vframe_optimal_bounds(axis_frame).as_tuple(), (-9.0, -9.0, 4.0, 4.0)
        )

    def test_requires_frame(self, minkowski):
        with pytest.raises(NotAFrameError):
            vframe_optimal_bounds(VectorFrame(minkowski, [[1.0, 0.0]]))

    def test_bracket_sampled_quotients(self):
        rng = rng_from_seed(31)
        for _ in range(5):
            space = random_space(rng, int(rng.integers(2, 7)))
            frame = random_vector_frame(space, rng)
            bounds = vframe_optimal_bounds(frame)
            J = space.J
            for span, idx, lo, hi in (
                (frame.m_plus, frame.plus_indices, bounds.a_plus, bounds.b_plus),
                (frame.m_minus, frame.minus_indices, bounds.b_minus, bounds.a_minus),
            ):
                cols = frame.matrix[:, idx]
                for _ in range(300):
                    f = span.ortho_basis @ random_complex(rng, span.dim)
                    num = float(np.sum(np.abs(cols.conj().T @ (J @ f)) ** 2))
                    den = np.vdot(f, J @ f).real
                    q = num / den
                    assert lo - 1e-9 * (1 + abs(lo)) <= q <= hi + 1e-9 * (1 + abs(hi))


class TestCanonicalDual:
    def test_parseval_dual_is_self(self):
        frame = parseval_frame()
        dual = canonical_dual(frame)
        np.testing.assert_allclose(dual.matrix, frame.matrix, atol=1e-12)

    def test_axis_dual_vector(self, axis_frame):
        dual = canonical_dual(axis_frame)
        np.testing.assert_allclose(dual.vector(0), [0.5, 0.0], atol=1e-12)
        np.testing.assert_allclose(dual.vector(1), [0.0, 1.0 / 3.0], atol=1e-12)

    def test_reconstruction(self):
        rng = rng_from_seed(32)
        for _ in range(5):
            space = random_space(rng, int(rng.integers(2, 7)))
            frame = random_vector_frame(space, rng)
            dual = canonical_dual(frame)
            sg = np.asarray(frame.signs, dtype=float)
            for _ in range(20):
                f = random_complex(rng, space.dim)
                coeff_dual = dual.matrix.conj().T @ (space.J @ f)
                rec1 = frame.matrix @ (sg * coeff_dual.conj()).conj()
                coeff_orig = frame.matrix.conj().T @ (space.J @ f)
                rec2 = dual.matrix @ (sg * coeff_orig.conj()).conj()
                scale = 1e-9 * (1 + np.linalg.norm(f))
                assert np.linalg.norm(rec1 - f) < scale
                assert np.linalg.norm(rec2 - f) < scale

    def test_sign_transport(self):
        rng = rng_from_seed(33)
        for _ in range(10):
            space = random_space(rng, int(rng.integers(2, 7)))
            frame = random_vector_frame(space, rng)
            dual = canonical_dual(frame)
            assert dual.signs == frame.signs
            assert dual.m_plus.classify().sign == 1
            assert dual.m_minus.classify().sign == -1

    def test_dual_spans_are_j_complements(self, coupled_frame):
        # S^-1 maps each signed span onto the J-orthogonal complement of the
        # opposite one
        dual = canonical_dual(coupled_frame)
        for v_idx in range(dual.m_plus.dim):
            v = dual.m_plus.ortho_basis[:, v_idx]
            for i in coupled_frame.minus_indices:
                prod = indefinite_product(
                    coupled_frame.space, v, coupled_frame.vector(i)
                )
                assert abs(prod) < 1e-10

    def test_requires_frame(self, minkowski):
        with pytest.raises(NotAFrameError):
            canonical_dual(VectorFrame(minkowski, [[1.0, 0.0]]))


class TestDualBoundsCheck:
    def test_parseval(self):
        report = dual_bounds_check(parseval_frame())
        assert report.ok
        assert report.dual.a_plus == pytest.approx(1.0)
        assert report.dual.b_plus == pytest.approx(1.0)

    def test_weighted_axes(self, axis_frame):
        report = dual_bounds_check(axis_frame)
        assert report.ok
        np.testing.assert_allclose(
            report.dual.as_tuple(),
            (-1.0 / 9.0, -1.0 / 9.0, 0.25, 0.25),
            atol=1e-12,
        )

    def test_coupled_frame_reciprocal(self, coupled_frame):
        report = dual_bounds_check(coupled_frame)
        assert report.ok
        np.testing.assert_allclose(
            report.dual.as_tuple(),
            (-1.0 / 3.0, -1.0 / 3.0, 1.0, 1.0),
            atol=1e-12,
        )

    def test_coupled_frame_own_span_bounds_differ(self, coupled_frame):
        # over the dual's own spans the quotient range is different; the
        # reciprocal relation concerns the original decomposition
        report = dual_bounds_check(coupled_frame)
        assert report.dual_own_spans.a_plus == pytest.approx(0.75)
        assert report.dual_own_spans.a_minus == pytest.approx(-0.25)

    def test_axes_own_span_bounds_coincide(self, axis_frame):
        # with J-orthogonal signed spans both readings agree
        report = dual_bounds_check(axis_frame)
        np.testing.assert_allclose(
            report.dual_own_spans.as_tuple(), report.dual.as_tuple(), atol=1e-12
        )

    def test_random_frames(self):
        rng = rng_from_seed(34)
        for _ in range(20):
            space = random_space(rng, int(rng.integers(2, 8)))
            frame = random_vector_frame(space, rng)
            report = dual_bounds_check(frame)
            assert report.ok, report.max_rel_error


class TestPartialFrameOperator:
    def test_empty_subset(self, coupled_frame):
        s = partial_frame_operator(coupled_frame, [])
        np.testing.assert_allclose(s.matrix, np.zeros((3, 3)))

    def test_full_subset(self, coupled_frame):
        s = partial_frame_operator(coupled_frame, range(3))
        np.testing.assert_allclose(
            s.matrix, vframe_operator(coupled_frame).matrix, atol=1e-12
        )

    def test_partition_sums_to_whole(self):
        rng = rng_from_seed(35)
        space = random_space(rng, 5)
        frame = random_vector_frame(space, rng)
        subset = [0, 2]
        comp = [i for i in range(len(frame)) if i not in subset]
        total = (
            partial_frame_operator(frame, subset).matrix
            + partial_frame_operator(frame, comp).matrix
        )
        np.testing.assert_allclose(
            total, vframe_operator(frame).matrix, atol=1e-12
        )

    def test_out_of_range(self, coupled_frame):
        with pytest.raises(IndexError):
            partial_frame_operator(coupled_frame, [5])


class TestFundamentalIdentity:
    def test_empty_subset(self, coupled_frame):
        res = fundamental_identity_residual(coupled_frame, [], [1.0, 2.0, 3.0])
        assert res < 1e-9

    def test_parseval_any_subset(self):
        rng = rng_from_seed(36)
        frame = parseval_frame(4)
        for _ in range(10):
            subset = [i for i in range(4) if rng.uniform() < 0.5]
            f = random_complex(rng, 4)
            assert fundamental_identity_residual(frame, subset, f) < 1e-9

    def test_random_triples(self):
        rng = rng_from_seed(37)
        for _ in range(20):
            space = random_space(rng, int(rng.integers(2, 8)))
            frame = random_vector_frame(space, rng)
            subset = [i for i in range(len(frame)) if rng.uniform() < 0.5]
            f = random_complex(rng, space.dim)
            lhs, rhs = fundamental_identity_sides(frame, subset, f)
            scale = 1.0 + max(abs(lhs), abs(rhs))
            assert abs(lhs - rhs) < 1e-9 * scale

    def test_requires_frame(self, minkowski):
        with pytest.raises(NotAFrameError):
            fundamental_identity_residual(
                VectorFrame(minkowski, [[1.0, 0.0]]), [0], [1.0, 0.0]
            )


class TestFusionDualBounds:
    def test_parseval_holds(self, hilbert3):
        subspaces = [Subspace(hilbert3, np.eye(3)[:, [i]]) for i in range(3)]
        fam = WeightedFamily(hilbert3, subspaces, [1.0] * 3)
        report = fusion_dual_bounds_check(fam)
        assert report.holds
        np.testing.assert_allclose(report.dual.as_tuple()[2:], (1.0, 1.0))

    def test_weighted_axes_dual_is_the_family_itself(self, minkowski):
        # the inverse frame operator maps each axis onto itself, so the
        # subspace-transport dual with unchanged weights reproduces the
        # original family; its bounds cannot be the reciprocals, and the
        # report must record that finding rather than hide it
        subspaces = [
            Subspace(minkowski, [[1.0], [0.0]]),
            Subspace(minkowski, [[0.0], [1.0]]),
        ]
        fam = WeightedFamily(minkowski, subspaces, [2.0, 3.0])
        report = fusion_dual_bounds_check(fam)
        assert report.dual_is_frame
        np.testing.assert_allclose(
            report.dual.as_tuple(), (-9.0, -9.0, 4.0, 4.0), atol=1e-12
        )
        np.testing.assert_allclose(
            report.expected.as_tuple(),
            (-1.0 / 9.0, -1.0 / 9.0, 0.25, 0.25),
            atol=1e-12,
        )
        assert not report.holds
        assert "does not hold" in report.note

    def test_random_instances_are_recorded(self):
        # the fusion-level reciprocal relation is an empirical per-instance
        # finding; the report must carry a verdict and a note either way
        rng = rng_from_seed(38)
        seen_failure = False
        for _ in range(10):
            space = random_space(rng, int(rng.integers(2, 6)))
            fam = random_fusion_frame(space, rng)
            report = fusion_dual_bounds_check(fam)
            assert report.dual_is_frame
            assert report.note
            assert report.max_rel_error is not None
            seen_failure = seen_failure or not report.holds
        # generic instances do not satisfy the reciprocal relation
        assert seen_failure

    def test_requires_frame(self, minkowski):
        fam = WeightedFamily(minkowski, [Subspace(minkowski, [[1.0], [0.0]])], [1.0])
        with pytest.raises(NotAFrameError):
            fusion_dual_bounds_check(fam)


class TestAsWeightedFamily:
    def test_bounds_agree(self, coupled_frame):
        fam = as_weighted_family(coupled_frame)
        cert = certify(fam)
        assert cert.is_frame
        np.testing.assert_allclose(
            cert.optimal_bounds.as_tuple(),
            vframe_optimal_bounds(coupled_frame).as_tuple(),
            rtol=1e-9,
        )

    def test_bounds_agree_random(self):
        rng = rng_from_seed(39)
        for _ in range(10):
            space = random_space(rng, int(rng.integers(2, 7)))
            frame = random_vector_frame(space, rng)
            fam = as_weighted_family(frame)
            np.testing.assert_allclose(
                certify(fam).optimal_bounds.as_tuple(),
                vframe_optimal_bounds(frame).as_tuple(),
                rtol=1e-8,
                atol=1e-10,
            )


class TestHilbertSpecialization:
    def test_trivial_partition_reduces_to_classical(self):
        rng = rng_from_seed(40)
        space = KreinSpace(np.eye(4))
        vectors = [random_complex(rng, 4) for _ in range(6)]
        frame = VectorFrame(space, vectors)
        assert frame.signs == [1] * 6
        s = vframe_operator(frame).matrix
        f_mat = frame.matrix
        np.testing.assert_allclose(s, f_mat @ f_mat.conj().T, atol=1e-10)
        assert np.linalg.eigvalsh(s)[0] > 0
        dual = canonical_dual(frame)
        np.testing.assert_allclose(
            dual.matrix, np.linalg.inv(s) @ f_mat, atol=1e-10
        )
