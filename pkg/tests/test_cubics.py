"""Tests for the cubic-algebra layer: types, decomposition, classification."""

import itertools
import math

import numpy as np
import pytest

from slag3.cubics import (
    LEX_TRIPLES,
    AxisDecomposition,
    HarmonicCubic,
    Rotation3,
    StabilizerType,
    axis_decompose,
    classify,
    divide_by_linear,
    evaluate_and_gradient,
    find_symmetry_axes,
    invariants,
    is_reducible,
    normal_form,
    project_traceless,
    rotate,
    singular_directions,
    transport_rotation,
)

ST = StabilizerType

# canonical cubics, written out in the lexicographic coefficient order
# (111,112,113,122,123,133,222,223,233,333)
P0 = HarmonicCubic(np.array([0, 0, -1, 0, 0, 0, 0, -1, 0, 2.0]))   # z(2z^2-3x^2-3y^2)
XYZ6 = HarmonicCubic(np.array([0, 0, 0, 0, 1.0, 0, 0, 0, 0, 0]))   # 6xyz
CUBE3 = HarmonicCubic(np.array([1.0, 0, 0, -1, 0, 0, 0, 0, 0, 0])) # x^3-3xy^2


def n_family(r, s):
    """r*z(2z^2-3x^2-3y^2) + 6s*xyz."""
    c = r * P0.coeffs.copy()
    c[4] += s
    return HarmonicCubic(c)


def m_family(r, s):
    """r*z(2z^2-3x^2-3y^2) + s*(x^3-3xy^2)."""
    return HarmonicCubic(r * P0.coeffs + s * CUBE3.coeffs)


def random_rotation(rng):
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return Rotation3(np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ]))


def random_cubic(rng):
    return project_traceless(rng.normal(size=10))


# the seven canonical representatives plus the two boundary collapses
CORPUS = [
    ("zero", HarmonicCubic.zero(), ST.FULL, 0.0, 0.0),
    ("axial", P0, ST.CIRCLE, 1.0, 0.0),
    ("xyz", XYZ6, ST.A4, 0.0, 1.0),
    ("cube", CUBE3, ST.S3, 0.0, 1.0),
    ("n12", n_family(1.0, 2.0), ST.Z2, 1.0, 2.0),
    ("m13", m_family(1.0, 3.0), ST.Z3, 1.0, 3.0),
    ("random", random_cubic(np.random.default_rng(20240811)), ST.TRIVIAL,
     0.0, 0.0),
    ("n11", n_family(1.0, 1.0), ST.S3, 0.0, 2.0),
    ("m1r2", m_family(1.0, math.sqrt(2.0)), ST.A4, 0.0, math.sqrt(3.0)),
]


def poly_value(h, x):
    """Oracle: brute-force sum of h_ijk x_i x_j x_k over all 27 triples."""
    t = h.tensor
    return sum(t[i, j, k] * x[i] * x[j] * x[k]
               for i, j, k in itertools.product(range(3), repeat=3))


# ---------------------------------------------------------------------------
# construction and validation


class TestHarmonicCubic:
    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            HarmonicCubic(np.zeros(9))

    def test_rejects_nonfinite(self):
        c = np.zeros(10)
        c[0] = np.nan
        with pytest.raises(ValueError):
            HarmonicCubic(c)

    def test_rejects_traceful(self):
        c = np.zeros(10)
        c[0] = 1.0  # x^3 alone has trace (1,0,0)
        with pytest.raises(ValueError):
            HarmonicCubic(c)

    def test_norm_matches_27_triple_sum(self):
        rng = np.random.default_rng(0)
        h = random_cubic(rng)
        brute = math.sqrt(sum(
            h.tensor[i, j, k] ** 2
            for i, j, k in itertools.product(range(3), repeat=3)))
        assert h.norm() == pytest.approx(brute, rel=1e-14)

    def test_json_round_trip(self):
        h = n_family(1.0, 2.0)
        again = HarmonicCubic.from_json_dict(h.to_json_dict())
        assert np.array_equal(again.coeffs, h.coeffs)


class TestRotation3:
    def test_rejects_non_orthogonal(self):
        bad = np.eye(3)
        bad[0, 1] = 1e-6
        with pytest.raises(ValueError):
            Rotation3(bad)

    def test_rejects_reflection(self):
        with pytest.raises(ValueError):
            Rotation3(np.diag([1.0, 1.0, -1.0]))

    def test_about_axis_half_turn(self):
        R = Rotation3.about_axis([1.0, 0.0, 0.0], math.pi)
        assert np.allclose(R.entries, np.diag([1.0, -1.0, -1.0]), atol=1e-15)

    def test_compose_is_matrix_product(self):
        rng = np.random.default_rng(1)
        a, b = random_rotation(rng), random_rotation(rng)
        assert np.allclose(a.compose(b).entries, a.entries @ b.entries)


# ---------------------------------------------------------------------------
# project_traceless


class TestProjectTraceless:
    def test_traceless_input_unchanged(self):
        out = project_traceless(XYZ6.coeffs)
        assert np.array_equal(out.coeffs, XYZ6.coeffs)

    def test_x_cubed_projects_to_zero_trace(self):
        c = np.zeros(10)
        c[0] = 1.0
        out = project_traceless(c)
        assert np.max(np.abs(out.trace_vector())) < 1e-15

    def test_idempotent_on_random_input(self):
        rng = np.random.default_rng(2)
        t = rng.normal(size=10)
        once = project_traceless(t)
        twice = project_traceless(once.coeffs)
        assert np.max(np.abs(once.coeffs - twice.coeffs)) < 1e-15

    def test_rejects_nonfinite(self):
        c = np.zeros(10)
        c[3] = np.inf
        with pytest.raises(ValueError):
            project_traceless(c)


# ---------------------------------------------------------------------------
# evaluate_and_gradient


class TestEvaluateAndGradient:
    def test_xyz_at_ones(self):
        value, grad = evaluate_and_gradient(XYZ6, [1.0, 1.0, 1.0])
        assert value == pytest.approx(6.0, abs=1e-14)
        assert np.allclose(grad, [6.0, 6.0, 6.0], atol=1e-14)

    def test_any_cubic_at_origin(self):
        value, grad = evaluate_and_gradient(n_family(1.0, 2.0), np.zeros(3))
        assert value == 0.0
        assert np.array_equal(grad, np.zeros(3))

    def test_cube_at_z_axis(self):
        value, grad = evaluate_and_gradient(CUBE3, [0.0, 0.0, 1.0])
        assert value == 0.0
        assert np.allclose(grad, np.zeros(3), atol=1e-15)

    def test_value_matches_brute_force(self):
        rng = np.random.default_rng(3)
        h = random_cubic(rng)
        x = rng.normal(size=3)
        value, _ = evaluate_and_gradient(h, x)
        assert value == pytest.approx(poly_value(h, x), rel=1e-13)

    def test_euler_identity(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            h = random_cubic(rng)
            x = rng.normal(size=3)
            value, grad = evaluate_and_gradient(h, x)
            assert np.dot(grad, x) == pytest.approx(3.0 * value, rel=1e-12)


# ---------------------------------------------------------------------------
# rotate


class TestRotate:
    def test_identity_fixes(self):
        h = n_family(1.0, 2.0)
        out = rotate(h, Rotation3.identity())
        assert np.allclose(out.coeffs, h.coeffs, atol=1e-15)

    def test_axial_cubic_flips_under_half_turn_about_x(self):
        R = Rotation3.about_axis([1.0, 0.0, 0.0], math.pi)
        out = rotate(P0, R)
        assert np.allclose(out.coeffs, -P0.coeffs, atol=1e-14)

    def test_xyz_flips_under_quarter_turn_about_z(self):
        R = Rotation3.about_axis([0.0, 0.0, 1.0], math.pi / 2)
        out = rotate(XYZ6, R)
        assert np.allclose(out.coeffs, -XYZ6.coeffs, atol=1e-14)

    def test_is_isometry(self):
        rng = np.random.default_rng(5)
        h = random_cubic(rng)
        R = random_rotation(rng)
        assert rotate(h, R).norm() == pytest.approx(h.norm(), rel=1e-12)

    def test_pullback_composition(self):
        rng = np.random.default_rng(6)
        h = random_cubic(rng)
        r1, r2 = random_rotation(rng), random_rotation(rng)
        lhs = rotate(rotate(h, r1), r2)
        rhs = rotate(h, r1.compose(r2))
        assert np.allclose(lhs.coeffs, rhs.coeffs, atol=1e-12)

    def test_matches_polynomial_substitution(self):
        rng = np.random.default_rng(7)
        h = random_cubic(rng)
        R = random_rotation(rng)
        x = rng.normal(size=3)
        rotated_value, _ = evaluate_and_gradient(rotate(h, R), x)
        direct_value, _ = evaluate_and_gradient(h, R.entries @ x)
        assert rotated_value == pytest.approx(direct_value, rel=1e-12)

    def test_rejects_invalid_rotation(self):
        bad = np.eye(3)
        bad[1, 2] = 1e-5
        with pytest.raises(ValueError):
            rotate(XYZ6, bad)


# ---------------------------------------------------------------------------
# invariants


class TestInvariants:
    def test_zero_cubic(self):
        assert invariants(HarmonicCubic.zero()) == (0.0, 0.0)

    def test_xyz_quadratic_invariant(self):
        # oracle: direct 27-triple contraction of the full tensor with itself
        brute = sum(XYZ6.tensor[i, j, k] ** 2
                    for i, j, k in itertools.product(range(3), repeat=3))
        assert brute == pytest.approx(6.0, abs=1e-15)
        i2, _ = invariants(XYZ6)
        assert i2 == pytest.approx(6.0, rel=1e-14)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            h = random_cubic(rng)
            R = random_rotation(rng)
            i2, i4 = invariants(h)
            j2, j4 = invariants(rotate(h, R))
            assert j2 == pytest.approx(i2, rel=1e-10)
            assert j4 == pytest.approx(i4, rel=1e-10)

    def test_quartic_bounds(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            i2, i4 = invariants(random_cubic(rng))
            assert 0.0 <= i4 <= i2 ** 2 * (1 + 1e-12)


# ---------------------------------------------------------------------------
# axis_decompose


class TestAxisDecompose:
    Z = np.array([0.0, 0.0, 1.0])

    def test_axial_cubic_about_z(self):
        d = axis_decompose(P0, self.Z)
        assert abs(d.c0) > 1.0
        assert abs(d.c1) < 1e-14 and abs(d.c2) < 1e-14 and abs(d.c3) < 1e-14

    def test_xyz_about_z_is_pure_second_mode(self):
        d = axis_decompose(XYZ6, self.Z)
        assert abs(d.c0) < 1e-14 and abs(d.c1) < 1e-14
        assert abs(d.c2) == pytest.approx(math.sqrt(6.0), rel=1e-14)
        assert abs(d.c3) < 1e-14

    def test_cube_about_z_is_pure_third_mode(self):
        d = axis_decompose(CUBE3, self.Z)
        assert abs(d.c0) < 1e-14 and abs(d.c1) < 1e-14 and abs(d.c2) < 1e-14
        assert abs(d.c3) == pytest.approx(2.0, rel=1e-14)

    def test_parseval(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            h = random_cubic(rng)
            w = rng.normal(size=3)
            w /= np.linalg.norm(w)
            d = axis_decompose(h, w)
            total = d.c0 ** 2 + abs(d.c1) ** 2 + abs(d.c2) ** 2 + abs(d.c3) ** 2
            assert total == pytest.approx(h.norm() ** 2, rel=1e-10)

    def test_phase_rotation_quarter_turn(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            h = random_cubic(rng)
            w = rng.normal(size=3)
            w /= np.linalg.norm(w)
            alpha = math.pi / 2
            before = axis_decompose(h, w)
            after = axis_decompose(rotate(h, Rotation3.about_axis(w, alpha)), w)
            for k in (1, 2, 3):
                expected = np.exp(1j * k * alpha) * getattr(before, f"c{k}")
                assert abs(getattr(after, f"c{k}") - expected) < 1e-10 * h.norm()
            assert after.c0 == pytest.approx(before.c0, abs=1e-12 * h.norm())

    def test_rejects_zero_axis(self):
        with pytest.raises(ValueError):
            axis_decompose(XYZ6, np.zeros(3))

    def test_rejects_non_unit_axis(self):
        with pytest.raises(ValueError):
            axis_decompose(XYZ6, np.array([0.0, 0.0, 2.0]))

    def test_transport_rotation_carries_z_to_axis(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            w = rng.normal(size=3)
            w /= np.linalg.norm(w)
            R = transport_rotation(w)
            assert np.allclose(R.entries @ self.Z, w, atol=1e-12)


# ---------------------------------------------------------------------------
# find_symmetry_axes


def axis_set(entries):
    return {tuple(np.round(w, 6)) for w, _ in entries}


class TestFindSymmetryAxes:
    def test_xyz_has_cube_axes(self):
        axes = find_symmetry_axes(XYZ6)
        assert axis_set(axes.order2) == {
            (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)}
        e = round(1 / math.sqrt(3.0), 6)
        assert axis_set(axes.order3) == {
            (e, e, e), (e, e, -e), (e, -e, e), (e, -e, -e)}
        assert axes.circle == ()

    def test_cube_has_triangle_axes(self):
        axes = find_symmetry_axes(CUBE3)
        assert axis_set(axes.order3) == {(0.0, 0.0, 1.0)}
        expected2 = {(1.0, 0.0, 0.0),
                     (round(0.5, 6), round(math.sqrt(3) / 2, 6), 0.0),
                     (round(0.5, 6), round(-math.sqrt(3) / 2, 6), -0.0)}
        got = axis_set(axes.order2)
        assert len(got) == 3
        for w in got:
            assert min(np.linalg.norm(np.array(w) - np.array(e))
                       for e in expected2) < 1e-5
        assert axes.circle == ()

    def test_axial_cubic_has_circle_axis(self):
        axes = find_symmetry_axes(P0)
        assert axis_set(axes.circle) == {(0.0, 0.0, 1.0)}
        assert axes.order2 == () and axes.order3 == ()

    def test_residuals_below_threshold(self):
        h = rotate(n_family(1.0, 2.0),
                   Rotation3.about_axis([1.0, 2.0, -1.0], 0.8))
        axes = find_symmetry_axes(h)
        for w, res in axes.order2 + axes.order3 + axes.circle:
            assert res <= 1e-6 * h.norm()

    def test_axes_canonical_sign(self):
        h = rotate(XYZ6, Rotation3.about_axis([2.0, 1.0, 1.0], 0.9))
        axes = find_symmetry_axes(h)
        for w, _ in axes.order2 + axes.order3:
            first = w[np.flatnonzero(np.abs(w) > 1e-8)[0]]
            assert first > 0

    def test_rejects_zero_cubic(self):
        with pytest.raises(ValueError):
            find_symmetry_axes(HarmonicCubic.zero())


# ---------------------------------------------------------------------------
# classify


class TestClassify:
    @pytest.mark.parametrize("name,h,expected,r,s",
                             CORPUS, ids=[c[0] for c in CORPUS])
    def test_corpus(self, name, h, expected, r, s):
        fit = classify(h)
        assert fit.type is expected
        if expected not in (ST.FULL, ST.TRIVIAL):
            assert fit.r == pytest.approx(r, abs=1e-6)
            assert fit.s == pytest.approx(s, abs=1e-6)
            assert fit.residual <= 1e-6 * h.norm()

    @pytest.mark.parametrize("name,h,expected,r,s",
                             [c for c in CORPUS if c[2] not in
                              (ST.FULL, ST.TRIVIAL)],
                             ids=[c[0] for c in CORPUS if c[2] not in
                                  (ST.FULL, ST.TRIVIAL)])
    def test_rotation_carries_to_normal_form(self, name, h, expected, r, s):
        fit = classify(h)
        target = normal_form(fit.type, fit.r, fit.s)
        diff = rotate(h, fit.rotation) - target
        assert diff.norm() <= 1e-6 * h.norm()

    def test_boundary_distances_reported(self):
        z2 = classify(n_family(1.0, 2.0))
        assert z2.dist_s_minus_r == pytest.approx(1.0, abs=1e-9)
        z3 = classify(m_family(1.0, 3.0))
        assert z3.dist_s_minus_rsqrt2 == pytest.approx(3.0 - math.sqrt(2.0),
                                                       abs=1e-9)

    def test_runtime_under_one_second(self):
        import time
        for _, h, _, _, _ in CORPUS:
            start = time.perf_counter()
            classify(h)
            assert time.perf_counter() - start < 1.0


class TestClassifyProperties:
    def test_orbit_invariance(self):
        rng = np.random.default_rng(13)
        for name, h, expected, _, _ in CORPUS:
            if expected is ST.FULL:
                continue
            ref = classify(h)
            scale = h.norm()
            for _ in range(200):
                fit = classify(rotate(h, random_rotation(rng)))
                assert fit.type is expected, name
                assert abs(fit.r - ref.r) <= 1e-6 * scale
                assert abs(fit.s - ref.s) <= 1e-6 * scale

    def test_sign_invariance(self):
        for name, h, expected, _, _ in CORPUS:
            flipped = classify(HarmonicCubic(-h.coeffs))
            assert flipped.type is expected, name

    def test_scale_equivariance(self):
        for lam in (0.37, 5.0):
            for name, h, expected, _, _ in CORPUS:
                if expected is ST.FULL:
                    continue
                ref = classify(h)
                fit = classify(h.scaled(lam))
                assert fit.type is expected, name
                assert fit.r == pytest.approx(lam * ref.r, abs=1e-6 * lam)
                assert fit.s == pytest.approx(lam * ref.s, abs=1e-6 * lam)


# ---------------------------------------------------------------------------
# singular_directions


class TestSingularDirections:
    def test_xyz_coordinate_axes(self):
        dirs = singular_directions(XYZ6)
        got = {tuple(np.round(w, 6)) for w in dirs}
        assert got == {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)}

    def test_cube_z_axis_only(self):
        dirs = singular_directions(CUBE3)
        assert len(dirs) == 1
        assert np.allclose(dirs[0], [0.0, 0.0, 1.0], atol=1e-8)

    def test_axial_cubic_none(self):
        # oracle: a dense sphere scan keeps the gradient norm far from zero
        rng = np.random.default_rng(14)
        pts = rng.normal(size=(100_000, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        grads = 3.0 * np.einsum("pjk,nj,nk->np", P0.tensor, pts, pts)
        assert np.linalg.norm(grads, axis=1).min() > 1.0
        assert singular_directions(P0) == []

    def test_gradient_small_at_results(self):
        h = rotate(XYZ6, Rotation3.about_axis([1.0, 1.0, 0.0], 1.2))
        for w in singular_directions(h):
            _, grad = evaluate_and_gradient(h, w)
            assert np.linalg.norm(grad) <= 1e-6 * h.norm()

    def test_count_at_most_three_and_three_implies_special(self):
        rng = np.random.default_rng(15)
        for name, h, expected, _, _ in CORPUS:
            if expected is ST.FULL:
                continue
            dirs = singular_directions(h)
            assert len(dirs) <= 3
            if len(dirs) == 3:
                assert expected in (ST.A4, ST.S3, ST.FULL), name
        for _ in range(5):
            h = random_cubic(rng)
            assert len(singular_directions(h)) <= 3

    def test_circle_type_has_no_singular_direction(self):
        h = rotate(P0.scaled(2.5), Rotation3.about_axis([1.0, 0.0, 1.0], 0.7))
        assert singular_directions(h) == []


# ---------------------------------------------------------------------------
# is_reducible / divide_by_linear


class TestReducibility:
    def test_cube_divisible_by_x(self):
        flag, form = is_reducible(CUBE3)
        assert flag
        assert np.allclose(form, [1.0, 0.0, 0.0], atol=1e-9)

    def test_z2_family_divisible_by_z(self):
        flag, form = is_reducible(n_family(1.0, 2.0))
        assert flag
        assert np.allclose(form, [0.0, 0.0, 1.0], atol=1e-9)

    def test_z3_family_irreducible(self):
        flag, form = is_reducible(m_family(1.0, 3.0))
        assert not flag
        assert form is None

    def test_division_remainder_vanishes_when_reducible(self):
        rng = np.random.default_rng(16)
        for name, h, expected, _, _ in CORPUS:
            if expected is ST.FULL:
                continue
            hr = rotate(h, random_rotation(rng))
            flag, form = is_reducible(hr)
            has_axis = bool(find_symmetry_axes(hr).order2
                            or find_symmetry_axes(hr).circle)
            assert flag == has_axis, name
            if flag:
                _, remainder = divide_by_linear(hr, form)
                assert remainder <= 1e-6 * hr.norm()

    def test_division_remainder_positive_when_irreducible(self):
        _, remainder = divide_by_linear(m_family(1.0, 3.0), [0.0, 0.0, 1.0])
        assert remainder > 1e-2

    def test_exact_quotient(self):
        quad, remainder = divide_by_linear(CUBE3, [1.0, 0.0, 0.0])
        assert remainder < 1e-12
        # quotient x^2 - 3y^2
        assert np.allclose(quad, np.diag([1.0, -3.0, 0.0]), atol=1e-12)
