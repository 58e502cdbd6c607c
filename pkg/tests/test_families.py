import math
from itertools import combinations

import numpy as np
import pytest

import orthoplex as op
from orthoplex import (
    AdmissibilityError,
    DegenerateKiteError,
    InputError,
    NotLiftableError,
)
from orthoplex import simplex as sx


def facet_circumradii(s):
    return np.array(
        [op.circumcenter(sx.face(s, sx.facet_indices(s, i)))[1] for i in range(s.n)]
    )


class TestRegular:
    def test_closed_forms_d3(self):
        m = op.regular_metrics(3, 1.0)
        assert m.circumradius**2 == pytest.approx(0.375, rel=1e-12)
        assert m.altitude == pytest.approx(0.816496580927726, rel=1e-9)
        assert m.volume == pytest.approx(0.1178511301977579, rel=1e-9)
        assert m.inradius == pytest.approx(0.2041241452319315, rel=1e-9)

    def test_closed_forms_d2(self):
        m = op.regular_metrics(2, 1.0)
        assert m.circumradius == pytest.approx(1 / math.sqrt(3), rel=1e-12)
        assert m.inradius == pytest.approx(1 / math.sqrt(12), rel=1e-12)

    @pytest.mark.parametrize("d", range(2, 11))
    def test_circum_to_inradius_ratio_is_d(self, d):
        m = op.regular_metrics(d, 1.3)
        assert m.circumradius / m.inradius == pytest.approx(d, rel=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_constructed_matches_closed_forms(self, d):
        s = op.regular(d, 1.0)
        m = op.regular_metrics(d, 1.0)
        assert np.allclose(sx.edge_lengths(s), 1.0, rtol=1e-12)
        _, big_r = op.circumcenter(s)
        _, small_r = op.incenter(s)
        assert big_r == pytest.approx(m.circumradius, rel=1e-9)
        assert small_r == pytest.approx(m.inradius, rel=1e-9)
        assert sx.volume(s) == pytest.approx(m.volume, rel=1e-9)


class TestKite:
    def test_regular_special_case(self):
        spec = op.KiteSpec(3, 1.0, 1.0)
        m = op.kite_metrics(spec)
        assert m.altitude == pytest.approx(math.sqrt(2 / 3), rel=1e-12)
        assert m.circumradius**2 == pytest.approx(3 / 8, rel=1e-12)

    @pytest.mark.parametrize("d", [3, 4, 6])
    @pytest.mark.parametrize("s", [1.0, 2.5])
    def test_unit_eccentricity_reduces_to_regular(self, d, s):
        km = op.kite_metrics(op.KiteSpec(d, s, s))
        rm = op.regular_metrics(d, s)
        assert km.circumradius == pytest.approx(rm.circumradius, rel=1e-10)
        assert km.inradius == pytest.approx(rm.inradius, rel=1e-10)
        assert km.altitude == pytest.approx(rm.altitude, rel=1e-10)
        assert km.volume == pytest.approx(rm.volume, rel=1e-10)

    @pytest.mark.parametrize("d", [3, 4, 5, 7])
    def test_base_circumradius_relation(self, d):
        m = op.kite_metrics(op.KiteSpec(d, 1.0, 0.9))
        assert m.base_circumradius**2 == pytest.approx((d - 1) / (2 * d), rel=1e-12)

    def test_constructed_matches_closed_forms(self):
        spec = op.KiteSpec(5, 1.0, 0.9)
        k = op.kite(spec)
        m = op.kite_metrics(spec)
        _, big_r = op.circumcenter(k)
        _, small_r = op.incenter(k)
        assert big_r == pytest.approx(m.circumradius, rel=1e-9)
        assert small_r == pytest.approx(m.inradius, rel=1e-9)
        assert sx.volume(k) == pytest.approx(m.volume, rel=1e-9)
        # apex edges all have length t, base edges s
        sq = sx.squared_edge_table(k)
        assert np.allclose(sq[5, :5], spec.t**2, rtol=1e-12)

    def test_kites_are_orthocentric(self):
        for d, t in [(3, 0.8), (4, 1.3), (6, 0.95)]:
            assert op.is_orthocentric(op.kite(op.KiteSpec(d, 1.0, t)))

    def test_degenerate_kite_rejected(self):
        with pytest.raises(DegenerateKiteError):
            op.KiteSpec(4, 1.0, math.sqrt(3 / 8))  # eps^2 exactly (d-1)/(2d)


class TestEquiradialKite:
    def test_d5_shape(self):
        spec = op.equiradial_kite(5)
        assert spec.t**2 == pytest.approx(0.6, rel=1e-12)
        k = op.kite(spec)
        flags = op.shape_predicates(k)
        assert flags.is_equiradial and not flags.is_regular

    def test_d5_facet_radii_agree(self):
        k = op.kite(op.equiradial_kite(5))
        radii = facet_circumradii(k)
        # both facet types give sqrt(2/5): base regular 4-simplex and
        # lateral 4-kites of eccentricity^2 = 0.6
        assert np.allclose(radii, math.sqrt(2 / 5), rtol=1e-9)
        assert np.max(radii) - np.min(radii) <= 1e-9 * np.max(radii)

    def test_d4_rectangular_at_apex(self):
        spec = op.equiradial_kite(4)
        assert spec.t**2 == pytest.approx(0.5, rel=1e-12)
        assert op.kite_metrics(spec).rectangular_at_apex
        k = op.kite(spec)
        v = k.vertices
        apex = v[-1]
        for i, j in combinations(range(4), 2):
            cosine = float((v[i] - apex) @ (v[j] - apex))
            assert cosine == pytest.approx(0.0, abs=1e-12)
        assert op.params_of(k).rectangular

    def test_d5_circumcenter_not_interior(self):
        spec = op.equiradial_kite(5)
        m = op.kite_metrics(spec)
        assert not m.circumcenter_interior  # 0.6 < 4/5
        rep = op.center_report(op.kite(spec))
        assert rep.coincident_pairs == ()

    @pytest.mark.parametrize("d", [5, 6, 7, 8])
    def test_orthocenter_barycentrics(self, d):
        # apex coordinate 1/(d-3), base coordinates (d-4)/(d(d-3))
        p = op.params_of(op.kite(op.equiradial_kite(d)))
        assert p.bary[-1] == pytest.approx(1 / (d - 3), rel=1e-8)
        assert np.allclose(p.bary[:-1], (d - 4) / (d * (d - 3)), rtol=1e-7)

    def test_low_dimension_rejected(self):
        with pytest.raises(InputError):
            op.equiradial_kite(3)


class TestRectangular:
    def test_legs_3_4(self):
        s = op.rectangular(op.RectSpec(2, (3.0, 4.0)))
        assert sx.edge_lengths(s).max() == pytest.approx(5.0)
        h = op.orthocenter(s)
        assert np.allclose(h, s.vertices[-1], atol=1e-12)

    def test_corner_faces_rectangular_hypotenuse_not(self):
        s = op.rectangular(op.RectSpec(3, (3.0, 4.0, 5.0)))
        corner = 3
        for idx in combinations(range(4), 3):
            f = sx.face(s, idx)
            p = op.params_of(f)
            if corner in idx:
                assert p.rectangular
            else:
                assert not p.rectangular
                assert np.all(p.bary > 0)  # interior orthocenter

    def test_metrics_3_4(self):
        m = op.rect_metrics(op.RectSpec(2, (3.0, 4.0)))
        assert m.volume == pytest.approx(6.0)
        assert m.hyp_volume == pytest.approx(5.0)
        assert m.altitude == pytest.approx(2.4)
        assert m.inradius == pytest.approx(1.0)
        assert m.r_squared == pytest.approx(6.25)
        assert np.allclose(m.circumcenter, [1.5, 2.0])

    def test_metrics_unit_legs(self):
        m = op.rect_metrics(op.RectSpec(3, (1.0, 1.0, 1.0)))
        assert m.volume == pytest.approx(1 / 6)
        assert m.hyp_volume == pytest.approx(math.sqrt(3) / 2)
        assert m.altitude == pytest.approx(1 / math.sqrt(3))
        assert m.inradius == pytest.approx(1 / (3 + math.sqrt(3)), rel=1e-12)
        assert m.r_squared == pytest.approx(0.75)
        assert np.allclose(m.hyp_orthocenter_bary, 1 / 3)

    def test_scaling_homogeneity(self):
        m1 = op.rect_metrics(op.RectSpec(3, (1.0, 2.0, 3.0)))
        lam = 2.5
        m2 = op.rect_metrics(op.RectSpec(3, (lam, 2 * lam, 3 * lam)))
        assert m2.volume == pytest.approx(lam**3 * m1.volume, rel=1e-12)
        assert m2.inradius == pytest.approx(lam * m1.inradius, rel=1e-12)
        assert m2.r_squared == pytest.approx(lam**2 * m1.r_squared, rel=1e-12)

    def test_centers_distinct_3_4_5(self):
        rep = op.rect_centers_distinct(op.RectSpec(3, (3.0, 4.0, 5.0)))
        pts = [rep.centroid, rep.circumcenter, rep.incenter, rep.monge]
        for a, b in combinations(pts, 2):
            assert np.linalg.norm(a - b) > 1e-6 * rep.circumradius

    def test_d2_circumcenter_on_hypotenuse(self):
        s = op.rectangular(op.RectSpec(2, (1.0, 1.0)))
        c, _ = op.circumcenter(s)
        m = np.vstack([s.vertices.T, np.ones(3)])
        bary = np.linalg.solve(m, np.concatenate([c, [1.0]]))
        assert bary[-1] == pytest.approx(0.0, abs=1e-12)

    def test_incenter_never_centroid(self):
        # I = G would need b_i = (d+1) r for all i, forcing d+1 = d+sqrt(d)
        for d in (2, 3, 5):
            rep = op.rect_centers_distinct(op.RectSpec(d, tuple([1.0] * d)))
            assert np.linalg.norm(rep.incenter - rep.centroid) > 1e-3


class TestLift:
    def test_equilateral_side_sqrt2(self):
        t = op.regular(2, math.sqrt(2.0))
        spec, lifted = op.lift_to_rectangular(t)
        assert np.allclose(spec.legs, 1.0, rtol=1e-9)
        assert lifted.dim == 3

    def test_obtuse_not_liftable(self):
        t = op.construct([2.0, -0.5, -0.5], 1.0)
        with pytest.raises(NotLiftableError):
            op.lift_to_rectangular(t)

    def test_rectangular_not_liftable(self):
        t = op.rectangular(op.RectSpec(2, (1.0, 2.0)))
        with pytest.raises(NotLiftableError):
            op.lift_to_rectangular(t)

    @pytest.mark.parametrize("d", range(3, 9))
    def test_round_trip_legs(self, d):
        rng = np.random.default_rng(d)
        legs = rng.uniform(0.5, 2.0, size=d)
        s = op.rectangular(op.RectSpec(d, tuple(legs)))
        facet = sx.face(s, tuple(range(d)))
        spec, _ = op.lift_to_rectangular(facet)
        assert np.max(np.abs(np.asarray(spec.legs) - legs)) <= 1e-8

    def test_hypotenuse_facet_reproduces_input_edges(self):
        t = op.construct([0.4, 0.3, 0.2, 0.1], 1.0)
        spec, lifted = op.lift_to_rectangular(t)
        facet = sx.face(lifted, tuple(range(lifted.dim)))
        assert np.allclose(
            sx.squared_edge_table(facet), sx.squared_edge_table(t), atol=1e-9
        )


class TestEquiradialGeneral:
    def test_admissibility_table(self):
        assert op.equiradial_admissible(9, 2)
        assert not op.equiradial_admissible(8, 2)
        assert not op.equiradial_admissible(9, 3)
        assert op.equiradial_admissible(10, 2)

    def test_admissibility_implies_d_at_least_9(self):
        for d in range(3, 9):
            for m in range(2, d):
                assert not op.equiradial_admissible(d, m)

    def test_inadmissible_raises_with_sides(self):
        with pytest.raises(AdmissibilityError) as err:
            op.equiradial_general(8, 2, 1)
        assert err.value.lhs == 14
        assert err.value.rhs == pytest.approx((11 / 3) ** 2)

    def test_bad_branch(self):
        with pytest.raises(InputError):
            op.equiradial_general(9, 2, 3)

    def test_nine_two_branch_one_fixture(self):
        # oracle: roots of Z^2 - 26 Z + 112 are 13 +/- sqrt(57);
        # x = -(27 + sqrt(57))/7, a = -1/x = (27 - sqrt(57))/96
        _, sol = op.equiradial_general(9, 2, 1)
        root = math.sqrt(57.0)
        assert sol.xi == pytest.approx(13 + root, rel=1e-12)
        assert sol.eta == pytest.approx(13 - root, rel=1e-12)
        assert sol.x == pytest.approx(-(27 + root) / 7, rel=1e-12)
        assert sol.a == pytest.approx((27 - root) / 96, rel=1e-9)
        assert sol.a == pytest.approx(0.2026058913, rel=1e-9)
        assert sol.b == pytest.approx(0.0743485272, rel=1e-8)
        assert 2 * sol.a + 8 * sol.b == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("branch", [1, 2])
    def test_nine_two_invariants(self, branch):
        s, sol = op.equiradial_general(9, 2, branch)
        m, n, d = 2, 8, 9
        assert abs(sol.x * sol.y + n * sol.x + m * sol.y) < 1e-10 * abs(sol.x * sol.y)
        assert abs(sol.x * sol.y + sol.x + sol.y - 48) < 1e-10 * 48
        assert sol.xi + sol.eta == pytest.approx(d * d - 3 * d + 4 - 2 * m * n, rel=1e-12)
        assert sol.xi * sol.eta == pytest.approx(m * n * (m * n - d), rel=1e-12)
        assert sol.x + m < 0 and sol.y + n < 0
        assert m * sol.a + n * sol.b == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("branch", [1, 2])
    def test_nine_two_geometry(self, branch):
        s, sol = op.equiradial_general(9, 2, branch)
        assert op.is_orthocentric(s)
        p = op.params_of(s)
        assert not p.rectangular
        assert np.allclose(p.bary[:2], sol.a, rtol=1e-8)
        assert np.allclose(p.bary[2:], sol.b, rtol=1e-8)
        radii = facet_circumradii(s)
        assert (np.max(radii) - np.min(radii)) / np.max(radii) <= 1e-8
        flags = op.shape_predicates(s)
        assert flags.is_equiradial and not flags.is_regular
        cd = op.circum_data(p, s)
        assert not cd.interior
        rep = op.center_report(s)
        assert rep.coincident_pairs == ()

    def test_branches_not_similar(self):
        s1, _ = op.equiradial_general(9, 2, 1)
        s2, _ = op.equiradial_general(9, 2, 2)
        sig1 = np.sort(sx.edge_lengths(s1))
        sig2 = np.sort(sx.edge_lengths(s2))
        assert not np.allclose(sig1 / sig1.max(), sig2 / sig2.max(), rtol=1e-3)


class TestFamilyOrthocentricity:
    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    def test_regular(self, d):
        assert op.is_orthocentric(op.regular(d, 1.0))

    @pytest.mark.parametrize("d", [2, 4, 6])
    def test_rectangular(self, d):
        legs = tuple(float(1 + i) for i in range(d))
        assert op.is_orthocentric(op.rectangular(op.RectSpec(d, legs)))
