from fractions import Fraction

import pytest

from hypbuild import catalog as cat
from hypbuild.chamber import PI, RationalAngle, area, validate
from hypbuild.coxeter import CoxeterBall, ResourceCap


@pytest.fixture(scope="module")
def quadchamber():
    return validate(4, (2, 2, 2, 4))


@pytest.fixture(scope="module")
def tris238(spec238):
    return cat.enumerate_triangles(spec238)


@pytest.fixture(scope="module")
def quads238(spec238):
    return cat.enumerate_quads(spec238)


# ---------------------------------------------------------------------------
# defect
# ---------------------------------------------------------------------------

def test_defect_chamber_boundary_238(spec238):
    angles = [spec238.angle_at_vertex(j) for j in (1, 2, 3)]
    assert cat.defect(angles) == RationalAngle(1, 24)


def test_defect_right_square_is_zero():
    right = RationalAngle(1, 2)
    assert cat.defect([right] * 4) == RationalAngle(0)


def test_defect_three_quarter_turns_is_six_chambers(spec238):
    q = RationalAngle(1, 4)
    d = cat.defect([q, q, q])
    assert d == RationalAngle(1, 4)
    assert d.fraction == 6 * area(spec238).fraction


def test_defect_needs_three_corners():
    with pytest.raises(ValueError):
        cat.defect([RationalAngle(1, 2), RationalAngle(1, 2)])


# ---------------------------------------------------------------------------
# support disks
# ---------------------------------------------------------------------------

def test_support_disk_single_chamber(spec238):
    ball = CoxeterBall(spec238, 4)
    d = cat.support_disk(ball, cat.chamber_boundary_path(spec238))
    assert d.n == 1
    assert d.chambers == frozenset({()})
    assert d.special_points == ()


def test_support_disk_two_chambers(spec238):
    ball = CoxeterBall(spec238, 4)
    circ = cat.SkeletonPath(
        edges=(((), 2), ((), 3), ((1,), 2), ((1,), 3))
    )
    d = cat.support_disk(ball, circ)
    assert d.n == 2
    assert d.chambers == frozenset({(), (1,)})
    assert d.special_points == ()


def test_support_disk_detects_special_point(spec238):
    # three of the four chambers around an m=2 vertex: the disk angle
    # there is 3*pi/2 > pi
    ball = CoxeterBall(spec238, 4)
    circ = cat.SkeletonPath(
        edges=(((), 2), ((), 3), ((1,), 3), ((1, 2), 1), ((1, 2), 3))
    )
    d = cat.support_disk(ball, circ)
    assert d.n == 3
    assert len(d.special_points) == 1


def test_support_disk_touches_boundary(spec238):
    ball = CoxeterBall(spec238, 3)
    far = max(ball.words, key=len)
    with pytest.raises(cat.TouchesBoundary):
        cat.support_disk(ball, cat.chamber_boundary_path(spec238, far))


# ---------------------------------------------------------------------------
# triangle enumeration
# ---------------------------------------------------------------------------

def test_334_single_triangle_class(spec334):
    res = cat.enumerate_triangles(spec334)
    assert len(res) == 1
    e = next(iter(res))
    assert e.n == 1
    assert sorted(a.fraction for a in e.corner_angles) == [
        Fraction(1, 4), Fraction(1, 3), Fraction(1, 3)
    ]


def test_pentagon_no_triangles(pentagon):
    assert cat.enumerate_triangles(pentagon) == set()


def test_quad_chamber_no_triangles(quadchamber):
    assert cat.enumerate_triangles(quadchamber) == set()


def test_238_triangle_catalog_contents(spec238, tris238):
    assert any(e.n == 1 and e.defect == RationalAngle(1, 24) for e in tris238)
    # a 2-chamber class whose sides all run along walls through
    # m=3 vertices (edge labels 2 and 3 only)
    t2 = [
        e for e in tris238
        if e.n == 2 and all(set(c[5]) <= {2, 3} for c in e.code)
    ]
    assert len(t2) == 1
    assert sorted(a.fraction for a in t2[0].corner_angles) == [
        Fraction(1, 4), Fraction(1, 3), Fraction(1, 3)
    ]
    # a 6-chamber class with three even angles
    t6 = [e for e in tris238 if e.n == 6 and all(e.even_flags)]
    assert len(t6) == 1
    assert all(a.fraction == Fraction(1, 4) for a in t6[0].corner_angles)


def test_238_triangle_defect_range(tris238):
    for e in tris238:
        assert Fraction(1, 24) <= e.defect.fraction <= Fraction(5, 8)


# ---------------------------------------------------------------------------
# quadrilateral enumeration
# ---------------------------------------------------------------------------

def test_pentagon_no_quads(pentagon):
    assert cat.enumerate_quads(pentagon) == set()


def test_238_quad_minimum_defect(quads238):
    mn = min(e.defect.fraction for e in quads238)
    assert mn == Fraction(2, 24)
    at_min = [e for e in quads238 if e.defect.fraction == mn]
    assert len(at_min) == 1
    assert at_min[0].n == 2


@pytest.mark.parametrize("k,m", [(3, (2, 3, 8)), (3, (3, 3, 4)), (3, (2, 4, 8))])
def test_area_law_exact(k, m):
    spec = validate(k, m)
    a0 = area(spec).fraction
    for e in cat.enumerate_triangles(spec) | cat.enumerate_quads(spec):
        assert e.defect.fraction == e.n * a0
        # angle-sum form of the same identity
        l = 3 if e.shape == "triangle" else 4
        total = sum(a.fraction for a in e.corner_angles)
        assert (l - 2) >= total + e.n * a0


def test_step_cap_enforced(spec238):
    with pytest.raises(ResourceCap):
        cat.enumerate_quads(spec238, caps={"step_cap": 10})


# ---------------------------------------------------------------------------
# oracle equivalence and determinism
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "k,m,shape",
    [
        (3, (3, 3, 4), "triangle"),
        (3, (3, 3, 4), "quadrilateral"),
        (3, (2, 3, 8), "triangle"),
        (3, (2, 4, 8), "quadrilateral"),
    ],
)
def test_brute_force_oracle_agrees(k, m, shape):
    spec = validate(k, m)
    enum = (
        cat.enumerate_triangles if shape == "triangle" else cat.enumerate_quads
    )
    side = {e for e in enum(spec) if e.n <= 8}
    assert side == cat.brute_force_catalog(spec, shape, n_max=8)


def test_enumeration_deterministic(spec238):
    a = cat.enumerate_triangles(spec238)
    b = cat.enumerate_triangles(spec238)
    assert a == b
    assert {e.key for e in a} == {e.key for e in b}


# ---------------------------------------------------------------------------
# per-entry disk re-verification
# ---------------------------------------------------------------------------

RIGHT_TRIANGLES = [
    (2, 8, 8), (2, 6, 6), (2, 6, 8), (2, 4, 6), (2, 4, 8), (2, 3, 8)
]


@pytest.mark.parametrize("m", RIGHT_TRIANGLES)
def test_right_triangle_disks_have_no_special_points(m):
    """Every enumerated triangle class bounds a disk whose boundary
    vertices all have angle <= pi and whose interior vertices close up
    to exactly 2*pi, re-verified via an independent ball flood fill."""
    spec = validate(3, m)
    T = cat.tessellation(spec)
    ball = CoxeterBall(spec, 8)
    checked = 0
    for e in cat.enumerate_triangles(spec):
        path = cat.entry_boundary_path(T, e)
        if any(len(w) > 6 for w, _g in path.edges):
            continue  # representative too deep for this ball
        disk = cat.support_disk(ball, path)
        assert disk.n == e.n
        assert disk.special_points == ()
        checked += 1
    assert checked >= 1


def test_entry_boundary_path_chamber(spec238, tris238):
    T = cat.tessellation(spec238)
    e1 = next(e for e in tris238 if e.n == 1)
    path = cat.entry_boundary_path(T, e1)
    assert len(path.edges) == 3
    assert len(path.corners) == 3
    assert sorted(a.fraction for a in path.angles) == [
        Fraction(1, 8), Fraction(1, 3), Fraction(1, 2)
    ]


def test_entry_json_shape(tris238):
    e = next(iter(tris238))
    j = e.to_json()
    assert j["shape"] == "triangle"
    assert len(j["corners"]) == 3
    assert all(len(c["angle"]) == 2 for c in j["corners"])


# ---------------------------------------------------------------------------
# claims
# ---------------------------------------------------------------------------

def test_claims_246_no_even_adjacent_witness():
    rep = cat.claims_check(validate(3, (2, 4, 6)))
    assert rep["quad_adjacent_even_long_side"]["pass"]
    assert rep["quad_adjacent_even_long_side"]["witnesses"] == []
    assert rep["summary"]["pass"]


def test_claims_334_no_three_even_quad(spec334):
    rep = cat.claims_check(spec334)
    assert rep["quad_three_even"]["pass"]
    assert rep["quad_three_even"]["witnesses"] == []
    assert rep["triangle_shapes"]["pass"]
    assert rep["summary"]["pass"]


def test_claims_238_minimal_triangle_unique(spec238):
    rep = cat.claims_check(spec238)
    w = rep["triangle_defect_min"]["witnesses"]
    assert rep["triangle_defect_min"]["pass"]
    assert len(w) == 1 and w[0]["n"] == 1
    assert rep["quad_defect_min"]["pass"]
    assert rep["area_law"]["pass"]
    assert rep["summary"]["pass"]


def test_claims_pentagon_and_quad_chamber(pentagon, quadchamber):
    for spec in (pentagon, quadchamber):
        rep = cat.claims_check(spec)
        assert rep["triangle_shapes"]["pass"]
        assert rep["summary"]["pass"]
    assert cat.claims_check(pentagon)["quad_k5_empty"]["pass"]
