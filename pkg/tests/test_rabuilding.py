import random

import pytest

from hypbuild import genpoly, rabuilding as rb
from hypbuild.coxeter import CoxeterBall, export_complex as cox_export


@pytest.fixture(scope="module")
def bb3(pentagon_thick):
    return rb.ball(pentagon_thick, 3)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def test_normal_form_examples(pentagon_thick):
    spec = pentagon_thick
    assert rb.normal_form(((1, 1), (1, 2)), spec) == ()
    assert rb.normal_form(((1, 1), (2, 2)), spec) == rb.normal_form(
        ((2, 2), (1, 1)), spec
    )
    # non-adjacent edges: no relation
    assert rb.normal_form(((1, 1), (3, 2)), spec) == ((1, 1), (3, 2))
    assert rb.normal_form(((3, 2), (1, 1)), spec) == ((3, 2), (1, 1))


def _apply_random_moves(w, rng, spec):
    """Shuffle a colored word by randomly applied defining relations."""
    w = list(w)
    for _ in range(40):
        if len(w) < 2:
            break
        p = rng.randrange(len(w) - 1)
        (a, ca), (b, cb) = w[p], w[p + 1]
        if a == b:
            c = (ca + cb) % (spec.q[a - 1] + 1)
            del w[p : p + 2]
            if c:
                w.insert(p, (a, c))
        elif rb._cyc_adjacent(a, b, spec.k):
            w[p], w[p + 1] = w[p + 1], w[p]
    return w


def test_normal_form_well_defined(pentagon_thick):
    spec = pentagon_thick
    rng = random.Random(42)
    letters = [(i, c) for i in range(1, 6) for c in (1, 2)]
    for _ in range(400):
        w = [rng.choice(letters) for _ in range(rng.randrange(0, 10))]
        n1 = rb.normal_form(w, spec)
        n2 = rb.normal_form(_apply_random_moves(w, rng, spec), spec)
        assert n1 == n2
        assert rb.normal_form(n1, spec) == n1  # idempotent


def test_inverse_word(pentagon_thick):
    spec = pentagon_thick
    rng = random.Random(9)
    letters = [(i, c) for i in range(1, 6) for c in (1, 2)]
    for _ in range(100):
        w = rb.normal_form(
            [rng.choice(letters) for _ in range(rng.randrange(0, 8))], spec
        )
        inv = rb.inverse_word(w, spec)
        assert rb.normal_form(w + inv, spec) == ()
        assert rb.normal_form(inv + w, spec) == ()


# ---------------------------------------------------------------------------
# balls
# ---------------------------------------------------------------------------

def test_ball_small_counts(pentagon_thick):
    assert len(rb.ball(pentagon_thick, 0)) == 1
    assert len(rb.ball(pentagon_thick, 1)) == 1 + sum(pentagon_thick.q)


def test_sphere_counts_from_coxeter(pentagon_thick, pentagon):
    # independent oracle: each W element of length n carries prod(q) = 2^n
    # chambers in the building
    bb = rb.ball(pentagon_thick, 4)
    cb = CoxeterBall(pentagon, 4)
    cox_spheres = [len([w for w in cb.words if len(w) == n]) for n in range(5)]
    for n in range(5):
        assert bb.sphere_counts[n] == cox_spheres[n] * 2**n


def test_ball_rejects_wrong_specs(spec238, pentagon):
    with pytest.raises(rb.BuildingError):
        rb.ball(spec238, 2)  # not right-angled
    with pytest.raises(rb.BuildingError):
        rb.ball(pentagon, 2)  # thin


def test_panel_multiplicities(bb3):
    q = bb3.spec.q
    for (word, label), (_lbl, cs) in bb3.edges.items():
        assert len(cs) in (1, q[label - 1] + 1)


def test_interior_links_are_k33(bb3):
    keys = bb3.interior_vertex_keys()
    assert keys
    for key in keys:
        adj, color = bb3.vertex_link(key)
        poly = genpoly.verify(adj, color, 2)
        assert poly.params == (2, 2)
        assert len(adj) == 6  # K_{3,3}


# ---------------------------------------------------------------------------
# W-distance
# ---------------------------------------------------------------------------

def test_wdist_examples(pentagon_thick, bb3):
    spec = pentagon_thick
    g = ((1, 1), (3, 2))
    assert rb.wdist(g, g, spec) == ()
    assert rb.wdist((), ((1, 1),), spec) == (1,)
    assert rb.wdist((), ((1, 1), (3, 2)), spec, bb3.system) == (1, 3)


def test_wdist_is_dual_graph_distance(bb3):
    # oracle: unweighted BFS on the dual graph of the ball
    from collections import deque

    spec = bb3.spec
    rng = random.Random(5)
    inner = [i for i in range(len(bb3)) if bb3.word_length(i) <= 1]
    for _ in range(15):
        a = rng.choice(inner)
        dist = {a: 0}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y, _label in bb3.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for _ in range(10):
            b = rng.randrange(len(bb3))
            # stay within safely-exact range of the truncated ball
            if bb3.word_length(b) > 2:
                continue
            w = rb.wdist(bb3.words[a], bb3.words[b], spec, bb3.system)
            assert len(w) == dist[b]


# ---------------------------------------------------------------------------
# apartments
# ---------------------------------------------------------------------------

def test_apartment_through_trivial(bb3):
    C = bb3.words[7]
    A = rb.apartment_through(bb3, C, C)
    assert A.alpha(()) == C
    assert A.colors == {}


def test_apartment_through_adjacent(bb3):
    spec = bb3.spec
    C = ()
    D = ((2, 2),)
    A = rb.apartment_through(bb3, C, D)
    assert A.colors == {(2,): 2}
    assert A.alpha((2,)) == D


def test_apartment_contains_both_endpoints(bb3):
    rng = random.Random(1)
    for _ in range(60):
        C = bb3.words[rng.randrange(len(bb3))]
        D = bb3.words[rng.randrange(len(bb3))]
        A = rb.apartment_through(bb3, C, D)
        delta = rb.wdist(C, D, bb3.spec, bb3.system)
        assert A.alpha(()) == C
        assert A.alpha(delta) == D
        assert A.position_of(C) == ()
        assert A.position_of(D) == delta


def test_apartment_is_distance_preserving(bb3):
    sysc = bb3.system
    rng = random.Random(2)
    for _ in range(40):
        C = bb3.words[rng.randrange(len(bb3))]
        D = bb3.words[rng.randrange(len(bb3))]
        A = rb.apartment_through(bb3, C, D)
        w1 = sysc.canon(tuple(rng.choice((1, 2, 3, 4, 5)) for _ in range(3)))
        w2 = sysc.canon(tuple(rng.choice((1, 2, 3, 4, 5)) for _ in range(3)))
        lhs = rb.wdist(A.alpha(w1), A.alpha(w2), bb3.spec, sysc)
        assert lhs == sysc.canon(tuple(reversed(w1)) + w2)


def test_apartment_serialization(bb3):
    A = rb.apartment_through(bb3, (), ((1, 2), (3, 1)))
    pairs = A.to_pairs()
    assert pairs == sorted(pairs)
    assert ([1], 2) in [(list(k), v) for k, v in A.colors.items()]


# ---------------------------------------------------------------------------
# retraction
# ---------------------------------------------------------------------------

def test_retraction_properties(bb3):
    spec = bb3.spec
    sysc = bb3.system
    rng = random.Random(3)
    C = bb3.words[11]
    D0 = bb3.words[231]
    A = rb.apartment_through(bb3, C, D0)
    r = rb.retraction(bb3, A, C)
    for _ in range(100):
        E = bb3.words[rng.randrange(len(bb3))]
        img = r(E)
        dE = rb.wdist(C, E, spec, sysc)
        dI = rb.wdist(C, img, spec, sysc)
        # W-distance from the center is preserved exactly
        assert dI == dE
        # chambers on the apartment are fixed
        if A.position_of(E) is not None:
            assert img == E


def test_retraction_on_panels(bb3):
    spec = bb3.spec
    sysc = bb3.system
    C = ()
    D0 = ((1, 1), (3, 1), (5, 2))
    A = rb.apartment_through(bb3, C, D0)
    r = rb.retraction(bb3, A, C)
    for i in range(1, 6):
        in_A = A.alpha((i,))
        for c in range(1, spec.q[i - 1] + 1):
            D = rb.normal_form(((i, c),), spec)
            # the whole panel of C across edge i maps into the panel of A
            assert r(D) == (D if A.position_of(D) is not None else in_A) or (
                r(D) == in_A
            )
            assert r(D) == A.alpha((i,)) or r(D) == D


def test_retraction_requires_center_on_apartment(bb3):
    A = rb.apartment_through(bb3, (), ((1, 1),))
    off = ((2, 2), (4, 1))
    assert A.position_of(off) is None
    with pytest.raises(rb.BuildingError):
        rb.retraction(bb3, A, off)


# ---------------------------------------------------------------------------
# local verification
# ---------------------------------------------------------------------------

def test_verify_generated_ball(bb3):
    report = rb.verify_building_local(rb.export_complex(bb3), bb3.spec)
    assert report.ok, report.violations[:5]
    assert report.checked["faces"] == len(bb3)
    assert report.checked["closed_links"] == len(bb3.interior_vertex_keys())
    assert report.caveats  # apartment-exchange axiom not checked, and said so


def test_verify_flags_thin_complex_against_thick_spec(pentagon, pentagon_thick):
    text = cox_export(CoxeterBall(pentagon, 2))
    report = rb.verify_building_local(text, pentagon_thick)
    assert not report.ok
    codes = {v[0] for v in report.violations}
    assert "EdgeMultiplicity" in codes


def test_verify_flags_corrupted_face(bb3):
    text = rb.export_complex(bb3)
    lines = text.strip().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("f "):
            parts = line.split()
            # duplicate one edge id in place of another: labels no longer 1..k
            parts[2] = parts[3]
            lines[i] = " ".join(parts)
            break
    report = rb.verify_building_local("\n".join(lines) + "\n", bb3.spec)
    assert not report.ok
    assert any(v[0] == "FaceLabeling" for v in report.violations)


def test_parse_rejects_garbage():
    with pytest.raises(rb.BuildingError):
        rb.parse_complex("v 0 bad line\n")
