"""Chambers, hyperbolic areas, and reflection tessellations.

A chamber is a hyperbolic polygon with angles pi/m[i]; reflecting it in
its own edges tiles the hyperbolic plane.  This demo validates a few
chamber shapes, prints their exact areas, builds a combinatorial ball
of the tessellation, and renders it to SVG.
"""

from hypbuild.chamber import ChamberError, area, validate
from hypbuild.coxeter import CoxeterBall
from hypbuild import geomrender as gr

print("== exact areas of the six hyperbolic right triangles ==")
for m in [(2, 8, 8), (2, 6, 6), (2, 6, 8), (2, 4, 6), (2, 4, 8), (2, 3, 8)]:
    spec = validate(3, m)
    print("  triangle %-10s area = %s" % (m, area(spec)))

print("\n== a Euclidean shape is rejected ==")
try:
    validate(3, (3, 3, 3))
except ChamberError as exc:
    print("  (3,3,3):", exc.codes())

print("\n== combinatorial ball of the (2,3,8) tessellation ==")
spec = validate(3, (2, 3, 8))
for radius in (2, 4, 6):
    ball = CoxeterBall(spec, radius)
    print(
        "  radius %d: %4d chambers, %4d edges, %4d vertices"
        % (radius, len(ball.words), len(ball.edges), len(ball.vertices))
    )

print("\n== geometric realization and SVG ==")
real = gr.realize(CoxeterBall(spec, 5))
print("  dedup count %d == chamber count %d" % (real.dedup_count(), len(real.ball)))
svg = gr.render_svg(real)
out = "/tmp/tessellation_238.svg"
with open(out, "w") as fh:
    fh.write(svg)
print("  wrote %s with %d faces" % (out, gr.face_count(svg)))
