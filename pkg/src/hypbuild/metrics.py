"""Exact metric machinery on the dual graph of tessellations and buildings.

The dual graph has one vertex per chamber; chambers sharing an edge
labeled i are joined by an edge of length log q_i.  All metric values
are exact WeightVectors (integer or half-integer combinations of logs of
primes); floats only appear in Dijkstra heap ordering (guarded by exact
comparison) and in the quasi-metric surrogate.

Two independent distance engines are provided:

* ``dist``: textbook Dijkstra on the truncated dual graph; exact for
  chamber pairs of the inner ball (a minimal-weight gallery between
  chambers of word length <= N/2 stays inside the radius-N ball).
* ``wall_sum``: the separating-wall decomposition — the minimum, over
  reduced words of the W-distance, of the sum of the crossed walls'
  edge weights.  This is intrinsic (needs no ball) and backs all the
  boundary machinery.

Boundary points are finite-horizon ray surrogates: a RaySpec traces a
geodesic through a realized apartment chart and induces a chamber
sequence in the host; Gromov products, Busemann cocycles and cross
ratios are stabilized limits along those sequences, and a failure to
stabilize is always surfaced, never truncated silently.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import geomrender as gr
from . import rabuilding as rb
from .chamber import validate
from .coxeter import CoxeterBall, CoxeterSystem
from .geomrender import LeftBall, NearVertex
from .weights import WeightVector


class Disconnected(ValueError):
    pass


class NoStabilization(ArithmeticError):
    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class HorizonTooSmall(ValueError):
    pass


class HypothesisFail(ValueError):
    pass


class NoApartment(ValueError):
    pass


# ---------------------------------------------------------------------------
# host adapters: one interface over tessellation and building balls
# ---------------------------------------------------------------------------

class _Host:
    """Uniform chamber-level view of a CoxeterBall or BuildingBall."""

    def __init__(self, ball):
        self.ball = ball
        self.spec = ball.spec
        self.system = ball.system
        self.is_building = isinstance(ball.rmul[0], dict)

    def __len__(self):
        return len(self.ball.words)

    def word(self, c):
        return self.ball.words[c]

    def neighbors(self, c):
        if self.is_building:
            for (label, _col), d in self.ball.rmul[c].items():
                if d is not None:
                    yield d, label
        else:
            for label, d in enumerate(self.ball.rmul[c], 1):
                if d is not None:
                    yield d, label

    def wdist_word(self, a, b):
        """Canonical reduced W-word from chamber a to chamber b."""
        if self.is_building:
            return rb.wdist(
                self.ball.words[a], self.ball.words[b], self.spec, self.system
            )
        u, v = self.ball.words[a], self.ball.words[b]
        return self.system.canon(tuple(reversed(u)) + v)

    def inner_indices(self):
        """Chambers whose pairwise minimal-weight galleries are certain to
        stay inside the ball (word length <= radius/2)."""
        cut = self.ball.radius // 2
        return [
            c for c in range(len(self)) if len(self.ball.words[c]) <= cut
        ]


class DualGraph:
    """Weighted dual graph of a ball.  `q` overrides the spec thickness
    for the edge weights (formal weights on a thin apartment)."""

    def __init__(self, ball, q=None):
        self.host = _Host(ball)
        self.ball = ball
        self.spec = ball.spec
        self.q = tuple(q) if q is not None else tuple(ball.spec.q)
        if len(self.q) != ball.spec.k:
            raise ValueError("need one weight per edge label")
        self.weights = [WeightVector.log_int(qi) for qi in self.q]
        self._minw_cache = {(): WeightVector.zero()}
        self._pair_cache = {}
        # for right-angled Coxeter systems the word problem is solved by
        # the polynomial graph-product normal form, much faster than the
        # general braid-class search
        if all(mi == 2 for mi in ball.spec.m):
            thin = validate(ball.spec.k, ball.spec.m)
            self._canon = lambda w: tuple(
                i for (i, _c) in rb.normal_form(tuple((g, 1) for g in w), thin)
            )
        else:
            self._canon = self.host.system.canon

    def __len__(self):
        return len(self.host)

    def weight(self, label):
        return self.weights[label - 1]

    # -- engine 1: Dijkstra on the truncated graph ----------------------

    def dist(self, C, Cp):
        table = self.dist_from(C, target=Cp)
        if Cp not in table:
            raise Disconnected("no path between chambers %d and %d" % (C, Cp))
        return table[Cp]

    def dist_from(self, C, target=None):
        """Single-source Dijkstra; exact WeightVector distances with
        deterministic (numeric value, chamber id) tie-breaking."""
        best = {C: WeightVector.zero()}
        done = set()
        heap = [(0.0, C)]
        while heap:
            fval, c = heapq.heappop(heap)
            if c in done:
                continue
            done.add(c)
            if target is not None and c == target:
                return best
            dc = best[c]
            for d, label in self.host.neighbors(c):
                nd = dc + self.weight(label)
                if d not in best or nd < best[d]:
                    best[d] = nd
                    heapq.heappush(heap, (nd.value(), d))
        return best

    # -- engine 2: separating-wall weight sum ---------------------------

    def wall_sum(self, C, Cp):
        """Distance as the separating-wall decomposition: each reduced
        word of the W-distance crosses every separating wall exactly once
        at one specific edge; take the lightest choice of reduced word."""
        key = (C, Cp) if C <= Cp else (Cp, C)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = self.min_word_weight(self._wdist_fast(key[0], key[1]))
            self._pair_cache[key] = cached
        return cached

    def _wdist_fast(self, a, b):
        host = self.host
        if host.is_building:
            word = rb.wdist(host.ball.words[a], host.ball.words[b], self.spec)
            return self._canon(word)
        u, v = host.ball.words[a], host.ball.words[b]
        return self._canon(tuple(reversed(u)) + v)

    def min_word_weight(self, word):
        return self._minw(self._canon(tuple(word)))

    def _minw(self, word):
        cached = self._minw_cache.get(word)
        if cached is not None:
            return cached
        best = None
        for i in set(word):
            shorter = self._canon(word + (i,))
            if len(shorter) < len(word):
                cand = self._minw(shorter) + self.weight(i)
                if best is None or cand < best:
                    best = cand
        self._minw_cache[word] = best
        return best


def dist(G, C, Cp):
    return G.dist(C, Cp)


def gromov(G, x, y, C):
    """Gromov product {x|y}_C = (|x-C| + |y-C| - |x-y|) / 2, exact."""
    total = G.dist(x, C) + G.dist(y, C) - G.dist(x, y)
    return total.halve()


# ---------------------------------------------------------------------------
# apartment charts and ray surrogates
# ---------------------------------------------------------------------------

_REALIZED_CACHE = {}


def realized_apartment(spec, radius):
    """Realized thin tessellation ball for the spec's Coxeter system
    (shared cache; geometry does not depend on thickness)."""
    key = (spec.k, spec.m, radius)
    if key not in _REALIZED_CACHE:
        thin = validate(spec.k, spec.m)
        _REALIZED_CACHE[key] = gr.realize(CoxeterBall(thin, radius))
    return _REALIZED_CACHE[key]


class ApartmentChart:
    """A realized apartment together with the map from its chambers to
    host chambers.  For a tessellation host the map is the identity; for
    a building host it is an ApartmentColoring."""

    def __init__(self, graph, realized, coloring=None):
        self.graph = graph
        self.realized = realized
        self.coloring = coloring

    def to_host(self, chart_chamber):
        w = self.realized.ball.words[chart_chamber]
        host = self.graph.host
        if self.coloring is None:
            return host.ball.index.get(w)
        return host.ball.index.get(self.coloring.alpha(w, host.system))


def chart_for(graph, chart_radius=None, coloring=None):
    radius = chart_radius if chart_radius is not None else graph.ball.radius + 3
    realized = realized_apartment(graph.spec, radius)
    if graph.host.is_building and coloring is None:
        coloring = rb.ApartmentColoring(spec=graph.spec, base=(), colors={})
    return ApartmentChart(graph, realized, coloring)


def chart_through(graph, C, Cp, chart_radius=None):
    """A chart whose apartment contains both host chambers; the chart
    origin is placed at C."""
    if not graph.host.is_building:
        return chart_for(graph, chart_radius)
    ball = graph.ball
    coloring = rb.apartment_through(ball, ball.words[C], ball.words[Cp])
    return chart_for(graph, chart_radius, coloring)


@dataclass
class RaySpec:
    """A finite-horizon boundary-point surrogate: a geodesic ray traced
    through an apartment chart from `base` in direction `theta`
    (or explicit `tangent`), at least `margin` away from every vertex."""

    chart: ApartmentChart
    base: tuple
    theta: float
    margin: float = None
    tangent: tuple = None
    _seq: list = field(default=None, repr=False)

    def direction_key(self):
        return (tuple(round(x, 9) for x in self.base), round(self.theta, 9))

    def chamber_sequence(self):
        """Host chambers along the ray: start chamber, then each chamber
        entered, truncated at the chart or host ball boundary."""
        if self._seq is not None:
            return self._seq
        realized = self.chart.realized
        margin = (
            self.margin
            if self.margin is not None
            else 1e-3 * realized.polygon.inradius
        )
        crossings = gr.trace(
            realized,
            self.base,
            self.theta,
            1e9,
            margin=margin,
            tangent=self.tangent,
            stop_at_boundary=True,
        )
        start = gr.locate(realized, self.base)
        chart_seq = [start] + [c for _lbl, c, _t in crossings]
        seq = []
        for c in chart_seq:
            h = self.chart.to_host(c)
            if h is None:
                break
            seq.append(h)
        self._seq = seq
        return seq


def segment_chambers(chart, p, r, margin=None):
    """Ordered host chambers whose interiors the geodesic segment pr
    meets, traced in the realized carrying apartment."""
    realized = chart.realized
    cp = gr.locate(realized, p)
    cr = gr.locate(realized, r)
    if cp is None or cr is None:
        raise NoApartment("segment endpoints not inside the carrying apartment")
    length = gr.hyp_distance(p, r)
    if length < 1e-12:
        return [chart.to_host(cp)]
    t = tuple(r[i] - gr.bform(r, p) * p[i] for i in range(3))
    s = math.sqrt(-gr.bform(t, t))
    tangent = tuple(x / s for x in t)
    crossings = gr.trace(
        realized, p, 0.0, length, margin=margin, tangent=tangent
    )
    seq = [chart.to_host(cp)] + [chart.to_host(c) for _l, c, _t in crossings]
    if any(c is None for c in seq):
        raise NoApartment("segment leaves the host ball")
    return seq


# ---------------------------------------------------------------------------
# stabilized boundary quantities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Stabilized:
    value: WeightVector
    index: int
    horizon: int


_MIN_TAIL = 2


def _require_distinct(xi, eta):
    if xi.direction_key() == eta.direction_key() and xi.chart is eta.chart:
        raise ValueError("boundary points must have distinct directions")


def boundary_gromov(G, xi, eta, C):
    """Stabilized boundary Gromov product {xi|eta}_C: the double sequence
    {C_i|D_j}_C along the two ray chamber sequences, required constant
    from some index on through the traced horizon."""
    _require_distinct(xi, eta)
    Ci = xi.chamber_sequence()
    Dj = eta.chamber_sequence()
    horizon = min(len(Ci), len(Dj))
    if horizon < _MIN_TAIL + 1:
        raise NoStabilization("ray horizon too short", (len(Ci), len(Dj)))
    dC = {}
    dD = {}
    for i in range(horizon):
        dC[i] = G.wall_sum(Ci[i], C)
        dD[i] = G.wall_sum(Dj[i], C)
    vals = {}
    for i in range(horizon):
        for j in range(horizon):
            cross = G.wall_sum(Ci[i], Dj[j])
            vals[(i, j)] = (dC[i] + dD[j] - cross).halve()
    for i0 in range(horizon - _MIN_TAIL):
        tail = [
            vals[(i, j)]
            for i in range(i0, horizon)
            for j in range(i0, horizon)
        ]
        if all(v == tail[0] for v in tail):
            return Stabilized(value=tail[0], index=i0, horizon=horizon)
    raise NoStabilization(
        "boundary Gromov product did not stabilize within the horizon",
        {"horizon": horizon},
    )


def busemann(G, xi, C, D):
    """Stabilized Busemann cocycle B_xi(C, D): the eventual constant of
    |D - C_i| - |C - C_i| along the ray chamber sequence."""
    Ci = xi.chamber_sequence()
    horizon = len(Ci)
    if horizon < _MIN_TAIL + 1:
        raise NoStabilization("ray horizon too short", horizon)
    vals = [G.wall_sum(D, Ci[i]) - G.wall_sum(C, Ci[i]) for i in range(horizon)]
    for i0 in range(horizon - _MIN_TAIL):
        tail = vals[i0:]
        if all(v == tail[0] for v in tail):
            return tail[0]
    raise NoStabilization("Busemann value did not stabilize", vals[-3:])


def cross_ratio(G, xi1, xi2, eta1, eta2, C):
    """Combinatorial cross ratio
    -{xi1|eta1}_C - {xi2|eta2}_C + {xi1|eta2}_C + {xi2|eta1}_C."""
    a = boundary_gromov(G, xi1, eta1, C).value
    b = boundary_gromov(G, xi2, eta2, C).value
    c = boundary_gromov(G, xi1, eta2, C).value
    d = boundary_gromov(G, xi2, eta1, C).value
    return -a - b + c + d


# ---------------------------------------------------------------------------
# growth and the quasi-metric surrogate
# ---------------------------------------------------------------------------

def growth(G, n, base=0):
    """a(n): number of chambers within weighted distance n of the base
    chamber.  Raises HorizonTooSmall unless every boundary chamber of the
    ball is already farther than n (so the count is certified)."""
    table = G.dist_from(base)
    inner_flags = (
        G.ball.is_inner if hasattr(G.ball, "is_inner") else None
    )
    count = 0
    certified = True
    for c in range(len(G)):
        if c not in table:
            continue
        within = table[c].value() <= n + 1e-9
        if within:
            count += 1
            if inner_flags is not None and not inner_flags[c]:
                certified = False
    if not certified:
        raise HorizonTooSmall(
            "ball radius too small: boundary chambers within distance %s" % n
        )
    return count


@dataclass(frozen=True)
class TauEstimate:
    values: tuple  # (n, Fraction approximation of (1/n) log a(n))
    converged: bool  # always False: finite horizon only
    note: str


def tau_estimate(G, nmax, base=0):
    out = []
    for n in range(1, nmax + 1):
        a = growth(G, n, base)
        val = math.log(a) / n if a > 0 else 0.0
        out.append((n, Fraction(val).limit_denominator(10**9)))
    return TauEstimate(
        values=tuple(out),
        converged=False,
        note="finite-horizon estimate; the growth exponent is a limsup and "
        "is not certified by any finite ball",
    )


def quasi_dist(G, xi, eta, C, tau_hat):
    """Quasi-metric surrogate exp(-tau_hat * {xi|eta}_C); the chain
    construction underlying the true visual metric is out of scope."""
    _require_distinct(xi, eta)
    value = boundary_gromov(G, xi, eta, C).value
    return math.exp(-tau_hat * value.value())


# ---------------------------------------------------------------------------
# detection experiments
# ---------------------------------------------------------------------------

def _ray_from(chart, base, theta, margin=None):
    return RaySpec(chart=chart, base=base, theta=theta, margin=margin)


def _wall_frame(realized, label):
    """Points and directions for the wall geodesic through edge `label`
    of the base chamber: a base point on the wall and the unit tangent
    along it."""
    polygon = realized.polygon
    k = polygon.spec.k
    va, vb = polygon.edge_endpoints(label)
    mid = gr._normalize_point(tuple(va[i] + vb[i] for i in range(3)))
    t = tuple(vb[i] - gr.bform(vb, mid) * mid[i] for i in range(3))
    s = math.sqrt(-gr.bform(t, t))
    return mid, tuple(x / s for x in t)


def _offset_point(p, direction, dist_along, normal, dist_off):
    """Point at arc length `dist_along` along `direction` from p, then
    pushed `dist_off` along `normal` (both tangent vectors at p are
    transported crudely by re-normalization; adequate for small offsets)."""
    x = gr.geodesic_point(p, direction, dist_along)
    x = gr._normalize_point(x)
    # transport the normal: project to the tangent space at x
    nt = tuple(normal[i] - gr.bform(normal, x) * x[i] for i in range(3))
    s = math.sqrt(-gr.bform(nt, nt))
    nt = tuple(v / s for v in nt)
    y = gr.geodesic_point(x, nt, dist_off)
    return gr._normalize_point(y)


def detect_skeleton_experiment(G, line, samples=24, seed=0, margin=None):
    """Sample cross ratios of regular quadruples straddling the two ends
    of a line and report the observed value set.

    `line` is either ("wall", label) — the 1-skeleton wall through edge
    `label` of the base chamber — or ("generic", theta): the geodesic
    through the base chamber's incenter in direction theta.

    PASS when a generic line yields only zero cross ratios, and a wall
    yields values that are all integer multiples of (1/2) log q_label
    with both 0 and -(1/2) log q_label observed.
    """
    import random

    rng = random.Random(seed)
    results = []
    errors = []
    if line[0] == "wall":
        label = line[1]
        target = G.weight(label)
        half = WeightVector.half_log_int(G.q[label - 1])
        configs = _skeleton_quadruples(G, label, samples, rng)
    else:
        target = None
        half = None
        configs = _generic_quadruples(G, line[1], samples, rng)
    base_chambers = [0]
    for idx, quad in enumerate(configs):
        xi1, xi2, eta1, eta2, meta = quad
        try:
            val = cross_ratio(G, xi1, xi2, eta1, eta2, base_chambers[0])
        except (NoStabilization, NearVertex, LeftBall) as exc:
            errors.append({"sample": idx, "error": type(exc).__name__})
            continue
        results.append({"sample": idx, "meta": meta, "value": val})
    observed = []
    for r in results:
        if r["value"] not in observed:
            observed.append(r["value"])
    if line[0] == "wall":
        multiples = [v.multiple_of_half_log(G.q[line[1] - 1]) for v in observed]
        in_lattice = all(m is not None for m in multiples)
        zero_seen = any(v.is_zero() for v in observed)
        neg_half_seen = any(v == -half for v in observed)
        verdict = in_lattice and zero_seen and neg_half_seen
    else:
        verdict = bool(results) and all(r["value"].is_zero() for r in results)
    return {
        "line": line,
        "samples": len(results),
        "errors": errors,
        "observed": observed,
        "pass": verdict,
    }


def _panel_charts(G, chart, chart_chamber, label):
    """Charts covering every host chamber of the panel across `label` of
    the given chart chamber (for a tessellation, just the one chart)."""
    host = G.host
    if not host.is_building:
        return [(chart, None)]
    base_host = chart.to_host(chart_chamber)
    w = chart.realized.ball.words[chart_chamber]
    out = []
    for color in range(1, G.spec.q[label - 1] + 1):
        word = rb.normal_form(
            host.ball.words[base_host] + ((label, color),), G.spec
        )
        target = host.ball.index.get(word)
        if target is None:
            continue
        coloring = rb.apartment_through(
            host.ball, host.ball.words[base_host], word
        )
        # re-base the coloring so the chart origin still maps to the
        # chart's base chamber
        out.append(
            (
                ApartmentChart(G, chart.realized, _rebase(G, chart, coloring, chart_chamber)),
                color,
            )
        )
    return out


def _rebase(G, chart, coloring, chart_chamber):
    """Shift an apartment coloring so that evaluating it along the chart
    words reproduces the chart's origin assignment for `chart_chamber`."""
    # coloring is based at the host image of chart_chamber; build a new
    # coloring whose alpha over the chart origin () agrees with walking
    # backwards from chart_chamber
    sysc = G.host.system
    w = chart.realized.ball.words[chart_chamber]
    winv = sysc.canon(tuple(reversed(w)))
    base = coloring.alpha(winv, sysc)
    new_colors = {}
    for refl, col in coloring.colors.items():
        moved = sysc.canon(w + refl + winv)
        new_colors[moved] = col
    # walls colored on the path from the new base to the old one keep
    # their colors implicitly via apartment_through below
    through = rb.apartment_through(G.host.ball, base, coloring.base)
    merged = dict(through.colors)
    merged.update(new_colors)
    return rb.ApartmentColoring(spec=G.spec, base=base, colors=merged)


def _skeleton_quadruples(G, label, samples, rng):
    """Quadruples of regular rays straddling the wall through edge
    `label` of the base chamber, entering varying chambers on each side
    (including off-apartment chambers of a thick building)."""
    chart0 = chart_for(G)
    realized = chart0.realized
    mid, along = _wall_frame(realized, label)
    inr = realized.polygon.inradius
    quads = []
    neg = tuple(-x for x in along)
    for s in range(samples):
        off = inr * (0.08 + 0.10 * rng.random())
        tilt = 0.15 + 0.35 * rng.random()
        back = inr * (0.2 + 0.4 * rng.random())
        # side selector per ray: +1 / -1 across the wall; color choice for
        # thick hosts handled through panel charts below
        sides = [rng.choice((1, -1)) for _ in range(4)]
        use_branch = G.host.is_building and s % 3 == 2
        normal = _wall_normal(realized, label)
        rays = []
        for r_idx in range(4):
            toward = neg if r_idx < 2 else along
            theta_dir = math.atan2(toward[2], toward[1])
            sgn = sides[r_idx]
            base = _offset_point(mid, toward, -back, normal, sgn * off)
            tilt_theta = theta_dir + sgn * tilt * (0.7 + 0.3 * rng.random())
            chart = chart0
            if use_branch and r_idx == 0:
                cc = gr.locate(realized, base)
                branch = _panel_charts(G, chart0, cc, label)
                if len(branch) > 1:
                    chart = branch[-1][0]
            rays.append(_ray_from(chart, base, tilt_theta))
        quads.append(
            (
                rays[0],
                rays[1],
                rays[2],
                rays[3],
                {"sides": sides, "branch": use_branch},
            )
        )
    return quads


def _wall_normal(realized, label):
    u = gr.geodesic_normal(*realized.polygon.edge_endpoints(label))
    return u


def _generic_quadruples(G, theta, samples, rng):
    chart = chart_for(G)
    realized = chart.realized
    inr = realized.polygon.inradius
    o = (1.0, 0.0, 0.0)
    quads = []
    for _s in range(samples):
        jitter = [0.05 * inr * rng.uniform(-1, 1) for _ in range(4)]
        dthetas = [0.25 * rng.uniform(0.3, 1.0) for _ in range(4)]
        rays = []
        for r_idx in range(4):
            sign = 1 if r_idx % 2 == 0 else -1
            direction = theta + (math.pi if r_idx >= 2 else 0.0)
            base = gr._normalize_point(
                gr.geodesic_point(o, (0.0, math.cos(theta + 1.3), math.sin(theta + 1.3)), jitter[r_idx])
            )
            rays.append(
                _ray_from(chart, base, direction + sign * dthetas[r_idx])
            )
        quads.append((rays[0], rays[1], rays[2], rays[3], {"theta": theta}))
    return quads


def _carrying_chamber(ray):
    """Host chamber whose interior carries the ray's base point."""
    cc = gr.locate(ray.chart.realized, ray.base)
    if cc is None:
        raise NoApartment("ray base not inside the carrying apartment")
    return ray.chart.to_host(cc), cc


def _stays_off_wall(ray, refl):
    """True when the ray's traced chart chambers never cross the wall of
    the reflection `refl` (the disjointness hypothesis, checked at the
    traced horizon)."""
    realized = ray.chart.realized
    sysc = realized.ball.system
    start = gr.locate(realized, ray.base)
    margin = (
        ray.margin if ray.margin is not None else 1e-3 * realized.polygon.inradius
    )
    try:
        crossings = gr.trace(
            realized, ray.base, ray.theta, 1e9, margin=margin,
            stop_at_boundary=True,
        )
    except (gr.NearVertex, gr.LeftBall):
        return False
    side0 = refl in set(sysc.inversions(realized.ball.words[start]))
    for _lbl, c, _t in crossings:
        if (refl in set(sysc.inversions(realized.ball.words[c]))) != side0:
            return False
    return True


def _side_probes(G, chart0, label, off, back, tilt, mid, along, normal):
    """Probe rays toward the far end of the wall, entering distinct
    chambers of a far panel (including branch chambers of a building)."""
    realized = chart0.realized
    theta_pos = math.atan2(along[2], along[1])
    probes = []
    for sgn in (1, -1):
        base = _offset_point(mid, along, back, normal, sgn * off * 0.9)
        probes.append(_ray_from(chart0, base, theta_pos + sgn * tilt))
    if G.host.is_building:
        cc = gr.locate(realized, probes[0].base)
        for chart_b, _color in _panel_charts(G, chart0, cc, label)[1:]:
            probes.append(_ray_from(chart_b, probes[0].base, probes[0].theta))
    return probes


def _side_record(G, refl, xi1, xi2, probes, strict=False):
    """Evaluate one side-detection configuration: carrying chambers,
    wall-disjointness hypothesis, and the sampled cross-ratio family."""
    carrier1, _ = _carrying_chamber(xi1)
    carrier2, _ = _carrying_chamber(xi2)
    if not (_stays_off_wall(xi1, refl) and _stays_off_wall(xi2, refl)):
        if strict:
            raise HypothesisFail(
                "a ray meets the wall within the traced horizon"
            )
        return {"error": "HypothesisFail"}
    eta_ref = probes[0]
    values = []
    for eta in probes[1:]:
        values.append(cross_ratio(G, xi1, xi2, eta, eta_ref, 0))
    distinct = []
    for v in values:
        if v not in distinct:
            distinct.append(v)
    sampled_same = len(distinct) == 1
    combinatorial_same = carrier1 == carrier2
    return {
        "carriers": (carrier1, carrier2),
        "same_side": combinatorial_same,
        "distinct_values": len(distinct),
        "agree": sampled_same == combinatorial_same,
    }


def detect_side_experiment(G, sigma_label, xi1=None, xi2=None, configs=20, seed=0):
    """For pairs of regular rays launched beside the wall ray through
    edge `sigma_label`, compare the combinatorial same-side verdict with
    the sampled cross-ratio behaviour near the singular end.

    When `xi1` and `xi2` are supplied, only that pair is evaluated (a
    single-configuration report); otherwise `configs` configurations are
    sampled, alternating same-side, opposite-side, and (for buildings)
    branch-chamber placements.

    Combinatorial verdict: each ray is carried by one chamber of the
    panel along the shared wall edge (found by locating its base point);
    the rays are on the same side exactly when those carrying chambers
    coincide.  Sampled verdict: probes eta' entering distinct chambers
    of a far panel supply the cross-ratio family {xi1 xi2 | eta' eta_ref};
    a single constant means same side, at least two distinct constants
    means different sides.  `pass` requires agreement on >= `configs`
    configurations.  Both rays must stay off the wall through the traced
    horizon; configurations violating this are skipped and recorded.
    """
    import random

    rng = random.Random(seed)
    chart0 = chart_for(G)
    realized = chart0.realized
    sysc = realized.ball.system
    label = sigma_label
    refl = sysc.canon((label,))
    mid, along = _wall_frame(realized, label)
    normal = _wall_normal(realized, label)
    inr = realized.polygon.inradius

    if xi1 is not None or xi2 is not None:
        if xi1 is None or xi2 is None:
            raise ValueError("xi1 and xi2 must be supplied together")
        off = inr * 0.12
        back = inr * 0.4
        probes = _side_probes(G, chart0, label, off, back, 0.3, mid, along, normal)
        record = _side_record(G, refl, xi1, xi2, probes, strict=True)
        return {
            "label": label,
            "configs": 1,
            "records": [record],
            "pass": record["agree"],
        }

    kinds = ["same", "opposite"]
    if G.host.is_building:
        kinds.append("branch")
    records = []
    agree = 0
    attempts = 0
    while agree < configs and attempts < configs * 8:
        attempts += 1
        kind = kinds[attempts % len(kinds)]
        off = inr * (0.08 + 0.08 * rng.random())
        back = inr * (0.25 + 0.35 * rng.random())
        tilt = 0.2 + 0.3 * rng.random()
        neg = tuple(-x for x in along)
        theta_neg = math.atan2(neg[2], neg[1])
        s2 = -1 if kind == "opposite" else 1
        xi = []
        for sgn, extra in ((1, 0.0), (s2, 0.12)):
            base = _offset_point(mid, neg, back, normal, sgn * off)
            xi.append(_ray_from(chart0, base, theta_neg + sgn * (tilt + extra)))
        if kind == "branch":
            # move the second ray into a different chamber of the same
            # panel: same geometry, carried by a branch chamber
            cc = gr.locate(realized, xi[1].base)
            branch = _panel_charts(G, chart0, cc, label)
            if len(branch) <= 1:
                records.append({"error": "NoBranchChart"})
                continue
            xi[1] = _ray_from(branch[-1][0], xi[1].base, xi[1].theta)
        try:
            probes = _side_probes(
                G, chart0, label, off, back, tilt, mid, along, normal
            )
            record = _side_record(G, refl, xi[0], xi[1], probes)
        except (NoStabilization, NearVertex, LeftBall, NoApartment) as exc:
            records.append({"error": type(exc).__name__})
            continue
        record["kind"] = kind
        records.append(record)
        if record.get("agree"):
            agree += 1
    return {
        "label": label,
        "configs": agree,
        "records": records,
        "pass": agree >= configs,
    }
