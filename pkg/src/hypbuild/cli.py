"""Command-line entry point.

Every subcommand prints one JSON report to stdout:

    {"command", "config", "results": [...], "verdicts": [...],
     "witnesses": [...], "timings": null | {...}}

Exit codes: 0 when all verdicts pass, 1 when a verification fails,
2 on usage or input-format errors.  All randomized experiments take
--seed; identical config and seed give byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import catalog as cat
from . import genpoly as gp
from . import geomrender as gr
from . import metrics as mt
from . import rabuilding as rb
from .chamber import ChamberError, area, parse_chamber_string, validate
from .coxeter import CoxeterBall, export_complex, wall_type
from .weights import WeightVector


class UsageError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, WeightVector):
        return x.to_json()
    if hasattr(x, "fraction"):  # RationalAngle
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(command, config, results=(), verdicts=(), witnesses=()):
    """Assemble the report dict; main() prints it and derives the exit
    code from the verdicts."""
    return {
        "command": command,
        "config": _jsonable(config),
        "results": _jsonable(list(results)),
        "verdicts": _jsonable(list(verdicts)),
        "witnesses": _jsonable(list(witnesses)),
        "timings": None,
    }


def _spec_of(args, thin=False):
    spec = parse_chamber_string(args.chamber)
    if thin:
        return validate(spec.k, spec.m)
    return spec


def _graph_of(args):
    spec = _spec_of(args)
    if args.host == "apartment":
        ball = CoxeterBall(validate(spec.k, spec.m), args.radius)
        q = [int(x) for x in args.q.split(",")] if args.q else None
        return mt.DualGraph(ball, q=q)
    return mt.DualGraph(rb.ball(spec, args.radius))


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_chamber(args, config):
    try:
        spec = parse_chamber_string(args.chamber)
    except ChamberError as exc:
        if "FormatError" in exc.codes():
            raise UsageError(str(exc))
        return _emit(
            "chamber %s" % args.sub, config,
            verdicts=[{"name": "valid", "pass": False}],
            witnesses=[{"codes": exc.codes()}],
        )
    if args.sub == "validate":
        return _emit(
            "chamber validate", config,
            results=[{"k": spec.k, "m": list(spec.m), "q": list(spec.q),
                      "thick": spec.is_thick()}],
            verdicts=[{"name": "valid", "pass": True}],
        )
    a = area(spec)
    return _emit(
        "chamber area", config,
        results=[{"area": str(a), "value": a.radians()}],
    )


def _cmd_coxeter(args, config):
    spec = _spec_of(args, thin=True)
    ball = CoxeterBall(spec, args.radius)
    if args.sub == "ball":
        results = [{
            "chambers": len(ball.words),
            "edges": len(ball.edges),
            "vertices": len(ball.vertices),
            "interior_vertices": len(ball.interior_vertex_keys()),
        }]
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(export_complex(ball))
            results[0]["out"] = args.out
        return _emit("coxeter ball", config, results=results)
    walls = []
    for wall, edge_list in ball.walls():
        try:
            comp = wall_type(ball, wall)
        except Exception:
            comp = None
        walls.append({
            "reflection": list(wall),
            "edges": len(edge_list),
            "component": list(comp) if comp else None,
        })
    return _emit("coxeter walls", config, results=walls)


def _cmd_genpoly(args, config):
    if args.sub == "verify":
        with open(args.infile) as fh:
            adj, color = gp.from_text(fh.read())
        try:
            poly = gp.verify(adj, color, args.m, require_thick=args.thick)
        except gp.GenPolyError as exc:
            return _emit(
                "genpoly verify", config,
                verdicts=[{"name": "polygon", "pass": False}],
                witnesses=[{"code": exc.code, "message": exc.message,
                            "witness": _jsonable(exc.witness)}],
            )
        return _emit(
            "genpoly verify", config,
            results=[{"m": poly.m, "params": poly.params}],
            verdicts=[{"name": "polygon", "pass": True}],
        )
    kind_args = [int(x) for x in args.params.split(",")] if args.params else []
    try:
        poly = gp.construct(args.kind, *kind_args)
    except gp.GenPolyError as exc:
        return _emit(
            "genpoly %s" % args.sub, config,
            verdicts=[{"name": "construct", "pass": False}],
            witnesses=[{"code": exc.code, "message": exc.message}],
        )
    if args.sub == "construct":
        return _emit(
            "genpoly construct", config,
            results=[{"m": poly.m, "params": poly.params,
                      "vertices": len(poly.vertices()),
                      "edges": len(poly.edges()),
                      "apartments": len(poly.apartments())}],
            verdicts=[{"name": "polygon", "pass": True}],
        )
    if args.sub == "opposites":
        v = args.vertex or min(poly.vertices())
        return _emit(
            "genpoly opposites", config,
            results=[{"vertex": v, "opposites": gp.opposite_set(poly, v)}],
        )
    # chain between two apartments
    rng = random.Random(args.seed)
    cycles = poly.apartments()
    a, b = rng.sample(cycles, 2) if len(cycles) > 1 else (cycles[0], cycles[0])
    chain = gp.apartment_chain(poly, a, b)
    return _emit(
        "genpoly chain", config,
        results=[{"from": list(a), "to": list(b), "length": len(chain),
                  "chain": [list(c) for c in chain]}],
        verdicts=[{"name": "chain", "pass": chain[0] == a and chain[-1] == b}],
    )


def _cmd_building(args, config):
    spec = _spec_of(args)
    if args.sub == "verify":
        with open(args.infile) as fh:
            text = fh.read()
        report = rb.verify_building_local(text, spec)
        return _emit(
            "building verify", config,
            results=[{"checked": report.checked, "caveats": list(report.caveats)}],
            verdicts=[{"name": "local_axioms", "pass": report.ok}],
            witnesses=list(report.violations),
        )
    b = rb.ball(spec, args.radius)
    if args.sub == "ball":
        results = [{
            "chambers": len(b.words),
            "edges": len(b.edges),
            "vertices": len(b.vertices),
        }]
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(rb.export_complex(b))
            results[0]["out"] = args.out
        return _emit("building ball", config, results=results)
    # retract: spot-check the retraction onto a random two-chamber apartment
    rng = random.Random(args.seed)
    c1 = rng.randrange(len(b.words))
    A = rb.apartment_through(b, (), b.words[c1])
    rho = rb.retraction(b, A, ())
    failures = []
    checked = 0
    for _ in range(args.samples):
        d = rng.randrange(len(b.words))
        img = rho(b.words[d])
        pos = A.position_of(img)
        if pos is None:
            failures.append({"chamber": list(b.words[d]), "reason": "image off apartment"})
        if len(img) > len(b.words[d]):
            failures.append({"chamber": list(b.words[d]), "reason": "gallery increased"})
        checked += 1
    return _emit(
        "building retract", config,
        results=[{"checked": checked}],
        verdicts=[{"name": "retraction", "pass": not failures}],
        witnesses=failures,
    )


def _rays_from_thetas(G, thetas):
    chart = mt.chart_for(G)
    origin = (1.0, 0.0, 0.0)
    return [mt._ray_from(chart, origin, th) for th in thetas]


def _cmd_metrics(args, config):
    G = _graph_of(args)
    if args.sub == "dist":
        d = mt.dist(G, args.c, args.cp)
        return _emit(
            "metrics dist", config,
            results=[{"dist": d, "value": d.value()}],
        )
    if args.sub == "gromov":
        v = mt.gromov(G, args.x, args.y, args.c)
        return _emit(
            "metrics gromov", config,
            results=[{"gromov": v, "value": v.value()}],
        )
    if args.sub == "busemann":
        (xi,) = _rays_from_thetas(G, [args.theta])
        v = mt.busemann(G, xi, args.c, args.cp)
        return _emit(
            "metrics busemann", config,
            results=[{"busemann": v, "value": v.value()}],
        )
    if args.sub == "crossratio":
        thetas = [float(x) for x in args.thetas.split(",")]
        if len(thetas) != 4:
            raise UsageError("--thetas needs four comma-separated angles")
        xi1, xi2, eta1, eta2 = _rays_from_thetas(G, thetas)
        v = mt.cross_ratio(G, xi1, xi2, eta1, eta2, args.c)
        return _emit(
            "metrics crossratio", config,
            results=[{"cross_ratio": v, "value": v.value()}],
        )
    if args.sub == "growth":
        values = []
        step = args.step
        n = 0.0
        while n <= args.n + 1e-9:
            values.append({"n": n, "a": mt.growth(G, n)})
            n += step
        results = [{"growth": values}]
        if args.tau:
            est = mt.tau_estimate(G, args.tau)
            results.append({
                "tau": [[n, float(v)] for n, v in est.values],
                "converged": est.converged,
                "note": est.note,
            })
        return _emit("metrics growth", config, results=results)
    if args.sub == "detect-skeleton":
        line = ("wall", args.label) if args.label else ("generic", args.theta)
        rep = mt.detect_skeleton_experiment(
            G, line, samples=args.samples, seed=args.seed
        )
        return _emit(
            "metrics detect-skeleton", config,
            results=[{"samples": rep["samples"],
                      "observed": rep["observed"],
                      "errors": rep["errors"]}],
            verdicts=[{"name": "skeleton", "pass": rep["pass"]}],
        )
    rep = mt.detect_side_experiment(
        G, args.label or 1, configs=args.samples, seed=args.seed
    )
    disagreements = [
        r for r in rep["records"]
        if "error" not in r and not r["agree"]
    ]
    return _emit(
        "metrics detect-side", config,
        results=[{"configs": rep["configs"]}],
        verdicts=[{"name": "side", "pass": rep["pass"]}],
        witnesses=disagreements,
    )


def _cmd_catalog(args, config):
    spec = _spec_of(args)
    if args.sub == "claims":
        rep = cat.claims_check(spec)
        verdicts = [
            {"name": name, "pass": v["pass"]}
            for name, v in sorted(rep.items())
            if name != "summary"
        ]
        witnesses = [
            {"claim": name, "witnesses": v["witnesses"]}
            for name, v in sorted(rep.items())
            if name != "summary" and v["witnesses"]
        ]
        return _emit(
            "catalog claims", config,
            results=[rep["summary"]],
            verdicts=verdicts,
            witnesses=witnesses,
        )
    enum = cat.enumerate_triangles if args.sub == "triangles" else cat.enumerate_quads
    entries = sorted(enum(spec), key=lambda e: (e.n, e.code))
    results = [e.to_json() for e in entries]
    if args.svg_dir:
        T = cat.tessellation(spec)
        import os

        os.makedirs(args.svg_dir, exist_ok=True)
        for i, e in enumerate(entries):
            radius = max(len(T.words[c]) for c in e.rep) + 2
            real = gr.realize(CoxeterBall(validate(spec.k, spec.m), radius))
            svg = gr.render_svg(
                real,
                overlays={"disks": [[real.ball.index[real.ball.system.canon(T.words[c])]
                                     for c in e.rep]]},
            )
            path = "%s/%s_%02d.svg" % (args.svg_dir, args.sub, i)
            with open(path, "w") as fh:
                fh.write(svg)
    return _emit("catalog %s" % args.sub, config, results=results)


def _cmd_render(args, config):
    spec = _spec_of(args, thin=True)
    real = gr.realize(CoxeterBall(spec, args.radius))
    svg = gr.render_svg(real)
    with open(args.out, "w") as fh:
        fh.write(svg)
    return _emit(
        "render", config,
        results=[{"out": args.out, "faces": gr.face_count(svg),
                  "chambers": len(real.ball)}],
        verdicts=[{"name": "face_count",
                   "pass": gr.face_count(svg) == len(real.ball)}],
    )


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser():
    p = argparse.ArgumentParser(prog="hypbuild")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the report")
    top = p.add_subparsers(dest="command", required=True)

    def add(cmd, subs, handler):
        cp = top.add_parser(cmd)
        cp.set_defaults(handler=handler)
        sp = cp.add_subparsers(dest="sub", required=True)
        out = {}
        for s in subs:
            out[s] = sp.add_parser(s)
        return out

    chamber = add("chamber", ["validate", "area"], _cmd_chamber)
    for s in chamber.values():
        s.add_argument("--chamber", required=True,
                       help="spec string 'k;m1,..,mk[;q1,..,qk]'")

    coxeter = add("coxeter", ["ball", "walls"], _cmd_coxeter)
    for s in coxeter.values():
        s.add_argument("--chamber", required=True)
        s.add_argument("--radius", type=int, default=4)
    coxeter["ball"].add_argument("--out", help="write the complex exchange file")

    genpoly = add(
        "genpoly", ["construct", "verify", "opposites", "chain"], _cmd_genpoly
    )
    for name in ("construct", "opposites", "chain"):
        genpoly[name].add_argument(
            "--kind", required=True, choices=["digon", "projective", "quadrangle"]
        )
        genpoly[name].add_argument("--params", help="comma-separated integers")
    genpoly["verify"].add_argument("--in", dest="infile", required=True)
    genpoly["verify"].add_argument("--m", type=int, required=True)
    genpoly["verify"].add_argument("--thick", action="store_true")
    genpoly["opposites"].add_argument("--vertex")
    genpoly["chain"].add_argument("--seed", type=int, default=0)

    building = add("building", ["ball", "verify", "retract"], _cmd_building)
    for s in building.values():
        s.add_argument("--chamber", required=True)
    for name in ("ball", "retract"):
        building[name].add_argument("--radius", type=int, default=3)
    building["ball"].add_argument("--out")
    building["verify"].add_argument("--in", dest="infile", required=True)
    building["retract"].add_argument("--samples", type=int, default=100)
    building["retract"].add_argument("--seed", type=int, default=0)

    metrics = add(
        "metrics",
        ["dist", "gromov", "busemann", "crossratio", "growth",
         "detect-skeleton", "detect-side"],
        _cmd_metrics,
    )
    for s in metrics.values():
        s.add_argument("--chamber", required=True)
        s.add_argument("--host", choices=["apartment", "building"],
                       default="apartment")
        s.add_argument("--radius", type=int, default=4)
        s.add_argument("--q", help="override weights on an apartment host")
        s.add_argument("--seed", type=int, default=0)
    metrics["dist"].add_argument("--c", type=int, default=0)
    metrics["dist"].add_argument("--cp", type=int, default=0)
    metrics["gromov"].add_argument("--x", type=int, required=True)
    metrics["gromov"].add_argument("--y", type=int, required=True)
    metrics["gromov"].add_argument("--c", type=int, default=0)
    metrics["busemann"].add_argument("--theta", type=float, required=True)
    metrics["busemann"].add_argument("--c", type=int, default=0)
    metrics["busemann"].add_argument("--cp", type=int, required=True)
    metrics["crossratio"].add_argument("--thetas", required=True)
    metrics["crossratio"].add_argument("--c", type=int, default=0)
    metrics["growth"].add_argument("--n", type=float, default=3.0)
    metrics["growth"].add_argument("--step", type=float, default=0.5)
    metrics["growth"].add_argument("--tau", type=int, default=0)
    for name in ("detect-skeleton", "detect-side"):
        metrics[name].add_argument("--label", type=int)
        metrics[name].add_argument("--samples", type=int, default=20)
    metrics["detect-skeleton"].add_argument("--theta", type=float, default=0.77)

    catalog = add("catalog", ["triangles", "quads", "claims"], _cmd_catalog)
    for s in catalog.values():
        s.add_argument("--chamber", required=True)
    for name in ("triangles", "quads"):
        catalog[name].add_argument("--svg-dir",
                                   help="write one SVG per entry here")

    render = top.add_parser("render")
    render.set_defaults(handler=_cmd_render, sub="render")
    render.add_argument("--chamber", required=True)
    render.add_argument("--radius", type=int, default=4)
    render.add_argument("--out", required=True)
    return p


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    config = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("handler",) and v is not None and not callable(v)
    }
    t0 = time.time()
    try:
        report = args.handler(args, config)
    except (ChamberError, UsageError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    if args.timings:
        report["timings"] = {"elapsed_s": round(time.time() - t0, 3)}
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return 0 if all(v.get("pass", True) for v in report["verdicts"]) else 1


if __name__ == "__main__":
    sys.exit(main())
