"""Command line front end: every command reads and writes the JSON formats
of :mod:`mildmix.serialize`.

Exit codes: 0 success, 2 precondition failure, 3 search timeout,
4 number context insufficient.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .iet import Iet, classify, keane_check
from .numbers import CertificationRefused, ContextIncomplete, NumberContext, default_context
from .pipeline import (
    NotFound,
    SnapFailed,
    mild_snap,
    random_seed_datum,
    run_approximation,
    symmetric_pair,
)
from .rauzy import Degenerate, cocycle, induction_step, rauzy_class
from .serialize import (
    canonical_dumps,
    context_registry,
    decode_datum,
    decode_iet,
    decode_pair,
    decode_scalar,
    encode_datum,
    encode_iet,
    encode_scalar,
    encode_vector,
)
from .specflow import SpecialFlowSystem, verify_certificate, vertical_trace
from .suspension import cone_check, polygon_svg

EXIT_OK, EXIT_PRECONDITION, EXIT_NOT_FOUND, EXIT_CONTEXT = 0, 2, 3, 4


def _load(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _scalar(text):
    """``3/7``, ``-2`` or an inline JSON scalar encoding."""
    text = text.strip()
    if text.startswith("{"):
        return decode_scalar(json.loads(text), _registry)
    return Fraction(text)


def _emit(obj):
    sys.stdout.write(canonical_dumps(obj))


_registry = context_registry()


def _load_context(path):
    if path is None:
        return default_context()
    ctx = NumberContext.from_json(_load(path))
    _registry[ctx.id] = ctx
    return ctx


# ---------------------------------------------------------------------------


def cmd_iet_eval(args):
    pair, lengths = decode_iet(_load(args.file), _registry)
    T = Iet(pair, lengths)
    x = _scalar(args.x)
    f = T.inverse if args.inverse else T
    orbit = [x]
    for _ in range(args.steps):
        orbit.append(f(orbit[-1]))
    _emit({"x": encode_scalar(x), "orbit": encode_vector(orbit[1:])})


def cmd_iet_keane(args):
    pair, lengths = decode_iet(_load(args.file), _registry)
    res = keane_check(pair, lengths, args.depth)
    if res:
        _emit({"violation": None, "depth": res.depth})
    else:
        _emit({"violation": {"m": res.m, "alpha": res.alpha, "beta": res.beta}})


def cmd_iet_classify(args):
    c = classify(decode_pair(_load(args.file)))
    _emit({"irreducible": c.irreducible, "in_P_star": c.in_P_star, "standard": c.standard})


def cmd_rauzy_step(args):
    pair, lengths = decode_iet(_load(args.file), _registry)
    step = induction_step(pair, lengths)
    out = encode_iet(step.new_pair, step.new_lengths)
    out["eps"] = step.eps
    out["theta"] = [list(r) for r in step.theta]
    _emit(out)


def cmd_rauzy_orbit(args):
    pair, lengths = decode_iet(_load(args.file), _registry)
    run = cocycle(pair, lengths, args.steps)
    out = {
        "steps": run.cocycle.step_log(),
        "theta": [list(r) for r in run.cocycle.matrix],
        "positive": run.cocycle.positive,
        "final": encode_iet(run.pair, run.lengths),
        "aborted_at": run.aborted_at,
    }
    _emit(out)


def cmd_rauzy_class(args):
    _emit(rauzy_class(decode_pair(_load(args.file))).to_json())


def cmd_susp_build(args):
    obj = _load(args.file)
    pair, lengths = decode_iet(obj, _registry)
    tau = tuple(decode_scalar(t, _registry) for t in obj["tau"])
    report = cone_check(pair, lengths, tau)
    if not report:
        _emit({"valid": False, "reason": report.reason, "index": report.first_violated_index})
        return EXIT_PRECONDITION
    datum = decode_datum(obj, _registry)
    out = encode_datum(datum)
    out["heights"] = encode_vector(datum.heights)
    out["valid"] = True
    _emit(out)


def cmd_susp_area(args):
    datum = decode_datum(_load(args.file), _registry)
    _emit({"area": encode_scalar(datum.area), "shoelace": encode_scalar(datum.polygon.shoelace_area())})


def cmd_susp_polygon(args):
    datum = decode_datum(_load(args.file), _registry)
    poly = datum.polygon
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(polygon_svg(datum))
    _emit({
        "top": [encode_vector(p) for p in poly.top],
        "bottom": [encode_vector(p) for p in poly.bottom],
        "closes": poly.closes,
    })


def cmd_flow_trace(args):
    datum = decode_datum(_load(args.file), _registry)
    trace = vertical_trace(datum, (_scalar(args.x), _scalar(args.y)), _scalar(args.time))
    _emit(trace.to_json())


def cmd_flow_evolve(args):
    datum = decode_datum(_load(args.file), _registry)
    system = SpecialFlowSystem(datum.iet(), datum.heights)
    path = system.evolve_path((_scalar(args.x), _scalar(args.y)), _scalar(args.time))
    _emit({
        "endpoint": encode_vector(path.endpoint),
        "letters": list(path.letters),
        "jump_times": encode_vector(path.jump_times),
    })


def cmd_pipeline_approx(args):
    rng = random.Random(args.seed)
    pibar = symmetric_pair(args.d)
    if args.file:
        datum = decode_datum(_load(args.file), _registry)
        pibar = symmetric_pair(datum.pair.d)
    else:
        datum, _ = random_seed_datum(pibar, args.n, rng, args.depth)
    run = run_approximation(datum, args.n, args.max_steps, pibar)
    out = run.to_json()
    out["input"] = encode_datum(datum)
    _emit(out)


def cmd_pipeline_snap(args):
    ctx = _load_context(args.context)
    datum = decode_datum(_load(args.file), _registry)
    res = mild_snap(datum, _scalar(args.eps), ctx, seed=args.seed)
    _emit(res.certificate.to_json())


def cmd_certify(args):
    with open(args.file) as fh:
        text = fh.read()
    ok = verify_certificate(text)
    _emit({"verified": ok})
    return EXIT_OK if ok else EXIT_PRECONDITION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mildmix", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    iet = top.add_parser("iet").add_subparsers(dest="cmd", required=True)
    p = iet.add_parser("eval", help="iterate T (or its inverse) from a point")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_iet_eval)
    p = iet.add_parser("keane", help="search for a connection up to a depth")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=100)
    p.set_defaults(func=cmd_iet_keane)
    p = iet.add_parser("classify", help="irreducibility, adjacent increases, standardness")
    p.add_argument("file")
    p.set_defaults(func=cmd_iet_classify)

    rz = top.add_parser("rauzy").add_subparsers(dest="cmd", required=True)
    p = rz.add_parser("step", help="one induction step")
    p.add_argument("file")
    p.set_defaults(func=cmd_rauzy_step)
    p = rz.add_parser("orbit", help="several steps with the accumulated cocycle")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_rauzy_orbit)
    p = rz.add_parser("class", help="Rauzy class as an edge list")
    p.add_argument("file")
    p.set_defaults(func=cmd_rauzy_class)

    su = top.add_parser("susp").add_subparsers(dest="cmd", required=True)
    p = su.add_parser("build", help="validate a datum and report heights")
    p.add_argument("file")
    p.set_defaults(func=cmd_susp_build)
    p = su.add_parser("area")
    p.add_argument("file")
    p.set_defaults(func=cmd_susp_area)
    p = su.add_parser("polygon", help="vertices, optionally drawn to SVG")
    p.add_argument("file")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_susp_polygon)

    fl = top.add_parser("flow").add_subparsers(dest="cmd", required=True)
    p = fl.add_parser("trace", help="vertical trace inside the polygon")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--time", required=True)
    p.set_defaults(func=cmd_flow_trace)
    p = fl.add_parser("evolve", help="special flow under the height roof")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--time", required=True)
    p.set_defaults(func=cmd_flow_evolve)

    pl = top.add_parser("pipeline").add_subparsers(dest="cmd", required=True)
    p = pl.add_parser("approx", help="approximate by a three-interval datum")
    p.add_argument("file", nargs="?", help="normalized datum; a random seed datum when omitted")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=4, help="letters for a generated datum")
    p.add_argument("--depth", type=int, default=20, help="backward steps for a generated datum")
    p.set_defaults(func=cmd_pipeline_approx)
    p = pl.add_parser("snap", help="certified mildly mixing datum nearby")
    p.add_argument("file")
    p.add_argument("--eps", required=True)
    p.add_argument("--context")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pipeline_snap)

    p = top.add_parser("certify", help="re-verify a certificate from its JSON")
    p.add_argument("file")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except ContextIncomplete as exc:
        print(f"context insufficient: {exc}", file=sys.stderr)
        return EXIT_CONTEXT
    except SnapFailed as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONTEXT if exc.kind == "context" else EXIT_PRECONDITION
    except (CertificationRefused, Degenerate, ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
