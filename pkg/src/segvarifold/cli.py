"""Command line front end.

Every command prints deterministic JSON on stdout.  Exit codes: 0 success or
true, 1 property false, 2 input error, 3 undecided (search cap reached).
``VARIFOLD_CAP`` overrides the search cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .decompose import (
    Decomposition,
    SplitMultiset,
    check_split,
    decompose,
    default_cap,
    enumerate_decompositions,
    find_split,
    verify_decomposition,
)
from .errors import SearchCapExceeded, VarifoldError
from .geometry import Ball, Box, Region
from .netfile import Network, NetworkFileError, json_number, read_network, read_parts, \
    read_submultiplicity, write_network
from .render import render_svg
from .variation import apriori_check, first_variation, v_boundary
from .varifold import EPS_NUM, SubMultiplicity, density, strong_distance, validate, weight_ball_mass

OK, FALSE, INPUT_ERROR, UNDECIDED = 0, 1, 2, 3


class UsageError(VarifoldError):
    pass


def _vec(x) -> list:
    return [json_number(float(c)) for c in x]


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse numbers from {text!r}") from None


def _ball(text: str) -> Ball:
    nums = _floats(text)
    if len(nums) < 3:
        raise UsageError("--ball takes center coordinates followed by the radius, e.g. 0,0,1")
    return Ball(nums[:-1], nums[-1])


def _box(text: str) -> Box:
    lo, sep, hi = text.partition(";")
    if not sep:
        raise UsageError("--box takes 'lo coords;hi coords', e.g. '-1,-1;1,1'")
    return Box(_floats(lo), _floats(hi))


def _atoms(T) -> list:
    return [{"point": _vec(p), "vector": _vec(v), "mass": json_number(float(np.linalg.norm(v)))}
            for p, v in T]


def _parts(parts) -> list:
    return [{"mult": [json_number(x) for x in m.values], "count": c} for m, c in parts]


def _decomposition(D: Decomposition) -> dict:
    return {"partial": D.partial, "parts": _parts(D.parts),
            "undecided": [[json_number(x) for x in m.values] for m in D.undecided]}


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# --------------------------------------------------------------------------
# commands; each returns an exit code


def cmd_validate(net: Network, args) -> int:
    diags = validate(net.varifold)
    _emit({"valid": not diags,
           "diagnostics": [{"code": d.code, "message": d.message,
                            "edge": None if d.edge is None else net.edge_ids[d.edge]} for d in diags]})
    return OK if not diags else FALSE


def cmd_delta(net: Network, args) -> int:
    _emit({"atoms": _atoms(first_variation(net.varifold))})
    return OK


def cmd_density(net: Network, args) -> int:
    x = _floats(args.at)
    _emit({"point": _vec(x), "density": json_number(density(net.varifold, x))})
    return OK


def cmd_mass(net: Network, args) -> int:
    b = _ball(args.ball)
    _emit({"center": _vec(b.center), "radius": json_number(b.radius),
           "mass": json_number(weight_ball_mass(net.varifold, b.center, b.radius))})
    return OK


def cmd_boundary(net: Network, args) -> int:
    T = v_boundary(net.varifold, net.region(args.region))
    _emit({"region": args.region, "atoms": _atoms(T)})
    return OK


def cmd_split_check(net: Network, args) -> int:
    m = SubMultiplicity.of(read_submultiplicity(args.sub, net))
    ok = check_split(net.varifold, m)
    _emit({"split": ok})
    return OK if ok else FALSE


def cmd_indecomposable(net: Network, args) -> int:
    m = find_split(net.varifold, args.cap)
    out = {"indecomposable": m is None}
    if m is not None:
        out["split"] = [json_number(x) for x in m.values]
    _emit(out)
    return OK if m is None else FALSE


def cmd_decompose(net: Network, args) -> int:
    rng = None if args.seed is None else np.random.default_rng(args.seed)
    D = decompose(net.varifold, args.cap, rng)
    out = {"edges": net.edge_ids, **_decomposition(D)}
    _emit(out)
    return UNDECIDED if D.partial else OK


def cmd_enumerate(net: Network, args) -> int:
    Ds = enumerate_decompositions(net.varifold, args.cap)
    _emit({"edges": net.edge_ids, "count": len(Ds),
           "decompositions": [{"parts": _parts(D.parts)} for D in Ds]})
    return OK


def cmd_verify(net: Network, args) -> int:
    parts = read_parts(args.decomposition, net)
    ms = SplitMultiset(net.varifold, tuple((SubMultiplicity.of(m), c) for m, c in parts))
    rep = verify_decomposition(net.varifold, ms, args.cap)
    _emit({"ok": rep.ok,
           "conditions": {"components": rep.component_ok, "weight_sum": rep.weight_ok,
                          "variation_sum": rep.variation_ok},
           "first_failure": rep.first_failure, "failures": rep.failures})
    return OK if rep.ok else FALSE


def cmd_distance(net: Network, args) -> int:
    other = read_network(args.other)
    if (args.ball is None) == (args.box is None):
        raise UsageError("give exactly one of --ball or --box")
    K = _ball(args.ball) if args.ball is not None else _box(args.box)
    _emit({"distance": json_number(strong_distance(net.varifold, other.varifold, K))})
    return OK


def cmd_apriori(net: Network, args) -> int:
    res = apriori_check(net.varifold, _floats(args.at), args.r, args.c, args.d)
    _emit({"hypotheses_hold": res.hypotheses_hold, "lower_bound": json_number(res.lower_bound),
           "actual": json_number(res.actual), "margin": json_number(res.margin)})
    return FALSE if res.hypotheses_hold and res.margin < -EPS_NUM else OK


def cmd_render(net: Network, args) -> int:
    Path(args.out).write_text(render_svg(net.varifold, title=str(args.network)))
    _emit({"written": str(args.out)})
    return OK


DEMOS = {
    "six-rays": (fixtures.six_rays, {"upper": Region.halfspace((0.0, 1.0), 0.5)}),
    "tent": (fixtures.tent, {"above": fixtures.tent_region(0.05)}),
    "y-junction": (fixtures.y_junction, {"right": Region.halfspace((1.0, 0.0), 1.0)}),
    "crossing-segment": (fixtures.crossing_segment, {"right": Region.halfspace((1.0, 0.2), 0.5)}),
    "two-segments": (fixtures.two_disjoint_segments, {"left": Region.halfspace((-1.0, 0.0), 0.0)}),
}


def cmd_demo(args) -> int:
    build, regions = DEMOS[args.name]
    out = args.out or f"{args.name}.json"
    write_network(Network(build(), regions=dict(regions)), out)
    _emit({"written": str(out)})
    return OK


COMMANDS = {
    "validate": cmd_validate, "delta": cmd_delta, "density": cmd_density, "mass": cmd_mass,
    "boundary": cmd_boundary, "split-check": cmd_split_check, "indecomposable": cmd_indecomposable,
    "decompose": cmd_decompose, "enumerate": cmd_enumerate, "verify": cmd_verify,
    "distance": cmd_distance, "apriori": cmd_apriori, "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segvarifold", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("network", help="network JSON file")
        return sp

    cmd("validate", "check invariants and class membership")
    cmd("delta", "print the first-variation atoms")
    cmd("density", "density of the weight at a point").add_argument("--at", required=True)
    cmd("mass", "weight of a closed ball").add_argument("--ball", required=True, help="x,y,...,r")
    cmd("boundary", "distributional boundary of a region").add_argument("--region", required=True)
    cmd("split-check", "does a sub-multiplicity split the network").add_argument("--sub", required=True)
    for name, help_ in (("indecomposable", "decide indecomposability"),
                        ("decompose", "construct one decomposition"),
                        ("enumerate", "list all decompositions")):
        sp = cmd(name, help_)
        if name == "decompose":
            sp.add_argument("--seed", type=int, default=None, help="randomize split selection")
    cmd("verify", "check a decomposition file").add_argument("--decomposition", required=True)
    sp = cmd("distance", "strong-topology distance on a ball or box")
    sp.add_argument("--other", required=True)
    sp.add_argument("--ball")
    sp.add_argument("--box")
    sp = cmd("apriori", "check the a priori weight estimate")
    sp.add_argument("--at", required=True)
    for flag in ("--r", "--c", "--d"):
        sp.add_argument(flag, type=float, required=True)
    cmd("render", "write an SVG drawing").add_argument("--out", required=True)
    sp = sub.add_parser("demo", help="write a built-in network file")
    sp.add_argument("name", choices=sorted(DEMOS))
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.cap = default_cap()
    try:
        if args.command == "demo":
            return cmd_demo(args)
        net = read_network(args.network)
        return COMMANDS[args.command](net, args)
    except SearchCapExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return UNDECIDED
    except (NetworkFileError, UsageError, VarifoldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
