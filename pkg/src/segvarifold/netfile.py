"""Reading and writing JSON network files (schema in ``schema/network.schema.json``)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import VarifoldError
from .geometry import Arrangement, Exit, HalfSpace, Region, Window
from .varifold import AppropriateClass, PolyhedralVarifold


class NetworkFileError(VarifoldError):
    pass


def load_schema() -> dict:
    text = resources.files("segvarifold").joinpath("schema/network.schema.json").read_text()
    return json.loads(text)


@dataclass
class Network:
    varifold: PolyhedralVarifold
    edge_ids: list = field(default_factory=list)
    vertex_ids: list = field(default_factory=list)
    regions: dict = field(default_factory=dict)

    def region(self, rid) -> Region:
        for key, reg in self.regions.items():
            if str(key) == str(rid):
                return reg
        raise NetworkFileError(f"no region with id {rid!r}")


def json_number(x):
    """Integers stay integers; everything else is a float with 12 significant digits."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    y = float(f"{float(x):.12g}")
    return 0.0 if y == 0 else y


def _mult_out(m: Fraction):
    if m.denominator == 1:
        return int(m.numerator)
    if float(m) == m:
        return float(m)
    return f"{m.numerator}/{m.denominator}"


def _class_from(obj: dict | None) -> AppropriateClass:
    if not obj or obj.get("kind", "integers") == "integers":
        return AppropriateClass.integers()
    pieces = []
    for p in obj.get("pieces", [[1, None]]):
        if isinstance(p, list):
            pieces.append((Fraction(str(p[0])), None if p[1] is None else Fraction(str(p[1]))))
        else:
            pieces.append((Fraction(str(p)), Fraction(str(p))))
    return AppropriateClass.grid(int(obj.get("denom", 1)), pieces)


def _class_to(C: AppropriateClass) -> dict:
    if C.kind == "integers":
        return {"kind": "integers"}
    pieces = [_mult_out(lo) if hi == lo else [_mult_out(lo), None if hi is None else _mult_out(hi)]
              for lo, hi in C.pieces]
    return {"kind": "grid", "denom": C.denom, "pieces": pieces}


def region_from(obj: dict) -> Region:
    hs = tuple(HalfSpace(h["normal"], h["offset"]) for h in obj["halfspaces"])
    return Region(hs, obj.get("mode", "all"), bool(obj.get("complement", False)))


def network_from_dict(obj: dict) -> Network:
    try:
        jsonschema.validate(obj, load_schema())
    except jsonschema.ValidationError as exc:
        raise NetworkFileError(f"invalid network file: {exc.message}") from None
    w = obj["window"]
    try:
        window = (Window.ball(w["center"], w["radius"]) if w["kind"] == "ball"
                  else Window.box(w["min"], w["max"]))
        C = _class_from(obj.get("class"))
    except (ValueError, VarifoldError) as exc:
        raise NetworkFileError(str(exc)) from None
    vids = [v["id"] for v in obj["vertices"]]
    eids = [e["id"] for e in obj["edges"]]
    for name, ids in (("vertex", vids), ("edge", eids)):
        if len(set(map(str, ids))) != len(ids):
            raise NetworkFileError(f"duplicate {name} ids")
    index = {str(v): k for k, v in enumerate(vids)}

    def endpoint(ep):
        if isinstance(ep, dict):
            return Exit(tuple(float(c) for c in ep["exit"]))
        if str(ep) not in index:
            raise NetworkFileError(f"edge refers to unknown vertex {ep!r}")
        return index[str(ep)]

    verts = tuple(tuple(float(c) for c in v["coords"]) for v in obj["vertices"])
    edges = tuple((endpoint(e["from"]), endpoint(e["to"])) for e in obj["edges"])
    mults = []
    for e in obj["edges"]:
        m = e["mult"]
        mults.append(Fraction(m) if isinstance(m, str) else C.snap(m))
    try:
        arr = Arrangement(window, verts, edges)
        V = PolyhedralVarifold(arr, tuple(mults), C)
        if any(len(v) != window.dim for v in verts):
            raise NetworkFileError("vertex dimension differs from the window")
        regions = {r["id"]: region_from(r) for r in obj.get("regions", [])}
    except (ValueError, VarifoldError) as exc:
        raise NetworkFileError(str(exc)) from None
    return Network(V, eids, vids, regions)


def network_to_dict(net: Network) -> dict:
    V = net.varifold
    arr = V.arrangement
    w = arr.window
    if w.kind == "ball":
        win = {"kind": "ball", "center": list(w.shape.center), "radius": w.shape.radius}
    else:
        win = {"kind": "box", "min": list(w.shape.lo), "max": list(w.shape.hi)}
    vids = net.vertex_ids or [f"v{k}" for k in range(arr.n_vertices)]
    eids = net.edge_ids or [f"e{k + 1}" for k in range(arr.n_edges)]

    def endpoint(ep):
        return {"exit": list(ep.coords)} if isinstance(ep, Exit) else vids[ep]

    out = {
        "window": win,
        "vertices": [{"id": vid, "coords": list(c)} for vid, c in zip(vids, arr.vertices)],
        "edges": [{"id": eid, "from": endpoint(a), "to": endpoint(b), "mult": _mult_out(m)}
                  for eid, (a, b), m in zip(eids, arr.edges, V.mult)],
        "class": _class_to(V.density_class),
    }
    if net.regions:
        out["regions"] = [
            {"id": rid, "halfspaces": [{"normal": list(h.normal), "offset": h.offset} for h in r.halfspaces],
             "mode": r.mode, "complement": r.complement}
            for rid, r in net.regions.items()]
    return out


def read_network(path) -> Network:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise NetworkFileError(f"cannot read {path}: {exc}") from None
    return network_from_dict(obj)


def write_network(net: Network, path) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=2) + "\n")


def read_submultiplicity(path, net: Network) -> list:
    """A list aligned with the edges, or a map from edge id to value (missing ids are 0)."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise NetworkFileError(f"cannot read {path}: {exc}") from None
    if isinstance(obj, dict) and "mult" in obj:
        obj = obj["mult"]
    return _values(obj, net)


def _values(obj, net: Network) -> list:
    n = net.varifold.n_edges
    if isinstance(obj, list):
        if len(obj) != n:
            raise NetworkFileError(f"expected {n} values, got {len(obj)}")
        vals = obj
    elif isinstance(obj, dict):
        pos = {str(e): k for k, e in enumerate(net.edge_ids)}
        vals = [0] * n
        for key, v in obj.items():
            if str(key) not in pos:
                raise NetworkFileError(f"unknown edge id {key!r}")
            vals[pos[str(key)]] = v
    else:
        raise NetworkFileError("multiplicities must be a list or an edge-id map")
    C = net.varifold.density_class
    return [Fraction(v) if isinstance(v, str) else C.snap(v) for v in vals]


def read_parts(path, net: Network) -> list[tuple[list, int]]:
    """Parts of a decomposition file: ``{"parts": [{"mult": ..., "count": k}, ...]}``."""
    try:
        obj = json.loads(Path(path).read_text())
        parts = obj["parts"]
        return [(_values(p["mult"], net), int(p.get("count", 1))) for p in parts]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise NetworkFileError(f"cannot read decomposition {path}: {exc}") from None
