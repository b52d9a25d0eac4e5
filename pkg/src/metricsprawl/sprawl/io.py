"""Line-oriented index files.

Line 1 is a JSON header.  Each following line is one JSON record:
``{"p": id, ...}`` for a point, ``{"r": id, ...}`` for a region,
``{"d": i, "row": [...]}`` for the upper triangle of a pivot table row, and
``{"edge": [...]}`` for an edge that does not fit the bipartite layout.
Keys are sorted and floats are written with ``repr`` precision, so a given
graph always serializes to the same bytes.
"""
from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np

from ..ambit import LinearAmbit
from ..errors import InvalidInputError
from .graph import PivotTable, Region, SprawlGraph
from .validate import validate

FORMAT = "metricsprawl-index"
VERSION = 1


def _line(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _payload_out(p):
    return p if isinstance(p, str) else list(p)


def _payload_in(p):
    return p if isinstance(p, str) else tuple(float(v) for v in p)


def dumps(g: SprawlGraph) -> str:
    buf = io.StringIO()
    header = {
        "format": FORMAT, "version": VERSION, "metric": g.metric, "n": g.n,
        "regions": len(g.regions), "roots": g.roots, "builder": g.builder,
        "params": g.params, "build_distances": g.build_distances,
    }
    if g.table is not None:
        t = g.table
        header["table"] = {"heuristic": t.heuristic, "pivot_order": t.pivot_order, "switch": t.switch}
    buf.write(_line(header))
    for u, p in enumerate(g.payloads):
        buf.write(_line({"p": u, "payload": _payload_out(p), "children": g.point_children[u]}))
    for rid, R in enumerate(g.regions):
        buf.write(_line({"r": rid, "foci": list(R.ambit.foci), "coeffs": [list(c) for c in R.ambit.coeffs],
                         "radii": list(R.ambit.radii), "pos": R.pos, "neg": R.neg, "tag": R.tag}))
    if g.table is not None:
        D = g.table.matrix
        for i in range(g.n):
            buf.write(_line({"d": i, "row": D[i, i + 1:].tolist()}))
    for e in g.stray_edges:
        buf.write(_line({"edge": list(e)}))
    return buf.getvalue()


def loads(text: str, audit: bool = False) -> SprawlGraph:
    lines = text.splitlines()
    if not lines:
        raise InvalidInputError("empty index file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"line 1: {e}") from None
    if header.get("format") != FORMAT:
        raise InvalidInputError("not an index file")
    if header.get("version") != VERSION:
        raise InvalidInputError(f"unsupported index version {header.get('version')}")
    n = header["n"]
    payloads, children = [None] * n, [[] for _ in range(n)]
    regions: list = [None] * header["regions"]
    D = np.zeros((n, n)) if "table" in header else None
    stray = []
    for lineno, line in enumerate(lines[1:], 2):
        try:
            rec = json.loads(line)
            if "p" in rec:
                payloads[rec["p"]] = _payload_in(rec["payload"])
                children[rec["p"]] = list(rec["children"])
            elif "r" in rec:
                regions[rec["r"]] = Region(LinearAmbit(rec["foci"], rec["coeffs"], rec["radii"]),
                                           list(rec["pos"]), list(rec["neg"]), rec.get("tag", ""))
            elif "d" in rec:
                i = rec["d"]
                D[i, i + 1:] = rec["row"]
                D[i + 1:, i] = rec["row"]
            elif "edge" in rec:
                sk, si, dk, di, neg = rec["edge"]
                stray.append((sk, si, dk, di, neg))
            else:
                raise InvalidInputError("unknown record")
        except (json.JSONDecodeError, KeyError, IndexError, TypeError, ValueError) as e:
            raise InvalidInputError(f"line {lineno}: {e}") from None
    if any(p is None for p in payloads) or any(r is None for r in regions):
        raise InvalidInputError("index file is missing point or region records")
    g = SprawlGraph(header["metric"], payloads)
    g.point_children = children
    g.regions = regions
    g.roots = list(header["roots"])
    g.stray_edges = stray
    g.builder = header.get("builder", "")
    g.params = header.get("params", {})
    g.build_distances = header.get("build_distances", 0)
    if D is not None:
        t = header["table"]
        g.table = PivotTable(D, t["heuristic"], list(t["pivot_order"]), t["switch"])
    validate(g, audit=audit)
    return g


def save(g: SprawlGraph, path) -> None:
    Path(path).write_text(dumps(g), encoding="utf-8")


def load(path, audit: bool = False) -> SprawlGraph:
    return loads(Path(path).read_text(encoding="utf-8"), audit=audit)
