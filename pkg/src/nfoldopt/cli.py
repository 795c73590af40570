"""Command-line front end.

Problem files are JSON objects ``{"version": "1", "kind": ..., "data": {...}}``
with every integer written as a decimal string and infinite bounds as
"inf" / "-inf".  Results use the same conventions.  Margin indices are
1-based with 0 standing for a summed-out axis.

Exit codes: 0 answer found, 2 infeasible, 3 unbounded, 64 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys

import jsonschema

from . import numeric as nm
from .convex import ConvexObjective, linear, linf, lp_power, squared_l2
from .graver import Bimatrix, graver_basis, nfold_graver
from .models import (
    entry_uniqueness,
    gadget_entry_unique,
    solve_cutting_stock,
    solve_packing,
    solve_partition,
    solve_transport,
    subset_sum_gadget,
    universality_reduce,
)
from .models.transport import Range, Unique
from .models.universality import table_entry_unique
from .nfold import NFoldProblem, nfold_solve_convex, nfold_solve_linear
from .outcome import Infeasible, Optimal, Unbounded
from .zonotope import zonotope_vertices

VERSION = "1"
EXIT_OK, EXIT_INFEASIBLE, EXIT_UNBOUNDED, EXIT_INPUT = 0, 2, 3, 64

_INT = {"type": "string", "pattern": r"^-?[0-9]+$"}
_NAT = {"type": "string", "pattern": r"^[0-9]+$"}
_POS = {"type": "string", "pattern": r"^0*[1-9][0-9]*$"}
_BOUND = {"type": "string", "pattern": r"^(-?[0-9]+|inf|-inf)$"}
_VEC = {"type": "array", "items": _INT}
_MAT = {"type": "array", "items": _VEC}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


_CONVEX = _obj(
    {
        "function": {"enum": ["squared-l2", "linf", "lp", "linear"]},
        "p": _POS,
        "weights": _MAT,
    },
    ["function", "weights"],
)
_OBJECTIVE = _obj({"linear": _VEC, "convex": _CONVEX})
_TEMPLATE = _obj({"A1": _MAT, "A2": _MAT, "t": _POS}, ["A1", "A2", "t"])

_DATA = {
    "graver": _obj({"matrix": _MAT, "columns": _NAT, "template": _TEMPLATE, "n": _POS}),
    "zonotope": _obj({"generators": _MAT, "dimension": _POS}, ["generators"]),
    "nfold-linear": _obj(
        {"template": _TEMPLATE, "n": _POS, "b": _VEC, "l": {"type": "array", "items": _BOUND},
         "u": {"type": "array", "items": _BOUND}, "objective": _VEC},
        ["template", "n", "b", "l", "u"],
    ),
    "nfold-convex": _obj(
        {"template": _TEMPLATE, "n": _POS, "b": _VEC, "l": {"type": "array", "items": _BOUND},
         "u": {"type": "array", "items": _BOUND}, "objective": _CONVEX},
        ["template", "n", "b", "l", "u", "objective"],
    ),
    "transport": _obj(
        {
            "shape": {"type": "array", "items": _POS, "minItems": 2},
            "family": {"type": "array", "items": {"type": "array", "items": _POS}},
            "margins": {"type": "array", "items": _obj({"index": {"type": "array", "items": _NAT}, "value": _INT}, ["index", "value"])},
            "objective": _OBJECTIVE,
        },
        ["shape", "family", "margins"],
    ),
    "packing": _obj(
        {"weights": _VEC, "counts": _VEC, "capacities": _VEC, "utilities": _MAT, "convex": _obj(
            {"function": {"enum": ["squared-l2", "linf", "lp"]}, "p": _POS, "utilities": {"type": "array", "items": _MAT}},
            ["function", "utilities"])},
        ["weights", "counts", "capacities"],
    ),
    "cutting-stock": _obj({"widths": _VEC, "demands": _VEC, "stock": _POS}, ["widths", "demands", "stock"]),
    "partition": _obj(
        {"players": _POS, "items": _MAT, "shape": _VEC, "function": {"enum": ["squared-l2", "linf", "lp"]}, "p": _POS},
        ["players", "items"],
    ),
    "uniqueness": _obj(
        {
            "shape": {"type": "array", "items": _POS, "minItems": 2},
            "family": {"type": "array", "items": {"type": "array", "items": _POS}},
            "margins": {"type": "array", "items": _obj({"index": {"type": "array", "items": _NAT}, "value": _INT}, ["index", "value"])},
            "entry": {"type": "array", "items": _POS},
            "gadget": _obj({"target": _POS, "values": {"type": "array", "items": _POS}}, ["target", "values"]),
            "line_sums": _obj({"u": _MAT, "v": _MAT, "z": _MAT}, ["u", "v", "z"]),
        }
    ),
    "universality": _obj({"A": _MAT, "b": _VEC, "count": {"type": "boolean"}}, ["A", "b"]),
}

SCHEMA = {
    "type": "object",
    "properties": {"version": {"const": VERSION}, "kind": {"enum": sorted(_DATA)}, "data": {"type": "object"}},
    "required": ["version", "kind", "data"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}}, "then": {"properties": {"data": s}}} for k, s in sorted(_DATA.items())
    ],
}

COMMAND_KINDS = {
    "graver": {"graver"},
    "nfold-graver": {"graver"},
    "solve": {"nfold-linear", "nfold-convex"},
    "transport": {"transport"},
    "pack": {"packing", "cutting-stock"},
    "partition": {"partition"},
    "uniqueness": {"uniqueness"},
    "universality": {"universality"},
    "zonotope": {"zonotope"},
}

_TEXT_KEYS = {"version", "kind", "function"}
_INT_RE = re.compile(r"^-?[0-9]+$")


class InputError(Exception):
    pass


def encode(value):
    """Python values to the file format: ints and infinities become strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode(value, key=None):
    """Inverse of ``encode`` on the payload; text-valued keys are left alone."""
    if isinstance(value, dict):
        return {k: decode(v, k) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v, key) for v in value]
    if isinstance(value, str) and key not in _TEXT_KEYS:
        if _INT_RE.match(value):
            return int(value)
        if value in ("inf", "-inf"):
            return math.inf if value == "inf" else -math.inf
    return value


def dump_problem(kind: str, data: dict) -> str:
    return json.dumps({"version": VERSION, "kind": kind, "data": encode(data)}, indent=2, sort_keys=True) + "\n"


def load_problem(text: str) -> tuple:
    """(kind, decoded payload); raises InputError with a line or field diagnostic."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = max(errors, key=lambda e: len(e.absolute_path))
        where = "/".join(str(p) for p in err.absolute_path) or "(top level)"
        raise InputError(f"field {where}: {err.message}")
    return raw["kind"], decode(raw["data"])


def _template(d) -> Bimatrix:
    return Bimatrix.of(d["A1"], d["A2"], d["t"])


def _convex(spec) -> ConvexObjective:
    W = spec["weights"]
    f = spec["function"]
    if f == "squared-l2":
        return squared_l2(W)
    if f == "linf":
        return linf(W)
    if f == "linear":
        if len(W) != 1:
            raise InputError("field objective/weights: linear takes a single weight row")
        return linear(W[0])
    return lp_power(W, spec.get("p", 2))


def _combiner(spec):
    f = spec.get("function", "squared-l2")
    if f == "squared-l2":
        return squared_l2
    if f == "linf":
        return linf
    p = spec.get("p", 2)
    return lambda W: lp_power(W, p)


def _counters(stats: dict) -> dict:
    return {k: v for k, v in sorted(stats.items()) if isinstance(v, int) and not isinstance(v, bool)}


def _outcome(out, extra=None) -> tuple:
    extra = dict(extra or {})
    if isinstance(out, Infeasible):
        return {"status": "infeasible", "counters": _counters(out.stats), **extra}, EXIT_INFEASIBLE
    if isinstance(out, Unbounded):
        return {"status": "unbounded", "counters": _counters(out.stats), **extra}, EXIT_UNBOUNDED
    res = {"status": "optimal", "point": list(out.point), "counters": _counters(out.stats), **extra}
    if out.value is not None:
        res["objective"] = out.value
    return res, EXIT_OK


def _margins(d) -> dict:
    out = {}
    axes = len(d["shape"])
    for m in d["margins"]:
        idx = m["index"]
        if len(idx) != axes:
            raise InputError(f"field margins: index {idx} needs {axes} entries")
        key = tuple(None if i == 0 else i - 1 for i in idx)
        out[key] = m["value"]
    return out


def _family(d) -> list:
    return [tuple(a - 1 for a in S) for S in d["family"]]


def cmd_graver(kind, d, command):
    if command == "nfold-graver" or "template" in d:
        if "template" not in d or "n" not in d:
            raise InputError("field data: nfold-graver needs template and n")
        G = nfold_graver(_template(d["template"]), d["n"])
    else:
        if "matrix" not in d:
            raise InputError("field data: graver needs matrix")
        n = d.get("columns")
        if n is None:
            if not d["matrix"]:
                raise InputError("field columns: needed for an empty matrix")
            n = len(d["matrix"][0])
        G = graver_basis(d["matrix"], n)
    return {"status": "ok", "size": len(G), "basis": G}, EXIT_OK


def cmd_zonotope(kind, d, command):
    W = zonotope_vertices(d["generators"], d.get("dimension"))
    return {"status": "ok", "count": len(W), "vertices": [{"vertex": w.vertex, "functional": w.functional} for w in W]}, EXIT_OK


def cmd_solve(kind, d, command):
    tpl = _template(d["template"])
    if kind == "nfold-linear":
        p = NFoldProblem.of(tpl, d["n"], d["b"], d["l"], d["u"], d.get("objective"))
        return _outcome(nfold_solve_linear(p))
    p = NFoldProblem.of(tpl, d["n"], d["b"], d["l"], d["u"], _convex(d["objective"]))
    out = nfold_solve_convex(p)
    extra = {"projection": list(out.stats["projection"])} if isinstance(out, Optimal) else {}
    return _outcome(out, extra)


def cmd_transport(kind, d, command):
    obj = None
    spec = d.get("objective", {})
    if "linear" in spec and "convex" in spec:
        raise InputError("field objective: give linear or convex, not both")
    if "linear" in spec:
        obj = spec["linear"]
    elif "convex" in spec:
        obj = _convex(spec["convex"])
    out = solve_transport(d["shape"], _family(d), _margins(d), obj)
    extra = {"table": out.stats["table"]} if isinstance(out, Optimal) else {}
    return _outcome(out, extra)


def cmd_pack(kind, d, command):
    if kind == "cutting-stock":
        out = solve_cutting_stock(d["widths"], d["demands"], d["stock"])
        extra = {"packing": out.stats["packing"], "rolls_used": out.stats["rolls_used"]} if isinstance(out, Optimal) else {}
        return _outcome(out, extra)
    if "convex" in d:
        c = d["convex"]
        out = solve_packing(d["weights"], d["counts"], d["capacities"], c["utilities"], combine=_combiner(c))
    else:
        if "utilities" not in d:
            raise InputError("field data: packing needs utilities or convex")
        out = solve_packing(d["weights"], d["counts"], d["capacities"], d["utilities"])
    extra = {"packing": out.stats["packing"]} if isinstance(out, Optimal) else {}
    return _outcome(out, extra)


def cmd_partition(kind, d, command):
    out = solve_partition(d["players"], d["items"], d.get("shape"), _combiner(d))
    extra = {"parts": out.stats["parts"]} if isinstance(out, Optimal) else {}
    return _outcome(out, extra)


def cmd_uniqueness(kind, d, command):
    if "gadget" in d:
        g = subset_sum_gadget(d["gadget"]["target"], d["gadget"]["values"])
        unique = gadget_entry_unique(g)
        cell = [a + 1 for a in g.cell]
        return {"status": "ok", "verdict": "unique" if unique else "not unique", "entry": cell}, EXIT_OK
    if "entry" not in d:
        raise InputError("field data: uniqueness needs entry")
    entry = tuple(a - 1 for a in d["entry"])
    if "line_sums" in d:
        ls = d["line_sums"]
        verdict = table_entry_unique(ls["u"], ls["v"], ls["z"], entry)
        if verdict is None:
            return {"status": "infeasible", "counters": {}}, EXIT_INFEASIBLE
        return {"status": "ok", "verdict": "unique" if verdict else "not unique"}, EXIT_OK
    for key in ("shape", "family", "margins"):
        if key not in d:
            raise InputError(f"field data: uniqueness needs {key}")
    out = entry_uniqueness(d["shape"], _family(d), _margins(d), entry)
    if isinstance(out, Infeasible):
        return {"status": "infeasible", "counters": _counters(out.stats)}, EXIT_INFEASIBLE
    if isinstance(out, Unique):
        return {"status": "ok", "verdict": "unique", "value": out.value}, EXIT_OK
    assert isinstance(out, Range)
    return {"status": "ok", "verdict": "not unique", "lo": out.lo, "hi": out.hi}, EXIT_OK


def cmd_universality(kind, d, command):
    c = universality_reduce(d["A"], d["b"])
    res = {
        "status": "ok",
        "rows": c.rows,
        "cols": c.cols,
        "bound": c.bound,
        "u": c.u,
        "v": c.v,
        "z": c.z,
        "sigma": [{"coordinate": j + 1, "cell": [a + 1 for a in cell]} for j, cell in enumerate(c.sigma)],
    }
    if d.get("count"):
        res["tables"] = sum(1 for _ in c.tables())
    return res, EXIT_OK


HANDLERS = {
    "graver": cmd_graver,
    "nfold-graver": cmd_graver,
    "solve": cmd_solve,
    "transport": cmd_transport,
    "pack": cmd_pack,
    "partition": cmd_partition,
    "uniqueness": cmd_uniqueness,
    "universality": cmd_universality,
    "zonotope": cmd_zonotope,
}

SUMMARIES = {
    "graver": "Graver basis of a matrix",
    "nfold-graver": "Graver basis of an n-fold matrix",
    "solve": "linear or separable convex n-fold program",
    "transport": "optimise over tables with given line sums",
    "pack": "bin packing or cutting stock",
    "partition": "vector partitioning",
    "uniqueness": "is a table entry or a subset-sum answer forced",
    "universality": "rewrite an integer program as a line-sum table",
    "zonotope": "vertices of a zonotope",
}


def generate(kind: str, rng: random.Random) -> tuple:
    """A random test instance of the given kind, as (kind, payload)."""
    if kind == "transport":
        n = rng.randint(1, 3)
        table = [[[rng.randint(0, 1) for _ in range(n)] for _ in range(2)] for _ in range(2)]
        from .models import table_margins
        from .models.transport import LINE_SUMS_3WAY

        m = table_margins(table, LINE_SUMS_3WAY)
        margins = [{"index": [0 if i is None else i + 1 for i in key], "value": val} for key, val in sorted(m.items(), key=lambda kv: str(kv[0]))]
        w = [rng.randint(-2, 2) for _ in range(4 * n)]
        return "transport", {"shape": [2, 2, n], "family": [[1, 2], [1, 3], [2, 3]], "margins": margins, "objective": {"linear": w}}
    if kind == "universality":
        n = rng.randint(1, 3)
        A = [[rng.randint(0, 3) for _ in range(n)]]
        y = [rng.randint(0, 2) for _ in range(n)]
        return "universality", {"A": A, "b": list(nm.matvec(A, y)), "count": True}
    if kind == "gadget":
        m = rng.randint(0, 3)
        return "uniqueness", {"gadget": {"target": rng.randint(1, 10), "values": [rng.randint(1, 10) for _ in range(m)]}}
    raise InputError(f"no generator for {kind!r}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = argparse.ArgumentParser(prog="nfoldopt", description="n-fold integer programming and its applications")
    parser.add_argument("--seed", type=int, default=0, help="seed for the instance generator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        sp = sub.add_parser(name, help=SUMMARIES[name])
        sp.add_argument("input", help="problem file, or - for stdin")
        sp.add_argument("-o", "--output", help="result file (default stdout)")
    gp = sub.add_parser("generate", help="write a random test instance")
    gp.add_argument("kind", choices=["transport", "universality", "gadget"])
    gp.add_argument("-o", "--output")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    def emit(text: str) -> None:
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            stdout.write(text)

    if args.command == "generate":
        kind, data = generate(args.kind, random.Random(args.seed))
        emit(dump_problem(kind, data))
        return EXIT_OK
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    try:
        kind, data = load_problem(text)
        if kind not in COMMAND_KINDS[args.command]:
            raise InputError(f"field kind: {args.command} does not accept {kind!r}")
        result, code = HANDLERS[args.command](kind, data, args.command)
    except (InputError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    emit(json.dumps({"version": VERSION, "kind": kind, **encode(result)}, indent=2, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
