import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nfoldopt.cli import InputError, decode, dump_problem, encode, load_problem, run

INF = float("inf")


def call(tmp_path, command, kind, data, *extra):
    path = tmp_path / "in.json"
    path.write_text(dump_problem(kind, data))
    out, err = io.StringIO(), io.StringIO()
    code = run([*extra, command, str(path)], out, err)
    return code, (json.loads(out.getvalue()) if out.getvalue() else None), err.getvalue()


def test_graver_file(tmp_path):
    code, res, _ = call(tmp_path, "graver", "graver", {"matrix": [[1, 2, 1]]})
    assert code == 0 and res["size"] == "8" and len(res["basis"]) == 8
    assert ["1", "-1", "1"] in res["basis"]


def test_nfold_graver_file(tmp_path):
    tpl = {"A1": [[1, 0], [0, 1]], "A2": [[1, 1]], "t": 2}
    code, res, _ = call(tmp_path, "nfold-graver", "graver", {"template": tpl, "n": 4})
    assert code == 0 and res["size"] == "12"


def test_gadget_uniqueness(tmp_path):
    code, res, _ = call(tmp_path, "uniqueness", "uniqueness", {"gadget": {"target": 5, "values": [2, 3]}})
    assert code == 0 and res["verdict"] == "not unique"
    code, res, _ = call(tmp_path, "uniqueness", "uniqueness", {"gadget": {"target": 4, "values": [2, 3]}})
    assert res["verdict"] == "unique"


def _pair(b, objective=None):
    data = {"template": {"A1": [[1, 0], [0, 1]], "A2": [[1, 1]], "t": 2}, "n": 2, "b": b, "l": [0] * 4, "u": [INF] * 4}
    if objective is not None:
        data["objective"] = objective
    return data


def test_solve_exit_codes(tmp_path):
    code, res, _ = call(tmp_path, "solve", "nfold-linear", _pair([1, 1, 1, 1], [0, 1, 1, 0]))
    assert code == 0 and res["objective"] == "2" and res["point"] == ["0", "1", "1", "0"]
    assert "phases" in res["counters"] and "augmentations" in res["counters"]
    code, res, _ = call(tmp_path, "solve", "nfold-linear", _pair([1, 2, 1, 1]))
    assert code == 2 and res["status"] == "infeasible"
    free = {"template": {"A1": [], "A2": [[1, -1]], "t": 2}, "n": 1, "b": [0], "l": [0, 0], "u": [INF, INF], "objective": [1, 1]}
    code, res, _ = call(tmp_path, "solve", "nfold-linear", free)
    assert code == 3 and res["status"] == "unbounded"


def test_solve_convex(tmp_path):
    obj = {"function": "squared-l2", "weights": [[1, 0, 0, 0], [0, 1, 0, 0]]}
    code, res, _ = call(tmp_path, "solve", "nfold-convex", _pair([1, 1, 1, 1], obj))
    assert code == 0 and res["objective"] == "1"


def test_transport_file(tmp_path):
    margins = []
    for i in range(1, 3):
        for j in range(1, 3):
            margins += [{"index": [i, j, 0], "value": 1}, {"index": [i, 0, j], "value": 1}, {"index": [0, i, j], "value": 1}]
    data = {"shape": [2, 2, 2], "family": [[1, 2], [1, 3], [2, 3]], "margins": margins,
            "objective": {"linear": [1, 1, 0, 0, 0, 0, 1, 1]}}
    code, res, _ = call(tmp_path, "transport", "transport", data)
    assert code == 0 and res["objective"] == "2"
    data = {k: v for k, v in data.items() if k != "objective"}
    data["entry"] = [1, 1, 1]
    code, res, _ = call(tmp_path, "uniqueness", "uniqueness", data)
    assert res["verdict"] == "not unique" and (res["lo"], res["hi"]) == ("0", "1")


def test_pack_and_partition(tmp_path):
    code, res, _ = call(tmp_path, "pack", "cutting-stock", {"widths": [3, 5], "demands": [2, 1], "stock": 7})
    assert code == 0 and res["objective"] == "-14"
    code, res, _ = call(tmp_path, "pack", "packing", {"weights": [2], "counts": [2], "capacities": [4], "utilities": [[1]]})
    assert res["objective"] == "2"
    code, res, _ = call(tmp_path, "pack", "packing", {"weights": [3], "counts": [3], "capacities": [4], "utilities": [[1]]})
    assert code == 2
    code, res, _ = call(tmp_path, "partition", "partition", {"players": 2, "items": [[1], [2], [3]], "shape": [1, 2]})
    assert res["objective"] == "26" and res["parts"] == [["0"], ["1", "2"]]


def test_universality_and_zonotope(tmp_path):
    code, res, _ = call(tmp_path, "universality", "universality", {"A": [[2, 3]], "b": [6], "count": True})
    assert code == 0 and res["tables"] == "2" and len(res["sigma"]) == 2
    code, res, _ = call(tmp_path, "zonotope", "zonotope", {"generators": [[1, 0], [0, 1], [1, 1]]})
    assert res["count"] == "6"


def test_bad_field(tmp_path):
    code, _, err = call(tmp_path, "graver", "graver", {"matrix": [[1, "x"]]})
    assert code == 64 and "data/matrix/0/1" in err


def test_unknown_field_rejected(tmp_path):
    code, _, err = call(tmp_path, "graver", "graver", {"matrix": [[1]], "colour": "red"})
    assert code == 64 and "colour" in err


def test_wrong_kind_for_command(tmp_path):
    code, _, err = call(tmp_path, "solve", "graver", {"matrix": [[1]]})
    assert code == 64 and "kind" in err


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"version": "1",\n  "kind": }')
    err = io.StringIO()
    assert run(["graver", str(path)], io.StringIO(), err) == 64
    assert "line 2" in err.getvalue()


def test_missing_file():
    err = io.StringIO()
    assert run(["graver", "/nonexistent/file.json"], io.StringIO(), err) == 64


def test_native_numbers_rejected():
    with pytest.raises(InputError):
        load_problem(json.dumps({"version": "1", "kind": "graver", "data": {"matrix": [[1, 2]]}}))


def test_output_is_deterministic(tmp_path):
    path = tmp_path / "in.json"
    path.write_text(dump_problem("nfold-linear", _pair([1, 1, 1, 1], [0, 1, 1, 0])))
    outs = []
    for k in range(2):
        dest = tmp_path / f"out{k}.json"
        assert run(["solve", str(path), "-o", str(dest)]) == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]


def test_generator_is_seeded(tmp_path):
    texts = []
    for seed in (5, 5, 6):
        out = io.StringIO()
        assert run(["--seed", str(seed), "generate", "transport"], out) == 0
        texts.append(out.getvalue())
    assert texts[0] == texts[1]
    path = tmp_path / "gen.json"
    path.write_text(texts[2])
    assert run(["transport", str(path)], io.StringIO()) == 0


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "nfoldopt.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "universality" in proc.stdout


big = st.integers(-(10**40), 10**40)
payloads = st.fixed_dictionaries(
    {
        "template": st.fixed_dictionaries({"A1": st.lists(st.lists(big, min_size=2, max_size=2), max_size=2),
                                           "A2": st.lists(st.lists(big, min_size=2, max_size=2), min_size=1, max_size=2),
                                           "t": st.integers(1, 5)}),
        "n": st.integers(1, 10**30),
        "b": st.lists(big, max_size=4),
        "l": st.lists(st.one_of(big, st.just(-INF)), max_size=4),
        "u": st.lists(st.one_of(big, st.just(INF)), max_size=4),
        "objective": st.lists(big, max_size=4),
    }
)


@settings(max_examples=60, deadline=None)
@given(payloads)
def test_round_trip(data):
    kind, back = load_problem(dump_problem("nfold-linear", data))
    assert kind == "nfold-linear" and back == data


def test_round_trip_convex_text_fields():
    data = {"players": 2, "items": [[2**70], [-(2**70)]], "function": "linf"}
    assert load_problem(dump_problem("partition", data)) == ("partition", data)
    assert decode(encode({"function": "12"}))["function"] == "12"
