import json

import pytest

from conftest import sys_id, sys_not, sys_xor2
from fixpoint import io
from fixpoint.classify import is_monotone, is_self_dual
from fixpoint.cli import main
from fixpoint.core import System, complete_graph
from fixpoint.errors import FormatError
from fixpoint.functions import D3
from fixpoint.generate import random_system


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roundtrip_is_byte_canonical(rng):
    for repr in ("lookup", "formula", "circuit", "mixed"):
        for _ in range(10):
            S = random_system(rng, 6, "gnp", "BF", repr, 0.4)
            text = io.dumps_system(S)
            T = io.loads_system(text)
            assert T == S and io.dumps_system(T) == text


def test_parse_errors_have_locations():
    with pytest.raises(FormatError, match=r"\$\.functions\[1\]\.data"):
        io.loads_system(json.dumps({"vertices": 2, "edges": [[1, 2]], "functions": [
            {"vertex": 1, "repr": "lookup", "data": "0110"},
            {"vertex": 2, "repr": "formula", "data": "AND VAR 0"}]}))
    with pytest.raises(FormatError, match="line 1"):
        io.loads_system("{not json")
    with pytest.raises(FormatError, match="arity"):
        io.loads_system(json.dumps({"vertices": 1, "edges": [], "functions": [
            {"vertex": 1, "repr": "lookup", "data": "0110"}]}))


def test_classify_xor2(tmp_path, capsys):
    f = _write(tmp_path, "x.json", io.dumps_system(sys_xor2()))
    code, out, _ = _run(capsys, "classify", f)
    rep = json.loads(out)
    assert code == 0
    assert "L" in rep["functions"][0]["classes"]
    assert rep["verdicts"]["lookup"] == {"outcome": "Tractable", "tag": "ConstantWitness0"}


def test_classify_d_triangle_depends_on_graph_flag(tmp_path, capsys):
    S = System(complete_graph(3), [D3, D3, D3])
    f = _write(tmp_path, "d.json", io.dumps_system(S))
    rep = json.loads(_run(capsys, "classify", f, "--repr", "lookup")[1])
    assert rep["joint_coatoms"] == ["D"]
    assert rep["verdicts"]["lookup"]["outcome"] == "NPComplete"
    minors = _write(tmp_path, "m.json", json.dumps({"forbidden": [io.graph_to_dict(complete_graph(4))]}))
    rep = json.loads(_run(capsys, "classify", f, "--repr", "lookup", "--graphs", minors)[1])
    assert rep["verdicts"]["lookup"]["tag"] == "BoundedTreewidth"


def test_classify_flags_only(capsys):
    code, out, _ = _run(capsys, "classify", "--class", "D", "--graphs", "planar", "--repr", "lookup",
                        "--format", "text")
    assert code == 0 and "NPComplete(PlanarLookup)" in out


def test_solve_exit_codes(tmp_path, capsys):
    code, out, _ = _run(capsys, "solve", _write(tmp_path, "n.json", io.dumps_system(sys_not())))
    assert code == 1 and json.loads(out)["method"] == "LinearAlgebra"
    code, out, _ = _run(capsys, "solve", _write(tmp_path, "i.json", io.dumps_system(sys_id())))
    rep = json.loads(out)
    # auto probes the all-ones witness first; both constants are fixed for the identity
    assert code == 0 and rep["witness"] == "1" and "wall_time_s" in rep
    code, out, _ = _run(capsys, "solve", _write(tmp_path, "i.json", io.dumps_system(sys_id())),
                        "--strategy", "constant0")
    assert code == 0 and json.loads(out)["witness"] == "0"
    code, _, err = _run(capsys, "solve", _write(tmp_path, "bad.json", "[]"))
    assert code == 2 and "error" in err


def test_solve_agrees_with_brute_strategy(tmp_path, capsys, rng):
    for k in range(5):
        f = _write(tmp_path, f"r{k}.json", io.dumps_system(random_system(rng, 10, "gnp", "BF", "mixed", 0.3)))
        auto = _run(capsys, "solve", f)[0]
        brute = _run(capsys, "solve", f, "--strategy", "brute")[0]
        assert auto == brute


def test_simulate_examples(tmp_path, capsys):
    f = _write(tmp_path, "n.json", io.dumps_system(sys_not()))
    rep = json.loads(_run(capsys, "simulate", f, "--sync", 2, "--start", "0")[1])
    assert rep["trajectory"] == ["0", "1", "0"] and rep["fixed_point_reached_at"] is None
    g = _write(tmp_path, "i.json", io.dumps_system(sys_id()))
    rep = json.loads(_run(capsys, "simulate", g, "--sync", 3, "--start", "1")[1])
    assert rep["trajectory"] == ["1"] * 4 and rep["fixed_point_reached_at"] == 0
    x = _write(tmp_path, "x.json", io.dumps_system(sys_xor2()))
    rep = json.loads(_run(capsys, "simulate", x, "--sync", 1, "--start", "11")[1])
    assert rep["trajectory"] == ["11", "01"]
    sched = _write(tmp_path, "s.json", json.dumps([[1], [2]]))
    rep = json.loads(_run(capsys, "simulate", x, "--schedule", sched, "--start", "11")[1])
    assert rep["trajectory"][-1] == "00"


def test_reduce_kinds(tmp_path, capsys):
    cnf = _write(tmp_path, "x1.cnf", "p cnf 1 1\n1 0\n")
    code, out, _ = _run(capsys, "reduce", "--kind", "star", cnf)
    rep = json.loads(out)
    assert code == 0 and rep["metadata"]["vertex_cover_one"] is True
    io.system_from_dict(rep["system"])
    planar = _write(tmp_path, "p.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n")
    rep = json.loads(_run(capsys, "reduce", "--kind", "planar3sat", planar)[1])
    assert rep["metadata"]["max_degree"] <= 3 and rep["metadata"]["planar"]
    x = _write(tmp_path, "x.json", io.dumps_system(sys_xor2()))
    rep = json.loads(_run(capsys, "reduce", "--kind", "csp", x)[1])
    assert rep["metadata"]["variables"] == 2 and rep["metadata"]["constraints"] == 1
    rep = json.loads(_run(capsys, "reduce", "--kind", "selfdual-lift", x)[1])
    assert rep["metadata"]["self_dual"] is True


def test_gen_is_deterministic_and_class_conforming(capsys):
    a = _run(capsys, "gen", "--n", 7, "--class", "M", "--repr", "mixed", "--seed", 11)[1]
    b = _run(capsys, "gen", "--n", 7, "--class", "M", "--repr", "mixed", "--seed", 11)[1]
    assert a == b
    assert all(is_monotone(f) for f in io.loads_system(a).functions)
    d = _run(capsys, "gen", "--n", 6, "--class", "D", "--seed", 3)[1]
    assert all(is_self_dual(f) for f in io.loads_system(d).functions)
    with pytest.raises(SystemExit):
        main(["gen", "--n", "4"])


def test_verify_examples(tmp_path, capsys):
    f = _write(tmp_path, "i.json", io.dumps_system(sys_id()))
    code, out, _ = _run(capsys, "verify", f)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert {c["status"] for c in rep["checks"]} <= {"pass", "skipped"}
    x = _write(tmp_path, "x.json", io.dumps_system(sys_xor2()))
    w = _write(tmp_path, "w.json", json.dumps({"witness": "01"}))
    code, out, _ = _run(capsys, "verify", x, "--witness", w)
    failed = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert code == 1 and failed[0]["name"] == "witness-fixed-point"


def test_verify_star_sat_equivalence(tmp_path, capsys):
    cnf = _write(tmp_path, "h.cnf", "p cnf 2 1\n1 -2 0\n")
    star = tmp_path / "star.json"
    _run(capsys, "reduce", "--kind", "star", cnf, "-o", star)
    code, out, _ = _run(capsys, "verify", star, "--cnf", cnf, "--suite", "oracle")
    checks = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert code == 0 and checks["sat-equivalence"] == "pass"


def test_emitted_witness_reverifies(tmp_path, capsys, rng):
    for k in range(5):
        S = random_system(rng, 8, "gnp", "BF", "mixed", 0.3)
        f = _write(tmp_path, f"s{k}.json", io.dumps_system(S))
        code, out, _ = _run(capsys, "solve", f)
        if code == 0:
            w = _write(tmp_path, f"w{k}.json", out)
            assert _run(capsys, "verify", f, "--witness", w, "--suite", "oracle")[0] == 0
