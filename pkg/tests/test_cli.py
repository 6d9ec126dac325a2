import json
import subprocess
import sys
from importlib import resources


from tatecx import cli
from tatecx.complexes import homology, module_complex, sandwich
from tatecx.constructions import HomComplex, PinchedTensor, TensorComplex
from tatecx.fileformat import dump_complex, load_complex, same_complex

DATA = resources.files("tatecx") / "data"


def data(name):
    return str(DATA / name)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def nonzero(table_doc):
    # graded tables split each degree by internal degree, ungraded ones hold the descriptor
    if not table_doc["graded"]:
        return dict(table_doc["degrees"])
    return {i: cell["nonzero"] for i, cell in table_doc["degrees"].items()}


# -- fixtures -----------------------------------------------------------------


def test_fixture_listing_and_printing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    assert "z4.yaml" in out.split()
    code, out, _ = run(capsys, "fixtures", "z4.yaml")
    assert code == 0 and out == (DATA / "z4.yaml").read_text()
    code, _, err = run(capsys, "fixtures", "nope.yaml")
    assert code == 2 and "no fixture" in err


# -- homology -----------------------------------------------------------------


def test_z4_tensor_file_gives_z2_in_seven_degrees(capsys):
    code, doc = run_json(capsys, "homology", data("z4_tensor.yaml"), "--range", "-3..3")
    assert code == 0
    assert [nonzero(doc["table"])[str(i)] for i in range(-3, 4)] == [[2]] * 7


def test_unbounded_tensor_file_lists_witnesses(capsys):
    code, doc = run_json(capsys, "homology", data("example_31_TT.yaml"), "--range", "-2..2", "--degree-bound", "6")
    assert code == 0
    w = doc["witnesses"]
    for n in (-2, 0, 2):
        assert w[str(n)]["element"] == f"x*e[0,{n}]"
        assert w[str(n)]["cycle"] and not w[str(n)]["boundary"]
    code, out, _ = run(capsys, "homology", data("example_31_TT.yaml"), "--range", "-2..2")
    assert "H_0: nonzero, witness x*e[0,0]" in out


def test_degree_bound_comes_from_the_environment(capsys, monkeypatch):
    monkeypatch.setenv("TATECX_DEGREE_BOUND", "4")
    code, doc = run_json(capsys, "homology", data("example_31_x.yaml"), "--range", "-1..1")
    assert code == 0 and doc["table"]["bound"] == 4
    code, doc = run_json(capsys, "homology", data("example_31_x.yaml"), "--range", "-1..1", "--degree-bound", "5")
    assert doc["table"]["bound"] == 5
    monkeypatch.setenv("TATECX_DEGREE_BOUND", "six")
    code, _, err = run(capsys, "homology", data("example_31_x.yaml"))
    assert code == 2 and "TATECX_DEGREE_BOUND" in err


def test_report_file_is_written(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "homology", data("z4.yaml"), "--range", "-1..1", "--report", report)
    assert code == 0
    assert json.loads(report.read_text())["range"] == [-1, 1]


# -- tate ---------------------------------------------------------------------


def test_tate_routes_agree_on_example_31(capsys):
    code, doc = run_json(capsys, "tate", data("example_31_x.yaml"), data("example_31_y.yaml"), "--mode", "tor", "--route", "both", "--range", "-3..3")
    assert code == 0 and doc["agree"]
    cells = nonzero(doc["tables"]["direct"])
    assert {i: sum(v.values()) for i, v in cells.items()} == {str(i): (1 if i % 2 == 0 else 0) for i in range(-3, 4)}
    assert cells == nonzero(doc["tables"]["pinched"])


def test_tate_routes_agree_on_z4_cohomology(capsys):
    code, doc = run_json(capsys, "tate", data("z4.yaml"), data("z4.yaml"), "--mode", "ext", "--route", "both", "--range", "-3..3")
    assert code == 0 and doc["agree"]
    assert list(nonzero(doc["tables"]["pinched"]).values()) == [[2]] * 7


def test_tate_routes_agree_on_square_zero(capsys):
    code, doc = run_json(capsys, "tate", data("square_zero_x.yaml"), data("square_zero_y.yaml"), "--route", "both")
    assert code == 0 and doc["agree"]
    assert not any(nonzero(doc["tables"]["direct"]).values())


def test_tate_route_disagreement_exits_one(capsys, monkeypatch):
    real = cli.tate_homology_pinched
    monkeypatch.setattr(cli, "tate_homology_pinched", lambda cr, a, degrees, bound=None: _relabel(real(cr, a, [d + 1 for d in degrees], bound)))
    code, out, _ = run(capsys, "tate", data("example_31_x.yaml"), data("example_31_y.yaml"), "--range", "-2..2")
    assert code == 1
    assert "DISAGREE" in out


def _relabel(table):
    table.cells = {i - 1: c for i, c in table.cells.items()}
    table.ranges = {i - 1: r for i, r in table.ranges.items()}
    return table


def test_tate_needs_an_acyclic_second_argument(capsys, tmp_path):
    half = tmp_path / "module.yaml"
    dump_complex(module_complex(load_complex(data("z4_module.yaml")).module(0)), half)
    code, _, err = run(capsys, "tate", data("z4.yaml"), half, "--route", "pinched")
    assert code == 2 and "not acyclic" in err


# -- pinch --------------------------------------------------------------------


def test_pinch_writes_a_loadable_complex(capsys, tmp_path):
    out = tmp_path / "p.yaml"
    code, doc = run_json(capsys, "pinch", data("square_zero_x.yaml"), data("square_zero_y.yaml"), "--out", out)
    assert code == 0
    assert doc["ranks"] == {"-4": 4, "-3": 3, "-2": 2, "-1": 1, "0": 1, "1": 2, "2": 3, "3": 4, "4": 5}
    c = load_complex(out)
    P = PinchedTensor(load_complex(data("square_zero_x.yaml")), load_complex(data("square_zero_y.yaml")))
    assert same_complex(c, P, -4, 4)
    assert homology(c, range(-3, 4), 6).is_zero()


def test_pinch_with_a_sandwich_is_the_plain_tensor_file(capsys, tmp_path):
    out = tmp_path / "p.yaml"
    code, _, _ = run(capsys, "pinch", data("square_zero_x.yaml"), data("square_zero_sandwich_y.yaml"), "--out", out, "--range", "-3..3")
    assert code == 0
    T = load_complex(data("square_zero_x.yaml"))
    N = load_complex(data("square_zero_sandwich_y.yaml")).module(0)
    plain = tmp_path / "plain.yaml"
    dump_complex(TensorComplex(T, module_complex(N)), plain, (-3, 3), "pinched tensor")
    assert out.read_text() == plain.read_text()


def test_pinched_hom_with_a_sandwich_is_the_plain_hom_file(capsys, tmp_path):
    T = load_complex(data("square_zero_x.yaml"))
    N = load_complex(data("square_zero_sandwich_y.yaml")).module(0)
    sw = tmp_path / "sw1.yaml"
    dump_complex(sandwich(N, 1), sw)
    out = tmp_path / "h.yaml"
    code, _, _ = run(capsys, "pinch", data("square_zero_x.yaml"), sw, "--kind", "hom", "--out", out, "--range", "-3..3")
    assert code == 0
    plain = tmp_path / "plain.yaml"
    dump_complex(HomComplex(T, module_complex(N)), plain, (-3, 3), "pinched hom")
    assert out.read_text() == plain.read_text()


# -- verify -------------------------------------------------------------------


def test_verify_a_suite(capsys):
    code, doc = run_json(capsys, "verify", "long-exact")
    assert code == 0
    assert doc["passed"] == 2 and doc["failed"] == 0


def test_verify_a_good_file(capsys):
    code, out, _ = run(capsys, "verify", "none", "--file", data("example_31_x.yaml"))
    assert code == 0
    assert out.startswith("PASS [file]")


def test_verify_a_corrupted_file_names_the_degree(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text((DATA / "example_31_x.yaml").read_text().replace("  2:\n  - [y]", "  2:\n  - [x]"))
    code, doc = run_json(capsys, "verify", "none", "--file", bad, "--range", "-2..2")
    assert code == 1
    failures = doc["claims"][0]["failures"]
    assert failures
    assert any("x^2" in f["message"] for f in failures)


def test_bad_input_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text((DATA / "z4.yaml").read_text().replace("int-mod", "int-mud"))
    code, _, err = run(capsys, "homology", bad)
    assert code == 2
    assert "bad.yaml:1:7:" in err
    code, _, err = run(capsys, "homology", data("z4.yaml"), "--range", "3..1")
    assert code == 2
    code, _, _ = run(capsys, "nope")
    assert code == 2


def test_window_edge_is_reported(capsys):
    code, _, err = run(capsys, "homology", data("square_zero_sandwich_y.yaml"), "--range", "-1..0")
    assert code == 0
    code, _, err = run(capsys, "homology", data("z4_module.yaml"), "--range", "-2..2")
    assert code == 0


def test_installed_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tatecx.cli", "fixtures"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "example_31_x.yaml" in proc.stdout
