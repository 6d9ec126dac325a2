from importlib import resources

import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from tatecx.complexes import ComplexError, WindowComplex, homology
from tatecx.constructions import TensorComplex
from tatecx.corpus import fixture_documents, fixture_example_31, fixture_z4
from tatecx.fileformat import FormatError, complex_to_doc, dumps_complex, load_complex, loads_complex, same_complex
from tatecx.matrix import Matrix
from tatecx.modules import Module
from tatecx.rings import graded_quotient, int_mod

DATA = resources.files("tatecx") / "data"
Z4_TEXT = (DATA / "z4.yaml").read_text()


def test_shipped_files_match_the_corpus():
    docs = fixture_documents()
    shipped = sorted(p.name for p in DATA.iterdir() if p.name.endswith(".yaml"))
    assert shipped == sorted(docs)
    for name, doc in docs.items():
        assert yaml.safe_load((DATA / name).read_text()) == doc, name


PLAIN = sorted(n for n, d in fixture_documents().items() if "construction" not in d)


@pytest.mark.parametrize("name", PLAIN)
def test_every_fixture_file_round_trips(name):
    c = load_complex(DATA / name)
    again = loads_complex(dumps_complex(c))
    assert same_complex(c, again, -4, 4)
    assert complex_to_doc(again) == complex_to_doc(c)


def test_construction_files_need_a_window_to_be_written():
    c = load_complex(DATA / "z4_tensor.yaml")
    with pytest.raises(ComplexError, match="window"):
        dumps_complex(c)
    again = loads_complex(dumps_complex(c, window=(-3, 3)))
    assert same_complex(c, again, -3, 3)
    # every degree of T (x) T is an infinite sum
    with pytest.raises(ComplexError):
        dumps_complex(load_complex(DATA / "example_31_TT.yaml"), window=(-1, 1))


def test_loaded_fixture_equals_the_built_one():
    T = fixture_example_31()["x"].T
    assert same_complex(load_complex(DATA / "example_31_x.yaml"), T, -6, 6)
    assert same_complex(load_complex(DATA / "z4.yaml"), fixture_z4()["2"].T, -6, 6)


def test_construction_files_resolve_relative_paths():
    c = load_complex(DATA / "z4_tensor.yaml")
    assert isinstance(c, TensorComplex)
    assert [homology(c, range(-3, 4)).get(i) for i in range(-3, 4)] == [(2,)] * 7


@pytest.mark.parametrize(
    "text, where, message",
    [
        (Z4_TEXT.replace("ring:", "rung:"), "1:1", "missing key 'ring'"),
        (Z4_TEXT.replace("int-mod", "int-mud"), "1:7", "unknown ring kind"),
        (Z4_TEXT.replace("window: [0, 1]", "window: [0, a]"), "3:13", "integer"),
        (Z4_TEXT.replace("  1:\n    twists: [0]\n", ""), "6:3", "no module in degree 1"),
        (Z4_TEXT.replace("- [2]", "- [2, 1]"), "12:5", "every row needs 1 entries"),
        (Z4_TEXT.replace("- [2]", "- [x]"), "12:6", "unknown factor"),
        (Z4_TEXT + "  junk: [", "13:10", "YAML syntax error"),
    ],
)
def test_errors_carry_line_and_column(text, where, message):
    with pytest.raises(FormatError) as info:
        loads_complex(text, "z4.yaml")
    assert f"z4.yaml:{where}:" in str(info.value)
    assert message in str(info.value)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(1, 3), st.integers(1, 3), st.data())
def test_random_two_term_complexes_round_trip_over_z_mod_n(n, r0, r1, data):
    R = int_mod(n)
    M = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=r1, max_size=r1), min_size=r0, max_size=r0))
    c = WindowComplex(R, 0, 1, [Module.free(R, [0] * r0), Module.free(R, [0] * r1)], {1: Matrix.from_rows(R, [0] * r0, [0] * r1, M)})
    again = loads_complex(dumps_complex(c))
    assert same_complex(c, again, -1, 2)
    assert homology(again, [0, 1]).cells == homology(c, [0, 1]).cells


CROSS = graded_quotient(3, {"x": 1, "y": 1}, ["x*y"], 6)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=2))
def test_random_graded_complexes_round_trip(coeffs):
    R = CROSS
    entries = [[f"{a}*x + {b}*y" for a, b in coeffs]]
    c = WindowComplex(R, 0, 1, [Module.free(R, [0]), Module.free(R, [-1] * len(coeffs))], {1: Matrix.from_rows(R, [0], [-1] * len(coeffs), entries)})
    again = loads_complex(dumps_complex(c))
    assert same_complex(c, again, -1, 2)
