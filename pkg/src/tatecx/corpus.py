"""Canonical fixtures: small rings with periodic complete resolutions.

* ``example_31``: ``F_p[x,y]/(xy)``, where R/(x) and R/(y) are resolved by
  the 2-periodic complexes alternating x and y.
* ``z4``: ``Z/4`` with the 1-periodic complex ``... -2-> Z/4 -2-> ...``
  resolving ``Z/2``.
* ``square_zero``: ``F_p[x,y]/(x^2,y^2)`` with the 1-periodic complexes
  ``.x`` and ``.y`` resolving R/(x) and R/(y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .complexes import ChainComplex, WindowComplex, module_complex, sandwich
from .fileformat import complex_to_doc
from .matrix import Matrix
from .modules import Module
from .rings import Ring, graded_quotient, int_mod
from .tate import CompleteResolution


@dataclass
class Fixture:
    name: str
    ring: Ring
    resolutions: dict[str, CompleteResolution]
    # complete injective resolutions, keyed like ``resolutions``; only on self-injective rings
    injective: dict[str, ChainComplex] = field(default_factory=dict)

    def __getitem__(self, key: str) -> CompleteResolution:
        return self.resolutions[key]


def periodic_complex(R: Ring, entries, twist_step: int, shift: int = 0, name: str | None = None) -> WindowComplex:
    """Rank-one complex with ``d_i = entries[(i - 1) mod len(entries)]``.

    Each entry must be homogeneous of degree ``twist_step``; ``shift`` moves
    every twist, so ``C_i = R(shift - i * twist_step)``.
    """
    p = len(entries)
    mods = {i: Module.free(R, [shift - i * twist_step]) for i in range(p + 1)}
    diffs = {
        i: Matrix.from_rows(R, [shift - (i - 1) * twist_step], [shift - i * twist_step], [[entries[i - 1]]])
        for i in range(1, p + 1)
    }
    return WindowComplex(R, 0, p, mods, diffs, period=(p, -p * twist_step), name=name)


def fixture_example_31(p: int = 2, degree_bound: int = 8) -> Fixture:
    R = graded_quotient(p, {"x": 1, "y": 1}, ["x*y"], degree_bound)
    Tx = periodic_complex(R, ["x", "y"], 1, name="T^x")
    Ty = periodic_complex(R, ["y", "x"], 1, name="T^y")
    res = {
        "x": CompleteResolution.from_totally_acyclic(Tx, "R/(x)"),
        "y": CompleteResolution.from_totally_acyclic(Ty, "R/(y)"),
    }
    return Fixture(f"example_31_p{p}", R, res)


def fixture_z4() -> Fixture:
    R = int_mod(4)
    T = periodic_complex(R, [2], 0, name="T")
    cr = CompleteResolution.from_totally_acyclic(T, "Z/2")
    return Fixture("z4", R, {"2": cr}, {"2": T})


def fixture_square_zero(p: int = 2, degree_bound: int = 8) -> Fixture:
    R = graded_quotient(p, {"x": 1, "y": 1}, ["x^2", "y^2"], degree_bound, self_injective=True)
    Tx = periodic_complex(R, ["x"], 1, name="T^x")
    Ty = periodic_complex(R, ["y"], 1, name="T^y")
    res = {
        "x": CompleteResolution.from_totally_acyclic(Tx, "R/(x)"),
        "y": CompleteResolution.from_totally_acyclic(Ty, "R/(y)"),
    }
    # Z_0 of the untwisted complex is (x) = (R/(x))(-1); shifting by one makes it R/(x)
    inj = {
        "x": periodic_complex(R, ["x"], 1, shift=1, name="U^x"),
        "y": periodic_complex(R, ["y"], 1, shift=1, name="U^y"),
    }
    return Fixture(f"square_zero_p{p}", R, res, inj)


def fixture_sandwich(n: Module, top_degree: int = 0) -> ChainComplex:
    """``0 -> N = N -> 0`` in degrees ``top_degree`` and ``top_degree - 1``."""
    if top_degree not in (0, 1):
        raise ValueError("top_degree must be 0 or 1")
    return sandwich(n, top_degree)


def all_fixtures(p: int = 2, degree_bound: int = 8) -> list[Fixture]:
    return [fixture_example_31(p, degree_bound), fixture_z4(), fixture_square_zero(p, degree_bound)]


def acyclic_partners(fx: Fixture) -> list[tuple[str, ChainComplex]]:
    """Acyclic second arguments for the pinched constructions on a fixture.

    Every complete resolution of the fixture plus sandwiches of the
    resolved modules with top degree 0 and 1.
    """
    out: list[tuple[str, ChainComplex]] = []
    for key, cr in fx.resolutions.items():
        out.append((f"T[{key}]", cr.T))
    for key, cr in fx.resolutions.items():
        out.append((f"sandwich0[{key}]", sandwich(cr.module, 0)))
        out.append((f"sandwich1[{key}]", sandwich(cr.module, 1)))
    return out


def fixture_documents() -> dict[str, dict]:
    """Every shipped fixture file, by file name, as a plain document."""
    docs: dict[str, dict] = {}
    for p, suffix in ((2, ""), (3, "_p3")):
        ex = fixture_example_31(p)
        sq = fixture_square_zero(p)
        for key in ("x", "y"):
            docs[f"example_31_{key}{suffix}.yaml"] = complex_to_doc(ex[key].T)
            docs[f"square_zero_{key}{suffix}.yaml"] = complex_to_doc(sq[key].T)
            docs[f"square_zero_U{key}{suffix}.yaml"] = complex_to_doc(sq.injective[key])
        docs[f"square_zero_sandwich_y{suffix}.yaml"] = complex_to_doc(sandwich(sq["y"].module, 0), name="sandwich R/(y)")
        docs[f"example_31_TT{suffix}.yaml"] = {
            "construction": "tensor",
            "left": f"example_31_x{suffix}.yaml",
            "right": f"example_31_x{suffix}.yaml",
        }
    z = fixture_z4()
    docs["z4.yaml"] = complex_to_doc(z["2"].T)
    docs["z4_module.yaml"] = complex_to_doc(module_complex(z["2"].module), name="Z/2")
    docs["z4_tensor.yaml"] = {"construction": "tensor", "left": "z4.yaml", "right": "z4_module.yaml"}
    return docs


def write_fixture_files(directory) -> list[str]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in sorted(fixture_documents().items()):
        (d / name).write_text(yaml.safe_dump(doc, sort_keys=False, default_flow_style=None))
        out.append(name)
    return out
