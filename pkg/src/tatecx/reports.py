"""Verification suites and machine-readable report documents.

A suite is a list of claims.  Each claim records what is asserted (a
short descriptive anchor), the fixture, the window and internal-degree
bound, the outcome and any located failures.  Documents are emitted as
JSON with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .complexes import Report, homology, module_complex
from .constructions import (
    HomComplex,
    PinchedHom,
    PinchedTensor,
    adjunction_iso,
    check_isomorphism,
    check_truncation_equalities,
    commutativity_iso,
    swap_iso,
)
from .corpus import Fixture, acyclic_partners, all_fixtures, fixture_example_31, fixture_square_zero, fixture_z4
from .matrix import Matrix
from .modules import Module
from .tate import (
    betti_convolution,
    check_balanced_ext,
    check_balanced_tor,
    commutativity_transport_check,
    compare_tables,
    connecting_is_iso,
    dimension_shift_check,
    hom_from_ring_check,
    hom_pinched_into_ring_check,
    les_second_argument,
    nu_sequence,
    periodicity_check,
    pinched_hom_from_acyclic_check,
    pinched_resolution,
    stable_betti,
    stable_vs_absolute_check,
    tate_homology,
    tensor_cycle_witness,
    theta_sequence,
    validate_complete_resolution,
    zeroth_cokernel,
    zeroth_cycles,
)

WINDOW = (-4, 4)
BOUND = 6


@dataclass
class Claim:
    suite: str
    claim: str
    anchor: str
    fixture: str
    ok: bool
    window: list[int]
    bound: int | None
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "suite": self.suite,
            "claim": self.claim,
            "anchor": self.anchor,
            "fixture": self.fixture,
            "ok": self.ok,
            "window": self.window,
            "bound": self.bound,
            "failures": [{"where": w, "message": m} for w, m in self.failures],
        }
        if self.details:
            d["details"] = self.details
        return d


def _claim(suite, claim, anchor, fixture, rep: Report, window, bound, details=None) -> Claim:
    return Claim(suite, claim, anchor, fixture, rep.ok, list(window), bound, list(rep.failures), details or {})


def _bound(fx: Fixture, bound: int) -> int | None:
    return bound if fx.ring.is_graded else None


def _inner(window) -> range:
    return range(window[0] + 1, window[1])


# -- suites -------------------------------------------------------------------


def suite_resolutions(window=(-6, 6), bound=8) -> list[Claim]:
    out = []
    for p in (2, 3):
        for fx in all_fixtures(p):
            if fx.name == "z4" and p == 3:
                continue
            for key, cr in fx.resolutions.items():
                rep = validate_complete_resolution(cr, window, _bound(fx, bound))
                if not rep.notes.get("minimal"):
                    rep.fail("T", "resolution is not minimal")
                out.append(_claim("resolutions", "valid minimal complete resolution", "complete resolution data", f"{fx.name}:{key}", rep, window, _bound(fx, bound)))
    return out


def suite_example_31(window=WINDOW, bound=BOUND, support=8) -> list[Claim]:
    fx = fixture_example_31()
    T = fx["x"].T
    out = []
    rep = Report()
    witnesses = {}
    for n in range(window[0], window[1] + 1):
        if n % 2:
            continue
        w = tensor_cycle_witness(T, T, n, 0, "x", support, bound)
        witnesses[str(n)] = w
        if not w["cycle"] or w["boundary"]:
            rep.fail(n, f"x*e[0,{n}] is not a non-boundary cycle")
    out.append(_claim("example-31", "T (x) T has homology in even degrees", "x*e[0,n] is a cycle and not a boundary", fx.name, rep, window, bound, {"witnesses": witnesses}))
    h = homology(PinchedTensor(T, T), range(window[0], window[1] + 1), bound)
    rep = Report()
    for n in h.degrees():
        if n % 2 == 0 and not h.is_zero_at(n):
            rep.fail(n, f"H_{n}(T [x] T) is nonzero")
    out.append(_claim("example-31", "T [x] T vanishes in even degrees", "pinched tensor computes Tate homology", fx.name, rep, window, bound, {"table": h.to_dict()}))
    return out


def _oracle(kind: str, window, bound) -> list[Claim]:
    out = []
    degrees = _inner(window)
    for p in (2, 3):
        for fx in all_fixtures(p):
            if fx.name == "z4" and p == 3:
                continue
            b = _bound(fx, bound)
            for key, cr in fx.resolutions.items():
                for aname, A in acyclic_partners(fx):
                    if kind == "tensor":
                        left = homology(PinchedTensor(cr.T, A), degrees, b)
                        right = tate_homology(cr, zeroth_cokernel(A), degrees, b)
                        rep = compare_tables(left, right, "H(T [x] A) vs H(T (x) C_0(A))")
                        anchor = "pinched tensor computes Tate homology"
                    else:
                        left = homology(PinchedHom(cr.T, A), degrees, b)
                        right = homology(HomComplex(cr.T, module_complex(zeroth_cycles(A))), degrees, b)
                        rep = compare_tables(left, right, "H(pHom(T, A)) vs H(Hom(T, Z_0(A)))")
                        anchor = "pinched Hom computes Tate cohomology"
                    out.append(_claim(f"oracle-{kind}", f"{kind} oracle with {aname}", anchor, f"{fx.name}:{key}", rep, window, b))
    return out


def suite_oracle_tensor(window=WINDOW, bound=BOUND) -> list[Claim]:
    return _oracle("tensor", window, bound)


def suite_oracle_hom(window=WINDOW, bound=BOUND) -> list[Claim]:
    return _oracle("hom", window, bound)


def suite_balancedness(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    degrees = _inner(window)
    pairs = [
        (fixture_example_31(), "x", "y"),
        (fixture_z4(), "2", "2"),
        (fixture_square_zero(), "x", "y"),
    ]
    for fx, a, b in pairs:
        bd = _bound(fx, bound)
        rep = check_balanced_tor(fx[a], fx[b], degrees, bd)
        out.append(_claim("balancedness", f"Ttor({a}, {b}) = Ttor({b}, {a})", "balancedness of Tate homology", fx.name, rep, window, bd, {"table": rep.notes["left"]}))
    for fx in (fixture_z4(), fixture_square_zero()):
        bd = _bound(fx, bound)
        for a, crM in fx.resolutions.items():
            for b, U in fx.injective.items():
                N = zeroth_cycles(U)
                rep = check_balanced_ext(crM, crM.module, U, N, degrees, bd)
                out.append(_claim("balancedness", f"Text({a}, {b}) by both routes", "balancedness of Tate cohomology", fx.name, rep, window, bd))
    return out


def suite_isomorphisms(window=(-3, 3), bound=BOUND) -> list[Claim]:
    out = []
    for p in (2, 3):
        for fx in (fixture_example_31(p), fixture_square_zero(p)) + ((fixture_z4(),) if p == 2 else ()):
            bd = _bound(fx, bound)
            R = fx.ring
            for a, c1 in fx.resolutions.items():
                for b, c2 in fx.resolutions.items():
                    tag = f"{fx.name}:{a},{b}"
                    f = commutativity_iso(c1.T, c2.T)
                    g = commutativity_iso(c2.T, c1.T)
                    rep = check_isomorphism(f, window[0], window[1], bd, inverse=g)
                    out.append(_claim("isomorphisms", "commutativity is a chain isomorphism, self-inverse", "varpi", tag, rep, window, bd))
                    m, _, _ = adjunction_iso(c1.T, c2.T, c2.module)
                    rep = check_isomorphism(m, window[0], window[1], bd)
                    out.append(_claim("isomorphisms", "pinched Hom-tensor adjunction is a chain isomorphism", "varrho", tag, rep, window, bd))
                    B = Module.free(R, [0, 1] if R.is_graded else [0, 0])
                    for bname, BB in (("free", B), ("presented", c1.module)):
                        m, _, _ = swap_iso(c1.T, BB, c2.T)
                        rep = check_isomorphism(m, window[0], window[1], bd)
                        out.append(_claim("isomorphisms", f"pinched swap is a chain isomorphism ({bname} B)", "vartheta", tag, rep, window, bd))
    return out


def suite_pinched_resolution(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    for p in (2, 3):
        fx = fixture_square_zero(p)
        lo, hi = window
        res = pinched_resolution(fx["x"], fx["y"], range(lo, hi + 1), bound)
        rep = res.report
        details = {}
        if res.resolution is not None:
            direct = stable_betti(res.resolution, lo, hi)
            conv = betti_convolution(stable_betti(fx["x"], lo - 1, hi), stable_betti(fx["y"], lo - 1, hi), lo, hi)
            formula = {i: i + 1 if i >= 0 else -i for i in range(lo, hi + 1)}
            if direct != conv or direct != formula:
                rep.fail("betti", f"ranks {direct}, convolution {conv}")
            if not rep.notes.get("minimal"):
                rep.fail("minimal", "T [x] T' is not minimal")
            v = validate_complete_resolution(res.resolution, (lo, hi), bound)
            for w, m in v.failures:
                rep.fail(w, m)
            details = {"betti": {str(i): direct[i] for i in sorted(direct)}}
        out.append(_claim("pinched-resolution", "T [x] T' resolves k with ranks i+1 and -i", "stable Betti numbers of a tensor product", fx.name, rep, window, bound, details))
        fx31 = fixture_example_31(p)
        res = pinched_resolution(fx31["x"], fx31["x"], range(lo, hi + 1), bound)
        rep = Report()
        if res.ok or "degree 1" not in (res.diagnostic or ""):
            rep.fail("diagnostic", f"expected a failure in degree 1, got {res.diagnostic!r}")
        out.append(_claim("pinched-resolution", "nonvanishing Ttor is diagnosed at degree 1", "vanishing hypothesis", fx31.name, rep, window, bound, {"diagnostic": res.diagnostic}))
    return out


def suite_four_term(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    ex, z, sq = fixture_example_31(), fixture_z4(), fixture_square_zero()
    cases = [
        (ex, "x", ex["x"].module, "R/(x), R/(x)"),
        (z, "2", z["2"].module, "Z/2, Z/2"),
        (sq, "x", sq["y"].module, "R/(x), R/(y)"),
    ]
    for fx, key, N, label in cases:
        bd = _bound(fx, bound)
        for name, fn, anchor in (("theta", theta_sequence, "theta four-term sequence"), ("nu", nu_sequence, "nu four-term sequence")):
            rep = fn(fx[key], N, bd)
            out.append(_claim("four-term", f"{name} sequence exact for {label}", anchor, fx.name, rep, window, bd))
    return out


def suite_long_exact(window=(-3, 3), bound=4) -> list[Claim]:
    out = []
    z = fixture_z4()
    R = z.ring
    Z2 = z["2"].module
    f = Matrix.from_rows(R, [0], [0], [[2]])
    g = Matrix.from_rows(R, [0], [0], [[1]])
    rep = les_second_argument(z["2"], Z2, Module.free(R, [0]), Z2, f, g, range(window[0], window[1] + 1))
    if not connecting_is_iso(rep):
        rep.fail("connecting", "connecting maps are not isomorphisms")
    out.append(_claim("long-exact", "0 -> Z/2 -> Z/4 -> Z/2 -> 0 gives an exact sequence with iso connecting maps", "long exact sequence in the second argument", z.name, rep, window, None, {"connecting": rep.notes["connecting"]}))
    ex = fixture_example_31()
    Rg = ex.ring
    ideal = Module.presented(Matrix.from_rows(Rg, [-1], [-2], [["y"]]))
    f = Matrix.from_rows(Rg, [0], [-1], [["x"]])
    rep = les_second_argument(ex["x"], ideal, Module.free(Rg, [0]), ex["x"].module, f, Matrix.identity(Rg, [0]), range(window[0], window[1] + 1), bound)
    out.append(_claim("long-exact", "0 -> (x) -> R -> R/(x) -> 0 gives an exact sequence", "long exact sequence in the second argument", ex.name, rep, window, bound))
    return out


def suite_truncations(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    for p in (2, 3):
        for fx in all_fixtures(p):
            if fx.name == "z4" and p == 3:
                continue
            bd = _bound(fx, bound)
            for key, cr in fx.resolutions.items():
                for aname, A in acyclic_partners(fx):
                    for kind, C in (("tensor", PinchedTensor(cr.T, A)), ("hom", PinchedHom(cr.T, A))):
                        rep = check_truncation_equalities(C, window[0], window[1], bd)
                        out.append(_claim("truncations", f"pinched {kind} with {aname}: d^2 = 0 and truncations", "truncation equalities", f"{fx.name}:{key}", rep, window, bd))
    return out


def suite_stable_vs_absolute(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    z = fixture_z4()
    rep = stable_vs_absolute_check(z["2"], z["2"].module, range(1, window[1] + 1))
    out.append(_claim("stable-vs-absolute", "Ttor_i = Tor_i for i >= 1", "Tate and absolute homology agree in high degrees", z.name, rep, window, None, {"compared": rep.notes.get("compared_degrees")}))
    ex = fixture_example_31()
    rep = stable_vs_absolute_check(ex["x"], ex["x"].module, range(1, window[1] + 1), bound)
    out.append(_claim("stable-vs-absolute", "Ttor_i = Tor_i for i >= 1", "Tate and absolute homology agree in high degrees", ex.name, rep, window, bound))
    return out


def suite_periodicity(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    for fx in all_fixtures(2):
        bd = _bound(fx, bound)
        for key, cr in fx.resolutions.items():
            for nkey, crN in fx.resolutions.items():
                rep = periodicity_check(cr, crN.module, _inner(window), bd)
                out.append(_claim("periodicity", f"Ttor(-, {nkey}) is periodic", "periodic resolutions give periodic tables", f"{fx.name}:{key}", rep, window, bd))
            for m in (0, 1, 2):
                rep = dimension_shift_check(cr, cr.module, m, range(window[0] + 2, window[1] - 1), bd)
                out.append(_claim("periodicity", f"dimension shift by {m}", "dimension shifting", f"{fx.name}:{key}", rep, window, bd))
    return out


def suite_instances(window=WINDOW, bound=BOUND) -> list[Claim]:
    out = []
    degrees = _inner(window)
    for fx in all_fixtures(2) + [fixture_example_31(3), fixture_square_zero(3)]:
        bd = _bound(fx, bound)
        for a, c1 in fx.resolutions.items():
            for b, c2 in fx.resolutions.items():
                tag = f"{fx.name}:{a},{b}"
                rep = hom_pinched_into_ring_check(c1, c2, degrees, bd)
                out.append(_claim("instances", "H(Hom(T [x] T', R)) = Text(M, N*)", "Hom of a pinched tensor product into a free module", tag, rep, window, bd))
                rep = commutativity_transport_check(c1, c2, degrees, bd)
                out.append(_claim("instances", "H(T [x] T') = H(T' [x] T)", "commutativity on homology", tag, rep, window, bd))
        for a, c1 in fx.resolutions.items():
            for b, U in fx.injective.items():
                tag = f"{fx.name}:{a},{b}"
                rep = pinched_hom_from_acyclic_check(c1.T, U, degrees, bd)
                out.append(_claim("instances", "H(pHom(A, U)) = H(Hom(C_0(A), U))", "pinched Hom out of an acyclic complex", tag, rep, window, bd))
                rep = hom_from_ring_check(c1, U, zeroth_cycles(U), degrees, bd)
                out.append(_claim("instances", "H(Hom(R, pHom(T, U))) = Text(M, N)", "Hom from an injective module into a pinched Hom", tag, rep, window, bd))
    return out


SUITES: dict[str, Callable[[], list[Claim]]] = {
    "resolutions": suite_resolutions,
    "example-31": suite_example_31,
    "oracle-tensor": suite_oracle_tensor,
    "oracle-hom": suite_oracle_hom,
    "balancedness": suite_balancedness,
    "isomorphisms": suite_isomorphisms,
    "pinched-resolution": suite_pinched_resolution,
    "four-term": suite_four_term,
    "long-exact": suite_long_exact,
    "truncations": suite_truncations,
    "stable-vs-absolute": suite_stable_vs_absolute,
    "periodicity": suite_periodicity,
    "instances": suite_instances,
}


def run_suites(names: Iterable[str]) -> list[Claim]:
    claims: list[Claim] = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        claims.extend(SUITES[name]())
    return sorted(claims, key=lambda c: (c.suite, c.fixture, c.claim))


def claims_document(claims: list[Claim]) -> dict:
    return {
        "ok": all(c.ok for c in claims),
        "passed": sum(c.ok for c in claims),
        "failed": sum(not c.ok for c in claims),
        "claims": [c.to_dict() for c in claims],
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=str)
