"""Complete resolutions, Tate homology and cohomology, and the checks built on them.

A complete resolution ``T -> P -> M`` is carried as data: a totally acyclic
complex T of free modules, a free resolution P, a chain map tau and the
degree g from which tau is an isomorphism.  Every check here is a finite
verification on a window of homological degrees and a bound on internal
degrees; both are recorded in the returned reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complexes import (
    ChainComplex,
    ChainMap,
    ComplexError,
    _descriptor,
    HomologyTable,
    Report,
    WindowComplex,
    build_free_resolution,
    cycles_and_boundaries,
    hard_trunc_above,
    hard_trunc_below,
    homology,
    internal_range,
    module_complex,
    shift,
    soft_trunc_above,
    soft_trunc_below,
    verify_chain_map,
    verify_complex,
)
from .constructions import HomComplex, PinchedHom, PinchedTensor, TensorComplex, _as_complex
from .linalg import Lattice, image, image_of_columns, intersect, preimage, quotient_invariants
from .matrix import Matrix
from .modules import Module, maps_into
from .rings import Ring, RingError


class TateError(ValueError):
    """A hypothesis of a Tate computation does not hold."""


@dataclass
class CompleteResolution:
    T: ChainComplex
    P: ChainComplex
    tau: ChainMap
    g: int
    module: Module
    name: str = ""

    @property
    def ring(self) -> Ring:
        return self.T.ring

    @classmethod
    def from_totally_acyclic(cls, T: ChainComplex, name: str = "") -> "CompleteResolution":
        """``T -> T>=0 -> C_0(T)`` with tau the identity in degrees ``>= 0``."""
        P = hard_trunc_below(T, 0)
        tau = ChainMap(T, P, lambda i: T.module(i).identity() if i >= 0 else Matrix.zero(T.ring, (), T.module(i).twists))
        M = Module.presented(T.diff(1))
        return cls(T, P, tau, 0, M, name)

    @classmethod
    def of_free(cls, F: Module, name: str = "") -> "CompleteResolution":
        """The zero complex resolving a free module of finite projective dimension."""
        if not F.is_free:
            raise TateError("of_free needs a free module")
        R = F.ring
        T = WindowComplex(R, 0, 0, {0: Module.zero(R)}, {}, name="zero")
        P = WindowComplex(R, 0, 0, {0: F}, {})
        tau = ChainMap(T, P, lambda i: Matrix.zero(R, P.module(i).twists, ()))
        M = Module(R, F.twists, rel=Matrix.zero(R, F.twists, ()))
        return cls(T, P, tau, 1, M, name)


def _cohomology(c: ChainComplex, degrees: Iterable[int], bound: int | None) -> HomologyTable:
    """Table keyed by i holding ``H_{-i}(c)``."""
    degrees = list(degrees)
    h = homology(c, [-i for i in degrees], bound)
    out = HomologyTable(h.q, h.graded, bound=h.bound)
    for i in degrees:
        out.cells[i] = h.cells[-i]
        out.ranges[i] = h.ranges[-i]
    return out


def _is_minimal(c: ChainComplex, lo: int, hi: int) -> bool:
    R = c.ring
    for i in range(lo + 1, hi + 1):
        for v in c.diff(i).entries.values():
            if not R.in_maximal_ideal(v):
                return False
    return True


def _slice_bijective(m: Matrix, a: Module, b: Module, d: int) -> bool:
    Sa, Ra = a.lattices(d)
    Sb, Rb = b.lattices(d)
    M = m.slice(d)
    return len(M) == Sa.m and image(M, Sa, Sb.m) == Sb and image(M, Ra, Rb.m) == Rb


def validate_complete_resolution(cr: CompleteResolution, window=(-4, 4), bound: int | None = None) -> Report:
    """Check the data of a complete resolution on a window.

    T must be a complex, acyclic, with ``Hom(T, R)`` acyclic; tau a chain
    map that is bijective from degree g on; and ``C_0(P)`` must equal the
    module.  Minimality of T is reported as a flag.
    """
    lo, hi = window
    R = cr.ring
    rep = verify_complex(cr.T, lo, hi, bound)
    rep.notes.update({"window": [lo, hi], "bound": bound if bound is not None else R.bound, "g": cr.g})
    if not rep.ok:
        return rep
    inner = range(lo + 1, hi)
    try:
        h = homology(cr.T, inner, bound)
        for i in h.degrees():
            if not h.is_zero_at(i):
                rep.fail(i, f"T is not acyclic: H_{i} = {h.at(i)}")
        dual = HomComplex(cr.T, module_complex(Module.free(R, (0,))))
        hd = homology(dual, inner, bound)
        for i in hd.degrees():
            if not hd.is_zero_at(i):
                rep.fail(i, f"Hom(T, R) is not acyclic: H_{i} = {hd.at(i)}")
    except ComplexError as e:
        rep.fail("T", str(e))
    vm = verify_chain_map(cr.tau, max(lo, cr.g), hi, bound)
    for w, m in vm.failures:
        rep.fail(w, f"tau: {m}")
    for i in range(max(lo, cr.g), hi + 1):
        m = cr.tau(i)
        a, b = cr.T.module(i), cr.P.module(i)
        rng = internal_range(cr.T, [i], bound)
        ok = m.shape[0] == m.shape[1]
        if ok and rng is not None:
            ok = all(_slice_bijective(m, a, b, d) for d in range(rng[0], rng[1] + 1))
        if not ok:
            rep.fail(i, f"tau_{i} is not an isomorphism")
    C0 = soft_trunc_above(cr.P, 0).module(0)
    M = cr.module
    if C0.twists != M.twists:
        rep.fail(0, "C_0(P) and the module have different covers")
    else:
        rng = internal_range(module_complex(M), [0], bound)
        if rng is not None:
            for d in range(rng[0], rng[1] + 1):
                if C0.lattices(d) != M.lattices(d):
                    rep.fail(0, f"C_0(P) differs from the module in internal degree {d}")
                    break
    rep.notes["minimal"] = _is_minimal(cr.T, lo, hi)
    return rep


# -- Tate homology and cohomology ------------------------------------------


def tate_homology(cr: CompleteResolution, n, degrees: Iterable[int], bound: int | None = None) -> HomologyTable:
    """``Ttor_i(M, N) = H_i(T (x) N)``."""
    return homology(TensorComplex(cr.T, _as_complex(n)), degrees, bound)


def _require_acyclic(A: ChainComplex, degrees: Sequence[int], bound: int | None) -> None:
    lo, hi = min(degrees) - 1, max(degrees) + 1
    h = homology(A, range(lo, hi + 1), bound)
    if not h.is_zero():
        bad = next(i for i in h.degrees() if not h.is_zero_at(i))
        raise TateError(f"the second argument is not acyclic (degree {bad})")


def tate_homology_pinched(cr: CompleteResolution, a: ChainComplex, degrees: Iterable[int], bound: int | None = None) -> HomologyTable:
    """``H_i(T [x] A)``, which computes ``Ttor_i(M, C_0(A))`` for acyclic A."""
    degrees = list(degrees)
    _require_acyclic(a, degrees, bound)
    return homology(PinchedTensor(cr.T, a), degrees, bound)


def tate_cohomology(cr: CompleteResolution, n, degrees: Iterable[int], bound: int | None = None) -> HomologyTable:
    """``Text^i(M, N) = H_{-i}(Hom(T, N))``."""
    return _cohomology(HomComplex(cr.T, _as_complex(n)), degrees, bound)


def tate_cohomology_pinched(cr: CompleteResolution, a: ChainComplex, degrees: Iterable[int], bound: int | None = None) -> HomologyTable:
    """``H_{-i}(pHom(T, A))``, which computes ``Text^i(M, Z_0(A))`` for acyclic A."""
    degrees = list(degrees)
    _require_acyclic(a, [-i for i in degrees], bound)
    return _cohomology(PinchedHom(cr.T, a), degrees, bound)


def tate_cohomology_injective(m: Module, u: ChainComplex, degrees: Iterable[int], bound: int | None = None) -> HomologyTable:
    """``H_{-i}(Hom(M, U))`` for a complete injective resolution U.

    Only self-injective backends are supported, where U is a totally
    acyclic complex of free modules.
    """
    if not m.ring.self_injective:
        raise RingError(f"{m.ring} is not flagged self-injective")
    return _cohomology(HomComplex(module_complex(m), u), degrees, bound)


def zeroth_cycles(a: ChainComplex) -> Module:
    return soft_trunc_below(a, 0).module(0)


def zeroth_cokernel(a: ChainComplex) -> Module:
    return soft_trunc_above(a, 0).module(0)


# -- comparison reports -----------------------------------------------------


def _table_report(rep: Report, left: HomologyTable, right: HomologyTable, label: str, offset: int = 0, twist: int = 0) -> None:
    n = left.overlap(right, offset, twist)
    rep.notes["cells_compared"] = rep.notes.get("cells_compared", 0) + n
    if n == 0:
        rep.fail("tables", f"{label}: no cell is known in both tables")
    for i, d, x, y in left.compare(right, offset, twist):
        rep.fail([i, d], f"{label}: {x} != {y}")


def compare_tables(left: HomologyTable, right: HomologyTable, label: str = "tables", offset: int = 0, twist: int = 0) -> Report:
    rep = Report()
    _table_report(rep, left, right, label, offset, twist)
    rep.notes["left"] = left.to_dict()
    rep.notes["right"] = right.to_dict()
    return rep


def check_balanced_tor(crM: CompleteResolution, crN: CompleteResolution, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``Ttor_i(M, N)`` against ``Ttor_i(N, M)``."""
    degrees = list(degrees)
    a = tate_homology(crM, crN.module, degrees, bound)
    b = tate_homology(crN, crM.module, degrees, bound)
    return compare_tables(a, b, "Ttor(M,N) vs Ttor(N,M)")


def check_balanced_ext(crM: CompleteResolution, m: Module, u: ChainComplex, n: Module, degrees: Iterable[int], bound: int | None = None) -> Report:
    """Projective route ``Text^i(M, N)`` against the injective route via U."""
    degrees = list(degrees)
    a = tate_cohomology(crM, n, degrees, bound)
    b = tate_cohomology_injective(m, u, degrees, bound)
    rep = compare_tables(a, b, "projective vs injective route")
    z = zeroth_cycles(u)
    r1 = internal_range(module_complex(n), [0], bound)
    r2 = internal_range(module_complex(z), [0], bound)
    if r1 is not None and r2 is not None:
        # U must resolve N: compare Z_0(U) and N slice by slice
        for d in range(max(r1[0], r2[0]), min(r1[1], r2[1]) + 1):
            if z.invariants(d) != n.invariants(d):
                rep.fail(["Z0", d], "Z_0(U) does not match N")
                break
    return rep


def dimension_shift_check(cr: CompleteResolution, n, m_shift: int, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``Ttor_i(M, N)`` against ``Ttor_{i-m}(C_m(T), N)`` computed from ``S^{-m} T``."""
    degrees = list(degrees)
    T2 = shift(cr.T, -m_shift)
    shifted = CompleteResolution(T2, hard_trunc_below(T2, 0), ChainMap.identity(T2), 0, zeroth_cokernel(T2))
    rep = Report()
    Cm = soft_trunc_above(cr.T, m_shift).module(m_shift)
    if Cm != shifted.module:
        rep.fail("C_m", "C_0 of the shifted complex is not C_m(T)")
    a = tate_homology(cr, n, degrees, bound)
    b = tate_homology(shifted, n, [i - m_shift for i in degrees], bound)
    _table_report(rep, a, b, "Ttor_i(M,N) vs Ttor_{i-m}(C_m,N)", offset=-m_shift)
    rep.notes.update({"shift": m_shift, "original": a.to_dict(), "shifted": b.to_dict()})
    return rep


def periodicity_check(cr: CompleteResolution, n, degrees: Iterable[int], bound: int | None = None) -> Report:
    """Tate homology repeats with the period of T, up to the internal twist."""
    rep = Report()
    if cr.T.period is None:
        rep.notes["periodic"] = False
        return rep
    p, t = cr.T.period
    degrees = list(degrees)
    a = tate_homology(cr, n, degrees, bound)
    # C_{i+p} = C_i(t), so H_{i+p} in internal degree d - t is H_i in degree d
    for i, d, x, y in a.compare(a, offset=p, twist=-t):
        rep.fail([i, d], f"H_{i} at {d} is {x} but H_{i + p} at {d - t} is {y}")
    return rep


# -- long exact sequence in the second argument -----------------------------


def _direct_sum_lattice(a: Lattice, b: Lattice) -> Lattice:
    L = Lattice(a.m + b.m, a.q)
    for r in a.rows:
        L.add(list(r) + [0] * b.m)
    for r in b.rows:
        L.add([0] * a.m + list(r))
    return L


def _project(L: Lattice, start: int, length: int) -> Lattice:
    out = Lattice(length, L.q)
    for r in L.rows:
        out.add(r[start : start + length])
    return out


def les_second_argument(
    cr: CompleteResolution,
    n1: Module,
    n: Module,
    n2: Module,
    f: Matrix,
    g: Matrix,
    degrees: Iterable[int],
    bound: int | None = None,
) -> Report:
    """Exactness of the long sequence of ``Ttor(M, -)`` for ``0 -> N' -> N -> N'' -> 0``.

    The short sequence is checked first.  Then, with ``X = T (x) -`` and
    per internal degree, exactness is verified at ``Ttor_i(M, N)``,
    ``Ttor_i(M, N'')`` and ``Ttor_{i-1}(M, N')`` as lattice equalities,
    the connecting map being the relation ``{(x, x') : d x = F x'}``.
    """
    degrees = list(degrees)
    rep = Report()
    rep.notes["window"] = [min(degrees), max(degrees)]
    rng0 = internal_range(module_complex(n), [0], bound)
    if rng0 is not None:
        for d in range(rng0[0], rng0[1] + 1):
            S1, R1 = n1.lattices(d)
            S, Rl = n.lattices(d)
            S2, R2 = n2.lattices(d)
            F, G = f.slice(d), g.slice(d)
            if not maps_into(f, n1, n, d) or not maps_into(g, n, n2, d):
                rep.fail(["short", d], "maps are not well defined")
                continue
            if preimage(F, Rl, S1) != R1:
                rep.fail(["short", d], "N' -> N is not injective")
            if image(G, S, S2.m) + R2 != S2:
                rep.fail(["short", d], "N -> N'' is not surjective")
            if preimage(G, R2, S) != image(F, S1, S.m) + Rl:
                rep.fail(["short", d], "not exact in the middle")
    if not rep.ok:
        raise TateError("the short sequence is not exact: " + "; ".join(m for _, m in rep.failures))
    T = cr.T
    X1 = TensorComplex(T, module_complex(n1))
    X = TensorComplex(T, module_complex(n))
    X2 = TensorComplex(T, module_complex(n2))
    Fm = lambda i: T.module(i).identity().kron(f)  # noqa: E731
    Gm = lambda i: T.module(i).identity().kron(g)  # noqa: E731
    delta_classes = {}
    for i in degrees:
        rng = internal_range(X, [i - 1, i], bound)
        if rng is None:
            continue
        for d in range(rng[0], rng[1] + 1):
            Z1, B1 = cycles_and_boundaries(X1, i, d)
            Z, B = cycles_and_boundaries(X, i, d)
            Z2, B2 = cycles_and_boundaries(X2, i, d)
            Z1m, B1m = cycles_and_boundaries(X1, i - 1, d)
            F_i, G_i, F_im = Fm(i).slice(d), Gm(i).slice(d), Fm(i - 1).slice(d)
            # exact at Ttor_i(M, N)
            ker_g = preimage(G_i, B2, Z)
            if ker_g != image(F_i, Z1, Z.m) + B:
                rep.fail([i, d], f"not exact at Ttor_{i}(M, N)")
            # connecting relation L = {(x, x') : x in S_i(X), x' in S_{i-1}(X'), d x - F x' in Rel_{i-1}(X)}
            S_i, _ = X.module(i).lattices(d)
            S1m, _ = X1.module(i - 1).lattices(d)
            _, Rel_m = X.module(i - 1).lattices(d)
            D = X.diff(i).slice(d)
            a, b = S_i.m, S1m.m
            phi = [list(D[r]) + [-x for x in F_im[r]] for r in range(len(D))] if D else []
            L = preimage(phi, Rel_m, _direct_sum_lattice(S_i, S1m))
            # exact at Ttor_i(M, N''): ker delta = im G_*
            L_b = intersect(L, _direct_sum_lattice(Lattice.whole(a, S_i.q), B1m))
            lhs = image(G_i, _project(L_b, 0, a), Z2.m) + B2
            rhs = image(G_i, Z, Z2.m) + B2
            if lhs != rhs:
                rep.fail([i, d], f"not exact at Ttor_{i}(M, N'')")
            # exact at Ttor_{i-1}(M, N'): im delta = ker F_*
            im_delta = _project(L, a, b) + B1m
            ker_f = preimage(F_im, cycles_and_boundaries(X, i - 1, d)[1], Z1m)
            if im_delta != ker_f:
                rep.fail([i, d], f"not exact at Ttor_{i - 1}(M, N')")
            # record the connecting map's kernel and cokernel sizes
            ker_delta = quotient_invariants(lhs, B2) if lhs.contains_lattice(B2) else None
            coker_delta = quotient_invariants(Z1m, im_delta) if Z1m.contains_lattice(im_delta) else None
            delta_classes[f"{i},{d}"] = {
                "source": list(quotient_invariants(Z2, B2)),
                "target": list(quotient_invariants(Z1m, B1m)),
                "kernel": list(ker_delta) if ker_delta is not None else None,
                "cokernel": list(coker_delta) if coker_delta is not None else None,
            }
    rep.notes["connecting"] = delta_classes
    return rep


def connecting_is_iso(rep: Report) -> bool:
    return all(v["kernel"] == [] and v["cokernel"] == [] for v in rep.notes.get("connecting", {}).values())


# -- vanishing --------------------------------------------------------------


def is_free_module(M: Module, bound: int | None = None) -> bool:
    """Decide freeness: the minimal resolution has no first syzygy generators."""
    P, _ = build_free_resolution(M, 1, bound)
    return P.module(1).rank == 0


def vanishing_check(cr: CompleteResolution, coefficients: Sequence[Module], degrees: Iterable[int], bound: int | None = None) -> Report:
    """Vanishing of ``Ttor_*(M, -)`` on the given coefficient modules.

    A zero T forces every table to vanish.  Otherwise the first
    nonvanishing cell is reported as a witness, and for every degree i
    where all tables vanish the freeness of ``C_{i-1}(T)`` is recorded.
    """
    degrees = list(degrees)
    rep = Report()
    T_zero = all(cr.T.module(i).rank == 0 for i in range(min(degrees) - 1, max(degrees) + 2))
    rep.notes["finite_projective_dimension_witness"] = T_zero
    vanishing = {i: True for i in degrees}
    witness = None
    for k, N in enumerate(coefficients):
        h = tate_homology(cr, N, degrees, bound)
        for i in _scan_order(degrees):
            if not h.is_zero_at(i):
                vanishing[i] = False
                if witness is None:
                    witness = {"degree": i, "coefficient": k, "value": h.to_dict()["degrees"][str(i)]}
                if T_zero:
                    rep.fail(i, "Ttor is nonzero although T = 0")
    rep.notes["nonvanishing_witness"] = witness
    flat = {}
    for i in degrees:
        if vanishing[i] and not T_zero:
            C = soft_trunc_above(cr.T, i - 1).module(i - 1)
            flat[str(i)] = is_free_module(C, bound)
    # vanishing on finitely many coefficients need not force freeness, so this is reported, not asserted
    rep.notes["cokernel_free"] = flat
    return rep


# -- tensor products of complete resolutions ---------------------------------


def _scan_order(degrees: Sequence[int]) -> list[int]:
    """0, 1, -1, 2, -2, ... restricted to the given degrees."""
    ds = set(degrees)
    out = []
    k = 0
    while len(out) < len(ds):
        for c in ((0,) if k == 0 else (k, -k)):
            if c in ds:
                out.append(c)
        k += 1
    return out


@dataclass
class PinchOutcome:
    ok: bool
    resolution: CompleteResolution | None
    report: Report
    diagnostic: str | None = None


def pinched_resolution(crM: CompleteResolution, crN: CompleteResolution, degrees: Iterable[int], bound: int | None = None) -> PinchOutcome:
    """``T [x] T'`` as a complete resolution of ``M (x) N`` when Ttor vanishes.

    Checks, in order: vanishing of ``Ttor_i(M, N)`` (scanning 0, 1, -1, ...),
    the complex ``T [x] T'``, its acyclicity and that of
    ``Hom(T [x] T', R)``, and ``C_0(T [x] T') = M (x) N``.
    """
    degrees = list(degrees)
    rep = Report()
    R = crM.ring
    rep.notes["window"] = [min(degrees), max(degrees)]
    h = tate_homology(crM, crN.module, degrees, bound)
    for i in _scan_order(degrees):
        if not h.is_zero_at(i):
            rep.fail(i, f"Ttor_{i}(M, N) = {h.at(i)} is nonzero")
            return PinchOutcome(False, None, rep, f"Tate homology does not vanish in degree {i}")
    P = PinchedTensor(crM.T, crN.T)
    lo, hi = min(degrees), max(degrees)
    vc = verify_complex(P, lo - 1, hi + 1, bound)
    if not vc.ok:
        for w, m in vc.failures:
            rep.fail(w, m)
        return PinchOutcome(False, None, rep, "pinched complex is not a complex")
    hp = homology(P, degrees, bound)
    for i in degrees:
        if not hp.is_zero_at(i):
            rep.fail(i, "T [x] T' is not acyclic")
    hd = homology(HomComplex(P, module_complex(Module.free(R, (0,)))), degrees, bound)
    for i in degrees:
        if not hd.is_zero_at(i):
            rep.fail(i, "Hom(T [x] T', R) is not acyclic")
    if not rep.ok:
        return PinchOutcome(False, None, rep, "not totally acyclic on the window (ring may not be Gorenstein)")
    MN = Module.tensor(crM.module, crN.module)
    C0 = zeroth_cokernel(P)
    rng = internal_range(module_complex(MN), [0], bound)
    if rng is not None:
        for d in range(rng[0], rng[1] + 1):
            if C0.twists != MN.twists or C0.lattices(d) != MN.lattices(d):
                rep.fail(["C0", d], "C_0(T [x] T') differs from M (x) N")
                break
    minimal = _is_minimal(crM.T, lo - 1, hi + 1) and _is_minimal(crN.T, lo - 1, hi + 1)
    rep.notes["minimal"] = minimal
    rep.notes["ranks"] = {str(i): P.module(i).rank for i in degrees}
    res = CompleteResolution(P, hard_trunc_below(P, 0), ChainMap.identity(P), 0, MN, "pinched")
    res.tau = ChainMap(P, res.P, lambda i: P.module(i).identity() if i >= 0 else Matrix.zero(R, (), P.module(i).twists))
    return PinchOutcome(rep.ok, res, rep)


def stable_betti(cr: CompleteResolution, lo: int, hi: int) -> dict[int, int]:
    return {i: cr.T.module(i).rank for i in range(lo, hi + 1)}


def betti_convolution(a: dict[int, int], b: dict[int, int], lo: int, hi: int) -> dict[int, int]:
    """Ranks of ``T [x] T'`` from the ranks of T and T'.

    ``sum_{0<=j<=i} a_j b_{i-j}`` for ``i >= 0`` and
    ``sum_{i<=j<0} a_j b_{i-j-1}`` for ``i < 0``.
    """
    out = {}
    for i in range(lo, hi + 1):
        if i >= 0:
            out[i] = sum(a.get(j, 0) * b.get(i - j, 0) for j in range(0, i + 1))
        else:
            out[i] = sum(a.get(j, 0) * b.get(i - j - 1, 0) for j in range(i, 0))
    return out


# -- the four-term sequences -------------------------------------------------


def _dual_presented(cr: CompleteResolution) -> Module:
    """``M*`` as the cokernel of ``d_{-1}*`` on ``T_{-1}*``."""
    return Module.presented(cr.T.diff(-1).dual())


def _four_term(rep: Report, phi: Matrix, src: Module, tgt: Module, X: ChainComplex, top: int, bound, h_top, h_bot, labels) -> None:
    """Exactness of ``0 -> H_top(X) -> src -phi-> tgt -> H_{top-1}(X) -> 0``.

    Checks, per internal degree, that ``ker phi`` is the cycle lattice of X
    in degree ``top`` with src's relations its boundaries, that tgt is the
    cycle lattice in degree ``top - 1`` and that ``im phi`` plus tgt's
    relations is the boundary lattice there; then compares the invariants
    of ``ker phi`` and ``coker phi`` with the independently computed tables.
    """
    rng = internal_range(X, [top, top - 1], bound)
    if rng is None:
        return
    q = src.ring.q
    kernels, cokernels = {}, {}
    for d in range(rng[0], rng[1] + 1):
        if not maps_into(phi, src, tgt, d):
            rep.fail(d, f"{labels[0]} is not well defined")
            continue
        S, Rs = src.lattices(d)
        St, Rt = tgt.lattices(d)
        P = phi.slice(d)
        ker = preimage(P, Rt, S)
        im = image(P, S, St.m) + Rt
        Z0, B0 = cycles_and_boundaries(X, top, d)
        Z1, B1 = cycles_and_boundaries(X, top - 1, d)
        if ker != Z0 or Rs != B0:
            rep.fail(d, f"kernel of {labels[0]} is not {labels[1]}")
        if St != Z1 or im != B1:
            rep.fail(d, f"cokernel of {labels[0]} is not {labels[2]}")
        k_inv = quotient_invariants(ker, Rs)
        c_inv = quotient_invariants(St, im)
        kernels[d], cokernels[d] = k_inv, c_inv
        if _descriptor(k_inv, q) != h_top.get(top, d):
            rep.fail(d, f"kernel class differs from {labels[1]}")
        if _descriptor(c_inv, q) != h_bot.get(top - 1, d):
            rep.fail(d, f"cokernel class differs from {labels[2]}")
    rep.notes["kernel"] = {str(d): list(v) for d, v in kernels.items()}
    rep.notes["cokernel"] = {str(d): list(v) for d, v in cokernels.items()}


def theta_sequence(crM: CompleteResolution, n: Module, bound: int | None = None) -> Report:
    """``0 -> Ttor_0(M,N) -> M (x) N -> Hom(M*, N) -> Ttor_{-1}(M,N) -> 0``.

    ``theta(x (x) y) = (f -> f(x) y)``; with ``M* = coker d_{-1}*`` the map
    is ``d_0 (x) 1`` from ``T_0 (x) N`` to ``T_{-1} (x) N``.
    """
    if crM.g != 0:
        raise TateError("theta needs a totally reflexive module (g = 0)")
    rep = Report()
    src = Module.tensor(crM.module, n)
    tgt = Module.hom(_dual_presented(crM), n)
    theta = crM.T.diff(0).kron(n.identity())
    X = TensorComplex(crM.T, module_complex(n))
    h = tate_homology(crM, n, [0, -1], bound)
    _four_term(rep, theta, src, tgt, X, 0, bound, h, h, ("theta", "Ttor_0", "Ttor_-1"))
    rep.notes["Ttor"] = h.to_dict()
    return rep


def nu_sequence(crM: CompleteResolution, n: Module, bound: int | None = None) -> Report:
    """``0 -> Text^-1(M,N) -> M* (x) N -> Hom(M, N) -> Text^0(M,N) -> 0``.

    ``nu(f (x) y) = (x -> f(x) y)``; on covers it is ``d_0* (x) 1`` from
    ``T_{-1}* (x) N`` to ``T_0* (x) N``.
    """
    if crM.g != 0:
        raise TateError("nu needs a totally reflexive module (g = 0)")
    rep = Report()
    src = Module.tensor(_dual_presented(crM), n)
    tgt = Module.hom(crM.module, n)
    nu = crM.T.diff(0).dual().kron(n.identity())
    X = HomComplex(crM.T, module_complex(n))
    h = homology(X, [1, 0], bound)
    _four_term(rep, nu, src, tgt, X, 1, bound, h, h, ("nu", "Text^-1", "Text^0"))
    rep.notes["Text"] = {"-1": h.to_dict()["degrees"]["1"], "0": h.to_dict()["degrees"]["0"]}
    return rep


# -- stable versus absolute ---------------------------------------------------


def stable_vs_absolute_check(cr: CompleteResolution, n: Module, degrees: Iterable[int], bound: int | None = None, sup_n: int = 0) -> Report:
    """``Ttor_i(M, N)`` against ``Tor_i(M, N)`` for ``i > g + sup N``.

    Tor comes from an independently built minimal free resolution of M.
    The coincidence degree g stands in for the Gorenstein projective
    dimension, so the compared range may be smaller than the true one.
    """
    degrees = [i for i in degrees if i > cr.g + sup_n]
    rep = Report()
    rep.notes["compared_degrees"] = degrees
    if not degrees:
        return rep
    P, _ = build_free_resolution(cr.module, max(degrees) + 1, bound)
    tor = homology(TensorComplex(P, module_complex(n)), degrees, bound)
    ttor = tate_homology(cr, n, degrees, bound)
    _table_report(rep, ttor, tor, "Ttor vs Tor")
    rep.notes["Tor"] = tor.to_dict()
    rep.notes["Ttor"] = ttor.to_dict()
    return rep


def stable_vs_absolute_ext_check(cr: CompleteResolution, n: Module, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``Text^i(M, N)`` against ``Ext^i(M, N)`` for ``i > g``."""
    degrees = [i for i in degrees if i > cr.g]
    rep = Report()
    rep.notes["compared_degrees"] = degrees
    if not degrees:
        return rep
    P, _ = build_free_resolution(cr.module, max(degrees) + 1, bound)
    ext = _cohomology(HomComplex(P, module_complex(n)), degrees, bound)
    text = tate_cohomology(cr, n, degrees, bound)
    _table_report(rep, text, ext, "Text vs Ext")
    return rep


# -- cycles in tensor products of unbounded complexes -------------------------


def tensor_cycle_witness(T: ChainComplex, A: ChainComplex, n: int, i0: int, coefficient: str, K: int, bound: int | None = None) -> dict:
    """Is ``c * e_{i0, n-i0}`` a cycle and a non-boundary in ``T (x) A``?

    ``(T (x) A)_n`` is an infinite direct sum when both factors are
    unbounded, but every element is a finite sum.  The cycle condition is
    checked exactly.  For the boundary question the candidate preimages are
    those supported on first indices ``|i| <= K``; the differential out of
    them is computed exactly by truncating the first factor to
    ``[-K-1, K+1]``, which does not touch those columns.
    """
    if not -K <= i0 <= K:
        raise ValueError("the element must lie inside the support window")
    R = T.ring
    Tk = hard_trunc_above(hard_trunc_below(T, -K - 1), K + 1)
    W = TensorComplex(Tk, A)
    c = R.parse(coefficient)
    lay = W.layout(n)
    k = next(k for k, (i, _, _) in enumerate(lay) if i == i0)
    a, b = lay[k][1], lay[k][2]
    if a.rank != 1 or b.rank != 1:
        raise ValueError("the witness expects rank-one terms")
    twist = a.twists[0] + b.twists[0]
    d = R.degree(c) - twist
    # coordinates of c * e in the slice of degree d
    vec = []
    for kk, (_, x, y) in enumerate(lay):
        for tx in x.twists:
            for ty in y.twists:
                mons = R.standard_monomials(d + tx + ty)
                if kk == k:
                    v = [0] * len(mons)
                    for r, x in R.mult_vector(c, R.one[0][0]).items():
                        v[r] = x
                    vec.extend(v)
                else:
                    vec.extend([0] * len(mons))
    dn = W.diff(n).slice(d)
    image_of_e = [sum(r * x for r, x in zip(row, vec)) % R.q for row in dn]
    is_cycle = not any(image_of_e)
    # columns of the degree n+1 differential coming from blocks with |i| <= K
    src = W.layout(n + 1)
    cols, off = [], 0
    for i, x, y in src:
        width = sum(R.slice_dim(d + tx + ty) for tx in x.twists for ty in y.twists)
        if -K <= i <= K:
            cols.extend(range(off, off + width))
        off += width
    D = W.diff(n + 1).slice(d)
    sub = [[row[j] for j in cols] for row in D]
    B = image_of_columns(sub, len(vec), R.q)
    return {
        "degree": n,
        "element": f"{coefficient}*e[{i0},{n - i0}]",
        "internal_degree": d,
        "support": K,
        "cycle": is_cycle,
        "boundary": B.contains(vec),
    }


# -- instances with free or injective coefficients ----------------------------


def hom_pinched_into_ring_check(crM: CompleteResolution, crN: CompleteResolution, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``H_{-i}(Hom(T [x] T', R))`` against ``Text^i(M, Hom(N, R))``."""
    degrees = list(degrees)
    R = crM.ring
    Rc = module_complex(Module.free(R, (0,)))
    a = _cohomology(HomComplex(PinchedTensor(crM.T, crN.T), Rc), degrees, bound)
    b = tate_cohomology(crM, crN.module.dual(), degrees, bound)
    return compare_tables(a, b, "H(Hom(T [x] T', R)) vs Text(M, N*)")


def pinched_hom_from_acyclic_check(a: ChainComplex, u: ChainComplex, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``H_i(pHom(A, U))`` against ``H_i(Hom(C_0(A), U))`` for acyclic A."""
    degrees = list(degrees)
    if not a.ring.self_injective:
        raise RingError(f"{a.ring} is not flagged self-injective")
    _require_acyclic(a, degrees, bound)
    left = homology(PinchedHom(a, u), degrees, bound)
    right = homology(HomComplex(module_complex(zeroth_cokernel(a)), u), degrees, bound)
    return compare_tables(left, right, "H(pHom(A, U)) vs H(Hom(C_0(A), U))")


def hom_from_ring_check(crM: CompleteResolution, u: ChainComplex, n: Module, degrees: Iterable[int], bound: int | None = None) -> Report:
    """``H_{-i}(Hom(R, pHom(T, U)))`` against ``Text^i(M, Hom(R, N))`` with ``N = Z_0(U)``."""
    degrees = list(degrees)
    R = crM.ring
    if not R.self_injective:
        raise RingError(f"{R} is not flagged self-injective")
    Rc = module_complex(Module.free(R, (0,)))
    left = _cohomology(HomComplex(Rc, PinchedHom(crM.T, u)), degrees, bound)
    right = tate_cohomology(crM, Module.hom(Module.free(R, (0,)), n), degrees, bound)
    return compare_tables(left, right, "H(Hom(R, pHom(T, U))) vs Text(M, N)")


def commutativity_transport_check(crM: CompleteResolution, crN: CompleteResolution, degrees: Iterable[int], bound: int | None = None) -> Report:
    """Homology tables of ``T [x] T'`` and ``T' [x] T`` agree."""
    degrees = list(degrees)
    a = homology(PinchedTensor(crM.T, crN.T), degrees, bound)
    b = homology(PinchedTensor(crN.T, crM.T), degrees, bound)
    return compare_tables(a, b, "H(T [x] T') vs H(T' [x] T)")
