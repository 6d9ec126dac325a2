"""Chain complexes, chain maps, the standard operations, and homology.

Complexes are lazy: a complex answers ``module(i)`` and ``diff(i)`` on
demand (``diff(i)`` goes from degree i to i - 1).  Unbounded complexes are
described by a finite window plus a policy for what lies outside it:
zero, unknown (asking raises), or periodic with an internal-degree twist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .linalg import Lattice, image, image_of_columns, kernel_mod, preimage, quotient_invariants
from .matrix import Matrix, ShapeError
from .modules import Module, block_diag, hcat, is_zero_map, maps_into, vcat
from .rings import DegreeBoundError, Ring, is_prime


class UndeterminedDegreeError(ValueError):
    """A degree outside the known part of a complex was requested."""


class ComplexError(ValueError):
    pass


class ChainComplex:
    """Base class.  Subclasses implement ``_module`` and ``_diff``."""

    ring: Ring
    period: tuple[int, int] | None = None

    def __init__(self, ring: Ring):
        self.ring = ring
        self._mods: dict[int, Module] = {}
        self._diffs: dict[int, Matrix] = {}

    def bounds(self) -> tuple[int | None, int | None]:
        """Degrees outside ``[lo, hi]`` are zero; None means unbounded."""
        return None, None

    def in_support(self, i: int) -> bool:
        lo, hi = self.bounds()
        return (lo is None or i >= lo) and (hi is None or i <= hi)

    def module(self, i: int) -> Module:
        if i not in self._mods:
            self._mods[i] = self._module(i) if self.in_support(i) else Module.zero(self.ring)
        return self._mods[i]

    def diff(self, i: int) -> Matrix:
        if i not in self._diffs:
            if self.in_support(i) and self.in_support(i - 1):
                d = self._diff(i)
            else:
                d = Matrix.zero(self.ring, self.module(i - 1).twists, self.module(i).twists)
            self._diffs[i] = d
        return self._diffs[i]

    def _module(self, i: int) -> Module:
        raise NotImplementedError

    def _diff(self, i: int) -> Matrix:
        raise NotImplementedError

    def ranks(self, lo: int, hi: int) -> dict[int, int]:
        return {i: self.module(i).rank for i in range(lo, hi + 1)}

    def is_free(self, lo: int, hi: int) -> bool:
        return all(self.module(i).is_free for i in range(lo, hi + 1))


class WindowComplex(ChainComplex):
    """Explicit modules on ``[lo, hi]`` and differentials for ``lo < i <= hi``.

    ``below``/``above`` say what happens outside the window: ``"zero"`` or
    ``"unknown"``.  Passing ``period=(p, t)`` instead extends the data in
    both directions with ``C_{i+p} = C_i(t)``; the window must then hold at
    least p differentials.
    """

    def __init__(
        self,
        ring: Ring,
        lo: int,
        hi: int,
        modules: dict[int, Module] | Sequence[Module],
        diffs: dict[int, Matrix],
        below: str = "zero",
        above: str = "zero",
        period: tuple[int, int] | None = None,
        name: str | None = None,
    ):
        super().__init__(ring)
        if hi < lo:
            raise ComplexError("empty window")
        if not isinstance(modules, dict):
            modules = {lo + k: m for k, m in enumerate(modules)}
        missing = [i for i in range(lo, hi + 1) if i not in modules]
        if missing:
            raise ComplexError(f"no module given in degrees {missing}")
        self.lo, self.hi = lo, hi
        self.mods = dict(modules)
        self.diffs = dict(diffs)
        for i in range(lo + 1, hi + 1):
            if i not in self.diffs:
                self.diffs[i] = Matrix.zero(ring, self.mods[i - 1].twists, self.mods[i].twists)
        for pol in (below, above):
            if pol not in ("zero", "unknown"):
                raise ComplexError(f"unknown boundary policy {pol!r}")
        self.below, self.above = below, above
        if period is not None:
            p, _ = period
            if p < 1:
                raise ComplexError("period must be positive")
            if hi - lo < p:
                raise ComplexError("a periodic window needs at least one full period of differentials")
        self.period = period
        self.name = name

    def bounds(self):
        if self.period is not None:
            return None, None
        lo = self.lo if self.below == "zero" else None
        hi = self.hi if self.above == "zero" else None
        return lo, hi

    def _module(self, i):
        if self.lo <= i <= self.hi:
            return self.mods[i]
        if self.period is None:
            raise UndeterminedDegreeError(f"degree {i} lies outside the window [{self.lo}, {self.hi}]")
        p, t = self.period
        k = (i - self.lo) // p
        return self.mods[i - k * p].twisted(k * t)

    def _diff(self, i):
        if self.lo < i <= self.hi:
            return self.diffs[i]
        if self.period is None:
            raise UndeterminedDegreeError(f"differential {i} lies outside the window [{self.lo}, {self.hi}]")
        p, t = self.period
        k = (i - self.lo - 1) // p
        return self.diffs[i - k * p].twisted(k * t)


class Shift(ChainComplex):
    """``(S^n C)_i = C_{i-n}`` with differential ``(-1)^n d_{i-n}``."""

    def __init__(self, c: ChainComplex, n: int):
        super().__init__(c.ring)
        self.c, self.n = c, n
        self.period = c.period

    def bounds(self):
        lo, hi = self.c.bounds()
        return (None if lo is None else lo + self.n), (None if hi is None else hi + self.n)

    def _module(self, i):
        return self.c.module(i - self.n)

    def _diff(self, i):
        d = self.c.diff(i - self.n)
        return -d if self.n % 2 else d


class _Truncation(ChainComplex):
    def __init__(self, c: ChainComplex, n: int):
        super().__init__(c.ring)
        self.c, self.n = c, n


class HardTruncAbove(_Truncation):
    """Keep degrees ``<= n``."""

    def bounds(self):
        lo, hi = self.c.bounds()
        return lo, self.n if hi is None else min(hi, self.n)

    def _module(self, i):
        return self.c.module(i)

    def _diff(self, i):
        return self.c.diff(i)


class HardTruncBelow(_Truncation):
    """Keep degrees ``>= n``."""

    def bounds(self):
        lo, hi = self.c.bounds()
        return (self.n if lo is None else max(lo, self.n)), hi

    def _module(self, i):
        return self.c.module(i)

    def _diff(self, i):
        return self.c.diff(i)


class SoftTruncAbove(_Truncation):
    """Degrees ``< n`` kept, degree n replaced by ``C_n = coker d_{n+1}``."""

    def bounds(self):
        lo, hi = self.c.bounds()
        return lo, self.n if hi is None else min(hi, self.n)

    def _module(self, i):
        M = self.c.module(i)
        if i < self.n:
            return M
        if M.cond is not None:
            raise ComplexError("cokernel of a kernel-type module is not representable here")
        d = self.c.diff(i + 1)
        return Module(self.ring, M.twists, rel=hcat(self.ring, M.twists, [M.rel, d]))

    def _diff(self, i):
        return self.c.diff(i)


class SoftTruncBelow(_Truncation):
    """Degrees ``> n`` kept, degree n replaced by ``Z_n = ker d_n``."""

    def bounds(self):
        lo, hi = self.c.bounds()
        return (self.n if lo is None else max(lo, self.n)), hi

    def _module(self, i):
        M = self.c.module(i)
        if i > self.n:
            return M
        d = self.c.diff(i)
        below = self.c.module(i - 1)
        conds, crels = [], []
        if M.cond is not None:
            conds.append(M.cond)
            crels.append(M.cond_rel if M.cond_rel is not None else Matrix.zero(self.ring, M.cond.rows, ()))
        conds.append(d)
        crels.append(below.rel if below.rel is not None else Matrix.zero(self.ring, d.rows, ()))
        cond = vcat(self.ring, M.twists, conds)
        return Module(self.ring, M.twists, M.rel, cond, block_diag(self.ring, crels))

    def _diff(self, i):
        return self.c.diff(i)


def shift(c: ChainComplex, n: int) -> ChainComplex:
    return c if n == 0 else Shift(c, n)


def hard_trunc_above(c: ChainComplex, n: int) -> ChainComplex:
    return HardTruncAbove(c, n)


def hard_trunc_below(c: ChainComplex, n: int) -> ChainComplex:
    return HardTruncBelow(c, n)


def soft_trunc_above(c: ChainComplex, n: int) -> ChainComplex:
    return SoftTruncAbove(c, n)


def soft_trunc_below(c: ChainComplex, n: int) -> ChainComplex:
    return SoftTruncBelow(c, n)


def module_complex(M: Module, degree: int = 0) -> ChainComplex:
    """A module concentrated in one degree."""
    return WindowComplex(M.ring, degree, degree, {degree: M}, {})


def sandwich(M: Module, top: int = 0) -> ChainComplex:
    """``0 -> M = M -> 0`` in degrees ``top`` and ``top - 1``.

    Only free or presented M; with top 0 the cokernel in degree 0 is M,
    with top 1 the kernel in degree 0 is M.
    """
    return WindowComplex(M.ring, top - 1, top, {top - 1: M, top: M}, {top: M.identity()})


def materialize(c: ChainComplex, lo: int, hi: int, name: str | None = None) -> WindowComplex:
    """Freeze the degrees ``[lo, hi]`` of c into an explicit window.

    The window is marked zero on a side where c is known to vanish and
    unknown otherwise; a periodic c keeps its period.
    """
    clo, chi = c.bounds()
    if c.period is not None and hi - lo >= c.period[0]:
        period = c.period
        below = above = "zero"
    else:
        period = None
        below = "zero" if clo is not None and clo >= lo else "unknown"
        above = "zero" if chi is not None and chi <= hi else "unknown"
    return WindowComplex(
        c.ring,
        lo,
        hi,
        {i: c.module(i) for i in range(lo, hi + 1)},
        {i: c.diff(i) for i in range(lo + 1, hi + 1)},
        below=below,
        above=above,
        period=period,
        name=name,
    )


# -- chain maps -------------------------------------------------------------


class ChainMap:
    """Degreewise matrices ``comp(i): source_i -> target_i``."""

    def __init__(self, source: ChainComplex, target: ChainComplex, comp: Callable[[int], Matrix] | dict):
        if source.ring != target.ring:
            raise ComplexError("chain map between complexes over different rings")
        self.source, self.target = source, target
        self._fn = comp if callable(comp) else None
        self._given = dict(comp) if not callable(comp) else {}
        self._cache: dict[int, Matrix] = {}

    def __call__(self, i: int) -> Matrix:
        if i not in self._cache:
            if self._fn is not None:
                m = self._fn(i)
            elif i in self._given:
                m = self._given[i]
            else:
                m = Matrix.zero(self.source.ring, self.target.module(i).twists, self.source.module(i).twists)
            self._cache[i] = m
        return self._cache[i]

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, lambda i: c.module(i).identity())

    def compose(self, first: "ChainMap") -> "ChainMap":
        """``self o first``."""
        return ChainMap(first.source, self.target, lambda i: self(i) @ first(i))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target, lambda i: self(i) + other(i))


def cone(alpha: ChainMap) -> ChainComplex:
    return Cone(alpha)


class Cone(ChainComplex):
    """``Cone(a)_i = N_i + M_{i-1}`` with differential ``[[dN, a], [0, -dM]]``."""

    def __init__(self, alpha: ChainMap):
        super().__init__(alpha.source.ring)
        self.alpha = alpha
        self.M, self.N = alpha.source, alpha.target

    def bounds(self):
        mlo, mhi = self.M.bounds()
        nlo, nhi = self.N.bounds()
        lo = None if mlo is None or nlo is None else min(nlo, mlo + 1)
        hi = None if mhi is None or nhi is None else max(nhi, mhi + 1)
        return lo, hi

    def _module(self, i):
        return Module.direct_sum(self.ring, [self.N.module(i), self.M.module(i - 1)])

    def _diff(self, i):
        N1, N0 = self.N.module(i).twists, self.N.module(i - 1).twists
        M1, M0 = self.M.module(i - 1).twists, self.M.module(i - 2).twists
        return Matrix.block(
            self.ring,
            [N0, M0],
            [N1, M1],
            {(0, 0): self.N.diff(i), (0, 1): self.alpha(i - 1), (1, 1): -self.M.diff(i - 1)},
        )


# -- verification -----------------------------------------------------------


@dataclass
class Report:
    """Outcome of a check: pass flag plus located failures."""

    ok: bool = True
    failures: list[tuple] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def fail(self, where, msg: str) -> None:
        self.ok = False
        self.failures.append((where, msg))

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [{"where": w, "message": m} for w, m in self.failures],
            **({"notes": self.notes} if self.notes else {}),
        }


def internal_range(c: ChainComplex, degrees: Iterable[int], bound: int | None = None) -> tuple[int, int] | None:
    """Internal degrees where slices of the given homological degrees are computable.

    Returns ``(dlo, dhi)``: below dlo every slice vanishes; above dhi some
    slice would need ring degrees beyond the bound.  None when every module
    involved is zero.
    """
    R = c.ring
    if not R.is_graded:
        return 0, 0
    b = R.bound if bound is None else min(bound, R.bound)
    covers, touched = [], []
    for i in degrees:
        for j in (i - 1, i, i + 1):
            M = c.module(j)
            covers += M.twists
            touched += M.all_twists()
    if not covers:
        return None
    return -max(covers), b - max(touched)


def verify_complex(c: ChainComplex, lo: int, hi: int, bound: int | None = None) -> Report:
    """Check shapes and ``d_i d_{i+1} = 0`` for ``lo < i < hi``.

    A periodic complex is also checked across one wrap of its period.
    """
    rep = Report()
    rep.notes["window"] = [lo, hi]
    R = c.ring
    degrees = list(range(lo, hi + 1))
    if c.period is not None:
        p, t = c.period
        degrees += list(range(hi + 1, hi + p + 2))
        lo_eff = lo
        hi_eff = hi + p + 1
    else:
        lo_eff, hi_eff = lo, hi
    for i in range(lo_eff + 1, hi_eff + 1):
        try:
            d = c.diff(i)
            src, tgt = c.module(i), c.module(i - 1)
        except UndeterminedDegreeError as e:
            rep.fail(i, str(e))
            continue
        if d.cols != src.twists or d.rows != tgt.twists:
            rep.fail(i, f"differential {i} has shape {d.shape}, modules have ranks {tgt.rank}, {src.rank}")
            return rep
    for i in range(lo_eff + 1, hi_eff):
        try:
            comp = c.diff(i) @ c.diff(i + 1)
        except ShapeError as e:
            rep.fail(i, str(e))
            continue
        src, tgt = c.module(i + 1), c.module(i - 1)
        if comp.is_zero():
            continue
        if src.is_free and tgt.is_free:
            bad = next(iter(sorted(comp.entries)))
            rep.fail(i, f"d_{i} d_{i + 1} is nonzero, entry {bad} = {R.format(comp.entries[bad])}")
            continue
        rng = internal_range(c, [i], bound)
        if rng is None:
            continue
        for dd in range(rng[0], rng[1] + 1):
            if not is_zero_map(comp, src, tgt, dd):
                rep.fail(i, f"d_{i} d_{i + 1} is nonzero in internal degree {dd}")
                break
    for i in range(lo_eff + 1, hi_eff + 1):
        src, tgt = c.module(i), c.module(i - 1)
        if src.is_free and tgt.rel is None and tgt.cond is None:
            continue
        rng = internal_range(c, [i], bound)
        if rng is None:
            continue
        for dd in range(rng[0], rng[1] + 1):
            if not maps_into(c.diff(i), src, tgt, dd):
                rep.fail(i, f"d_{i} is not well defined in internal degree {dd}")
                break
    if c.period is not None and isinstance(c, WindowComplex):
        p, t = c.period
        for i in range(c.lo, c.hi - p + 1):
            if c.mods[i + p] != c.mods[i].twisted(t):
                rep.fail(i + p, f"module {i + p} is not module {i} twisted by {t}")
        for i in range(c.lo + 1, c.hi - p + 1):
            if c.diffs[i + p] != c.diffs[i].twisted(t):
                rep.fail(i + p, f"differential {i + p} is not differential {i} twisted by {t}")
    return rep


def verify_chain_map(f: ChainMap, lo: int, hi: int, bound: int | None = None) -> Report:
    """``d f = f d`` on ``[lo, hi]``, literally when the target is free."""
    rep = Report()
    S, T = f.source, f.target
    for i in range(lo, hi + 1):
        m = f(i)
        if m.cols != S.module(i).twists or m.rows != T.module(i).twists:
            rep.fail(i, f"component {i} has the wrong shape")
            continue
        if i == lo:
            continue
        lhs = T.diff(i) @ m
        rhs = f(i - 1) @ S.diff(i)
        diff = lhs - rhs
        if diff.is_zero():
            continue
        if T.module(i - 1).is_free:
            rep.fail(i, "d f != f d")
            continue
        rng = internal_range(S, [i], bound)
        if rng is None:
            continue
        for dd in range(rng[0], rng[1] + 1):
            if not is_zero_map(diff, S.module(i), T.module(i - 1), dd):
                rep.fail(i, f"d f != f d in internal degree {dd}")
                break
    return rep


# -- homology ---------------------------------------------------------------


def _descriptor(invariants: tuple[int, ...], q: int):
    return len(invariants) if is_prime(q) else tuple(invariants)


def _is_zero_descriptor(v) -> bool:
    return v == 0 or v == ()


def cycles_and_boundaries(c: ChainComplex, i: int, d: int) -> tuple[Lattice, Lattice]:
    """``(Z, B)`` lattices in internal degree d of homological degree i."""
    M1 = c.module(i)
    S0, Rel0 = c.module(i - 1).lattices(d)
    S1, Rel1 = M1.lattices(d)
    S2, _ = c.module(i + 1).lattices(d)
    D1 = c.diff(i).slice(d)
    D2 = c.diff(i + 1).slice(d)
    Z = preimage(D1, Rel0, S1)
    B = image(D2, S2, S1.m) + Rel1
    return Z, B


@dataclass
class HomologyTable:
    """Iso-class descriptors of homology.

    ``cells[i][d]`` is the descriptor in homological degree i and internal
    degree d: a dimension over a prime field, else a sorted tuple of
    invariant factors.  ``ranges[i]`` records which internal degrees were
    computed; below the range everything vanishes, above it nothing is
    known.  Ungraded tables use d = 0 only.
    """

    q: int
    graded: bool
    cells: dict[int, dict[int, object]] = field(default_factory=dict)
    ranges: dict[int, tuple[int, int] | None] = field(default_factory=dict)
    bound: int | None = None

    def degrees(self) -> list[int]:
        return sorted(self.ranges)

    def zero_value(self):
        return 0 if is_prime(self.q) else ()

    def get(self, i: int, d: int = 0):
        rng = self.ranges[i]
        if rng is None or d < rng[0]:
            return self.zero_value()
        if d > rng[1]:
            raise DegreeBoundError(f"internal degree {d} not computed at homological degree {i}")
        return self.cells[i].get(d, self.zero_value())

    def at(self, i: int):
        """Descriptor at degree i (ungraded) or the dict of nonzero slices."""
        if not self.graded:
            return self.get(i, 0)
        return {d: v for d, v in sorted(self.cells.get(i, {}).items()) if not _is_zero_descriptor(v)}

    def is_zero_at(self, i: int) -> bool:
        return all(_is_zero_descriptor(v) for v in self.cells.get(i, {}).values())

    def is_zero(self) -> bool:
        return all(self.is_zero_at(i) for i in self.ranges)

    def compare(self, other: "HomologyTable", offset: int = 0, twist: int = 0) -> list[tuple[int, int, object, object]]:
        """Cells where ``self[i][d]`` differs from ``other[i + offset][d + twist]``.

        Only cells known in both tables are compared.
        """
        return [(i, d, x, y) for i, d, x, y in self.compared_cells(other, offset, twist) if x != y]

    def overlap(self, other: "HomologyTable", offset: int = 0, twist: int = 0) -> int:
        """Number of cells that :meth:`compare` looks at."""
        return sum(1 for _ in self.compared_cells(other, offset, twist))

    def compared_cells(self, other: "HomologyTable", offset: int = 0, twist: int = 0):
        for i in self.degrees():
            j = i + offset
            if j not in other.ranges:
                continue
            a, b = self.ranges[i], other.ranges[j]
            if a is None and b is None:
                continue
            los, his = [], []
            if a is not None:
                los.append(a[0])
                his.append(a[1])
            if b is not None:
                los.append(b[0] - twist)
                his.append(b[1] - twist)
            for d in range(min(los), min(his) + 1):
                yield i, d, self.get(i, d), other.get(j, d + twist)

    def equals(self, other: "HomologyTable", offset: int = 0, twist: int = 0) -> bool:
        return not self.compare(other, offset, twist)

    def to_dict(self) -> dict:
        def enc(v):
            return list(v) if isinstance(v, tuple) else v

        out = {}
        for i in self.degrees():
            if self.graded:
                rng = self.ranges[i]
                out[str(i)] = {
                    "internal_range": list(rng) if rng else None,
                    "nonzero": {str(d): enc(v) for d, v in sorted(self.cells[i].items()) if not _is_zero_descriptor(v)},
                }
            else:
                out[str(i)] = enc(self.get(i))
        return {
            "coefficients": f"Z/{self.q}",
            "descriptor": "dimension" if is_prime(self.q) else "invariant factors",
            "graded": self.graded,
            "bound": self.bound,
            "degrees": out,
        }

    def format_text(self) -> str:
        lines = []
        for i in self.degrees():
            if self.graded:
                nz = self.at(i)
                body = ", ".join(f"d={d}: {v}" for d, v in nz.items()) or "0"
                rng = self.ranges[i]
                span = f" (internal {rng[0]}..{rng[1]})" if rng else ""
                lines.append(f"H_{i}: {body}{span}")
            else:
                v = self.get(i)
                lines.append(f"H_{i}: {list(v) if isinstance(v, tuple) else v}")
        return "\n".join(lines)


def homology(c: ChainComplex, degrees: Iterable[int], degree_bound: int | None = None) -> HomologyTable:
    """Homology of c in the given homological degrees.

    Requires ``c`` to be known one step beyond each requested degree; a
    window edge raises :class:`UndeterminedDegreeError`.
    """
    R = c.ring
    bound = None if not R.is_graded else (R.bound if degree_bound is None else degree_bound)
    if bound is not None and bound > R.bound:
        raise DegreeBoundError(f"degree bound {bound} exceeds the ring's bound {R.bound}")
    table = HomologyTable(R.q, R.is_graded, bound=bound)
    for i in degrees:
        for j in (i - 1, i, i + 1):
            c.module(j)
        c.diff(i)
        c.diff(i + 1)
        rng = internal_range(c, [i], bound)
        table.ranges[i] = rng
        table.cells[i] = {}
        if rng is None:
            continue
        for d in range(rng[0], rng[1] + 1):
            Z, B = cycles_and_boundaries(c, i, d)
            if not Z.contains_lattice(B):
                raise ComplexError(f"boundaries are not cycles at degree {i}, internal degree {d}")
            table.cells[i][d] = _descriptor(quotient_invariants(Z, B), R.q)
    return table


def is_acyclic(c: ChainComplex, lo: int, hi: int, degree_bound: int | None = None) -> bool:
    return homology(c, range(lo, hi + 1), degree_bound).is_zero()


def is_quasi_iso(alpha: ChainMap, lo: int, hi: int, degree_bound: int | None = None) -> bool:
    """Is the cone of alpha acyclic on ``[lo, hi]``?"""
    return is_acyclic(cone(alpha), lo, hi, degree_bound)


def homology_witness(c: ChainComplex, i: int, d: int, prefer: Callable[[int], object] | None = None):
    """A cycle vector that is not a boundary, or None.

    Unit vectors of the slice basis are tried first, ordered by ``prefer``.
    """
    Z, B = cycles_and_boundaries(c, i, d)
    n = Z.m
    units = list(range(n))
    if prefer is not None:
        units.sort(key=prefer)
    for k in units:
        v = [1 if j == k else 0 for j in range(n)]
        if Z.contains(v) and not B.contains(v):
            return v
    for v in Z.generators():
        if not B.contains(v):
            return v
    return None


# -- resolutions ------------------------------------------------------------


def _minimal_generators(R: Ring, F: Sequence[int], kernel_at, dlo: int, dhi: int):
    """Minimal homogeneous generators of a submodule of the free module F.

    ``kernel_at(d)`` gives the submodule's lattice in internal degree d.
    Returns a list of ``(d, slice vector)``.
    """
    q = R.q
    gens: list[tuple[int, list[int]]] = []
    if R.is_graded:
        for d in range(dlo, dhi + 1):
            K = kernel_at(d)
            n = K.m
            span = Lattice(n, q)
            for gd, v in gens:
                elem = _vector_to_column(R, F, gd, v)
                for m in R.standard_monomials(d - gd):
                    span.add(_column_times_monomial(R, F, elem, m, d))
            for v in K.generators():
                if not span.contains(v):
                    gens.append((d, v))
                    span.add(v)
        return gens
    K = kernel_at(0)
    p = R.local_prime
    n = K.m
    if p is None or p == q:
        span = Lattice(n, q)
        for v in K.generators():
            if not span.contains(v):
                gens.append((0, v))
                span.add(v)
        return gens
    mK = Lattice(n, q, [[p * x for x in r] for r in K.rows])
    span = mK.copy()
    for v in K.generators():
        if not span.contains(v):
            gens.append((0, v))
            span.add(v)
    return gens


def _vector_to_column(R: Ring, F: Sequence[int], d: int, v: Sequence[int]):
    """Split a slice vector of F in degree d into ring elements per generator."""
    out = []
    k = 0
    for t in F:
        n = R.slice_dim(d + t)
        out.append(R.slice_vector_to_elem(d + t, v[k : k + n]) if n else ())
        k += n
    return out


def _column_times_monomial(R: Ring, F: Sequence[int], col, m, d: int) -> list[int]:
    mono = R.monomial(m)
    vec: list[int] = []
    for t, e in zip(F, col):
        n = R.slice_dim(d + t)
        part = [0] * n
        prod = R.mul(e, mono) if e else ()
        std = R.standard_monomials(d + t) if n else []
        idx = {s: k for k, s in enumerate(std)}
        for mm, cc in prod:
            part[idx[mm]] = cc
        vec += part
    return vec


def build_free_resolution(M: Module, length: int, degree_bound: int | None = None):
    """Free resolution ``F_length -> ... -> F_0`` of a presented module.

    ``F_0`` is the cover of the presentation; each later step takes
    minimal generators of the previous kernel (Nakayama over local
    backends, degree by degree over graded ones).  Returns the complex
    and the augmentation to M placed in degree 0.  Over a graded ring the
    result is exact only in internal degrees the bound allows; that
    limit is recorded as ``exact_through``.
    """
    if M.cond is not None:
        raise ComplexError("resolutions need a presented module")
    R = M.ring
    bound = R.bound if degree_bound is None else degree_bound
    F = [tuple(M.twists)]
    diffs: dict[int, Matrix] = {}
    # generators of the submodule to cover next: the presentation columns
    current_rel = M.rel
    exact_through: int | None = None
    for k in range(1, length + 1):
        prev = F[k - 1]
        if not prev:
            break
        if k == 1:
            if current_rel is None:
                F.append(())
                diffs[1] = Matrix.zero(R, prev, ())
                break

            def sub_at(d, rel=current_rel, prev=prev):
                return image_of_columns(rel.slice(d), sum(R.slice_dim(d + t) for t in prev), R.q)

        else:
            dprev = diffs[k - 1]

            def sub_at(d, dprev=dprev, prev=prev):
                return kernel_mod(dprev.slice(d), sum(R.slice_dim(d + t) for t in prev), R.q)

        if R.is_graded:
            touched = list(prev) + (list(F[k - 2]) if k >= 2 else []) + (list(current_rel.cols) if k == 1 else [])
            dlo = -max(prev)
            dhi = bound - max(touched)
            exact_through = dhi if exact_through is None else min(exact_through, dhi)
        else:
            dlo = dhi = 0
        gens = _minimal_generators(R, prev, sub_at, dlo, dhi)
        cols = tuple(-d for d, _ in gens)
        entries = {}
        for j, (d, v) in enumerate(gens):
            for i, e in enumerate(_vector_to_column(R, prev, d, v)):
                if e:
                    entries[(i, j)] = e
        F.append(cols)
        diffs[k] = Matrix(R, prev, cols, entries)
    top = len(F) - 1
    P = WindowComplex(
        R,
        0,
        top,
        {i: Module.free(R, F[i]) for i in range(top + 1)},
        diffs,
        below="zero",
        above="zero" if not F[top] else "unknown",
        name="free resolution",
    )
    target = module_complex(M, 0)
    aug = ChainMap(P, target, {0: Matrix.identity(R, M.twists)})
    P.exact_through = exact_through
    return P, aug
