"""Tensor and Hom complexes, their pinched variants, and the structural isomorphisms.

Block conventions (they make every comparison below a literal matrix
equality):

* ``(M (x) N)_n`` is the sum over ``i`` ascending of ``M_i (x) N_{n-i}``;
  inside a block generators are ordered ``(m, n)``.
* ``Hom(M, N)_n`` is the product over ``i`` ascending of
  ``Hom(M_i, N_{i+n})``; inside a block generators are ordered ``(m*, n)``.
"""

from __future__ import annotations


from .complexes import (
    ChainComplex,
    ChainMap,
    ComplexError,
    Report,
    hard_trunc_above,
    hard_trunc_below,
    internal_range,
    module_complex,
    shift,
    verify_chain_map,
    verify_complex,
)
from .linalg import image
from .matrix import Matrix
from .modules import Module
from .rings import Ring


def _as_complex(x) -> ChainComplex:
    return module_complex(x, 0) if isinstance(x, Module) else x


def _index_range(lo1, hi1, lo2, hi2, what: str, n: int) -> range:
    if (lo1 is None and lo2 is None) or (hi1 is None and hi2 is None):
            raise ComplexError(f"{what} in degree {n} is an infinite sum; truncate one factor first")
    lo = lo1 if lo2 is None else (lo2 if lo1 is None else max(lo1, lo2))
    hi = hi1 if hi2 is None else (hi2 if hi1 is None else min(hi1, hi2))
    return range(lo, hi + 1)


class TensorComplex(ChainComplex):
    """``M (x) N`` with ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``."""

    def __init__(self, M: ChainComplex, N: ChainComplex):
        super().__init__(M.ring)
        if M.ring != N.ring:
            raise ComplexError("tensor factors over different rings")
        self.M, self.N = M, N
        mlo, mhi = M.bounds()
        nlo, nhi = N.bounds()
        if M.period is not None and nlo is not None and nhi is not None:
            self.period = M.period

    def bounds(self):
        mlo, mhi = self.M.bounds()
        nlo, nhi = self.N.bounds()
        lo = None if mlo is None or nlo is None else mlo + nlo
        hi = None if mhi is None or nhi is None else mhi + nhi
        return lo, hi

    def indices(self, n: int) -> range:
        """First-factor indices of the blocks in degree n."""
        mlo, mhi = self.M.bounds()
        nlo, nhi = self.N.bounds()
        return _index_range(
            mlo, mhi, None if nhi is None else n - nhi, None if nlo is None else n - nlo, "tensor product", n
        )

    def layout(self, n: int) -> list[tuple[int, Module, Module]]:
        return [(i, self.M.module(i), self.N.module(n - i)) for i in self.indices(n)]

    def _module(self, n):
        return Module.direct_sum(self.ring, [Module.tensor(a, b) for _, a, b in self.layout(n)])

    def _diff(self, n):
        R = self.ring
        src = self.layout(n)
        tgt = self.layout(n - 1)
        tpos = {i: k for k, (i, _, _) in enumerate(tgt)}
        blocks = {}
        for k, (i, a, b) in enumerate(src):
            if i - 1 in tpos:
                blocks[(tpos[i - 1], k)] = self.M.diff(i).kron(b.identity())
            if i in tpos:
                m = a.identity().kron(self.N.diff(n - i))
                blocks[(tpos[i], k)] = -m if i % 2 else m
        rows = [[x + y for x in a.twists for y in b.twists] for _, a, b in tgt]
        cols = [[x + y for x in a.twists for y in b.twists] for _, a, b in src]
        return Matrix.block(R, rows, cols, blocks)


class HomComplex(ChainComplex):
    """``Hom(M, N)`` with ``d(f) = d f - (-1)^|f| f d``."""

    def __init__(self, M: ChainComplex, N: ChainComplex):
        super().__init__(M.ring)
        if M.ring != N.ring:
            raise ComplexError("Hom arguments over different rings")
        self.M, self.N = M, N
        mlo, mhi = M.bounds()
        nlo, nhi = N.bounds()
        if M.period is not None and nlo is not None and nhi is not None:
            # Hom(M_{i-p}, N) = Hom(M_i(-t), N) = Hom(M_i, N)(t)
            self.period = M.period

    def bounds(self):
        mlo, mhi = self.M.bounds()
        nlo, nhi = self.N.bounds()
        lo = None if mhi is None or nlo is None else nlo - mhi
        hi = None if mlo is None or nhi is None else nhi - mlo
        return lo, hi

    def indices(self, n: int) -> range:
        mlo, mhi = self.M.bounds()
        nlo, nhi = self.N.bounds()
        return _index_range(
            mlo, mhi, None if nlo is None else nlo - n, None if nhi is None else nhi - n, "Hom product", n
        )

    def layout(self, n: int) -> list[tuple[int, Module, Module]]:
        return [(i, self.M.module(i), self.N.module(i + n)) for i in self.indices(n)]

    def _module(self, n):
        return Module.direct_sum(self.ring, [Module.hom(a, b) for _, a, b in self.layout(n)])

    def _diff(self, n):
        R = self.ring
        src = self.layout(n)
        tgt = self.layout(n - 1)
        tpos = {i: k for k, (i, _, _) in enumerate(tgt)}
        sign = 1 if n % 2 else -1  # -(-1)^n
        blocks = {}
        for k, (i, a, b) in enumerate(src):
            if i in tpos:
                blocks[(tpos[i], k)] = Matrix.identity(R, [-t for t in a.twists]).kron(self.N.diff(i + n))
            if i + 1 in tpos:
                m = self.M.diff(i + 1).dual().kron(b.identity())
                blocks[(tpos[i + 1], k)] = m if sign > 0 else -m
        rows = [[y - x for x in a.twists for y in b.twists] for _, a, b in tgt]
        cols = [[y - x for x in a.twists for y in b.twists] for _, a, b in src]
        return Matrix.block(R, rows, cols, blocks)


def tensor_complex(m, n) -> TensorComplex:
    """``M (x) N``; a module argument is read as a complex in degree 0."""
    return TensorComplex(_as_complex(m), _as_complex(n))


def hom_complex(m, n) -> HomComplex:
    return HomComplex(_as_complex(m), _as_complex(n))


class PinchedTensor(ChainComplex):
    """``T [x] A``: ``T>=0 (x) A>=0`` in degrees ``>= 0`` and
    ``T<=-1 (x) S(A<=-1)`` in degrees ``<= -1``, bridged by ``dT_0 (x) dA_0``."""

    def __init__(self, T: ChainComplex, A: ChainComplex):
        super().__init__(T.ring)
        self.T, self.A = T, A
        self.upper = TensorComplex(hard_trunc_below(T, 0), hard_trunc_below(A, 0))
        self.lower = TensorComplex(hard_trunc_above(T, -1), shift(hard_trunc_above(A, -1), 1))
        self.period = _seam_period(self, T.period, A)

    def bounds(self):
        return self.lower.bounds()[0], self.upper.bounds()[1]

    def part(self, n: int) -> TensorComplex:
        return self.upper if n >= 0 else self.lower

    def _module(self, n):
        return self.part(n).module(n)

    def _diff(self, n):
        if n == 0:
            return self.bridge()
        return self.part(n).diff(n)

    def bridge(self) -> Matrix:
        return self.T.diff(0).kron(self.A.diff(0))


class PinchedHom(ChainComplex):
    """``pHom(T, A)``: ``Hom(T<=-1, S^-1(A>=1))`` in degrees ``>= 1`` and
    ``Hom(T>=0, A<=0)`` in degrees ``<= 0``, bridged by ``f -> dA_1 f dT_0``."""

    def __init__(self, T: ChainComplex, A: ChainComplex):
        super().__init__(T.ring)
        self.T, self.A = T, A
        self.upper = HomComplex(hard_trunc_above(T, -1), shift(hard_trunc_below(A, 1), -1))
        self.lower = HomComplex(hard_trunc_below(T, 0), hard_trunc_above(A, 0))
        self.period = _seam_period(self, T.period, A)

    def bounds(self):
        return self.lower.bounds()[0], self.upper.bounds()[1]

    def part(self, n: int) -> HomComplex:
        return self.upper if n >= 1 else self.lower

    def _module(self, n):
        return self.part(n).module(n)

    def _diff(self, n):
        if n == 1:
            return self.bridge()
        return self.part(n).diff(n)

    def bridge(self) -> Matrix:
        return self.T.diff(0).dual().kron(self.A.diff(1))


def _seam_period(c: ChainComplex, candidate, A: ChainComplex):
    """The period of a pinched complex with periodic T and bounded A, if any.

    Far from the pinch and from the support of A every degree is the same
    finite sum of shifted copies of T, so periodicity only needs checking
    on a band one period wider than that transition zone.
    """
    alo, ahi = A.bounds()
    if candidate is None or alo is None or ahi is None:
        return None
    p, t = candidate
    for n in range(min(alo, -1) - p - 2, max(ahi, 1) + p + 3):
        if c.module(n + p) != c.module(n).twisted(t) or c.diff(n + p) != c.diff(n).twisted(t):
            return None
    return candidate


def pinched_tensor(t: ChainComplex, a: ChainComplex) -> PinchedTensor:
    return PinchedTensor(t, a)


def pinched_hom(t: ChainComplex, a: ChainComplex) -> PinchedHom:
    return PinchedHom(t, a)


# -- induced maps -----------------------------------------------------------


def _block_map(R: Ring, src_layout, tgt_layout, comp) -> Matrix:
    """Block-diagonal matrix from ``comp(i, a, b, a', b')`` on shared indices."""
    tpos = {i: k for k, (i, _, _) in enumerate(tgt_layout)}
    blocks = {}
    for k, (i, a, b) in enumerate(src_layout):
        if i in tpos:
            _, a2, b2 = tgt_layout[tpos[i]]
            blocks[(tpos[i], k)] = comp(i, a, b, a2, b2)
    return blocks, tpos


def tensor_map(f: ChainMap, g: ChainMap, src: TensorComplex, tgt: TensorComplex, n_offset: int = 0) -> ChainMap:
    """``f (x) g`` between tensor complexes built from f's and g's ends.

    ``n_offset`` reindexes the second factor (used for a shifted factor,
    where the shift leaves the matrices alone).
    """
    R = src.ring

    def comp(n):
        sl, tl = src.layout(n), tgt.layout(n)
        blocks, _ = _block_map(R, sl, tl, lambda i, a, b, a2, b2: f(i).kron(g(n - i + n_offset)))
        return Matrix.block(
            R,
            [[x + y for x in a.twists for y in b.twists] for _, a, b in tl],
            [[x + y for x in a.twists for y in b.twists] for _, a, b in sl],
            blocks,
        )

    return ChainMap(src, tgt, comp)


def hom_map(f: ChainMap, g: ChainMap, src: HomComplex, tgt: HomComplex, n_offset: int = 0) -> ChainMap:
    """``Hom(f, g): phi -> g phi f`` from ``Hom(M', N)`` to ``Hom(M, N')``.

    Here ``f: M -> M'`` and ``g: N -> N'``.
    """
    R = src.ring

    def comp(n):
        sl, tl = src.layout(n), tgt.layout(n)
        blocks, _ = _block_map(R, sl, tl, lambda i, a, b, a2, b2: f(i).dual().kron(g(i + n + n_offset)))
        return Matrix.block(
            R,
            [[y - x for x in a.twists for y in b.twists] for _, a, b in tl],
            [[y - x for x in a.twists for y in b.twists] for _, a, b in sl],
            blocks,
        )

    return ChainMap(src, tgt, comp)


def pinched_tensor_map(f: ChainMap, g: ChainMap, src: PinchedTensor, tgt: PinchedTensor) -> ChainMap:
    """``f [x] g: T [x] A -> T' [x] A'`` with ``x (x) y -> f(x) (x) g(y)``."""
    up = tensor_map(f, g, src.upper, tgt.upper)
    down = tensor_map(f, g, src.lower, tgt.lower, n_offset=-1)
    return ChainMap(src, tgt, lambda n: up(n) if n >= 0 else down(n))


def pinched_hom_map(f: ChainMap, g: ChainMap, src: PinchedHom, tgt: PinchedHom) -> ChainMap:
    """``pHom(f, g): pHom(T', A) -> pHom(T, A')`` with ``phi -> g phi f``."""
    up = hom_map(f, g, src.upper, tgt.upper, n_offset=1)
    down = hom_map(f, g, src.lower, tgt.lower)
    return ChainMap(src, tgt, lambda n: up(n) if n >= 1 else down(n))


# -- structural isomorphisms ------------------------------------------------


def commutativity_iso(T: ChainComplex, A: ChainComplex, src: PinchedTensor | None = None, tgt: PinchedTensor | None = None) -> ChainMap:
    """The swap ``T [x] A -> A [x] T`` with the Koszul signs.

    In degrees ``>= 0``: ``t (x) a -> (-1)^{|t||a|} a (x) t``; in degrees
    ``<= -1``, with ``a`` read in A: ``t (x) s(a) -> (-1)^{(|t|+1)(|a|+1)} a (x) s(t)``.
    """
    R = T.ring
    src = src or PinchedTensor(T, A)
    tgt = tgt or PinchedTensor(A, T)

    def comp(n):
        part_s, part_t = src.part(n), tgt.part(n)
        sl, tl = part_s.layout(n), part_t.layout(n)
        toff, off = {}, 0
        for j, a, b in tl:
            toff[j] = (off, a.rank, b.rank)
            off += a.rank * b.rank
        pairs = []
        s = 0
        for i, a, b in sl:
            ra, rb = a.rank, b.rank
            if n >= 0:
                j = n - i
                sign = -1 if (i * j) % 2 else 1
            else:
                j = n - i - 1  # the A-degree of the shifted factor
                sign = -1 if ((i + 1) * (j + 1)) % 2 else 1
            if ra and rb:
                base, tra, trb = toff[j]
                if (tra, trb) != (rb, ra):
                    raise ComplexError(f"swap blocks disagree in degree {n}")
                for x in range(ra):
                    for y in range(rb):
                        pairs.append((s + x * rb + y, base + y * ra + x, sign))
            s += ra * rb
        entries = {(t, u): R.scalar(sg) for u, t, sg in pairs}
        return Matrix(R, tgt.module(n).twists, src.module(n).twists, entries, check=False)

    return ChainMap(src, tgt, comp)


def adjunction_iso(T: ChainComplex, A: ChainComplex, B: Module):
    """``Hom(T [x] A, B) -> pHom(T, Hom(A, B))``, ``psi -> (t -> (a -> psi(t (x) a)))``.

    With the block conventions above the two sides share one basis.  For
    ``n <= 0`` the component is the identity; for ``n >= 1`` the block of
    ``t`` in ``T_i`` carries the sign ``(-1)^(n+i)``, which the shift
    convention ``d(S^-1 X) = -d(X)`` requires.  Returns ``(map, source, target)``.
    """
    R = T.ring
    src = HomComplex(PinchedTensor(T, A), module_complex(B, 0))
    tgt = PinchedHom(T, HomComplex(A, module_complex(B, 0)))

    def comp(n):
        a, b = src.module(n), tgt.module(n)
        if a.twists != b.twists:
            raise ComplexError(f"adjunction bases disagree in degree {n}")
        if n <= 0:
            return Matrix.identity(R, a.twists)
        entries, off = {}, 0
        for i, ti, x in tgt.part(n).layout(n):
            size = ti.rank * x.rank
            c = R.scalar(-1 if (n + i) % 2 else 1)
            for k in range(off, off + size):
                entries[(k, k)] = c
            off += size
        return Matrix(R, b.twists, a.twists, entries, check=False)

    return ChainMap(src, tgt, comp), src, tgt


def swap_iso(T: ChainComplex, B: Module, U: ChainComplex):
    """``Hom(B, pHom(T, U)) -> pHom(T, Hom(B, U))``, ``psi -> (t -> (b -> psi(b)(t)))``.

    A permutation of bases: ``(b*, i, t*, u)`` to ``(i, t*, b*, u)``.
    Returns ``(map, source, target)``.
    """
    R = T.ring
    Bc = module_complex(B, 0)
    inner = PinchedHom(T, U)
    src = HomComplex(Bc, inner)
    tgt = PinchedHom(T, HomComplex(Bc, U))
    nb = B.rank

    def comp(n):
        lay = tgt.part(n).layout(n)  # blocks (i, T_i, Hom(B, U)_{...})
        inner_lay = inner.part(n).layout(n)
        sizes = [(i, a.rank, b.rank) for i, a, b in inner_lay]
        # target index of (i, t, b, u)
        toff, off = {}, 0
        for i, a, hb in lay:
            toff[i] = off
            off += a.rank * hb.rank
        inner_total = sum(ra * ru for _, ra, ru in sizes)
        pairs = {}
        for bb in range(nb):
            s_base = bb * inner_total
            pos = 0
            for i, ra, ru in sizes:
                for t in range(ra):
                    for u in range(ru):
                        s = s_base + pos + t * ru + u
                        tt = toff[i] + t * (nb * ru) + bb * ru + u
                        pairs[(tt, s)] = R.one
                pos += ra * ru
        return Matrix(R, tgt.module(n).twists, src.module(n).twists, pairs, check=False)

    return ChainMap(src, tgt, comp), src, tgt


def check_isomorphism(f: ChainMap, lo: int, hi: int, bound: int | None = None, inverse: ChainMap | None = None) -> Report:
    """Chain-map identity plus degreewise bijectivity on ``[lo, hi]``.

    Bijectivity is checked slice by slice: the map must carry the element
    lattice onto the target's and the relations onto the target's.  If an
    inverse is supplied both composites must be identity matrices.
    """
    rep = verify_chain_map(f, lo, hi, bound)
    S, T = f.source, f.target
    R = S.ring
    for i in range(lo, hi + 1):
        m = f(i)
        a, b = S.module(i), T.module(i)
        if m.shape[0] != m.shape[1]:
            rep.fail(i, "component is not square")
            continue
        rng = internal_range(S, [i], bound) if R.is_graded else (0, 0)
        if rng is None:
            continue
        for d in range(rng[0], rng[1] + 1):
            Sa, Ra = a.lattices(d)
            Sb, Rb = b.lattices(d)
            M = m.slice(d)
            if image(M, Sa, Sb.m) != Sb or image(M, Ra, Rb.m) != Rb:
                rep.fail(i, f"component is not bijective in internal degree {d}")
                break
        if inverse is not None:
            g = inverse(i)
            if (g @ m) != a.identity() or (m @ g) != b.identity():
                rep.fail(i, "composite with the inverse is not the identity")
    return rep


def check_truncation_equalities(c: PinchedTensor | PinchedHom, lo: int, hi: int, bound: int | None = None) -> Report:
    """``d^2 = 0`` and the truncation equalities, as literal matrix equalities.

    For ``T [x] A``: the part in degrees ``>= 0`` is ``T>=0 (x) A>=0`` and the
    part in degrees ``<= -1`` is ``T<=-1 (x) S(A<=-1)``.  For ``pHom(T, A)``:
    degrees ``>= 1`` give ``Hom(T<=-1, S^-1(A>=1))`` and degrees ``<= 0`` give
    ``Hom(T>=0, A<=0)``.  The comparison complexes are rebuilt from scratch.
    """
    rep = verify_complex(c, lo, hi, bound)
    T, A = c.T, c.A
    if isinstance(c, PinchedTensor):
        cut = 0
        above = TensorComplex(hard_trunc_below(T, 0), hard_trunc_below(A, 0))
        below = TensorComplex(hard_trunc_above(T, -1), shift(hard_trunc_above(A, -1), 1))
    else:
        cut = 1
        above = HomComplex(hard_trunc_above(T, -1), shift(hard_trunc_below(A, 1), -1))
        below = HomComplex(hard_trunc_below(T, 0), hard_trunc_above(A, 0))
    for n in range(lo, hi + 1):
        ref = above if n >= cut else below
        if c.module(n) != ref.module(n):
            rep.fail(n, "module differs from the truncation formula")
        # differentials inside one part; the bridge n == cut is checked by d^2 = 0
        if n != cut and n - 1 >= lo and c.diff(n) != ref.diff(n):
            rep.fail(n, "differential differs from the truncation formula")
    bridge = c.diff(cut)
    expected = T.diff(0).kron(A.diff(0)) if cut == 0 else T.diff(0).dual().kron(A.diff(1))
    if bridge != expected:
        rep.fail(cut, "bridge differential differs from its formula")
    return rep
