"""Finitely generated graded modules as subquotients of free modules.

A module is stored by a free cover ``F`` together with two optional pieces:

* ``rel``: a matrix into ``F`` whose image is divided out (a presentation);
* ``cond``/``cond_rel``: the module only contains ``v`` in ``F`` with
  ``cond * v`` in the image of ``cond_rel`` (a kernel-type condition).

So the module is ``{v : cond v in im cond_rel} / im rel``.  Presented
modules, kernels, duals and Hom modules all fit this one shape, and every
internal-degree slice is a pair of lattices handled by :mod:`linalg`.
"""

from __future__ import annotations

from typing import Sequence

from .linalg import Lattice, image_of_columns, preimage, quotient_invariants
from .matrix import Matrix, ShapeError
from .rings import Ring


def hcat(ring: Ring, rows: Sequence[int], mats: Sequence[Matrix]) -> Matrix:
    """Place matrices with the same row labels side by side."""
    mats = [m for m in mats if m is not None]
    if not mats:
        return Matrix.zero(ring, rows, ())
    return Matrix.block(ring, [rows], [m.cols for m in mats], {(0, k): m for k, m in enumerate(mats)})


def vcat(ring: Ring, cols: Sequence[int], mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats if m is not None]
    if not mats:
        return Matrix.zero(ring, (), cols)
    return Matrix.block(ring, [m.rows for m in mats], [cols], {(k, 0): m for k, m in enumerate(mats)})


def block_diag(ring: Ring, mats: Sequence[Matrix]) -> Matrix:
    return Matrix.block(
        ring, [m.rows for m in mats], [m.cols for m in mats], {(k, k): m for k, m in enumerate(mats)}
    )


class Module:
    __slots__ = ("ring", "twists", "rel", "cond", "cond_rel", "_lat")

    def __init__(
        self,
        ring: Ring,
        twists: Sequence[int],
        rel: Matrix | None = None,
        cond: Matrix | None = None,
        cond_rel: Matrix | None = None,
    ):
        self.ring = ring
        self.twists = tuple(twists)
        if rel is not None and (rel.rows != self.twists):
            raise ShapeError("relation matrix does not land in the cover")
        if cond is not None and cond.cols != self.twists:
            raise ShapeError("condition matrix does not start at the cover")
        if cond_rel is not None and (cond is None or cond_rel.rows != cond.rows):
            raise ShapeError("condition relations do not match the condition target")
        self.rel = rel if rel is not None and rel.shape[1] else None
        self.cond = cond if cond is not None and cond.shape[0] else None
        self.cond_rel = cond_rel if self.cond is not None and cond_rel is not None and cond_rel.shape[1] else None
        self._lat: dict[int, tuple[Lattice, Lattice]] = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def free(cls, ring: Ring, twists: Sequence[int]) -> "Module":
        return cls(ring, twists)

    @classmethod
    def zero(cls, ring: Ring) -> "Module":
        return cls(ring, ())

    @classmethod
    def presented(cls, presentation: Matrix) -> "Module":
        """The cokernel of a matrix."""
        return cls(presentation.ring, presentation.rows, rel=presentation)

    @classmethod
    def kernel(cls, m: Matrix) -> "Module":
        return cls(m.ring, m.cols, cond=m)

    # -- structure ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def is_free(self) -> bool:
        return self.rel is None and self.cond is None

    @property
    def is_zero_cover(self) -> bool:
        return not self.twists

    def all_twists(self) -> list[int]:
        """Every twist that a slice computation touches."""
        out = list(self.twists)
        if self.rel is not None:
            out += self.rel.cols
        if self.cond is not None:
            out += self.cond.rows
        if self.cond_rel is not None:
            out += self.cond_rel.cols
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Module)
            and self.ring == other.ring
            and self.twists == other.twists
            and self.rel == other.rel
            and self.cond == other.cond
            and self.cond_rel == other.cond_rel
        )

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self) -> str:
        kind = "free" if self.is_free else "sub" if self.rel is None else "quot"
        return f"Module({kind}, twists={list(self.twists)})"

    def identity(self) -> Matrix:
        return Matrix.identity(self.ring, self.twists)

    def twisted(self, t: int) -> "Module":
        if not t:
            return self
        tw = lambda m: None if m is None else m.twisted(t)  # noqa: E731
        return Module(self.ring, [x + t for x in self.twists], tw(self.rel), tw(self.cond), tw(self.cond_rel))

    # -- slices -------------------------------------------------------------

    def slice_dim(self, d: int) -> int:
        return sum(self.ring.slice_dim(d + t) for t in self.twists)

    def lattices(self, d: int) -> tuple[Lattice, Lattice]:
        """``(S, Rel)`` in internal degree d: the element lattice and relations."""
        if d in self._lat:
            return self._lat[d]
        q = self.ring.q
        n = self.slice_dim(d)
        if self.cond is None:
            S = Lattice.whole(n, q)
        else:
            C = self.cond.slice(d)
            m = len(C)
            if self.cond_rel is None:
                target = Lattice(m, q)
            else:
                target = image_of_columns(self.cond_rel.slice(d), m, q)
            S = preimage(C, target, Lattice.whole(n, q))
        if self.rel is None:
            Rel = Lattice(n, q)
        else:
            Rel = image_of_columns(self.rel.slice(d), n, q)
        self._lat[d] = (S, Rel)
        return S, Rel

    def invariants(self, d: int = 0) -> tuple[int, ...]:
        S, Rel = self.lattices(d)
        return quotient_invariants(S, Rel)

    def order(self, d: int = 0) -> int:
        out = 1
        for f in self.invariants(d):
            out *= f
        return out

    # -- algebra ------------------------------------------------------------

    @staticmethod
    def direct_sum(ring: Ring, mods: Sequence["Module"]) -> "Module":
        mods = list(mods)
        if not mods:
            return Module.zero(ring)
        if len(mods) == 1:
            return mods[0]
        twists = [t for m in mods for t in m.twists]
        rel = cond = cond_rel = None
        if any(m.rel is not None for m in mods):
            rel = block_diag(ring, [m.rel if m.rel is not None else Matrix.zero(ring, m.twists, ()) for m in mods])
        if any(m.cond is not None for m in mods):
            cond = block_diag(ring, [m.cond if m.cond is not None else Matrix.zero(ring, (), m.twists) for m in mods])
            cond_rel = block_diag(
                ring,
                [
                    m.cond_rel
                    if m.cond_rel is not None
                    else Matrix.zero(ring, m.cond.rows if m.cond is not None else (), ())
                    for m in mods
                ],
            )
        return Module(ring, twists, rel, cond, cond_rel)

    def dual(self) -> "Module":
        """``Hom(M, R)``; M must be free or presented."""
        return Module.hom(self, Module.free(self.ring, (0,)))

    @staticmethod
    def tensor(A: "Module", B: "Module") -> "Module":
        """``A (x) B`` with generators ordered ``(a, b)``.

        A kernel-type condition is only allowed against a free factor, where
        tensoring is exact.
        """
        R = A.ring
        IA, IB = A.identity(), B.identity()
        twists = [a + b for a in A.twists for b in B.twists]
        rels = []
        if A.rel is not None:
            rels.append(A.rel.kron(IB))
        if B.rel is not None:
            rels.append(IA.kron(B.rel))
        rel = hcat(R, twists, rels) if rels else None
        cond = cond_rel = None
        if A.cond is not None:
            if not B.is_free:
                raise ShapeError("tensoring a kernel-type module needs a free partner")
            cond = A.cond.kron(IB)
            cond_rel = A.cond_rel.kron(IB) if A.cond_rel is not None else None
        if B.cond is not None:
            if not A.is_free:
                raise ShapeError("tensoring a kernel-type module needs a free partner")
            cond = IA.kron(B.cond)
            cond_rel = IA.kron(B.cond_rel) if B.cond_rel is not None else None
        return Module(R, twists, rel, cond, cond_rel)

    @staticmethod
    def hom(A: "Module", B: "Module") -> "Module":
        """``Hom(A, B)`` with generators ordered ``(a*, b)``.

        ``A`` must be free or presented.  A map is a vector in
        ``A.cover* (x) B.cover``; it must land in B and kill the relations of A.
        """
        R = A.ring
        if A.cond is not None:
            raise ShapeError("Hom out of a kernel-type module is not supported")
        IAd = Matrix.identity(R, [-t for t in A.twists])
        IB = B.identity()
        twists = [b - a for a in A.twists for b in B.twists]
        rel = IAd.kron(B.rel) if B.rel is not None else None
        conds, crels = [], []
        if B.cond is not None:
            conds.append(IAd.kron(B.cond))
            crels.append(
                IAd.kron(B.cond_rel) if B.cond_rel is not None else Matrix.zero(R, conds[-1].rows, ())
            )
        if A.rel is not None:
            c = A.rel.dual().kron(IB)
            conds.append(c)
            I1 = Matrix.identity(R, A.rel.dual().rows)
            crels.append(I1.kron(B.rel) if B.rel is not None else Matrix.zero(R, c.rows, ()))
        cond = vcat(R, twists, conds) if conds else None
        cond_rel = block_diag(R, crels) if conds else None
        return Module(R, twists, rel, cond, cond_rel)


def maps_into(m: Matrix, source: Module, target: Module, d: int) -> bool:
    """Does m carry S(source) into S(target) and Rel(source) into Rel(target)?"""
    S0, R0 = source.lattices(d)
    S1, R1 = target.lattices(d)
    M = m.slice(d)
    n = len(M)
    for gens, dest in ((S0.rows, S1), (R0.rows, R1)):
        for v in gens:
            w = [sum(a * x for a, x in zip(row, v)) for row in M] if n else []
            if not dest.contains(w):
                return False
    return True


def is_zero_map(m: Matrix, source: Module, target: Module, d: int) -> bool:
    """Is the induced map on internal degree d zero?"""
    if m.is_zero():
        return True
    S0, _ = source.lattices(d)
    _, R1 = target.lattices(d)
    M = m.slice(d)
    for v in S0.rows:
        w = [sum(a * x for a, x in zip(row, v)) for row in M]
        if not R1.contains(w):
            return False
    return True
