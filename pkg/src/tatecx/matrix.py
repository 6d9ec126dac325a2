"""Sparse matrices over a coefficient ring, with internal-degree twists.

A matrix describes a map between graded free modules
``R(c_1) + ... + R(c_n) -> R(r_1) + ... + R(r_m)`` where ``R(a)_d = R_{d+a}``.
Entry ``(i, j)`` is homogeneous of degree ``r_i - c_j`` (or zero).  Over the
ungraded backends all twists are zero and only internal degree 0 exists.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .linalg import kernel_mod, smith_normal_form
from .rings import Elem, Ring, RingError

IntMatrix = list[list[int]]


class ShapeError(ValueError):
    """Incompatible matrix shapes or degree labels."""


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries", "_slices")

    def __init__(
        self,
        ring: Ring,
        rows: Sequence[int],
        cols: Sequence[int],
        entries: dict[tuple[int, int], Elem] | None = None,
        check: bool = True,
    ):
        self.ring = ring
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        self._slices: dict[int, IntMatrix] = {}
        if check:
            self._check()

    def _check(self) -> None:
        if not self.ring.is_graded and (any(self.rows) or any(self.cols)):
            raise ShapeError("twists must be zero over an ungraded ring")
        for (i, j), v in self.entries.items():
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise ShapeError(f"entry ({i}, {j}) outside {self.shape}")
            deg = self.ring.degree(v)
            if deg != self.rows[i] - self.cols[j]:
                raise ShapeError(
                    f"entry ({i}, {j}) = {self.ring.format(v)} has degree {deg}, "
                    f"expected {self.rows[i] - self.cols[j]}"
                )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return cls(ring, rows, cols, {}, check=False)

    @classmethod
    def identity(cls, ring: Ring, twists: Sequence[int]) -> "Matrix":
        one = ring.one
        return cls(ring, twists, twists, {(i, i): one for i in range(len(twists))}, check=False)

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[int], cols: Sequence[int], data) -> "Matrix":
        """Build from a nested list of ring elements, ints or strings."""
        entries = {}
        for i, row in enumerate(data):
            if len(row) != len(cols):
                raise ShapeError(f"row {i} has {len(row)} entries, expected {len(cols)}")
            for j, v in enumerate(row):
                e = ring.parse(v) if not isinstance(v, tuple) else v
                if e:
                    entries[(i, j)] = e
        if len(data) != len(rows):
            raise ShapeError(f"{len(data)} rows given, expected {len(rows)}")
        return cls(ring, rows, cols, entries)

    # -- basic structure ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Elem:
        return self.entries.get(ij, ())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"Matrix({self.shape[0]}x{self.shape[1]}, {self.to_lists()})"

    def to_lists(self) -> list[list]:
        plain = self.ring.to_plain
        return [[plain(self[i, j]) for j in range(len(self.cols))] for i in range(len(self.rows))]

    # -- algebra ------------------------------------------------------------

    def _same_ring(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise ShapeError("matrices live over different rings")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        R = self.ring
        by_row: dict[int, list[tuple[int, Elem]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Elem] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = R.add(out.get((i, j), ()), R.mul(a, b))
        return Matrix(R, self.rows, other.cols, out, check=False)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        R = self.ring
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = R.add(out.get(k, ()), v)
        return Matrix(R, self.rows, self.cols, out, check=False)

    def __neg__(self) -> "Matrix":
        R = self.ring
        return Matrix(R, self.rows, self.cols, {k: R.neg(v) for k, v in self.entries.items()}, check=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scaled(self, c: int) -> "Matrix":
        R = self.ring
        return Matrix(R, self.rows, self.cols, {k: R.scale(c, v) for k, v in self.entries.items()}, check=False)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, check=False)

    def dual(self) -> "Matrix":
        """The induced map on duals ``Hom(-, R)``; twists are negated."""
        return Matrix(
            self.ring,
            tuple(-c for c in self.cols),
            tuple(-r for r in self.rows),
            {(j, i): v for (i, j), v in self.entries.items()},
            check=False,
        )

    def twisted(self, t: int) -> "Matrix":
        """Same entries, every twist shifted by t."""
        if not t:
            return self
        return Matrix(
            self.ring,
            tuple(r + t for r in self.rows),
            tuple(c + t for c in self.cols),
            self.entries,
            check=False,
        )

    def kron(self, other: "Matrix") -> "Matrix":
        """Tensor product; index ``(i, k)`` becomes ``i * len(other.rows) + k``."""
        self._same_ring(other)
        R = self.ring
        p, r = other.shape
        rows = tuple(a + b for a in self.rows for b in other.rows)
        cols = tuple(a + b for a in self.cols for b in other.cols)
        out = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                v = R.mul(a, b)
                if v:
                    out[(i * p + k, j * r + l)] = v
        return Matrix(R, rows, cols, out, check=False)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "Matrix":
        """Move row i to ``row_perm[i]`` and column j to ``col_perm[j]``."""
        rows = [0] * len(self.rows)
        for i, t in enumerate(row_perm):
            rows[t] = self.rows[i]
        cols = [0] * len(self.cols)
        for j, t in enumerate(col_perm):
            cols[t] = self.cols[j]
        return Matrix(
            self.ring,
            rows,
            cols,
            {(row_perm[i], col_perm[j]): v for (i, j), v in self.entries.items()},
            check=False,
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        rmap = {i: a for a, i in enumerate(row_idx)}
        cmap = {j: b for b, j in enumerate(col_idx)}
        out = {
            (rmap[i], cmap[j]): v for (i, j), v in self.entries.items() if i in rmap and j in cmap
        }
        return Matrix(
            self.ring, [self.rows[i] for i in row_idx], [self.cols[j] for j in col_idx], out, check=False
        )

    @staticmethod
    def block(ring: Ring, rows: Sequence[Sequence[int]], cols: Sequence[Sequence[int]], blocks) -> "Matrix":
        """Assemble from a dict ``{(bi, bj): Matrix}`` of blocks.

        ``rows`` and ``cols`` give the twists of each block row and column;
        missing blocks are zero.
        """
        roff = [0]
        for r in rows:
            roff.append(roff[-1] + len(r))
        coff = [0]
        for c in cols:
            coff.append(coff[-1] + len(c))
        out: dict[tuple[int, int], Elem] = {}
        for (bi, bj), M in blocks.items():
            if M.rows != tuple(rows[bi]) or M.cols != tuple(cols[bj]):
                raise ShapeError(f"block ({bi}, {bj}) has the wrong labels")
            for (i, j), v in M.entries.items():
                key = (roff[bi] + i, coff[bj] + j)
                out[key] = ring.add(out.get(key, ()), v)
        return Matrix(
            ring, [t for r in rows for t in r], [t for c in cols for t in c], out, check=False
        )

    # -- slices -------------------------------------------------------------

    def slice(self, d: int) -> IntMatrix:
        """Integer matrix of the map on internal degree d.

        The basis of each side is ``(generator, standard monomial)`` with the
        monomials of ``R_{d + twist}`` in the ring's fixed order.
        """
        if d in self._slices:
            return self._slices[d]
        R = self.ring
        row_off = []
        n = 0
        for t in self.rows:
            row_off.append(n)
            n += R.slice_dim(d + t)
        col_monos = []
        for t in self.cols:
            col_monos.append(R.standard_monomials(d + t))
        ncols = sum(len(m) for m in col_monos)
        M = [[0] * ncols for _ in range(n)]
        col_off = []
        c = 0
        for ms in col_monos:
            col_off.append(c)
            c += len(ms)
        for (i, j), f in self.entries.items():
            for k, m in enumerate(col_monos[j]):
                for r, v in R.mult_vector(f, m).items():
                    M[row_off[i] + r][col_off[j] + k] = v
        self._slices[d] = M
        return M


def graded_slice(m: Matrix, d: int) -> IntMatrix:
    """Base-field matrix of m restricted to internal degree d."""
    return m.slice(d)


def slice_dim(ring: Ring, twists: Iterable[int], d: int) -> int:
    return sum(ring.slice_dim(d + t) for t in twists)


def mat_kernel(A: Sequence[Sequence[int]] | Matrix, q: int | None = None, ncols: int | None = None) -> IntMatrix:
    """Columns generating the kernel of A over Z/q.

    Over a prime field the columns form a basis.  A ring matrix over an
    ungraded backend may be passed directly.
    """
    if isinstance(A, Matrix):
        if A.ring.is_graded:
            raise RingError("take a graded slice first")
        q = A.ring.q
        ncols = A.shape[1]
        A = A.slice(0)
    if q is None:
        raise ValueError("modulus required")
    if ncols is None:
        ncols = len(A[0]) if A else 0
    gens = kernel_mod([list(r) for r in A], ncols, q).generators()
    return [[g[i] for g in gens] for i in range(ncols)]


def cokernel_invariants(A: Sequence[Sequence[int]], q: int) -> list[int]:
    """Invariant factors of coker([A | qI]), factors of 1 dropped."""
    return smith_normal_form(A, q)


def int_matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], q: int, inner: int | None = None) -> IntMatrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append([x % q for x in acc])
    return out
