"""Exact linear algebra over Z/q through integer lattices.

A submodule of (Z/q)^m is handled as its preimage in Z^m: a full-rank
lattice containing qZ^m.  Such a lattice is stored as an upper-triangular
basis whose pivots divide q.  Kernels, images, preimages, sums and
intersections all reduce to inserting vectors into this echelon form, and
subquotients are classified by Smith normal form.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vector = list[int]


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class Lattice:
    """Full-rank sublattice of Z^m that contains qZ^m."""

    __slots__ = ("m", "q", "rows")

    def __init__(self, m: int, q: int, gens: Iterable[Sequence[int]] = ()):
        self.m = m
        self.q = q
        self.rows: list[Vector] = [[q if j == c else 0 for j in range(m)] for c in range(m)]
        for g in gens:
            self.add(g)

    @classmethod
    def whole(cls, m: int, q: int) -> "Lattice":
        L = cls(m, q)
        L.rows = [[1 if j == c else 0 for j in range(m)] for c in range(m)]
        return L

    def copy(self) -> "Lattice":
        L = Lattice.__new__(Lattice)
        L.m, L.q, L.rows = self.m, self.q, [r[:] for r in self.rows]
        return L

    def add(self, v: Sequence[int]) -> None:
        q, m, rows = self.q, self.m, self.rows
        v = [x % q for x in v]
        for c in range(m):
            vc = v[c]
            if not vc:
                continue
            row = rows[c]
            p = row[c]
            if vc % p == 0:
                k = vc // p
                v = [(a - k * b) % q for a, b in zip(v, row)]
                continue
            g, s, t = egcd(p, vc)
            new = [s * a + t * b for a, b in zip(row, v)]
            other = [((p // g) * b - (vc // g) * a) % q for a, b in zip(row, v)]
            self._reduce_row(new, c)
            rows[c] = new
            v = other

    def _reduce_row(self, row: Vector, c: int) -> None:
        for j in range(c + 1, self.m):
            pj = self.rows[j][j]
            if row[j] < 0 or row[j] >= pj:
                k = row[j] // pj
                if k:
                    rj = self.rows[j]
                    for i in range(j, self.m):
                        row[i] -= k * rj[i]

    def contains(self, v: Sequence[int]) -> bool:
        v = [x % self.q for x in v]
        for c in range(self.m):
            if not v[c]:
                continue
            p = self.rows[c][c]
            if v[c] % p:
                return False
            k = v[c] // p
            v = [(a - k * b) % self.q for a, b in zip(v, self.rows[c])]
        return True

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.m == other.m
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    def __add__(self, other: "Lattice") -> "Lattice":
        L = self.copy()
        for r in other.rows:
            L.add(r)
        return L

    def pivots(self) -> list[int]:
        return [self.rows[c][c] for c in range(self.m)]

    def order_mod_q(self) -> int:
        """Cardinality of L / qZ^m."""
        out = 1
        for p in self.pivots():
            out *= self.q // p
        return out

    def generators(self) -> list[Vector]:
        """Rows that are not redundant modulo qZ^m, reduced into [0, q)."""
        return [[x % self.q for x in r] for c, r in enumerate(self.rows) if r[c] != self.q]

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Integer coefficients of v in the echelon basis (v must lie in L)."""
        v = list(v)
        out = []
        for c in range(self.m):
            p = self.rows[c][c]
            if v[c] % p:
                raise ValueError("vector not in lattice")
            k = v[c] // p
            out.append(k)
            if k:
                v = [a - k * b for a, b in zip(v, self.rows[c])]
        return out


def image(A: Sequence[Sequence[int]], L: Lattice, rows_out: int) -> Lattice:
    """The lattice A(L) + qZ^rows_out."""
    out = Lattice(rows_out, L.q)
    if not A or rows_out == 0:
        return out
    for r in L.rows:
        out.add([sum(a * x for a, x in zip(Ai, r)) for Ai in A])
    return out


def image_of_columns(A: Sequence[Sequence[int]], rows_out: int, q: int) -> Lattice:
    out = Lattice(rows_out, q)
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        out.add([A[i][j] for i in range(rows_out)])
    return out


def preimage(A: Sequence[Sequence[int]], target: Lattice, domain: Lattice) -> Lattice:
    """The lattice ``{v in domain : A v in target}``.

    Works in Z^(b+a) with the target coordinates first; the echelon rows
    whose pivot lands in the domain block span the intersection with
    ``0 x Z^a``.
    """
    a = domain.m
    b = target.m
    q = domain.q
    if a == 0:
        return Lattice(0, q)
    G = Lattice(b + a, q)
    for r in domain.rows:
        Ar = [sum(x * y for x, y in zip(Ai, r)) for Ai in A] if b else []
        G.add(Ar + list(r))
    for r in target.rows:
        G.add(list(r) + [0] * a)
    out = Lattice(a, q)
    for c in range(b, b + a):
        out.add(G.rows[c][b:])
    return out


def intersect(L1: Lattice, L2: Lattice) -> Lattice:
    ident = [[1 if i == j else 0 for j in range(L1.m)] for i in range(L1.m)]
    return preimage(ident, L2, L1)


def _pivot_gcd(p: int, x: int) -> tuple[int, int, int]:
    # plain elimination when the pivot already divides x, so rows never swap back and forth
    if x % p == 0:
        return p, 1, 0
    return egcd(p, x)


def smith_diagonal(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Entries are positive and each divides the next.
    """
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        M[t], M[i0] = M[i0], M[t]
        for r in M:
            r[t], r[j0] = r[j0], r[t]
        while True:
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, rows):
                    if M[i][t]:
                        g, s, u = _pivot_gcd(M[t][t], M[i][t])
                        a, b = M[t][t] // g, M[i][t] // g
                        rt, ri = M[t], M[i]
                        M[t] = [s * x + u * y for x, y in zip(rt, ri)]
                        M[i] = [a * y - b * x for x, y in zip(rt, ri)]
                        changed = True
                for j in range(t + 1, cols):
                    if M[t][j]:
                        g, s, u = _pivot_gcd(M[t][t], M[t][j])
                        a, b = M[t][t] // g, M[t][j] // g
                        for r in M:
                            x, y = r[t], r[j]
                            r[t], r[j] = s * x + u * y, a * y - b * x
                        changed = True
            pivot = M[t][t]
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % pivot), None)
            if bad is None:
                break
            # fold the offending row in; the next column pass shrinks the pivot
            M[t] = [x + y for x, y in zip(M[t], M[bad])]
        diag.append(abs(pivot))
        t += 1
    return diag


def smith_normal_form(m: Sequence[Sequence[int]], n: int) -> list[int]:
    """Invariant factors of coker([m | n*I]) over Z, factors of 1 dropped."""
    rows = len(m)
    aug = [list(m[i]) + [n if j == i else 0 for j in range(rows)] for i in range(rows)]
    return [d for d in smith_diagonal(aug) if d != 1]


def quotient_invariants(big: Lattice, small: Lattice) -> tuple[int, ...]:
    """Invariant factors of ``big / small`` (small must lie in big)."""
    if big.m == 0:
        return ()
    q = big.q
    if _is_prime(q):
        order_big = big.order_mod_q()
        order_small = small.order_mod_q()
        if order_big % order_small:
            raise ValueError("sublattice is not contained")
        idx = order_big // order_small
        k = 0
        while idx > 1:
            idx //= q
            k += 1
        return (q,) * k
    C = [big.coordinates(r) for r in small.rows]
    return tuple(sorted(d for d in smith_diagonal(C) if d != 1))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def kernel_mod(A: Sequence[Sequence[int]], ncols: int, q: int) -> Lattice:
    """``{v in Z^ncols : A v = 0 mod q}``."""
    return preimage(A, Lattice(len(A), q), Lattice.whole(ncols, q))
