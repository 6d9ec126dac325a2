"""Coefficient rings: prime fields, Z/n, and graded quotients of polynomial rings.

Every backend is presented the same way: a (possibly empty) set of weighted
variables over Z/q, modulo a homogeneous ideal, truncated at an internal
degree bound.  Z/n and F_p simply have no variables and bound 0.

Elements are canonical tuples of ``(exponents, coefficient)`` pairs sorted
by exponent, with coefficients reduced into ``[0, q)`` and every monomial
standard with respect to the ideal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

Monomial = tuple[int, ...]
Elem = tuple[tuple[Monomial, int], ...]


class RingError(ValueError):
    """Malformed ring specification or element."""


class DegreeBoundError(RingError):
    """A computation needed internal degrees above the ring's bound."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, or None."""
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


@dataclass(frozen=True)
class RingSpec:
    """Declarative description of a coefficient ring.

    ``kind`` is one of ``prime-field``, ``int-mod`` or ``graded-quotient``.
    For the first two, ``modulus`` is p or n.  For graded quotients
    ``modulus`` is the (prime) characteristic, ``variables`` pairs names
    with positive internal degrees, and ``relations`` are polynomial
    strings that must be homogeneous.
    """

    kind: str
    modulus: int
    variables: tuple[tuple[str, int], ...] = ()
    relations: tuple[str, ...] = ()
    degree_bound: int = 0
    self_injective: bool | None = None

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "modulus": self.modulus}
        if self.kind == "graded-quotient":
            d["variables"] = {name: deg for name, deg in self.variables}
            d["relations"] = list(self.relations)
            d["degree_bound"] = self.degree_bound
        if self.self_injective is not None:
            d["self_injective"] = self.self_injective
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RingSpec":
        kind = d.get("kind")
        if kind not in ("prime-field", "int-mod", "graded-quotient"):
            raise RingError(f"unknown ring kind {kind!r}")
        modulus = d.get("modulus", d.get("characteristic"))
        if not isinstance(modulus, int):
            raise RingError("ring modulus must be an integer")
        variables = tuple((str(k), int(v)) for k, v in (d.get("variables") or {}).items())
        relations = tuple(str(r) for r in (d.get("relations") or ()))
        return cls(
            kind=kind,
            modulus=modulus,
            variables=variables,
            relations=relations,
            degree_bound=int(d.get("degree_bound", 0)),
            self_injective=d.get("self_injective"),
        )


def prime_field(p: int) -> "Ring":
    return make_ring(RingSpec("prime-field", p))


def int_mod(n: int) -> "Ring":
    return make_ring(RingSpec("int-mod", n))


def graded_quotient(p: int, variables: dict[str, int], relations, degree_bound: int, **kw) -> "Ring":
    return make_ring(
        RingSpec(
            "graded-quotient",
            p,
            tuple(variables.items()),
            tuple(relations),
            degree_bound,
            kw.get("self_injective"),
        )
    )


def make_ring(spec: RingSpec) -> "Ring":
    if spec.kind == "prime-field":
        if not is_prime(spec.modulus):
            raise RingError(f"{spec.modulus} is not prime")
    elif spec.kind == "int-mod":
        if spec.modulus < 2:
            raise RingError("int-mod needs n >= 2")
    else:
        if not is_prime(spec.modulus):
            raise RingError(f"characteristic {spec.modulus} is not prime")
        if not spec.variables:
            raise RingError("graded quotient needs at least one variable")
        if any(deg <= 0 for _, deg in spec.variables):
            raise RingError("variable degrees must be positive")
        if len({n for n, _ in spec.variables}) != len(spec.variables):
            raise RingError("duplicate variable names")
        if spec.degree_bound < 0:
            raise RingError("degree bound must be non-negative")
    ring = Ring(spec)
    ring._relations  # parse eagerly so bad relations fail here
    return ring


@dataclass(frozen=True, eq=False)
class Ring:
    spec: RingSpec
    _nf: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    # -- basic attributes ---------------------------------------------------

    @property
    def q(self) -> int:
        """Modulus of the coefficient group Z/q."""
        return self.spec.modulus

    @property
    def is_graded(self) -> bool:
        return self.spec.kind == "graded-quotient"

    @property
    def coefficients_form_field(self) -> bool:
        return is_prime(self.q)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.spec.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.spec.variables)

    @property
    def bound(self) -> int:
        return self.spec.degree_bound if self.is_graded else 0

    @property
    def local_prime(self) -> int | None:
        """The residue characteristic when the ring is local, else None."""
        pp = prime_power(self.q)
        return pp[0] if pp else None

    @property
    def self_injective(self) -> bool:
        if self.spec.self_injective is not None:
            return self.spec.self_injective
        if not self.is_graded:
            return True  # Z/n is quasi-Frobenius
        return False

    def __str__(self) -> str:
        if not self.is_graded:
            return f"Z/{self.q}" if self.spec.kind == "int-mod" else f"F_{self.q}"
        rels = ", ".join(self.spec.relations)
        return f"F_{self.q}[{','.join(self.names)}]/({rels})"

    # -- monomials and normal forms ----------------------------------------

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def _monomials_of_degree(self, d: int) -> list[Monomial]:
        n = len(self.weights)
        if n == 0:
            return [()] if d == 0 else []
        out = []

        def rec(i, rem, acc):
            if i == n - 1:
                if rem % self.weights[i] == 0:
                    out.append(tuple(acc + [rem // self.weights[i]]))
                return
            for e in range(rem // self.weights[i] + 1):
                rec(i + 1, rem - e * self.weights[i], acc + [e])

        rec(0, d, [])
        return sorted(out, reverse=True)

    @cached_property
    def _relations(self) -> list[dict[Monomial, int]]:
        rels = []
        for text in self.spec.relations:
            poly = self._parse_raw(text)
            degs = {self.mono_degree(m) for m in poly}
            if len(degs) > 1:
                raise RingError(f"relation {text!r} is not homogeneous")
            if poly:
                rels.append(poly)
        return rels

    def _slice_tables(self, d: int):
        """Standard monomials of degree d and the normal-form table."""
        if d in self._nf:
            return self._nf[d]
        if d > self.bound:
            raise DegreeBoundError(f"internal degree {d} exceeds bound {self.bound}")
        monos = self._monomials_of_degree(d)
        index = {m: k for k, m in enumerate(monos)}
        p = self.q
        rows = []
        for rel in self._relations:
            rd = self.mono_degree(next(iter(rel)))
            if rd > d:
                continue
            for m in self._monomials_of_degree(d - rd):
                row = [0] * len(monos)
                for rm, c in rel.items():
                    prod = tuple(a + b for a, b in zip(rm, m))
                    row[index[prod]] = (row[index[prod]] + c) % p
                rows.append(row)
        pivots = _rref_mod_p(rows, p)
        pivot_cols = {c for c, _ in pivots}
        standard = [m for k, m in enumerate(monos) if k not in pivot_cols]
        std_index = {m: k for k, m in enumerate(standard)}
        table: dict[Monomial, dict[int, int]] = {}
        for m in standard:
            table[m] = {std_index[m]: 1}
        for c, row in pivots:
            vec = {}
            for k, v in enumerate(row):
                if v and k != c:
                    vec[std_index[monos[k]]] = (-v) % p
            table[monos[c]] = vec
        self._nf[d] = (standard, table)
        return self._nf[d]

    def standard_monomials(self, d: int) -> list[Monomial]:
        """Monomial basis of the degree-d slice (empty for d < 0)."""
        if d < 0:
            return []
        return self._slice_tables(d)[0]

    def slice_dim(self, d: int) -> int:
        return len(self.standard_monomials(d))

    # -- element arithmetic -------------------------------------------------

    def _canon(self, poly: dict[Monomial, int]) -> Elem:
        acc: dict[Monomial, int] = {}
        for m, c in poly.items():
            c %= self.q
            if not c:
                continue
            d = self.mono_degree(m)
            if d > self.bound:
                raise DegreeBoundError(f"term of degree {d} exceeds bound {self.bound}")
            standard, table = self._slice_tables(d)
            for k, v in table[m].items():
                sm = standard[k]
                acc[sm] = (acc.get(sm, 0) + c * v) % self.q
        return tuple(sorted((m, c) for m, c in acc.items() if c))

    @property
    def zero(self) -> Elem:
        return ()

    @property
    def one(self) -> Elem:
        return self._canon({(0,) * len(self.weights): 1})

    def scalar(self, c: int) -> Elem:
        return self._canon({(0,) * len(self.weights): c})

    def var(self, name: str) -> Elem:
        i = self.names.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(self.weights)))
        return self._canon({m: 1})

    def monomial(self, m: Monomial, c: int = 1) -> Elem:
        return self._canon({m: c})

    def add(self, a: Elem, b: Elem) -> Elem:
        if not a:
            return b
        if not b:
            return a
        acc = dict(a)
        for m, c in b:
            acc[m] = (acc.get(m, 0) + c) % self.q
        return tuple(sorted((m, c) for m, c in acc.items() if c))

    def neg(self, a: Elem) -> Elem:
        return tuple((m, (-c) % self.q) for m, c in a)

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def mul(self, a: Elem, b: Elem) -> Elem:
        if not a or not b:
            return ()
        acc: dict[Monomial, int] = {}
        for m1, c1 in a:
            for m2, c2 in b:
                m = tuple(x + y for x, y in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return self._canon(acc)

    def scale(self, c: int, a: Elem) -> Elem:
        c %= self.q
        if not c:
            return ()
        return tuple((m, (c * v) % self.q) for m, v in a if (c * v) % self.q)

    def degree(self, a: Elem) -> int | None:
        """Internal degree of a homogeneous element; None for zero."""
        if not a:
            return None
        degs = {self.mono_degree(m) for m, _ in a}
        if len(degs) != 1:
            raise RingError(f"element {self.format(a)} is not homogeneous")
        return degs.pop()

    def in_maximal_ideal(self, a: Elem) -> bool:
        """Membership in the maximal ideal of a local backend."""
        if not a:
            return True
        if self.is_graded:
            return all(self.mono_degree(m) > 0 for m, _ in a)
        p = self.local_prime
        if p is None:
            raise RingError(f"{self} is not local")
        return all(c % p == 0 for _, c in a)

    # -- parsing and printing ----------------------------------------------

    def _parse_raw(self, text: str) -> dict[Monomial, int]:
        s = str(text).replace(" ", "")
        if not s:
            raise RingError("empty element")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]*", s)
        if "".join(terms) != s:
            raise RingError(f"cannot parse {text!r}")
        poly: dict[Monomial, int] = {}
        n = len(self.weights)
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            body = term[1:]
            if not body:
                raise RingError(f"dangling sign in {text!r}")
            coeff = 1
            exps = [0] * n
            for factor in body.split("*"):
                if re.fullmatch(r"\d+", factor):
                    coeff *= int(factor)
                    continue
                mt = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(\d+))?", factor)
                if not mt or mt.group(1) not in self.names:
                    raise RingError(f"unknown factor {factor!r} in {text!r}")
                exps[self.names.index(mt.group(1))] += int(mt.group(2) or 1)
            m = tuple(exps)
            poly[m] = poly.get(m, 0) + sign * coeff
        return poly

    def parse(self, text) -> Elem:
        if isinstance(text, int):
            return self.scalar(text)
        return self._canon(self._parse_raw(text))

    def format(self, a: Elem) -> str:
        if not a:
            return "0"
        parts = []
        for m, c in sorted(a, key=lambda t: (self.mono_degree(t[0]), [-e for e in t[0]])):
            factors = []
            for name, e in zip(self.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def to_plain(self, a: Elem):
        """File-format form: an int for coefficient rings, else a string."""
        if not self.is_graded:
            return a[0][1] if a else 0
        return self.format(a)

    # -- slices -------------------------------------------------------------

    def mult_vector(self, f: Elem, m: Monomial) -> dict[int, int]:
        """Coordinates of f*m in the standard basis of its degree."""
        out: dict[int, int] = {}
        d = None
        for fm, c in f:
            prod = tuple(a + b for a, b in zip(fm, m))
            d = self.mono_degree(prod)
            _, table = self._slice_tables(d)
            for k, v in table[prod].items():
                out[k] = (out.get(k, 0) + c * v) % self.q
        return {k: v for k, v in out.items() if v}

    def slice_vector_to_elem(self, d: int, coords) -> Elem:
        std = self.standard_monomials(d)
        return self._canon({m: c for m, c in zip(std, coords) if c})


def _rref_mod_p(rows: list[list[int]], p: int) -> list[tuple[int, list[int]]]:
    """Reduced row echelon form over F_p; returns (pivot column, row) pairs."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[tuple[int, list[int]]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append((c, r))
        r += 1
        if r == len(rows):
            break
    return [(c, rows[i]) for c, i in pivots]

