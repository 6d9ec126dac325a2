import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tatecx.linalg import (
    Lattice,
    egcd,
    image_of_columns,
    intersect,
    kernel_mod,
    quotient_invariants,
    smith_diagonal,
    smith_normal_form,
)


def determinantal_divisors(A):
    """Invariant factors as ratios of gcds of k x k minors."""
    rows, cols = len(A), len(A[0]) if A else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[A[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1 :] for r in M[1:]]) for j in range(len(M)))


small_ints = st.integers(-12, 12)


def matrices(max_rows=3, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    )


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_egcd_gives_bezout_coefficients(a, b):
    g, s, t = egcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


@settings(max_examples=150)
@given(matrices())
def test_smith_diagonal_matches_determinantal_divisors(A):
    assert smith_diagonal(A) == determinantal_divisors(A)


def test_smith_diagonal_divisibility_chain():
    d = smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert d == [2, 6, 12]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_smith_normal_form_of_cokernel_mod_n():
    # coker of (2) on Z/4 is Z/2; of (0) is Z/4; of (1) is zero
    assert smith_normal_form([[2]], 4) == [2]
    assert smith_normal_form([[0]], 4) == [4]
    assert smith_normal_form([[1]], 4) == []


vectors4 = st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), max_size=4)


@settings(max_examples=100)
@given(vectors4, st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_lattice_membership_matches_enumerated_span(gens, v):
    L = Lattice(3, 4, gens)
    group = oracles.span(gens, 3, 4)
    assert L.contains(v) == (tuple(v) in group)
    assert L.order_mod_q() == len(group)


@settings(max_examples=60)
@given(vectors4, vectors4)
def test_sum_and_intersection_match_sets(g1, g2):
    A, B = Lattice(3, 4, g1), Lattice(3, 4, g2)
    SA, SB = oracles.span(g1, 3, 4), oracles.span(g2, 3, 4)
    assert (A + B).order_mod_q() == len(oracles.span(g1 + g2, 3, 4))
    assert intersect(A, B).order_mod_q() == len(SA & SB)


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=3))
def test_kernel_mod_matches_enumeration(A):
    K = kernel_mod(A, 3, 4)
    brute = {v for v in itertools.product(range(4), repeat=3) if oracles.apply(A, v, 4) == (0,) * len(A)}
    assert K.order_mod_q() == len(brute)
    assert all(K.contains(v) for v in brute)


@settings(max_examples=60)
@given(vectors4, vectors4)
def test_quotient_invariants_have_the_enumerated_order(g1, g2):
    big = Lattice(3, 4, g1 + g2)
    small = Lattice(3, 4, g2)
    inv = quotient_invariants(big, small)
    assert math.prod(inv) == big.order_mod_q() // small.order_mod_q()
    assert all(f in (2, 4) for f in inv)


def test_quotient_over_a_prime_field_is_a_dimension():
    big = Lattice.whole(3, 3)
    small = Lattice(3, 3, [[1, 1, 0]])
    assert quotient_invariants(big, small) == (3, 3)


def test_image_of_columns():
    L = image_of_columns([[2, 0], [0, 2]], 2, 4)
    assert L.order_mod_q() == 4
    assert L.contains([2, 2]) and not L.contains([1, 0])


def test_coordinates_reconstruct_the_vector():
    L = Lattice(2, 6, [[2, 3]])
    c = L.coordinates([4, 6])
    v = [sum(k * r[j] for k, r in zip(c, L.rows)) for j in range(2)]
    assert [x % 6 for x in v] == [4, 0]
