import pytest

import oracles
from tatecx.complexes import (
    ChainMap,
    ComplexError,
    UndeterminedDegreeError,
    WindowComplex,
    hard_trunc_above,
    hard_trunc_below,
    homology,
    is_acyclic,
    module_complex,
    sandwich,
    verify_complex,
)
from tatecx.constructions import (
    HomComplex,
    PinchedHom,
    PinchedTensor,
    TensorComplex,
    adjunction_iso,
    check_isomorphism,
    check_truncation_equalities,
    commutativity_iso,
    swap_iso,
)
from tatecx.matrix import Matrix
from tatecx.modules import Module, is_zero_map


def same_degreewise(a, b, lo, hi):
    for n in range(lo, hi + 1):
        if a.module(n).twists != b.module(n).twists:
            return False
        if a.diff(n).to_lists() != b.diff(n).to_lists():
            return False
    return True


def test_tensor_with_r_mod_x_kills_x(ex31):
    N = ex31["x"].module
    C = TensorComplex(ex31["x"].T, module_complex(N))
    assert C.ranks(0, 4) == {i: 1 for i in range(5)}
    for n in range(-3, 4):
        x_map = C.diff(n) if n % 2 else None
        if x_map is not None:
            # odd degrees carry x, which is zero on R/(x)
            assert all(is_zero_map(x_map, C.module(n), C.module(n - 1), d) for d in range(-4, 5))


def test_tensor_basis_and_koszul_sign(ex31_p3):
    T = ex31_p3["x"].T
    C = TensorComplex(hard_trunc_above(hard_trunc_below(T, -2), 2), T)
    assert [i for i, _, _ in C.layout(1)] == [-2, -1, 0, 1, 2]
    assert verify_complex(C, -3, 3, 6).ok
    # column e_{i,1-i}: d_i lands on e_{i-1,1-i}, (-1)^i d_{1-i} on e_{i,-i}; d_odd = x, d_even = y
    assert C.diff(1).to_lists() == [
        ["x", "x", "0", "0", "0"],
        ["0", "2*y", "y", "0", "0"],
        ["0", "0", "x", "x", "0"],
        ["0", "0", "0", "2*y", "y"],
        ["0", "0", "0", "0", "x"],
    ]


def test_infinite_tensor_needs_a_truncation(ex31):
    T = ex31["x"].T
    with pytest.raises(ComplexError, match="infinite"):
        TensorComplex(T, T).module(0)


def test_factors_over_different_rings(ex31, z4):
    with pytest.raises(ComplexError):
        PinchedTensor(ex31["x"].T, z4["2"].T)


def test_hom_of_periodic_complex_into_z2_has_zero_maps(z4):
    H = HomComplex(z4["2"].T, module_complex(z4["2"].module))
    assert [H.module(i).invariants() for i in range(-2, 3)] == [(2,)] * 5
    assert all(is_zero_map(H.diff(i), H.module(i), H.module(i - 1), 0) for i in range(-2, 3))


def test_hom_into_the_ring_is_acyclic(ex31, sq):
    for fx in (ex31, sq):
        T = fx["x"].T
        H = HomComplex(T, module_complex(Module.free(fx.ring, [0])))
        assert verify_complex(H, -4, 4, 6).ok
        assert is_acyclic(H, -4, 4, 6)


def test_pinched_tensor_with_a_sandwich_is_the_plain_tensor(ex31, z4, sq):
    for fx in (ex31, z4, sq):
        for cr in fx.resolutions.values():
            N = cr.module
            assert same_degreewise(PinchedTensor(cr.T, sandwich(N, 0)), TensorComplex(cr.T, module_complex(N)), -4, 4)


def test_pinched_hom_with_a_sandwich_is_the_plain_hom(ex31, z4, sq):
    for fx in (ex31, z4, sq):
        for cr in fx.resolutions.values():
            N = cr.module
            assert same_degreewise(PinchedHom(cr.T, sandwich(N, 1)), HomComplex(cr.T, module_complex(N)), -4, 4)


def test_pinched_tensor_of_square_zero_resolutions(sq):
    P = PinchedTensor(sq["x"].T, sq["y"].T)
    assert P.ranks(-4, 4) == {-4: 4, -3: 3, -2: 2, -1: 1, 0: 1, 1: 2, 2: 3, 3: 4, 4: 5}
    assert is_acyclic(P, -3, 3, 6)


def test_pinched_hom_over_z4(z4):
    T = z4["2"].T
    P = PinchedHom(T, z4.injective["2"])
    # one factor per pair of degrees meeting across the pinch
    assert P.ranks(-3, 3) == {-3: 4, -2: 3, -1: 2, 0: 1, 1: 1, 2: 2, 3: 3}
    h = homology(P, range(-3, 4))
    assert [h.get(i) for i in range(-3, 4)] == [(2,)] * 7
    assert [oracles.descriptor(P, i, 0) for i in range(-2, 3)] == [(2,)] * 5


def test_missing_degree_zero_differential(ex31):
    R = ex31.ring
    bad = WindowComplex(R, 1, 2, [Module.free(R, [0]), Module.free(R, [-1])], {2: Matrix.from_rows(R, [0], [-1], [["x"]])}, below="unknown")
    with pytest.raises(UndeterminedDegreeError):
        PinchedTensor(ex31["x"].T, bad).diff(0)
    with pytest.raises(UndeterminedDegreeError):
        PinchedHom(bad, ex31["x"].T).module(0)


@pytest.mark.parametrize("p", [2, 3])
def test_commutativity_is_a_self_inverse_isomorphism(p, ex31, ex31_p3, sq, sq_p3):
    fixtures = (ex31, sq) if p == 2 else (ex31_p3, sq_p3)
    for fx in fixtures:
        Tx, Ty = fx["x"].T, fx["y"].T
        f = commutativity_iso(Tx, Ty)
        g = commutativity_iso(Ty, Tx)
        assert check_isomorphism(f, -3, 3, 6, inverse=g).ok
        both = g.compose(f)
        for n in range(-3, 4):
            assert both(n).to_lists() == f.source.module(n).identity().to_lists()


@pytest.mark.parametrize("p", [2, 3])
def test_adjunction_is_an_isomorphism(p, ex31, ex31_p3):
    fx = ex31 if p == 2 else ex31_p3
    T, T2 = fx["x"].T, fx["y"].T
    for B in (Module.free(fx.ring, [0]), fx["x"].module):
        m, _, _ = adjunction_iso(T, T2, B)
        assert check_isomorphism(m, -3, 3, 4).ok


def test_swap_over_z4(z4):
    T = z4["2"].T
    m, _, _ = swap_iso(T, z4["2"].module, T)
    assert check_isomorphism(m, -3, 3).ok


def test_a_non_bijective_map_is_reported(z4):
    T = z4["2"].T
    two = Matrix.from_rows(z4.ring, [0], [0], [[2]])
    rep = check_isomorphism(ChainMap(T, T, lambda i: two), -2, 2)
    assert not rep.ok
    assert "not bijective" in rep.failures[0][1]


def test_truncation_equalities_on_square_zero(sq):
    for A in (sq["y"].T, sandwich(sq["y"].module, 0), sandwich(sq["y"].module, 1)):
        for C in (PinchedTensor(sq["x"].T, A), PinchedHom(sq["x"].T, A)):
            assert check_truncation_equalities(C, -4, 4, 6).ok


def _assert_period_holds(c, lo, hi):
    p, t = c.period
    for n in range(lo, hi + 1):
        assert c.module(n + p) == c.module(n).twisted(t), n
        assert c.diff(n + p) == c.diff(n).twisted(t), n


def test_declared_periods_hold(ex31, sq, z4):
    for fx in (ex31, sq, z4):
        for cr in fx.resolutions.values():
            T, N = cr.T, cr.module
            for c in (
                TensorComplex(T, module_complex(N)),
                HomComplex(T, module_complex(N)),
                PinchedTensor(T, sandwich(N, 0)),
                PinchedHom(T, sandwich(N, 1)),
            ):
                assert c.period is not None
                _assert_period_holds(c, -4, 4)


def test_pinched_complexes_without_a_period(sq):
    # a sandwich on the wrong side breaks the pattern at the pinch
    assert PinchedTensor(sq["x"].T, sandwich(sq["y"].module, 1)).period is None
    assert PinchedTensor(sq["x"].T, sq["y"].T).period is None
