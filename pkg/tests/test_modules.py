from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gradua.lab import builtins
from gradua.modules.graded import ModulePresentation, degreewise_expand, graded_matlis_dual, ring_module
from gradua.modules.localcoh import gorenstein_check_irrelevant, local_cohomology_irrelevant
from gradua.modules.localize import (CertificateError, OutOfScopeError, hom_into_injective,
                                     injective_hull_closed_point, localized_ring, torsion_exponent,
                                     _point_element)

B_DIMS = [1, 2, 2, 1]  # Hilbert function of B, see test_rings


def test_top_local_cohomology_poly2():
    # H^2 of k[x, y] in degree -j is spanned by x^-a y^-b with a, b >= 1, a + b = j
    H = local_cohomology_irrelevant(ModulePresentation.free(builtins.ring("poly2"), [0]), (-8, 8))
    assert [H[0].dim(n) for n in range(-8, 9)] == [0] * 17
    assert [H[1].dim(n) for n in range(-8, 9)] == [0] * 17
    assert [H[2].dim(-j) for j in range(0, 9)] == [max(j - 1, 0) for j in range(0, 9)]
    assert all(H[2].dim(n) == 0 for n in range(0, 9))


def test_top_local_cohomology_poly3():
    H = local_cohomology_irrelevant(ModulePresentation.free(builtins.ring("poly3"), [0]), (-6, 1))
    assert [H[3].dim(-j) for j in range(3, 7)] == [comb(j - 1, 2) for j in range(3, 7)]


@pytest.mark.parametrize("name,status,shift,window", [
    ("poly2", "pass", -2, (-8, 8)),
    ("poly3", "pass", -3, (-5, 2)),
    ("B", "pass", 3, (-8, 8)),
    ("z_w2", "pass", 0, (-8, 8)),    # complete intersection: a = 2 - (1 + 1)
    ("m_squared", "fail", None, (-8, 8)),
])
def test_gorenstein_check(name, status, shift, window):
    rep = gorenstein_check_irrelevant(builtins.ring(name), window)
    assert rep.status == status
    if shift is not None:
        assert rep.shift == shift


def test_non_gorenstein_socle_witness():
    rep = gorenstein_check_irrelevant(builtins.ring("m_squared"), (-8, 8))
    assert rep.witness["socle_dimension"] == 2


@pytest.mark.parametrize("name", ["B", "poly2", "h_q8", "z_w2"])
def test_matlis_dual_is_an_involution(name):
    M = ring_module(builtins.ring(name), (-5, 5))
    D = graded_matlis_dual(M)
    assert D.table() == {n: M.dim(-n) for n in range(-5, 6)}
    DD = graded_matlis_dual(D)
    assert DD.table() == M.table()
    assert DD.check_relations()


def test_localized_ring_h_q8():
    r = builtins.ring("h_q8")
    L = localized_ring(r, r.ideal(["x", "y"]), (-8, 8))
    assert L.table() == {n: B_DIMS[n % 4] for n in range(-8, 9)}


def test_injective_hull_is_third_twist():
    r = builtins.ring("h_q8")
    inj = injective_hull_closed_point(r, r.ideal(["x", "y"]), (-8, 8))
    # (Sigma^3 X)_n = X_{n+3}
    assert inj.table() == {n: B_DIMS[(n + 3) % 4] for n in range(-8, 9)}
    L = localized_ring(r, r.ideal(["x", "y"]), (-12, 12))
    assert inj.table() == L.twist(3).restrict(-8, 8).table()
    assert inj.table() != L.restrict(-8, 8).table()


@pytest.mark.parametrize("gens,exponent", [(["x", "y"], 1), (["x"], 2), (["x+y"], 2), ([], 4), (["z"], 0)])
def test_torsion_exponents_h_q8(gens, exponent):
    r = builtins.ring("h_q8")
    m = r.ideal(["x", "y"])
    N = ModulePresentation.cyclic(r, gens)
    assert torsion_exponent(N, m, _point_element(r, m)) == exponent


def test_hom_into_residue_field():
    r = builtins.ring("h_q8")
    res, s = hom_into_injective(ModulePresentation.cyclic(r, ["x", "y"]), r.ideal(["x", "y"]), (-8, 8))
    assert s == 1
    assert res.table() == {n: int(n % 4 == 0) for n in range(-8, 9)}


def test_hom_into_injective_requires_torsion():
    c_ring = builtins.ring("poly2")
    m = c_ring.ideal(["y"])
    with pytest.raises(CertificateError):
        hom_into_injective(ModulePresentation.cyclic(c_ring, ["x*y"]), m, (-4, 4))


def test_irrelevant_point_is_out_of_scope():
    r = builtins.ring("poly2")
    with pytest.raises(OutOfScopeError):
        hom_into_injective(ModulePresentation.cyclic(r, ["x", "y"]), r.ideal(["x", "y"]), (-2, 2))


@given(st.lists(st.sampled_from(["x^2", "y^2", "x*y", "x^2+y^2", "x^3", "y^3"]), max_size=3),
       st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_expand_matches_presentation_dims(rels, shift):
    r = builtins.ring("poly2")
    N = ModulePresentation.cyclic(r, rels, degree=shift)
    E = degreewise_expand(N, (-2, 6))
    assert E.table() == {n: N.dim(n) for n in range(-2, 7)}
    assert E.check_relations()
