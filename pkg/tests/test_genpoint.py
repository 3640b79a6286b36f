import pytest
from hypothesis import given, settings, strategies as st

from gradua.lab import builtins
from gradua.rings.genpoint import DimensionError, generic_closed_point, residue_field_data


def test_klein_certificate():
    r = builtins.ring("klein")
    c = generic_closed_point(r, r.zero_ideal())
    assert [str(g) for g in c.m_ideal.generators] == ["t*a+b"]
    assert c.checks["m_cap_A_equals_p"] is True
    assert c.checks["residue_trivial"] is True
    assert c.checks["dim_A_K_mod_m"] == 1
    assert c.residue_comparison["degree0_extension"] == 1


@given(st.lists(st.tuples(st.integers(0, 4)), min_size=1, max_size=5, unique=True), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_no_nonzero_form_over_the_base_lies_in_m(exps, deg):
    # f(a, b) in (b + t a) iff f(a, t a) = a^deg f(1, t) = 0, impossible for f != 0 over F_2
    r = builtins.ring("klein")
    c = generic_closed_point(r, r.zero_ideal())
    terms = sorted({min(e[0], deg) for e in exps})
    f = "+".join(f"a^{i}*b^{deg - i}" for i in terms)
    g = c.extended_ring.poly(f)
    assert not c.m_ideal.contains(g)


def test_poly3_certificate_shears():
    r = builtins.ring("poly3")
    c = generic_closed_point(r, r.zero_ideal())
    a0, a1, a2 = c.noether_elements
    P = c.extended_ring.poly
    K = c.extension_field
    assert [str(g) for g in c.m_ideal.generators] == [str(a1 - a0 * P.const(K.gen("t1"))),
                                                     str(a2 - a0 * P.const(K.gen("t2")))]
    assert c.checks["m_cap_A_equals_p"] and c.checks["dim_A_K_mod_m"] == 1


def test_poly3_over_a_prime():
    r = builtins.ring("poly3")
    c = generic_closed_point(r, r.ideal(["x+y+z"]))
    assert c.checks["m_cap_A_equals_p"] and c.checks["p_in_sqrt_q"]
    assert c.checks["residue_trivial"]


def test_closed_point_is_degenerate():
    r = builtins.ring("h_q8")
    c = generic_closed_point(r, r.ideal(["x", "y"]))
    assert c.degenerate
    assert c.checks["m_cap_A_equals_p"]


def test_irrelevant_prime_rejected():
    r = builtins.ring("poly2")
    with pytest.raises(DimensionError):
        generic_closed_point(r, r.ideal(["x", "y"]))


@pytest.mark.parametrize("name,gens,expected", [("h_q8", ["x", "y"], (1, 4)), ("poly1", [], (1, 1)),
                                                ("z_w2", ["w"], (1, 1))])
def test_residue_field_data(name, gens, expected):
    r = builtins.ring(name)
    assert tuple(residue_field_data(r, r.ideal(gens))) == expected
