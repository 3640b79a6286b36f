import pytest
from hypothesis import given, settings, strategies as st

from gradua.arith.fields import Field
from gradua.lab import builtins
from gradua.rings.groebner import GroebnerBoundExceeded, is_groebner
from gradua.rings.ops import groebner_basis, hilbert_series, krull_dimension, noether_normalize
from gradua.rings.ring import PresentationError, RingPresentation

from oracles import hilbert_brute

# frozen from oracles.hilbert_brute
FROZEN_DIMS = {
    "B": [1, 2, 2, 1, 0, 0, 0],
    "h_q8": [1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1],
    "m_squared": [1, 2, 0, 0, 0],
    "z_w2": [1, 2, 2, 2, 2],
    "poly3": [1, 3, 6, 10, 15, 21],
}
KRULL = {"poly1": 1, "poly2": 2, "poly3": 3, "klein": 2, "B": 0, "h_q8": 1, "m_squared": 0, "z_w2": 1}


@pytest.mark.parametrize("name", sorted(FROZEN_DIMS))
def test_builtin_hilbert_functions(name):
    r = builtins.ring(name)
    assert [r.dim(n) for n in range(len(FROZEN_DIMS[name]))] == FROZEN_DIMS[name]


@pytest.mark.parametrize("name", sorted(KRULL))
def test_krull_dimension(name):
    assert krull_dimension(builtins.ring(name)) == KRULL[name]


@pytest.mark.parametrize("name", ["poly2", "klein", "h_q8", "z_w2", "poly3"])
def test_noether_normalization_gives_finite_quotient(name):
    r = builtins.ring(name)
    u = noether_normalize(r)
    assert len(u) == KRULL[name]
    assert len({f.degree() for f in u}) <= 1
    if u:
        assert krull_dimension(r.quotient(r.ideal(u))) == 0


def test_hilbert_series_rational_form():
    hs = hilbert_series(builtins.ring("h_q8"), window=(0, 12))
    assert [hs.coefficient(n) for n in range(13)] == FROZEN_DIMS["h_q8"]
    assert hs.pole_order() == 1


def _mono(exps, names):
    parts = [f"{v}^{e}" for v, e in zip(names, exps) if e]
    return "*".join(parts) or "1"


@st.composite
def homogeneous_relations(draw):
    names = ["x", "y", "z"]
    degs = (1, 1, 2)
    from oracles import monomials

    rels, dicts = [], []
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(2, 4))
        mons = monomials(degs, d)
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=4, unique=True))
        rels.append("+".join(_mono(m, names) for m in chosen))
        dicts.append({m: 1 for m in chosen})
    return degs, rels, dicts


@given(homogeneous_relations())
@settings(max_examples=40, deadline=None)
def test_hilbert_function_matches_brute_force(data):
    degs, rels, dicts = data
    r = RingPresentation(Field(2), list(zip(["x", "y", "z"], degs)), rels)
    assert [r.dim(n) for n in range(7)] == [hilbert_brute(degs, dicts, n) for n in range(7)]


@given(homogeneous_relations())
@settings(max_examples=30, deadline=None)
def test_groebner_basis_properties(data):
    degs, rels, _ = data
    r = RingPresentation(Field(2), list(zip(["x", "y", "z"], degs)), rels)
    gb = groebner_basis(r.zero_ideal())
    assert is_groebner(gb)
    for f in r.relations:
        assert not r.nf(f)


def test_groebner_degree_bound():
    r = RingPresentation(Field(2), [("x", 1), ("y", 1), ("z", 1)], ["x^3+y^2*z", "x*y^2+z^3"])
    with pytest.raises(GroebnerBoundExceeded):
        groebner_basis(r.zero_ideal(), max_degree=3)


def test_presentation_errors():
    F = Field(3)
    with pytest.raises(PresentationError):
        RingPresentation(F, [("x", 1)])
    with pytest.raises(PresentationError):
        RingPresentation(Field(2), [("x", 1)], ["x^2+x"])
    with pytest.raises(PresentationError):
        RingPresentation.from_json({"field": {"char": 2}})
    with pytest.raises(PresentationError, match=r"relations\[1\]"):
        RingPresentation.from_json({"field": {"char": 2}, "generators": [{"name": "x", "degree": 1}],
                                    "relations": ["x^2", "x^^3"]})


def test_json_round_trip():
    r = builtins.ring("h_q8")
    r2 = RingPresentation.from_json(r.to_json())
    assert r2 == r and r2.dim(8) == 1
