import random

import pytest
from hypothesis import given, settings, strategies as st

from gradua.arith.fields import Field, MalformedElement
from gradua.arith.matrix import Matrix, FieldMismatch, block_diag

from oracles import rank_mod_p

PRIMES = [2, 3, 5, 7]


@st.composite
def int_matrix(draw, p=None):
    p = p or draw(st.sampled_from(PRIMES))
    r = draw(st.integers(1, 7))
    c = draw(st.integers(1, 7))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return p, rows


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_rank_matches_plain_elimination(pm):
    p, rows = pm
    M = Matrix.from_rows(Field(p), rows, len(rows[0]))
    assert M.rank() == rank_mod_p(rows, p)
    assert M.rank() + M.nullity() == M.ncols


@given(int_matrix())
@settings(max_examples=60, deadline=None)
def test_kernel_is_annihilated(pm):
    p, rows = pm
    M = Matrix.from_rows(Field(p), rows, len(rows[0]))
    K = M.kernel()
    assert (M * K).is_zero()
    assert K.rank() == K.ncols == M.nullity()


@given(int_matrix(p=5))
@settings(max_examples=40, deadline=None)
def test_solve_round_trip(pm):
    p, rows = pm
    F = Field(p)
    M = Matrix.from_rows(F, rows, len(rows[0]))
    x = [F(random.Random(len(rows)).randrange(p)) for _ in range(M.ncols)]
    b = M.apply(x)
    sol = M.solve(b)
    assert sol is not None
    assert M.apply(sol) == b


def test_ratfunc_field_arithmetic():
    K = Field(2, ["t"])
    t = K.gen("t")
    x = (t + K.one) / (t * t + t + K.one)
    assert x * x.inverse() == K.one
    assert K.parse(K.format(x)) == x
    assert (t + t) == K.zero


def test_ratfunc_rank_generic_vs_specialized():
    K = Field(2, ["t"])
    t = K.gen("t")
    M = Matrix.from_rows(K, [[t, K.one], [K.one, t]], 2)
    # det = t^2 + 1 = (t+1)^2, nonzero over F_2(t)
    assert M.rank() == 2
    assert M.det() == t * t + K.one


def test_companion_commutant_over_ratfunc():
    K = Field(2, ["t"])
    t = K.gen("t")
    for n in range(1, 5):
        A = Matrix.from_rows(K, [[t if i == j else (K.one if j == i + 1 else K.zero) for j in range(n)]
                                 for i in range(n)], n)
        eye = Matrix.identity(K, n)
        assert (eye.kron(A) - A.T.kron(eye)).nullity() == n


def test_block_diag_and_mismatch():
    F = Field(3)
    D = block_diag(F, [Matrix.identity(F, 2), Matrix.identity(F, 1)])
    assert D.rank() == 3 and D.shape == (3, 3)
    with pytest.raises(FieldMismatch):
        Matrix.identity(F, 2) + Matrix.identity(Field(5), 2)


def test_malformed_scalar():
    with pytest.raises(MalformedElement):
        Field(2, ["t"]).parse("t+(")
