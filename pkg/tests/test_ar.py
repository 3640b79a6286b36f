import pytest

from gradua.stmod.algebra import make_group_algebra
from gradua.stmod.ar import (PreconditionError, ar_triangle, indecomposable_check, jordan_block, jordan_type,
                             periodicity_check, tate_duality_check)
from gradua.stmod.cohomology import CohomologyRing
from gradua.stmod.koszul import koszul_k
from gradua.stmod.module import FDModule, regular

Z4 = make_group_algebra("cyclic:4")


@pytest.mark.parametrize("i,middle,stable", [(1, [2], [2]), (2, [3, 1], [3, 1]), (3, [4, 2], [2])])
def test_ar_triangles_over_cyclic_four(i, middle, stable):
    tri = ar_triangle(jordan_block(Z4, i))
    assert jordan_type(tri.tau_term) == [i]
    assert jordan_type(tri.middle) == middle
    assert jordan_type(tri.middle_stable) == stable
    assert tri.middle.dim == 2 * i
    w = tri.witness
    assert w["exact"] and w["nonsplit"] and w["almost_split"] and w["exhaustive"]


def test_ar_triangle_rejects_projective():
    with pytest.raises(PreconditionError):
        ar_triangle(jordan_block(Z4, 4))


def test_jordan_type_of_sums():
    m = jordan_block(Z4, 3).direct_sum(jordan_block(Z4, 1), jordan_block(Z4, 3))
    assert jordan_type(m) == [3, 3, 1]


def test_indecomposable_checks():
    V = make_group_algebra("klein_four")
    assert indecomposable_check(jordan_block(Z4, 2)).value is True
    assert indecomposable_check(jordan_block(Z4, 1).direct_sum(jordan_block(Z4, 1))).value is False
    assert indecomposable_check(regular(V)).value is True


def test_periodicity():
    assert periodicity_check([jordan_block(Z4, i) for i in (1, 2, 3)], 0).r == 2
    q8 = make_group_algebra("quaternion8")
    res = periodicity_check([FDModule.trivial(q8)], 1)
    assert res.r == 4 and res.serre_identity
    V = make_group_algebra("klein_four")
    H = CohomologyRing(V, 4)
    res = periodicity_check([koszul_k(H, H.basis(1)[0])], 1)
    assert res.r == 1 and res.serre_identity


def test_klein_four_trivial_module_is_not_periodic():
    V = make_group_algebra("klein_four")
    assert periodicity_check([FDModule.trivial(V)], 1, cap=4).r is None


def test_tate_duality_on_jordan_blocks():
    for i in range(1, 4):
        for j in range(1, 4):
            l, r = tate_duality_check(jordan_block(Z4, i), jordan_block(Z4, j))
            assert l == r
