"""Koszul objects k//b and M//b for cohomology classes."""

from __future__ import annotations

from gradua.arith.matrix import Matrix
from gradua.stmod.algebra import AlgebraDatum, CapabilityError
from gradua.stmod.cohomology import CohomologyClass, CohomologyRing
from gradua.stmod.functors import base_change, tensor
from gradua.stmod.module import FDModule, HomSpace, strip_projective, syzygy


class DegenerateConeError(ValueError):
    pass


def kernel_of_class(H: CohomologyRing, b: CohomologyClass) -> FDModule:
    """L_b = ker(Omega^d k -> k); the representative is surjective since b is nonzero on the top."""
    if b.is_zero():
        raise DegenerateConeError("the class is zero; its cone is k + Omega^{-d-1} k, not a Koszul object")
    src = H.res.omega(b.degree)
    row = H.representative(b)
    L, _ = src.submodule(row.kernel())
    return L


def koszul_k(H: CohomologyRing, b: CohomologyClass) -> FDModule:
    """k//b, the cone of b : k -> Omega^{-d} k, computed as Omega^{-d-1} L_b."""
    L = kernel_of_class(H, b)
    if L.dim == 0:
        return L
    out = syzygy(L, -(b.degree + 1))
    out.name = "k//b"
    return out


def koszul_object(H: CohomologyRing, b: CohomologyClass, m: FDModule | None = None) -> FDModule:
    kb = koszul_k(H, b)
    if m is None:
        return kb
    if H.algebra.comul is None:
        raise CapabilityError("M//b for algebras without a comultiplication is not implemented")
    out = strip_projective(tensor(m, kb)) if kb.dim else kb
    out.name = f"{m.name}//b" if m.name else ""
    return out


class ExtendedCohomology:
    """Classes of H*(A, k) with coefficients in an extension K, built from products over the base field."""

    def __init__(self, H: CohomologyRing, field):
        self.H = H
        self.field = field

    def combination(self, terms) -> tuple:
        """(degree, K-coordinates) of sum c_i x_i for base classes x_i and K-scalars c_i."""
        deg = terms[0][1].degree
        out = [self.field.zero] * self.H.dim(deg)
        for c, x in terms:
            c = self.field(c)
            out = [a + c * self.field(int(v)) for a, v in zip(out, x.coords)]
        return deg, out

    def kernel_module(self, degree: int, coords) -> FDModule:
        src = base_change(self.H.res.omega(degree), self.field)
        # the functional vanishing on the radical with values coords on the generators
        k = FDModule.trivial(src.algebra)
        row = HomSpace(src, k).to_map(list(coords))
        if row.is_zero():
            raise DegenerateConeError("the class is zero")
        L, _ = src.submodule(row.kernel())
        return L

    def koszul(self, degree: int, coords) -> FDModule:
        L = self.kernel_module(degree, coords)
        out = syzygy(L, -(degree + 1)) if L.dim else L
        out.name = "K//b"
        return out


def base_change_matrix(M: Matrix, field) -> Matrix:
    return Matrix.from_rows(field, [[field(int(x)) for x in r] for r in M.rows()], M.ncols)


def binomial_power(H: CohomologyRing, field, x: CohomologyClass, y: CohomologyClass, s, n: int):
    """(y + s x)^n in H^n(A, k) (x) K for degree-one classes x, y and a scalar s of K."""
    from math import comb

    terms = []
    for i in range(n + 1):
        c = comb(n, i) % field.p
        if not c:
            continue
        mon = H.product(H.power(x, i), H.power(y, n - i))
        terms.append((field(c) * field(s) ** i, mon))
    return ExtendedCohomology(H, field).combination(terms)
