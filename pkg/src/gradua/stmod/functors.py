"""Transpose, Auslander-Reiten translate, Nakayama functor, tensor products, duals, base change."""

from __future__ import annotations

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix, block_diag
from gradua.stmod.algebra import AlgebraDatum, CapabilityError
from gradua.stmod.module import (FDModule, HomSpace, column_basis, hom_to_regular, strip_projective,
                                 transpose_dual)


def _free_op(algebra: AlgebraDatum, rank: int) -> FDModule:
    """(A^op)^rank: c acts on each copy of A by right multiplication."""
    op = algebra.opposite()
    acts = [block_diag(algebra.field, [algebra.right_mults[i]] * rank) for i in range(algebra.dim)]
    return FDModule(op, rank * algebra.dim, acts, f"Aop^{rank}")


def transpose(m: FDModule) -> FDModule:
    """Tr M = coker(Hom(P0, A) -> Hom(P1, A)) for the minimal presentation P1 -> P0 -> M; an A^op-module."""
    A = m.algebra
    pres = m.presentation
    rels = pres.relations  # columns of the matrix of P1 -> P0 over A
    r0, r1 = pres.r, len(rels)
    free = _free_op(A, r1)
    if r1 == 0:
        return FDModule.zero(A.opposite())
    cols = []
    # image spanned by (a_ij e_k)_j for each generator i of P0 and basis element e_k
    for i in range(r0):
        for k in range(A.dim):
            ek = A.basis_vector(k)
            v = []
            for rel in rels:
                aij = rel[i * A.dim:(i + 1) * A.dim]
                v.extend(A.product(aij, ek))
            cols.append(v)
    K = column_basis(Matrix.from_columns(A.field, cols, free.dim))
    q, _ = free.quotient(K)
    q.name = f"Tr({m.name})" if m.name else ""
    return strip_projective(q)


def tau(m: FDModule) -> FDModule:
    """tau M = D Tr M, projective summands removed."""
    out = strip_projective(transpose_dual(transpose(m)))
    out.name = f"tau({m.name})" if m.name else ""
    return out


def a_dual(m: FDModule) -> FDModule:
    """M^t = Hom_A(M, A) as an A^op-module; (psi c)(x) = psi(x) c."""
    A = m.algebra
    h = hom_to_regular(m)
    r = h.pres.r
    B = h.basis
    acts = []
    for c in range(A.dim):
        R = block_diag(A.field, [A.right_mults[c]] * r)
        acts.append(B.solve(R * B))
    return FDModule(A.opposite(), h.dim, acts, f"{m.name}^t" if m.name else "")


def antipode_dual(m: FDModule) -> FDModule:
    """Hom_k(M, k) as an A-module through the antipode."""
    A = m.algebra
    if A.antipode is None:
        raise CapabilityError("the contragredient dual needs an antipode")
    S = A.antipode_matrix
    acts = []
    for i in range(A.dim):
        col = S.column(i)
        acts.append(m.act_vec(col).T)
    return FDModule(A, m.dim, acts, f"{m.name}*" if m.name else "")


def tensor(m: FDModule, n: FDModule) -> FDModule:
    """M (x) N with the diagonal action through the comultiplication."""
    A = m.algebra
    if A.comul is None:
        raise CapabilityError("tensor products need a comultiplication")
    F = A.field
    acts = []
    for i in range(A.dim):
        out = Matrix.zeros(F, m.dim * n.dim, m.dim * n.dim)
        for a, b, c in A.comul[i]:
            term = m.actions[a].kron(n.actions[b])
            out = out + (term if F(c) == 1 else term * F(c))
        acts.append(out)
    name = f"{m.name}(x){n.name}" if m.name and n.name else ""
    return FDModule(A, m.dim * n.dim, acts, name)


def nakayama(m: FDModule) -> FDModule:
    """nu M = D(A) (x)_A M."""
    A = m.algebra
    F = A.field
    d, dm = A.dim, m.dim
    if dm == 0:
        return FDModule.zero(A)
    eye = Matrix.identity(F, dm)
    eyeA = Matrix.identity(F, d)
    rel = []
    # (f a) (x) m - f (x) a m, with f a = L_a^T f
    for g in set(A.generators):
        rel.append(A.left_mults[g].T.kron(eye) - eyeA.kron(m.actions[g]))
    K = column_basis(rel[0].hstack(*rel[1:]) if len(rel) > 1 else rel[0])
    big = FDModule(A, d * dm, [A.right_mults[i].T.kron(eye) for i in range(d)])
    q, _ = big.quotient(K)
    q.name = f"nu({m.name})" if m.name else ""
    return q


def modular_character(algebra: AlgebraDatum, cap: int = 64) -> tuple:
    """delta = nu(k) as a list of scalars (one per basis element) and its order under tensor powers."""
    k = FDModule.trivial(algebra)
    delta = nakayama(k)
    if delta.dim != 1:
        raise CapabilityError("nu(k) is not one-dimensional")
    chi = [a[0, 0] for a in delta.actions]
    if algebra.comul is None:
        raise CapabilityError("the order of delta needs a comultiplication")
    cur = delta
    for order in range(1, cap + 1):
        if [a[0, 0] for a in cur.actions] == list(algebra.counit):
            return chi, order
        cur = tensor(cur, delta)
    raise CapabilityError(f"delta has order greater than {cap}")


def nakayama_power(m: FDModule, r: int) -> FDModule:
    out = m
    for _ in range(r):
        out = nakayama(out)
    return out


def base_change_algebra(algebra: AlgebraDatum, field: Field) -> AlgebraDatum:
    cache = algebra.__dict__.setdefault("_base", {})
    if field not in cache:
        B = algebra.base_change(field)
        if hasattr(algebra, "group"):
            B.group = algebra.group
        cache[field] = B
    return cache[field]


def base_change(m: FDModule, field: Field) -> FDModule:
    B = base_change_algebra(m.algebra, field)
    acts = [Matrix.from_rows(field, [[field(int(x)) for x in r] for r in a.rows()], m.dim) if m.dim else
            Matrix.zeros(field, 0, 0) for a in m.actions]
    return FDModule(B, m.dim, acts, m.name)


def stable_hom_oracle_higman(m: FDModule, n: FDModule) -> int:
    """Stable Hom dimension via the trace map sum_g g^{-1} (.) g on Hom_k(M, N) (group algebras only)."""
    A = m.algebra
    G = getattr(A, "group", None)
    if G is None:
        raise CapabilityError("trace map needs a group algebra")
    F = A.field
    # Hom_A(M, N) directly from the commutation equations
    hom_dim = HomSpace(m, n).dim
    inv = [G.inverse[g] for g in range(G.order)]
    T = None
    for g in range(G.order):
        term = m.actions[inv[g]].T.kron(n.actions[g])
        T = term if T is None else T + term
    return hom_dim - T.rank()
