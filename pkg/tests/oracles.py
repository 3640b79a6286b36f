"""Independent reference computations in plain Python integers mod p.

Nothing here imports gradua: the oracles only see plain lists, so a bug in the
package's linear algebra cannot leak into the values the tests compare against.
"""

from __future__ import annotations

import itertools


def rank_mod_p(rows, p: int) -> int:
    rows = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def matmul(a, b, p: int):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0]))] for i in range(len(a))]


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


# graded rings -----------------------------------------------------------------------

def monomials(degrees, n: int):
    """Exponent vectors of total weighted degree n."""
    out = []

    def rec(i, rem, acc):
        if i == len(degrees):
            if rem == 0:
                out.append(tuple(acc))
            return
        for e in range(rem // degrees[i] + 1):
            rec(i + 1, rem - e * degrees[i], acc + [e])

    rec(0, n, [])
    return out


def hilbert_brute(degrees, relations, n: int, p: int = 2) -> int:
    """dim_k (S/I)_n with I generated by ``relations`` given as {exponent tuple: coeff}.

    Spans all products (monomial) * (relation) landing in degree n and takes the
    codimension, with no Groebner basis involved.
    """
    mons = monomials(degrees, n)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for rel in relations:
        d = sum(e * w for e, w in zip(next(iter(rel)), degrees))
        if d > n:
            continue
        for m in monomials(degrees, n - d):
            row = [0] * len(mons)
            for e, c in rel.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] += c
            rows.append(row)
    return len(mons) - rank_mod_p(rows, p)


# modules over finite-dimensional algebras -------------------------------------------

def hom_dim(gens_m, gens_n, p: int) -> int:
    """dim Hom_A(M, N) from f X_M = X_N f for the action matrices of algebra generators."""
    dm, dn = len(gens_m[0]), len(gens_n[0])
    rows = []
    # vec(f) row-major, f is dn x dm
    for xm, xn in zip(gens_m, gens_n):
        # (f xm - xn f) as a linear map in vec(f)
        left = kron(identity(dn), transpose(xm))
        right = kron(xn, identity(dm))
        for r1, r2 in zip(left, right):
            rows.append([(a - b) % p for a, b in zip(r1, r2)])
    return dn * dm - rank_mod_p(rows, p)


def group_element_matrices(elements, gen_matrices, mult_words, p: int):
    """Matrices of group elements given as words in the generators."""
    n = len(gen_matrices[0])
    out = []
    for word in mult_words:
        m = identity(n)
        for g in word:
            m = matmul(m, gen_matrices[g], p)
        out.append(m)
    return out


def stable_hom_higman(elems_m, elems_n, hom: int, p: int) -> int:
    """hom - rank of the trace map f -> sum_g g f g^{-1} on Hom_k(M, N).

    ``elems_m``/``elems_n`` list the action matrices of every group element, with
    inverses paired up by position in ``inverse``.
    """
    g_m, inv_m = elems_m
    g_n, _ = elems_n
    dm, dn = len(g_m[0]), len(g_n[0])
    T = [[0] * (dm * dn) for _ in range(dm * dn)]
    for a, ainv in zip(g_n, inv_m):
        # vec(a f ainv) = (a kron ainv^T) vec(f), row-major
        K = kron(a, transpose(ainv))
        T = [[(x + y) % p for x, y in zip(r, s)] for r, s in zip(T, K)]
    return hom - rank_mod_p(T, p)


def cyclic_group_modules(order: int, p: int):
    """All Jordan block modules J_1..J_order over F_p[Z/order] (order a power of p)."""
    out = {}
    for i in range(1, order + 1):
        g = [[int(r == c or c == r + 1) for c in range(i)] for r in range(i)]
        out[i] = g
    return out


def group_elements_from_generator(g, order: int, p: int):
    mats = [identity(len(g))]
    for _ in range(order - 1):
        mats.append(matmul(mats[-1], g, p))
    inv = [mats[(-k) % order] for k in range(order)]
    return mats, inv


def all_vectors(n: int, p: int):
    return itertools.product(range(p), repeat=n)
