"""Almost split sequences, indecomposability, Jordan blocks, periodicity and Tate duality checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from gradua.arith.matrix import Matrix, block_diag
from gradua.stmod.algebra import AlgebraDatum, CapabilityError
from gradua.stmod.cohomology import lift_to_syzygy
from gradua.stmod.functors import nakayama, tau
from gradua.stmod.module import (FDModule, HomSpace, column_basis, extend_basis, is_isomorphic,
                                 stable_hom_dim, stably_isomorphic, strip_projective, syzygy)

EXHAUSTIVE_LIMIT = 4096


class PreconditionError(ValueError):
    pass


# Jordan blocks over cyclic p-groups --------------------------------------------

def jordan_block(algebra: AlgebraDatum, i: int) -> FDModule:
    """J_i: the generator g acts as the i x i unipotent Jordan block."""
    G = getattr(algebra, "group", None)
    if G is None or len(G.generators) != 1:
        raise CapabilityError("Jordan blocks are defined for cyclic group algebras")
    F = algebra.field
    g = G.generators[0]
    rows = [[F.one if (r == c or c == r + 1) else F.zero for c in range(i)] for r in range(i)]
    m = FDModule.from_generator_actions(algebra, {g: Matrix.from_rows(F, rows, i)}, i, f"J_{i}")
    return m


def jordan_type(m: FDModule) -> list:
    """Block sizes (descending) of g - 1 for a cyclic group algebra."""
    G = m.algebra.group
    g = G.generators[0]
    if m.dim == 0:
        return []
    N = m.actions[g] - Matrix.identity(m.field, m.dim)
    ranks = [m.dim]
    P = Matrix.identity(m.field, m.dim)
    while ranks[-1]:
        P = P * N
        ranks.append(P.rank())
    # number of blocks of size >= j is rank(N^{j-1}) - rank(N^j)
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    sizes = []
    for j in range(len(at_least), 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
        sizes.extend([j] * exact)
    return sizes


# indecomposability ----------------------------------------------------------------

@dataclass
class IndecomposableResult:
    status: str  # "indecomposable", "decomposable", "inconclusive"
    witness: dict = field(default_factory=dict)

    @property
    def value(self):
        return {"indecomposable": True, "decomposable": False}.get(self.status)


def _charpoly_factors(M: Matrix) -> list:
    return M._m.charpoly().factor()[1]


def radical_of_local_endomorphisms(maps, n: int, F):
    """span{E - lambda I} if each basis map has a single eigenvalue in F and that span is nilpotent; else None."""
    eye = Matrix.identity(F, n)
    rad = []
    for E in maps:
        fac = _charpoly_factors(E)
        if len(fac) != 1 or fac[0][0].degree() != 1:
            return None
        lam = -fac[0][0].coeffs()[0]
        rad.append(E - eye * F(int(lam)))
    if not rad:
        return []
    flat = lambda X: sum(X.rows(), [])
    basis = column_basis(Matrix.from_columns(F, [flat(X) for X in rad], n * n))
    mats = [Matrix.from_rows(F, [basis.column(j)[r * n:(r + 1) * n] for r in range(n)], n)
            for j in range(basis.ncols)]
    if len(mats) != len(maps) - 1:
        return None
    cur = mats
    for _ in range(n + 1):
        prods = [a * b for a in cur for b in mats]
        nz = [flat(X) for X in prods if not X.is_zero()]
        if not nz:
            return mats
        B = column_basis(Matrix.from_columns(F, nz, n * n))
        cur = [Matrix.from_rows(F, [B.column(j)[r * n:(r + 1) * n] for r in range(n)], n) for j in range(B.ncols)]
    return None


def indecomposable_check(m: FDModule, seed: int = 0, trials: int = 64) -> IndecomposableResult:
    if m.dim == 0:
        return IndecomposableResult("decomposable", {"reason": "zero module"})
    F = m.field
    h = HomSpace(m, m)
    maps = h.maps()
    if not F.is_prime_field:
        return IndecomposableResult("inconclusive", {"reason": "idempotent search over a function field",
                                                     "end_dim": h.dim})
    rad = radical_of_local_endomorphisms(maps, m.dim, F)
    if rad is not None:
        return IndecomposableResult("indecomposable", {"end_dim": h.dim, "radical_dim": len(rad)})
    rng = random.Random(seed)
    cands = list(maps)
    for _ in range(trials):
        E = Matrix.zeros(F, m.dim, m.dim)
        for g in maps:
            E = E + g * F(rng.randrange(F.p))
        cands.append(E)
    for E in cands:
        fac = _charpoly_factors(E)
        if len(fac) >= 2:
            # Fitting decomposition: the generalized eigenspaces of E are summands
            f0 = fac[0][0] ** fac[0][1]
            P = _poly_at(f0, E)
            return IndecomposableResult("decomposable", {"end_dim": h.dim,
                                                         "summand_dims": [m.dim - P.rank(), P.rank()]})
    return IndecomposableResult("inconclusive", {"end_dim": h.dim})


def _poly_at(f, E: Matrix) -> Matrix:
    F = E.field
    n = E.nrows
    out = Matrix.zeros(F, n, n)
    for c in reversed(f.coeffs()):
        out = out * E + Matrix.identity(F, n) * F(int(c))
    return out


# almost split sequences ------------------------------------------------------------

@dataclass
class ARTriangle:
    end: FDModule
    tau_term: FDModule
    middle: FDModule
    middle_stable: FDModule
    inclusion: Matrix
    projection: Matrix
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"end_dim": self.end.dim, "tau_dim": self.tau_term.dim, "middle_dim": self.middle.dim,
                "middle_stable_dim": self.middle_stable.dim, "witness": self.witness}


def _ext1(m: FDModule, t: FDModule):
    """Ext^1(M, T) as Hom(Omega M, T) modulo restrictions of maps from the cover."""
    pres = m.presentation
    om = pres.syzygy
    A = m.algebra
    F = m.field
    hom = HomSpace(om, t)
    # restrictions: x in Omega M (inside A^r) maps to sum_i x_i t_i
    cols = []
    for i in range(pres.r):
        for q in range(t.dim):
            tq = [F.one if j == q else F.zero for j in range(t.dim)]
            # map A^r -> T, e_i -> tq
            blocks = []
            for l in range(pres.r):
                blocks.append(Matrix.from_columns(F, [t.actions[j].apply(tq) if l == i else [F.zero] * t.dim
                                                      for j in range(A.dim)], t.dim))
            G = blocks[0].hstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
            cols.append(hom.coords_of(G * pres.kernel))
    R = column_basis(Matrix.from_columns(F, cols, hom.basis.nrows)) if cols else \
        Matrix.zeros(F, hom.basis.nrows, 0)
    return hom, R


def ar_triangle(m: FDModule, family=None) -> ARTriangle:
    if m.is_projective() or m.dim == 0:
        raise PreconditionError("the end term must be non-projective")
    ind = indecomposable_check(m)
    if ind.status != "indecomposable":
        raise PreconditionError(f"the end term is not certified indecomposable ({ind.status})")
    F = m.field
    t = tau(m)
    hom, R = _ext1(m, t)
    pres = m.presentation
    om = pres.syzygy
    end_maps = HomSpace(m, m).maps()
    rad = radical_of_local_endomorphisms(end_maps, m.dim, F)
    if rad is None:
        raise CapabilityError("End(M) is local but not split over the prime field")
    # classes eta with eta o Omega(rho) a restriction for every rho in rad End(M)
    lifts = [lift_to_syzygy(rho, m, m) for rho in rad]
    nb = hom.basis.ncols
    blocks = []
    for L in lifts:
        cols = [hom.coords_of(hom.to_map(hom.basis.column(j)) * L) for j in range(nb)]
        blocks.append(Matrix.from_columns(F, cols, hom.basis.nrows) if cols else None)
    # solve: for each rho, B_rho c lies in span(R)  <=>  proj_R-complement(B_rho c) = 0
    from gradua.modules.graded import QuotientSpace

    q = QuotientSpace(F, hom.basis.nrows, R.T if R.ncols else None)
    conds = [q.project(B) for B in blocks if B is not None]
    base = hom.basis
    stack = conds[0].vstack(*conds[1:]) if len(conds) > 1 else (conds[0] if conds else
                                                                   Matrix.zeros(F, 0, nb))
    sol = stack.kernel() if stack.nrows else Matrix.identity(F, nb)
    eta = None
    for j in range(sol.ncols):
        v = (base * sol.submatrix(cols=[j])).column(0)
        if q.project(Matrix.from_columns(F, [v], base.nrows)).rank():
            eta = v
            break
    if eta is None:
        raise ArithmeticError("no nonzero extension class is annihilated by the radical")
    eta_map = hom.to_map(eta)
    # pushout E = (T + P) / {(eta(x), -x)}
    P = pres.cover
    S = t.direct_sum(P)
    emb = eta_map.vstack(-pres.kernel)
    E, proj = S.quotient(column_basis(emb))
    inc = proj * Matrix.identity(F, t.dim).vstack(Matrix.zeros(F, P.dim, t.dim))
    # E -> M induced by (0, pi)
    zero_pi = Matrix.zeros(F, m.dim, t.dim).hstack(pres.pi)
    Lq = _section(proj)
    p_map = zero_pi * Lq
    witness = {"tau_dim": t.dim, "ext1_dim": _ext_dim(hom, R),
               "radical_dim": len(rad)}
    witness.update(_verify_sequence(t, E, m, inc, p_map))
    fam = family if family is not None else _default_family(m)
    witness.update(_almost_split(E, m, p_map, fam))
    mid_stable = strip_projective(E)
    return ARTriangle(m, t, E, mid_stable, inc, p_map, witness)


def _ext_dim(hom: HomSpace, R: Matrix) -> int:
    return hom.dim - R.ncols


def _section(proj: Matrix) -> Matrix:
    """A right inverse of a surjective projection matrix."""
    _, piv = proj.rref()
    inv = proj.submatrix(cols=piv).inverse()
    F = proj.field
    entries = []
    for k, j in enumerate(piv):
        for q in range(proj.nrows):
            if inv[k, q]:
                entries.append((j, q, inv[k, q]))
    return Matrix.from_sparse(F, proj.ncols, proj.nrows, entries)


def _verify_sequence(t, E, m, inc, p) -> dict:
    F = m.field
    exact = (inc.rank() == t.dim and p.rank() == m.dim and (p * inc).is_zero()
             and E.dim == t.dim + m.dim)
    for a in range(m.algebra.dim):
        exact = exact and (E.actions[a] * inc == inc * t.actions[a]) and (p * E.actions[a] == m.actions[a] * p)
    # non-split: no module map s : M -> E with p s = id
    h = HomSpace(m, E)
    maps = h.maps()
    ident = Matrix.identity(F, m.dim)
    if maps:
        flat = lambda X: sum(X.rows(), [])
        A = Matrix.from_columns(F, [flat(p * s) for s in maps], m.dim * m.dim)
        split = A.solve(flat(ident)) is not None
    else:
        split = False
    return {"exact": exact, "nonsplit": not split}


def _default_family(m: FDModule) -> list:
    G = getattr(m.algebra, "group", None)
    if G is not None and len(G.generators) == 1:
        return [jordan_block(m.algebra, i) for i in range(1, m.algebra.dim + 1)]
    return [m]


def _almost_split(E: FDModule, m: FDModule, p: Matrix, family) -> dict:
    """Every non-split-epi map X -> M from the family factors through p, checked map by map."""
    F = m.field
    checked = 0
    failures = 0
    exhaustive = True
    flat = lambda X: sum(X.rows(), [])
    for X in family:
        hxm = HomSpace(X, m)
        maps = hxm.maps()
        if not maps:
            continue
        through = [p * h for h in HomSpace(X, E).maps()]
        img = column_basis(Matrix.from_columns(F, [flat(f) for f in through], m.dim * X.dim)) if through else \
            Matrix.zeros(F, m.dim * X.dim, 0)
        back = HomSpace(m, X).maps()
        if F.p ** len(maps) > EXHAUSTIVE_LIMIT:
            exhaustive = False
            combos = _sample_combos(F, len(maps), EXHAUSTIVE_LIMIT)
        else:
            combos = itertools.product(range(F.p), repeat=len(maps))
        for c in combos:
            f = Matrix.zeros(F, m.dim, X.dim)
            for ci, g in zip(c, maps):
                if ci:
                    f = f + g * F(ci)
            if _is_split_epi(f, back, m.dim):
                continue
            checked += 1
            v = Matrix.from_columns(F, [flat(f)], m.dim * X.dim)
            if img.ncols == 0:
                ok = f.is_zero()
            else:
                ok = img.solve(v) is not None
            failures += not ok
    return {"almost_split": failures == 0, "maps_checked": checked, "exhaustive": exhaustive}


def _sample_combos(F, k: int, count: int):
    rng = random.Random(0)
    for _ in range(count):
        yield tuple(rng.randrange(F.p) for _ in range(k))


def _is_split_epi(f: Matrix, back, n: int) -> bool:
    if f.rank() < n:
        return False
    if not back:
        return False
    F = f.field
    flat = lambda X: sum(X.rows(), [])
    A = Matrix.from_columns(F, [flat(f * s) for s in back], n * n)
    return A.solve(flat(Matrix.identity(F, n))) is not None


# periodicity and Tate duality ------------------------------------------------------

@dataclass
class PeriodicityResult:
    r: int | None
    d: int
    serre_identity: bool
    witness: dict = field(default_factory=dict)


def periodicity_check(samples, d: int, cap: int = 12) -> PeriodicityResult:
    """Least r <= cap with Omega^r M = M and nu^r M = M for every sample; then (Omega^d nu)^r = id follows."""
    for r in range(1, cap + 1):
        if all(stably_isomorphic(syzygy(m, r), m) and stably_isomorphic(_nu_power(m, r), m) for m in samples):
            serre = all(stably_isomorphic(_serre_power(m, d, r), m) for m in samples)
            return PeriodicityResult(r, d, serre, {"samples": [m.dim for m in samples]})
    return PeriodicityResult(None, d, False, {"reason": f"no period up to {cap}"})


def _nu_power(m, r):
    out = m
    for _ in range(r):
        out = nakayama(out)
    return out


def _serre_power(m, d, r):
    out = m
    for _ in range(r):
        out = syzygy(nakayama(out), d) if d else strip_projective(nakayama(out))
    return out


def tate_duality_check(m: FDModule, n: FDModule) -> tuple:
    """(dim stHom(M, N), dim stHom(N, Omega nu M))."""
    return stable_hom_dim(m, n), stable_hom_dim(n, syzygy(nakayama(m), 1))
