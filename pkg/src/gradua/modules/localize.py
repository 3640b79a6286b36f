"""Inverting a homogeneous element, injective hulls at closed points, Hom into them, generic rank."""

from __future__ import annotations

import itertools
from math import gcd

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix
from gradua.modules.graded import DegreewiseModule, ModulePresentation, graded_matlis_dual, ring_module
from gradua.rings.ops import krull_dimension, noether_normalize, radical_membership, saturation
from gradua.rings.poly import Poly
from gradua.rings.ring import HomIdeal, RingPresentation

STABLE_SEARCH = 64
S_CAP = 12


class OutOfScopeError(ValueError):
    pass


class CertificateError(RuntimeError):
    pass


class ExtendWindowError(RuntimeError):
    pass


class Localized:
    """M[u^{-1}] for a finitely generated M: the piece at n is M_D for a stable D = n mod e.

    u acts bijectively on M_n -> M_{n+e} for n >= ``start`` (checked on three full
    periods past the start, which is where the torsion and generator degrees end).
    """

    def __init__(self, m: ModulePresentation, u: Poly, start: int | None = None):
        self.m = m
        self.ring = m.ring
        self.u = m.ring.poly(u)
        self.e = self.u.degree()
        lo = min(m.generator_degrees, default=0)
        if start is None:
            start = self._find_start(lo)
        self.start = start

    def _bijective(self, n: int) -> bool:
        a, b = self.m.dim(n), self.m.dim(n + self.e)
        if a != b:
            return False
        return a == 0 or self.m.act(self.u, n).rank() == a

    def _find_start(self, lo: int) -> int:
        e = self.e
        for n0 in range(lo, lo + STABLE_SEARCH):
            if all(self._bijective(n) for n in range(n0, n0 + 3 * e)):
                return n0
        raise CertificateError("multiplication by u did not stabilize")

    def rep(self, n: int) -> int:
        return self.start + (n - self.start) % self.e

    def dim(self, n: int) -> int:
        return self.m.dim(self.rep(n))

    def act(self, f: Poly, n: int) -> Matrix:
        """Matrix of f on (M_u)_n -> (M_u)_{n+deg f} in representative coordinates."""
        f = self.ring.nf(self.ring.poly(f))
        g = f.degree() if f else 0
        D = self.rep(n)
        D2 = self.rep(n + g)
        X = self.m.act(f, D)
        j = (D + g - D2) // self.e
        if j == 0:
            return X
        U = self.m.act(self.ring.nf(self.u ** j), D2)
        return U.solve(X)

    def expand(self, window) -> DegreewiseModule:
        lo, hi = window
        dims = {n: self.dim(n) for n in range(lo, hi + 1)}
        acts = {}
        for name, d in zip(self.ring.names, self.ring.degrees):
            x = self.ring.poly.var(name)
            acts[name] = {n: self.act(x, n) for n in range(lo, hi - d + 1)}
        return DegreewiseModule(self.ring, lo, hi, dims, acts)


def localize(m: ModulePresentation, u, window) -> DegreewiseModule:
    return Localized(m, u).expand(window)


def _point_element(a: RingPresentation, m: HomIdeal, seed: int = 0) -> Poly:
    if krull_dimension(a.quotient(m)) != 1:
        raise OutOfScopeError("m is not a closed point")
    return noether_normalize(a, m, seed=seed)[0]


def injective_hull_closed_point(a: RingPresentation, m: HomIdeal, window, seed: int = 0) -> DegreewiseModule:
    """I(m) = Hom_{k[u^{+-1}]}(A_m, k[u^{+-1}]) for dim A = 1.

    A degree-n map over the graded field is fixed by its value on one degree of
    each residue class, so the piece at n is the k-dual of (A_m)_{-n}.
    """
    if krull_dimension(a) != 1:
        raise OutOfScopeError("injective_hull_closed_point needs Krull dimension 1; use hom_into_injective")
    u = _point_element(a, m, seed)
    # A[u^-1] is A_m exactly when m is the only relevant prime
    tors = saturation(a.zero_ideal(), a.ideal([u]))
    if not all(radical_membership(g, tors) for g in m.generators):
        raise OutOfScopeError("A has relevant primes other than m; A[u^-1] is not local")
    lo, hi = window
    loc = Localized(ModulePresentation.free(a, [0]), u).expand((-hi, -lo))
    return graded_matlis_dual(loc)


def localized_ring(a: RingPresentation, m: HomIdeal, window, seed: int = 0) -> DegreewiseModule:
    u = _point_element(a, m, seed)
    return Localized(ModulePresentation.free(a, [0]), u).expand(window)


def _ideal_power(ideal: HomIdeal, s: int) -> list:
    gens = list(ideal.generators)
    out = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), s):
        f = ideal.ring.poly.one()
        for i in combo:
            f = f * gens[i]
        f = ideal.ring.nf(f)
        if f:
            out.append(f)
    return out


def torsion_exponent(n: ModulePresentation, m: HomIdeal, u: Poly, cap: int = S_CAP) -> int:
    """Least s with m^s N_u = 0, by iterating W -> m W on one period of N_u."""
    loc = Localized(n, u)
    e = loc.e
    field = n.ring.field
    degs = range(loc.start, loc.start + e)
    # W[r] spans the current subspace of the piece in residue r (columns)
    W = {r: Matrix.identity(field, loc.dim(r)) for r in degs}
    for s in range(cap + 1):
        if all(w.ncols == 0 or w.rank() == 0 for w in W.values()):
            return s
        nxt = {r: [] for r in degs}
        for g in m.generators:
            gd = g.degree()
            for r in degs:
                if W[r].ncols == 0:
                    continue
                img = loc.act(g, r) * W[r]
                nxt[loc.rep(r + gd)].extend(img.columns())
        newW = {}
        for r in degs:
            cols = nxt[r]
            if not cols:
                newW[r] = Matrix.zeros(field, loc.dim(r), 0)
                continue
            M = Matrix.from_columns(field, cols, loc.dim(r))
            R, piv = M.T.rref()
            newW[r] = Matrix.from_rows(field, R.rows()[: len(piv)], loc.dim(r)).T if piv else \
                Matrix.zeros(field, loc.dim(r), 0)
        W = newW
    raise CertificateError(f"no power m^s with s <= {cap} kills N after inverting u")


def truncate_by_power(n: ModulePresentation, m: HomIdeal, s: int) -> ModulePresentation:
    """N / m^s N."""
    ring = n.ring
    if s == 0:
        return ModulePresentation(ring, n.generator_degrees, [[ring.poly.one() if i == j else ring.poly.zero()
                                                              for j in range(len(n.generator_degrees))]
                                                             for i in range(len(n.generator_degrees))])
    ng = len(n.generator_degrees)
    cols = [c for _, c in n.relations]
    for f in _ideal_power(m, s):
        for i in range(ng):
            col = [ring.poly.zero()] * ng
            col[i] = f
            cols.append(col)
    rows = [[c[i] for c in cols] for i in range(ng)]
    return ModulePresentation(ring, n.generator_degrees, rows)


def hom_into_injective(n: ModulePresentation, m: HomIdeal, window, seed: int = 0, cap: int = S_CAP):
    """Hom_A(N, I(m)) for N that is m-torsion after inverting u, without building I(m).

    Returns (module, s) where s is the certified torsion exponent.
    """
    a = n.ring
    u = _point_element(a, m, seed)
    s = torsion_exponent(n, m, u, cap)
    nt = truncate_by_power(n, m, s)
    lo, hi = window
    if s == 0:
        dims = {k: 0 for k in range(lo, hi + 1)}
        return DegreewiseModule(a, lo, hi, dims, {}), 0
    loc = Localized(nt, u).expand((-hi, -lo))
    return graded_matlis_dual(loc), s


def _to_fraction_field(f: Poly, K: Field):
    out = K.zero
    for mon, c in f.terms.items():
        t = K(c) if not isinstance(c, int) else K(c)
        for name, k in zip(f.ring.names, mon):
            if k:
                t = t * K.gen(name) ** k
        out = out + t
    return out


def local_rank_at_zero(m: ModulePresentation, window=(0, 16)) -> int:
    """Rank of M over the graded fraction field of its (domain) ring."""
    ring = m.ring
    ng = len(m.generator_degrees)
    if not ring.relations:
        K = ring.field.extend(list(ring.names))
        cols = [[_to_fraction_field(f, K) if f else K.zero for f in col] for _, col in m.relations]
        if not cols:
            return ng
        return ng - Matrix.from_columns(K, cols, ng).rank()
    # quotient domain: compare Hilbert functions over whole periods in the window
    d = krull_dimension(ring)
    if d != 1:
        raise ExtendWindowError("generic rank over quotient domains is supported for dimension 1 only")
    per = 0
    for g in ring.degrees:
        per = gcd(per, g)
    L = 1
    for g in ring.degrees:
        L = L * g // gcd(L, g)
    lo, hi = window
    ratios = []
    for start in (hi - 2 * L + 1, hi - L + 1):
        sm = sum(m.dim(k) for k in range(start, start + L))
        sr = sum(ring.dim(k) for k in range(start, start + L))
        if sr == 0 or sm % sr:
            raise ExtendWindowError("rank not yet stabilized on the window")
        ratios.append(sm // sr)
    if ratios[0] != ratios[1]:
        raise ExtendWindowError("rank not yet stabilized on the window")
    return ratios[0]
