"""Free modules, degree-bounded minimal resolutions, Ext, and subquotient bookkeeping."""

from __future__ import annotations

from gradua.arith.matrix import Matrix
from gradua.modules.graded import DegreewiseModule, ModulePresentation, QuotientSpace
from gradua.rings.poly import Poly
from gradua.rings.ring import RingPresentation


class Subquotient:
    """Z / B for column spaces B <= Z of an ambient space."""

    def __init__(self, Z: Matrix, B: Matrix):
        self.Z = Z
        field = Z.field
        if B.ncols and Z.ncols:
            Bz = Z.solve(B)
            if Bz is None:
                raise ArithmeticError("boundaries are not cycles")
            self.q = QuotientSpace(field, Z.ncols, Bz.T)
        else:
            self.q = QuotientSpace(field, Z.ncols, None)

    @property
    def dim(self) -> int:
        return self.q.dim

    def coords(self, V: Matrix) -> Matrix:
        """Quotient coordinates of cycles given as ambient columns."""
        if self.Z.ncols == 0:
            return Matrix.zeros(V.field, 0, V.ncols)
        C = self.Z.solve(V)
        if C is None:
            raise ArithmeticError("vector is not a cycle")
        return self.q.project(C)

    def representatives(self) -> Matrix:
        """Ambient columns representing the quotient basis."""
        return self.Z * self.q.lift()


def cohomology(into: Matrix, out: Matrix, n: int) -> Subquotient:
    """ker(out) / im(into) on an n-dimensional middle term."""
    field = (into if into.ncols or into.nrows else out).field
    Z = out.kernel() if out.nrows else Matrix.identity(field, n)
    if n == 0:
        Z = Matrix.zeros(field, 0, 0)
    B = into if into.ncols else Matrix.zeros(field, n, 0)
    return Subquotient(Z, B)


class FreeModule:
    """sum_i R(-degrees[i])."""

    def __init__(self, ring: RingPresentation, degrees):
        self.ring = ring
        self.degrees = list(degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def basis(self, n: int) -> list:
        out = []
        for i, g in enumerate(self.degrees):
            if n - g >= 0:
                out.extend((i, m) for m in self.ring.standard_monomials(n - g))
        return out

    def dim(self, n: int) -> int:
        return sum(self.ring.dim(n - g) for g in self.degrees if n >= g)

    def vector(self, elems, n: int) -> list:
        v = []
        for i, g in enumerate(self.degrees):
            if n - g < 0:
                continue
            f = elems[i]
            v.extend(self.ring.coords(f, n - g) if f else [self.ring.field.zero] * self.ring.dim(n - g))
        return v

    def element(self, v, n: int) -> list:
        elems = [self.ring.poly.zero() for _ in self.degrees]
        for (i, m), c in zip(self.basis(n), v):
            if c:
                elems[i] = elems[i] + self.ring.poly.monomial(m, c)
        return elems

    def map_matrix(self, cols, target: "FreeModule", n: int) -> Matrix:
        """Degree-n matrix of the map sending e_j to cols[j] (a list of ring elements)."""
        vecs = []
        for i, m in self.basis(n):
            mono = self.ring.poly.monomial(m)
            vecs.append(target.vector([self.ring.nf(mono * f) if f else f for f in cols[i]], n))
        return Matrix.from_columns(self.ring.field, vecs, target.dim(n))


class Resolution:
    """Minimal graded free resolution F_len -> ... -> F_0 -> M, complete up to internal degree ``bound``.

    ``differentials[i]`` lists, for each generator of F_{i+1}, its image in F_i.
    """

    def __init__(self, m: ModulePresentation, length: int, bound: int):
        self.module = m
        self.ring = m.ring
        self.bound = bound
        F0 = FreeModule(m.ring, m.generator_degrees)
        self.frees = [F0]
        self.differentials = []
        # first syzygy: kernel of F_0 -> M
        lo = min(m.generator_degrees, default=0)

        def kernel0(n):
            B = F0.basis(n)
            q = m.space(n)
            if not B:
                return Matrix.zeros(m.ring.field, 0, 0)
            return q.proj.kernel()

        for i in range(length):
            src = self.frees[-1]
            if i == 0:
                kern = kernel0
            else:
                prev = self.frees[-2]
                cols = self.differentials[-1]

                def kern(n, src=src, prev=prev, cols=cols):
                    if not src.dim(n):
                        return Matrix.zeros(m.ring.field, 0, 0)
                    return src.map_matrix(cols, prev, n).kernel()

            gens, degs = self._minimal_generators(src, kern, lo, bound)
            self.frees.append(FreeModule(m.ring, degs))
            self.differentials.append(gens)
            if not gens:
                break

    def _minimal_generators(self, F: FreeModule, kern, lo: int, bound: int):
        gens, degs = [], []
        field = self.ring.field
        for n in range(lo, bound + 1):
            K = kern(n)
            if K.ncols == 0:
                continue
            # span of R_+ times earlier generators in degree n
            span = []
            for g, a in zip(gens, degs):
                if a >= n:
                    continue
                for mon in self.ring.standard_monomials(n - a):
                    f = self.ring.poly.monomial(mon)
                    span.append(F.vector([self.ring.nf(f * x) if x else x for x in g], n))
            S = Matrix.from_columns(field, span, F.dim(n)) if span else Matrix.zeros(field, F.dim(n), 0)
            r = S.rank()
            for j in range(K.ncols):
                col = K.column(j)
                T = S.hstack(Matrix.from_columns(field, [col], F.dim(n)))
                if T.rank() > r:
                    S, r = T, r + 1
                    gens.append(F.element(col, n))
                    degs.append(n)
            if S.rank() != K.ncols:
                raise ArithmeticError("kernel span mismatch")
        return gens, degs

    def betti(self) -> list:
        return [f.rank for f in self.frees]

    def graded_betti(self) -> list:
        return [sorted(f.degrees) for f in self.frees]


def _hom_dim(F: FreeModule, N: ModulePresentation, d: int) -> int:
    return sum(N.dim(a + d) for a in F.degrees)


def _hom_map(F: FreeModule, G: FreeModule, cols, N: ModulePresentation, d: int) -> Matrix:
    """Hom(F, N)_d -> Hom(G, N)_d induced by G -> F, e_j -> cols[j]."""
    field = N.ring.field
    blocks = []
    for j, b in enumerate(G.degrees):
        row = []
        for l, a in enumerate(F.degrees):
            r = cols[j][l]
            if r:
                row.append(N.act(r, a + d))
            else:
                row.append(Matrix.zeros(field, N.dim(b + d), N.dim(a + d)))
        blocks.append(row)
    nr = _hom_dim(G, N, d)
    nc = _hom_dim(F, N, d)
    if not blocks or nc == 0:
        return Matrix.zeros(field, nr, nc)
    rows = [r[0].hstack(*r[1:]) if len(r) > 1 else r[0] for r in blocks] if F.degrees else []
    out = rows[0].vstack(*rows[1:]) if len(rows) > 1 else rows[0]
    return out


def _hom_action(F: FreeModule, N: ModulePresentation, x: Poly, d: int) -> Matrix:
    field = N.ring.field
    e = x.degree()
    entries = []
    r0 = c0 = 0
    for a in F.degrees:
        A = N.act(x, a + d)
        for i, row in enumerate(A.rows()):
            for j, c in enumerate(row):
                if c:
                    entries.append((r0 + i, c0 + j, c))
        r0 += N.dim(a + d + e)
        c0 += N.dim(a + d)
    return Matrix.from_sparse(field, r0, c0, entries)


def ext_modules(m: ModulePresentation, n: ModulePresentation, i: int, window, bound: int = 16,
                resolution: Resolution | None = None) -> DegreewiseModule:
    """Ext^i(m, n) degreewise: the piece at d is built from Hom(F_i, N)_d = sum N_{a+d}."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    lo, hi = window
    res = resolution or Resolution(m, i + 1, bound)
    empty = FreeModule(m.ring, [])
    frees = res.frees + [empty] * (i + 2)
    F_prev = frees[i - 1] if i > 0 else empty
    F_i, F_next = frees[i], frees[i + 1]
    d_in = res.differentials[i - 1] if i > 0 else []
    d_out = res.differentials[i] if i < len(res.differentials) else []
    subs = {}
    field = m.ring.field
    for d in range(lo, hi + 1):
        mid = _hom_dim(F_i, n, d)
        into = _hom_map(F_prev, F_i, d_in, n, d) if i > 0 else Matrix.zeros(field, mid, 0)
        out = _hom_map(F_i, F_next, d_out, n, d) if F_next.rank else Matrix.zeros(field, 0, mid)
        subs[d] = cohomology(into, out, mid)
    dims = {d: s.dim for d, s in subs.items()}
    acts = {}
    for name, e in zip(m.ring.names, m.ring.degrees):
        x = m.ring.poly.var(name)
        per = {}
        for d in range(lo, hi - e + 1):
            if not dims[d] or not dims[d + e]:
                per[d] = Matrix.zeros(field, dims[d + e], dims[d])
                continue
            X = _hom_action(F_i, n, x, d)
            per[d] = subs[d + e].coords(X * subs[d].representatives())
        acts[name] = per
    return DegreewiseModule(m.ring, lo, hi, dims, acts)
