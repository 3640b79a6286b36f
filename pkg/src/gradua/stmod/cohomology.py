"""Minimal resolutions, Ext, cohomology classes and their products, ring presentation checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gradua.arith.matrix import Matrix, block_diag
from gradua.stmod.algebra import AlgebraDatum
from gradua.stmod.module import FDModule, HomSpace, strip_projective

RESOLUTION_CAP = 10


class ResourceError(RuntimeError):
    pass


class MinimalResolution:
    """P_n -> ... -> P_0 -> M with Omega^n M realized as kernels inside P_{n-1}."""

    def __init__(self, m: FDModule):
        self.module = m
        self.syz = [m]

    def extend(self, n: int):
        while len(self.syz) <= n:
            self.syz.append(self.syz[-1].presentation.syzygy)

    def omega(self, n: int) -> FDModule:
        self.extend(n)
        return self.syz[n]

    def betti(self, length: int) -> list:
        self.extend(length)
        return [self.syz[i].presentation.r for i in range(length + 1)]

    def differential(self, i: int) -> list:
        """Images of the generators of P_i in P_{i-1} (i >= 1), as vectors in A^{r_{i-1}}."""
        self.extend(i)
        K = self.syz[i - 1].presentation.kernel
        G = self.syz[i].presentation.gens
        V = K * G
        return [V.column(j) for j in range(V.ncols)]


def resolution(m: FDModule) -> MinimalResolution:
    cache = m.__dict__.get("_resolution")
    if cache is None:
        cache = MinimalResolution(m)
        m.__dict__["_resolution"] = cache
    return cache


def trivial_resolution(algebra: AlgebraDatum) -> MinimalResolution:
    res = algebra.__dict__.get("_kres")
    if res is None:
        k = FDModule.trivial(algebra)
        k.name = "k"
        res = MinimalResolution(k)
        algebra.__dict__["_kres"] = res
    return res


def ext_dims(m: FDModule, n: FDModule, top: int) -> list:
    """dim Ext^i(M, N) for i = 0..top from the complex Hom(P_i, N) = N^{r_i}."""
    A = m.algebra
    res = MinimalResolution(strip_projective(m) if m.dim else m)
    res.extend(top + 1)
    F = A.field
    r = [res.syz[i].presentation.r for i in range(top + 2)]

    def delta(i):
        # Hom(P_{i-1}, N) -> Hom(P_i, N)
        rows = []
        for x in res.differential(i):
            blocks = [n.act_vec(x[l * A.dim:(l + 1) * A.dim]) for l in range(r[i - 1])]
            rows.append(blocks[0].hstack(*blocks[1:]) if len(blocks) > 1 else blocks[0])
        if not rows:
            return Matrix.zeros(F, 0, r[i - 1] * n.dim)
        return rows[0].vstack(*rows[1:]) if len(rows) > 1 else rows[0]

    out = []
    for i in range(top + 1):
        mid = r[i] * n.dim
        ker = mid - (delta(i + 1).rank() if mid else 0)
        im = delta(i).rank() if i > 0 and mid else 0
        out.append(ker - im)
    return out


# chain-map lifting ------------------------------------------------------------

def lift_to_syzygy(f: Matrix, x: FDModule, y: FDModule) -> Matrix:
    """Omega f : Omega x -> Omega y for f : x -> y, through the covers of x and y."""
    A = x.algebra
    px, py = x.presentation, y.presentation
    F = A.field
    cols = []
    for i in range(px.r):
        xi = (py.section * (f * px.gens.submatrix(cols=[i]))).column(0) if y.dim else []
        for j in range(A.dim):
            L = block_diag(F, [A.left_mults[j]] * py.r)
            cols.append(L.apply(xi) if py.r else [])
    Fm = Matrix.from_columns(F, cols, py.r * A.dim) if cols else Matrix.zeros(F, py.r * A.dim, 0)
    Kx, Ky = px.kernel, py.kernel
    if Kx.ncols == 0 or Ky.ncols == 0:
        return Matrix.zeros(F, Ky.ncols, Kx.ncols)
    X = Ky.solve(Fm * Kx)
    if X is None:
        raise ArithmeticError("lift does not restrict to the syzygies")
    return X


@dataclass(frozen=True)
class CohomologyClass:
    """Element of H^d(A, k): values on the top generators of Omega^d k (fixed minimal resolution)."""
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)


class CohomologyRing:
    """H*(A, k) on the cached minimal resolution of k; products by lifting chain maps."""

    def __init__(self, algebra: AlgebraDatum, cap: int = RESOLUTION_CAP):
        self.algebra = algebra
        self.field = algebra.field
        self.res = trivial_resolution(algebra)
        self.cap = cap
        self._lifts = {}
        self._mono = {}

    def _check_cap(self, n):
        if n > self.cap:
            raise ResourceError(f"degree {n} exceeds the resolution cap {self.cap}")

    def dim(self, n: int) -> int:
        self._check_cap(n)
        return self.res.omega(n).presentation.r

    def dims(self, top: int) -> list:
        return [self.dim(n) for n in range(top + 1)]

    def basis(self, n: int) -> list:
        F = self.field
        d = self.dim(n)
        return [CohomologyClass(n, tuple(F.one if i == j else F.zero for i in range(d))) for j in range(d)]

    def cls(self, n: int, coords) -> CohomologyClass:
        return CohomologyClass(n, tuple(self.field(c) for c in coords))

    def one(self) -> CohomologyClass:
        return self.cls(0, [1])

    def representative(self, c: CohomologyClass) -> Matrix:
        """Row matrix of the map Omega^d k -> k."""
        src = self.res.omega(c.degree)
        k = self.res.omega(0)
        return HomSpace(src, k).to_map(list(c.coords))

    def _lifted(self, c: CohomologyClass, times: int) -> Matrix:
        """Omega^times of the representative: Omega^{d+times} k -> Omega^times k."""
        key = (c.degree, c.coords, times)
        if key in self._lifts:
            return self._lifts[key]
        if times == 0:
            out = self.representative(c)
        else:
            prev = self._lifted(c, times - 1)
            out = lift_to_syzygy(prev, self.res.omega(c.degree + times - 1), self.res.omega(times - 1))
        self._lifts[key] = out
        return out

    def coords_of_map(self, row: Matrix, n: int) -> tuple:
        gens = self.res.omega(n).presentation.gens
        return tuple((row * gens).rows()[0]) if gens.ncols else ()

    def product(self, z: CohomologyClass, e: CohomologyClass) -> CohomologyClass:
        d = z.degree + e.degree
        self._check_cap(d)
        row = self.representative(z) * self._lifted(e, z.degree)
        return CohomologyClass(d, self.coords_of_map(row, d))

    def add(self, *terms) -> CohomologyClass:
        """Linear combination sum c_i x_i of classes of one degree, terms given as (c, x)."""
        d = terms[0][1].degree
        out = [self.field.zero] * len(terms[0][1].coords)
        for c, x in terms:
            out = [a + self.field(c) * b for a, b in zip(out, x.coords)]
        return CohomologyClass(d, tuple(out))

    def power(self, x: CohomologyClass, n: int) -> CohomologyClass:
        out = self.one()
        for _ in range(n):
            out = self.product(out, x)
        return out

    def decomposables(self, n: int) -> Matrix:
        """Columns spanning products of positive-degree classes landing in degree n."""
        F = self.field
        cols = []
        for a in range(1, n):
            for x in self.basis(a):
                for y in self.basis(n - a):
                    cols.append(list(self.product(x, y).coords))
        return Matrix.from_columns(F, cols, self.dim(n)) if cols else Matrix.zeros(F, self.dim(n), 0)


@dataclass
class PresentationCheck:
    ok: bool
    computed_dims: list
    presented_dims: list
    relations_vanish: bool
    surjective_up_to: int
    assignment: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ok": self.ok, "computed_dims": self.computed_dims, "presented_dims": self.presented_dims,
                "relations_vanish": self.relations_vanish, "surjective_up_to": self.surjective_up_to,
                "assignment": self.assignment}


def _evaluate(ring, H: CohomologyRing, images: dict, poly, degree: int) -> CohomologyClass:
    F = H.field
    total = CohomologyClass(degree, tuple([F.zero] * H.dim(degree)))
    for mon, c in poly.terms.items():
        cls = H.one()
        for name, k in zip(ring.names, mon):
            for _ in range(k):
                cls = H.product(cls, images[name])
        total = H.add((1, total), (c, cls))
    return total


def check_presentation(algebra: AlgebraDatum, ring, cap: int = 8, max_assignments: int = 512) -> PresentationCheck:
    """Does H*(A, k) agree with ``ring`` through degree ``cap``?

    Generators of each degree are sent to a basis of a complement of the
    decomposables; every such assignment (up to ``max_assignments``) is tried.
    """
    H = CohomologyRing(algebra, max(cap, RESOLUTION_CAP))
    F = H.field
    computed = H.dims(cap)
    presented = [ring.dim(n) for n in range(cap + 1)]
    by_degree = {}
    for name, d in zip(ring.names, ring.degrees):
        by_degree.setdefault(d, []).append(name)
    options = []
    for d, names in sorted(by_degree.items()):
        if d > cap:
            continue
        D = H.decomposables(d)
        from gradua.stmod.module import extend_basis

        idx = extend_basis(D, Matrix.identity(F, H.dim(d)))
        if len(idx) != len(names):
            return PresentationCheck(False, computed, presented, False, -1,
                                     {"reason": f"{len(idx)} indecomposable classes in degree {d}, "
                                                f"{len(names)} generators"})
        comp = [H.basis(d)[i] for i in idx]
        choices = []
        for mat in _invertible(F, len(comp)):
            choices.append({nm: H.add(*[(mat[r][c], comp[c]) for c in range(len(comp))])
                            for r, nm in enumerate(names)})
        options.append(choices)
    best = None
    for count, combo in enumerate(itertools.product(*options)):
        if count >= max_assignments:
            break
        images = {}
        for part in combo:
            images.update(part)
        rel_ok = all(_evaluate(ring, H, images, ring.poly(r) if not hasattr(r, "terms") else r,
                               _hdeg(ring, r)).is_zero()
                     for r in ring.relations if _hdeg(ring, r) <= cap)
        surj = -1
        for n in range(cap + 1):
            mons = ring.standard_monomials(n)
            cols = [list(_evaluate(ring, H, images, ring.poly.monomial(m), n).coords) for m in mons]
            rank = Matrix.from_columns(F, cols, H.dim(n)).rank() if cols and H.dim(n) else 0
            if rank != H.dim(n):
                break
            surj = n
        ok = rel_ok and surj == cap and computed == presented
        asg = {nm: [F.format(c) for c in v.coords] for nm, v in images.items()}
        res = PresentationCheck(ok, computed, presented, rel_ok, surj, asg)
        if ok:
            return res
        best = best or res
    return best or PresentationCheck(computed == presented, computed, presented, True, cap, {})


def _hdeg(ring, r) -> int:
    p = ring.poly(r) if not hasattr(r, "terms") else r
    return p.degree()


def _invertible(F, n: int):
    """All invertible n x n matrices over a small prime field (identity only otherwise)."""
    ident = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    if not F.is_prime_field or F.p ** (n * n) > 4096:
        yield ident
        return
    yield ident
    for vals in itertools.product(range(F.p), repeat=n * n):
        M = [[F(vals[i * n + j]) for j in range(n)] for i in range(n)]
        if M == ident:
            continue
        if Matrix.from_rows(F, M, n).rank() == n:
            yield M
