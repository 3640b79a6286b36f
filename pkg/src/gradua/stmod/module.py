"""Modules over structure-constant algebras: Hom spaces, covers, syzygies, stable Hom, isomorphism."""

from __future__ import annotations

import json
import random
from functools import cached_property

import flint

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix, block_diag
from gradua.stmod.algebra import AlgebraDatum, AlgebraError, CapabilityError


class ModuleError(ValueError):
    pass


def _lin(mats, coeffs, field: Field, n: int, m: int) -> Matrix:
    out = Matrix.zeros(field, n, m)
    for M, c in zip(mats, coeffs):
        if c:
            out = out + (M if c == 1 else M * c)
    return out



def _cols(field: Field, cols, n: int) -> Matrix:
    return Matrix.from_columns(field, cols, n) if cols else Matrix.zeros(field, n, 0)


def column_basis(M: Matrix) -> Matrix:
    """Independent columns spanning the column space (pivot columns of M)."""
    if M.ncols == 0 or M.nrows == 0:
        return Matrix.zeros(M.field, M.nrows, 0)
    _, piv = M.rref()
    return M.submatrix(cols=piv)


def extend_basis(Q: Matrix, K: Matrix) -> list:
    """Indices of columns of K extending span(Q) to span(Q) + span(K)."""
    if K.ncols == 0:
        return []
    H = Q.hstack(K) if Q.ncols else K
    _, piv = H.rref()
    return [j - Q.ncols for j in piv if j >= Q.ncols]


class FDModule:
    """Left module given by action matrices of every algebra basis element."""

    def __init__(self, algebra: AlgebraDatum, dim: int, actions, name: str = "", check: bool = False):
        self.algebra = algebra
        self.dim = dim
        self.actions = list(actions)
        self.name = name
        if len(self.actions) != algebra.dim:
            raise ModuleError("one action matrix per algebra basis element is required")
        if check:
            self.check()

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        return f"FDModule({self.name or '?'}, dim={self.dim})"

    def act(self, i: int) -> Matrix:
        return self.actions[i]

    def act_vec(self, v) -> Matrix:
        return _lin(self.actions, v, self.field, self.dim, self.dim)

    @property
    def gen_actions(self) -> list:
        return [self.actions[g] for g in self.algebra.generators]

    def check(self):
        A = self.algebra
        if self.dim and self.act_vec(A.unit) != Matrix.identity(self.field, self.dim):
            raise ModuleError("unit does not act as the identity")
        for g in set(A.generators) | {0}:
            for j in range(A.dim):
                lhs = self.actions[g] * self.actions[j]
                rhs = _lin(self.actions, A.product(A.basis_vector(g), A.basis_vector(j)), self.field,
                           self.dim, self.dim)
                if lhs != rhs:
                    raise ModuleError(f"action violates the structure constants at ({A.labels[g]}, {A.labels[j]})")

    # constructors -----------------------------------------------------
    @classmethod
    def from_generator_actions(cls, algebra: AlgebraDatum, gen_mats: dict, dim: int, name: str = "") -> "FDModule":
        """Extend actions of the algebra generators to every basis element by spinning words."""
        F = algebra.field
        mats = {g: (m if isinstance(m, Matrix) else Matrix.from_rows(F, m, dim)) for g, m in gen_mats.items()}
        words = [(list(algebra.unit), Matrix.identity(F, dim))]
        span_rows = []
        chosen = []

        def try_add(vec, mat):
            rows = span_rows + [vec]
            if Matrix.from_rows(F, rows, algebra.dim).rank() > len(span_rows):
                span_rows.append(vec)
                chosen.append(mat)
                return True
            return False

        frontier = []
        for v, M in words:
            if try_add(v, M):
                frontier.append((v, M))
        while frontier and len(span_rows) < algebra.dim:
            nxt = []
            for v, M in frontier:
                for g, G in mats.items():
                    w = algebra.product(algebra.basis_vector(g), v)
                    W = G * M
                    if try_add(w, W):
                        nxt.append((w, W))
            frontier = nxt
        if len(span_rows) < algebra.dim:
            raise ModuleError("generators do not generate the algebra")
        S = Matrix.from_rows(F, span_rows, algebra.dim)  # rows: word vectors
        # e_i = sum c_w word_w  <=>  S^T c = e_i
        coeffs = S.T.inverse()
        actions = []
        for i in range(algebra.dim):
            c = coeffs.column(i)
            actions.append(_lin(chosen, c, F, dim, dim))
        mod = cls(algebra, dim, actions, name)
        mod.check()
        return mod

    @classmethod
    def free(cls, algebra: AlgebraDatum, rank: int = 1) -> "FDModule":
        acts = [block_diag(algebra.field, [algebra.left_mults[i]] * rank) if rank else
                Matrix.zeros(algebra.field, 0, 0) for i in range(algebra.dim)]
        return cls(algebra, rank * algebra.dim, acts, f"A^{rank}")

    @classmethod
    def trivial(cls, algebra: AlgebraDatum) -> "FDModule":
        if algebra.counit is None:
            raise CapabilityError("the trivial module needs a counit")
        F = algebra.field
        return cls(algebra, 1, [Matrix.from_rows(F, [[c]], 1) for c in algebra.counit], "k")

    @classmethod
    def zero(cls, algebra: AlgebraDatum) -> "FDModule":
        return cls(algebra, 0, [Matrix.zeros(algebra.field, 0, 0)] * algebra.dim, "0")

    @classmethod
    def from_json(cls, algebra: AlgebraDatum, data) -> "FDModule":
        if isinstance(data, str):
            data = json.loads(data)
        if "dim" not in data or "actions" not in data:
            raise ModuleError("module file needs fields 'dim' and 'actions'")
        dim = int(data["dim"])
        acts = data["actions"]
        idx = {lab: i for i, lab in enumerate(algebra.labels)}
        mats = {}
        for lab, m in acts.items():
            if lab not in idx:
                raise ModuleError(f"actions: unknown basis label {lab!r}")
            mats[idx[lab]] = Matrix.from_rows(algebra.field, [[algebra.field.parse(str(x)) for x in r] for r in m],
                                              dim)
        if len(mats) == algebra.dim:
            return cls(algebra, dim, [mats[i] for i in range(algebra.dim)], data.get("name", ""), check=True)
        missing = [algebra.labels[g] for g in algebra.generators if g not in mats]
        if missing:
            raise ModuleError(f"actions: missing generator {missing[0]!r}")
        return cls.from_generator_actions(algebra, {g: mats[g] for g in algebra.generators}, dim,
                                          data.get("name", ""))

    def to_json(self) -> dict:
        fmt = self.field.format
        return {"dim": self.dim, "name": self.name,
                "actions": {lab: [[fmt(x) for x in r] for r in self.actions[i].rows()]
                            for i, lab in enumerate(self.algebra.labels)}}

    # structural constructions ----------------------------------------
    def direct_sum(self, *others) -> "FDModule":
        mods = (self,) + others
        acts = [block_diag(self.field, [m.actions[i] for m in mods]) for i in range(self.algebra.dim)]
        return FDModule(self.algebra, sum(m.dim for m in mods), acts, "+".join(m.name or "?" for m in mods))

    def submodule(self, K: Matrix):
        """Submodule spanned by independent columns K (assumed invariant); returns (module, K)."""
        K = column_basis(K)
        if K.ncols == 0:
            return FDModule.zero(self.algebra), K
        acts = []
        for a in self.actions:
            X = K.solve(a * K)
            if X is None:
                raise ModuleError("subspace is not a submodule")
            acts.append(X)
        return FDModule(self.algebra, K.ncols, acts), K

    def span_submodule(self, vecs: Matrix) -> Matrix:
        """Columns spanning the submodule generated by the columns of ``vecs``."""
        if vecs.ncols == 0:
            return vecs
        imgs = [a * vecs for a in self.actions]
        return column_basis(imgs[0].hstack(*imgs[1:]) if len(imgs) > 1 else imgs[0])

    def quotient(self, K: Matrix):
        """M / span(K) for an invariant subspace; returns (module, projection matrix)."""
        from gradua.modules.graded import QuotientSpace

        q = QuotientSpace(self.field, self.dim, K.T if K.ncols else None)
        L = q.lift()
        acts = [q.project(a * L) for a in self.actions]
        return FDModule(self.algebra, q.dim, acts), q.proj

    # radical data (local algebras) -----------------------------------
    @cached_property
    def radical_span(self) -> Matrix:
        """Basis columns of J M, J = ker(counit)."""
        J = self.algebra.augmentation_ideal
        if self.dim == 0 or not J:
            return Matrix.zeros(self.field, self.dim, 0)
        mats = [self.act_vec(v) for v in J]
        return column_basis(mats[0].hstack(*mats[1:]) if len(mats) > 1 else mats[0])

    @cached_property
    def top_generators(self) -> Matrix:
        Q = self.radical_span
        idx = extend_basis(Q, Matrix.identity(self.field, self.dim))
        return Matrix.identity(self.field, self.dim).submatrix(cols=idx) if idx else \
            Matrix.zeros(self.field, self.dim, 0)

    @property
    def top_dim(self) -> int:
        return self.top_generators.ncols

    def socle_dim(self) -> int:
        J = self.algebra.augmentation_ideal
        if not self.dim:
            return 0
        mats = [self.act_vec(v) for v in J]
        return (mats[0].vstack(*mats[1:]) if len(mats) > 1 else mats[0]).nullity()

    @cached_property
    def presentation(self) -> "Presentation":
        _require_local(self.algebra)
        return Presentation(self)

    # invariants --------------------------------------------------------
    def free_rank(self) -> int:
        """Number of free summands: rank of the socle element of A acting on M."""
        _require_local(self.algebra)
        if not self.dim:
            return 0
        return self.act_vec(self.algebra.socle_element).rank()

    def is_projective(self) -> bool:
        return self.dim == self.free_rank() * self.algebra.dim


def _require_local(algebra: AlgebraDatum):
    if algebra.counit is None or not algebra.is_local:
        raise CapabilityError(f"{algebra.name or 'algebra'} is not a local algebra with a counit; "
                              "projective covers are implemented for local self-injective algebras")


class Presentation:
    """Projective cover A^r -> M with a linear section, and its kernel (the first syzygy)."""

    def __init__(self, m: FDModule):
        A = m.algebra
        F = m.field
        self.module = m
        gens = m.top_generators
        self.r = gens.ncols
        self.gens = gens
        cols = []
        for i in range(self.r):
            g = gens.column(i)
            for j in range(A.dim):
                cols.append(m.actions[j].apply(g) if m.dim else [])
        self.pi = _cols(F, cols, m.dim)
        # section: pi restricted to pivot columns is invertible
        if m.dim:
            _, piv = self.pi.rref()
            inv = self.pi.submatrix(cols=piv).inverse()
            entries = []
            for k, j in enumerate(piv):
                for q in range(m.dim):
                    c = inv[k, q]
                    if c:
                        entries.append((j, q, c))
            self.section = Matrix.from_sparse(F, self.r * A.dim, m.dim, entries)
        else:
            self.section = Matrix.zeros(F, 0, 0)
        self.cover = FDModule.free(A, self.r)
        self.kernel = self.pi.kernel() if m.dim else Matrix.zeros(F, 0, 0)

    @cached_property
    def syzygy(self) -> FDModule:
        mod, _ = self.cover.submodule(self.kernel)
        mod.name = f"Omega({self.module.name})" if self.module.name else ""
        return mod

    @cached_property
    def relations(self) -> list:
        """Top generators of the kernel, each as a vector in A^r."""
        om = self.syzygy
        if om.dim == 0:
            return []
        T = om.top_generators
        V = self.kernel * T
        return [V.column(j) for j in range(V.ncols)]


# Hom spaces ---------------------------------------------------------------------

class HomSpace:
    """Hom_A(M, N) in n-coordinates (images of the top generators of M)."""

    def __init__(self, m: FDModule, n: FDModule):
        if m.algebra is not n.algebra and m.algebra.labels != n.algebra.labels:
            raise ModuleError("modules over different algebras")
        self.m, self.n = m, n
        F = m.field
        pres = m.presentation
        self.pres = pres
        A = m.algebra
        r, dn = pres.r, n.dim
        rows = []
        blocks = []
        for rel in pres.relations:
            row = []
            for i in range(r):
                c = rel[i * A.dim:(i + 1) * A.dim]
                row.append(n.act_vec(c))
            blocks.append(row[0].hstack(*row[1:]) if r > 1 else row[0])
        total = r * dn
        if not blocks or total == 0:
            self.basis = Matrix.identity(F, total)
        else:
            E = blocks[0].vstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
            self.basis = E.kernel()
        self.dim = self.basis.ncols

    def to_map(self, v) -> Matrix:
        """Matrix of the homomorphism with n-coordinates v."""
        m, n = self.m, self.n
        F = m.field
        A = m.algebra
        if m.dim == 0 or n.dim == 0:
            return Matrix.zeros(F, n.dim, m.dim)
        cols = []
        for i in range(self.pres.r):
            ni = v[i * n.dim:(i + 1) * n.dim]
            for j in range(A.dim):
                cols.append(n.actions[j].apply(ni))
        W = _cols(F, cols, n.dim)
        return W * self.pres.section

    def maps(self) -> list:
        return [self.to_map(self.basis.column(j)) for j in range(self.dim)]

    def coords_of(self, f: Matrix) -> list:
        """n-coordinates of a homomorphism given as a matrix."""
        return sum((f * self.pres.gens).columns(), [])

    @cached_property
    def projective_part(self) -> Matrix:
        """Columns spanning PHom(M, N) in n-coordinates: maps m -> psi(m) x with psi in Hom(M, A)."""
        m, n = self.m, self.n
        F = m.field
        A = m.algebra
        r = self.pres.r
        if r == 0 or n.dim == 0:
            return Matrix.zeros(F, r * n.dim, 0)
        hm = hom_to_regular(m)
        blocks = []
        for k in range(hm.dim):
            psi = hm.basis.column(k)
            stack = [n.act_vec(psi[i * A.dim:(i + 1) * A.dim]) for i in range(r)]
            blocks.append(stack[0].vstack(*stack[1:]) if r > 1 else stack[0])
        if not blocks:
            return Matrix.zeros(F, r * n.dim, 0)
        B = blocks[0].hstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
        return column_basis(B)

    @property
    def phom_dim(self) -> int:
        return self.projective_part.ncols

    @property
    def stable_dim(self) -> int:
        return self.dim - self.phom_dim

    def stable_basis(self) -> list:
        """n-coordinates of maps whose classes form a basis of the stable Hom space."""
        P = self.projective_part
        idx = extend_basis(P, self.basis)
        return [self.basis.column(j) for j in idx]


def hom_to_regular(m: FDModule) -> HomSpace:
    cache = m.__dict__.setdefault("_hom_reg", None)
    if cache is None:
        cache = HomSpace(m, regular(m.algebra))
        m.__dict__["_hom_reg"] = cache
    return cache


def regular(algebra: AlgebraDatum) -> FDModule:
    reg = algebra.__dict__.get("_regular")
    if reg is None:
        reg = FDModule.free(algebra, 1)
        reg.name = "A"
        algebra.__dict__["_regular"] = reg
    return reg


def hom(m: FDModule, n: FDModule) -> HomSpace:
    return HomSpace(m, n)


def stable_hom(m: FDModule, n: FDModule):
    """(dimension, representative maps of a basis of stable classes)."""
    h = HomSpace(m, n)
    return h.stable_dim, [h.to_map(v) for v in h.stable_basis()]


def stable_hom_dim(m: FDModule, n: FDModule) -> int:
    return HomSpace(m, n).stable_dim


# covers, syzygies, stripping -----------------------------------------------------

def projective_cover(m: FDModule):
    p = m.presentation
    return p.cover, p.pi


def strip_projective(m: FDModule) -> FDModule:
    f = m.free_rank()
    if f == 0:
        return m
    S = m.act_vec(m.algebra.socle_element)
    _, piv = S.rref()
    # columns e_q with sigma e_q independent generate a free summand
    basis = Matrix.identity(m.field, m.dim).submatrix(cols=piv)
    span = m.span_submodule(basis)
    q, _ = m.quotient(span)
    q.name = m.name
    return q


def opposite(algebra: AlgebraDatum) -> AlgebraDatum:
    return algebra.opposite()


def transpose_dual(m: FDModule) -> FDModule:
    """Hom_k(M, k) as a module over the opposite algebra (transposed actions)."""
    return FDModule(opposite(m.algebra), m.dim, [a.T for a in m.actions], f"D({m.name})" if m.name else "")


def syzygy(m: FDModule, n: int = 1) -> FDModule:
    """Omega^n M (n > 0 kernels of covers, n < 0 via the dual); the result has no projective summands."""
    cur = m
    if n >= 0:
        if n and cur.free_rank():
            cur = strip_projective(cur)
        for _ in range(n):
            cur = cur.presentation.syzygy
        if n == 0:
            cur = strip_projective(cur)
        return cur
    d = transpose_dual(cur)
    d = syzygy(d, -n)
    out = transpose_dual(d)
    return out


# isomorphism ------------------------------------------------------------------

def is_isomorphic(m: FDModule, n: FDModule, seed: int = 0, attempts: int = 40):
    """True/False; random intertwiners over the prime field, then Schwartz-Zippel over GF(p^20)."""
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    if m.top_dim != n.top_dim or m.socle_dim() != n.socle_dim():
        return False
    h = HomSpace(m, n)
    if h.dim == 0:
        return False
    h2 = HomSpace(n, m)
    if h2.dim != HomSpace(m, m).dim:
        return False
    maps = h.maps()
    rng = random.Random(seed)
    F = m.field
    p = F.p
    for _ in range(attempts):
        f = Matrix.zeros(F, n.dim, m.dim)
        for g in maps:
            c = rng.randrange(p)
            if c:
                f = f + g * c
        if f.rank() == m.dim:
            return True
    if not F.is_prime_field:
        return False
    return _schwartz_zippel(maps, m.dim, p, rng)


def _schwartz_zippel(maps, n: int, p: int, rng) -> bool:
    ctx = flint.fq_default_ctx(p, 20)
    ints = [[[int(x) for x in r] for r in g.rows()] for g in maps]
    for _ in range(3):
        coeffs = [ctx.random_element() for _ in maps]
        M = [[ctx.zero() for _ in range(n)] for _ in range(n)]
        for c, g in zip(coeffs, ints):
            for i in range(n):
                row = g[i]
                Mi = M[i]
                for j in range(n):
                    if row[j]:
                        Mi[j] = Mi[j] + c * row[j]
        if _fq_nonsingular(M, ctx):
            return True
    return False


def _fq_nonsingular(M, ctx) -> bool:
    n = len(M)
    M = [r[:] for r in M]
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            return False
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if not M[r][c].is_zero():
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return True


def stably_isomorphic(m: FDModule, n: FDModule, seed: int = 0) -> bool:
    return is_isomorphic(strip_projective(m), strip_projective(n), seed=seed)


# random modules ----------------------------------------------------------------

def random_module(algebra: AlgebraDatum, rng: random.Random, max_dim: int = 12, max_rank: int = 3) -> FDModule:
    """Random non-projective quotient of a free module of rank <= max_rank, without projective summands."""
    F = algebra.field
    while True:
        r = rng.randint(1, max_rank)
        free = FDModule.free(algebra, r)
        rad = free.radical_span
        target = rng.randint(r, max(r, max_dim))
        K = Matrix.zeros(F, free.dim, 0)
        while free.dim - K.ncols > target and K.ncols < rad.ncols:
            # relations drawn from the radical keep the top of the quotient equal to r
            c = [F(rng.randrange(F.p)) for _ in range(rad.ncols)]
            v = rad.apply(c)
            K = column_basis(K.hstack(free.span_submodule(Matrix.from_columns(F, [v], free.dim))))
        q, _ = free.quotient(K)
        q = strip_projective(q)
        if 0 < q.dim <= max_dim:
            q.name = f"rand{q.dim}"
            return q
