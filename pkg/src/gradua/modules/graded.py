"""Finitely presented graded modules and their degreewise materialization.

Twist convention: M(i)_n = M_{n+i}, and the suspension is Sigma M = M(1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix
from gradua.rings.poly import Poly
from gradua.rings.ring import PresentationError, RingPresentation

# guard against runaway windows; a piece larger than this raises
PIECE_LIMIT = 4096


class ResourceError(RuntimeError):
    pass


class QuotientSpace:
    """F^N modulo the row span of ``sub``; coordinates are the non-pivot positions."""

    def __init__(self, field: Field, n: int, sub: Matrix | None = None):
        self.field = field
        self.ambient = n
        if sub is None or sub.nrows == 0 or n == 0:
            rows, piv = [], []
        else:
            R, piv = sub.rref()
            rows = R.rows()[: len(piv)]
        self.pivots = piv
        pivset = set(piv)
        self.free = [j for j in range(n) if j not in pivset]
        entries = []
        pos = {j: k for k, j in enumerate(self.free)}
        for k, j in enumerate(self.free):
            entries.append((k, j, 1))
        for i, j in enumerate(piv):
            for q, k in pos.items():
                c = rows[i][q]
                if c:
                    entries.append((k, j, -c))
        self.proj = Matrix.from_sparse(field, len(self.free), n, entries)

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, V: Matrix) -> Matrix:
        return self.proj * V

    def lift(self) -> Matrix:
        """Ambient vectors (columns) representing the quotient basis."""
        return Matrix.from_sparse(self.field, self.ambient, self.dim, [(j, k, 1) for k, j in enumerate(self.free)])


@dataclass
class DegreewiseModule:
    """Finite-dimensional pieces on [lo, hi] with multiplication maps by ring generators.

    ``actions[name][n]`` maps the piece at n to the piece at n + deg(name); it is
    stored whenever both degrees lie in the window.
    """

    ring: RingPresentation
    lo: int
    hi: int
    dims: dict
    actions: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def window(self):
        return (self.lo, self.hi)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def table(self) -> dict:
        return {n: self.dims.get(n, 0) for n in range(self.lo, self.hi + 1)}

    def act(self, name: str, n: int) -> Matrix:
        d = self.ring.degrees[self.ring.names.index(name)]
        m = self.actions.get(name, {}).get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n + d), self.dim(n))
        return m

    def act_poly(self, f: Poly, n: int) -> Matrix:
        """Action of a homogeneous ring element on the piece at n (needs every intermediate degree)."""
        f = self.ring.nf(f)
        if not f:
            return Matrix.zeros(self.field, 0, self.dim(n))
        e = f.degree()
        out = Matrix.zeros(self.field, self.dim(n + e), self.dim(n))
        for mon, c in f.terms.items():
            M = Matrix.identity(self.field, self.dim(n))
            cur = n
            for i, k in enumerate(mon):
                for _ in range(k):
                    M = self.act(self.ring.names[i], cur) * M
                    cur += self.ring.degrees[i]
            out = out + _scale(M, c)
        return out

    def twist(self, i: int) -> "DegreewiseModule":
        """M(i): the piece at n is M_{n+i}."""
        dims = {n - i: d for n, d in self.dims.items()}
        acts = {g: {n - i: m for n, m in per.items()} for g, per in self.actions.items()}
        return DegreewiseModule(self.ring, self.lo - i, self.hi - i, dims, acts)

    def restrict(self, lo: int, hi: int) -> "DegreewiseModule":
        dims = {n: d for n, d in self.dims.items() if lo <= n <= hi}
        acts = {}
        for g, per in self.actions.items():
            dg = self.ring.degrees[self.ring.names.index(g)]
            acts[g] = {n: m for n, m in per.items() if lo <= n and n + dg <= hi}
        return DegreewiseModule(self.ring, lo, hi, dims, acts)

    def action_ranks(self) -> dict:
        return {g: {n: m.rank() for n, m in sorted(per.items())} for g, per in sorted(self.actions.items())}

    def check_relations(self) -> bool:
        """Ring relations act as zero wherever the whole path stays in the window."""
        for r in self.ring.relations:
            e = r.degree()
            for n in range(self.lo, self.hi - e + 1):
                if self.dim(n) and not self.act_poly(r, n).is_zero():
                    return False
        return True

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "window": [self.lo, self.hi],
            "dims": {str(n): self.dim(n) for n in range(self.lo, self.hi + 1)},
            "actions": {g: {str(n): [[fmt(x) for x in row] for row in m.rows()] for n, m in sorted(per.items())}
                        for g, per in sorted(self.actions.items())},
        }


def _scale(M: Matrix, c) -> Matrix:
    if c == 1:
        return M
    return Matrix.from_sparse(M.field, M.nrows, M.nrows, [(i, i, c) for i in range(M.nrows)]) * M


class ModulePresentation:
    """coker(F_1 -> F_0) with F_0 = sum R(-g_i); columns of the matrix are relations."""

    def __init__(self, ring: RingPresentation, generator_degrees, relations_matrix=()):
        self.ring = ring
        self.generator_degrees = [int(g) for g in generator_degrees]
        ng = len(self.generator_degrees)
        rows = [list(r) for r in relations_matrix]
        if rows and len(rows) != ng:
            raise PresentationError("relations_matrix needs one row per generator")
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise PresentationError("relations_matrix is ragged")
        cols = []
        for j in range(ncols):
            col = [ring.nf(ring.poly(rows[i][j])) for i in range(ng)]
            deg = None
            for i, f in enumerate(col):
                if not f:
                    continue
                if not f.is_homogeneous():
                    raise PresentationError(f"relations_matrix[{i}][{j}] is not homogeneous")
                d = f.degree() + self.generator_degrees[i]
                if deg is not None and d != deg:
                    raise PresentationError(f"relation column {j} is not homogeneous")
                deg = d
            if deg is not None:
                cols.append((deg, col))
        self.relations = cols
        self._spaces = {}

    @classmethod
    def free(cls, ring: RingPresentation, degrees) -> "ModulePresentation":
        return cls(ring, degrees, [])

    @classmethod
    def cyclic(cls, ring: RingPresentation, gens, degree: int = 0) -> "ModulePresentation":
        """R/(gens) placed with its generator in ``degree``."""
        gens = [ring.poly(g) for g in gens]
        return cls(ring, [degree], [gens] if gens else [])

    @classmethod
    def from_json(cls, ring: RingPresentation, data) -> "ModulePresentation":
        if isinstance(data, str):
            data = json.loads(data)
        if "generator_degrees" not in data:
            raise PresentationError("module file is missing field 'generator_degrees'")
        return cls(ring, data["generator_degrees"], data.get("relations_matrix", []))

    def to_json(self) -> dict:
        ng = len(self.generator_degrees)
        return {"generator_degrees": list(self.generator_degrees),
                "relations_matrix": [[str(c[i]) for _, c in self.relations] for i in range(ng)]}

    # degreewise --------------------------------------------------------
    def free_basis(self, n: int) -> list:
        """Basis of F_0 in degree n as (generator index, standard monomial)."""
        out = []
        for i, g in enumerate(self.generator_degrees):
            for m in self.ring.standard_monomials(n - g) if n - g >= 0 else ():
                out.append((i, m))
        return out

    def _free_vector(self, elems, n: int) -> list:
        """Coordinates in F_0 degree n of a vector of ring elements."""
        v = []
        for i, g in enumerate(self.generator_degrees):
            if n - g < 0:
                continue
            f = elems[i]
            if f:
                v.extend(self.ring.coords(f, n - g))
            else:
                v.extend([self.ring.field.zero] * self.ring.dim(n - g))
        return v

    def space(self, n: int) -> QuotientSpace:
        q = self._spaces.get(n)
        if q is not None:
            return q
        N = len(self.free_basis(n))
        if N > PIECE_LIMIT:
            raise ResourceError(f"degree {n} piece of size {N} exceeds the budget")
        rows = []
        for d, col in self.relations:
            if d > n:
                continue
            for m in self.ring.standard_monomials(n - d):
                mono = self.ring.poly.monomial(m)
                rows.append(self._free_vector([mono * f if f else f for f in col], n))
        sub = Matrix.from_rows(self.ring.field, rows, N) if rows else None
        q = QuotientSpace(self.ring.field, N, sub)
        self._spaces[n] = q
        return q

    def dim(self, n: int) -> int:
        return self.space(n).dim

    def act(self, f: Poly, n: int) -> Matrix:
        """Matrix of multiplication by homogeneous f from M_n to M_{n+deg f}."""
        f = self.ring.nf(self.ring.poly(f))
        src, e = self.space(n), (f.degree() if f else 0)
        tgt = self.space(n + e)
        if not f:
            return Matrix.zeros(self.ring.field, tgt.dim, src.dim)
        basis = self.free_basis(n)
        cols = []
        lift = [basis[j] for j in src.free]
        for i, m in lift:
            elems = [self.ring.poly.zero()] * len(self.generator_degrees)
            elems[i] = self.ring.nf(self.ring.poly.monomial(m) * f)
            cols.append(self._free_vector(elems, n + e))
        V = Matrix.from_columns(self.ring.field, cols, len(self.free_basis(n + e)))
        return tgt.project(V)

    def element_coords(self, elems, n: int) -> list:
        """Quotient coordinates of the element sum elems[i] * e_i of degree n."""
        v = self._free_vector([self.ring.poly(e) for e in elems], n)
        return self.space(n).project(Matrix.from_columns(self.ring.field, [v], len(v))).column(0)


def degreewise_expand(m: ModulePresentation, window) -> DegreewiseModule:
    lo, hi = window
    dims = {n: m.dim(n) for n in range(lo, hi + 1)}
    acts = {}
    for name, d in zip(m.ring.names, m.ring.degrees):
        x = m.ring.poly.var(name)
        acts[name] = {n: m.act(x, n) for n in range(lo, hi - d + 1)}
    return DegreewiseModule(m.ring, lo, hi, dims, acts)


def ring_module(ring: RingPresentation, window) -> DegreewiseModule:
    return degreewise_expand(ModulePresentation.free(ring, [0]), window)


def graded_matlis_dual(d: DegreewiseModule) -> DegreewiseModule:
    """D(M)_n = Hom_k(M_{-n}, k); x acts on D(M)_n by the transpose of x: M_{-n-|x|} -> M_{-n}."""
    dims = {-n: k for n, k in d.dims.items()}
    acts = {}
    for g, per in d.actions.items():
        e = d.ring.degrees[d.ring.names.index(g)]
        acts[g] = {-(n + e): m.T for n, m in per.items()}
    return DegreewiseModule(d.ring, -d.hi, -d.lo, dims, acts)


def same_table(a: DegreewiseModule, b: DegreewiseModule, lo: int | None = None, hi: int | None = None) -> bool:
    lo = max(a.lo, b.lo) if lo is None else lo
    hi = min(a.hi, b.hi) if hi is None else hi
    return all(a.dim(n) == b.dim(n) for n in range(lo, hi + 1))
