"""Finite-dimensional algebras by structure constants, with optional Hopf data."""

from __future__ import annotations

import itertools
import json
import warnings
from functools import cached_property

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix


class AlgebraError(ValueError):
    pass


class CapabilityError(RuntimeError):
    pass


class AlgebraDatum:
    """Basis e_0..e_{n-1}; ``mul[(i, j)]`` is a list of (k, c) with e_i e_j = sum c e_k."""

    def __init__(self, field: Field, labels, mul, unit, generators=None, comul=None, counit=None,
                 antipode=None, name: str = "", check: bool = True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mul = {k: [(a, field(c)) for a, c in v if field(c)] for k, v in mul.items()}
        self.unit = [field(c) for c in unit]
        self.generators = list(generators) if generators is not None else list(range(self.dim))
        self.comul = comul
        self.counit = [field(c) for c in counit] if counit is not None else None
        self.antipode = antipode
        self.name = name
        if check:
            self.check()

    # structure --------------------------------------------------------
    def product(self, u, v) -> list:
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.mul.get((i, j), ()):
                    out[k] = out[k] + a * b * c
        return out

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def left_mult(self, i: int) -> Matrix:
        return Matrix.from_sparse(self.field, self.dim, self.dim,
                                  [(k, j, c) for j in range(self.dim) for k, c in self.mul.get((i, j), ())])

    def right_mult(self, i: int) -> Matrix:
        return Matrix.from_sparse(self.field, self.dim, self.dim,
                                  [(k, j, c) for j in range(self.dim) for k, c in self.mul.get((j, i), ())])

    @cached_property
    def left_mults(self) -> list:
        return [self.left_mult(i) for i in range(self.dim)]

    @cached_property
    def right_mults(self) -> list:
        return [self.right_mult(i) for i in range(self.dim)]

    def check(self):
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.product(self.product(e[i], e[j]), e[k]) != self.product(e[i], self.product(e[j], e[k])):
                raise AlgebraError(f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        for i in range(n):
            if self.product(self.unit, e[i]) != e[i] or self.product(e[i], self.unit) != e[i]:
                raise AlgebraError("unit law fails")
        if self.comul is not None:
            self._check_hopf()

    def _check_hopf(self):
        n, F = self.dim, self.field
        # comultiplication is an algebra map, counit law, antipode law
        for i, j in itertools.product(range(n), repeat=2):
            lhs = self._delta_vec(self.product(self.basis_vector(i), self.basis_vector(j)))
            rhs = self._tensor_prod(self._delta_vec(self.basis_vector(i)), self._delta_vec(self.basis_vector(j)))
            if lhs != rhs:
                raise AlgebraError("comultiplication is not multiplicative")
        for i in range(n):
            d = self.comul[i]
            left = [F.zero] * n
            right = [F.zero] * n
            sl = [F.zero] * n
            for a, b, c in d:
                left[b] = left[b] + self.counit[a] * F(c)
                right[a] = right[a] + self.counit[b] * F(c)
                sa = self.antipode_matrix.column(a)
                sl = [x + y for x, y in zip(sl, [F(c) * z for z in self.product(sa, self.basis_vector(b))])]
            if left != self.basis_vector(i) or right != self.basis_vector(i):
                raise AlgebraError("counit law fails")
            want = [self.counit[i] * u for u in self.unit]
            if sl != want:
                raise AlgebraError("antipode law fails")

    def _delta_vec(self, v) -> dict:
        out = {}
        for i, a in enumerate(v):
            if a:
                for x, y, c in self.comul[i]:
                    out[(x, y)] = out.get((x, y), self.field.zero) + a * self.field(c)
        return {k: c for k, c in out.items() if c}

    def _tensor_prod(self, s: dict, t: dict) -> dict:
        out = {}
        for (a, b), c in s.items():
            for (x, y), d in t.items():
                for k1, c1 in self.mul.get((a, x), ()):
                    for k2, c2 in self.mul.get((b, y), ()):
                        key = (k1, k2)
                        out[key] = out.get(key, self.field.zero) + c * d * c1 * c2
        return {k: c for k, c in out.items() if c}

    @property
    def has_hopf(self) -> bool:
        return self.comul is not None

    @cached_property
    def antipode_matrix(self) -> Matrix:
        if self.antipode is None:
            raise CapabilityError("algebra has no antipode")
        return Matrix.from_rows(self.field, self.antipode, self.dim)

    # derived data -----------------------------------------------------
    def opposite(self) -> "AlgebraDatum":
        op = self.__dict__.get("_op")
        if op is None:
            mul = {(j, i): v for (i, j), v in self.mul.items()}
            op = AlgebraDatum(self.field, self.labels, mul, self.unit, self.generators, counit=self.counit,
                              name=self.name + "^op", check=False)
            op.__dict__["_op"] = self
            self.__dict__["_op"] = op
        return op

    def base_change(self, field: Field) -> "AlgebraDatum":
        return AlgebraDatum(field, self.labels, {k: [(a, field(c)) for a, c in v] for k, v in self.mul.items()},
                            [field(c) for c in self.unit], self.generators, self.comul,
                            None if self.counit is None else [field(c) for c in self.counit],
                            None if self.antipode is None else [[field(c) for c in r] for r in self.antipode],
                            name=self.name, check=False)

    @cached_property
    def augmentation_ideal(self) -> list:
        """Basis vectors of ker(counit)."""
        if self.counit is None:
            raise CapabilityError("algebra has no counit; the radical is not available")
        M = Matrix.from_rows(self.field, [self.counit], self.dim)
        K = M.kernel()
        return [K.column(j) for j in range(K.ncols)]

    @cached_property
    def is_local(self) -> bool:
        """ker(counit) is nilpotent, so it is the radical and the algebra is local."""
        J = self.augmentation_ideal
        cur = J
        for _ in range(self.dim + 1):
            if not cur:
                return True
            prods = [self.product(a, b) for a in cur for b in J]
            M = Matrix.from_columns(self.field, prods, self.dim)
            R, piv = M.T.rref()
            cur = R.rows()[: len(piv)]
            if len(cur) == self.dim:
                return False
        return not cur

    @cached_property
    def socle_element(self) -> list:
        """Spanning vector of the left socle {a : J a = 0} of a local Frobenius algebra."""
        J = self.augmentation_ideal
        rows = []
        for v in J:
            rows.extend(self._vec_left(v).rows())
        K = Matrix.from_rows(self.field, rows, self.dim).kernel()
        if K.ncols != 1:
            raise AlgebraError(f"left socle has dimension {K.ncols}; algebra is not local Frobenius")
        return K.column(0)

    def _vec_left(self, v) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, a in enumerate(v):
            if a:
                out = out + _scale(self.left_mults[i], a)
        return out

    def is_commutative(self) -> bool:
        return all(sorted(self.mul.get((i, j), ())) == sorted(self.mul.get((j, i), ()))
                   for i in range(self.dim) for j in range(self.dim))

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        fmt = self.field.format
        out = {"field": self.field.descriptor(), "dim": self.dim, "basis": list(self.labels),
               "mul": [[i, j, k, fmt(c)] for (i, j), v in sorted(self.mul.items()) for k, c in v],
               "unit": [fmt(c) for c in self.unit], "generators": list(self.generators)}
        if self.comul is not None:
            out["comul"] = [[i, a, b, fmt(self.field(c))] for i, v in enumerate(self.comul) for a, b, c in v]
            out["counit"] = [fmt(c) for c in self.counit]
            out["antipode"] = [[fmt(self.field(c)) for c in r] for r in self.antipode]
        return out

    @classmethod
    def from_json(cls, data) -> "AlgebraDatum":
        if isinstance(data, str):
            data = json.loads(data)
        for key in ("field", "dim", "basis", "mul"):
            if key not in data:
                raise AlgebraError(f"algebra file is missing field {key!r}")
        F = Field.from_descriptor(data["field"])
        n = int(data["dim"])
        if len(data["basis"]) != n:
            raise AlgebraError("field 'basis' does not have 'dim' entries")
        mul = {}
        for i, j, k, c in data["mul"]:
            mul.setdefault((int(i), int(j)), []).append((int(k), F.parse(str(c))))
        unit = data.get("unit")
        unit = [F.parse(str(c)) for c in unit] if unit is not None else [1] + [0] * (n - 1)
        comul = counit = antipode = None
        if "comul" in data:
            comul = [[] for _ in range(n)]
            for i, a, b, c in data["comul"]:
                comul[int(i)].append((int(a), int(b), F.parse(str(c))))
            if "counit" not in data or "antipode" not in data:
                raise AlgebraError("Hopf data needs 'counit' and 'antipode'")
            counit = [F.parse(str(c)) for c in data["counit"]]
            antipode = [[F.parse(str(c)) for c in r] for r in data["antipode"]]
        return cls(F, data["basis"], mul, unit, data.get("generators"), comul, counit, antipode,
                   name=data.get("name", ""))


def _scale(M: Matrix, c) -> Matrix:
    if c == 1:
        return M
    return Matrix.from_sparse(M.field, M.nrows, M.nrows, [(i, i, c) for i in range(M.nrows)]) * M


# finite groups ----------------------------------------------------------------

class Group:
    def __init__(self, name: str, elements, mult, generators):
        self.name = name
        self.elements = list(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.table = [[self.index[mult(a, b)] for b in self.elements] for a in self.elements]
        self.identity = next(i for i in range(len(self.elements))
                             if all(self.table[i][j] == j for j in range(len(self.elements))))
        self.inverse = [next(j for j in range(len(self.elements)) if self.table[i][j] == self.identity)
                        for i in range(len(self.elements))]
        self.generators = [self.index[g] for g in generators]

    @property
    def order(self) -> int:
        return len(self.elements)

    def label(self, i: int) -> str:
        return str(self.elements[i])


def cyclic(n: int) -> Group:
    return Group(f"Z/{n}", range(n), lambda a, b: (a + b) % n, [1] if n > 1 else [])


def elementary_abelian(p: int, r: int) -> Group:
    els = list(itertools.product(range(p), repeat=r))
    gens = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    return Group(f"({p})^{r}", els, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), gens)


_QMUL = {("1", u): (1, u) for u in "1ijk"}
_QMUL.update({(u, "1"): (1, u) for u in "1ijk"})
_QMUL.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
              ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
              ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})


def quaternion8() -> Group:
    els = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mult(a, b):
        s, u = _QMUL[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    g = Group("Q8", els, mult, [(1, "i"), (1, "j")])
    g.elements = [("" if s == 1 else "-") + u for s, u in els]
    return g


def dihedral8() -> Group:
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def comp(a, b):
        return tuple(a[b[i]] for i in range(4))

    els = {(0, 1, 2, 3)}
    frontier = [(0, 1, 2, 3)]
    while frontier:
        x = frontier.pop()
        for g in (r, s):
            y = comp(x, g)
            if y not in els:
                els.add(y)
                frontier.append(y)
    return Group("D8", sorted(els), comp, [r, s])


def direct_product(g: Group, h: Group) -> Group:
    els = [(a, b) for a in range(g.order) for b in range(h.order)]
    gens = [(x, h.identity) for x in g.generators] + [(g.identity, y) for y in h.generators]
    grp = Group(f"{g.name}x{h.name}", els, lambda a, b: (g.table[a[0]][b[0]], h.table[a[1]][b[1]]), gens)
    grp.elements = [f"({g.label(a)},{h.label(b)})" for a, b in els]
    return grp


def group_algebra(group: Group, field: Field) -> AlgebraDatum:
    n = group.order
    if n % field.p:
        warnings.warn(f"characteristic {field.p} does not divide |{group.name}|; the stable category is trivial")
    mul = {(i, j): [(group.table[i][j], 1)] for i in range(n) for j in range(n)}
    unit = [1 if i == group.identity else 0 for i in range(n)]
    comul = [[(i, i, 1)] for i in range(n)]
    counit = [1] * n
    antipode = [[1 if group.inverse[j] == i else 0 for j in range(n)] for i in range(n)]
    alg = AlgebraDatum(field, [group.label(i) for i in range(n)], mul, unit, group.generators, comul, counit,
                       antipode, name=f"k[{group.name}]", check=False)
    alg.group = group
    return alg


def restricted_borel(field: Field | None = None) -> AlgebraDatum:
    """u(b) over F_2: [x, y] = y, x^[2] = x, y^[2] = 0; basis 1, x, y, xy."""
    F = field or Field(2)
    if F.p != 2:
        raise AlgebraError("the restricted Borel algebra is built in characteristic 2")
    one, x, y, xy = range(4)
    mul = {}
    for i in range(4):
        mul[(one, i)] = [(i, 1)]
        mul[(i, one)] = [(i, 1)]
    mul[(x, x)] = [(x, 1)]
    mul[(x, y)] = [(xy, 1)]
    mul[(x, xy)] = [(xy, 1)]
    mul[(y, x)] = [(xy, 1), (y, 1)]
    mul[(y, y)] = []
    mul[(y, xy)] = []
    mul[(xy, x)] = []
    mul[(xy, y)] = []
    mul[(xy, xy)] = []
    comul = [[(one, one, 1)],
             [(x, one, 1), (one, x, 1)],
             [(y, one, 1), (one, y, 1)],
             [(xy, one, 1), (x, y, 1), (y, x, 1), (one, xy, 1)]]
    counit = [1, 0, 0, 0]
    # S(x) = x, S(y) = y, S(xy) = yx = xy + y (columns are images)
    antipode = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    return AlgebraDatum(F, ["1", "x", "y", "xy"], mul, [1, 0, 0, 0], [x, y], comul, counit, antipode,
                        name="u(b)")


def make_group_algebra(spec: str, field: Field | None = None) -> AlgebraDatum:
    """Specs: cyclic:N, elementary_abelian:P:R, klein_four, quaternion8, dihedral8, product:A,B."""
    F = field or Field(2)
    spec = spec.strip()
    if spec.startswith("product:"):
        parts = _split_product(spec[len("product:"):])
        g = _group(parts[0], F)
        for p in parts[1:]:
            g = direct_product(g, _group(p, F))
        return group_algebra(g, F)
    if spec in ("u(b)", "restricted_borel"):
        return restricted_borel(F)
    return group_algebra(_group(spec, F), F)


def _split_product(s: str) -> list:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return [x.strip().strip("()") for x in out]


def _group(spec: str, F: Field) -> Group:
    if spec == "klein_four":
        return elementary_abelian(2, 2)
    if spec == "quaternion8":
        if F.p != 2:
            raise AlgebraError("quaternion8 is supported in characteristic 2")
        return quaternion8()
    if spec == "dihedral8":
        if F.p != 2:
            raise AlgebraError("dihedral8 is supported in characteristic 2")
        return dihedral8()
    if spec.startswith("cyclic:"):
        return cyclic(int(spec.split(":")[1]))
    if spec.startswith("elementary_abelian:"):
        _, p, r = spec.split(":")
        return elementary_abelian(int(p), int(r))
    raise AlgebraError(f"unknown group spec {spec!r}")
