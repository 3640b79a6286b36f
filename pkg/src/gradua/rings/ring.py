"""Graded commutative rings k[x_1..x_n]/(relations) and their homogeneous ideals."""

from __future__ import annotations

import json
from functools import cached_property

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix
from gradua.rings.groebner import groebner, reduce_full
from gradua.rings.poly import Poly, PolyRing


class PresentationError(ValueError):
    pass


class RingPresentation:
    def __init__(self, field: Field, generators, relations=(), name: str | None = None):
        gens = [(g[0], int(g[1])) if not isinstance(g, dict) else (g["name"], int(g["degree"]))
                for g in generators]
        if not gens:
            raise PresentationError("at least one generator is required")
        names = [g[0] for g in gens]
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be distinct")
        if set(names) & set(field.names):
            raise PresentationError("generator names clash with transcendentals")
        degrees = [g[1] for g in gens]
        if any(d < 1 for d in degrees):
            raise PresentationError("generator degrees must be >= 1")
        if field.p != 2 and any(d % 2 for d in degrees):
            raise PresentationError("odd-degree generators need characteristic 2 (strict commutativity)")
        self.field = field
        self.generators = tuple(gens)
        self.poly = PolyRing(field, names, degrees)
        rels = []
        for r in relations:
            f = self.poly(r) if not isinstance(r, Poly) else self.poly(r)
            if not f.is_homogeneous():
                raise PresentationError(f"relation {f} is not homogeneous")
            if f and f.degree() == 0:
                raise PresentationError("relations must have positive degree (connected ring)")
            if f:
                rels.append(f)
        self.relations = tuple(rels)
        self.name = name
        self._std = {}
        self._nf = {}

    # identity ---------------------------------------------------------
    @property
    def names(self):
        return self.poly.names

    @property
    def degrees(self):
        return self.poly.degrees

    @property
    def ngens(self) -> int:
        return self.poly.nvars

    def __repr__(self):
        rel = ", ".join(str(r) for r in self.relations)
        return f"{self.poly}/({rel})" if rel else repr(self.poly)

    def to_json(self) -> dict:
        return {"field": self.field.descriptor(),
                "generators": [{"name": n, "degree": d} for n, d in self.generators],
                "relations": [str(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data) -> "RingPresentation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            field = Field.from_descriptor(data["field"])
            gens = data["generators"]
        except KeyError as e:
            raise PresentationError(f"ring file is missing field {e.args[0]!r}") from None
        rels = data.get("relations", [])
        try:
            return cls(field, gens, rels)
        except ValueError as e:
            if not isinstance(rels, list):
                raise PresentationError("field 'relations' must be a list") from None
            for i, r in enumerate(rels):
                try:
                    cls(field, gens, [r])
                except ValueError as f:
                    raise PresentationError(f"relations[{i}]: {f}") from None
            raise PresentationError(f"generators: {e}") from None

    def key(self):
        return (self.field, self.generators, tuple(str(r) for r in self.relations))

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # Groebner machinery -----------------------------------------------
    @cached_property
    def gb(self) -> list:
        return groebner(list(self.relations), self.poly)

    @cached_property
    def leading_monomials(self) -> list:
        return [g.lm() for g in self.gb]

    def __call__(self, x) -> Poly:
        f = self.poly(x)
        return f

    def nf(self, f) -> Poly:
        f = self.poly(f)
        return reduce_full(f, self.gb)

    def nf_monomial(self, m) -> Poly:
        r = self._nf.get(m)
        if r is None:
            r = reduce_full(self.poly.monomial(m), self.gb)
            self._nf[m] = r
        return r

    def standard_monomials(self, n: int) -> tuple:
        s = self._std.get(n)
        if s is None:
            lms = self.leading_monomials
            s = tuple(m for m in self.poly.monomials_of_degree(n)
                      if not any(all(a <= b for a, b in zip(l, m)) for l in lms))
            self._std[n] = s
        return s

    def dim(self, n: int) -> int:
        return len(self.standard_monomials(n)) if n >= 0 else 0

    def coords(self, f: Poly, n: int) -> list:
        """Coordinates of a homogeneous element of degree n on the standard monomial basis."""
        std = self.standard_monomials(n)
        idx = {m: i for i, m in enumerate(std)}
        v = [self.field.zero] * len(std)
        g = self.nf(f)
        for m, c in g.terms.items():
            if self.poly.mdeg(m) != n:
                raise PresentationError(f"{f} is not homogeneous of degree {n}")
            v[idx[m]] = c
        return v

    def element(self, coords, n: int) -> Poly:
        std = self.standard_monomials(n)
        return Poly(self.poly, {m: c for m, c in zip(std, coords) if c})

    def mult_matrix(self, f: Poly, n: int) -> Matrix:
        """Matrix of multiplication by homogeneous f from degree n to n + deg f."""
        f = self.nf(f)
        d = f.degree() if f else 0
        src = self.standard_monomials(n)
        tgt = self.standard_monomials(n + d)
        idx = {m: i for i, m in enumerate(tgt)}
        entries = []
        for j, m in enumerate(src):
            for fm, fc in f.terms.items():
                prod = self.nf_monomial(tuple(a + b for a, b in zip(m, fm)))
                for pm, pc in prod.terms.items():
                    entries.append((idx[pm], j, fc * pc))
        return Matrix.from_sparse(self.field, len(tgt), len(src), entries)

    # constructions ------------------------------------------------------
    def ideal(self, gens) -> "HomIdeal":
        return HomIdeal(self, gens)

    def zero_ideal(self) -> "HomIdeal":
        return HomIdeal(self, [])

    def irrelevant_ideal(self) -> "HomIdeal":
        return HomIdeal(self, [self.poly.var(i) for i in range(self.ngens)])

    def quotient(self, ideal: "HomIdeal") -> "RingPresentation":
        rels = list(self.relations) + [self.poly(g) for g in ideal.generators]
        return RingPresentation(self.field, self.generators, [g for g in groebner(rels, self.poly)])

    def base_change(self, field: Field) -> "RingPresentation":
        return RingPresentation(field, self.generators, [self.change_field(r, field) for r in self.relations])

    def change_field(self, f: Poly, field: Field) -> Poly:
        target = self.poly.with_field(field)
        return Poly(target, {m: field(c) for m, c in f.terms.items()})

    def hilbert_series(self):
        from gradua.rings.hilbert import hilbert_series
        return hilbert_series(self)

    def krull_dimension(self) -> int:
        return self.hilbert_series().pole_order()


class HomIdeal:
    """Homogeneous ideal of a RingPresentation given by generators."""

    def __init__(self, ring: RingPresentation, gens):
        self.ring = ring
        out = []
        for g in gens:
            f = ring.poly(g)
            if not f.is_homogeneous():
                raise PresentationError(f"ideal generator {f} is not homogeneous")
            f = ring.nf(f)
            if f:
                out.append(f)
        self.generators = tuple(out)

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def to_json(self) -> dict:
        return {"generators": [str(g) for g in self.generators]}

    @classmethod
    def from_json(cls, ring: RingPresentation, data) -> "HomIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        if "generators" not in data:
            raise PresentationError("ideal file is missing field 'generators'")
        return cls(ring, data["generators"])

    @cached_property
    def gb(self) -> list:
        """Reduced Groebner basis of the preimage ideal (relations + generators)."""
        return groebner(list(self.ring.relations) + list(self.generators), self.ring.poly)

    def normal_form(self, f) -> Poly:
        return reduce_full(self.ring.poly(f), self.gb)

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.gb)

    def __eq__(self, other):
        if not isinstance(other, HomIdeal):
            return NotImplemented
        return self.ring == other.ring and [str(g) for g in self.gb] == [str(g) for g in other.gb]

    def __hash__(self):
        return hash(tuple(str(g) for g in self.gb))

    def quotient_ring(self) -> RingPresentation:
        return self.ring.quotient(self)

    def base_change(self, ring_k: RingPresentation) -> "HomIdeal":
        return HomIdeal(ring_k, [self.ring.change_field(g, ring_k.field) for g in self.generators])

    def minimal_generators(self) -> list:
        """Drop generators lying in the ideal of the others (greedy, by degree)."""
        gens = sorted(self.generators, key=lambda g: g.degree())
        keep = []
        for g in gens:
            if keep and HomIdeal(self.ring, keep).contains(g):
                continue
            keep.append(g)
        return keep
