"""Sparse multivariate polynomials with weighted graded reverse lexicographic order."""

from __future__ import annotations

from functools import lru_cache

from gradua.arith.fields import Field


class PolyRing:
    """k[x_1..x_n] with positive integer weights.

    ``elim`` > 0 gives a block order: the first ``elim`` variables are compared
    first (weighted grevlex on that block), the rest afterwards.
    """

    def __init__(self, field: Field, names, degrees=None, elim: int = 0):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * self.nvars
        if len(self.degrees) != self.nvars:
            raise ValueError("degrees and names differ in length")
        if any(d < 1 for d in self.degrees):
            raise ValueError("generator degrees must be positive")
        self.elim = elim
        self._zero_mon = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field and self.names == other.names
                and self.degrees == other.degrees and self.elim == other.elim)

    def __hash__(self):
        return hash((self.field, self.names, self.degrees, self.elim))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    # order ------------------------------------------------------------
    def mdeg(self, m) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def key(self, m):
        if self.elim:
            k = self.elim
            a, b = m[:k], m[k:]
            da = sum(e * d for e, d in zip(a, self.degrees[:k]))
            db = sum(e * d for e, d in zip(b, self.degrees[k:]))
            return (da, tuple(-e for e in reversed(a)), db, tuple(-e for e in reversed(b)))
        return (self.mdeg(m), tuple(-e for e in reversed(m)))

    # construction -----------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_mon: self.field.one})

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_mon: c} if c else {})

    def var(self, name) -> "Poly":
        i = self.names.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m, c=None) -> "Poly":
        c = self.field.one if c is None else self.field(c)
        return Poly(self, {tuple(m): c} if c else {})

    def parse(self, s: str) -> "Poly":
        from gradua.rings.parse import parse_poly
        return parse_poly(s, self)

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            return self.convert(x)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def convert(self, f: "Poly") -> "Poly":
        """Map a polynomial from a ring whose variables are a subset of ours (by name)."""
        idx = [self.names.index(n) for n in f.ring.names]
        out = {}
        for m, c in f.terms.items():
            e = [0] * self.nvars
            for j, k in zip(idx, m):
                e[j] = k
            out[tuple(e)] = self.field(c)
        return Poly(self, out)

    def monomials_of_degree(self, n: int):
        """All monomials of weighted degree n, largest first."""
        return _monomials(self.degrees, n)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.names, self.degrees, self.elim)


@lru_cache(maxsize=None)
def _monomials(degrees: tuple, n: int):
    out = []

    def rec(i, rem, acc):
        if i == len(degrees):
            if rem == 0:
                out.append(tuple(acc))
            return
        d = degrees[i]
        for e in range(rem // d, -1, -1):
            acc.append(e)
            rec(i + 1, rem - e * d, acc)
            acc.pop()

    if n >= 0:
        rec(0, n, [])
    out.sort(key=lambda m: tuple(-e for e in reversed(m)), reverse=True)
    return tuple(out)


def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a, b):
    """a / b if b divides a, else None."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mon_divides(b, a) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _c(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._c(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mon_mul(m1, m2)
                v = out.get(m)
                p = c1 * c2
                if v is None:
                    out[m] = p
                else:
                    v = v + p
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = self.ring.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def mul_term(self, m, c) -> "Poly":
        return Poly(self.ring, {mon_mul(k, m): v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return self == self.ring.const(other)

    def __hash__(self):
        return hash(frozenset((m, c if not isinstance(c, int) else c) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def lm(self):
        return max(self.terms, key=self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def monic(self) -> "Poly":
        return self * (self.ring.field.one / self.lc())

    def degree(self) -> int:
        """Weighted degree (maximum over terms); -1 for zero."""
        if not self.terms:
            return -1
        return max(self.ring.mdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mdeg(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> dict:
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ring.mdeg(m), {})[m] = c
        return {d: Poly(self.ring, t) for d, t in parts.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        out = []
        for m, c in self.sorted_terms():
            factors = []
            for n, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(n)
                elif e > 1:
                    factors.append(f"{n}^{e}")
            cs = field.format(c)
            if not factors:
                out.append(cs if "+" not in cs or len(self.terms) == 1 else f"({cs})")
            elif cs == "1":
                out.append("*".join(factors))
            else:
                if "+" in cs or "/" in cs:
                    cs = f"({cs})"
                out.append(cs + "*" + "*".join(factors))
        return "+".join(out)

    __repr__ = __str__

    def substitute(self, values: dict) -> "Poly":
        """Substitute polynomials (of the target ring) for variables given by index."""
        target = next(iter(values.values())).ring if values else self.ring
        out = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * (values[i] ** e if i in values else target.var(self.ring.names[i]) ** e)
            out = out + t
        return out

    def map_coeffs(self, ring: PolyRing, fn) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return Poly(ring, out)
