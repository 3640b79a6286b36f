"""Prime fields F_p and purely transcendental extensions F_p(t_1, ..., t_r)."""

from __future__ import annotations

import random as _random
from functools import lru_cache

import flint


class MalformedElement(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class RatFunc:
    """Element of F_p(t...) kept as num/den with gcd 1 and monic den (degrevlex)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: "Field", num, den=None, _normalized=False):
        self.field = field
        self._hash = None
        if den is None:
            den = field.ctx.from_dict({(0,) * field.nvars: 1})
        if _normalized:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise MalformedElement("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = field.ctx.from_dict({(0,) * field.nvars: 1})
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = den.leading_coefficient()
        if int(lc) != 1:
            inv = lc ** -1
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.field, self.num ** e, self.den ** e)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, flint.nmod)):
            return self == self.field(other)
        return NotImplemented

    def __bool__(self):
        return not self.num.is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted((k, int(v)) for k, v in self.num.to_dict().items())),
                               tuple(sorted((k, int(v)) for k, v in self.den.to_dict().items()))))
        return self._hash

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __repr__(self):
        return self.field.format(self)

    __str__ = __repr__


@lru_cache(maxsize=None)
def _ctx(names: tuple, p: int):
    return flint.nmod_mpoly_ctx.get(names, p, "degrevlex")


class Field:
    """F_p when ``transcendentals`` is empty, else F_p(t_1..t_r)."""

    def __init__(self, char: int, transcendentals=()):
        char = int(char)
        if not _is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        names = tuple(transcendentals)
        if len(set(names)) != len(names):
            raise ValueError("transcendental names must be distinct")
        self.p = char
        self.names = names
        self.nvars = len(names)
        self.ctx = _ctx(names, char) if names else None
        if self.ctx is None:
            self.zero = flint.nmod(0, char)
            self.one = flint.nmod(1, char)
        else:
            self.zero = RatFunc(self, self.ctx.from_dict({}), None)
            self.one = RatFunc(self, self.ctx.from_dict({(0,) * self.nvars: 1}), None)

    @property
    def is_prime_field(self) -> bool:
        return self.ctx is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p and other.names == self.names

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        if self.names:
            return f"F{self.p}({','.join(self.names)})"
        return f"F{self.p}"

    def descriptor(self) -> dict:
        return {"char": self.p, "transcendentals": list(self.names)}

    @classmethod
    def from_descriptor(cls, d: dict) -> "Field":
        return cls(d["char"], d.get("transcendentals", []))

    def __call__(self, x):
        if self.ctx is None:
            if isinstance(x, flint.nmod):
                return x
            if isinstance(x, RatFunc):
                raise TypeError("rational function in a prime field")
            return flint.nmod(int(x) % self.p, self.p)
        if isinstance(x, RatFunc):
            if x.field is self or x.field == self:
                return x
            return self.embed(x)
        return RatFunc(self, self.ctx.from_dict({(0,) * self.nvars: int(x) % self.p}), None,
                       _normalized=True) if int(x) % self.p else self.zero

    def gen(self, name: str) -> RatFunc:
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return RatFunc(self, self.ctx.from_dict({tuple(e): 1}), None, _normalized=True)

    def gens(self):
        return [self.gen(n) for n in self.names]

    def extend(self, names) -> "Field":
        return Field(self.p, self.names + tuple(names))

    def embed(self, x: RatFunc) -> RatFunc:
        """Map an element of a subfield F_p(s) (s a prefix/subset of names) into self."""
        src = x.field
        idx = [self.names.index(n) for n in src.names]

        def conv(poly):
            out = {}
            for mon, c in poly.to_dict().items():
                e = [0] * self.nvars
                for j, k in zip(idx, mon):
                    e[j] = k
                out[tuple(e)] = int(c)
            return self.ctx.from_dict(out)

        return RatFunc(self, conv(x.num), conv(x.den))

    def is_zero(self, x) -> bool:
        return not x

    def random(self, rng: _random.Random, degree: int = 1):
        if self.ctx is None:
            return self(rng.randrange(self.p))
        num = {}
        for _ in range(degree + 1):
            e = tuple(rng.randrange(degree + 1) for _ in range(self.nvars))
            num[e] = rng.randrange(self.p)
        return RatFunc(self, self.ctx.from_dict(num), None)

    def specialize(self, x, values: dict):
        """Evaluate transcendentals at prime-field values; None if the denominator vanishes."""
        if self.ctx is None:
            return x
        pf = Field(self.p)
        args = [int(values[n]) for n in self.names]

        def ev(poly):
            acc = 0
            for mon, c in poly.to_dict().items():
                term = int(c)
                for a, k in zip(args, mon):
                    term = term * pow(a, k, self.p) % self.p
                acc = (acc + term) % self.p
            return acc

        d = ev(x.den)
        if d == 0:
            return None
        return pf(ev(x.num) * pow(d, -1, self.p))

    def format(self, x) -> str:
        if self.ctx is None:
            return str(int(x))
        num = _poly_str(x.num, self.names)
        if x.den.is_one():
            return num
        den = _poly_str(x.den, self.names)
        if "+" in num:
            num = f"({num})"
        if "+" in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def parse(self, s: str):
        from gradua.rings.parse import ParseError, parse_scalar
        try:
            return parse_scalar(s, self)
        except ParseError as e:
            raise MalformedElement(str(e)) from None


def _poly_str(poly, names) -> str:
    if poly.is_zero():
        return "0"
    terms = []
    items = sorted(poly.to_dict().items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in reversed(kv[0]))),
                   reverse=True)
    for mon, c in items:
        c = int(c)
        factors = []
        for n, e in zip(names, mon):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append(f"{n}^{e}")
        if not factors:
            terms.append(str(c))
        elif c == 1:
            terms.append("*".join(factors))
        else:
            terms.append(str(c) + "*" + "*".join(factors))
    return "+".join(terms)


def normalize(e: RatFunc) -> RatFunc:
    """Canonical form: coprime, monic denominator. Idempotent."""
    if not isinstance(e, RatFunc):
        return e
    return RatFunc(e.field, e.num, e.den)


def ratfunc(field: Field, num: str, den: str = "1") -> RatFunc:
    """Build num/den from strings over ``field`` (used by tests and examples)."""
    n = field(field.parse(num))
    d = field(field.parse(den))
    if not d:
        raise MalformedElement("zero denominator")
    return n / d
