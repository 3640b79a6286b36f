"""Hilbert series of graded quotients from leading monomial ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _shift(a, k):
    return [0] * k + list(a) if a else []


def _pdivmod(a, b):
    """Integer polynomial division by b with leading coefficient +-1."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] // lb
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a)


def _one_minus(d):
    return [1] + [0] * (d - 1) + [-1]


def monomial_numerator(gens, degrees) -> list:
    """K-polynomial numerator of k[x]/(gens) over prod (1 - t^{deg x_i})."""
    gens = _minimalize(gens)
    memo = {}

    def rec(ms):
        key = ms
        if key in memo:
            return memo[key]
        if not ms:
            res = [1]
        else:
            # pivot on the last generator: N(M) = N(M') - t^deg(m) N(M' : m)
            m = ms[-1]
            rest = ms[:-1]
            colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest])
            dm = sum(e * d for e, d in zip(m, degrees))
            res = _padd(rec(rest), [-x for x in _shift(rec(colon), dm)])
        memo[key] = res
        return res

    return rec(gens)


def _minimalize(ms):
    ms = sorted(set(tuple(m) for m in ms), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return tuple(out)


@dataclass
class HilbertSeries:
    numerator: list
    denominator_degrees: list
    window_dims: dict = field(default_factory=dict)

    def coefficient(self, n: int) -> int:
        if n < 0:
            return 0
        series = self.numerator[: n + 1] + [0] * max(0, n + 1 - len(self.numerator))
        for d in self.denominator_degrees:
            # multiply by 1/(1 - t^d)
            for i in range(d, n + 1):
                series[i] += series[i - d]
        return series[n]

    def expand(self, lo: int, hi: int) -> dict:
        return {n: self.coefficient(n) for n in range(lo, hi + 1)}

    def pole_order(self) -> int:
        num = list(self.numerator)
        mult = 0
        while num and sum(num) == 0:
            num, r = _pdivmod(num, [1, -1])
            mult += 1
        return len(self.denominator_degrees) - mult

    def is_polynomial(self) -> bool:
        return not self.denominator_degrees

    def __str__(self):
        def poly(a):
            terms = []
            for i, c in enumerate(a):
                if not c:
                    continue
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if not mon:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
            return "+".join(terms).replace("+-", "-") or "0"

        num = poly(self.numerator)
        if not self.denominator_degrees:
            return num
        den = "*".join(f"(1-t^{d})" if d > 1 else "(1-t)" for d in self.denominator_degrees)
        if len(self.denominator_degrees) > 1:
            den = f"({den})"
        return f"({num})/{den}"

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator_degrees": list(self.denominator_degrees),
                "window_dims": {str(k): v for k, v in sorted(self.window_dims.items())}}


def hilbert_series(ring, window=(0, 12)) -> HilbertSeries:
    """Reduced closed form: factors (1 - t^d) dividing the numerator are cancelled."""
    num = monomial_numerator(ring.leading_monomials, ring.degrees)
    dens = sorted(ring.degrees, reverse=True)
    kept = []
    for d in dens:
        q, r = _pdivmod(num, _one_minus(d))
        if not r:
            num = q
        else:
            kept.append(d)
    # a remaining (1 - t) factor of the numerator can still cancel against
    # part of a (1 - t^d); keep the product form, it is only used for expansion
    kept.sort()
    hs = HilbertSeries(num, kept)
    hs.window_dims = hs.expand(*window)
    return hs


def period_gcd(degrees) -> int:
    g = 0
    for d in degrees:
        g = gcd(g, d)
    return g
