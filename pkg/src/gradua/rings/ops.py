"""Ideal-level operations: Groebner bases, normal forms, arithmetic, radicals, Noether normalization."""

from __future__ import annotations

import itertools
import random

from gradua.rings.groebner import groebner, reduce_full
from gradua.rings.hilbert import HilbertSeries, hilbert_series as _hs
from gradua.rings.poly import Poly, PolyRing, mon_div
from gradua.rings.ring import HomIdeal, PresentationError, RingPresentation


class NormalizationNotFound(RuntimeError):
    pass


def groebner_basis(i: HomIdeal, max_degree: int | None = None) -> list:
    """Reduced grevlex basis of the ideal (preimage in the polynomial ring)."""
    if max_degree is None:
        return list(i.gb)
    return groebner(list(i.ring.relations) + list(i.generators), i.ring.poly, max_degree=max_degree)


def normal_form(f, i: HomIdeal) -> Poly:
    f = i.ring.poly(f)
    if not f.is_homogeneous():
        raise PresentationError(f"{f} is not homogeneous")
    return i.normal_form(f)


def hilbert_series(r, ideal: HomIdeal | None = None, window=(0, 12)) -> HilbertSeries:
    if ideal is not None:
        r = r.quotient(ideal)
    return _hs(r, window)


def krull_dimension(r, ideal: HomIdeal | None = None) -> int:
    return hilbert_series(r, ideal).pole_order()


# ideal arithmetic -------------------------------------------------------------

def _same_ring(i: HomIdeal, j: HomIdeal):
    if i.ring != j.ring:
        raise PresentationError("ideals live in different rings")


def _divide(f: Poly, g: Poly) -> Poly:
    """Exact quotient f / g in the polynomial ring."""
    q = f.ring.zero()
    r = f
    glm, glc = g.lm(), g.lc()
    while r:
        m = r.lm()
        d = mon_div(m, glm)
        if d is None:
            raise ArithmeticError("division is not exact")
        c = r.terms[m] / glc
        q = q + f.ring.monomial(d, c)
        r = r - g.mul_term(d, c)
    return q


def _intersect_principal(gb_i: list, g: Poly, ring: PolyRing) -> list:
    """Generators of I ∩ (g) in ``ring`` by eliminating an auxiliary variable."""
    big = PolyRing(ring.field, ("_T",) + ring.names, (1,) + ring.degrees, elim=1)
    T = big.var(0)
    gens = [T * big.convert(f) for f in gb_i] + [(big.one() - T) * big.convert(g)]
    G = groebner(gens, big)
    out = []
    for h in G:
        if all(m[0] == 0 for m in h.terms):
            out.append(Poly(ring, {m[1:]: c for m, c in h.terms.items()}))
    return out


def colon(i: HomIdeal, j: HomIdeal) -> HomIdeal:
    _same_ring(i, j)
    ring = i.ring
    result = None
    for g in j.generators:
        inter = _intersect_principal(i.gb, g, ring.poly)
        quo = [_divide(h, g) for h in inter]
        # keep homogeneous components (the ideal is homogeneous)
        parts = []
        for q in quo:
            parts.extend(q.homogeneous_parts().values())
        ideal_g = HomIdeal(ring, parts)
        result = ideal_g if result is None else intersect(result, ideal_g)
    if result is None:
        return HomIdeal(ring, [ring.poly.one()])
    return result


def intersect(i: HomIdeal, j: HomIdeal) -> HomIdeal:
    _same_ring(i, j)
    ring = i.ring
    big = PolyRing(ring.field, ("_T",) + ring.names, (1,) + ring.degrees, elim=1)
    T = big.var(0)
    gens = [T * big.convert(f) for f in i.gb] + [(big.one() - T) * big.convert(f) for f in j.gb]
    G = groebner(gens, big)
    out = []
    for h in G:
        if all(m[0] == 0 for m in h.terms):
            p = Poly(ring.poly, {m[1:]: c for m, c in h.terms.items()})
            out.extend(p.homogeneous_parts().values())
    return HomIdeal(ring, out)


def saturation(i: HomIdeal, j: HomIdeal, cap: int = 64) -> HomIdeal:
    cur = i
    for _ in range(cap):
        nxt = colon(cur, j)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def ideal_arith(i: HomIdeal, j: HomIdeal, op: str) -> HomIdeal:
    _same_ring(i, j)
    if op == "sum":
        return HomIdeal(i.ring, list(i.generators) + list(j.generators))
    if op == "product":
        return HomIdeal(i.ring, [a * b for a in i.generators for b in j.generators])
    if op == "colon":
        return colon(i, j)
    if op == "saturation":
        return saturation(i, j)
    if op == "intersection":
        return intersect(i, j)
    raise ValueError(f"unknown ideal operation {op!r}")


def radical_membership(f, i: HomIdeal) -> bool:
    """f in sqrt(i) iff 1 in i + (1 - y f) in R[y]."""
    ring = i.ring
    f = ring.poly(f)
    big = PolyRing(ring.field, ring.names + ("_Y",), ring.degrees + (1,))
    Y = big.var(len(ring.names))
    gens = [big.convert(g) for g in i.gb] + [big.one() - Y * big.convert(f)]
    G = groebner(gens, big)
    return any(g.degree() == 0 for g in G)


# Noether normalization --------------------------------------------------------

def noether_normalize(r: RingPresentation, p: HomIdeal | None = None, seed: int = 0,
                      attempts: int = 200, max_degree: int | None = None) -> list:
    """Same-degree elements a_0..a_{d-1} with A/(p + (a)) finite dimensional.

    Candidates are tried deterministically (small supports on the standard
    monomial basis) and then as seeded random linear combinations.
    """
    q = r.quotient(p) if p is not None else r
    d = krull_dimension(q)
    if d == 0:
        return []
    max_degree = max_degree or 4 * _lcm(q.degrees)
    rng = random.Random(seed)
    tried = 0
    for e in range(1, max_degree + 1):
        basis = [q.poly.monomial(m) for m in q.standard_monomials(e)]
        if len(basis) < 1:
            continue
        cands = []
        for size in range(1, len(basis) + 1):
            for sub in itertools.combinations(range(len(basis)), size):
                cands.append(sum((basis[k] for k in sub), q.poly.zero()))
                if len(cands) >= 24:
                    break
            if len(cands) >= 24:
                break
        for combo in itertools.combinations(cands, d):
            tried += 1
            if _finite_fiber(q, list(combo)):
                return [r.poly(c) for c in combo]
            if tried >= attempts // 2:
                break
        for _ in range(attempts // 4):
            combo = []
            for _ in range(d):
                c = q.poly.zero()
                for b in basis:
                    c = c + b * q.field(rng.randrange(q.field.p))
                combo.append(c)
            if any(not c for c in combo):
                continue
            tried += 1
            if _finite_fiber(q, combo):
                return [r.poly(c) for c in combo]
    raise NormalizationNotFound(f"no Noether system found after {tried} attempts")


def _finite_fiber(q: RingPresentation, elems) -> bool:
    return krull_dimension(q.quotient(HomIdeal(q, elems))) == 0


def _lcm(ds) -> int:
    from math import gcd
    out = 1
    for d in ds:
        out = out * d // gcd(out, d)
    return out
