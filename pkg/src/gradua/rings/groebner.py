"""Buchberger's algorithm with the product and chain criteria."""

from __future__ import annotations

import heapq

from gradua.rings.poly import Poly, PolyRing, mon_div, mon_divides, mon_lcm, mon_mul


class GroebnerBoundExceeded(RuntimeError):
    pass


def reduce_full(f: Poly, G: list) -> Poly:
    """Normal form of f by the list G (each element monic); reduces every term."""
    ring = f.ring
    key = ring.key
    p = dict(f.terms)
    if not p or not G:
        return Poly(ring, p)
    lms = [(g.lm(), g) for g in G]
    out = {}
    heap = [(_neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if c is None:
            continue
        for lm, g in lms:
            q = mon_div(m, lm)
            if q is not None:
                del p[m]
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mon_mul(gm, q)
                    v = p.get(t)
                    d = c * gc
                    if v is None:
                        p[t] = -d
                        heapq.heappush(heap, (_neg(key(t)), t))
                    else:
                        v = v - d
                        if v:
                            p[t] = v
                        else:
                            del p[t]
                break
        else:
            out[m] = p.pop(m)
    return Poly(ring, out)


def _neg(k):
    # heap is a min-heap; flip the nested key tuple for max-first popping
    return tuple(_neg(x) if isinstance(x, tuple) else -x for x in k)


def spoly(f: Poly, g: Poly) -> Poly:
    a, b = f.lm(), g.lm()
    l = mon_lcm(a, b)
    return f.mul_term(mon_div(l, a), f.ring.field.one / f.lc()) - g.mul_term(mon_div(l, b), g.ring.field.one / g.lc())


def groebner(polys, ring: PolyRing | None = None, max_degree: int | None = None) -> list:
    """Reduced Groebner basis, sorted by leading monomial (largest first).

    ``max_degree`` caps the weighted degree of S-pair lcms; exceeding it raises.
    """
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = ring or polys[0].ring
    G: list = []
    pairs: list = []
    key = ring.key

    def add(h):
        h = h.monic()
        hm = h.lm()
        # chain criterion (Gebauer-Moeller B_k): drop pairs (i,j) whose lcm is
        # divisible by hm strictly
        keep = []
        for (d, c, i, j) in pairs:
            lij = mon_lcm(G[i].lm(), G[j].lm())
            if mon_divides(hm, lij) and mon_lcm(G[i].lm(), hm) != lij and mon_lcm(G[j].lm(), hm) != lij:
                continue
            keep.append((d, c, i, j))
        pairs[:] = keep
        heapq.heapify(pairs)
        k = len(G)
        G.append(h)
        new = []
        for i in range(k):
            if G[i] is None:
                continue
            gm = G[i].lm()
            l = mon_lcm(gm, hm)
            new.append((ring.mdeg(l), key(l), i, k))
        # among new pairs with equal lcm keep one; drop coprime ones (product criterion)
        seen = set()
        for d, kl, i, j in sorted(new):
            gm = G[i].lm()
            if all(a == 0 or b == 0 for a, b in zip(gm, hm)):
                seen.add(kl)
                continue
            if kl in seen:
                continue
            seen.add(kl)
            heapq.heappush(pairs, (d, kl, i, j))

    for p in sorted(polys, key=lambda q: key(q.lm())):
        r = reduce_full(p, [g for g in G if g is not None])
        if r:
            add(r)
    while pairs:
        d, _, i, j = heapq.heappop(pairs)
        if G[i] is None or G[j] is None:
            continue
        if max_degree is not None and d > max_degree:
            raise GroebnerBoundExceeded(f"S-pair degree {d} exceeds bound {max_degree}")
        s = spoly(G[i], G[j])
        r = reduce_full(s, [g for g in G if g is not None])
        if r:
            add(r)
    return interreduce([g for g in G if g is not None])


def interreduce(G: list) -> list:
    G = [g.monic() for g in G if g]
    # drop elements whose leading monomial is divisible by another's
    G.sort(key=lambda g: g.ring.key(g.lm()))
    minimal = []
    for g in G:
        if not any(mon_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(reduce_full(g, others).monic())
    out.sort(key=lambda g: g.ring.key(g.lm()), reverse=True)
    return out


def is_groebner(G: list) -> bool:
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if reduce_full(spoly(G[i], G[j]), G):
                return False
    return True
