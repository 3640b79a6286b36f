"""Local cohomology at the irrelevant ideal and the Gorenstein comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gradua.arith.matrix import Matrix
from gradua.modules.graded import DegreewiseModule, ModulePresentation, ring_module
from gradua.modules.homology import cohomology
from gradua.rings.ops import krull_dimension, noether_normalize
from gradua.rings.ring import RingPresentation

S_CAP = 12


class NonStabilizedError(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


def _koszul_piece(m: ModulePresentation, subsets, shift: int, n: int):
    return [m.dim(n + shift) for _ in subsets]


def koszul_cohomology(m: ModulePresentation, u, s: int, window) -> list:
    """H^i of Hom(K(u^s), M) in each degree of the window, for i = 0..len(u).

    K^i in degree n is the sum over i-subsets I of M_{n + s e i}; the
    differential multiplies by u_j^s with the alternating sign.
    """
    ring = m.ring
    field = ring.field
    d = len(u)
    e = u[0].degree() if d else 0
    powers = [ring.nf(x ** s) for x in u]
    subsets = [list(itertools.combinations(range(d), i)) for i in range(d + 1)]
    lo, hi = window
    out = [dict() for _ in range(d + 1)]
    for n in range(lo, hi + 1):
        sizes = [m.dim(n + s * e * i) for i in range(d + 1)]
        diffs = []
        for i in range(d):
            src, tgt = subsets[i], subsets[i + 1]
            a, b = sizes[i], sizes[i + 1]
            idx = {J: k for k, J in enumerate(tgt)}
            entries = []
            for ci, I in enumerate(src):
                for j in range(d):
                    if j in I:
                        continue
                    J = tuple(sorted(I + (j,)))
                    sign = -1 if sum(1 for x in I if x < j) % 2 else 1
                    A = m.act(powers[j], n + s * e * i)
                    r0, c0 = idx[J] * b, ci * a
                    for r, row in enumerate(A.rows()):
                        for c, v in enumerate(row):
                            if v:
                                entries.append((r0 + r, c0 + c, v if sign == 1 else -v))
            diffs.append(Matrix.from_sparse(field, len(tgt) * b, len(src) * a, entries))
        for i in range(d + 1):
            mid = len(subsets[i]) * sizes[i]
            into = diffs[i - 1] if i > 0 else Matrix.zeros(field, mid, 0)
            outm = diffs[i] if i < d else Matrix.zeros(field, 0, mid)
            out[i][n] = (cohomology(into, outm, mid), subsets[i], sizes[i])
    return out


def _tables(kc) -> list:
    return [{n: v[0].dim for n, v in sorted(t.items())} for t in kc]


def _with_actions(m: ModulePresentation, kc_i, s: int, e: int, i: int, window) -> DegreewiseModule:
    ring = m.ring
    field = ring.field
    lo, hi = window
    dims = {n: kc_i[n][0].dim for n in range(lo, hi + 1)}
    acts = {}
    for name, g in zip(ring.names, ring.degrees):
        x = ring.poly.var(name)
        per = {}
        for n in range(lo, hi - g + 1):
            if not dims[n] or not dims[n + g]:
                per[n] = Matrix.zeros(field, dims[n + g], dims[n])
                continue
            sq, subs, a = kc_i[n]
            tq, _, b = kc_i[n + g]
            A = m.act(x, n + s * e * i)
            entries = []
            for k in range(len(subs)):
                for r, row in enumerate(A.rows()):
                    for c, v in enumerate(row):
                        if v:
                            entries.append((k * b + r, k * a + c, v))
            X = Matrix.from_sparse(field, len(subs) * b, len(subs) * a, entries)
            per[n] = tq.coords(X * sq.representatives())
        acts[name] = per
    return DegreewiseModule(ring, lo, hi, dims, acts)


def local_cohomology_irrelevant(m: ModulePresentation, window, noether=None, seed: int = 0,
                                s_cap: int = S_CAP) -> list:
    """H^i_{R_+}(M) for 0 <= i <= d as a colimit over s of Koszul cohomology on (u_1^s, ..., u_d^s).

    The u_i form a Noether system of R, so the Koszul complex on their powers
    resolves the corresponding quotient of the polynomial subring they generate
    and each term computes Ext over that subring. The colimit is accepted once
    three consecutive s give the same dimension tables on the window.
    """
    ring = m.ring
    u = [ring.poly(x) for x in noether] if noether is not None else noether_normalize(ring, seed=seed)
    e = u[0].degree() if u else 0
    history = []
    for s in range(1, s_cap + 1):
        kc = koszul_cohomology(m, u, s, window)
        history.append(_tables(kc))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return [_with_actions(m, kc[i], s, e, i, window) for i in range(len(u) + 1)]
    raise NonStabilizedError(f"local cohomology did not stabilize by s = {s_cap}", history)


@dataclass
class GorensteinReport:
    ring: RingPresentation
    point: str
    shift: int | None
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"point": self.point, "shift": self.shift, "status": self.status,
                "witness": self.witness}


def gorenstein_check_irrelevant(a: RingPresentation, window=(-8, 8), noether=None,
                                seed: int = 0) -> GorensteinReport:
    """H^i = 0 for i < d, and H^d(A)_n = D(A)_{n - a} with a the top degree of H^d."""
    d = krull_dimension(a)
    R = ModulePresentation.free(a, [0])
    H = local_cohomology_irrelevant(R, window, noether=noether, seed=seed)
    lower = {i: H[i].table() for i in range(d)}
    lower_ok = all(not any(t.values()) for t in lower.values())
    top = H[d].table()
    nz = [n for n, v in top.items() if v]
    witness = {"krull_dimension": d,
               "lower_vanish": lower_ok,
               "top": {str(n): v for n, v in top.items()}}
    if not nz or max(nz) == window[1]:
        witness["reason"] = "top degree of H^d not inside the window"
        return GorensteinReport(a, "irrelevant", None, "inconclusive", witness)
    shift = max(nz)
    lo, hi = window
    dual = {n: a.dim(shift - n) for n in range(lo, hi + 1)}
    witness["dual_twisted"] = {str(n): v for n, v in dual.items()}
    ok = lower_ok and dual == top
    if d == 0:
        # socle of an artinian ring; Gorenstein iff it is one-dimensional
        A = ring_module(a, (0, shift + 1))
        soc = 0
        for n in range(0, shift + 1):
            maps = [A.act(x, n) for x in a.names if n + a.degrees[a.names.index(x)] <= shift + 1]
            if not A.dim(n):
                continue
            M = maps[0].vstack(*maps[1:]) if len(maps) > 1 else maps[0]
            soc += M.nullity()
        witness["socle_dimension"] = soc
        ok = ok and soc == 1
    return GorensteinReport(a, "irrelevant", shift, "pass" if ok else "fail", witness)
