"""Generic closed points over a prime after a purely transcendental extension."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix
from gradua.rings.ops import krull_dimension, noether_normalize, radical_membership
from gradua.rings.ring import HomIdeal, RingPresentation


class CertificationError(RuntimeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class DimensionError(ValueError):
    pass


def default_degree_bound(ring: RingPresentation) -> int:
    env = os.environ.get("GRADUA_DEGREE_BOUND")
    if env:
        return int(env)
    return 2 * max(ring.degrees)


@dataclass
class GenericPointCertificate:
    ring: RingPresentation
    base_prime: HomIdeal
    dimension_d: int
    extension_field: Field
    extended_ring: RingPresentation
    noether_elements: list
    shear_elements: list
    q_ideal: HomIdeal
    m_ideal: HomIdeal
    degree_bound: int
    degenerate: bool = False
    residue_comparison: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def in_radical(self, f) -> bool:
        """Membership oracle for m = sqrt(q)."""
        return radical_membership(f, self.q_ideal)

    def to_json(self) -> dict:
        return {
            "base_prime": [str(g) for g in self.base_prime.generators],
            "dimension": self.dimension_d,
            "extension_field": self.extension_field.descriptor(),
            "noether_elements": [str(a) for a in self.noether_elements],
            "shear_elements": [str(b) for b in self.shear_elements],
            "q": [str(g) for g in self.q_ideal.generators],
            "m": [str(g) for g in self.m_ideal.generators],
            "degenerate": self.degenerate,
            "degree_bound": self.degree_bound,
            "residue_comparison": dict(self.residue_comparison),
            "checks": dict(self.checks),
        }


def _rational_kernel_dim(M: Matrix, base: Field) -> int:
    """Dimension over the prime field of {v in F_p^n : M v = 0} for M over F_p(t...)."""
    K = M.field
    if K.is_prime_field:
        return M.nullity()
    W = M.kernel()  # columns; as rows in reduced echelon form
    if W.ncols == 0:
        return 0
    rows = W.T.rows()
    n = M.ncols
    r = len(rows)
    # unknowns: c_1..c_r (coefficients) and v_1..v_n (rational entries)
    # condition per coordinate i: sum_j c_j w_ji - v_i = 0, expanded in t-monomials
    eqs = {}
    for i in range(n):
        den = K.one.den
        for j in range(r):
            w = rows[j][i]
            if w:
                g = den.gcd(w.den)
                den = den * (w.den / g)
        for j in range(r):
            w = rows[j][i]
            if not w:
                continue
            num = w.num * (den / w.den)
            for mon, c in num.to_dict().items():
                eqs.setdefault((i, mon), {})[j] = int(c)
        for mon, c in den.to_dict().items():
            eqs.setdefault((i, mon), {})[r + i] = (-int(c)) % K.p
    A = Matrix.from_rows(base, [[e.get(k, 0) for k in range(r + n)] for e in eqs.values()], r + n)
    sol = A.kernel()
    # project onto the c-coordinates
    return sol.submatrix(rows=range(r)).rank() if sol.ncols else 0


def intersection_agrees(ring: RingPresentation, p: HomIdeal, ring_k: RingPresentation, m: HomIdeal,
                        bound: int) -> dict:
    """Check (m ∩ A)_n = p_n for n <= bound; returns per-degree rational kernel dims."""
    q = ring.quotient(p)
    mk = ring_k.quotient(m)
    out = {}
    for n in range(1, bound + 1):
        basis = q.standard_monomials(n)
        if not basis:
            out[n] = 0
            continue
        tgt = mk.standard_monomials(n)
        cols = []
        for mon in basis:
            f = ring_k.poly.monomial(mon)
            cols.append(mk.coords(f, n))
        M = Matrix.from_columns(ring_k.field, cols, len(tgt)) if tgt else Matrix.zeros(ring_k.field, 0, len(basis))
        out[n] = _rational_kernel_dim(M, Field(ring.field.p)) if tgt else len(basis)
    return out


def residue_field_data(a: RingPresentation, m: HomIdeal, bound: int | None = None):
    """([k(m)^0 : field], degree of the invertible generator of k(m))."""
    r = a.quotient(m)
    if krull_dimension(r) != 1:
        raise DimensionError("m is not a closed point (dim A/m != 1)")
    bound = bound or 4 * max(a.degrees) * max(1, len(a.degrees))
    period = 0
    for n in range(1, bound + 1):
        if r.dim(n):
            period = gcd(period, n)
    u = noether_normalize(r)[0]
    e = u.degree()
    hs = r.hilbert_series()
    # dims on multiples of e stabilise past the numerator degree
    j0 = len(hs.numerator) // e + 2
    dims = [hs.coefficient((j0 + k) * e) for k in range(3)]
    if len(set(dims)) != 1:
        raise CertificationError("residue dimension did not stabilise", dims)
    return dims[0], period


def _zero_divisor_free(r: RingPresentation, bound: int) -> bool:
    """No graded zero divisors among elements of degree <= bound (exact when pieces have dim <= 1)."""
    for i in range(1, bound + 1):
        for j in range(i, bound + 1 - i + 1):
            if i + j > bound:
                continue
            for mon in r.standard_monomials(i):
                f = r.poly.monomial(mon)
                M = r.mult_matrix(f, j)
                if M.ncols and M.rank() < M.ncols:
                    return False
    return True


def generic_closed_point(a: RingPresentation, p: HomIdeal, names=None, seed: int = 0,
                         bound: int | None = None) -> GenericPointCertificate:
    bound = bound or default_degree_bound(a)
    q_ring = a.quotient(p)
    d = krull_dimension(q_ring)
    if d == 0:
        raise DimensionError("p contains all positive-degree elements")
    if d == 1:
        cert = GenericPointCertificate(a, p, 1, a.field, a, noether_normalize(a, p, seed=seed), [], p, p,
                                       bound, degenerate=True)
        deg0, per = residue_field_data(a, p)
        cert.residue_comparison = {"degree0_extension": deg0, "periodicity_kp": per, "periodicity_km": per}
        cert.checks = {"m_cap_A_equals_p": True, "dim_A_K_mod_m": 1, "residue_trivial": deg0 == 1}
        return cert
    names = names or (["t"] if d == 2 else [f"t{i}" for i in range(1, d)])
    K = a.field.extend(names)
    ak = a.base_change(K)
    avec = noether_normalize(a, p, seed=seed)
    ak_a = [a.change_field(x, K) for x in avec]
    ts = [K.gen(n) for n in names]
    shear = [ak_a[i] - ak_a[0] * ts[i - 1] for i in range(1, d)]
    pk = p.base_change(ak)
    q = HomIdeal(ak, list(pk.generators) + shear)
    # m = sqrt(q): q plus nilpotents found by a degree-bounded search
    extra = []
    qr = ak.quotient(q)
    for n in range(1, bound + 1):
        basis = qr.standard_monomials(n)
        cands = [ak.poly.monomial(x) for x in basis]
        cands += [cands[i] + cands[j] for i in range(len(cands)) for j in range(i + 1, len(cands))]
        for f in cands:
            if radical_membership(f, q) and not HomIdeal(ak, list(q.generators) + extra).contains(f):
                extra.append(f)
    m = HomIdeal(ak, list(q.generators) + extra)
    cert = GenericPointCertificate(a, p, d, K, ak, ak_a, shear, q, m, bound)
    kdim = intersection_agrees(a, p, ak, m, bound)
    if any(kdim.values()):
        raise CertificationError("m ∩ A is larger than p", kdim)
    dim_m = krull_dimension(ak.quotient(m))
    if dim_m != 1:
        raise CertificationError("A_K/m is not one-dimensional", dim_m)
    deg0, per_m = residue_field_data(ak, m)
    per_p = 0
    for n in range(1, 4 * max(a.degrees) + 1):
        if q_ring.dim(n):
            per_p = gcd(per_p, n)
    if deg0 != 1:
        raise CertificationError("residue extension is not trivial", deg0)
    cert.residue_comparison = {"degree0_extension": deg0, "periodicity_kp": per_p, "periodicity_km": per_m}
    cert.checks = {
        "m_cap_A_equals_p": True,
        "m_cap_A_rational_kernel": {str(k): v for k, v in kdim.items()},
        "dim_A_K_mod_m": dim_m,
        "residue_trivial": True,
        "p_in_sqrt_q": all(radical_membership(g, q) for g in pk.generators),
        "m_equals_q": not extra,
        "no_zero_divisors_up_to_bound": _zero_divisor_free(ak.quotient(m), bound),
    }
    return cert
