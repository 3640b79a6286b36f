"""Scenarios: declarative check lists over the engines, each check tagged with its provenance."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from gradua.arith.fields import Field
from gradua.arith.matrix import Matrix
from gradua.lab import builtins
from gradua.lab.report import Inconclusive, Report, run_check
from gradua.modules.graded import ModulePresentation, graded_matlis_dual
from gradua.modules.localcoh import gorenstein_check_irrelevant
from gradua.modules.localize import (Localized, _point_element, hom_into_injective, injective_hull_closed_point,
                                     local_rank_at_zero, localized_ring)
from gradua.rings.genpoint import generic_closed_point, residue_field_data
from gradua.rings.ops import krull_dimension
from gradua.stmod.algebra import make_group_algebra
from gradua.stmod.ar import ar_triangle, indecomposable_check, jordan_block, jordan_type, periodicity_check, \
    tate_duality_check
from gradua.stmod.cohomology import CohomologyRing, check_presentation, ext_dims
from gradua.stmod.functors import a_dual, modular_character, nakayama, tau, transpose
from gradua.stmod.koszul import ExtendedCohomology, binomial_power, koszul_k, koszul_object
from gradua.stmod.module import (FDModule, HomSpace, is_isomorphic, random_module, regular, stable_hom_dim,
                                 stably_isomorphic, syzygy)

DEFAULTS = {"window": [-8, 8], "resolution_cap": 10, "degree_bound": 16, "trials": 50, "samples": 20,
            "n_max": 4, "seed": 0}
CAPS = {"n_max": 6, "trials": 500, "samples": 200, "resolution_cap": 10}


@dataclass
class CheckSpec:
    name: str
    provenance: str
    body: object
    kwargs: dict = field(default_factory=dict)


class ScenarioError(ValueError):
    pass


class Context:
    """Shared, lazily built objects for one scenario run."""

    def __init__(self, params: dict):
        self.p = params

    @cached_property
    def window(self):
        return tuple(self.p["window"])

    def algebra(self, spec: str):
        cache = self.__dict__.setdefault("_alg", {})
        if spec not in cache:
            cache[spec] = make_group_algebra(spec)
        return cache[spec]

    def cohomology(self, spec: str) -> CohomologyRing:
        cache = self.__dict__.setdefault("_coh", {})
        if spec not in cache:
            cache[spec] = CohomologyRing(self.algebra(spec), self.p["resolution_cap"])
        return cache[spec]

    def trivial(self, spec: str) -> FDModule:
        return self.cohomology(spec).res.omega(0)

    def randoms(self, spec: str, count: int, tag: str) -> list:
        rng = random.Random(f"{self.p['seed']}:{spec}:{tag}")
        A = self.algebra(spec)
        return [random_module(A, rng) for _ in range(count)]

    # Klein four over F_2(t) -------------------------------------------------
    @cached_property
    def K(self) -> Field:
        return Field(2, ["t"])

    def klein_koszul(self, n: int) -> FDModule:
        cache = self.__dict__.setdefault("_kk", {})
        if n not in cache:
            H = self.cohomology("klein_four")
            a, b = H.basis(1)
            deg, co = binomial_power(H, self.K, a, b, -self.K.gen("t"), n)
            cache[n] = ExtendedCohomology(H, self.K).koszul(deg, co)
        return cache[n]

    def adjunction_rank(self, n: int) -> int:
        N = self.klein_koszul(n)
        return HomSpace(FDModule.trivial(N.algebra), N).stable_dim

    @cached_property
    def klein_certificate(self):
        r = builtins.ring("klein")
        return generic_closed_point(r, r.zero_ideal())


# q8 ------------------------------------------------------------------------------

def _q8_omega4(ctx):
    k = ctx.trivial("quaternion8")
    o4 = syzygy(k, 4)
    return ({"dim": o4.dim, "stably_isomorphic_to_k": stably_isomorphic(o4, k)},
            {"dim": 1, "stably_isomorphic_to_k": True})


def _q8_dims(ctx):
    H = ctx.cohomology("quaternion8")
    r = builtins.ring("h_q8")
    return H.dims(8), [r.dim(n) for n in range(9)], {"hilbert_series": str(r.hilbert_series())}


def _q8_presentation(ctx):
    pc = check_presentation(ctx.algebra("quaternion8"), builtins.ring("h_q8"), 8)
    return ({"relations_vanish": pc.relations_vanish, "surjective_up_to": pc.surjective_up_to,
             "dims": pc.computed_dims},
            {"relations_vanish": True, "surjective_up_to": 8, "dims": pc.presented_dims},
            {"assignment": pc.assignment})


def _q8_hull(ctx):
    shift, table, period = _hull_shift(ctx)
    r = builtins.ring("h_q8")
    lo, hi = ctx.window
    am = localized_ring(r, r.ideal(["x", "y"]), (lo - 8, hi + 8)).twist(3).restrict(lo, hi)
    return {"shift": shift, "table": table}, {"shift": 3, "table": am.table()}, {"period": period}


def _hull_shift(ctx):
    cache = ctx.__dict__.get("_hull")
    if cache:
        return cache
    r = builtins.ring("h_q8")
    m = r.ideal(["x", "y"])
    lo, hi = ctx.window
    inj = injective_hull_closed_point(r, m, (lo, hi))
    per = residue_field_data(r, m)[1]
    wide = localized_ring(r, m, (lo - 2 * per, hi + 2 * per))
    shift = next((s for s in range(per) if wide.twist(s).restrict(lo, hi).table() == inj.table()), None)
    ctx.__dict__["_hull"] = (shift, inj.table(), per)
    return ctx.__dict__["_hull"]


def _q8_serre(ctx):
    shift, _, per = _hull_shift(ctx)
    if shift is None:
        raise Inconclusive("no twist aligns I(m) with the localized ring")
    k = ctx.trivial("quaternion8")
    target = syzygy(k, -shift)
    e = next((e for e in range(per) if stably_isomorphic(syzygy(k, e), target)), None)
    r = builtins.ring("h_q8")
    d = krull_dimension(r.quotient(r.ideal(["x", "y"])))
    return e, d, {"T_m(k)": f"Omega^-{shift} k = Omega^{e} k", "dim H*/m": d}


# klein four ------------------------------------------------------------------------

def _klein_cert(ctx):
    c = ctx.klein_certificate
    P = c.extended_ring.poly
    expected = P.var("b") - P.var("a") * P.const(ctx.K.gen("t"))
    return [str(g) for g in c.m_ideal.generators], [str(expected)], {"q": [str(g) for g in c.q_ideal.generators]}


def _klein_cap(ctx):
    kd = ctx.klein_certificate.checks["m_cap_A_rational_kernel"]
    return kd, {k: 0 for k in kd}


def _klein_residue(ctx):
    rc = ctx.klein_certificate.residue_comparison
    return rc["degree0_extension"], 1, rc


def _klein_adj(ctx, n):
    return ctx.adjunction_rank(n), n


def _klein_restricted(ctx, n):
    a = ctx.adjunction_rank(n)
    return a * a, n * n


def _klein_end(ctx):
    vals = {}
    mod = {}
    for n in range(1, ctx.p["n_max"] + 1):
        N = ctx.klein_koszul(n)
        h = HomSpace(N, N)
        vals[n] = h.stable_dim
        mod[n] = h.dim
    ratios = {vals[n] / n for n in vals}
    c = ratios.pop() if len(ratios) == 1 else None
    lhs = {"consistent_across_n": c is not None, "multiplier_in_candidates": c in (1, 2)}
    detail = {"end_rank": vals, "candidate_n": {n: n for n in vals}, "candidate_2n": {n: 2 * n for n in vals},
              "multiplier": c, "module_end_dim": mod}
    return lhs, {"consistent_across_n": True, "multiplier_in_candidates": True}, detail


def _klein_local_rank(ctx):
    A = ctx.algebra("klein_four")
    r = builtins.ring("klein")
    pc = check_presentation(A, r, 6)
    if not pc.ok:
        raise ArithmeticError("H*(V, k) does not match k[a, b]")
    k = ctx.trivial("klein_four")
    st = [stable_hom_dim(syzygy(k, i), k) for i in range(7)]
    if st != [r.dim(i) for i in range(7)]:
        raise ArithmeticError("stable Hom(k, k) dimensions differ from the ring")
    rank = local_rank_at_zero(ModulePresentation.free(r, [0]))
    return rank, ctx.adjunction_rank(1), {"stable_hom_dims": st}


# dvr ------------------------------------------------------------------------------

def _companion(K, n):
    t = K.gen("t")
    return Matrix.from_rows(K, [[t if i == j else (K.one if j == i + 1 else K.zero) for j in range(n)]
                                for i in range(n)], n)


def _dvr_commutant(ctx, n):
    K = ctx.K
    A = _companion(K, n)
    eye = Matrix.identity(K, n)
    return (eye.kron(A) - A.T.kron(eye)).nullity(), n


def _dvr_filtration(ctx, n):
    """Subquotients (A - t)^i L / (A - t)^{i+1} L: dimension over K and whether a acts as t."""
    K = ctx.K
    A = _companion(K, n)
    N = A - Matrix.identity(K, n) * K.gen("t")
    steps = []
    P = Matrix.identity(K, n)
    for _ in range(n):
        img = P
        nxt = N * P
        d = img.rank() - nxt.rank()
        # a - t maps the step into the next one
        acts_as_t = (nxt.rank() == 0 and (N * img).is_zero()) or img.hstack(nxt).rank() == img.rank()
        steps.append([d, acts_as_t])
        P = nxt
    return steps, [[1, True]] * n


def _dvr_restricted(ctx, n):
    steps, _ = _dvr_filtration(ctx, n)
    # each K-line on which a acts as t is a copy of k(a), and the filtration splits over the field k(a)
    rank = sum(d for d, ok in steps if ok)
    return rank * rank, n * n, {"rank_over_k(a)": rank}


# gorenstein ---------------------------------------------------------------------------

def _gor(ctx, name):
    cache = ctx.__dict__.setdefault("_gor", {})
    if name not in cache:
        cache[name] = gorenstein_check_irrelevant(builtins.ring(name), tuple(ctx.window))
    return cache[name]


def _gor_status(ctx, ring, status, shift):
    rep = _gor(ctx, ring)
    return {"status": rep.status, "shift": rep.shift}, {"status": status, "shift": shift}, rep.witness


def _gor_h2(ctx):
    rep = _gor(ctx, "poly2")
    top = rep.witness["top"]
    return [top[str(-j)] for j in range(2, 9)], [j - 1 for j in range(2, 9)]


def _gor_lower(ctx):
    return _gor(ctx, "poly2").witness["lower_vanish"], True


def _gor_socle(ctx):
    rep = _gor(ctx, "m_squared")
    return ({"status": rep.status, "socle_dimension": rep.witness.get("socle_dimension")},
            {"status": "fail", "socle_dimension": 2})


# tate suite -------------------------------------------------------------------------

def _pairs(ctx, spec, count):
    ms = ctx.randoms(spec, count, "tate-m")
    ns = ctx.randoms(spec, count, "tate-n")
    return list(zip(ms, ns))


def _tate(ctx, spec):
    trials = ctx.p["trials"]
    bad = []
    for i, (m, n) in enumerate(_pairs(ctx, spec, trials)):
        l, r = tate_duality_check(m, n)
        if l != r:
            bad.append({"pair": i, "lhs": l, "rhs": r})
    return trials - len(bad), trials, {"mismatches": bad}


def _tau(ctx, spec):
    s = ctx.p["samples"]
    ok = sum(stably_isomorphic(tau(m), syzygy(nakayama(m), 2)) for m in ctx.randoms(spec, s, "tau"))
    return ok, s


def _nu_id(ctx, spec):
    s = ctx.p["samples"]
    ok = sum(is_isomorphic(nakayama(m), m) for m in ctx.randoms(spec, s, "tau"))
    return ok, s


def _mt(ctx, spec):
    s = ctx.p["samples"]
    ok = sum(stably_isomorphic(a_dual(m), syzygy(transpose(m), 2)) for m in ctx.randoms(spec, s, "tau"))
    return ok, s


def _ext_stable(ctx, spec):
    s = ctx.p["samples"]
    ms = ctx.randoms(spec, s, "ext-m")
    ns = ctx.randoms(spec, s, "ext-n")
    ok = 0
    for m, n in zip(ms, ns):
        e = ext_dims(m, n, 3)[1:]
        ok += e == [stable_hom_dim(syzygy(m, i), n) for i in (1, 2, 3)]
    return ok, s


def _delta(ctx):
    lhs = {}
    for spec in ("klein_four", "cyclic:4", "quaternion8"):
        chi, order = modular_character(ctx.algebra(spec))
        lhs[spec] = [int(x) for x in chi] == [int(x) for x in ctx.algebra(spec).counit]
    return lhs, {s: True for s in lhs}


def _delta_ub(ctx):
    A = make_group_algebra("u(b)")
    chi, order = modular_character(A)
    return ({"trivial": [int(x) for x in chi] == [int(x) for x in A.counit], "order": order},
            {"trivial": False, "order": 2}, {"character": [int(x) for x in chi]})


def _koszul_swap(ctx):
    H = ctx.cohomology("klein_four")
    rng = random.Random(f"{ctx.p['seed']}:koszul")
    s = ctx.p["samples"]
    ms = ctx.randoms("klein_four", s, "kz-m")
    ns = ctx.randoms("klein_four", s, "kz-n")
    ok = 0
    for m, n in zip(ms, ns):
        while True:
            d = rng.choice([1, 2])
            b = H.cls(d, [rng.randrange(2) for _ in range(H.dim(d))])
            if not b.is_zero():
                break
        lhs = stable_hom_dim(m, koszul_object(H, b, n))
        rhs = stable_hom_dim(syzygy(koszul_object(H, b, m), 1 + d), n)
        ok += lhs == rhs
    return ok, s


def _koszul_z2(ctx):
    H = ctx.cohomology("cyclic:2")
    kb = koszul_k(H, H.basis(1)[0])
    return kb.dim, 0


def _koszul_klein_dim(ctx):
    H = ctx.cohomology("klein_four")
    return [koszul_k(H, b).dim for b in H.basis(1)], [2, 2]


# ar suite -------------------------------------------------------------------------------

AR_EXPECTED = {1: [2], 2: [3, 1], 3: [4, 2]}


def _ar(ctx, i):
    A = ctx.algebra("cyclic:4")
    tri = ar_triangle(jordan_block(A, i))
    w = tri.witness
    lhs = {"middle": jordan_type(tri.middle), "exact": w["exact"], "nonsplit": w["nonsplit"],
           "almost_split": w["almost_split"], "exhaustive": w["exhaustive"], "tau": jordan_type(tri.tau_term)}
    rhs = {"middle": AR_EXPECTED[i], "exact": True, "nonsplit": True, "almost_split": True, "exhaustive": True,
           "tau": [i]}
    return lhs, rhs, {"middle_without_projectives": jordan_type(tri.middle_stable),
                      "maps_checked": w["maps_checked"]}


def _indec(ctx):
    Z4 = ctx.algebra("cyclic:4")
    V = ctx.algebra("klein_four")
    J1, J2 = jordan_block(Z4, 1), jordan_block(Z4, 2)
    return ([indecomposable_check(J2).value, indecomposable_check(J1.direct_sum(J1)).value,
             indecomposable_check(regular(V)).value], [True, False, True])


def _period_z4(ctx):
    A = ctx.algebra("cyclic:4")
    res = periodicity_check([jordan_block(A, i) for i in (1, 2, 3)], 0)
    return {"r": res.r, "serre_identity": res.serre_identity}, {"r": 2, "serre_identity": True}


def _period_q8(ctx):
    res = periodicity_check([ctx.trivial("quaternion8")], 1)
    return {"r": res.r, "serre_identity": res.serre_identity}, {"r": 4, "serre_identity": True}


def _period_klein(ctx):
    H = ctx.cohomology("klein_four")
    res = periodicity_check([koszul_k(H, H.basis(1)[0])], 1)
    return {"r": res.r, "serre_identity": res.serre_identity}, {"r": 1, "serre_identity": True}


# genpoint ---------------------------------------------------------------------------------

def _gp_poly3(ctx):
    r = builtins.ring("poly3")
    c = generic_closed_point(r, r.zero_ideal())
    K = c.extension_field
    P = c.extended_ring.poly
    a0 = c.noether_elements[0]
    exp = [str(c.noether_elements[i] - a0 * P.const(K.gen(f"t{i}"))) for i in range(1, len(c.noether_elements))]
    return ({"m": [str(g) for g in c.m_ideal.generators], "dim_A_K_mod_m": c.checks["dim_A_K_mod_m"],
             "residue_trivial": c.checks["residue_trivial"]},
            {"m": exp, "dim_A_K_mod_m": 1, "residue_trivial": True},
            {"noether_elements": [str(a) for a in c.noether_elements]})


def _gp_q8(ctx):
    r = builtins.ring("h_q8")
    p = r.ideal(["x", "y"])
    c = generic_closed_point(r, p)
    return ({"degenerate": c.degenerate, "m": [str(g) for g in c.m_ideal.generators]},
            {"degenerate": True, "m": [str(g) for g in p.generators]})


def _residues(ctx):
    out = {}
    r = builtins.ring("h_q8")
    out["h_q8 (x,y)"] = list(residue_field_data(r, r.ideal(["x", "y"])))
    r1 = builtins.ring("poly1")
    out["F2[x] (0)"] = list(residue_field_data(r1, r1.zero_ideal()))
    c = ctx.klein_certificate
    out["F2(t)[a,b] (b-at)"] = list(residue_field_data(c.extended_ring, c.m_ideal))
    return out, {"h_q8 (x,y)": [1, 4], "F2[x] (0)": [1, 1], "F2(t)[a,b] (b-at)": [1, 1]}


def torsion_battery_modules(ctx):
    """Torsion modules (and one supported away from m) over H*(Q8) and F_2(t)[a, b]."""
    r = builtins.ring("h_q8")
    m = r.ideal(["x", "y"])
    out = [(r, m, ModulePresentation.cyclic(r, g), name) for g, name in
           [(["x", "y"], "A/m"), (["x"], "A/(x)"), (["x+y"], "A/(x+y)"), ([], "A"), (["z"], "A/(z)")]]
    c = ctx.klein_certificate
    ak, mk = c.extended_ring, c.m_ideal
    f = mk.generators[0]
    a = ak.poly.var("a")
    b = ak.poly.var("b")
    for gens, name in [([f], "A/m"), ([f * f], "A/m^2"), ([f * f * f], "A/m^3"), ([f * f, f * a], "A/(m^2, m a)"),
                       ([f * f, f * b], "A/(m^2, m b)")]:
        out.append((ak, mk, ModulePresentation.cyclic(ak, gens), "F2(t)[a,b] " + name))
    return out


def _torsion_hom_battery(ctx):
    lo, hi = ctx.window
    agree = {}
    for ring, m, N, name in torsion_battery_modules(ctx):
        res, s = hom_into_injective(N, m, (lo, hi))
        u = _point_element(ring, m)
        direct = graded_matlis_dual(Localized(N, u).expand((-hi, -lo)))
        agree[name] = res.table() == direct.table()
    return sum(agree.values()), len(agree), {"per_module": agree}


# registry -----------------------------------------------------------------------------------

def _q8_checks(p):
    return [CheckSpec("omega4_periodicity", "paper", _q8_omega4),
            CheckSpec("cohomology_dims", "derived", _q8_dims),
            CheckSpec("ring_presentation", "paper", _q8_presentation),
            CheckSpec("injective_hull_shift", "paper", _q8_hull),
            CheckSpec("serre_shift", "paper", _q8_serre)]


def _klein_checks(p):
    out = [CheckSpec("certificate_m", "paper", _klein_cert),
           CheckSpec("m_cap_A_equals_p", "paper", _klein_cap),
           CheckSpec("residue_trivial", "paper", _klein_residue)]
    for n in range(1, p["n_max"] + 1):
        out.append(CheckSpec(f"adjunction_rank_n{n}", "paper", _klein_adj, {"n": n}))
    for n in range(1, p["n_max"] + 1):
        out.append(CheckSpec(f"restricted_end_n{n}", "paper", _klein_restricted, {"n": n}))
    out.append(CheckSpec("end_rank_consistency", "derived", _klein_end))
    out.append(CheckSpec("local_rank_instance", "derived", _klein_local_rank))
    return out


def _dvr_checks(p):
    out = []
    for n in range(1, p["n_max"] + 1):
        out.append(CheckSpec(f"commutant_dim_n{n}", "paper", _dvr_commutant, {"n": n}))
        out.append(CheckSpec(f"filtration_n{n}", "paper", _dvr_filtration, {"n": n}))
        out.append(CheckSpec(f"restricted_end_n{n}", "paper", _dvr_restricted, {"n": n}))
    return out


def _gor_checks(p):
    return [CheckSpec("poly2_gorenstein", "derived", _gor_status, {"ring": "poly2", "status": "pass", "shift": -2}),
            CheckSpec("poly2_lower_vanish", "derived", _gor_lower),
            CheckSpec("poly2_top_dims", "derived", _gor_h2),
            CheckSpec("B_gorenstein", "derived", _gor_status, {"ring": "B", "status": "pass", "shift": 3}),
            CheckSpec("m_squared_not_gorenstein", "derived", _gor_socle)]


TATE_ALGEBRAS = ("klein_four", "cyclic:4", "quaternion8")


def _tate_checks(p):
    out = [CheckSpec(f"tate_{s}", "paper", _tate, {"spec": s}) for s in TATE_ALGEBRAS]
    out += [CheckSpec(f"tau_omega2_nu_{s}", "paper", _tau, {"spec": s}) for s in TATE_ALGEBRAS]
    out += [CheckSpec(f"nu_identity_{s}", "paper", _nu_id, {"spec": s}) for s in TATE_ALGEBRAS]
    out += [CheckSpec("transpose_dual_klein_four", "paper", _mt, {"spec": "klein_four"}),
            CheckSpec("ext_vs_stable_klein_four", "paper", _ext_stable, {"spec": "klein_four"}),
            CheckSpec("modular_character_group_algebras", "paper", _delta),
            CheckSpec("modular_character_restricted_borel", "derived", _delta_ub),
            CheckSpec("koszul_swap_klein_four", "paper", _koszul_swap),
            CheckSpec("koszul_dim_klein_four", "derived", _koszul_klein_dim),
            CheckSpec("koszul_z2_vanishes", "derived", _koszul_z2)]
    return out


def _ar_checks(p):
    out = [CheckSpec(f"ar_J{i}", "derived", _ar, {"i": i}) for i in (1, 2, 3)]
    out += [CheckSpec("indecomposable_checks", "trivial", _indec),
            CheckSpec("periodicity_z4_d0", "derived", _period_z4),
            CheckSpec("periodicity_q8_d1", "paper", _period_q8),
            CheckSpec("periodicity_klein_koszul", "derived", _period_klein)]
    return out


def _genpoint_checks(p):
    return [CheckSpec("klein_certificate", "paper", _klein_cert),
            CheckSpec("klein_m_cap_A", "paper", _klein_cap),
            CheckSpec("q8_degenerate", "trivial", _gp_q8),
            CheckSpec("poly3_certificate", "derived", _gp_poly3),
            CheckSpec("residue_data", "derived", _residues),
            CheckSpec("torsion_hom_battery", "paper", _torsion_hom_battery)]


SCENARIOS = {
    "q8": _q8_checks,
    "klein_four": _klein_checks,
    "dvr": _dvr_checks,
    "gorenstein": _gor_checks,
    "tate_suite": _tate_checks,
    "ar_suite": _ar_checks,
    "genpoint": _genpoint_checks,
}
ALIASES = {"tate": "tate_suite", "ar": "ar_suite", "klein": "klein_four"}


def resolve(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in SCENARIOS:
        raise ScenarioError(f"unknown scenario {name!r}; choose from {', '.join(sorted(SCENARIOS))}")
    return name


def scenario_params(**overrides) -> dict:
    p = dict(DEFAULTS)
    for k, v in overrides.items():
        if v is None:
            continue
        if k not in p:
            raise ScenarioError(f"unknown parameter {k!r}")
        p[k] = list(v) if k == "window" else int(v)
    for k, cap in CAPS.items():
        if not 0 <= p[k] <= cap:
            raise ScenarioError(f"{k} = {p[k]} is outside the documented cap 0..{cap}")
    if p["window"][0] > p["window"][1]:
        raise ScenarioError("window must satisfy lo <= hi")
    return p


def run_scenario(name: str, **overrides) -> Report:
    name = resolve(name)
    p = scenario_params(**overrides)
    ctx = Context(p)
    rep = Report(name, dict(p))
    for spec in SCENARIOS[name](p):
        rep.checks.append(run_check(spec.name, spec.provenance, spec.body, ctx, **spec.kwargs))
    return rep
