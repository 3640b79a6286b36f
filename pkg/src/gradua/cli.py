"""Command line entry point: ``gradua <command> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 inconclusive (a resource cap was hit) with no failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from gradua import __version__
from gradua.lab import builtins
from gradua.lab.report import emit_report
from gradua.lab.scenarios import SCENARIOS, ALIASES, ScenarioError, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    """Malformed input; ``where`` points at the offending file and field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


class Inconclusive(Exception):
    pass


def dumps(obj) -> str:
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(line.rstrip() for line in text.splitlines()) + "\n"


def parse_window(s: str):
    try:
        lo, hi = (int(x) for x in s.split(":"))
    except ValueError:
        raise InputError("--window", f"expected lo:hi, got {s!r}") from None
    if lo > hi:
        raise InputError("--window", "lo must not exceed hi")
    return lo, hi


def _read_json(path: str) -> tuple:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as e:
        raise InputError(path, e.strerror or str(e)) from None
    try:
        return json.loads(raw.decode("utf-8")), raw
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(path, f"not valid JSON ({e})") from None


def _wrap(path: str, fn, *args):
    """Run a loader, turning its validation errors into InputError pointing at ``path``."""
    try:
        return fn(*args)
    except InputError:
        raise
    except (KeyError, ValueError, TypeError, IndexError) as e:
        msg = f"missing field {e.args[0]!r}" if isinstance(e, KeyError) else str(e)
        raise InputError(path, msg) from None


def load_ring(spec: str):
    from gradua.rings.ring import RingPresentation

    if spec in builtins.RINGS and not Path(spec).exists():
        return builtins.ring(spec), spec.encode()
    data, raw = _read_json(spec)
    return _wrap(spec, RingPresentation.from_json, data), raw


def load_ideal(ring, path: str):
    from gradua.rings.ring import HomIdeal

    data, raw = _read_json(path)
    return _wrap(path, HomIdeal.from_json, ring, data), raw


def load_graded_module(ring, path: str):
    from gradua.modules.graded import ModulePresentation

    data, raw = _read_json(path)
    return _wrap(path, ModulePresentation.from_json, ring, data), raw


def load_algebra(spec: str):
    from gradua.stmod.algebra import AlgebraDatum, make_group_algebra

    if not Path(spec).exists():
        return _wrap(spec, make_group_algebra, spec), spec.encode()
    data, raw = _read_json(spec)
    if isinstance(data, dict) and "group" in data:
        return _wrap(spec, make_group_algebra, data["group"]), raw
    return _wrap(spec, AlgebraDatum.from_json, data), raw


def load_fd_module(algebra, spec: str):
    from gradua.stmod.module import FDModule

    if spec in ("k", "trivial"):
        return FDModule.trivial(algebra), spec.encode()
    if spec in ("A", "regular"):
        return FDModule.free(algebra, 1), spec.encode()
    data, raw = _read_json(spec)
    return _wrap(spec, FDModule.from_json, algebra, data), raw


# cache ------------------------------------------------------------------------------------

def cache_dir() -> Path | None:
    env = os.environ.get("GRADUA_CACHE_DIR")
    if env == "":
        return None
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "gradua"


def cache_key(argv_tail, blobs) -> str:
    h = hashlib.sha256(__version__.encode())
    h.update(os.environ.get("GRADUA_DEGREE_BOUND", "").encode())
    for a in argv_tail:
        h.update(b"\0" + a.encode())
    for b in blobs:
        h.update(b"\1" + hashlib.sha256(b).digest())
    return h.hexdigest()


def cached(key: str, compute):
    """Return compute() through the cache; an entry is used only if its stored key matches."""
    d = cache_dir()
    path = d / f"{key}.json" if d else None
    if path and path.exists():
        try:
            entry = json.loads(path.read_text("utf-8"))
            if entry.get("key") == key:
                return entry["value"]
        except (OSError, ValueError):
            pass
    value = compute()
    if path:
        try:
            d.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps({"key": key, "value": value}, sort_keys=True), "utf-8")
            tmp.replace(path)
        except OSError:
            pass
    return value


# commands -----------------------------------------------------------------------------------

def cmd_ring(a):
    from gradua.rings.ops import groebner_basis, hilbert_series, krull_dimension, noether_normalize
    from gradua.rings.groebner import GroebnerBoundExceeded

    ring, raw = load_ring(a.ring)
    lo, hi = parse_window(a.window)

    def compute():
        if a.op == "groebner":
            bound = os.environ.get("GRADUA_DEGREE_BOUND")
            try:
                gb = groebner_basis(ring.zero_ideal(), max_degree=int(bound) if bound else None)
            except GroebnerBoundExceeded as e:
                raise Inconclusive(str(e)) from None
            return {"groebner_basis": [str(g) for g in gb]}
        if a.op == "hilbert":
            hs = hilbert_series(ring, window=(max(lo, 0), max(hi, 0)))
            return {"dims": {str(n): (hs.coefficient(n) if n >= 0 else 0) for n in range(lo, hi + 1)},
                    "series": hs.to_json()}
        if a.op == "dim":
            return {"krull_dimension": krull_dimension(ring)}
        return {"noether_elements": [str(u) for u in noether_normalize(ring)]}

    return cached(cache_key(["ring", a.op, a.window], [raw]), compute)


def cmd_genpoint(a):
    from gradua.rings.genpoint import generic_closed_point

    ring, raw = load_ring(a.ring)
    p, praw = load_ideal(ring, a.prime)
    return cached(cache_key(["genpoint"], [raw, praw]), lambda: generic_closed_point(ring, p).to_json())


def cmd_module(a):
    from gradua.modules.graded import degreewise_expand, graded_matlis_dual
    from gradua.modules.localcoh import local_cohomology_irrelevant
    from gradua.modules.localize import hom_into_injective

    ring, raw = load_ring(a.ring)
    m, mraw = load_graded_module(ring, a.module)
    lo, hi = parse_window(a.window)
    blobs = [raw, mraw]
    if a.op == "hominj":
        if not a.point:
            raise InputError("--point", "hominj needs --point <ideal-file>")
        pt, praw = load_ideal(ring, a.point)
        blobs.append(praw)

    def compute():
        if a.op == "expand":
            return degreewise_expand(m, (lo, hi)).to_json()
        if a.op == "matlis":
            return graded_matlis_dual(degreewise_expand(m, (-hi, -lo))).to_json()
        if a.op == "localcoh":
            return {"H": [h.to_json() for h in local_cohomology_irrelevant(m, (lo, hi))]}
        res, s = hom_into_injective(m, pt, (lo, hi))
        return {"torsion_exponent": s, "module": res.to_json()}

    return cached(cache_key(["module", a.op, a.window], blobs), compute)


def cmd_gorenstein(a):
    from gradua.modules.localcoh import gorenstein_check_irrelevant

    ring, raw = load_ring(a.ring)
    lo, hi = parse_window(a.window)
    out = cached(cache_key(["gorenstein", a.window], [raw]),
                 lambda: gorenstein_check_irrelevant(ring, (lo, hi)).to_json())
    return out, {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(out["status"], EXIT_INCONCLUSIVE)


def _parse_class(H, spec: str):
    try:
        deg, coords = spec.split(":")
        deg = int(deg)
        coords = [int(c) for c in coords.split(",")]
    except ValueError:
        raise InputError("--class", f"expected degree:c1,c2,..., got {spec!r}") from None
    if deg < 1 or len(coords) != H.dim(deg):
        raise InputError("--class", f"H^{deg} has dimension {H.dim(deg) if deg >= 0 else 0}, got {len(coords)} coordinates")
    return H.cls(deg, coords)


def cmd_stmod(a):
    from gradua.stmod.ar import ar_triangle, tate_duality_check
    from gradua.stmod.cohomology import CohomologyRing
    from gradua.stmod.koszul import koszul_object
    from gradua.stmod.module import random_module, stable_hom_dim, syzygy

    alg, araw = load_algebra(a.algebra)
    if a.op == "syzygy":
        m, _ = load_fd_module(alg, a.module or "k")
        out = syzygy(m, a.n)
        return {"n": a.n, "dim": out.dim, "module": out.to_json()}, EXIT_OK
    if a.op == "stablehom":
        m1, _ = load_fd_module(alg, a.m1)
        m2, _ = load_fd_module(alg, a.m2)
        return {"stable_hom_dim": stable_hom_dim(m1, m2)}, EXIT_OK
    if a.op == "tate":
        if not 0 <= a.trials <= 500:
            raise InputError("--trials", "must be within 0..500")
        rng = random.Random(f"{a.seed}:cli-tate")
        rows, bad = [], 0
        for i in range(a.trials):
            m, n = random_module(alg, rng), random_module(alg, rng)
            l, r = tate_duality_check(m, n)
            bad += l != r
            rows.append({"trial": i, "dims": [m.dim, n.dim], "lhs": l, "rhs": r})
        return {"trials": a.trials, "seed": a.seed, "agree": a.trials - bad, "results": rows}, \
            EXIT_FAIL if bad else EXIT_OK
    if a.op == "ar":
        m, _ = load_fd_module(alg, a.module_file)
        tri = ar_triangle(m)
        w = tri.witness
        ok = w["exact"] and w["nonsplit"] and w["almost_split"]
        out = tri.to_json()
        out["tau_term"] = tri.tau_term.to_json()
        out["middle"] = tri.middle.to_json()
        return out, EXIT_OK if ok else EXIT_FAIL
    H = CohomologyRing(alg)
    b = _parse_class(H, a.class_spec)
    kb = koszul_object(H, b)
    return {"class": a.class_spec, "dim": kb.dim, "module": kb.to_json()}, EXIT_OK


def cmd_scenario(a):
    window = list(parse_window(a.window)) if a.window else None
    rep = run_scenario(a.name, n_max=a.n_max, seed=a.seed, trials=a.trials, samples=a.samples, window=window)
    if a.json:
        Path(a.json).write_bytes(emit_report(rep, "json", a.timings))
    sys.stdout.write(emit_report(rep, a.format, a.timings).decode("utf-8"))
    return rep.exit_code()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradua", description="Graded rings, stable module categories and their dualities.")
    p.add_argument("--version", action="version", version=f"gradua {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("ring", help="Groebner basis, Hilbert function, Krull dimension, Noether normalization")
    r.add_argument("ring", help="ring JSON file or built-in name")
    r.add_argument("op", choices=["groebner", "hilbert", "dim", "noether"])
    r.add_argument("--window", default="0:8")

    g = sub.add_parser("genpoint", help="certificate for the generic closed point over a prime")
    g.add_argument("ring")
    g.add_argument("--prime", required=True, help="ideal JSON file")

    m = sub.add_parser("module", help="graded module computations")
    m.add_argument("ring")
    m.add_argument("module")
    m.add_argument("op", choices=["expand", "localcoh", "matlis", "hominj"])
    m.add_argument("--point", help="ideal JSON file of a closed point (hominj)")
    m.add_argument("--window", default="-8:8")

    go = sub.add_parser("gorenstein", help="local Gorenstein check at the irrelevant ideal")
    go.add_argument("ring")
    go.add_argument("--window", default="-8:8")

    s = sub.add_parser("stmod", help="stable module category computations")
    s.add_argument("algebra", help="algebra JSON file or group spec (klein_four, cyclic:4, quaternion8, ...)")
    ss = s.add_subparsers(dest="op", required=True)
    sy = ss.add_parser("syzygy")
    sy.add_argument("-n", type=int, required=True)
    sy.add_argument("--module", help="module JSON file, 'k' (default) or 'A'")
    sh = ss.add_parser("stablehom")
    sh.add_argument("m1")
    sh.add_argument("m2")
    t = ss.add_parser("tate")
    t.add_argument("--trials", type=int, default=50)
    t.add_argument("--seed", type=int, default=0)
    ar = ss.add_parser("ar")
    ar.add_argument("module_file")
    kz = ss.add_parser("koszul")
    kz.add_argument("--class", dest="class_spec", required=True, help="degree:c1,c2,... in the basis of H^degree")

    sc = sub.add_parser("scenario", help="run a named scenario and emit its report")
    sc.add_argument("name", help=", ".join(sorted(SCENARIOS) + sorted(ALIASES)))
    sc.add_argument("--n-max", type=int)
    sc.add_argument("--seed", type=int)
    sc.add_argument("--trials", type=int)
    sc.add_argument("--samples", type=int)
    sc.add_argument("--window")
    sc.add_argument("--json", metavar="OUT", help="also write the JSON report to this file")
    sc.add_argument("--format", choices=["json", "text-table"], default="json")
    sc.add_argument("--timings", action="store_true", help="include per-check timings (not deterministic)")
    return p


def _join_windows(argv):
    # "--window -2:4" would read the negative bound as an option
    out, it = [], iter(argv)
    for x in it:
        if x == "--window":
            out.append("--window=" + next(it, ""))
        else:
            out.append(x)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_windows(sys.argv[1:] if argv is None else list(argv))
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if a.command == "scenario":
            return cmd_scenario(a)
        code = EXIT_OK
        if a.command == "ring":
            out = cmd_ring(a)
        elif a.command == "genpoint":
            out = cmd_genpoint(a)
        elif a.command == "module":
            out = cmd_module(a)
        elif a.command == "gorenstein":
            out, code = cmd_gorenstein(a)
        else:
            out, code = cmd_stmod(a)
        sys.stdout.write(dumps(out))
        return code
    except (InputError, ScenarioError) as e:
        print(f"gradua: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (Inconclusive, RuntimeError) as e:
        # resource caps and certificates that could not be completed
        print(f"gradua: inconclusive: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as e:
        # preconditions of the engines (zero class, out-of-scope point, ...)
        print(f"gradua: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
