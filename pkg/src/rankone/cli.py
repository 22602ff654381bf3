"""Command-line front end.

Every run prints one JSON document (schema rankone.cert/1) holding the
normalized job and its result. Saved with --out it is a certificate:
``rankone --verify FILE`` recomputes the job, compares the results and
re-checks the claims that can be tested independently.

Exit codes: 0 success, 1 a check found a violation, 2 malformed input or
input beyond the caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product

from . import __version__
from .adele import (
    DEFAULT_ENUM_CAP,
    ClosureLevel,
    Place,
    congruence_solutions,
    density_check,
    exact_projection,
    extension_candidates,
    frobenius_limit,
    minimal_polynomial,
    place_enumerate,
    standard_schedule,
)
from .corpus import get_instance, load_corpus
from .ffpoly import DensePoly, LaurentPoly, laurent_divides, make_gab
from .jsonio import (
    CERT_SCHEMA,
    JOB_SCHEMA,
    FormatError,
    coset_from_json,
    coset_to_json,
    dense_from_json,
    dense_to_json,
    dumps,
    field_from_json,
    field_to_json,
    laurent_from_json,
    laurent_to_json,
    parse_field,
    poly_to_json,
    system_from_json,
)
from .lifting import (
    choose_parameters,
    lift_exponents,
    solve_all_monomial_points,
    veronese_linearize,
    veronese_point,
    monomial_point,
)
from .partition import (
    DEFAULT_TERM_CAP,
    enumerate_zero_sum_partitions,
    is_admissible,
    make_terms,
    residue_partition,
)
from .zsolve import CutoffExceeded, LiftError

DEFAULT_CAPS = {"terms": DEFAULT_TERM_CAP, "enum": DEFAULT_ENUM_CAP, "cutoff": 20}
CAP_LIMITS = {"terms": 16, "enum": 10 ** 8, "cutoff": 40}
BOX_LIMIT = 20
COMMANDS = ("gab", "divides", "partitions", "lift", "solve", "closure",
            "density", "frobenius", "linearize", "corpus")
NEEDS_SYSTEM = {"lift", "solve", "closure", "density", "linearize"}


# -- flag parsing -----------------------------------------------------------


def parse_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise FormatError(f"expected comma-separated integers, got {text!r}") from None


def parse_terms(text):
    """'c@e,c@e,...' into [{coeff, t}, ...]."""
    out = []
    for item in text.split(","):
        c, sep, e = item.partition("@")
        if not sep:
            raise FormatError(f"term {item!r} is not of the form coeff@exponent")
        try:
            out.append({"coeff": int(c), "t": int(e)})
        except ValueError:
            raise FormatError(f"bad term {item!r}") from None
    return out


def parse_caps(text, base=None):
    caps = dict(DEFAULT_CAPS)
    caps.update(base or {})
    if text:
        for item in text.split(","):
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in DEFAULT_CAPS:
                raise FormatError(f"bad cap {item!r}; known caps: {', '.join(DEFAULT_CAPS)}")
            try:
                caps[key] = int(val)
            except ValueError:
                raise FormatError(f"bad cap value {item!r}") from None
    for key, val in caps.items():
        if key not in CAP_LIMITS:
            raise FormatError(f"unknown cap {key!r}")
        if not 1 <= val <= CAP_LIMITS[key]:
            raise FormatError(f"cap {key}={val} outside [1, {CAP_LIMITS[key]}]")
    return caps


# -- job assembly -----------------------------------------------------------


def corpus_job(name):
    try:
        inst = get_instance(name)
    except KeyError as exc:
        raise FormatError(str(exc.args[0])) from None
    params = {}
    if inst.extra_places:
        params["extra_places"] = [dense_to_json(P) for P in inst.extra_places]
    if inst.resolve:
        params["resolve"] = list(inst.resolve)
    return {"field": field_to_json(inst.field), "system": [poly_to_json(f) for f in inst.system],
            "params": params}


def read_input(spec):
    if spec.startswith("corpus:"):
        return corpus_job(spec[len("corpus:"):])
    try:
        raw = sys.stdin.read() if spec == "-" else open(spec).read()
        doc = json.loads(raw)
    except OSError as exc:
        raise FormatError(f"cannot read {spec}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{spec} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("an input document is a JSON object")
    # the output of `rankone corpus NAME` carries the job as its result
    if doc.get("schema") == CERT_SCHEMA and doc.get("job", {}).get("command") == "corpus" \
            and isinstance(doc.get("result"), dict) and "system" in doc["result"]:
        return doc["result"]
    if doc.get("schema", JOB_SCHEMA) != JOB_SCHEMA:
        raise FormatError(f"unsupported schema {doc.get('schema')!r}, expected {JOB_SCHEMA}")
    return doc


FLAG_PARAMS = {
    "a": ("a", None), "b": ("b", None), "e": ("e", parse_ints),
    "terms": ("terms", parse_terms), "divisor": ("divisor", parse_ints),
    "level_degrees": ("degrees", None), "level_precision": ("precision", None),
    "box": ("box", None), "resolve": ("resolve", parse_ints), "name": ("name", None),
}


def build_job(command, args):
    doc = read_input(args.input) if args.input else {}
    params = dict(doc.get("params", {}))
    for attr, (key, conv) in FLAG_PARAMS.items():
        val = getattr(args, attr, None)
        if val is not None:
            params[key] = conv(val) if conv else val
    job = {"schema": JOB_SCHEMA, "command": command, "params": params,
           "caps": parse_caps(args.caps, doc.get("caps"))}
    if args.field:
        fld = parse_field(args.field)
    elif "field" in doc:
        fld = field_from_json(doc["field"])
    elif command == "corpus":
        fld = None
    else:
        raise FormatError("no field given (use --field or a 'field' entry)")
    if fld is not None:
        job["field"] = field_to_json(fld)
    if command in NEEDS_SYSTEM:
        if "system" not in doc:
            raise FormatError(f"'{command}' needs a polynomial system (--input)")
        job["system"] = [poly_to_json(f) for f in system_from_json(fld, doc["system"])]
    return job


# -- parameter access -------------------------------------------------------


def need(params, key, kind=int):
    if key not in params:
        raise FormatError(f"missing parameter {key!r}")
    val = params[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise FormatError(f"parameter {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise FormatError(f"parameter {key!r} must be a list")
    return val


def opt_int(params, key, default, lo=None, hi=None):
    val = params.get(key, default)
    if not isinstance(val, int) or isinstance(val, bool):
        raise FormatError(f"parameter {key!r} must be an integer")
    if (lo is not None and val < lo) or (hi is not None and val > hi):
        raise FormatError(f"parameter {key!r}={val} outside [{lo}, {hi}]")
    return val


def field_of(job):
    return field_from_json(job["field"])


def system_of(job):
    return system_from_json(field_of(job), job["system"])


def classify(family):
    if family.is_empty():
        return "empty"
    if any(c.dim for c in family.cosets):
        return "positive"
    return "unique" if len(family.cosets) == 1 else "finite"


# -- commands: each returns (result, ok) ------------------------------------


def run_gab(job):
    fld, p = field_of(job), job["params"]
    a, b = need(p, "a"), need(p, "b")
    try:
        g = make_gab(fld, a, b)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return {"a": a, "b": b, "degree": g.degree, "coeffs": dense_to_json(g)}, True


def run_divides(job):
    fld, p = field_of(job), job["params"]
    P = laurent_from_json(fld, need(p, "terms", list))
    if "a" in p or "b" in p:
        a, b = need(p, "a"), need(p, "b")
        try:
            Q = make_gab(fld, a, b)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        period = a * b
    else:
        Q, period = dense_from_json(fld, need(p, "divisor", list)), None
    if Q.is_zero():
        raise FormatError("divisor is zero")
    if P.min_deg < 0 and Q[0] == 0:
        raise FormatError("divisibility in k[T, 1/T] needs a divisor prime to T")
    direct = laurent_divides(Q, P)
    out = {"divisor": dense_to_json(Q), "dividend": laurent_to_json(P), "divides": direct}
    ok = True
    if period is not None:
        # second route: reduce modulo T^(ab) - 1 first
        out["divides_folded"] = laurent_divides(Q, P, period=period)
        ok = out["divides_folded"] == direct
    return out, ok


def _partition_terms(job):
    fld, p = field_of(job), job["params"]
    raw = need(p, "terms", list)
    try:
        return fld, make_terms(fld, [(t["coeff"], t["t"]) for t in raw])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad term list: {exc}") from None


def run_partitions(job):
    fld, terms = _partition_terms(job)
    p, cap = job["params"], job["caps"]["terms"]
    parts = enumerate_zero_sum_partitions(fld, terms, cap)
    out = {"terms": [{"index": t.index, "coeff": t.coeff, "t": t.exp} for t in terms],
           "partitions": [[list(b) for b in part] for part in parts]}
    ok = True
    if "a" in p or "b" in p:
        a, b = need(p, "a"), need(p, "b")
        wit = residue_partition(fld, terms, a, b, cap)
        f = LaurentPoly.from_terms(fld, [(t.exp, t.coeff) for t in terms])
        div = laurent_divides(make_gab(fld, a, b), f, period=a * b)
        out.update({"a": a, "b": b, "divides": div,
                    "residue_partition": None if wit is None else [list(x) for x in wit]})
        ok = (wit is not None) == div
        out["consistent"] = ok
    return out, ok


def run_lift(job):
    fld, p = field_of(job), job["params"]
    f_list = system_of(job)
    e, a = need(p, "e", list), need(p, "a")
    a_check = opt_int(p, "a_check", 8, 1, 64)
    T = DensePoly.T(fld)
    params = choose_parameters(f_list, [T], a_check)
    out = {"a0": params.a0, "b0": params.b0, "e": e, "a": a}
    try:
        res = lift_exponents(f_list, e, a, params, cutoff=job["caps"]["cutoff"], cap=job["caps"]["terms"])
    except LiftError as exc:
        out["error"] = str(exc)
        return out, False
    p1 = all(f.specialize(res.exponents).is_zero() for f in f_list)
    q = DensePoly.monomial(fld, res.level) - DensePoly.one(fld)
    p2 = all(
        laurent_divides(q, LaurentPoly.monomial(fld, x) - LaurentPoly.monomial(fld, y))
        for x, y in zip(e, res.exponents)
    )
    out.update({"exponents": list(res.exponents), "n0": res.n0, "level": res.level,
                "choice": [[list(b) for b in part] for part in res.choice],
                "vanishes": p1, "congruent": p2})
    return out, p1 and p2


def run_solve(job):
    f_list = system_of(job)
    fam = solve_all_monomial_points(f_list, job["caps"]["terms"])
    out = {"cosets": [coset_to_json(c) for c in fam.cosets], "kind": classify(fam)}
    ok = True
    if "box" in job["params"]:
        B = opt_int(job["params"], "box", 0, 0, BOX_LIMIT)
        M = f_list[0].M
        if (2 * B + 1) ** M > job["caps"]["enum"]:
            raise CutoffExceeded(f"box [-{B},{B}]^{M} exceeds the enumeration cap")
        rng = range(-B, B + 1)
        brute = {e for e in product(rng, repeat=M) if all(f.specialize(e).is_zero() for f in f_list)}
        claimed = {e for e in product(rng, repeat=M) if fam.contains(e)}
        ok = brute == claimed
        out["box"] = {"radius": B, "points": len(brute), "agree": ok,
                      "missing": sorted(brute - claimed)[:10], "extra": sorted(claimed - brute)[:10]}
    return out, ok


def _level_places(fld, degrees, precision):
    return [(pl, precision) for pl in place_enumerate(fld, degrees)]


def run_closure(job):
    fld, p = field_of(job), job["params"]
    f_list = system_of(job)
    d = opt_int(p, "degrees", 2, 1, 6)
    n = opt_int(p, "precision", 1, 1, 8)
    level = ClosureLevel.make(_level_places(fld, d, n))
    cap = job["caps"]["enum"]
    fam = solve_all_monomial_points(f_list, job["caps"]["terms"])
    cong = congruence_solutions(f_list, level, cap)
    exact = exact_projection(fam, level.N, cap)
    out = {"level": level.describe(), "N": level.N, "modulus_degree": level.modulus.degree,
           "congruence": [list(r) for r in cong.sorted()], "exact": [list(r) for r in exact.sorted()],
           "contained": exact.residues <= cong.residues, "equal": exact.residues == cong.residues}
    return out, out["contained"]


def run_density(job):
    fld, p = field_of(job), job["params"]
    f_list = system_of(job)
    d = opt_int(p, "degrees", 3, 1, 6)
    n = opt_int(p, "precision", 2, 1, 8)
    cands = [(Place(dense_from_json(fld, c)), 1) for c in p.get("extra_places", [])]
    if "resolve" in p:
        res = need(p, "resolve", list)
        if len(res) != 2 or not all(isinstance(x, int) for x in res):
            raise FormatError("resolve takes two integers: max degree and max precision")
        rd, rn = res
        if not (1 <= rd <= 6 and 1 <= rn <= 8):
            raise FormatError("resolve takes max degree in [1, 6] and max precision in [1, 8]")
        cands += extension_candidates(fld, rd, rn)
    rep = density_check(f_list, standard_schedule(fld, d, n), cap=job["caps"]["enum"],
                        resolve_with=cands or None)
    out = {
        "levels": [{"index": r.index, "N": r.N, "modulus_degree": r.modulus_degree,
                    "congruence": r.congruence, "exact": r.exact, "contained": r.contained,
                    "equal": r.equal, "spurious": [list(x) for x in r.spurious]}
                   for r in rep.levels],
        "sound": rep.sound, "stabilized_at": rep.stabilized_at, "final_equal": rep.final_equal,
        "spurious": rep.spurious, "resolved": rep.resolved, "counterexamples": rep.counterexamples,
    }
    return out, rep.ok


def run_frobenius(job):
    fld, p = field_of(job), job["params"]
    d = opt_int(p, "degrees", 4, 1, 6)
    rows = []
    for pl in place_enumerate(fld, d):
        lim = frobenius_limit(pl)
        rows.append({"place": dense_to_json(pl.P), "degree": pl.degree, "order": lim.order,
                     "stable_from": lim.stable_from, "limit": dense_to_json(lim.value),
                     "minpoly": dense_to_json(lim.minpoly), "equal": lim.minpoly == pl.P})
    degrees = sorted({len(r["minpoly"]) - 1 for r in rows})
    return {"places": rows, "minpoly_degrees": degrees}, all(r["equal"] for r in rows)


def run_linearize(job):
    f_list = system_of(job)
    lin = veronese_linearize(f_list)
    out = {"D": lin.D, "N": lin.N, "index": [list(d) for d in lin.index],
           "forms": [[{"y": list(lin.index[pos]), "coeff": dense_to_json(c)} for pos, c in sorted(form.items())]
                     for form in lin.forms]}
    ok = True
    if "e" in job["params"]:
        e = need(job["params"], "e", list)
        on_variety = all(f.specialize(e).is_zero() for f in f_list)
        y = veronese_point(monomial_point(lin.field, e), lin.D)
        forms_vanish = all(v.is_zero() for v in lin.evaluate(y))
        ok = on_variety == forms_vanish
        out["point"] = {"e": e, "on_variety": on_variety, "forms_vanish": forms_vanish}
    return out, ok


def run_corpus(job):
    name = job["params"].get("name")
    if name:
        return corpus_job(name), True
    rows = [{"name": i.name, "field": field_to_json(i.field), "kind": i.kind, "text": i.text,
             "M": i.M, "deep": i.deep} for i in load_corpus(include_deep=True)]
    return {"instances": rows}, True


RUNNERS = {name: globals()[f"run_{name}"] for name in COMMANDS}


def run_job(job):
    command = job.get("command")
    if command not in RUNNERS:
        raise FormatError(f"unknown command {command!r}")
    result, ok = RUNNERS[command](job)
    return {"schema": CERT_SCHEMA, "version": __version__, "job": job, "result": result, "ok": bool(ok)}


# -- certificate replay -----------------------------------------------------


def independent_checks(cert):
    """Claims re-tested without the code path that produced them; returns failure messages."""
    job, res = cert["job"], cert["result"]
    cmd = job["command"]
    bad = []
    if cmd == "solve":
        f_list = system_of(job)
        for c in res["cosets"]:
            coset = coset_from_json(c)
            for pt in coset.sample_points():
                if not all(f.specialize(pt).is_zero() for f in f_list):
                    bad.append(f"coset point {pt} is not a solution")
    elif cmd == "lift" and "exponents" in res:
        f_list = system_of(job)
        ep, lvl = res["exponents"], res["level"]
        if not all(f.specialize(ep).is_zero() for f in f_list):
            bad.append("lifted exponents are not a solution")
        if any((x - y) % lvl for x, y in zip(res["e"], ep)):
            bad.append("lifted exponents not congruent at the claimed level")
    elif cmd == "partitions":
        fld, terms = _partition_terms(job)
        for part in res["partitions"]:
            if not is_admissible(fld, terms, [tuple(b) for b in part]):
                bad.append(f"partition {part} is not admissible")
    elif cmd == "frobenius":
        fld = field_of(job)
        for row in res["places"]:
            P = dense_from_json(fld, row["place"])
            if minimal_polynomial(dense_from_json(fld, row["limit"]), P) != dense_from_json(fld, row["minpoly"]):
                bad.append(f"minimal polynomial mismatch at {row['place']}")
    elif cmd == "gab":
        fld = field_of(job)
        a, b = res["a"], res["b"]
        g = dense_from_json(fld, res["coeffs"])
        lhs = g * (DensePoly.monomial(fld, a) - DensePoly.one(fld))
        if lhs != DensePoly.monomial(fld, a * b) - DensePoly.one(fld):
            bad.append("g * (T^a - 1) != T^(ab) - 1")
    return bad


def verify(path):
    try:
        cert = json.loads(open(path).read())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read certificate {path}: {exc}") from None
    if not isinstance(cert, dict) or cert.get("schema") != CERT_SCHEMA or "job" not in cert:
        raise FormatError(f"{path} is not a {CERT_SCHEMA} document")
    again = run_job(cert["job"])
    problems = []
    if again["result"] != cert.get("result"):
        problems.append("recomputed result differs from the certificate")
    if again["ok"] != cert.get("ok"):
        problems.append("recomputed check status differs from the certificate")
    problems += independent_checks(cert)
    ok = not problems and bool(cert.get("ok"))
    return {"schema": CERT_SCHEMA, "verify": path, "command": cert["job"]["command"],
            "problems": problems, "claims_hold": bool(cert.get("ok")), "ok": ok}


# -- entry point ------------------------------------------------------------


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="p, p^d or p^d:m0,...,md")
    common.add_argument("--input", help="job document (path, '-' for stdin, or corpus:NAME)")
    common.add_argument("--caps", help="comma list of terms=, enum=, cutoff=")
    common.add_argument("--out", help="also write the result document to this path")

    parser = argparse.ArgumentParser(prog="rankone", description="Monomial points of varieties over F_q(T).")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--verify", metavar="CERT", help="replay a certificate and check its claims")
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("gab", "coefficients of g_{a,b} = (T^(ab)-1)/(T^a-1)")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p = add("divides", "divisibility in k[T, 1/T]")
    p.add_argument("--terms", help="dividend as coeff@exp,...")
    p.add_argument("--divisor", help="divisor coefficients, lowest degree first")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p = add("partitions", "admissible zero-sum partitions of the terms")
    p.add_argument("--terms", help="coeff@exp,...")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p = add("lift", "lift an approximate monomial solution")
    p.add_argument("--e", help="exponent vector, comma separated (write --e=-1,2 for a leading minus)")
    p.add_argument("--a", type=int)
    p = add("solve", "all monomial points as lattice cosets")
    p.add_argument("--box", type=int, help="cross-check by brute force on [-B, B]^M")
    p = add("closure", "congruence and exact residues at one level")
    p.add_argument("--level-degrees", type=int)
    p.add_argument("--level-precision", type=int)
    p = add("density", "density check along the standard schedule")
    p.add_argument("--level-degrees", type=int)
    p.add_argument("--level-precision", type=int)
    p.add_argument("--resolve", help="DEG,PREC: search further places eliminating spurious residues")
    p = add("frobenius", "limits of T^(p^(n!)) at all places up to a degree")
    p.add_argument("--level-degrees", type=int)
    p = add("linearize", "Veronese linearization, optionally checked at a point")
    p.add_argument("--e", help="exponent vector of a monomial point")
    p = add("corpus", "list the bundled instances or print one as a job")
    p.add_argument("name", nargs="?")
    return parser


def emit(doc, out_path=None):
    text = dumps(doc)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.verify:
            if args.command:
                raise FormatError("--verify takes no subcommand")
            doc = verify(args.verify)
            emit(doc)
            return 0 if doc["ok"] else 1
        if not args.command:
            parser.print_usage(sys.stderr)
            return 2
        doc = run_job(build_job(args.command, args))
    except (ValueError, CutoffExceeded) as exc:
        print(f"rankone: error: {exc}", file=sys.stderr)
        return 2
    emit(doc, args.out)
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
