"""Batch command-line surface: prime enumeration, twist construction,
L-value and logarithm evaluation, and one-shot verification of the built-in
examples with pass/fail exit codes.

Output is UTF-8 JSON, written to stdout or --out.  All reports are built
with a fixed key order and canonical prime order, so identical configs
produce byte-identical output.  Field elements serialize as little-endian
coefficient arrays of integers in [0, p); polynomials as arrays of such
arrays; human-readable forms ride along in *_pretty fields.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 bad input or error,
3 convergence refusal (lvalue/logvalue only).
"""

import argparse
import json
import sys

from .base import (
    APoly,
    FieldSpec,
    KDomain,
    KElem,
    PrimeIdeal,
    enumerate_monic_irreducibles,
    poly_string,
)
from .drinfeld import DrinfeldModule, carlitz
from .errors import ConvergenceError, Error, RadiusError
from .examples import (
    expected_f_vectors,
    s3_configuration,
    torsion_character_configuration,
)
from .laurent import DEFAULT_PRECISION
from .lseries import goss_L
from .specialvalues import (
    convergence_radius,
    log_at_one,
    power_twist_module,
    taelman_check,
)
from .tower import Tower
from .twist import (
    average_solution,
    clear_denominators,
    companion_matrices,
    f_vector,
    trivial_solution,
    twist_model,
    verify_sep_isomorphism,
    verify_solution,
)


class InputError(Error):
    """Malformed command-line input or request file (exit 2)."""


# ---------------------------------------------------------------------------
# the tiny polynomial grammar: digits, theta (or x), ^, +, *
# ---------------------------------------------------------------------------

def parse_poly(text, spec):
    """Parse "4θ^6+4θ^3+1" (adjacency multiplies, so 4θ^6 = 4*θ^6) into an
    APoly; integer literals reduce into the prime subfield."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial")
    total = APoly.zero(spec)
    for term in s.split("+"):
        if not term:
            raise InputError("empty term in %r" % text)
        code = spec.one
        degree = 0
        i = 0
        after_star = False
        while i < len(term):
            ch = term[i]
            if ch == "*":
                if after_star or i == 0:
                    raise InputError("misplaced '*' in %r" % term)
                after_star = True
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(term) and term[j].isdigit():
                    j += 1
                code = spec.mul(code, int(term[i:j]) % spec.char)
                i = j
            elif ch in ("θ", "x"):
                i += 1
                exp = 1
                if i < len(term) and term[i] == "^":
                    j = i + 1
                    k = j
                    while k < len(term) and term[k].isdigit():
                        k += 1
                    if k == j:
                        raise InputError("'^' needs an integer exponent in %r" % term)
                    exp = int(term[j:k])
                    i = k
                degree += exp
            else:
                raise InputError("unexpected character %r in %r" % (ch, text))
            after_star = False
        if after_star:
            raise InputError("trailing '*' in %r" % term)
        total = total + APoly(spec, (0,) * degree + (code,))
    return total


# ---------------------------------------------------------------------------
# JSON rendering
# ---------------------------------------------------------------------------

def laurent_json(x):
    """LaurentNumber as {"top", "coeffs"} with coefficient coordinate arrays."""
    data = x.to_jsonable()
    if "coeffs" in data:
        data["coeffs"] = [x.field.serialize(c) for c in data["coeffs"]]
    return data


def mat_json(mat):
    return [[x.to_jsonable() for x in row] for row in mat]


def mat_pretty(mat):
    return [[repr(x) for x in row] for row in mat]


def model_json(module):
    return {
        "dim": module.dim,
        "rank": module.rank,
        "terms": [mat_json(mat) for mat in module.ore_t.terms],
    }


def model_pretty(module):
    return [mat_pretty(mat) for mat in module.ore_t.terms]


def emit(report, out_path):
    payload = json.dumps(report, ensure_ascii=False, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload.encode("utf-8"))
        sys.stdout.buffer.flush()


def emit_error(exc):
    payload = json.dumps(
        {"error": type(exc).__name__, "detail": str(exc)}, ensure_ascii=False)
    sys.stderr.write(payload + "\n")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

class RunConfig:
    """Resolved invocation: the constant field (when flags name one), the
    parsed input file (when given), and the numeric knobs with their
    ledger defaults."""

    __slots__ = ("ns", "payload", "s", "deg_max", "k_max", "prec",
                 "out", "parallel")

    def __init__(self, ns):
        self.ns = ns
        self.payload = None
        in_path = getattr(ns, "in_path", None)
        if in_path:
            try:
                with open(in_path, "r", encoding="utf-8") as fh:
                    self.payload = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError("cannot read %s: %s" % (in_path, exc))
            if not isinstance(self.payload, dict):
                raise InputError("input file must hold a JSON object")
        self.s = getattr(ns, "s", 0)
        self.deg_max = getattr(ns, "deg_max", 8)
        self.k_max = getattr(ns, "k_max", 4)
        self.prec = getattr(ns, "prec", DEFAULT_PRECISION)
        self.out = getattr(ns, "out", None)
        self.parallel = getattr(ns, "parallel", 1)
        if self.prec < 1:
            raise InputError("precision must be positive")
        if self.parallel < 1:
            raise InputError("--parallel must be at least 1")

    def field(self):
        """FieldSpec from --q or --p/--ext; --q takes a prime power."""
        ns = self.ns
        q = getattr(ns, "q", None)
        p = getattr(ns, "p", None)
        ext = getattr(ns, "ext", None)
        if q is not None:
            if p is not None or ext is not None:
                raise InputError("give either --q or --p/--ext, not both")
            base = _least_prime_factor(q)
            e = 0
            n = q
            while n % base == 0:
                n //= base
                e += 1
            if n != 1:
                raise InputError("q = %d is not a prime power" % q)
            return FieldSpec(base, e)
        if p is not None:
            return FieldSpec(p, ext if ext else 1)
        raise InputError("no constant field given; use --q or --p/--ext")


def _least_prime_factor(n):
    if n < 2:
        raise InputError("q must be at least 2")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_primes(cfg):
    spec = cfg.field()
    if cfg.deg_max < 1:
        raise InputError("--deg-max must be at least 1")
    primes = sorted(enumerate_monic_irreducibles(spec, cfg.deg_max),
                    key=PrimeIdeal.sort_key)
    report = {
        "q": spec.size,
        "deg_max": cfg.deg_max,
        "count": len(primes),
        "primes": [wp.generator.to_coeff_arrays() for wp in primes],
        "primes_pretty": [poly_string(wp.generator) for wp in primes],
    }
    emit(report, cfg.out)
    return 0


def _twist_request(cfg):
    """(label, spec, verification solution, model solution) for a request
    file; the two solutions coincide except in the hand-built torsion
    example, whose membership check lives over the formal character ring."""
    payload = cfg.payload
    if payload is None:
        raise InputError("twist needs a request file; use --in")
    perturb = payload.get("perturb")
    if perturb is not None and (
            not isinstance(perturb, list) or len(perturb) != 2
            or not all(isinstance(v, int) for v in perturb)):
        raise InputError('"perturb" must be a [row, column] pair')

    if "example" in payload:
        name = payload["example"]
        if name == "s3":
            s3 = s3_configuration()
            sol = average_solution(s3.rho, s3.act, s3.y)
            if perturb is not None:
                sol = _perturb_matrix(sol, perturb)
            return name, FieldSpec(5), sol, sol
        if name == "cyclotomic":
            torsion = torsion_character_configuration()
            ver, mod = torsion.verified, torsion.solution
            if perturb is not None:
                ver = _perturb_matrix(ver, perturb)
                mod = _perturb_flat(mod, perturb[1])
            return name, FieldSpec(2), ver, mod
        raise InputError("unknown example %r" % name)
    if "trivial" in payload:
        req = payload["trivial"]
        if not isinstance(req, dict) or "q" not in req or "entry" not in req:
            raise InputError('"trivial" needs {"q": ..., "entry": ...}')
        spec = FieldSpec(*_split_prime_power(req["q"]))
        tower = Tower(spec)
        entry = tower.embed_k(KElem(parse_poly(req["entry"], spec)))
        sol = trivial_solution(tower, entry)
        if perturb is not None:
            sol = _perturb_matrix(sol, perturb)
        return "trivial", spec, sol, sol
    raise InputError('request file needs "example" or "trivial"')


def _split_prime_power(q):
    if not isinstance(q, int):
        raise InputError("q must be an integer")
    base = _least_prime_factor(q)
    e = 0
    while q % base == 0:
        q //= base
        e += 1
    if q != 1:
        raise InputError("q is not a prime power")
    return base, e


def _perturb_matrix(sol, perturb):
    i, j = perturb
    if not (0 <= i < sol.n and 0 <= j < sol.d):
        raise InputError("perturb index out of range for a %dx%d solution"
                         % (sol.n, sol.d))
    entries = [list(row) for row in sol.entries]
    entries[i][j] = entries[i][j] + sol.tower.one
    return sol.with_entries(entries)


def _perturb_flat(sol, j):
    from .twist import FlatSolution
    if not (0 <= j < sol.N):
        raise InputError("perturb index out of range")
    flat = list(sol.flat)
    flat[j] = flat[j] + sol.tower.one
    return FlatSolution(sol.tower, flat)


def cmd_twist(cfg):
    label, spec, ver_sol, model_sol = _twist_request(cfg)
    base = carlitz(spec)
    report = {"request": label, "q": spec.size, "N": model_sol.N}

    failures = []
    sol_ok = verify_solution(ver_sol, failures)
    if not sol_ok:
        report.update({
            "checks": {"verify_solution": False, "verify_sep_isomorphism": None},
            "failing": ["verify_solution"],
            "failed_memberships": [{"word": list(w), "twist": ell}
                                   for (w, ell) in failures],
            "pass": False,
        })
        emit(report, cfg.out)
        return 1

    fv = f_vector(model_sol)
    phi_mat, psi = companion_matrices(fv)
    k_model = twist_model(base, psi)
    integral, cleared_by = clear_denominators(k_model)
    iso_ok = verify_sep_isomorphism(k_model, base, model_sol)

    checks = {"verify_solution": True, "verify_sep_isomorphism": iso_ok}
    report.update({
        "f_vector": [x.to_jsonable() for x in fv],
        "f_vector_pretty": [repr(x) for x in fv],
        "phi": mat_json(phi_mat),
        "phi_pretty": mat_pretty(phi_mat),
        "psi": mat_json(psi),
        "psi_pretty": mat_pretty(psi),
        "k_model": model_json(k_model),
        "k_model_pretty": model_pretty(k_model),
        "integral_model": model_json(integral),
        "integral_model_pretty": model_pretty(integral),
        "cleared_by": cleared_by.to_coeff_arrays(),
        "cleared_by_pretty": poly_string(cleared_by),
        "checks": checks,
        "failing": [name for name, ok in checks.items() if not ok],
        "pass": all(checks.values()),
    })
    emit(report, cfg.out)
    return 0 if report["pass"] else 1


def _module_from_payload(cfg):
    payload = cfg.payload
    if payload is None:
        raise InputError("lvalue needs a module file; use --in")
    if "example" in payload:
        name = payload["example"]
        if name == "s3":
            s3 = s3_configuration()
            sol = average_solution(s3.rho, s3.act, s3.y)
            spec = FieldSpec(5)
        elif name == "cyclotomic":
            sol = torsion_character_configuration().solution
            spec = FieldSpec(2)
        else:
            raise InputError("unknown example %r" % name)
        fv = f_vector(sol)
        _, psi = companion_matrices(fv)
        integral, _ = clear_denominators(twist_model(carlitz(spec), psi))
        return spec, integral
    if "coeffs" in payload:
        if "q" not in payload:
            raise InputError('module file needs "q"')
        spec = FieldSpec(*_split_prime_power(payload["q"]))
        coeffs = payload["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise InputError('"coeffs" must be a nonempty list of polynomials')
        parsed = tuple(KElem(parse_poly(c, spec)) for c in coeffs)
        return spec, DrinfeldModule(KDomain(spec), parsed)
    raise InputError('module file needs "example" or "coeffs"')


def cmd_lvalue(cfg):
    spec, module = _module_from_payload(cfg)
    ramified = tuple(parse_poly(f, spec) for f in cfg.payload.get("ramified", ()))
    dump = [] if cfg.payload.get("local_factors") else None
    value, bad = goss_L(module, cfg.s, cfg.deg_max, cfg.prec,
                        ramified=ramified, collect=dump)
    report = {
        "value": laurent_json(value),
        "s": cfg.s,
        "deg_max": cfg.deg_max,
        "excluded_primes": bad.to_jsonable(),
    }
    if dump is not None:
        report["local_factors"] = [{
            "prime": poly_string(wp.generator),
            "charpoly": record.to_jsonable(),
            "factor": laurent_json(factor),
        } for (wp, record, factor) in dump]
    emit(report, cfg.out)
    return 0


def cmd_logvalue(cfg):
    spec = cfg.field()
    f = parse_poly(getattr(cfg.ns, "f", None) or "1", spec)
    n = getattr(cfg.ns, "n", None) or 1
    tw = power_twist_module(f, n)
    exponent, gate = convergence_radius(tw)
    value = log_at_one(tw, cfg.k_max, cfg.prec)
    report = {
        "value": laurent_json(value),
        "q": spec.size,
        "n": n,
        "f": f.to_coeff_arrays(),
        "f_pretty": poly_string(f),
        "k_max": cfg.k_max,
        "prec": cfg.prec,
        "radius_exponent": [exponent.numerator, exponent.denominator],
        "inside_radius": gate,
    }
    emit(report, cfg.out)
    return 0


# the frozen constants the verify subcommand checks against; the integral
# models are written out entrywise exactly as displayed
def _expected_integral(name, f0, f1):
    spec = f0.num.field
    zero, one = KElem.zero(spec), KElem.one(spec)
    if name == "cyclotomic":
        return ((f1, one), (f0, zero)), f0.num
    return ((-f1 * f0 ** 3, f0 ** 3), (f0 ** 4, zero)), f0.num.monic()


def _verify_example(cfg, name):
    for flag in ("q", "n", "f"):
        if getattr(cfg.ns, flag, None) is not None:
            raise InputError("--%s does not apply to the %s example" % (flag, name))
    if name == "s3":
        s3 = s3_configuration()
        ver_sol = model_sol = average_solution(s3.rho, s3.act, s3.y)
        spec = FieldSpec(5)
        expected_fv = expected_f_vectors()["s3"]
    else:
        torsion = torsion_character_configuration()
        ver_sol, model_sol = torsion.verified, torsion.solution
        spec = FieldSpec(2)
        expected_fv = expected_f_vectors()["torsion"]
    base = carlitz(spec)

    sol_ok = verify_solution(ver_sol)
    fv = f_vector(model_sol)
    fv_ok = tuple(fv) == expected_fv
    _, psi = companion_matrices(fv)
    k_model = twist_model(base, psi)
    integral, cleared_by = clear_denominators(k_model)
    expected_tau, expected_c = _expected_integral(name, *expected_fv)
    th = KElem.theta(spec)
    zero = KElem.zero(spec)
    expected_theta = ((th, zero), (zero, th))
    model_ok = (integral.ore_t.degree == 1
                and integral.ore_t.coeff(0) == expected_theta
                and integral.ore_t.coeff(1) == expected_tau
                and cleared_by == expected_c)
    iso_ok = verify_sep_isomorphism(k_model, base, model_sol)

    checks = {
        "solution_verifies": sol_ok,
        "f_vector_matches": fv_ok,
        "integral_model_matches": model_ok,
        "sep_isomorphism_holds": iso_ok,
    }
    report = {
        "example": name,
        "q": spec.size,
        "expected_f_vector": [x.to_jsonable() for x in expected_fv],
        "expected_f_vector_pretty": [repr(x) for x in expected_fv],
        "computed_f_vector_pretty": [repr(x) for x in fv],
        "integral_model_pretty": model_pretty(integral),
        "checks": checks,
        "failing": [key for key, ok in checks.items() if not ok],
        "pass": all(checks.values()),
    }
    emit(report, cfg.out)
    return 0 if report["pass"] else 1


def _verify_power_residue(cfg):
    q = getattr(cfg.ns, "q", None)
    spec = FieldSpec(*_split_prime_power(q if q is not None else 3))
    n = getattr(cfg.ns, "n", None)
    n = 2 if n is None else n
    f = parse_poly(getattr(cfg.ns, "f", None) or "θ", spec)
    result = taelman_check(f, n, deg_max=cfg.deg_max, k_max=cfg.k_max,
                           prec=cfg.prec)
    body = result.to_jsonable()
    report = {
        "example": "power-residue",
        "q": spec.size,
        "n": n,
        "f": f.to_coeff_arrays(),
        "f_pretty": poly_string(f),
        "euler": laurent_json(result.euler),
        "dirichlet": laurent_json(result.dirichlet),
        "log": laurent_json(result.log_value),
        "disc_euler_dirichlet": body["disc_euler_dirichlet"],
        "disc_euler_log": body["disc_euler_log"],
        "disc_dirichlet_log": body["disc_dirichlet_log"],
        "deg_max": cfg.deg_max,
        "k_max": cfg.k_max,
        "prec": cfg.prec,
        "pass": body["pass"],
    }
    emit(report, cfg.out)
    return 0 if report["pass"] else 1


def cmd_verify(cfg):
    name = cfg.ns.example
    if name in ("s3", "cyclotomic"):
        return _verify_example(cfg, name)
    return _verify_power_residue(cfg)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="artifact",
        description="exact twisted-module arithmetic, L-values, and "
                    "reproduction checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, s=False, field=False, nf=False):
        p.add_argument("--deg-max", dest="deg_max", type=int, default=8)
        p.add_argument("--k-max", dest="k_max", type=int, default=4)
        p.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
        p.add_argument("--in", dest="in_path", default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--parallel", type=int, default=1)
        if s:
            p.add_argument("--s", type=int, default=0)
        if field:
            p.add_argument("--q", type=int, default=None)
            p.add_argument("--p", type=int, default=None)
            p.add_argument("--ext", type=int, default=None)
        if nf:
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--f", default=None)

    p = sub.add_parser("primes", help="enumerate monic irreducibles")
    common(p, field=True)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("twist", help="build and verify a twist model")
    common(p)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("lvalue", help="truncated Goss L-value of a module")
    common(p, s=True)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("logvalue", help="partial logarithm of a power twist at 1")
    common(p, field=True, nf=True)
    p.set_defaults(func=cmd_logvalue)

    p = sub.add_parser("verify", help="reproduce a built-in example")
    p.add_argument("example", choices=["s3", "cyclotomic", "power-residue"])
    common(p, field=True, nf=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = RunConfig(ns)
        return ns.func(cfg)
    except (ConvergenceError, RadiusError) as exc:
        if ns.command in ("lvalue", "logvalue"):
            emit_error(exc)
            return 3
        emit_error(exc)
        return 2
    except (Error, ValueError, KeyError, TypeError, AttributeError,
            ZeroDivisionError) as exc:
        emit_error(exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
