"""Command-line front end: JSON in, canonical JSON out.

Exit codes: 0 success, 2 assertion failure, 3 precision error,
4 budget exceeded, 5 schema error.
"""
from __future__ import annotations

import argparse
import copy
import random
import sys

from . import adlv as adlv_mod
from .errors import (BudgetExceededError, NeronModelError, NotEtaleError,
                     NotInvertibleError, NotQuasiIsogenyError, PrecisionError)
from .io import SchemaError, canonical_json, load_input, validate
from .newton import check_decency, decency_index, kottwitz_gl, newton_slopes
from .oracle import brute_force_adlv
from .rings import ring_descriptor, ring_from_descriptor
from .sampling import random_dual_instance
from .semilinear import (BoundSpec, Coweight, LoopElement, bounded_by,
                         relative_position_from_minors, smith_form)
from .series import Series
from .shtuka import (LocalShtuka, extension_ring, is_quasi_isogeny,
                     lang_trivialize, lift_qisog_dual_numbers, lift_uniqueness_dimension,
                     restrict, tate_module)
from .torus import verify_norm_identities

EXIT_OK, EXIT_ASSERT, EXIT_PRECISION, EXIT_BUDGET, EXIT_SCHEMA = 0, 2, 3, 4, 5


class CheckFailed(Exception):
    pass


def parse_matrix(ring, rows, prec: int) -> LoopElement:
    out = []
    for row in rows:
        new = []
        for e in row:
            e = dict(e)
            e.setdefault("prec", prec)
            new.append(Series.from_json(ring, e).truncate(prec))
        out.append(new)
    return LoopElement(out)


def _shtuka(desc: dict) -> LocalShtuka:
    L = LocalShtuka.from_descriptor(desc)
    if "rank" in desc and desc["rank"] != L.rank:
        raise SchemaError("declared rank does not match b")
    return L


def _mu_json(mu: Coweight) -> list:
    return list(mu.parts)


# --- commands ---

def cmd_hodge(desc, args):
    ring = ring_from_descriptor(desc)
    g = parse_matrix(ring, desc.get("g", desc.get("b")), desc["prec"])
    report = {}
    base = g if ring.kind == "finite-field" else g.reduce()
    U, mu, V = smith_form(base)
    report["mu"] = _mu_json(mu)
    D = LoopElement.diagonal(base.ring, mu.parts, base.prec + 64)
    report["reconstructs"] = (U * D * V).agrees(base)
    if "mu" in desc:
        zeta = ring.from_json(desc["zeta"]) if "zeta" in desc else None
        bound = BoundSpec(Coweight(tuple(desc["mu"])), desc.get("relation", "leq"), zeta)
        report["bounded"] = bounded_by(g, bound)
    if args.oracle:
        om = relative_position_from_minors(base)
        report["oracle"] = {"mu": _mu_json(om), "match": om == mu}
        if om != mu:
            raise CheckFailed(report)
    if not report["reconstructs"]:
        raise CheckFailed(report)
    return report


def cmd_newton(desc, args):
    L = _shtuka(desc)
    budget = args.budget or 16
    slopes = newton_slopes(L.b, budget)
    return {"slopes": slopes.to_json(), "kottwitz": kottwitz_gl(L.b),
            "decent_s": decency_index(L.b, budget, slopes)}


def cmd_decency(desc, args):
    L = _shtuka(desc)
    budget = args.budget or 16
    slopes = newton_slopes(L.b, budget)
    return {"s": desc["s"], "decent": check_decency(L.b, desc["s"], slopes),
            "slopes": slopes.to_json()}


def cmd_lang(desc, args):
    L = _shtuka(desc)
    d, c = lang_trivialize(L, args.max_ext or 24)
    b = L.b.change_ring(c.ring)
    report = {"d": d, "c": c.to_json(), "ext_ring": ring_descriptor(c.ring),
              "verified": c.agrees(b * c.frobenius()) and c.is_integrally_invertible()}
    if not report["verified"]:
        raise CheckFailed(report)
    return report


def cmd_tate(desc, args):
    L = _shtuka(desc)
    T = tate_module(L, args.max_ext or 24)
    checks = {"invariant": T.invariant_under(L), "free": T.is_free(),
              "galois_integral": T.galois_is_integral()}
    report = {"ext_degree": T.ext_degree, "basis": T.basis.to_json(),
              "galois": T.galois.to_json(), "ext_ring": ring_descriptor(T.basis.ring),
              "checks": checks}
    if not all(checks.values()):
        raise CheckFailed(report)
    return report


def cmd_qisog(desc, args):
    L = _shtuka(desc["source"])
    L2 = _shtuka(desc["target"])
    if L.ring != L2.ring:
        raise SchemaError("source and target live over different rings")
    f = parse_matrix(L.ring, desc["f"], min(L.prec, L2.prec))
    ok = is_quasi_isogeny(f, L, L2)
    report = {"is_quasi_isogeny": ok}
    if not ok:
        raise CheckFailed(report)
    return report


def _rigidity_check(L, L2, fbar):
    f = lift_qisog_dual_numbers(fbar, L, L2)
    return f, {"intertwines": is_quasi_isogeny(f, L, L2),
               "reduces": restrict(f).agrees(fbar),
               "uniqueness_dim": lift_uniqueness_dimension(L)}


def cmd_rigidity(desc, args):
    desc = desc or {}
    if "fbar" in desc:
        L = _shtuka(desc["source"])
        L2 = _shtuka(desc["target"])
        fbar = parse_matrix(L.ring.residue_ring, desc["fbar"], min(L.prec, L2.prec))
        f, checks = _rigidity_check(L, L2, fbar)
        report = {"f": f.to_json(), "checks": checks}
        if not (checks["intertwines"] and checks["reduces"] and checks["uniqueness_dim"] == 0):
            raise CheckFailed(report)
        return report
    q = desc.get("q", 3)
    ring = ring_from_descriptor({"q": q, "ext": desc.get("ext", 1), "ring": "dual-numbers"})
    r = desc.get("rank", 2)
    prec = args.prec or desc.get("prec", 8)
    n = desc.get("samples", 20)
    rng = random.Random(desc.get("seed", 0))
    passed = 0
    for _ in range(n):
        L, L2, f = random_dual_instance(ring, r, prec, rng)
        lifted, checks = _rigidity_check(L, L2, restrict(f))
        if (checks["intertwines"] and checks["reduces"] and checks["uniqueness_dim"] == 0
                and lifted.agrees(f)):
            passed += 1
    report = {"samples": n, "passed": passed, "ring": ring_descriptor(ring), "rank": r,
              "prec": prec}
    if passed != n:
        raise CheckFailed(report)
    return report


def _adlv_inputs(desc):
    if "shtuka" in desc:
        base = dict(desc["shtuka"])
        d = desc.get("ext", 1)
    else:
        base = {k: v for k, v in desc.items()
                if k not in ("mu", "relation", "window", "ext", "base_ext")}
        base["ext"] = desc.get("base_ext", 1)
        d = desc.get("ext", 1)
    return base, d


def cmd_adlv(desc, args):
    base, d = _adlv_inputs(desc)
    L = _shtuka(base)
    m = L.ring.spec.d // L.ring.base_degree
    if d % m:
        raise SchemaError(f"point field degree {d} is not a multiple of the base degree {m}")
    ring = extension_ring(L.ring, d)
    bound = BoundSpec(Coweight(tuple(desc["mu"])), desc.get("relation", "leq"))
    window = args.window if args.window is not None else desc.get("window")
    res = adlv_mod.adlv_points(L.b, bound, ring, window, args.shards or 1)
    report = res.to_json(listing=args.list)
    report["ring"] = ring_descriptor(ring)
    if args.oracle:
        oc = len(brute_force_adlv(L.b, bound, ring, res.window))
        report["oracle_count"] = oc
        report["oracle_match"] = oc == res.count
        if oc != res.count:
            raise CheckFailed(report)
    return report


def cmd_metric(desc, args):
    ring = ring_from_descriptor(desc)
    x = parse_matrix(ring, desc["x"], desc["prec"])
    y = parse_matrix(ring, desc["y"], desc["prec"])
    n = adlv_mod.metric_dtilde(x, y)
    report = {"dtilde": n if n != float("inf") else "inf"}
    if args.oracle and n != float("inf"):
        r = x.rank
        z = x.inverse() * y
        m = next(k for k in range(n + 1)
                 if bounded_by(z, BoundSpec(Coweight.metric_bound(r, k))))
        report["oracle"] = {"dtilde": m, "match": m == n}
        if m != n:
            raise CheckFailed(report)
    if "d0" in desc:
        window = args.window if args.window is not None else desc.get("window", 1)
        pts = adlv_mod.enumerate_lattices(x.rank, ring, window)
        prec = desc["prec"]
        inside = adlv_mod.ball(pts, y, desc["d0"], prec)
        report["ball"] = {"d0": desc["d0"], "window": window, "count": len(inside),
                          "candidates": len(pts)}
        if args.list:
            report["ball"]["points"] = [p.to_json() for p in inside]
    return report


def cmd_torus(desc, args):
    p, d = args.p, args.d
    xi, prec = args.xi_order, args.prec or 16
    checks = verify_norm_identities(p, d, xi, prec)
    out = []
    for c in checks:
        entry = {"name": c.name, "result": "PASS" if c.passed else "FAIL"}
        if c.lhs is not None:
            entry["lhs"] = c.lhs.to_json()
            entry["rhs"] = c.rhs.to_json()
            print(f"{c.name}:\n  lhs = {c.lhs!r}\n  rhs = {c.rhs!r}", file=sys.stderr)
        print(f"{entry['result']}  {c.name}", file=sys.stderr)
        out.append(entry)
    report = {"p": p, "d": d, "xi_order": xi, "prec": prec, "checks": out}
    if not all(c.passed for c in checks):
        raise CheckFailed(report)
    return report


COMMANDS = {
    "hodge": cmd_hodge, "newton": cmd_newton, "decency": cmd_decency, "tate": cmd_tate,
    "lang": cmd_lang, "qisog-check": cmd_qisog, "rigidity-demo": cmd_rigidity,
    "adlv": cmd_adlv, "metric": cmd_metric, "torus-demo": cmd_torus,
}

NEEDS_INPUT = {"hodge", "newton", "decency", "tate", "lang", "qisog-check", "adlv", "metric"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="descriptor path or inline JSON")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--prec", type=int, help="override the descriptor precision")
    common.add_argument("--window", type=int, help="lattice window a")
    common.add_argument("--budget", type=int, help="Newton iteration budget")
    common.add_argument("--max-ext", type=int, dest="max_ext", help="largest extension degree")
    common.add_argument("--shards", type=int, help="enumeration shards")
    common.add_argument("--oracle", action="store_true", help="cross-check with the oracle")
    common.add_argument("--list", action="store_true", help="list points")
    parser = argparse.ArgumentParser(prog="localshtuka", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "torus-demo":
            sp.add_argument("--p", type=int, default=3)
            sp.add_argument("--d", type=int, default=1)
            sp.add_argument("--xi-order", type=int, dest="xi_order", default=8)
    return parser


def _resolve(args, desc):
    if desc is not None and args.prec is not None:
        desc = copy.deepcopy(desc)
        for part in (desc, desc.get("shtuka"), desc.get("source"), desc.get("target")):
            if isinstance(part, dict) and "prec" in part:
                part["prec"] = args.prec
    flags = {k: getattr(args, k) for k in
             ("prec", "window", "budget", "max_ext", "shards", "oracle", "list")}
    if args.command == "torus-demo":
        flags.update(p=args.p, d=args.d, xi_order=args.xi_order)
    return desc, {"command": args.command, "input": desc, "flags": flags}


def _execute(args):
    config = {"command": args.command}
    try:
        desc = load_input(args.input)
        if desc is None and args.command in NEEDS_INPUT:
            raise SchemaError("--input is required")
        desc, config = _resolve(args, desc)
        if desc is not None:
            validate(args.command, desc)
        report = COMMANDS[args.command](desc, args)
        status = EXIT_OK
    except CheckFailed as e:
        report, status = dict(e.args[0]), EXIT_ASSERT
        report["error"] = {"code": "assertion", "message": "a verification check failed"}
    except PrecisionError as e:
        report, status = {"error": {"code": "precision", "message": str(e)}}, EXIT_PRECISION
    except (BudgetExceededError, adlv_mod.WindowTooLargeError) as e:
        report, status = {"error": {"code": "budget", "message": str(e)}}, EXIT_BUDGET
    except (NotEtaleError, NotQuasiIsogenyError, NeronModelError, NotInvertibleError) as e:
        report, status = {"error": {"code": e.code, "message": str(e)}}, EXIT_ASSERT
    except (SchemaError, KeyError, ValueError, TypeError, OSError) as e:
        report, status = {"error": {"code": "schema", "message": str(e)}}, EXIT_SCHEMA
    report["config"] = config
    return status, report


def run(argv=None) -> tuple[int, dict]:
    """Execute one job; returns (exit status, report)."""
    return _execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    status, report = _execute(args)
    text = canonical_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
