"""Command-line front end.  Every command prints a JSON run record; ``--out``
also writes it to a file.  Exit status is 0 on success, 1 when a claim is
refuted or a reproduction fails, and 2 on usage or runtime errors."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__

log = logging.getLogger("skein")

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2
DEFAULT_SEED = 0


class UsageError(ValueError):
    pass


# serialisation ---------------------------------------------------------------------

def jsonable(x: Any) -> Any:
    """Exact values become strings; containers are converted recursively."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return float(f"{x:.6g}")
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def run_record(command: str, parameters: dict, seed: int, runtime: float, result: Any) -> dict:
    return {"command": command, "parameters": jsonable(parameters), "seed": seed,
            "runtime": round(runtime, 3), "result": jsonable(result), "version": __version__}


def load_record(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


# parameter parsing -------------------------------------------------------------------

def parse_params(text: str | None) -> dict[str, Fraction]:
    """``"d=2,t=-1/2"`` to exact values; an empty string gives symbolic parameters."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"parameters look like name=value, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except ValueError as e:
            raise UsageError(f"parameter {name.strip()!r} is not a rational number") from e
    return out


def relation_set(name: str, params: dict[str, Fraction]):
    from . import evaluate as ev
    known = {
        "generic_cubic": ("d", "t"), "so3": ("d",), "chromatic": ("n",), "g2": ("q",),
        "twisted_cubic": ("d",),
    }
    if name not in known:
        raise UsageError(f"unknown relation set {name!r}; choose from {sorted(known)}")
    extra = set(params) - set(known[name])
    if extra:
        raise UsageError(f"{name} takes parameters {known[name]}, got {sorted(extra)}")
    if name == "generic_cubic":
        if params and set(params) != {"d", "t"}:
            raise UsageError("generic_cubic needs both d and t, or neither")
        return ev.generic_cubic(params.get("d"), params.get("t"))
    if name == "so3":
        return ev.so3(params.get("d"))
    if name == "chromatic":
        n = params.get("n")
        if n is None or n.denominator != 1:
            raise UsageError("chromatic needs an integer n")
        return ev.chromatic(int(n))
    if name == "g2":
        return ev.g2(params.get("q"))
    return ev.twisted_cubic(params.get("d"))


def _read_diagrams(path: str):
    from .diagram import parse_diagrams
    return parse_diagrams(Path(path).read_text())


NAMED_DIAGRAMS = ("theta", "tetrahedron", "cube", "dodecahedron", "prism5", "prism6", "loop")


def named_diagram(name: str):
    from . import diagram as dg
    table = {"theta": dg.theta, "tetrahedron": dg.tetrahedron, "cube": dg.cube,
             "dodecahedron": dg.dodecahedron, "prism5": lambda: dg.prism(5),
             "prism6": lambda: dg.prism(6), "loop": dg.loop}
    if name not in table:
        raise UsageError(f"unknown diagram {name!r}; choose from {sorted(table)}")
    return table[name]()


def _basis(args):
    from .gram import basis_diagrams
    if args.basis:
        return _read_diagrams(args.basis)
    _need(args, "n", "k")
    return basis_diagrams(args.n, args.k, args.variant)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")


def _gram(args):
    from .gram import gram_matrix
    rel = relation_set(args.relations, parse_params(args.params))
    return gram_matrix(_basis(args), rel, pairing=args.pairing, offset=args.offset)


def _factor_list(text: str, db) -> list[tuple[str, Any, int]]:
    """``"d:34,Q_1_1:-8,t^2-t-1:9"``: curve names or literal polynomials with exponents."""
    from .algebra.poly import parse_poly
    out = []
    for item in text.split(","):
        name, sep, exp = item.rpartition(":")
        if not sep:
            raise UsageError(f"factors look like name:exponent, got {item!r}")
        name = name.strip()
        poly = db[name] if name in db else parse_poly(name)
        out.append((name, poly, int(exp)))
    return out


# commands ----------------------------------------------------------------------------

def cmd_enumerate(args):
    from .enumerate import brute_basis, enumerate_basis
    _need(args, "n", "k")
    if args.method == "brute":
        ds = brute_basis(args.n, args.k, args.variant)
    else:
        ds = list(enumerate_basis(args.n, args.k, args.variant))
    return EXIT_OK, {"count": len(ds), "records": [d.to_text() for d in ds]}


def cmd_eval(args):
    from .evaluate import Evaluator
    if bool(args.diagram) == bool(args.file):
        raise UsageError("give exactly one of --diagram or --file")
    dgs = [named_diagram(args.diagram)] if args.diagram else _read_diagrams(args.file)
    rel = relation_set(args.relations, parse_params(args.params))
    ev = Evaluator(rel)
    return EXIT_OK, {"values": [str(ev.evaluate(d)) for d in dgs]}


def cmd_gram(args):
    m = _gram(args)
    return EXIT_OK, {"size": m.size, "meta": m.meta, "entries": [[str(x) for x in r] for r in m.entries]}


def cmd_det(args):
    from .gram import det_exact, det_modular, det_twisted
    m = _gram(args)
    method = args.method or "exact"
    if method == "exact":
        if m.size and args.relations == "twisted_cubic" and not args.params:
            rep = det_twisted(m, seed=args.seed)
            return EXIT_OK, {"size": m.size, "value": str(rep.value),
                             "omega_power": rep.details["omega_power"]}
        rep = det_exact(m, seed=args.seed)
        return EXIT_OK, {"size": m.size, "value": str(rep.value)}
    if method == "modular":
        _need(args, "prime")
        values = {k: int(v) for k, v in parse_params(args.residues).items()}
        return EXIT_OK, {"size": m.size, "prime": args.prime,
                         "value": det_modular(m, args.prime, values)}
    raise UsageError(f"det methods are exact and modular, got {method!r}")


def cmd_kernel(args):
    from .gram import kernel_at_point
    m = _gram(args)
    ker = kernel_at_point(m)
    return EXIT_OK, {"size": m.size, "dimension": len(ker),
                     "vectors": [[str(lc.coefficient(b)) for b in m.basis] for lc in ker]}


def cmd_rank(args):
    from .gram import rank_mod_prime
    _need(args, "prime")
    m = _gram(args)
    values = {k: int(v) for k, v in parse_params(args.residues).items()}
    return EXIT_OK, {"size": m.size, "prime": args.prime, "residues": values,
                     "rank": rank_mod_prime(m, args.prime, values)}


def cmd_verify(args):
    from .analysis import CurveDatabase
    from .gram import verify_factorization, verify_multiplicities
    _need(args, "factors")
    db = CurveDatabase.load(args.poly_dir)
    m = _gram(args)
    factors = _factor_list(args.factors, db)
    if args.method in (None, "factorization"):
        const = Fraction(args.constant)
        if const.denominator != 1:
            raise UsageError("the constant must be an integer")
        rep = verify_factorization(m, [(f, e) for _, f, e in factors], trials=args.trials,
                                   constant=int(const), seed=args.seed)
    elif args.method == "multiplicities":
        rep = verify_multiplicities(m, {n: (f, e) for n, f, e in factors}, trials=args.trials,
                                    seed=args.seed)
    else:
        raise UsageError(f"verify methods are factorization and multiplicities, got {args.method!r}")
    result = {"method": rep.method, "trials": rep.details.get("trials"),
              "confidence": str(rep.confidence), "refuted": rep.details.get("refuted")}
    return (EXIT_OK if rep.ok else EXIT_REFUTED), result


def cmd_guess(args):
    from .gram import guess_determinant
    primes = [int(p) for p in (args.primes or "101,103,107").split(",")]
    m = _gram(args)
    rep = guess_determinant(m, primes)
    if not rep.ok:
        return EXIT_REFUTED, {"refuted": rep.details["refuted"]}
    return EXIT_OK, {"constant": str(rep.value), "low_confidence": rep.details["low_confidence"],
                     "factors": [[str(f), e] for f, e in rep.factors]}


def cmd_idempotents(args):
    from .algebra.ratfunc import RatFunc
    from .analysis import idempotents
    from .evaluate import ExcludedParameters
    params = parse_params(args.params)
    if params and set(params) != {"d", "t"}:
        raise UsageError("idempotents take both d and t, or neither")
    d, t = (params["d"], params["t"]) if params else RatFunc.gens()
    q = idempotents(d, t)
    out = {"xi_squared": str(q.field.modulus[0] * -1), "checks": q.checks,
           "elements": {k: [str(c) for c in v] for k, v in q.elements.items()},
           "traces": {k: str(v) for k, v in q.traces.items()}}
    if params:
        try:
            out["numeric_image_traces"] = {k: f"{v.real:.6g}" if abs(v.imag) < 1e-12 else f"{v:.6g}"
                                           for k, v in q.numeric_traces().items()}
        except (TypeError, ValueError, ExcludedParameters):
            pass
    return (EXIT_OK if all(q.checks.values()) else EXIT_REFUTED), out


def cmd_braid_check(args):
    from .analysis import (braiding_check, crossing_squared_is_identity, g2_crossing, s3_crossing,
                           so3_crossing, so3_params)
    from .evaluate import g2, so3
    params = parse_params(args.params)
    q = params.get("q")
    if args.crossing == "so3":
        c, rel = so3_crossing(q), so3(so3_params(q)[0])
    elif args.crossing == "s3":
        c, rel = s3_crossing(), so3(Fraction(2))
    elif args.crossing == "g2":
        c, rel = g2_crossing(q), g2(q)
    else:
        raise UsageError("crossings are so3, s3 and g2")
    rep = braiding_check(c, rel)
    out = {k: rep[k] for k in ("R2", "pull_through_1", "pull_through_2")}
    out["squares_to_identity"] = crossing_squared_is_identity(c, rel)
    ok = all(out[k] for k in ("R2", "pull_through_1", "pull_through_2"))
    return (EXIT_OK if ok else EXIT_REFUTED), out


def cmd_intersect(args):
    from .algebra.poly import parse_poly
    from .analysis import CommonComponent, CurveDatabase, intersect_curves
    if not args.curves or len(args.curves) != 2:
        raise UsageError("intersect takes two curves")
    db = CurveDatabase.load(args.poly_dir)

    def curve(text):
        out = None
        for part in text.split("*") if all(p.strip() in db for p in text.split("*")) else [text]:
            p = db[part.strip()] if part.strip() in db else parse_poly(part)
            out = p if out is None else out * p
        return out

    try:
        pts = intersect_curves(curve(args.curves[0]), curve(args.curves[1]))
    except CommonComponent as e:
        return EXIT_OK, {"common_component": str(e)}
    return EXIT_OK, {"points": [p.describe() for p in pts]}


def cmd_aba_dim(args):
    from .analysis import aba_dimension, generating_function_identity
    n = 7 if args.n is None else args.n
    return EXIT_OK, {"dimensions": [aba_dimension(i) for i in range(n + 1)],
                     "generating_function_identity": generating_function_identity(max(n + 1, 13))}


def _run_fact(fact_id: str, seed: int, trials: int, poly_dir: str | None) -> list[dict]:
    from .reproduce import Options, reproduce
    return [o.as_dict() for o in reproduce(fact_id, Options(seed, trials, poly_dir))]


def cmd_reproduce(args):
    from .reproduce import FACTS, criteria, fact_ids
    if args.list or not args.fact:
        return EXIT_OK, {"facts": {k: {"criterion": f.criterion, "title": f.title}
                                   for k, f in FACTS.items()},
                         "criteria": criteria()}
    if args.fact == "all":
        ids = [i for c in criteria().values() for i in c]
    elif args.fact.startswith("criterion-"):
        ids = criteria().get(int(args.fact.split("-", 1)[1]) if args.fact[10:].isdigit() else -1)
        if not ids:
            raise UsageError(f"unknown criterion {args.fact!r}")
    elif args.fact in FACTS:
        ids = [args.fact]
    else:
        raise UsageError(f"unknown fact {args.fact!r}; known: {', '.join(fact_ids())}")
    jobs = min(args.jobs or os.cpu_count() or 1, len(ids))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            futures = [pool.submit(_run_fact, i, args.seed, args.trials, args.poly_dir) for i in ids]
            outcomes = [o for f in futures for o in f.result()]
    else:
        outcomes = [o for i in ids for o in _run_fact(i, args.seed, args.trials, args.poly_dir)]
    for o in outcomes:
        print(f"{o['fact']}: {o['summary']}", file=sys.stderr)
        print("PASS" if o["passed"] else "FAIL", file=sys.stderr)
    ok = all(o["passed"] for o in outcomes)
    return (EXIT_OK if ok else EXIT_REFUTED), {"outcomes": outcomes, "passed": ok}


COMMANDS = {
    "enumerate": cmd_enumerate, "eval": cmd_eval, "gram": cmd_gram, "det": cmd_det,
    "kernel": cmd_kernel, "rank": cmd_rank, "verify": cmd_verify, "guess": cmd_guess,
    "idempotents": cmd_idempotents, "braid-check": cmd_braid_check, "intersect": cmd_intersect,
    "aba-dim": cmd_aba_dim, "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--variant", default="plain", choices=("plain", "square"))
    common.add_argument("--relations", default="generic_cubic")
    common.add_argument("--params", default="", help="exact values, e.g. d=2,t=0")
    common.add_argument("--method")
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--out", help="also write the run record here")
    common.add_argument("--poly-dir", dest="poly_dir", help="directory of extra curve polynomials")
    common.add_argument("--basis", help="file of diagram records overriding --n/--k")
    common.add_argument("--pairing", choices=("mirror", "sphere"))
    common.add_argument("--offset", type=int, help="boundary offset of the sphere pairing")
    common.add_argument("--prime", type=int)
    common.add_argument("--residues", default="", help="residues for modular work, e.g. d=1,w=1")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="skein", description=__doc__.split(".")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="list D(n,k) or D□(n,k)")
    p = sub.add_parser("eval", parents=[common], help="evaluate closed diagrams")
    p.add_argument("--diagram", choices=NAMED_DIAGRAMS)
    p.add_argument("--file")
    sub.add_parser("gram", parents=[common], help="Gram matrix entries")
    sub.add_parser("det", parents=[common], help="Gram determinant")
    sub.add_parser("kernel", parents=[common], help="kernel at a point")
    sub.add_parser("rank", parents=[common], help="rank modulo a prime")
    p = sub.add_parser("verify", parents=[common], help="randomised factorisation check")
    p.add_argument("--factors", help="e.g. d:34,Q_1_1:-8")
    p.add_argument("--constant", default="1")
    p = sub.add_parser("guess", parents=[common], help="guess a factorisation from integer slices")
    p.add_argument("--primes")
    sub.add_parser("idempotents", parents=[common], help="minimal idempotents of the 4-point algebra")
    p = sub.add_parser("braid-check", parents=[common], help="braiding axioms for a crossing")
    p.add_argument("--crossing", default="so3", choices=("so3", "s3", "g2"))
    p = sub.add_parser("intersect", parents=[common], help="intersect two curves")
    p.add_argument("curves", nargs="*")
    sub.add_parser("aba-dim", parents=[common], help="ABA invariant-space dimensions")
    p = sub.add_parser("reproduce", parents=[common], help="reproduce a fact or a criterion")
    p.add_argument("fact", nargs="?")
    p.add_argument("--list", action="store_true")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, dict | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.info("seed %d", args.seed)
    parameters = {k: v for k, v in vars(args).items() if k not in ("command", "out", "verbose")}
    start = time.time()
    try:
        status, result = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"skein {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR, None
    except Exception as e:  # noqa: BLE001 - reported as a runtime error with its type
        print(f"skein {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR, None
    record = run_record(args.command, parameters, args.seed, time.time() - start, result)
    text = json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return status, record


def main(argv: Sequence[str] | None = None) -> int:
    status, _ = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
