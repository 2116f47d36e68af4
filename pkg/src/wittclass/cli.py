"""Command-line interface: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 failed check or unrealizable target, 2 malformed
input, 3 matrix with determinant other than 1, 4 relator violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .qforms import FormError, as_place, hilbert_symbol
from .realize import RealizeError, realize_full
from .selftest import SUITES, run_suites
from .sl2 import MatrixError
from .surface import (
    BoundedSurfaceRep,
    RelatorError,
    RepFormatError,
    evaluate_closed,
    evaluate_closed_delta,
    load_rep,
    relative_class,
)
from .witt import LaurentForm, WittClass, laurent_anisotropic_dim

EXIT_CHECK, EXIT_INPUT, EXIT_DET, EXIT_RELATOR = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind, self.code = kind, code


def invariants(q: WittClass) -> dict:
    return {
        "form": str(q),
        "dim": q.norm,
        "norm": q.norm,
        "signature": q.signature,
        "discriminant": q.discriminant,
        "hasse": {("inf" if p is None else str(p)): q.hasse(p) for p in q.places()},
        "in_I2": q.in_I2(),
    }


def _report(command: str, inputs: dict, outputs: dict, checks: list[tuple[str, bool]]) -> dict:
    return {"command": command, "inputs": inputs, "outputs": outputs,
            "checks": [{"name": n, "pass": bool(ok)} for n, ok in checks]}


def cmd_eval(path: str) -> dict:
    try:
        rep = load_rep(path)
    except OSError as exc:
        raise CliError("io_error", str(exc), EXIT_INPUT) from exc
    except RepFormatError as exc:
        raise CliError("parse_error", str(exc), EXIT_INPUT) from exc
    except MatrixError as exc:
        raise CliError("determinant_error", str(exc), EXIT_DET) from exc
    except RelatorError as exc:
        raise CliError("relator_error", str(exc), EXIT_RELATOR) from exc
    inputs = {"file": path, "genus": rep.genus}
    if isinstance(rep, BoundedSurfaceRep):
        c = relative_class(rep)
        return _report("eval", {**inputs, "kind": "bounded"},
                       {"relative_class": invariants(c), "boundary": rep.boundary.to_json()},
                       [("relator", True)])
    c = evaluate_closed(rep)
    d = evaluate_closed_delta(rep)
    checks = [("relator", True), ("lift_equals_triangulation", c == d),
              ("in_I2", c.in_I2()), ("norm_bound", c.norm <= 4 * rep.genus - 2)]
    return _report("eval", {**inputs, "kind": "closed"}, {"class": invariants(c)}, checks)


def _parse_form(text: str) -> WittClass:
    try:
        return WittClass.parse(text)
    except FormError as exc:
        raise CliError("parse_error", str(exc), EXIT_INPUT) from exc


def cmd_realize(form: str, genus: int, out: str) -> dict:
    q = _parse_form(form)
    if genus < 2:
        raise CliError("bad_genus", "genus must be at least 2", EXIT_INPUT)
    if not q.in_I2():
        raise CliError("not_in_I2", f"class {q} is not in I^2(Q) (discriminant {q.discriminant})", EXIT_CHECK)
    if q.norm > 4 * (genus - 1):
        raise CliError("norm_too_large",
                       f"norm {q.norm} exceeds the bound 4(g-1) = {4 * (genus - 1)} for genus {genus}",
                       EXIT_CHECK)
    try:
        res = realize_full(q, genus)
    except RealizeError as exc:
        raise CliError("realize_failed", str(exc), EXIT_CHECK) from exc
    cert = res.certificate()
    data = res.rep.to_json()
    data["certificate"] = cert
    try:
        with open(out, "w") as fh:
            json.dump(data, fh, indent=1)
    except OSError as exc:
        raise CliError("io_error", str(exc), EXIT_INPUT) from exc
    return _report("realize", {"form": form, "genus": genus},
                   {"file": out, "certificate": cert, "lambda_log": cert["lambda_log"]},
                   [("round_trip", res.match)])


def cmd_norm(form: str, laurent: bool) -> dict:
    inputs = {"form": form, "laurent": laurent}
    if laurent:
        try:
            f = LaurentForm.parse(form)
        except FormError as exc:
            raise CliError("parse_error", str(exc), EXIT_INPUT) from exc
        q1, q2 = f.residue_forms()
        c1, c2 = WittClass.from_form(q1), WittClass.from_form(q2)
        return _report("norm", inputs, {
            "norm": laurent_anisotropic_dim(f),
            "residue_forms": [invariants(c1), invariants(c2)],
            "in_I2": f.in_I2(),
        }, [])
    q = _parse_form(form)
    return _report("norm", inputs, {"norm": q.norm, **invariants(q)}, [])


def cmd_hilbert(a: str, b: str, place: str) -> dict:
    try:
        v = as_place(place)
        val = hilbert_symbol(a, b, v)
    except FormError as exc:
        raise CliError("bad_input", str(exc), EXIT_INPUT) from exc
    return _report("hilbert", {"a": a, "b": b, "place": str(v)}, {"value": val}, [])


def cmd_selftest(iters: int, seed: int, height: int) -> dict:
    if iters < 1:
        raise CliError("bad_iters", "iters must be at least 1", EXIT_INPUT)
    results = run_suites(iters, seed, height)
    return _report("selftest", {"iters": iters, "seed": seed, "height": height},
                   {"suites": {r.name: r.to_json() for r in results}},
                   [(r.name, r.ok) for r in results])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wittclass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="Witt class of a representation file")
    e.add_argument("file")

    r = sub.add_parser("realize", help="build a closed representation with a given class")
    r.add_argument("--form", required=True, help='diagonal form, e.g. "1,1,1,1"')
    r.add_argument("--genus", type=int, required=True)
    r.add_argument("-o", "--out", required=True)

    n = sub.add_parser("norm", help="norm (anisotropic dimension) of a form")
    n.add_argument("--form", required=True)
    n.add_argument("--laurent", action="store_true", help='entries "coeff:exponent" over Q((x))')

    h = sub.add_parser("hilbert", help="Hilbert symbol (a, b)_v")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("place", help='"inf" or a prime')

    s = sub.add_parser("selftest", help="seeded randomized property suites")
    s.add_argument("--iters", type=int, required=True)
    s.add_argument("--seed", type=int, required=True, help="mandatory; unseeded runs are refused")
    s.add_argument("--height", type=int, default=1000, help="entry height cap for random matrices")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            rep = cmd_eval(args.file)
        elif args.command == "realize":
            rep = cmd_realize(args.form, args.genus, args.out)
        elif args.command == "norm":
            rep = cmd_norm(args.form, args.laurent)
        elif args.command == "hilbert":
            rep = cmd_hilbert(args.a, args.b, args.place)
        else:
            rep = cmd_selftest(args.iters, args.seed, args.height)
    except CliError as exc:
        json.dump({"command": args.command, "error": exc.kind, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return exc.code
    json.dump(rep, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return 0 if all(c["pass"] for c in rep["checks"]) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
