"""Command-line front end: JSON jobs in, canonical JSON results out."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arith import format_poly, format_ratfunc
from .bounds import QProperDescriptor, az_bound, bound_report, compile_qproper
from .errors import CTError, ExprSyntaxError
from .expr import parse_ratfunc
from .reduce import is_summable, reduce_shell, rnf_and_basis
from .shiftcase import CaseTag
from .telescope import (
    Certificate, Found, Telescoper, find_telescoper, validate_term, verify_certificate,
)

COMMANDS = ("reduce", "summable", "telescope", "bounds", "verify")


class UsageError(Exception):
    pass


def _poly_text(p) -> str:
    return format_poly(p)


def _descriptor(obj: dict) -> QProperDescriptor:
    known = {"alphas", "betas", "mus", "nus", "gamma", "xi", "p"}
    extra = set(obj) - known
    if extra:
        raise UsageError(f"unknown descriptor fields: {sorted(extra)}")
    return QProperDescriptor(
        alphas=tuple(map(tuple, obj.get("alphas", ()))),
        betas=tuple(map(tuple, obj.get("betas", ()))),
        mus=tuple(map(tuple, obj.get("mus", ()))),
        nus=tuple(map(tuple, obj.get("nus", ()))),
        gamma=int(obj.get("gamma", 0)),
        xi=Fraction(str(obj.get("xi", 1))),
        p=parse_ratfunc(str(obj.get("p", "1")), CaseTag.QSHIFT),
    )


def load_term(job: dict):
    """Return (TermSpec, descriptor or None) for a job."""
    if "case" not in job:
        raise UsageError("job needs a 'case' ('shift' or 'qshift')")
    try:
        case = CaseTag.parse(job["case"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inp = job.get("input")
    if not isinstance(inp, dict):
        raise UsageError("job needs an 'input' object")
    has_q = "fx" in inp or "fy" in inp
    desc_obj = inp.get("qproper")
    if has_q == (desc_obj is not None):
        raise UsageError("input must hold either fx/fy or a qproper descriptor")
    if has_q:
        if "fx" not in inp or "fy" not in inp:
            raise UsageError("both fx and fy are required")
        fx = parse_ratfunc(str(inp["fx"]), case)
        fy = parse_ratfunc(str(inp["fy"]), case)
        return validate_term(fx, fy, case), None
    if case is not CaseTag.QSHIFT:
        raise UsageError("q-proper descriptors need case 'qshift'")
    try:
        desc = _descriptor(desc_obj)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad qproper descriptor: {exc}") from None
    return compile_qproper(desc), desc


def _remainder_dict(r) -> dict:
    return {
        "h": format_ratfunc(r.h),
        "p": format_ratfunc(r.p),
        "v": _poly_text(r.v),
        "d": _poly_text(r.d),
        "value": format_ratfunc(r.value()),
    }


def run(job: dict) -> dict:
    """Execute one job; math errors come back as {"error", "detail"}."""
    command = job.get("command")
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    opts = job.get("options") or {}
    try:
        term, desc = load_term(job)
        return _dispatch(command, term, desc, opts, job)
    except ExprSyntaxError as exc:
        raise UsageError(str(exc)) from None
    except CTError as exc:
        out = {"error": type(exc).__name__, "detail": str(exc)}
        residual = getattr(exc, "residual", None)
        if residual is not None:
            out["residual"] = _poly_text(residual)
        return out


def _dispatch(command: str, term, desc, opts: dict, job: dict) -> dict:
    case = term.case
    if command == "reduce":
        rnf, cb = rnf_and_basis(term.fy, case)
        res = reduce_shell(rnf.shell, cb)
        return {
            "kernel": format_ratfunc(rnf.kernel),
            "shell": format_ratfunc(rnf.shell),
            "dim_complement": cb.dimension,
            "remainder": _remainder_dict(res.remainder),
            "witness": format_ratfunc(res.g),
        }
    if command == "summable":
        ok, g = is_summable(term)
        return {"summable": ok, "witness": format_ratfunc(g) if ok else None}
    if command == "bounds":
        return bound_report(term, desc).as_dict()
    max_order = opts.get("max_order")
    if opts.get("bounds_only"):
        return bound_report(term, desc).as_dict()
    res = find_telescoper(term, max_order=max_order,
                          b_az=az_bound(desc) if desc is not None else None)
    if command == "verify":
        if not isinstance(res, Found):
            return {"verified": False, "no_telescoper": True}
        L, cert = res.telescoper, res.certificate
        if "telescoper" in job:
            L = Telescoper(tuple(parse_ratfunc(str(c), case).numer() for c in job["telescoper"]))
            cert = Certificate(parse_ratfunc(str(job.get("certificate", "0")), case))
        return {"verified": verify_certificate(term, L, cert, res.rnf), "order": L.order}
    if not isinstance(res, Found):
        return {"no_telescoper": True, "evidence": _poly_text(res.evidence),
                "remainder": _remainder_dict(res.remainder)}
    out = {
        "order": res.telescoper.order,
        "telescoper": [_poly_text(c) for c in res.telescoper.coefficients],
        "kernel": format_ratfunc(res.rnf.kernel),
        "shell": format_ratfunc(res.rnf.shell),
        "remainders": [format_ratfunc(r.value()) for r in res.remainders],
        "bounds": res.bounds.as_dict(),
    }
    if opts.get("emit_certificate", True):
        out["certificate"] = format_ratfunc(res.certificate.g)
    return out


def exit_code(result: dict) -> int:
    return 1 if "error" in result or result.get("no_telescoper") else 0


def dumps(result: dict) -> str:
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def _human(result: dict, indent: str = "") -> str:
    lines = []
    for key in sorted(result):
        val = result[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_human(val, indent + "  "))
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: [{', '.join(map(str, val))}]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _run_corpus_entry(path: str) -> tuple[str, str]:
    job = json.loads(Path(path).read_text())
    try:
        return path, dumps(run(job))
    except UsageError as exc:
        return path, dumps({"error": "UsageError", "detail": str(exc)})


def corpus_jobs(directory: Path) -> list[Path]:
    return sorted(p for p in directory.glob("*.json") if not p.name.endswith(".expected.json"))


def run_corpus(directory: Path, update: bool = False, jobs: int = 1, out=sys.stdout) -> int:
    paths = [str(p) for p in corpus_jobs(directory)]
    if not paths:
        print(f"no jobs in {directory}", file=sys.stderr)
        return 2
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_corpus_entry, paths))
    else:
        results = [_run_corpus_entry(p) for p in paths]
    failed = 0
    for path, text in results:
        exp = Path(path[: -len(".json")] + ".expected.json")
        if update:
            _atomic_write(exp, text)
            print(f"UPDATED {Path(path).name}", file=out)
            continue
        if not exp.exists():
            print(f"MISSING {Path(path).name}", file=out)
            failed += 1
            continue
        want = dumps(json.loads(exp.read_text()))
        if want == text:
            print(f"PASS {Path(path).name}", file=out)
        else:
            print(f"FAIL {Path(path).name}", file=out)
            failed += 1
    print(f"{len(results) - failed}/{len(results)} passed", file=out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ctelescope",
        description="Reduction-based creative telescoping for (q-)hypergeometric terms.",
    )
    ap.add_argument("--corpus", metavar="DIR", type=Path,
                    help="run every job in DIR against its NAME.expected.json")
    ap.add_argument("--update", action="store_true", help="with --corpus: rewrite expected files")
    ap.add_argument("--jobs", type=int, default=1, help="with --corpus: worker processes")
    sub = ap.add_subparsers(dest="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("job", nargs="?", help="job JSON file ('-' for stdin)")
        sp.add_argument("--case", choices=["shift", "qshift"])
        sp.add_argument("--fx", help="sigma_x-quotient f_x")
        sp.add_argument("--fy", help="sigma_y-quotient f_y")
        sp.add_argument("--max-order", type=int)
        cert = sp.add_mutually_exclusive_group()
        cert.add_argument("--certificate", dest="certificate", action="store_true", default=None)
        cert.add_argument("--no-certificate", dest="certificate", action="store_false")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def _job_from_args(args) -> dict:
    if args.job:
        text = sys.stdin.read() if args.job == "-" else Path(args.job).read_text()
        try:
            job = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"job is not valid JSON: {exc}") from None
    else:
        job = {}
    job["command"] = args.command
    if args.case:
        job["case"] = args.case
    if args.fx is not None or args.fy is not None:
        job["input"] = {"fx": args.fx, "fy": args.fy}
    opts = dict(job.get("options") or {})
    if args.max_order is not None:
        opts["max_order"] = args.max_order
    if args.certificate is not None:
        opts["emit_certificate"] = args.certificate
    job["options"] = opts
    return job


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.corpus is not None:
        if args.command:
            ap.error("--corpus cannot be combined with a command")
        return run_corpus(args.corpus, update=args.update, jobs=args.jobs)
    if not args.command:
        ap.print_usage(sys.stderr)
        return 2
    try:
        result = run(_job_from_args(args))
    except (UsageError, OSError) as exc:
        print(f"ctelescope: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(dumps(result) if args.json else _human(result) + "\n")
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
