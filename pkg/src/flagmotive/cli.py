"""
Command-line front end.

Each invocation runs one job and writes one JSON (or text) document to
stdout. A job is built from flags, or read as JSON with ``flagmotive run
[FILE]`` (stdin when FILE is omitted or ``-``); flags given alongside
``run`` override fields of the document.

Exit status: 0 ok, 2 parse error, 3 validation error, 4 resource cap,
5 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from typing import Any, Optional, Sequence

from . import motive, poly, weyl
from .errors import InvariantViolation, MotiveError, ParseError, ValidationError
from .parabolic import ParabolicType, PseudoParabolic, validate_pseudo
from .rootsys import Cocharacter, DynkinType, RootSystem, build_root_system
from .sweep import default_sweep_rank, run_sweep

COMMANDS = (
    "cells",
    "poincare",
    "chow-ranks",
    "bb",
    "bb-pseudo",
    "decompose-index",
    "verify-iso",
    "rost-bound",
    "sweep",
)


# --------------------------------------------------------------------------
# Job documents
# --------------------------------------------------------------------------


def parse_group(value: Any) -> RootSystem:
    """``{"family": "A", "rank": 2}``, a list of those, or a string like ``"A1xB2"``."""
    if value is None:
        raise ValidationError("missing field 'group'")
    if isinstance(value, str):
        return build_root_system(value)
    if isinstance(value, dict):
        value = [value]
    if not isinstance(value, list) or not value:
        raise ValidationError(f"cannot interpret group {value!r}")
    comps = []
    for c in value:
        if isinstance(c, str):
            comps.append(DynkinType.parse(c))
        elif isinstance(c, dict) and "family" in c and "rank" in c:
            comps.append(DynkinType(str(c["family"]).upper(), c["rank"]))
        else:
            raise ValidationError(f"cannot interpret group component {c!r}")
    return build_root_system(comps)


def _int_list(name: str, value: Any) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ValidationError(f"field '{name}' must be a list of integers, got {value!r}")
    return value


def parse_pseudo(doc: Any, sys: RootSystem) -> PseudoParabolic:
    if not isinstance(doc, dict) or "tau" not in doc or "exponents" not in doc:
        raise ValidationError("pseudo payload needs 'tau' and 'exponents'")
    tau = _int_list("pseudo.tau", doc["tau"])
    pairs = []
    for item in doc["exponents"]:
        if not isinstance(item, dict) or "root" not in item or "n" not in item:
            raise ValidationError(f"malformed exponent entry {item!r}")
        pairs.append((tuple(_int_list("root", item["root"])), item["n"]))
    pp = PseudoParabolic(ParabolicType(tau), pairs)
    return validate_pseudo(pp, sys)


def pseudo_to_dict(pp: PseudoParabolic) -> dict:
    return {
        "tau": sorted(pp.tau.tau),
        "exponents": [{"root": list(r), "n": n} for r, n in pp.exponents],
    }


def _tau(job: dict, sys: RootSystem) -> ParabolicType:
    if "tau" not in job:
        raise ValidationError("missing field 'tau'")
    return ParabolicType(_int_list("tau", job["tau"])).check(sys)


def _lambda(job: dict, sys: RootSystem) -> Cocharacter:
    # Without an explicit torus, use the regular dominant one (full cell decomposition).
    if job.get("lambda") is None:
        return Cocharacter((1,) * sys.rank)
    return Cocharacter(tuple(_int_list("lambda", job["lambda"]))).check(sys)


def _pseudo(job: dict, sys: RootSystem) -> PseudoParabolic:
    if job.get("pseudo") is None:
        raise ValidationError("missing field 'pseudo'")
    return parse_pseudo(job["pseudo"], sys)


def _decomposition_from(doc: Any) -> motive.MotiveDecomposition:
    if isinstance(doc, dict) and "summands" in doc:
        return motive.MotiveDecomposition.from_dict(doc)
    if isinstance(doc, dict) and "command" in doc:
        if doc["command"] not in ("bb", "bb-pseudo", "decompose-index"):
            raise ValidationError(f"verify-iso operand cannot be a {doc['command']!r} job")
        return motive.MotiveDecomposition.from_dict(execute(doc)["decomposition"])
    raise ValidationError("verify-iso operands must be decompositions or bb/bb-pseudo/decompose-index jobs")


def _summands_doc(items) -> list:
    return [{"base": s.base.to_dict(), "twist": s.twist} for s in items]


def execute(job: dict) -> dict:
    """Run one job document and return the result document (without status)."""
    if not isinstance(job, dict):
        raise ValidationError("job must be a JSON object")
    cmd = job.get("command")
    if cmd not in COMMANDS:
        raise ValidationError(f"unknown command {cmd!r}; expected one of {', '.join(COMMANDS)}")
    out: dict = {"command": cmd}

    if cmd == "rost-bound":
        for k in ("d", "n", "n_K"):
            if k not in job:
                raise ValidationError(f"missing field '{k}'")
        out["bound"] = motive.rost_bound(job["d"], job["n"], job["n_K"])
        return out

    if cmd == "sweep":
        rank = job.get("sweep_rank", default_sweep_rank())
        emax = job.get("exponent_max", 2)
        out["report"] = run_sweep(rank, emax)
        return out

    if cmd == "verify-iso":
        if "left" not in job or "right" not in job:
            raise ValidationError("verify-iso needs 'left' and 'right'")
        report = motive.motive_iso_check(_decomposition_from(job["left"]), _decomposition_from(job["right"]))
        out["isomorphic"] = report.isomorphic
        out["diff"] = {"only_left": _summands_doc(report.only_left), "only_right": _summands_doc(report.only_right)}
        return out

    sys = parse_group(job.get("group"))
    out["group"] = [{"family": c.family, "rank": c.rank} for c in sys.components]

    if cmd == "cells":
        tau = _tau(job, sys)
        cells = motive.cell_decomposition(tau, sys)
        out["tau"] = sorted(tau.tau)
        out["cells"] = [{"word": list(c.w.word), "dim": c.dim} for c in cells]
    elif cmd == "poincare":
        tau = _tau(job, sys)
        out["tau"] = sorted(tau.tau)
        out["coefficients"] = list(motive.poincare_polynomial(tau, sys))
    elif cmd == "chow-ranks":
        if job.get("pseudo") is not None:
            pp = _pseudo(job, sys)
            out["pseudo"] = pseudo_to_dict(pp)
            out["tau"] = sorted(pp.tau.tau)
            out["ranks"] = list(motive.chow_ranks_pseudo(pp, sys).ranks)
        else:
            tau = _tau(job, sys)
            out["tau"] = sorted(tau.tau)
            out["ranks"] = list(motive.chow_ranks(tau, sys).ranks)
    elif cmd == "bb":
        tau = _tau(job, sys)
        lam = _lambda(job, sys)
        md = motive.bb_decomposition(lam, tau, sys)
        out.update(tau=sorted(tau.tau), **{"lambda": list(lam.pairings)})
        out["decomposition"] = md.to_dict()
    elif cmd == "bb-pseudo":
        pp = _pseudo(job, sys)
        lam = _lambda(job, sys)
        md = motive.bb_decomposition_pseudo(lam, pp, sys)
        out.update(pseudo=pseudo_to_dict(pp), **{"lambda": list(lam.pairings)})
        out["decomposition"] = md.to_dict()
    elif cmd == "decompose-index":
        tau = _tau(job, sys)
        if job.get("delta") is None:
            raise ValidationError("missing field 'delta'")
        delta = sys.check_nodes(_int_list("delta", job["delta"]))
        md = motive.decompose_over_index(delta, tau, sys)
        out.update(tau=sorted(tau.tau), delta=sorted(delta))
        out["decomposition"] = md.to_dict()
    return out


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def _render_base(b: dict) -> str:
    if b["kind"] == "tate":
        return "Spec k"
    comps = "x".join(f"{c['family']}{c['rank']}{c['nodes']}" for c in b["components"])
    flag = "anisotropic " if b["anisotropic"] else ""
    return f"{flag}flag of {comps} type tau_h={b['tau_h']}"


def render_text(doc: dict) -> str:
    if doc.get("status") == "error":
        e = doc["error"]
        return f"error ({e['kind']}): {e['message']}"
    lines = [f"command: {doc['command']}"]
    if "group" in doc:
        lines.append("group: " + "x".join(f"{c['family']}{c['rank']}" for c in doc["group"]))
    for key in ("tau", "delta", "lambda"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    if "pseudo" in doc:
        ex = ", ".join(f"{e['root']}:{e['n']}" for e in doc["pseudo"]["exponents"])
        lines.append(f"exponents: {ex or '(none)'}")
    if "cells" in doc:
        lines.append(f"cells ({len(doc['cells'])}):")
        lines.extend(f"  dim {c['dim']}  word {c['word']}" for c in doc["cells"])
    if "coefficients" in doc:
        lines.append(f"poincare: {poly.render(doc['coefficients'])}  {doc['coefficients']}")
    if "ranks" in doc:
        lines.append(f"ranks: {doc['ranks']}")
    if "decomposition" in doc:
        md = doc["decomposition"]
        lines.append(f"ambient dimension: {md['ambient_dim']}")
        lines.extend(f"  twist {s['twist']}: {_render_base(s['base'])}" for s in md["summands"])
    if "isomorphic" in doc:
        lines.append(f"isomorphic: {doc['isomorphic']}")
        for side in ("only_left", "only_right"):
            for s in doc["diff"][side]:
                lines.append(f"  {side}: twist {s['twist']}: {_render_base(s['base'])}")
    if "bound" in doc:
        lines.append(f"bound: {doc['bound']}")
    if "report" in doc:
        rep = doc["report"]
        lines.append(f"rank bound: {rep['rank_bound']}  types: {' '.join(rep['types'])}")
        for s in rep["suites"]:
            mark = "PASS" if s["passed"] else "FAIL"
            lines.append(f"  [{mark}] {s['name']}: {s['checked']} checks, {s['failures']} failures")
            lines.extend(f"      counterexample: {json.dumps(c, sort_keys=True)}" for c in s["counterexamples"])
    return "\n".join(lines)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# --------------------------------------------------------------------------
# Argument handling
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _csv_ints(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _group_arg(text: str):
    text = text.strip()
    return json.loads(text) if text[:1] in "[{" else text


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagmotive", description="Motivic decompositions of (pseudo-)homogeneous flag varieties.")
    p.add_argument("command", choices=COMMANDS + ("run",))
    p.add_argument("job", nargs="?", help="JSON job file for 'run' ('-' or omitted: stdin)")
    p.add_argument("--group", help='Dynkin type: "A2", "A1xB2", or JSON')
    p.add_argument("--tau", help="parabolic type, e.g. 1,2")
    p.add_argument("--lambda", dest="lam", help="cocharacter pairings, e.g. 1,0")
    p.add_argument("--delta", help="circled nodes of the Tits index")
    p.add_argument("--pseudo-file", help="JSON file holding a pseudo-parabolic payload")
    p.add_argument("--d", type=int, help="dimension (rost-bound)")
    p.add_argument("--n", type=int, help="number of summands over k (rost-bound)")
    p.add_argument("--n-k", dest="n_K", type=int, help="number of summands over the closure (rost-bound)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--weyl-cap", type=int, help="Weyl enumeration cap (env MOTIVE_WEYL_CAP)")
    p.add_argument("--sweep-rank", type=int, help="rank bound for sweep (env MOTIVE_SWEEP_RANK)")
    p.add_argument("--exponent-max", type=int, help="largest exponent in the sweep (default 2)")
    return p


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {what}: {exc}") from None


def job_from_args(args, stdin) -> dict:
    if args.command == "run":
        if args.job in (None, "-"):
            job = _load_json(stdin.read(), "stdin")
        else:
            try:
                with open(args.job) as fh:
                    job = _load_json(fh.read(), args.job)
            except OSError as exc:
                raise ParseError(f"cannot read {args.job}: {exc}") from None
        if not isinstance(job, dict):
            raise ParseError("job document must be a JSON object")
    else:
        if args.job is not None:
            raise ParseError(f"unexpected argument {args.job!r}")
        job = {"command": args.command}
    if args.group is not None:
        job["group"] = _group_arg(args.group)
    if args.tau is not None:
        job["tau"] = _csv_ints(args.tau)
    if args.lam is not None:
        job["lambda"] = _csv_ints(args.lam)
    if args.delta is not None:
        job["delta"] = _csv_ints(args.delta)
    if args.pseudo_file is not None:
        try:
            with open(args.pseudo_file) as fh:
                job["pseudo"] = _load_json(fh.read(), args.pseudo_file)
        except OSError as exc:
            raise ParseError(f"cannot read {args.pseudo_file}: {exc}") from None
    for key in ("d", "n", "n_K"):
        if getattr(args, key) is not None:
            job[key] = getattr(args, key)
    if args.sweep_rank is not None:
        job["sweep_rank"] = args.sweep_rank
    if args.exponent_max is not None:
        job["exponent_max"] = args.exponent_max
    return job


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    stdin = _sys.stdin if stdin is None else stdin
    stdout = _sys.stdout if stdout is None else stdout
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        job = job_from_args(args, stdin)
        with weyl.cap_override(args.weyl_cap):
            doc = execute(job)
        status = 0
        if doc["command"] == "sweep" and not doc["report"]["passed"]:
            status = InvariantViolation.exit_status
        doc["status"] = "ok" if status == 0 else "failed"
    except MotiveError as exc:
        err = {"kind": exc.kind, "message": str(exc)}
        if isinstance(exc, InvariantViolation) and exc.payload is not None:
            err["payload"] = exc.payload
        doc = {"status": "error", "error": err}
        status = exc.exit_status
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    stdout.write((render_text(doc) if fmt == "text" else dumps(doc)) + "\n")
    return status


def main():  # pragma: no cover
    raise SystemExit(run())
