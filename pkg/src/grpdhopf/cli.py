"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 input
does not parse, 4 enumeration or search guard exceeded, 5 characters
unsupported over the requested field.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import corpus
from .duality import duality_bijection_check, omega, round_trip, theta
from .groupoid import (FiniteGroupoid, GuardExceededError, MalformedGroupoidError, NotTransitiveError,
                       connected_components, is_transitive, validate_groupoid)
from .hopf import UnsupportedCharacterError, character_groupoid, check_hopf_axioms, clause_status
from .io import (ParseError, dumps, groupoid_from_json, groupoid_to_json, hopf_from_json, hopf_to_json,
                 load_json, rep_from_json)
from .linalg import FieldSpec
from .repfun import build_repfun, gt_check, repfun_concrete, transitive_decomposition_iso
from .representation import validate_rep

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_GUARD, EXIT_FIELD = 0, 1, 2, 3, 4, 5


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str]
    field: FieldSpec = dc_field(default_factory=FieldSpec.rational)
    depth: int = 2
    seed: int = 0
    output: str = "text"
    guard: int = 10
    obj: int | None = None


@dataclass
class RunResult:
    status: int
    report: dict

    def render(self, output: str) -> str:
        if output == "json":
            return dumps(self.report)
        return _text(self.report)


# ------------------------------------------------------------- inputs

def _load_doc(spec: str) -> tuple[dict, Path | None]:
    if spec.startswith("corpus:"):
        name = spec[len("corpus:"):]
        if name not in corpus.names():
            raise ParseError(f"unknown corpus member {name!r}; known: {', '.join(corpus.names())}")
        return load_json(corpus.path(name)), None
    p = Path(spec)
    return load_json(p), p.parent


def _kind(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if "maps" in doc:
        return "hopf"
    if "matrices" in doc:
        return "representation"
    if "objects" in doc:
        return "groupoid"
    raise ParseError("cannot tell whether the input is a groupoid, representation or Hopf algebroid")


def _groupoid(spec: str) -> FiniteGroupoid:
    doc, _ = _load_doc(spec)
    if _kind(doc) != "groupoid":
        raise ParseError(f"{spec}: expected a groupoid")
    return groupoid_from_json(doc)


def _require_valid(g: FiniteGroupoid):
    rep = validate_groupoid(g)
    if not rep.ok:
        return {"ok": False, "stage": "validate_groupoid", **rep.to_dict()}
    return None


# ------------------------------------------------------------- subcommands

def _cmd_validate(cfg: RunConfig) -> RunResult:
    doc, base_dir = _load_doc(cfg.inputs[0])
    kind = _kind(doc)
    if kind == "groupoid":
        g = groupoid_from_json(doc)
        try:
            rep = validate_groupoid(g, max_witnesses=3)
        except MalformedGroupoidError as exc:
            raise ParseError(str(exc)) from exc
        out = {"kind": kind, "objects": g.n_objects, "arrows": g.n_arrows, **rep.to_dict()}
        return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, out)
    if kind == "representation":
        r = rep_from_json(doc, base_dir)
        gr = validate_groupoid(r.groupoid)
        rep = validate_rep(r)
        ok = gr.ok and rep.ok
        out = {"kind": kind, "rank": r.rank, "field": str(r.field), "groupoid_ok": gr.ok, **rep.to_dict()}
        out["ok"] = ok
        return RunResult(EXIT_OK if ok else EXIT_FAIL, out)
    h = hopf_from_json(doc)
    rep = check_hopf_axioms(h)
    out = {"kind": kind, "field": str(h.field), "base_dim": h.base.dim, "total_dim": h.total.dim,
           "clauses": clause_status(rep), **rep.to_dict()}
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, out)


def _cmd_components(cfg: RunConfig) -> RunResult:
    g = _groupoid(cfg.inputs[0])
    bad = _require_valid(g)
    if bad:
        return RunResult(EXIT_FAIL, bad)
    comps = []
    for c in connected_components(g):
        comps.append({"objects": [g.object_names[x] for x in c.objects], "arrows": c.groupoid.n_arrows,
                      "isotropy_order": len(g.loops(c.objects[0]))})
    return RunResult(EXIT_OK, {"ok": True, "transitive": is_transitive(g), "components": comps})


def _cmd_repfun(cfg: RunConfig) -> RunResult:
    g = _groupoid(cfg.inputs[0])
    bad = _require_valid(g)
    if bad:
        return RunResult(EXIT_FAIL, bad)
    h = repfun_concrete(g, cfg.field)
    rep = check_hopf_axioms(h)
    out = {"ok": rep.ok, "hopf": hopf_to_json(h), "clauses": clause_status(rep), **rep.to_dict()}
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, out)


def _hopf_input(spec: str, field: FieldSpec):
    doc, _ = _load_doc(spec)
    if _kind(doc) == "hopf":
        return hopf_from_json(doc), None
    g = groupoid_from_json(doc)
    bad = _require_valid(g)
    if bad:
        raise _CheckFailed(bad)
    return repfun_concrete(g, field), g


class _CheckFailed(Exception):
    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _cmd_characters(cfg: RunConfig) -> RunResult:
    h, _ = _hopf_input(cfg.inputs[0], cfg.field)
    X = character_groupoid(h)
    rep = validate_groupoid(X)
    out = {"ok": rep.ok, "groupoid": groupoid_to_json(X), "objects": X.n_objects, "arrows": X.n_arrows,
           **rep.to_dict()}
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, out)


def _cmd_round_trip(cfg: RunConfig) -> RunResult:
    g = _groupoid(cfg.inputs[0])
    bad = _require_valid(g)
    if bad:
        return RunResult(EXIT_FAIL, bad)
    rf = build_repfun(g, cfg.field, depth=cfg.depth, seed=cfg.seed)
    rt = round_trip(g, cfg.field)
    th = theta(g, cfg.field, hopf=rf.concrete, coend=rf.coend)
    om = omega(rf.concrete, groupoid=g, X=th.characters)
    rt["hopf_axioms"] = clause_status(check_hopf_axioms(rf.concrete))
    rt["zeta"] = rf.zeta.to_dict()
    rt["theta_zeta_cross_check"] = th.report.ok
    rt["omega_oracle_agrees"] = om.report.ok
    failures = []
    if not rt["theta_iso"] or not th.report.ok:
        failures.append("theta")
    if not rt["omega_hopf_morphism"] or not om.report.ok:
        failures.append("omega")
    for key in ("triangle_one", "triangle_two"):
        if not rt[key]["passed"]:
            failures.append(key)
    if not all(rt["hopf_axioms"].values()):
        failures.append("hopf_axioms")
    if not rf.zeta.report.ok or rf.zeta.kernel_dim:
        failures.append("zeta")
    rt["failures"] = failures
    rt["ok"] = not failures
    return RunResult(EXIT_OK if not failures else EXIT_FAIL, rt)


def _cmd_hom_check(cfg: RunConfig) -> RunResult:
    if len(cfg.inputs) != 2:
        raise _Usage("hom-check needs a groupoid and a Hopf algebroid (or a groupoid to take ℛ of)")
    g = _groupoid(cfg.inputs[0])
    bad = _require_valid(g)
    if bad:
        return RunResult(EXIT_FAIL, bad)
    h, _ = _hopf_input(cfg.inputs[1], cfg.field)
    rep = duality_bijection_check(h, g, guard=cfg.guard)
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, rep.to_dict())


def _cmd_decompose(cfg: RunConfig) -> RunResult:
    g = _groupoid(cfg.inputs[0])
    bad = _require_valid(g)
    if bad:
        return RunResult(EXIT_FAIL, bad)
    x = cfg.obj if cfg.obj is not None else 0
    if not 0 <= x < g.n_objects:
        raise _Usage(f"no object {x}")
    try:
        d = transitive_decomposition_iso(g, x, cfg.field)
    except NotTransitiveError as exc:
        comps = [[g.object_names[y] for y in c] for c in exc.components]
        return RunResult(EXIT_FAIL, {"ok": False, "failures": ["not_transitive"], "components": comps})
    out = {"ok": d.report.ok, "object": g.object_names[x], "isotropy_order": len(g.loops(x)),
           "total_dim": d.iso.codomain.total.dim, "extended_dim": d.extended.total.dim,
           "bijective": d.iso.is_bijective(), "phi": [d.band.arrow_names[a] for a in d.groupoid_iso.arrow_map],
           "gt_check": gt_check(d.iso.codomain).to_dict(), **d.report.to_dict()}
    return RunResult(EXIT_OK if d.report.ok else EXIT_FAIL, out)


class _Usage(Exception):
    pass


COMMANDS = {
    "validate": _cmd_validate,
    "components": _cmd_components,
    "repfun": _cmd_repfun,
    "characters": _cmd_characters,
    "round-trip": _cmd_round_trip,
    "hom-check": _cmd_hom_check,
    "decompose": _cmd_decompose,
}


def run(cfg: RunConfig) -> RunResult:
    """Run one subcommand; errors become a report with a distinct status."""
    base = {"command": cfg.subcommand, "inputs": list(cfg.inputs), "field": str(cfg.field)}
    try:
        res = COMMANDS[cfg.subcommand](cfg)
    except _CheckFailed as exc:
        res = RunResult(EXIT_FAIL, exc.report)
    except _Usage as exc:
        res = RunResult(EXIT_USAGE, {"ok": False, "error": "usage", "detail": str(exc)})
    except (ParseError, MalformedGroupoidError) as exc:
        res = RunResult(EXIT_PARSE, {"ok": False, "error": "parse", "detail": str(exc)})
    except GuardExceededError as exc:
        res = RunResult(EXIT_GUARD, {"ok": False, "error": "guard", "detail": str(exc)})
    except UnsupportedCharacterError as exc:
        res = RunResult(EXIT_FIELD, {"ok": False, "error": "unsupported_field", "detail": str(exc)})
    res.report = {**base, **res.report}
    return res


# ------------------------------------------------------------- text output

def _text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines) + ("\n" if indent == 0 else "")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grpdhopf", description="Finite groupoids and their Hopf algebroids.")
    p.add_argument("subcommand", choices=sorted(COMMANDS))
    p.add_argument("inputs", nargs="+", help="JSON file paths or corpus:<name>")
    p.add_argument("--field", default="rational", help="rational or fp:<p>")
    p.add_argument("--depth", type=int, default=2, help="tensor-closure depth of coend families")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--guard", type=int, default=10, help="arrow cap for morphism enumeration")
    p.add_argument("--object", type=int, default=None, dest="obj", help="base point for decompose")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = FieldSpec.parse(args.field)
    except ValueError as exc:
        print(f"grpdhopf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(args.subcommand, args.inputs, field, args.depth, args.seed, args.output, args.guard, args.obj)
    res = run(cfg)
    sys.stdout.write(res.render(cfg.output))
    return res.status


if __name__ == "__main__":
    sys.exit(main())
