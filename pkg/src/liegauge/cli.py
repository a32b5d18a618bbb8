"""``liegauge`` command-line front end.

Every subcommand builds a :class:`Report`; ``main`` renders it and returns
its exit code (0 when no check failed, 1 otherwise, 2 on usage errors).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .catalog import CASE_ANGLES, LABELS, STANDARD_NAMES
from .gauge import (
    IndexStructureError,
    MissingLabelError,
    TensorPoly,
    field_strength,
    lagrangian,
    poly_equal,
    vertex_table,
)
from .liealg import (
    AntisymmetryError,
    BasisTransform,
    Representation,
    StructureConstants,
    compare_reps,
    jacobi_check,
    killing_form,
    rep_check,
    specialize,
    specialize_rep,
    trace_table,
    transform_constants,
)
from .matrix import DimensionError, NotInvertibleError, TrigMatrix
from .trigring import ScalarSyntaxError, exact_angle, ts_format

ALGEBRAS = {
    "ga": "ga_constants",
    "su2xu1": "su2xu1_constants",
    "su3": "su3_constants",
    "su3-printed": "su3_constants_printed",
    "u1": "u1_constants",
}
REPS = {
    "ga-adjoint": "ga_adjoint",
    "ga-transformed-adjoint": "ga_transformed_adjoint",
    "ga-fundamental": "ga_fundamental_computed",
    "ga-fundamental-paper": "ga_fundamental_paper",
    "su2xu1-fundamental": "su2xu1_fundamental",
    "su2xu1-adjoint": "su2xu1_paper_adjoint",
}
MATRICES = {"glashow": "forward", "glashow-inverse": "inverse"}

PASS, FAIL, INFO = "pass", "fail", "info"


class CliError(Exception):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    body: str = ""
    data: Any = None

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == FAIL for c in self.checks) else 0

    def add(self, name: str, status: str | bool, detail: str = "") -> None:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        self.checks.append(Check(name, status, detail))

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "checks": [c.to_json() for c in self.checks],
            "exit_code": self.exit_code,
        }
        if self.data is not None:
            out["body"] = self.data
        return out

    def render(self, fmt: str = "text", color: bool = False) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        lines = [self.body] if self.body else []
        lines += [_check_line(c, color) for c in self.checks]
        lines.append(f"{self.command}: {'ok' if self.exit_code == 0 else 'FAILED'}")
        return "\n".join(lines) + "\n"


_COLORS = {PASS: "32", FAIL: "31", INFO: "36"}


def _check_line(c: Check, color: bool) -> str:
    tag = f"[{c.status}]"
    if color:
        tag = f"\x1b[{_COLORS[c.status]}m{tag}\x1b[0m"
    return f"{tag} {c.name}" + (f": {c.detail}" if c.detail else "")


def use_color(stream=None) -> bool:
    mode = os.environ.get("LIEGAUGE_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    if mode != "auto":
        raise CliError(f"LIEGAUGE_COLOR must be auto, always or never, not {mode!r}")
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()


# input resolution


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc})") from None


def _from_file(path: str, loader, what: str):
    data = _load_json(path)
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError, ScalarSyntaxError) as exc:
        raise CliError(f"{path}: not a valid {what} file ({exc})") from None


def resolve_algebra(arg: str) -> StructureConstants:
    if arg in ALGEBRAS:
        return catalog.fixtures()[ALGEBRAS[arg]]
    if Path(arg).is_file():
        return _from_file(arg, StructureConstants.from_json, "structure constants")
    raise CliError(f"unknown algebra {arg!r}; known: {', '.join(ALGEBRAS)} or a JSON file")


def resolve_rep(arg: str) -> Representation:
    if arg in REPS:
        return catalog.fixtures()[REPS[arg]]
    if Path(arg).is_file():
        return _from_file(arg, Representation.from_json, "representation")
    raise CliError(f"unknown representation {arg!r}; known: {', '.join(REPS)} or a JSON file")


def resolve_matrix(arg: str) -> TrigMatrix:
    if arg in MATRICES:
        return getattr(catalog.fixtures()["glashow_transform"], MATRICES[arg])
    if Path(arg).is_file():
        return _from_file(arg, TrigMatrix.from_json, "matrix")
    raise CliError(f"unknown matrix {arg!r}; known: {', '.join(MATRICES)} or a JSON file")


_THETA = re.compile(r"^([+-]?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?$")


def parse_theta(text: str | None) -> Fraction | None:
    """``"symbolic"`` gives None; otherwise theta as a multiple of pi."""
    if text is None or text == "symbolic":
        return None
    t = text.strip().replace(" ", "")
    if t in ("0", "-0"):
        return Fraction(0)
    m = _THETA.match(t)
    if not m:
        raise CliError(f"theta must be 'symbolic' or a rational multiple of pi such as 'pi/2', got {text!r}")
    num = m.group(1)
    num = 1 if num in ("", "+") else -1 if num == "-" else int(num)
    den = int(m.group(2) or 1)
    if den == 0:
        raise CliError("theta denominator is zero")
    return Fraction(num, den)


def _theta_text(q: Fraction) -> str:
    if q == 0:
        return "0"
    num = "" if q.numerator == 1 else "-" if q.numerator == -1 else str(q.numerator)
    return f"{num}pi" + (f"/{q.denominator}" if q.denominator != 1 else "")


def _angle(q: Fraction):
    try:
        return exact_angle(q)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def resolve_names(arg: str, labels: Sequence[str]) -> dict[str, str]:
    if arg == "labels":
        return {lab: lab for lab in labels}
    if arg == "standard":
        if tuple(labels) != LABELS:
            raise CliError(f"--names standard needs generators {LABELS}, algebra has {tuple(labels)}")
        return dict(STANDARD_NAMES)
    out = {}
    for item in arg.split(","):
        if "=" not in item:
            raise CliError(f"bad --names entry {item!r}; use LABEL=NAME pairs")
        k, v = (x.strip() for x in item.split("=", 1))
        out[k] = v
    missing = [lab for lab in labels if lab not in out]
    if missing:
        raise CliError(f"--names gives no field name for {missing}")
    return out


# commands


def cmd_verify(algebra: str, reps: Sequence[str] = (), theta: str | None = None) -> Report:
    sc = resolve_algebra(algebra)
    rep_objs = [(name, resolve_rep(name)) for name in reps]
    q = parse_theta(theta)
    report = Report("verify")
    if q is not None:
        c, s = _angle(q)
        sc = specialize(sc, c, s)
        rep_objs = [(name, specialize_rep(r, c, s)) for name, r in rep_objs]
        report.add("theta", INFO, f"specialised to theta = {_theta_text(q)} (cos = {ts_format(c)}, sin = {ts_format(s)})")
    report.add("antisymmetry", PASS, f"{len(sc.entries)} independent constants, f^c_ab = -f^c_ba")
    jr = jacobi_check(sc)
    detail = "all triples" if jr.passed else "; ".join(
        f"({sc.labels[v.a]},{sc.labels[v.b]},{sc.labels[v.c]}) component {sc.labels[v.l]}: {ts_format(v.residual)}"
        for v in jr.violations[:6]
    )
    report.add("jacobi", jr.passed, detail)
    for name, rep in rep_objs:
        if rep.algebra_dim != sc.dim:
            report.add(f"rep {name}", FAIL, f"{rep.algebra_dim} matrices for a {sc.dim}-dimensional algebra")
            continue
        rr = rep_check(sc, rep)
        detail = f"{rep.size}x{rep.size} matrices" if rr.passed else "fails for " + ", ".join(
            f"[{sc.labels[f.a]},{sc.labels[f.b]}]" for f in rr.failures
        )
        report.add(f"rep {name}", rr.passed, detail)
    for (n1, r1), (n2, r2) in combinations(rep_objs, 2):
        cmp = compare_reps(r1, r2)
        msg = "representations coincide" if cmp.equal else f"representations differ ({cmp.reason})"
        if cmp.differing:
            msg += ": " + ", ".join(sc.labels[a] for a in cmp.differing)
        report.add(f"compare {n1} / {n2}", INFO, msg)
    if q is not None and algebra == "ga":
        q_red = q % 2
        if q_red in CASE_ANGLES:
            case = CASE_ANGLES[q_red]
            same = sc == catalog.case_algebra(q_red)
            status = INFO if same else FAIL
            report.add(
                "degenerate case",
                status,
                f"reduces to the case-{case} algebra" if same else f"does not match the case-{case} table",
            )
    report.body = "\n".join(sc.commutation_relations())
    report.data = {"algebra": sc.to_json()}
    return report


def cmd_killing(algebra: str) -> Report:
    sc = resolve_algebra(algebra)
    kf = killing_form(sc)
    report = Report("killing")
    report.body = kf.matrix.to_text()
    report.add("determinant", INFO, ts_format(kf.determinant))
    report.add("semisimplicity", INFO, "semisimple" if kf.is_semisimple else "non-semisimple")
    if kf.matrix.is_zero():
        report.add("killing form", INFO, "zero matrix")
    report.data = {
        "matrix": kf.matrix.to_json(),
        "determinant": kf.determinant.to_json(),
        "semisimple": kf.is_semisimple,
    }
    return report


def _golden_diff(computed: TensorPoly, golden: TensorPoly) -> str:
    cmp = poly_equal(computed, golden)
    lines = []
    seen = set()
    for t in cmp.diff:
        key = (t.g_power, t.factors)
        if key in seen:
            continue
        seen.add(key)
        mono = TensorPoly([t.with_coeff(1)]).to_text().split("] ", 1)[1]
        lines.append(
            f"{mono}: computed {ts_format(computed.coefficient(t))}, golden {ts_format(golden.coefficient(t))}"
        )
    return "; ".join(lines)


def cmd_lagrangian(
    algebra: str,
    trace_rep: str,
    names: str = "labels",
    fmt: str = "text",
    golden: str | None = None,
    allow_nonrep: bool = False,
) -> Report:
    sc = resolve_algebra(algebra)
    rep = resolve_rep(trace_rep)
    name_map = resolve_names(names, sc.labels)
    report = Report("lagrangian")
    if rep.algebra_dim != sc.dim:
        raise CliError(f"trace representation has {rep.algebra_dim} matrices, algebra dim {sc.dim}")
    rr = rep_check(sc, rep)
    if rr.passed:
        report.add("trace rep", PASS, f"{trace_rep} represents the algebra")
    elif allow_nonrep:
        report.add("trace rep", INFO, f"{trace_rep} is not a representation; expansion forced")
    else:
        report.add("trace rep", FAIL, f"{trace_rep} is not a representation (use --allow-nonrep to expand anyway)")
        return report
    try:
        fs = field_strength(sc, name_map)
        poly = lagrangian(fs, trace_table(rep))
    except (IndexStructureError, MissingLabelError) as exc:
        raise CliError(str(exc)) from None
    table = vertex_table(poly)
    report.add("free indices", PASS, f"{len(poly)} fully contracted terms")
    counts = {k: len(table.of_kind(k)) for k in ("kinetic", "cubic", "quartic", "other")}
    report.add("vertex groups", INFO, ", ".join(f"{v} {k}" for k, v in counts.items() if v))
    mixing = table.neutral_kinetic_mixing()
    if mixing:
        report.add(
            "kinetic mixing",
            FAIL,
            "derivative coupling between " + "; ".join(" and ".join(g.fields) for g in mixing),
        )
    else:
        report.add("kinetic mixing", PASS, "no cross kinetic term between diagonal fields")
    if golden is not None:
        gpoly = _from_file(golden, TensorPoly.from_json, "tensor polynomial")
        cmp = poly_equal(poly, gpoly)
        report.add("golden", cmp.equal, "equal" if cmp.equal else _golden_diff(poly, gpoly))
    if fmt == "latex":
        report.body = table.to_latex()
    elif fmt == "json":
        report.body = ""
    else:
        report.body = table.to_text()
    report.data = {"lagrangian": poly.to_json(), "vertex_table": table.to_json()}
    return report


def _changed_entries(old: StructureConstants, new: StructureConstants) -> list[str]:
    out = []
    n = old.dim
    for a, b in combinations(range(n), 2):
        for c in range(n):
            x, y = old.lookup(a, b, c), new.lookup(a, b, c)
            if x != y:
                lab = new.labels
                out.append(f"f^{lab[c]}_{lab[a]}{lab[b]}: {ts_format(x)} -> {ts_format(y)}")
    return out


def cmd_transform(algebra: str, matrix: str, out: str | None = None) -> Report:
    sc = resolve_algebra(algebra)
    m = resolve_matrix(matrix)
    if m.n != sc.dim:
        raise CliError(f"matrix is {m.n}x{m.n}, algebra dim {sc.dim}")
    try:
        t = BasisTransform(m)
    except NotInvertibleError as exc:
        raise CliError(f"matrix is not invertible over the ring: {exc}") from None
    new = transform_constants(sc, t)
    report = Report("transform")
    changed = _changed_entries(sc, new)
    report.add("inverse", PASS, f"det = {ts_format(m.determinant())}")
    report.add("changed entries", INFO, f"{len(changed)}" + (": " + "; ".join(changed) if changed else ""))
    report.add("jacobi", jacobi_check(new).passed, "transformed constants")
    text = json.dumps(new.to_json(), indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
        report.add("output", INFO, f"wrote {out}")
    else:
        report.body = text.rstrip("\n")
    report.data = {"algebra": new.to_json()}
    return report


def cmd_mixing(values: Sequence[str] = (), enumerate_: bool = False) -> Report:
    report = Report("mixing")
    if enumerate_:
        lines = []
        for fam in catalog.case_families():
            lines.append(f"family {fam.id}: {fam.description}")
            lines.append(f"    {fam.parametrization}")
            for mem in fam.members:
                where = "" if mem.theta is None else f" (theta = {_theta_text(mem.theta)})"
                lines.append(f"    {mem.signs}: {mem.candidate}{where}")
                ok = catalog.check_mixing_constraints(mem.candidate).passed
                report.add(f"family {fam.id} {mem.signs}", ok, str(mem.candidate))
        report.body = "\n".join(lines)
        return report
    try:
        cand = catalog.named_candidate(values)
    except (ValueError, ScalarSyntaxError) as exc:
        raise CliError(str(exc)) from None
    mr = catalog.check_mixing_constraints(cand)
    for r in mr.results:
        detail = r.equation if r.passed else f"{r.equation}; residual {ts_format(r.residual)}"
        report.add(r.name, r.passed, detail)
    report.body = f"candidate (alpha, beta, gamma, delta) = {cand}"
    return report


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liegauge", description="Exact Lie algebra and gauge Lagrangian checks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="Jacobi, antisymmetry and representation checks")
    v.add_argument("--algebra", required=True)
    v.add_argument("--rep", action="append", default=[])
    v.add_argument("--theta", default="symbolic")
    v.add_argument("--format", choices=("text", "json"), default="text")

    k = sub.add_parser("killing", help="Killing form, determinant and semisimplicity")
    k.add_argument("--algebra", required=True)
    k.add_argument("--format", choices=("text", "json"), default="text")

    lg = sub.add_parser("lagrangian", help="expand the trace Lagrangian into vertex groups")
    lg.add_argument("--algebra", required=True)
    lg.add_argument("--trace-rep", required=True)
    lg.add_argument("--names", default="labels")
    lg.add_argument("--format", choices=("text", "latex", "json"), default="text")
    lg.add_argument("--golden")
    lg.add_argument("--output", help="write the expansion here instead of stdout")
    lg.add_argument("--allow-nonrep", action="store_true")

    t = sub.add_parser("transform", help="change basis of an algebra")
    t.add_argument("--algebra", required=True)
    t.add_argument("--matrix", required=True)
    t.add_argument("--out")
    t.add_argument("--format", choices=("text", "json"), default="text")

    m = sub.add_parser("mixing", help="check neutral-field mixing constraints")
    m.add_argument("values", nargs="*")
    m.add_argument("--enumerate", action="store_true")
    m.add_argument("--format", choices=("text", "json"), default="text")
    return p


_MIXING_FLAGS = {"--enumerate": 0, "--format": 1, "-h": 0, "--help": 0}


def _protect_mixing_values(argv: list[str]) -> list[str]:
    # scalars such as "-sin" would otherwise be taken for options
    if not argv or argv[0] != "mixing":
        return argv
    flags, values = [], []
    rest = argv[1:]
    k = 0
    while k < len(rest):
        tok = rest[k]
        name = tok.split("=", 1)[0]
        if name in _MIXING_FLAGS:
            n = 0 if "=" in tok else _MIXING_FLAGS[name]
            flags.extend(rest[k : k + 1 + n])
            k += 1 + n
        else:
            values.append(tok)
            k += 1
    return ["mixing", *flags, "--", *values] if values else ["mixing", *flags]


def run(argv: Sequence[str]) -> tuple[Report, str]:
    args = build_parser().parse_args(_protect_mixing_values(list(argv)))
    fmt = args.format
    if args.command == "verify":
        report = cmd_verify(args.algebra, args.rep, args.theta)
    elif args.command == "killing":
        report = cmd_killing(args.algebra)
    elif args.command == "lagrangian":
        report = cmd_lagrangian(args.algebra, args.trace_rep, args.names, fmt, args.golden, args.allow_nonrep)
        if args.output:
            payload = (
                json.dumps(report.data, indent=2, sort_keys=True) + "\n"
                if fmt == "json"
                else report.body + "\n"
            )
            Path(args.output).write_text(payload)
            report.body = ""
            report.add("output", INFO, f"wrote {args.output}")
        if fmt == "latex":
            fmt = "text"
    elif args.command == "transform":
        report = cmd_transform(args.algebra, args.matrix, args.out)
    else:
        if args.enumerate and args.values:
            raise CliError("give either four scalars or --enumerate, not both")
        if not args.enumerate and not args.values:
            raise CliError("give four scalars or --enumerate")
        report = cmd_mixing(args.values, args.enumerate)
    return report, fmt


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        report, fmt = run(argv)
        text = report.render(fmt, color=use_color() and fmt != "json")
    except CliError as exc:
        print(f"liegauge: error: {exc}", file=sys.stderr)
        return 2
    except (DimensionError, AntisymmetryError, ScalarSyntaxError) as exc:
        print(f"liegauge: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
