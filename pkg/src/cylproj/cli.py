"""Command-line front end.

Examples::

    cylproj -m model.cyl measure cb
    cylproj -m model.cyl converge e1 --dim y --max-n 3 --format csv
    cylproj -m model.cyl project e1 --dim y --strong
    cylproj -m model.cyl audit e1 --thm4 --dim y --format json

Exit status: 0 on success, 1 when ``--strict`` is given and a verdict fails,
2 on usage, parse or evaluation errors. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from .discrete import DiscreteSet
from .errors import CylprojError, ProfileOnly
from .measure import (
    FiberProfile,
    fiber_profile,
    measure_of,
    n_fold_intersection_measure,
    n_fold_union_measure,
    profile_limits,
    to_decimal,
)
from .model import ModelError, ModelFile, format_set, parse_model
from .oracle import grid_measure, materialize_n_fold, truncation_measure_discrete
from .projection import (
    FAILS,
    AuditReport,
    continuity_check,
    convergence_table,
    lemma1_audit,
    strong_co_project,
    strong_project,
    theorem4_audit,
)


class UsageError(Exception):
    pass


# value rendering

def rational_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "decimal": to_decimal(x)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _jsonable(v: Any):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return rational_to_json(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _plain(v: Any) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _table(header: list[str], rows: list[list[Any]]) -> str:
    cells = [header] + [[_plain(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    for r in rows:
        w.writerow([_plain(c) for c in r])
    return buf.getvalue().rstrip("\n")


# lookups

class _Ctx:
    def __init__(self, model: ModelFile, args):
        self.model = model
        self.args = args

    def obj(self, name: str):
        m = self.model
        for table in (m.sets, m.dsets, m.profiles):
            if name in table:
                return table[name]
        raise UsageError(f"no set, dset or profile named {name!r}")

    def base(self, obj):
        if not isinstance(obj, DiscreteSet):
            return None
        bases = self.model.bases
        if self.args.base:
            if self.args.base not in bases:
                raise UsageError(f"no base named {self.args.base!r}")
            return bases[self.args.base]
        if len(bases) == 1:
            return next(iter(bases.values()))
        if not bases:
            raise UsageError("discrete sets need a 'base' line in the model")
        raise UsageError("several bases defined; pick one with --base")

    def dim(self):
        if self.args.dim is None:
            raise UsageError("--dim is required")
        try:
            return self.model.lookup_dim(self.args.dim)
        except ModelError as e:
            raise UsageError(e.message) from None

    def fmt(self, s) -> str:
        return format_set(s, self.model)

    def measure_label(self, obj) -> str:
        return "nu" if isinstance(obj, DiscreteSet) else "lambda"


def _need_set(obj, what: str):
    if isinstance(obj, FiberProfile):
        raise ProfileOnly(f"{what} needs a set; a raw fiber profile only supports "
                          "'converge' and 'project --strong'")


# commands

def cmd_measure(ctx: _Ctx):
    name = ctx.args.name
    obj = ctx.obj(name)
    _need_set(obj, "measure")
    m = measure_of(obj, ctx.base(obj))
    fmt = ctx.args.format
    if fmt == "json":
        return json.dumps({"name": name, "measure": rational_to_json(m.exact)}), True
    if fmt == "csv":
        return _csv(["name", "exact", "decimal"], [[name, m.exact, m.decimal]]), True
    return str(m), True


def cmd_project(ctx: _Ctx):
    args = ctx.args
    obj = ctx.obj(args.name)
    if isinstance(obj, FiberProfile):
        if not args.strong:
            raise ProfileOnly("the ordinary projection of a raw fiber profile is unavailable")
        sup, inf = profile_limits(obj)
        val = inf if args.dual else sup
        label = "strong_co_projection_measure" if args.dual else "strong_projection_measure"
        if args.format == "json":
            return json.dumps({"name": args.name, label: rational_to_json(val.exact)}), True
        if args.format == "csv":
            return _csv(["name", label], [[args.name, val.exact]]), True
        return f"{label}={val}", True
    y = ctx.dim()
    base = ctx.base(obj)
    if base is not None:
        obj = base.restrict(obj)
    if args.strong:
        res = (strong_co_project if args.dual else strong_project)(obj, y, base)
    else:
        res = obj.co_cylindrify(y) if args.dual else obj.cylindrify(y)
    text = ctx.fmt(res)
    m = measure_of(res, base)
    if args.format == "json":
        return json.dumps({"name": args.name, "set": text,
                           "measure": rational_to_json(m.exact)}, ensure_ascii=False), True
    if args.format == "csv":
        return _csv(["name", "set", "measure"], [[args.name, text, m.exact]]), True
    return text, True


def cmd_converge(ctx: _Ctx):
    args = ctx.args
    obj = ctx.obj(args.name)
    y = None if isinstance(obj, FiberProfile) else ctx.dim()
    rep = convergence_table(obj, y, args.max_n, ctx.base(obj))
    lab = ctx.measure_label(obj)
    header = ["n", "union", "intersection"]
    rows = [list(r) for r in rep.rows]
    if rep.printed_rows is not None:
        header.append("printed_reading")
        for r, v in zip(rows, rep.printed_rows):
            r.append(v)
    foot = {"sup_limit": rep.sup_limit, f"{lab}_C_y": rep.ordinary_projection_measure,
            "continuity": rep.continuity_holds}
    foot2 = {"inf_limit": rep.inf_limit, f"{lab}_Cd_y": rep.ordinary_co_projection_measure}
    if args.format == "json":
        return json.dumps({"name": args.name,
                           "rows": [dict(zip(header, _jsonable(r))) for r in rows],
                           **_jsonable(foot), **_jsonable(foot2),
                           "gap_bound_at_max_n": rational_to_json(rep.gap_bound_at(args.max_n))}
                          ), True
    footer = ", ".join(f"{k}={_plain(v)}" for k, v in foot.items())
    footer2 = ", ".join(f"{k}={_plain(v)}" for k, v in foot2.items())
    body = _csv(header, rows) if args.format == "csv" else _table(header, rows)
    return f"{body}\n{footer}\n{footer2}", rep.continuity_holds is not False


def _report_out(ctx: _Ctx, rep: AuditReport):
    fmt = ctx.args.format
    witness = None if rep.witness is None else ctx.fmt(rep.witness)
    if fmt == "json":
        return json.dumps({"name": ctx.args.name, "audit": rep.name, "verdict": rep.verdict,
                           "hypothesis": _jsonable(rep.hypothesis_evaluations),
                           "conclusion": _jsonable(rep.conclusion_evaluations),
                           "witness": witness, "notes": list(rep.notes)},
                          ensure_ascii=False)
    rows = [["verdict", rep.verdict]]
    rows += [[f"hypothesis.{k}", v] for k, v in rep.hypothesis_evaluations.items()]
    rows += [[f"conclusion.{k}", v] for k, v in rep.conclusion_evaluations.items()]
    if witness is not None:
        rows.append(["witness", witness])
    rows += [["note", n] for n in rep.notes]
    if fmt == "csv":
        return _csv(["key", "value"], rows)
    return "\n".join(f"{k}: {_plain(v)}" for k, v in rows)


def cmd_check_continuity(ctx: _Ctx):
    obj = ctx.obj(ctx.args.name)
    _need_set(obj, "check-continuity")
    rep = continuity_check(obj, ctx.dim(), ctx.base(obj))
    return _report_out(ctx, rep), rep.verdict != FAILS


def cmd_audit(ctx: _Ctx):
    args = ctx.args
    obj = ctx.obj(args.name)
    _need_set(obj, "audit")
    fn = lemma1_audit if args.lemma1 else theorem4_audit
    rep = fn(obj, ctx.dim(), ctx.base(obj))
    return _report_out(ctx, rep), rep.verdict != FAILS


def cmd_oracle_diff(ctx: _Ctx):
    args = ctx.args
    obj = ctx.obj(args.name)
    _need_set(obj, "oracle-diff")
    y = ctx.dim()
    base = ctx.base(obj)
    if base is not None:
        obj = base.restrict(obj)
    prof = fiber_profile(obj, y, base)
    header = ["n", "mode", "closed_form", "materialized", "enumerated", "match"]
    rows, ok = [], True
    for n in range(1, args.max_n + 1):
        for mode, closed in (("union", n_fold_union_measure(prof, n)),
                             ("intersection", n_fold_intersection_measure(prof, n))):
            mat = materialize_n_fold(obj, y, n, mode, bound=args.bound)
            direct = measure_of(mat, base)
            try:
                if base is not None:
                    enum = truncation_measure_discrete(mat, base).exact
                else:
                    enum = grid_measure(mat).exact
            except CylprojError:
                enum = None
            match = closed == direct and (enum is None or enum == closed.exact)
            ok &= match
            rows.append([n, mode, closed.exact, direct.exact, enum, match])
    if args.format == "json":
        return json.dumps({"name": args.name,
                           "rows": [dict(zip(header, _jsonable(r))) for r in rows],
                           "all_match": ok}), ok
    body = _csv(header, rows) if args.format == "csv" else _table(header, rows)
    return body, ok


COMMANDS = {
    "measure": cmd_measure,
    "project": cmd_project,
    "converge": cmd_converge,
    "check-continuity": cmd_check_continuity,
    "audit": cmd_audit,
    "oracle-diff": cmd_oracle_diff,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cylproj",
                                description="Exact measures of projections in power measure spaces.")
    p.add_argument("-m", "--model", required=True, help="model file ('-' for stdin)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("name", help="name of a set, dset or profile in the model")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--base", help="base for discrete sets (default: the only one)")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 when a verdict fails")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("measure", parents=[common])
    pr = sub.add_parser("project", parents=[common])
    pr.add_argument("--dim")
    pr.add_argument("--strong", action="store_true", help="strong projection")
    pr.add_argument("--dual", action="store_true", help="dual (co-)projection")
    cv = sub.add_parser("converge", parents=[common])
    cv.add_argument("--dim")
    cv.add_argument("--max-n", type=int, default=8)
    cc = sub.add_parser("check-continuity", parents=[common])
    cc.add_argument("--dim")
    au = sub.add_parser("audit", parents=[common])
    which = au.add_mutually_exclusive_group(required=True)
    which.add_argument("--lemma1", action="store_true")
    which.add_argument("--thm4", action="store_true")
    au.add_argument("--dim")
    od = sub.add_parser("oracle-diff", parents=[common])
    od.add_argument("--dim")
    od.add_argument("--max-n", type=int, default=3)
    od.add_argument("--bound", type=int, default=5, help="largest n to materialize")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_n", 1) < 1:
        parser.error("--max-n must be at least 1")
    try:
        if args.model == "-":
            text = sys.stdin.read()
        else:
            with open(args.model, encoding="utf-8") as fh:
                text = fh.read()
        model = parse_model(text)
        out, ok = COMMANDS[args.command](_Ctx(model, args))
    except ModelError as e:
        print(f"{args.model}:{e}", file=sys.stderr)
        return 2
    except (UsageError, CylprojError, OSError, TypeError, ValueError) as e:
        print(f"cylproj: error: {e}", file=sys.stderr)
        return 2
    print(out)
    if args.strict and not ok:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
