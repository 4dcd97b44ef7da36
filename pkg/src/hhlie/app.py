"""Command-line front end and report serialization.

Exit codes: 0 on success, 1 on an internal inconsistency (for instance the
oracle disagreeing with the cochain pipeline), 2 when a fired criterion
contradicts the direct computation, 3 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from .algebra import Presentation, ext_quiver_stats, format_scalar, path_str
from .corpus import FAMILIES, FamilySpec, default_corpus, gen, sweep
from .criteria import Analysis, all_criteria, check_soundness
from .errors import CriterionContradiction, HHLieError, InputError
from .fileformat import parse_file
from .oracle import compare, hh1_direct

__all__ = ["SCHEMA", "analyze", "basis_report", "hh1_report", "bracket_report",
           "sigma_report", "criteria_report", "main"]

SCHEMA = 1


class OracleMismatch(HHLieError):
    pass


def _algebra_block(ctx: Analysis) -> dict:
    ext = ext_quiver_stats(ctx.alg.pres)
    return {"name": ctx.pres.name, "field": ctx.alg.field.name, "dim": ctx.alg.dim,
            "graded": ctx.graded, "local": ctx.local,
            "ext_matrix": [list(r) for r in ext.matrix]}


def _hh1_block(ctx: Analysis) -> dict:
    sp = ctx.space
    out = {"dim": sp.dim, "rad_dim": sp.radical.dim}
    g = sp.graded
    if g is not None:
        out["graded_dims"] = {str(i): d for i, d in g.dims.items()}
    return out


def _sigma_block(ctx: Analysis) -> dict:
    return {str(i): ctx.sigma(i).labels() for i in (0, 1, 2)}


def _oracle_block(ctx: Analysis) -> dict:
    res = hh1_direct(ctx.alg)
    agree = compare(ctx.space, ctx.report, ctx.rad_report, res)
    return {"dim": res.dim, "flags": res.flags(), "agree": all(agree.values()),
            "fields": agree}


def analyze(pres: Presentation, oracle: bool = True, truncations=(2, 3)) -> dict:
    """Everything about one presentation, as a JSON-ready dict.

    Raises CriterionContradiction if a fired verdict disagrees with the direct
    computation and OracleMismatch if the oracle disagrees with the complex.
    """
    ctx = Analysis(pres)
    verdicts = all_criteria(ctx, truncations)
    check_soundness(ctx, verdicts)
    rep = {"schema": SCHEMA, "algebra": _algebra_block(ctx), "hh1": _hh1_block(ctx),
           "lie": ctx.report.to_dict(), "rad_lie": ctx.rad_report.to_dict(),
           "sigma": _sigma_block(ctx), "criteria": [v.to_dict() for v in verdicts]}
    rep["fired"] = [v.id for v in verdicts if v.fires]
    if oracle:
        rep["oracle"] = _oracle_block(ctx)
        if not rep["oracle"]["agree"]:
            bad = [k for k, ok in rep["oracle"]["fields"].items() if not ok]
            raise OracleMismatch(f"oracle disagrees on {', '.join(bad)}")
    return rep


def basis_report(pres: Presentation) -> dict:
    ctx = Analysis(pres)
    lv = ctx.alg.basis.levels
    return {"schema": SCHEMA, "algebra": _algebra_block(ctx),
            "basis": {str(i): [path_str(p) for p in ps] for i, ps in enumerate(lv)}}


def hh1_report(pres: Presentation, oracle: bool = False) -> dict:
    ctx = Analysis(pres)
    sp = ctx.space
    out = {"schema": SCHEMA, "algebra": _algebra_block(ctx), "hh1": _hh1_block(ctx)}
    out["hh1"]["ker_dim"] = sp.ker_dim
    out["hh1"]["im_dim"] = sp.im_dim
    out["hh1"]["representatives"] = [str(r) for r in sp.representatives()]
    out["hh1"]["rad_representatives"] = [str(r) for r in sp.radical.representatives]
    if oracle:
        out["oracle"] = _oracle_block(ctx)
    return out


def bracket_report(pres: Presentation) -> dict:
    ctx = Analysis(pres)
    L = ctx.lie
    table = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            t = L.table[i][j]
            if t:
                table.append({"i": i, "j": j,
                              "value": {str(k): format_scalar(c) for k, c in sorted(t.items())}})
    return {"schema": SCHEMA, "algebra": _algebra_block(ctx),
            "basis": [str(r) for r in ctx.space.representatives()], "brackets": table}


def sigma_report(pres: Presentation, i: int) -> dict:
    ctx = Analysis(pres)
    s = ctx.sigma(i)
    return {"schema": SCHEMA, "algebra": _algebra_block(ctx), "index": i,
            "sigma": s.labels(),
            "image_overlap": [f"{a}||{path_str(p)}" for a, p in s.image_overlap]}


def criteria_report(pres: Presentation, oracle: bool = False) -> dict:
    ctx = Analysis(pres)
    verdicts = all_criteria(ctx)
    check_soundness(ctx, verdicts)
    out = {"schema": SCHEMA, "algebra": _algebra_block(ctx),
           "criteria": [v.to_dict() for v in verdicts],
           "fired": [v.id for v in verdicts if v.fires]}
    if oracle:
        out["oracle"] = _oracle_block(ctx)
    return out


# --- text rendering -----------------------------------------------------------

def _text(rep: dict) -> str:
    lines = []
    a = rep.get("algebra")
    if a:
        head = a["name"] or "algebra"
        lines.append(f"{head} over {a['field']}: dim {a['dim']}, "
                     f"{'graded' if a['graded'] else 'ungraded'}"
                     f"{', local' if a['local'] else ''}")
    if "basis" in rep and isinstance(rep["basis"], dict):
        for i, ps in rep["basis"].items():
            lines.append(f"  B_{i} ({len(ps)}): {' '.join(ps)}")
    h = rep.get("hh1")
    if h:
        s = f"HH1: dim {h['dim']}, rad dim {h['rad_dim']}"
        if "graded_dims" in h:
            s += ", pieces " + " ".join(f"L_{i}={d}" for i, d in h["graded_dims"].items())
        lines.append(s)
        for k, r in enumerate(h.get("representatives", [])):
            lines.append(f"  [{k}] {r}")
    if "brackets" in rep:
        for k, r in enumerate(rep["basis"]):
            lines.append(f"  e{k} = {r}")
        for b in rep["brackets"]:
            val = " + ".join(f"{c}*e{k}" for k, c in b["value"].items())
            lines.append(f"  [e{b['i']}, e{b['j']}] = {val}")
    lie = rep.get("lie")
    if lie:
        flags = [k for k in ("solvable", "strongly_solvable", "nilpotent", "perfect", "abelian")
                 if lie[k]]
        lines.append(f"Lie: derived {lie['derived_dims']}, lcs of derived {lie['lcs_dims']}, "
                     f"center {lie['center_dim']}; {', '.join(flags) or 'no flags'}")
    if "index" in rep:
        lines.append(f"Sigma_{rep['index']}: {', '.join(rep['sigma']) or '(empty)'}")
    elif "sigma" in rep:
        for i, s in rep["sigma"].items():
            lines.append(f"Sigma_{i}: {', '.join(s) or '(empty)'}")
    for v in rep.get("criteria", []):
        state = "FIRES" if v["fires"] else ("no" if v["applicable"] else "n/a")
        w = f"  ({v['witness']})" if "witness" in v else ""
        lines.append(f"  {state:5} {v['id']} -> {v['conclusion']}{w}")
    o = rep.get("oracle")
    if o:
        lines.append(f"oracle: dim {o['dim']}, {'agrees' if o['agree'] else 'DISAGREES'}")
    return "\n".join(lines)


def _emit(rep, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(_text(rep))


# --- corpus -------------------------------------------------------------------

def _param_value(s: str):
    """``3`` -> 3, ``2:3`` -> (2, 3), ``-1/2`` stays a Fraction."""
    if ":" in s:
        return tuple(int(x) for x in s.split(":"))
    try:
        return int(s)
    except ValueError:
        try:
            return Fraction(s)
        except ValueError:
            raise InputError(f"bad parameter value {s!r}") from None


def _run_entry(args) -> tuple:
    spec, oracle = args
    try:
        rep = analyze(gen(spec), oracle=oracle)
        return spec.label, 0, rep, None
    except CriterionContradiction as e:
        return spec.label, 2, None, str(e)
    except InputError as e:
        return spec.label, 3, None, str(e)
    except HHLieError as e:
        return spec.label, 1, None, str(e)


def _corpus_specs(opts, extra: list) -> list:
    if opts.family is None:
        if extra:
            raise InputError("family parameters given without --family")
        specs = default_corpus()
        if opts.char is not None:
            chars = {int(c) for c in opts.char.split(",")}
            specs = [s for s in specs if s.char in chars]
        return specs
    fam = FAMILIES.get(opts.family)
    if fam is None:
        raise InputError(f"unknown family {opts.family!r}; try 'corpus list'")
    params: dict = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise InputError(f"unexpected argument {tok!r}")
        name = tok[2:]
        if "=" in name:
            name, val = name.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise InputError(f"missing value for --{name}")
        params[name] = [_param_value(v) for v in val.split(",")]
    unknown = [p for p in params if p not in fam.params]
    if unknown:
        raise InputError(f"{opts.family} has no parameter {unknown[0]!r}; "
                         f"parameters: {', '.join(fam.params) or 'none'}")
    chars = [int(c) for c in opts.char.split(",")] if opts.char else list(fam.chars or (0,))
    if not opts.sweep and (len(chars) > 1 or any(len(v) > 1 for v in params.values())):
        raise InputError("several values given; pass --sweep to run their product")
    rng = dict(params)
    rng["char"] = chars
    return [spec for spec, _ in sweep({opts.family: rng})]


def _corpus_run(opts, extra) -> int:
    specs = _corpus_specs(opts, extra)
    oracle = opts.oracle != "off"
    jobs = max(1, opts.jobs)
    work = [(s, oracle) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_run_entry, work))
    else:
        results = [_run_entry(w) for w in work]
    code = max((r[1] for r in results), default=0)
    if opts.format == "json":
        out = [{"entry": lbl, "status": c, "report": rep, "error": err}
               for lbl, c, rep, err in results]
        print(json.dumps({"schema": SCHEMA, "entries": out}, indent=2, sort_keys=True))
    else:
        for lbl, c, rep, err in results:
            if rep is None:
                print(f"{lbl:36} ERROR({c}) {err}")
                continue
            lie = rep["lie"]
            fired = [f for f in rep["fired"] if any(
                v["id"] == f and v["conclusion"] in ("solvable", "strongly_solvable")
                for v in rep["criteria"])]
            o = rep.get("oracle")
            print(f"{lbl:36} dim {rep['algebra']['dim']:3}  HH1 {rep['hh1']['dim']:3}  "
                  f"derived {lie['derived_dims']}  solvable={lie['solvable']}  "
                  f"strongly={lie['strongly_solvable']}  "
                  f"criteria: {', '.join(fired) or '-'}"
                  + ("" if o is None else f"  oracle {'ok' if o['agree'] else 'MISMATCH'}"))
    return code


def _corpus_list(opts) -> int:
    rows = [{"id": f.id, "params": list(f.params), "chars": list(f.chars or ()),
             "description": f.description} for f in FAMILIES.values()]
    if opts.format == "json":
        print(json.dumps({"schema": SCHEMA, "families": rows}, indent=2, sort_keys=True))
    else:
        for r in rows:
            ps = " ".join(f"--{p}" for p in r["params"])
            ch = f" [char {','.join(map(str, r['chars']))}]" if r["chars"] else ""
            print(f"{r['id']:10} {ps:16} {r['description']}{ch}")
    return 0


# --- entry point ----------------------------------------------------------------

class _ArgParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 3); 2 is reserved for contradictions."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--oracle", choices=("on", "off"), default=None,
                        help="cross-check against brute-force derivations")

    ap = _ArgParser(prog="hhlie", description="HH^1 of quiver algebras as a Lie algebra")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, hlp in [("basis", "irreducible-path basis by length"),
                      ("hh1", "dimension and representatives of HH^1"),
                      ("bracket-table", "structure constants on the HH^1 basis"),
                      ("sigma", "the sets Sigma_i"),
                      ("criteria", "evaluate the solvability criteria"),
                      ("analyze", "everything, with the oracle cross-check")]:
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("file")
        p.add_argument("--truncate", type=int, default=None, metavar="N",
                       help="work with A/J^N instead of A")
        if name == "sigma":
            p.add_argument("--i", type=int, required=True, dest="index")
    c = sub.add_parser("corpus", help="built-in families")
    csub = c.add_subparsers(dest="ccmd", required=True)
    run = csub.add_parser("run", parents=[common],
                          help="analyze corpus entries; extra --PARAM VALUE pairs select a family member")
    run.add_argument("--family")
    run.add_argument("--char", help="characteristic, or a comma list with --sweep")
    run.add_argument("--sweep", action="store_true",
                     help="run the product of comma-separated parameter values")
    run.add_argument("--jobs", type=int, default=1)
    csub.add_parser("list", parents=[common], help="list families")
    return ap


def _load(opts) -> Presentation:
    pres = parse_file(opts.file)
    if opts.truncate is not None:
        if opts.truncate < 2:
            raise InputError("--truncate must be at least 2")
        pres = pres.with_(truncation=opts.truncate)
    return pres


def _dispatch(opts, extra) -> int:
    if opts.cmd == "corpus":
        if opts.ccmd == "list":
            return _corpus_list(opts)
        return _corpus_run(opts, extra)
    if extra:
        raise InputError(f"unrecognized arguments: {' '.join(extra)}")
    pres = _load(opts)
    oracle = opts.oracle == "on"
    if opts.cmd == "basis":
        rep = basis_report(pres)
    elif opts.cmd == "hh1":
        rep = hh1_report(pres, oracle)
    elif opts.cmd == "bracket-table":
        rep = bracket_report(pres)
    elif opts.cmd == "sigma":
        rep = sigma_report(pres, opts.index)
    elif opts.cmd == "criteria":
        rep = criteria_report(pres, oracle)
    else:
        rep = analyze(pres, oracle=opts.oracle != "off")
    _emit(rep, opts.format)
    return 0


def main(argv: Optional[list] = None) -> int:
    try:
        opts, extra = _parser().parse_known_args(argv)
        if extra and not (opts.cmd == "corpus" and opts.ccmd == "run"):
            raise InputError(f"unrecognized arguments: {' '.join(extra)}")
        return _dispatch(opts, extra)
    except CriterionContradiction as e:
        print(f"hhlie: criterion contradiction: {e}", file=sys.stderr)
        return 2
    except InputError as e:
        print(f"hhlie: {e}", file=sys.stderr)
        return 3
    except HHLieError as e:
        print(f"hhlie: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
