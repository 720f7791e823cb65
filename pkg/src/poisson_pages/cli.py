"""Command-line front end.

    poisson-pages check      [--catalog NAME | --spec FILE]   (stdin if neither)
    poisson-pages pages      ... --lambda standard|zero|sample|FILE --r-max R
    poisson-pages cohomology ...
    poisson-pages degeneracy ...
    poisson-pages catalog emit NAME [--n N --m M]
    poisson-pages catalog list

Exit codes: 0 ok, 2 validation failure or non-Poisson bivector, 3 schema
error, 4 internal inconsistency (E_infinity does not match total cohomology).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO

from . import catalog, specfile, spectral
from .algebra import ComplexifiedAlgebra, RealLieAlgebraSpec, complexify, validate
from .calculus import PoissonCandidate, check_holomorphic_poisson
from .errors import NotPoisson, SchemaError, ValidationFailure
from .exterior import SparseElement

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA, EXIT_INCONSISTENT = 0, 2, 3, 4
SEED_ENV = "POISSON_PAGES_SEED"


@dataclass
class RunConfig:
    command: str
    catalog: Optional[str] = None
    spec_path: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    lam: str = "standard"
    seed: int = 0
    count: int = 3
    r_max: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "json"
    jobs: int = 1


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input


def load_spec(cfg: RunConfig, stdin: Optional[TextIO] = None) -> RealLieAlgebraSpec:
    if cfg.catalog:
        try:
            return catalog.by_name(cfg.catalog, cfg.n, cfg.m).spec
        except KeyError as exc:
            raise SchemaError(str(exc.args[0])) from exc
    if cfg.spec_path:
        try:
            with open(cfg.spec_path, encoding="utf-8") as fh:
                return specfile.loads(fh.read())
        except OSError as exc:
            raise SchemaError(f"cannot read {cfg.spec_path}: {exc}") from exc
    return specfile.loads((stdin or sys.stdin).read())


def load_lambdas(cfg: RunConfig, alg: ComplexifiedAlgebra) -> List[PoissonCandidate]:
    src = cfg.lam
    if src == "zero":
        return [check_holomorphic_poisson(alg, SparseElement("A", alg.n, (2, 0)))]
    if src == "standard":
        lam = catalog.standard_lambda(alg)
        if lam is None:
            raise _Fail(EXIT_INVALID, f"{alg.name} has no standard bivector W ^ T")
        return [check_holomorphic_poisson(alg, lam)]
    if src == "sample":
        return catalog.sample_poisson(alg, cfg.count, cfg.seed)
    try:
        with open(src, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {src}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {src}: {exc}") from exc
    lam = SparseElement.from_json(doc, side="A", n=alg.n)
    if lam.side != "A" or lam.n != alg.n or (lam.terms and lam.bidegree != (2, 0)):
        raise SchemaError("lambda must be an A-side (2,0) element of the algebra")
    return [check_holomorphic_poisson(alg, lam)]


# ---------------------------------------------------------------------------
# commands


def _complexified(spec: RealLieAlgebraSpec) -> ComplexifiedAlgebra:
    rep = validate(spec)
    if not rep.ok:
        raise _Fail(EXIT_INVALID, "validation failed: " + ", ".join(rep.failures))
    return complexify(spec)


def _one_run(args) -> dict:
    spec_text, lam_doc, command, r_max = args
    spec = specfile.loads(spec_text)
    alg = complexify(spec)
    lam = SparseElement.from_json(lam_doc)
    cand = check_holomorphic_poisson(alg, lam)
    if not cand.ok:
        raise NotPoisson(f"bivector is not holomorphic Poisson "
                         f"(holomorphic={cand.is_holomorphic}, poisson={cand.is_poisson})")
    dc = spectral.build(alg, cand)
    if command == "pages":
        return spectral.report(dc, r_max if r_max is not None else 2 * alg.n + 1, spec.name)
    doc = {"algebra": spec.name, "lambda": lam_doc}
    if command == "cohomology":
        doc["total_cohomology"] = spectral.total_cohomology(dc)
    else:
        doc["degeneracy_page"] = spectral.degeneracy_page(dc)
    return doc


def run(cfg: RunConfig, stdin: Optional[TextIO] = None) -> (int, dict):
    """Execute ``cfg``; returns (exit code, report document)."""
    try:
        if cfg.command == "emit":
            entry = catalog.by_name(cfg.catalog, cfg.n, cfg.m)
            return EXIT_OK, specfile.spec_to_json(entry.spec)
        if cfg.command == "list":
            return EXIT_OK, {"catalog": list(catalog.NAMES)}
        spec = load_spec(cfg, stdin)
        if cfg.command == "check":
            rep = validate(spec)
            doc = {"algebra": spec.name, "validation": rep.to_json()}
            if not rep.ok:
                return EXIT_INVALID, doc
            alg = complexify(spec)
            doc["complexified"] = alg.to_json()
            return EXIT_OK, doc
        alg = _complexified(spec)
        cands = load_lambdas(cfg, alg)
        for c in cands:
            if not c.ok:
                raise NotPoisson(f"bivector is not holomorphic Poisson "
                                 f"(holomorphic={c.is_holomorphic}, poisson={c.is_poisson})")
        text = specfile.dumps(spec)
        jobs = [(text, c.lam.to_json(), cfg.command, cfg.r_max) for c in cands]
        if cfg.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                runs = list(pool.map(_one_run, jobs))
        else:
            runs = [_one_run(j) for j in jobs]
        doc = runs[0] if len(runs) == 1 else {"algebra": spec.name, "runs": runs}
        if any(not r.get("checks", {}).get("einfty_consistency", True) for r in runs):
            return EXIT_INCONSISTENT, doc
        return EXIT_OK, doc
    except _Fail as exc:
        return exc.code, {"error": str(exc)}
    except SchemaError as exc:
        return EXIT_SCHEMA, {"error": f"schema error: {exc}"}
    except (ValidationFailure, NotPoisson) as exc:
        return EXIT_INVALID, {"error": f"{type(exc).__name__}: {exc}"}


# ---------------------------------------------------------------------------
# output


def _grid_lines(entries: Sequence[dict], n: int) -> List[str]:
    dims = {(e["p"], e["q"]): e["dim"] for e in entries}
    width = max([len(str(d)) for d in dims.values()] + [1])
    lines = []
    for q in range(n, -1, -1):
        row = " ".join(str(dims.get((p, q), 0)).rjust(width) for p in range(n + 1))
        lines.append(f"  q={q} | {row}")
    lines.append("        " + "-" * (len(lines[-1]) - 8))
    lines.append("    p=   " + " ".join(str(p).rjust(width) for p in range(n + 1)))
    return lines


def render_table(report: dict) -> str:
    """Plain-text grids of dim E_r^{p,q}: rows q descending, columns p ascending."""
    if "runs" in report:
        return "\n\n".join(render_table(r) for r in report["runs"]) + "\n"
    if "error" in report:
        return f"error: {report['error']}\n"
    if "validation" in report:
        v = report["validation"]
        lines = [f"algebra {report['algebra']}"]
        lines += [f"  {k}: {v[k]}" for k in ("ok", "jacobi", "j_squared_minus_identity", "integrable",
                                             "abelian_J", "parallelizable", "nil_step", "center_dim")]
        return "\n".join(lines) + "\n"
    lines = [f"algebra {report.get('algebra', '')}"]
    pages = report.get("pages", [])
    if pages:
        n = max(max(e["p"] for e in pg["entries"]) for pg in pages)
        for pg in pages:
            lines.append(f"E_{pg['r']}:")
            lines.extend(_grid_lines(pg["entries"], n))
            if pg["d_nonzero"]:
                lines.append("  d_{} nonzero at ".format(pg["r"]) +
                             ", ".join(f"({d['p']},{d['q']}) rank {d['rank']}" for d in pg["d_nonzero"]))
    if "degeneracy_page" in report:
        lines.append(f"degeneracy page: {report['degeneracy_page']}")
    if "total_cohomology" in report:
        lines.append("total cohomology: " + " ".join(str(h) for h in report["total_cohomology"]))
    if "checks" in report:
        lines.append("checks: " + ", ".join(f"{k}={v}" for k, v in report["checks"].items()))
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str, command: str) -> str:
    if command == "emit":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "table":
        return render_table(doc)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--catalog", metavar="NAME", help="catalog algebra: " + ", ".join(catalog.NAMES))
    src.add_argument("--spec", metavar="FILE", help="algebra spec JSON (default: stdin)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--format", choices=("json", "table"), default="json")


def _add_lambda(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", default="standard", metavar="SRC",
                   help="standard | zero | sample | path to a bivector JSON")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="poisson-pages",
                                 description="Holomorphic Poisson spectral sequences of nilmanifolds.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="validate an algebra spec")
    _add_input(p)
    for name, help_ in (("pages", "compute all pages"), ("cohomology", "total cohomology"),
                        ("degeneracy", "degeneracy page")):
        p = sub.add_parser(name, help=help_)
        _add_input(p)
        _add_lambda(p)
    cat = sub.add_parser("catalog", help="catalog algebras")
    csub = cat.add_subparsers(dest="action", required=True)
    emit = csub.add_parser("emit", help="write the spec JSON of a catalog algebra")
    emit.add_argument("name", choices=catalog.NAMES)
    emit.add_argument("--n", type=int)
    emit.add_argument("--m", type=int)
    emit.add_argument("--out", metavar="FILE")
    csub.add_parser("list", help="list catalog names")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "catalog":
        return RunConfig(command=ns.action, catalog=getattr(ns, "name", None),
                         n=getattr(ns, "n", None), m=getattr(ns, "m", None),
                         out=getattr(ns, "out", None))
    seed = getattr(ns, "seed", None)
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return RunConfig(command=ns.command, catalog=ns.catalog, spec_path=ns.spec, n=ns.n, m=ns.m,
                     lam=getattr(ns, "lam", "standard"), seed=seed, count=getattr(ns, "count", 3),
                     r_max=getattr(ns, "r_max", None), out=ns.out, fmt=ns.format,
                     jobs=getattr(ns, "jobs", 1))


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError:
        print(f"error: {SEED_ENV} must be an integer", file=sys.stderr)
        return EXIT_SCHEMA
    code, doc = run(cfg)
    text = render(doc, cfg.fmt, cfg.command)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code and "error" in doc:
        print(doc["error"], file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
