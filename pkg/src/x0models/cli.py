"""Command-line front end.

Exit codes: 0 success, 1 bad usage or config, 2 invalid form, 3 forms not
independent, 4 no relation up to the degree bound, 5 a consistency check
failed.  Machine-readable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import arith
from .catalog import eta_catalog
from .config import ConfigError, ProjectConfig
from .degrees import DegreeError, degree_report
from .explorer import ExplorerError, records_csv, run_family
from .forms import Atom, Form, FormError, independent
from .relation import NoRelationError, NotIndependentError, find_min_relation

log = logging.getLogger("x0models")

EXIT_USAGE = 1
EXIT_INVALID_FORM = 2
EXIT_NOT_INDEPENDENT = 3
EXIT_NO_RELATION = 4
EXIT_CHECK_FAILED = 5


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args, text: str, name: str | None = None) -> None:
    """Print to stdout; also write to --out (a file, or a directory when ``name`` is given)."""
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if args.out:
        path = Path(args.out)
        if name is not None:
            path.mkdir(parents=True, exist_ok=True)
            path = path / name
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _load(args) -> ProjectConfig:
    if not args.config:
        raise CliExit(EXIT_USAGE, "--config is required")
    try:
        return ProjectConfig.load(args.config)
    except (OSError, ConfigError) as exc:
        raise CliExit(EXIT_USAGE, str(exc)) from None


def _form(cfg: ProjectConfig, name: str) -> Form:
    try:
        return cfg.form(name)
    except FormError as exc:
        raise CliExit(EXIT_INVALID_FORM, f"{name}: {exc}") from None
    except ConfigError as exc:
        raise CliExit(EXIT_USAGE, str(exc)) from None


def _roles(cfg: ProjectConfig) -> tuple[Form, Form, Form]:
    for r in ("f", "g", "h"):
        if r not in cfg.roles:
            raise CliExit(EXIT_USAGE, f"role {r} is not set in the config")
    forms = tuple(_form(cfg, cfg.roles[r]) for r in ("f", "g", "h"))
    for x in forms:
        if x.weight != cfg.weight:
            raise CliExit(EXIT_INVALID_FORM, f"{x.name}: weight {x.weight} differs from config weight {cfg.weight}")
    return forms


def cmd_expand(args) -> int:
    cfg = _load(args)
    form = _form(cfg, args.form)
    coeffs = form.q_expansion(args.prec).coeffs
    if args.json:
        _emit(args, json.dumps({"form": args.form, "prec": args.prec, "coeffs": [str(c) for c in coeffs]}))
    else:
        _emit(args, ", ".join(str(c) for c in coeffs))
    return 0


def cmd_relation(args) -> int:
    cfg = _load(args)
    f, g, h = _roles(cfg)
    try:
        poly, kres = find_min_relation(f, g, h, cfg.level, cfg.weight, slack=args.slack)
    except NotIndependentError as exc:
        raise CliExit(EXIT_NOT_INDEPENDENT, str(exc)) from None
    except NoRelationError as exc:
        raise CliExit(EXIT_NO_RELATION, str(exc)) from None
    log.info("P = %s (rows %d, tried %s)", poly, kres.rows, kres.history)
    _emit(args, json.dumps({"degree": poly.degree, "monomials": poly.monomial_list()}))
    return 0


def cmd_degrees(args) -> int:
    cfg = _load(args)
    f, g, h = _roles(cfg)
    try:
        rep = degree_report(f, g, h, cfg.level, cfg.weight, slack=args.slack)
    except NotIndependentError as exc:
        raise CliExit(EXIT_NOT_INDEPENDENT, str(exc)) from None
    except NoRelationError as exc:
        raise CliExit(EXIT_NO_RELATION, str(exc)) from None
    except DegreeError as exc:
        raise CliExit(EXIT_CHECK_FAILED if "violated" in str(exc) else EXIT_USAGE, str(exc)) from None
    log.info("P = %s", rep.polynomial)
    _emit(args, json.dumps(rep.to_json(), indent=2))
    if not rep.ok:
        log.error("failed checks: %s", [k for k, v in rep.checks.items() if not v])
        return EXIT_CHECK_FAILED
    return 0


def cmd_explore(args) -> int:
    cfg = _load(args)
    try:
        fam = cfg.family(seed=args.seed)
    except ConfigError as exc:
        raise CliExit(EXIT_USAGE, str(exc)) from None
    forms = {name: _form(cfg, name) for name in fam.basis}
    try:
        records, summary = run_family(fam, forms, workers=args.workers, slack=args.slack)
    except (ExplorerError, DegreeError) as exc:
        raise CliExit(EXIT_USAGE, str(exc)) from None
    payload = summary.to_json()
    generic = fam.determines_function_field and not fam.zero_constraints
    if generic:
        payload["genericity_threshold"] = str(fam.threshold)
        payload["genericity_pass"] = summary.genericity(fam.threshold)
    csv_text = records_csv(records)
    csv_path = json_path = None
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = out / "samples.csv", out / "summary.json"
    else:
        csv_path = cfg.output.get("csv")
        json_path = cfg.output.get("json")
    summary_text = json.dumps(payload, indent=2) + "\n"
    if csv_path:
        Path(csv_path).write_text(csv_text, encoding="utf-8")
        log.info("wrote %d records to %s", len(records), csv_path)
    else:
        log.info("no CSV destination (use --out or output.csv); records not written")
    if json_path:
        Path(json_path).write_text(summary_text, encoding="utf-8")
    sys.stdout.write(summary_text)
    consistent = summary.divisor_check and summary.x1_empty and summary.failures == 0
    if generic and not payload["genericity_pass"]:
        log.warning("genericity fraction %.3f below threshold %s",
                    summary.frac_birational_at_L_max, fam.threshold)
    return 0 if consistent else EXIT_CHECK_FAILED


def _valence_row(name: str, form: Form) -> tuple[list[str], bool]:
    if form.eta_only:
        e = form.eta
        total = sum(c.count * e.cusp_order(c.c) for c in arith.cusp_classes(e.level))
        expected = Fraction(form.weight * arith.index_mu(e.level), 12)
        inf_ok = form.q_expansion(int(e.infinity_order) + 1).order() == e.cusp_order(e.level)
        ok = total == expected and inf_ok
        return [name, str(form.level), str(form.weight), str(total), str(expected), "OK" if ok else "FAIL"], ok
    order = form.infinity_order()
    bound = Fraction(form.weight * arith.index_mu(form.level), 12)
    ok = order <= bound
    return [name, str(form.level), str(form.weight), f"ord_inf={order}", str(bound), "OK" if ok else "FAIL"], ok


def cmd_validate(args) -> int:
    rows = [["form", "level", "weight", "cusp_order_sum", "k*mu/12", "status"]]
    all_ok = True
    invalid = False
    if args.catalog:
        for e in eta_catalog(per_level=args.per_level):
            name = f"N{e.level}:{e}"
            row, ok = _valence_row(name, Form(e.level, e.weight, (Atom(Fraction(1), e),), name))
            rows.append(row)
            all_ok &= ok
    if args.config:
        cfg = _load(args)
        for name in cfg.forms:
            try:
                form = cfg.form(name)
            except FormError as exc:
                rows.append([name, str(cfg.level), "", "", "", f"INVALID: {exc}"])
                invalid = True
                continue
            row, ok = _valence_row(name, form)
            rows.append(row)
            all_ok &= ok
        if all(r in cfg.roles for r in ("f", "g", "h")) and not invalid:
            f, g, h = _roles(cfg)
            ok = independent([f, g, h], cfg.level, cfg.weight)
            rows.append(["roles(f,g,h)", str(cfg.level), str(cfg.weight), "", "",
                         "independent" if ok else "DEPENDENT"])
            all_ok &= ok
    if len(rows) == 1:
        raise CliExit(EXIT_USAGE, "nothing to validate: pass --config and/or --catalog")
    _emit(args, "\n".join("\t".join(r) for r in rows))
    if invalid:
        return EXIT_INVALID_FORM
    return 0 if all_ok else EXIT_CHECK_FAILED


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--config", default=default(None), help="TOML project config")
    parser.add_argument("--out", default=default(None), help="output file or directory")
    parser.add_argument("--workers", type=int, default=default(None),
                        help="explorer worker processes (default: CPU count)")
    parser.add_argument("--seed", type=int, default=default(None), help="override the explorer seed")
    parser.add_argument("--slack", type=int, default=default(8), help="extra rows beyond the Sturm bound")
    parser.add_argument("-v", "--verbose", action="count", default=default(0))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="x0models", description="Plane models of X_0(N) from modular forms.")
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expand", parents=[common], help="print q-expansion coefficients")
    sp.add_argument("form")
    sp.add_argument("--prec", type=int, default=10)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("relation", parents=[common], help="minimal polynomial P(f, g, h)")
    sp.set_defaults(func=cmd_relation)

    sp = sub.add_parser("degrees", parents=[common], help="deg C, d and eta with cross-checks")
    sp.set_defaults(func=cmd_degrees)

    sp = sub.add_parser("explore", parents=[common], help="sample a family and census the strata")
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("validate", parents=[common], help="valence and independence checks")
    sp.add_argument("--catalog", action="store_true", help="also check the built-in eta quotient catalog")
    sp.add_argument("--per-level", type=int, default=4)
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return EXIT_USAGE
    if args.workers is not None and args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
