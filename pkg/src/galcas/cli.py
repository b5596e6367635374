"""Command line front end.

Exit status: 0 when the requested check holds, 1 when a mathematical check
fails, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .algebra import AlgebraSpec, HalfInt, default_grid, dimension, jacobi_check
from .casimir import build_catalog, identity_check, pfaffian_casimir, quartic_casimir, trace_casimir
from .count import casimir_count, centerless_deficit, expected_count, z_offset
from .errors import GalcasError
from .uea import element_from_json, element_to_json
from .verify import is_central

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class CommandConfig:
    l: str | None
    d: int | None
    extended: bool = False
    seed: int = 42
    trials: int = 5
    format: str = "text"
    out: str | None = None
    k: int | None = None

    def spec(self) -> AlgebraSpec:
        if self.l is None or self.d is None:
            raise GalcasError("--l and --d are required")
        return AlgebraSpec(HalfInt.parse(self.l), self.d, self.extended)


class _Output:
    def __init__(self, config: CommandConfig):
        self.config = config
        self.lines: list[str] = []
        self.payload: dict = {}

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.config.format == "json":
            body = json.dumps(self.payload, indent=2) + "\n"
        else:
            body = "\n".join(self.lines) + "\n"
        if self.config.out:
            with open(self.config.out, "w") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _specs(config: CommandConfig) -> list[AlgebraSpec]:
    if config.l is None and config.d is None:
        return default_grid(config.extended)
    return [config.spec()]


def cmd_jacobi(config: CommandConfig) -> int:
    out = _Output(config)
    reports = []
    for spec in _specs(config):
        rep = jacobi_check(spec)
        reports.append({"spec": spec.to_json(), **rep.to_json()})
        out.text(f"jacobi [{spec}]: {'ok' if rep.ok else 'FAILED'} ({rep.triples} triples)")
        for a, b, c, residual in rep.violations[:10]:
            out.text(f"  ({a.tag}, {b.tag}, {c.tag}) -> {residual}")
    out.payload = {"reports": reports}
    out.flush()
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAIL


def cmd_casimir(config: CommandConfig, kind: str) -> int:
    spec = config.spec()
    if not spec.extended:
        raise GalcasError("Casimir elements are built in the centrally extended algebra; pass --extended")
    if kind == "quartic":
        elements = [("quartic", quartic_casimir(spec))]
    elif kind == "trace":
        k = config.k if config.k is not None else 1
        elements = [(f"trace{2 * k}", trace_casimir(k, spec))]
    elif kind == "pfaffian":
        elements = [("pfaffian", pfaffian_casimir(spec))]
    elif kind == "catalog":
        elements = build_catalog(spec).elements()
    else:
        raise GalcasError(f"unknown Casimir kind {kind!r}")
    out = _Output(config)
    ok = True
    records = []
    for name, elem in elements:
        rep = is_central(elem, spec)
        ok &= rep.central
        records.append({"name": name, "central": rep.central, **element_to_json(elem)})
        out.text(f"{name} [{spec}] ({len(elem)} terms, central: {rep.central})")
        out.text(f"  {elem}")
    out.payload = {"spec": spec.to_json(), "elements": records}
    out.flush()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(config: CommandConfig, path: str) -> int:
    spec = config.spec()
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "elements" in data:
        data = data["elements"]
    items = data if isinstance(data, list) else [data]
    out = _Output(config)
    ok = True
    reports = []
    for idx, item in enumerate(items):
        elem = element_from_json(item)
        rep = is_central(elem, spec)
        ok &= rep.central
        name = item.get("name", str(idx))
        reports.append({"name": name, **rep.to_json()})
        out.text(f"{name}: central={rep.central}")
        for g, residual in rep.witnesses:
            out.text(f"  [x, {g.tag}] = {residual}")
    out.payload = {"spec": spec.to_json(), "reports": reports}
    out.flush()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(config: CommandConfig) -> int:
    spec = config.spec()
    report = casimir_count(spec, config.trials, config.seed)
    out = _Output(config)
    payload = {"report": report.to_json()}
    out.text(f"count [{spec}] seed={report.seed} trials={report.trials}")
    out.text(f"  dim = {report.dim}")
    out.text(f"  ranks = {report.ranks}")
    out.text(f"  generic_rank = {report.generic_rank}")
    out.text(f"  invariant_count = {report.invariant_count}")
    if spec.extended:
        expected = expected_count(spec.d)
        offset = z_offset(report, spec)
        payload["expected_count"] = expected
        payload["z_offset"] = offset
        out.text(f"  expected_count(d) = {expected}")
        out.text(f"  reconciliation: invariant_count - expected_count = {offset}"
                 + (" (the central element Z)" if offset == 1 else ""))
    else:
        try:
            deficit = centerless_deficit(spec, config.trials, config.seed)
        except GalcasError as exc:
            out.text(f"  deficit: unavailable ({exc})")
        else:
            payload["deficit"] = deficit.to_json()
            out.text(f"  surviving limit invariants = {deficit.surviving}"
                     f" (independent: {deficit.independent})")
            out.text(f"  deficit = {deficit.deficit}")
    out.payload = payload
    out.flush()
    return EXIT_OK


def cmd_identity(config: CommandConfig) -> int:
    if config.l is not None:
        ls = [HalfInt.parse(config.l)]
    else:
        ls = [HalfInt(t) for t in range(1, 11)]
    out = _Output(config)
    failures = []
    checked = 0
    for l in ls:
        for t in range(-l.twice, l.twice + 1, 2):
            for n in (-1, 0, 1):
                if not -l.twice <= t + 2 * n <= l.twice:
                    continue
                checked += 1
                value = identity_check(l, HalfInt(t), n)
                if value != 0:
                    failures.append({"l": str(l), "alpha": str(HalfInt(t)), "n": n, "value": str(value)})
    out.text(f"identity: {checked} cases, {len(failures)} nonzero")
    for f in failures:
        out.text(f"  l={f['l']} alpha={f['alpha']} n={f['n']}: {f['value']}")
    out.payload = {"checked": checked, "failures": failures}
    out.flush()
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_dims(config: CommandConfig) -> int:
    out = _Output(config)
    rows = []
    for spec in _specs(config):
        rows.append({"spec": spec.to_json(), "dimension": dimension(spec)})
        out.text(f"{spec}: {dimension(spec)}")
    out.payload = {"dimensions": rows}
    out.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", help='integer or half-integer, e.g. "1/2", "3/2", "1"')
    common.add_argument("--d", type=int, help="spatial dimension")
    common.add_argument("--extended", action="store_true", help="include the central element Z")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this file")

    parser = argparse.ArgumentParser(prog="galcas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("jacobi", parents=[common], help="check the Jacobi identity")
    cas = sub.add_parser("casimir", parents=[common], help="build Casimir elements and test centrality")
    cas.add_argument("kind", choices=("quartic", "trace", "pfaffian", "catalog"))
    cas.add_argument("--k", type=int, help="trace invariant index (2k factors)")
    ver = sub.add_parser("verify", parents=[common], help="centrality report for an element JSON file")
    ver.add_argument("file")
    sub.add_parser("count", parents=[common], help="count invariants by the generic rank")
    sub.add_parser("identity", parents=[common], help="sweep the coefficient identity")
    sub.add_parser("dims", parents=[common], help="dimensions over the grid")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = CommandConfig(
        l=args.l,
        d=args.d,
        extended=args.extended,
        seed=args.seed,
        trials=args.trials,
        format=args.format,
        out=args.out,
        k=getattr(args, "k", None),
    )
    try:
        if args.command == "jacobi":
            return cmd_jacobi(config)
        if args.command == "casimir":
            return cmd_casimir(config, args.kind)
        if args.command == "verify":
            return cmd_verify(config, args.file)
        if args.command == "count":
            return cmd_count(config)
        if args.command == "identity":
            return cmd_identity(config)
        return cmd_dims(config)
    except (GalcasError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"galcas: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
