"""Command line front end.

    jumploci linking --corpus three-lines
    jumploci dims --corpus hopf --char 0,1/3
    jumploci scan --corpus tangent-pair --order 4 --format json
    jumploci verify-deletion --corpus tangent-pair --order 4
    jumploci corpus [NAME]

Input comes from exactly one of --corpus NAME, --input FILE or --inline JSON.
A file or inline object may carry ``braid``, ``branches``, ``linking`` and
``presentation`` fields.  Exit status: 0 on success or a passing
verification, 1 on a failed verification, 2 on invalid input, 3 when the
evaluation budget is too small.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .braid import BraidWord, LinkingMatrix, artin_presentation, component_count, linking_matrix
from .branches import Branch, linking_matrix_from_branches
from .characters import DEFAULT_BUDGET, scan
from .corpus import CORPUS, corpus
from .deletion import DeletionScenario, verify_deletion
from .errors import BudgetExceededError, JumpLociError
from . import fox
from .fox import Presentation, TorsionCharacter

BUDGET_ENV = "JUMPLOCI_BUDGET"

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    """Invalid job input; the message names the offending field or position."""


@dataclass
class JobInput:
    name: str
    braid: BraidWord | None = None
    branches: tuple[Branch, ...] | None = None
    linking: LinkingMatrix | None = None
    presentation: Presentation | None = None

    def require_presentation(self) -> Presentation:
        if self.presentation is not None:
            return self.presentation
        if self.braid is None:
            raise InputError("input needs a 'braid' or 'presentation' field")
        return artin_presentation(self.braid)


def _field(data: dict, key: str, parse):
    if key not in data or data[key] is None:
        return None
    try:
        return parse(data[key])
    except (JumpLociError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"field '{key}': {exc}") from None


def parse_input_object(data, name: str = "input") -> JobInput:
    if not isinstance(data, dict):
        raise InputError(f"{name}: top level must be a JSON object")
    unknown = set(data) - {"name", "braid", "branches", "linking", "presentation"}
    if unknown:
        raise InputError(f"{name}: unknown field(s) {', '.join(sorted(unknown))}")
    job = JobInput(str(data.get("name", name)))
    job.braid = _field(data, "braid", BraidWord.from_json)

    def branches(items):
        out = []
        for k, item in enumerate(items):
            try:
                out.append(Branch.from_json(item))
            except (JumpLociError, ValueError, TypeError, KeyError) as exc:
                raise ValueError(f"entry {k}: {exc}") from None
        return tuple(out)

    job.branches = _field(data, "branches", branches)
    job.linking = _field(data, "linking", lambda m: LinkingMatrix(tuple(map(tuple, m))))
    job.presentation = _field(data, "presentation", Presentation.from_json)
    return job


def load_input(args) -> JobInput:
    sources = [s for s in (args.corpus, args.input, args.inline) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --corpus, --input, --inline")
    if args.corpus is not None:
        try:
            entry = corpus(args.corpus)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        return JobInput(entry.name, entry.braid, entry.branches, entry.linking)
    if args.input is not None:
        path = Path(args.input)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from None
        label = str(path)
    else:
        text, label = args.inline, "inline"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{label}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_input_object(data, label)


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV}={env!r} is not an integer") from None
    return DEFAULT_BUDGET


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_linking(args, job: JobInput) -> int:
    result: dict = {"name": job.name}
    matrices = []
    if job.braid is not None:
        result["braid"] = linking_matrix(job.braid).to_json()
        matrices.append(result["braid"])
    if job.branches is not None:
        result["branches"] = linking_matrix_from_branches(job.branches).to_json()
        matrices.append(result["branches"])
    if job.linking is not None:
        result["given"] = job.linking.to_json()
        matrices.append(result["given"])
    if not matrices:
        raise InputError("input needs a 'braid', 'branches' or 'linking' field")
    result["agree"] = all(m == matrices[0] for m in matrices)
    if args.format == "json":
        _emit(args, _json(result))
    else:
        lines = []
        for key in ("braid", "branches", "given"):
            if key in result:
                lines.append(f"# {key}")
                lines.extend(" ".join(str(x) for x in row) for row in result[key])
        lines.append(f"# agree: {str(result['agree']).lower()}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if result["agree"] else EXIT_FAILED


def cmd_dims(args, job: JobInput) -> int:
    pres = job.require_presentation()
    if not args.char:
        raise InputError("dims needs at least one --char")
    rows = []
    for text in args.char:
        try:
            t = TorsionCharacter.parse(text)
        except JumpLociError as exc:
            raise InputError(f"--char {text!r}: {exc}") from None
        rows.append((t, fox.twisted_dims(pres, t)))
    if args.format == "json":
        _emit(args, _json([{"q": t.to_json(), "h0": d.h0, "h1": d.h1, "h2": d.h2} for t, d in rows]))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"q_{i}" for i in range(1, pres.components + 1)] + ["h0", "h1", "h2"])
        for t, d in rows:
            writer.writerow(t.to_json() + list(d))
        _emit(args, buf.getvalue())
    return EXIT_OK


def _selectors(args) -> list[tuple[int, int]]:
    degrees = args.degree or [1]
    mults = args.mult or [1]
    for i in degrees:
        if i not in (0, 1, 2):
            raise InputError(f"--degree {i}: must be 0, 1 or 2")
    for k in mults:
        if k < 1:
            raise InputError(f"--mult {k}: must be at least 1")
    return [(i, k) for i in degrees for k in mults]


def cmd_scan(args, job: JobInput) -> int:
    pres = job.require_presentation()
    report = scan(
        pres, args.order, _selectors(args), budget=_budget(args), jobs=args.jobs, name=job.name
    )
    _emit(args, report.dumps() if args.format == "json" else report.to_csv())
    return EXIT_OK


def cmd_verify(args, job: JobInput) -> int:
    if job.braid is None:
        raise InputError("verify-deletion needs a 'braid' field")
    r = component_count(job.braid)
    if r < 2:
        raise InputError(f"deletion needs at least two components, the braid closes to {r}")
    deleted = tuple(args.delete or [1])
    for c in deleted:
        if not 1 <= c <= r:
            raise InputError(f"--delete {c}: components are 1..{r}")
    mults = args.mult or [1, 2]
    if any(k < 1 for k in mults):
        raise InputError("--mult must be at least 1")
    linking = job.linking
    if linking is None and job.branches is not None:
        linking = linking_matrix_from_branches(job.branches)
    scenario = DeletionScenario(job.braid, deleted, linking, job.name)
    report = verify_deletion(scenario, args.order, mults, budget=_budget(args), jobs=args.jobs)
    _emit(args, report.dumps() if args.format == "json" else report.to_csv())
    status = "pass" if report.passed else f"FAIL ({len(report.mismatches)} mismatching rows)"
    print(f"verify-deletion {job.name}: {status}", file=sys.stderr)
    return report.exit_status


def cmd_corpus(args) -> int:
    if args.name is None:
        _emit(args, "\n".join(CORPUS))
        return EXIT_OK
    try:
        entry = corpus(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    _emit(args, _json(entry.to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Twisted cohomology jump loci of plane curve germ complements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--corpus", metavar="NAME", help=f"built-in germ ({', '.join(CORPUS)})")
    src.add_argument("--input", metavar="FILE", help="JSON input file")
    src.add_argument("--inline", metavar="JSON", help="JSON input object")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--order", type=int, default=1, metavar="N", help="order bound of the torsion grid")
    common.add_argument("--degree", type=int, action="append", metavar="i")
    common.add_argument("--mult", type=int, action="append", metavar="k")
    common.add_argument("--budget", type=int, metavar="M", help=f"max evaluations (env {BUDGET_ENV})")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, metavar="J")

    sub.add_parser("linking", parents=[common], help="linking matrix from braid and/or branches")
    p = sub.add_parser("dims", parents=[common], help="twisted cohomology dims at characters")
    p.add_argument("--char", action="append", metavar="Q1,Q2,...", help="exponents, e.g. 0,1/3")
    sub.add_parser("scan", parents=[common], help="dims on the whole order-N grid")
    p = sub.add_parser("verify-deletion", parents=[common], help="check deletion-restriction")
    p.add_argument("--delete", type=int, action="append", metavar="c")
    p = sub.add_parser("corpus", help="list or show built-in germs")
    p.add_argument("name", nargs="?")
    p.add_argument("--output", metavar="FILE")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "corpus":
            return cmd_corpus(args)
        if args.order < 1:
            raise InputError(f"--order {args.order}: must be at least 1")
        if args.jobs < 1:
            raise InputError(f"--jobs {args.jobs}: must be at least 1")
        job = load_input(args)
        handler = {
            "linking": cmd_linking,
            "dims": cmd_dims,
            "scan": cmd_scan,
            "verify-deletion": cmd_verify,
        }[args.command]
        return handler(args, job)
    except InputError as exc:
        print(f"jumploci: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededError as exc:
        print(f"jumploci: refused: {exc} (required budget: {exc.required})", file=sys.stderr)
        return EXIT_BUDGET
    except JumpLociError as exc:
        print(f"jumploci: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
