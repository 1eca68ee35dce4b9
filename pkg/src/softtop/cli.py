"""Command-line interface.

Exit codes: 0 when every check passes or the property holds, 1 when a
counterexample or an expected-profile mismatch is found, 2 on input errors
(unreadable files, malformed documents, unknown flags).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .documents import (
    DocumentError,
    SpaceDocument,
    parse_document,
    parse_mapping,
    serialize_reflection,
    serialize_space,
)
from .exceptions import SoftTopologyError
from .explorer import EnumerationSpec, mine_implication, parse_implication
from .morphisms import MapProperty, map_report
from .reflection import Alpha, check_t0_alpha, compute_reflection
from .separation import Axiom, check_axiom, classify
from .soft_core import SoftSet

__all__ = ["main", "build_parser", "CorpusCheck", "verify_corpus", "verify_paper_corpus", "bundled_corpus"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Anything the user has to fix before a check can run."""


def bundled_corpus() -> Path:
    """Directory of the example documents shipped with the package."""
    return Path(str(resources.files("softtop") / "corpus"))


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path: str | Path, generate: bool = False) -> SpaceDocument:
    return parse_document(_read(path), generate)


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _split(raw: str | None, parse) -> list | None:
    if raw is None:
        return None
    try:
        return [parse(item) for item in raw.split(",") if item.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _mark(v: bool) -> str:
    return "yes" if v else "no"


# verify-corpus


@dataclass
class CorpusCheck:
    """Outcome of checking one corpus document against its recorded claims."""

    name: str
    rows: list[tuple[str, Any, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def expect(self, label: str, expected: Any, got: Any) -> None:
        self.rows.append((label, expected, got))

    @property
    def mismatches(self) -> list[tuple[str, Any, Any]]:
        return [r for r in self.rows if r[1] != r[2]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": [{"check": c, "expected": e, "got": g} for c, e, g in self.rows],
            "notes": self.notes,
        }


def _reflection_rows(check: CorpusCheck, doc: SpaceDocument, expected: dict) -> None:
    r = compute_reflection(doc.space)
    got_classes = {lbl: list(ms) for lbl, ms in zip(r.quotient.universe.points, r.classes)}
    check.expect("reflection classes", expected.get("classes"), got_classes)
    want = set()
    for name, rows in (expected.get("opens") or {}).items():
        want.add(SoftSet.from_rows(r.quotient.universe, rows).bits)
    check.expect("reflection opens", sorted(want), sorted(r.quotient.codes))


def check_document(doc: SpaceDocument) -> CorpusCheck:
    meta = doc.metadata
    check = CorpusCheck(doc.name)
    check.expect("printed family is a topology", meta.get("printed_valid", True), doc.printed.ok)
    check.notes.extend(doc.discrepancies())
    sp = doc.space
    for name, want in (meta.get("expected") or {}).items():
        check.expect(str(Axiom.parse(name)), want, check_axiom(sp, name))
    alpha_claims = meta.get("expected_alpha") or {}
    if alpha_claims:
        if not check_axiom(sp, Axiom.T0U):
            check.expect("T0U (needed for T(0,α))", True, False)
        else:
            for name, want in alpha_claims.items():
                check.expect(str(Alpha.parse(name)), want, check_t0_alpha(sp, name))
    if "expected_reflection" in meta:
        _reflection_rows(check, doc, meta["expected_reflection"])
    return check


def verify_corpus(corpus_dir: str | Path | None = None) -> list[CorpusCheck]:
    """Check every ``*.json`` document in ``corpus_dir`` (default: the
    bundled corpus) against the claims in its metadata.

    Documents whose printed family is not a topology are closed first; the
    discrepancy is kept in the notes.
    """
    root = Path(corpus_dir) if corpus_dir is not None else bundled_corpus()
    if not root.is_dir():
        raise InputError(f"{root} is not a directory")
    files = sorted(root.glob("*.json"))
    if not files:
        raise InputError(f"no .json documents in {root}")
    return [check_document(_load(f, generate=True)) for f in files]


# Name used by the documented operation list.
verify_paper_corpus = verify_corpus


# subcommands


def _cmd_classify(args) -> tuple[int, dict]:
    doc = _load(args.file, args.generate)
    axioms = _split(args.axioms, Axiom.parse)
    profile = classify(doc.space)
    shown = axioms or list(Axiom)
    expected = {str(Axiom.parse(k)): v for k, v in (doc.metadata.get("expected") or {}).items()}
    print(f"space: {doc.name or args.file}")
    for line in doc.discrepancies():
        print(f"  note: {line}")
    print(f"  {'axiom':<18} {'holds':<6} expected")
    mismatched = []
    for ax in shown:
        got = profile[ax]
        want = expected.get(ax.value)
        flag = "" if want is None else _mark(want)
        if want is not None and want != got:
            flag += "  MISMATCH"
            mismatched.append(ax.value)
        print(f"  {ax.value:<18} {_mark(got):<6} {flag}")
    for name in expected:
        if Axiom.parse(name) not in shown and expected[name] != profile[name]:
            mismatched.append(name)
    report = {
        "space": doc.name,
        "profile": {ax.value: profile[ax] for ax in shown},
        "expected": expected,
        "mismatches": mismatched,
    }
    return (EXIT_FAIL if mismatched else EXIT_OK), report


def _cmd_reflect(args) -> tuple[int, dict]:
    doc = _load(args.file, args.generate)
    try:
        r = compute_reflection(doc.space, force=args.force)
    except SoftTopologyError as exc:
        raise InputError(str(exc)) from None
    text = serialize_reflection(r)
    if args.out:
        _write(args.out, text)
    print(f"reflection of {doc.name or args.file}:")
    for label, members in zip(r.quotient.universe.points, r.classes):
        print(f"  {label} = {{{', '.join(members)}}}")
    print(f"  {len(r.quotient.codes)} opens; soft T0: {_mark(check_axiom(r.quotient, Axiom.T0))}")
    if not r.verified:
        print("  warning: source is not soft T0U; quotient built without guarantees")
    if args.out:
        print(f"written to {args.out}")
    else:
        sys.stdout.write(text)
    report = {
        "space": doc.name,
        "classes": {lbl: list(ms) for lbl, ms in zip(r.quotient.universe.points, r.classes)},
        "verified": r.verified,
        "out": args.out,
    }
    return EXIT_OK, report


def _cmd_check_map(args) -> tuple[int, dict]:
    dom = _load(args.domain, args.generate)
    cod = _load(args.codomain, args.generate)
    m = parse_mapping(_read(args.mapfile), dom.space.universe, cod.space.universe)
    props = _split(args.props, MapProperty.parse)
    rep = map_report(m, dom.space, cod.space, props, name=str(args.mapfile))
    print(f"mapping {args.mapfile}: {dom.name or args.domain} -> {cod.name or args.codomain}")
    for p, v in rep.values.items():
        line = f"  {p.value:<18} {_mark(v)}"
        res = rep.witnesses.get(p)
        if res is not None:
            names = {**dom.names, **cod.names}
            wit = ", ".join(names.get(s.bits, repr(s)) for s in res.witness)
            line += f"  ({res.reason}{': ' + wit if wit else ''})"
        print(line)
    report = {"mapping": str(args.mapfile), "properties": rep.as_dict()}
    return (EXIT_OK if all(rep.values.values()) else EXIT_FAIL), report


def _cmd_generate(args) -> tuple[int, dict]:
    doc = _load(args.file, generate=True)
    _write(args.out, serialize_space(doc.space, doc.names, doc.metadata))
    for line in doc.discrepancies():
        print(f"note: {line}")
    print(f"{len(doc.space.codes)} opens written to {args.out}")
    report = {"space": doc.name, "added": [doc.names[s.bits] for s in doc.added], "out": args.out}
    return EXIT_OK, report


def _cmd_mine(args) -> tuple[int, dict]:
    try:
        ante, cons = parse_implication(args.implication)
        if args.exhaustive:
            spec = EnumerationSpec(args.points, args.params, max_cells=args.max_cells)
        else:
            spec = EnumerationSpec.sampled(args.points, args.params, args.sample, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = mine_implication(spec, ante, cons, n_jobs=args.jobs)
    print(rep.describe())
    report = {
        "implication": args.implication,
        "status": rep.status,
        "spaces_checked": rep.spaces_checked,
        "skipped": rep.skipped,
        "witness": None,
    }
    if rep.holds:
        return EXIT_OK, report
    meta = {
        "name": rep.witness.name,
        "provenance": f"counterexample to {args.implication}",
    }
    _write(args.witness, serialize_space(rep.witness, metadata=meta))
    print(f"witness: {args.witness}")
    report["witness"] = str(args.witness)
    return EXIT_FAIL, report


def _cmd_verify_corpus(args) -> tuple[int, dict]:
    checks = verify_corpus(args.dir)
    for c in checks:
        print(f"{c.name:<12} {'PASS' if c.ok else 'FAIL'}")
        for label, want, got in c.rows:
            flag = "" if want == got else "  MISMATCH"
            if isinstance(want, bool):
                want, got = _mark(want), _mark(got)
            print(f"    {label:<30} expected {want}  got {got}{flag}")
        for note in c.notes:
            print(f"    note: {note}")
    failed = [c.name for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} documents match their claims")
    report = {"documents": [c.as_dict() for c in checks], "failed": failed}
    return (EXIT_FAIL if failed else EXIT_OK), report


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="softtop", description="Finite soft topological space checker.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--report", metavar="FILE", help="also write a JSON report here")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="decide separation axioms for a space")
    p.add_argument("file")
    p.add_argument("--axioms", help="comma-separated axioms to show (default: all)")
    p.add_argument("--generate", action="store_true", help="close the family first")
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("reflect", help="build the soft T0 reflection")
    p.add_argument("file")
    p.add_argument("--out", help="write the quotient document here")
    p.add_argument("--force", action="store_true", help="build even if the space is not T0U")
    p.add_argument("--generate", action="store_true", help="close the family first")
    p.set_defaults(run=_cmd_reflect)

    p = sub.add_parser("check-map", help="decide properties of a soft mapping")
    p.add_argument("mapfile")
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--props", help="comma-separated properties (default: all)")
    p.add_argument("--generate", action="store_true", help="close both families first")
    p.set_defaults(run=_cmd_check_map)

    p = sub.add_parser("generate", help="close a family into a soft topology")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(run=_cmd_generate)

    p = sub.add_parser("mine", help="check an implication on enumerated spaces")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--params", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="K")
    p.add_argument("--seed", type=int)
    p.add_argument("--implication", required=True, metavar="ANTE=>CONS")
    p.add_argument("--max-cells", type=int, help="raise the exhaustive size bound")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--witness", default="counterexample.json", help="where to write a witness")
    p.set_defaults(run=_cmd_mine)

    p = sub.add_parser("verify-corpus", help="check documents against their recorded claims")
    p.add_argument("dir", nargs="?", help="document directory (default: bundled corpus)")
    p.set_defaults(run=_cmd_verify_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, report = args.run(args)
    except (InputError, DocumentError, SoftTopologyError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"softtop: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    if args.report:
        report = {"command": args.command, "exit": code, **report}
        try:
            _write(args.report, json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        except InputError as exc:
            print(f"softtop: error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
