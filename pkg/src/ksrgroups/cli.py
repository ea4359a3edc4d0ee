"""Command-line front end.

Exit codes: 0 computed or verified, 1 verification failure, 2 input error.
Set ``RGROUP_CACHE_DIR`` to cache rendered output keyed by the canonical input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, catalogue, serialize
from .character import (enumerate_characters_upto, make_character, parse_character,
                        restriction_data, derived_sublattice)
from .oracle import ORACLE_CAP, compare
from .rgroup import (NonAbelianRGroupError, QParameters, RGroupResult, compute_rgroup,
                     verify_restriction_sequence)
from .root_datum import CartanType, InvalidInput, LatticeSpec, RootDatum, build_root_datum, \
    build_root_system
from .sweep import KEYS_SWEEP, atlas, attained_structures, classify, lattice_choices, \
    render_markdown
from .transfer import QUOTIENT_NOTE, verify_transfer_catalogue_entry, verify_transfer_sequence, \
    load_transfer_datum
from .weyl import WeylOrderExceeded

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

ORACLE_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5",
                "G2", "F4")


class Outcome:
    """Rendered text plus exit code, so that caching and printing stay in one place."""

    def __init__(self, text: str, code: int = EXIT_OK):
        self.text = text if text.endswith("\n") else text + "\n"
        self.code = code


# -- argument adapters ----------------------------------------------------------------

def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _cartan_type(args) -> CartanType:
    text = args.type.strip().upper()
    if args.rank is not None:
        text = f"{text[0]}{args.rank}"
    return CartanType.parse(text)


def _lattice_spec(t: CartanType, choice: str, central: int) -> LatticeSpec:
    specs = dict(lattice_choices(t, central))
    if choice in specs:
        return specs[choice]
    if choice in ("weight", "root"):
        return LatticeSpec(choice, (), central)
    if Path(choice).suffix == ".json" or Path(choice).exists():
        doc = _load_json(choice)
        gens = doc["generators"] if isinstance(doc, dict) else doc
        return serialize.parse_lattice({"generators": gens}, central)
    raise InvalidInput(f"unknown lattice {choice!r}: use sc, ad, int<k> or a generators file")


def _datum(args) -> RootDatum:
    if getattr(args, "datum", None):
        return serialize.parse_datum(_load_json(args.datum))
    if not args.type:
        raise InvalidInput("give --type (and --rank) or --datum FILE")
    t = _cartan_type(args)
    return build_root_datum(build_root_system(t),
                            _lattice_spec(t, args.lattice, args.central_rank))


def _q(datum: RootDatum, path: str | None) -> QParameters:
    if not path:
        return QParameters()
    return QParameters.parse(datum.root_system, _load_json(path))


def _q_branches(name: str) -> tuple[QParameters, ...]:
    return {"default": (QParameters(),), "false": (QParameters.all_false(),),
            "both": (QParameters(), QParameters.all_false())}[name]


def _sweep(text: str | None) -> tuple[tuple[str, int], ...]:
    if not text:
        return KEYS_SWEEP
    out = []
    for part in text.split(","):
        name, _, bound = part.partition(":")
        out.append((str(CartanType.parse(name)), int(bound or 6)))
    return tuple(out)


# -- renderers ------------------------------------------------------------------------

def render_result(res: RGroupResult, fmt: str) -> str:
    doc = res.to_doc()
    if fmt == "json":
        return serialize.dumps(doc)
    dp = ", ".join("(" + ",".join(map(str, a)) + ")" for a in doc["delta_prime"]) or "none"
    rows = [
        ("datum", doc["datum"]),
        ("character", doc["character"]),
        ("|W(chi)|", doc["W_chi_order"]),
        ("W(chi) generators", ", ".join(doc["W_chi_generators"]) or "1"),
        ("Delta'", dp),
        ("|W-circle|", f"{doc['W_circ_order']} ({doc['W_circ_type']})"),
        ("R", str(res.structure)),
        ("R elements", ", ".join(doc["R_elements"])),
        ("dim of commuting algebra", doc["commuting_algebra_dim"]),
    ]
    lines = ["| quantity | value |", "|---|---|"]
    lines += [f"| {k} | {v} |" for k, v in rows]
    return "\n".join(lines)


def _render_classification(entries, fmt: str, title: str) -> str:
    if fmt == "json":
        return serialize.dumps({
            "attained": attained_structures(entries),
            "entries": [e.to_doc() for e in entries],
            "keys_check": all(e.keys_pass for e in entries),
        })
    return render_markdown(entries, title)


# -- commands -------------------------------------------------------------------------

def cmd_compute(args) -> Outcome:
    datum = _datum(args)
    q = _q(datum, args.q)
    tors = [int(v) for v in args.tors.split(",")] if args.tors else 0
    chi = make_character(datum, args.char, tors)
    res = compute_rgroup(datum, chi, q, strategy=args.strategy)
    return Outcome(render_result(res, args.format))


def cmd_classify(args) -> Outcome:
    t = _cartan_type(args)
    spec = _lattice_spec(t, args.lattice, args.central_rank)
    entries = classify(t, args.lattice, args.max_denominator, _q_branches(args.q_branches),
                       spec=spec)
    text = _render_classification(entries, args.format,
                                  f"{t}, lattice {args.lattice}, denominators <= "
                                  f"{args.max_denominator}")
    return Outcome(text, EXIT_OK if all(e.keys_pass for e in entries) else EXIT_FAIL)


def _restriction_config(ref: str) -> dict:
    if ref in catalogue.RESTRICTIONS:
        return dict(catalogue.RESTRICTIONS[ref], name=ref)
    doc = _load_json(ref)
    if not isinstance(doc, dict) or "datum" not in doc:
        raise InvalidInput("restriction config needs a 'datum' entry")
    return doc


def _verify_restriction(args) -> Outcome:
    cfg = _restriction_config(args.config)
    datum = serialize.parse_datum(cfg["datum"])
    sub = cfg.get("sublattice", "derived")
    rows = derived_sublattice(datum) if sub == "derived" else sub
    res = restriction_data(datum, rows)
    q = QParameters.parse(datum.root_system, cfg.get("q"))
    if args.char is not None:
        chars = [parse_character(datum, args.char)]
    elif cfg.get("character") and not args.all:
        chars = [parse_character(datum, cfg["character"])]
    else:
        chars = enumerate_characters_upto(datum, args.max_denominator)
    reports = [verify_restriction_sequence(datum, res, chi, q) for chi in chars]
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = serialize.dumps({"config": cfg.get("name", args.config), "passed": ok,
                                "reports": [r.to_doc() for r in reports]})
    else:
        lines = [f"# restriction {cfg.get('name', args.config)}", "",
                 "| character | restricted | sequence | checks |", "|---|---|---|---|"]
        for r in reports:
            verdict = " ".join(f"{name.split()[0]}={'pass' if good else 'FAIL'}"
                               for name, good, _ in r.checks)
            lines.append(f"| {r.character.label} | {r.restricted.label} | "
                         f"{r.sequence_line} | {verdict} |")
        lines += ["", f"overall: {'pass' if ok else 'FAIL'}"]
        text = "\n".join(lines)
    return Outcome(text, EXIT_OK if ok else EXIT_FAIL)


def _verify_transfer(args) -> Outcome:
    ref = args.config
    if ref in catalogue.CATALOGUE or ref.startswith("identity-"):
        td = catalogue.get_transfer(ref)
    else:
        td = load_transfer_datum(_load_json(ref))
    collisions: tuple = ()
    if args.char is not None:
        reports = [verify_transfer_sequence(td, parse_character(td.source, args.char))]
    else:
        cv = verify_transfer_catalogue_entry(td, args.max_denominator)
        reports, collisions = list(cv.reports), cv.collisions
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = serialize.dumps({"datum": td.name, "passed": ok,
                                "collisions": [list(c) for c in collisions],
                                "reports": [r.to_doc() for r in reports]})
    else:
        lines = [f"# transfer {td.name}", "",
                 "| character | image | sequence | inclusions | quotient in table |",
                 "|---|---|---|---|---|"]
        for r in reports:
            inc = "pass" if all(g for _, g in r.inclusions) else "FAIL"
            lines.append(f"| {r.character.label} | {r.transferred.label} | {r.sequence_line} | "
                         f"{inc} | {'pass' if r.table_check else 'FAIL'} |")
        lines += ["", f"note: {QUOTIENT_NOTE}"]
        for c in collisions:
            lines.append(f"collision in target: {', '.join(c)}")
        lines.append(f"overall: {'pass' if ok else 'FAIL'}")
        text = "\n".join(lines)
    return Outcome(text, EXIT_OK if ok else EXIT_FAIL)


def cmd_verify(args) -> Outcome:
    return _verify_restriction(args) if args.kind == "restriction" else _verify_transfer(args)


def cmd_oracle(args) -> Outcome:
    types = [str(CartanType.parse(t)) for t in args.types.split(",")] if args.types \
        else list(ORACLE_TYPES)
    qs = _q_branches(args.q_branches)
    reports = []
    for name in types:
        t = CartanType.parse(name)
        rs = build_root_system(t)
        if rs.weyl_order > args.cap:
            raise InvalidInput(f"{t}: |W| = {rs.weyl_order} exceeds the oracle cap {args.cap}")
        for lattice in args.lattices.split(","):
            datum = build_root_datum(rs, _lattice_spec(t, lattice, 0))
            for chi in enumerate_characters_upto(datum, args.max_denominator):
                for q in qs:
                    case = f"{t}:{lattice}:{chi.label}:{'q1' if q.is_default else 'q0'}"
                    reports.append(compare(datum, chi, q, case, args.cap))
    bad = [r for r in reports if not r.agree]
    if args.format == "json":
        text = "\n".join(r.to_json() for r in reports)
    else:
        lines = [f"oracle cases: {len(reports)}", f"mismatches: {len(bad)}"]
        lines += [f"MISMATCH {r.case_id}" for r in bad]
        text = "\n".join(lines)
    return Outcome(text, EXIT_FAIL if bad else EXIT_OK)


def cmd_atlas(args) -> Outcome:
    entries = atlas(_sweep(args.sweep), args.all_lattices, _q_branches(args.q_branches),
                    jobs=args.jobs)
    text = _render_classification(entries, args.format, "R-group atlas")
    return Outcome(text, EXIT_OK if all(e.keys_pass for e in entries) else EXIT_FAIL)


# -- parser ---------------------------------------------------------------------------

def _datum_flags(p: argparse.ArgumentParser, datum_file: bool = True) -> None:
    p.add_argument("--type", help="Cartan series (A..G) or full type such as D4")
    p.add_argument("--rank", type=int, help="rank, when --type is a bare series letter")
    p.add_argument("--lattice", default="sc",
                   help="sc, ad, int<k> (intermediate lattices) or a JSON generators file")
    p.add_argument("--central-rank", type=int, default=0, help="rank of the central torus")
    if datum_file:
        p.add_argument("--datum", help="root datum JSON file (overrides --type/--lattice)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksrgroups",
                                     description="Knapp-Stein R-groups of weakly unramified "
                                                 "characters")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="R-group of a single character")
    _datum_flags(p)
    p.add_argument("--char", help='character coordinates, e.g. "1/2,0"')
    p.add_argument("--tors", help="torsion character, comma separated")
    p.add_argument("--q", help="JSON file of q-flags, e.g. {\"long\": false}")
    p.add_argument("--strategy", choices=("alcove", "brute"), default="alcove")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_compute, cacheable=True)

    p = sub.add_parser("classify", help="all orbit representatives up to a denominator")
    _datum_flags(p, datum_file=False)
    p.add_argument("--max-denominator", type=int, default=6)
    p.add_argument("--q-branches", choices=("default", "false", "both"), default="default")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_classify, cacheable=True)

    p = sub.add_parser("verify", help="check the restriction or transfer exact sequence")
    p.add_argument("kind", choices=("restriction", "transfer"))
    p.add_argument("config", help="built-in name or JSON config file")
    p.add_argument("--char", help="verify a single source character")
    p.add_argument("--all", action="store_true",
                   help="sweep all characters even if the config names one")
    p.add_argument("--max-denominator", type=int, default=6)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_verify, cacheable=True)

    p = sub.add_parser("oracle", help="compare the fast path with brute force")
    p.add_argument("--types", help="comma separated types (default: all small types)")
    p.add_argument("--lattices", default="sc,ad")
    p.add_argument("--max-denominator", type=int, default=3)
    p.add_argument("--q-branches", choices=("default", "false", "both"), default="both")
    p.add_argument("--cap", type=int, default=ORACLE_CAP)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_oracle, cacheable=False)

    p = sub.add_parser("atlas", help="classification sweep rendered as tables")
    p.add_argument("--sweep", help='e.g. "A1:12,D4:6" (default: the full keys sweep)')
    p.add_argument("--all-lattices", action="store_true")
    p.add_argument("--q-branches", choices=("default", "false", "both"), default="default")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_atlas, cacheable=True)
    return parser


# -- caching --------------------------------------------------------------------------

_FILE_ARGS = ("datum", "q", "config", "lattice")


def _cache_path(args) -> Path | None:
    root = os.environ.get("RGROUP_CACHE_DIR")
    if not root or not args.cacheable:
        return None
    doc = {k: v for k, v in sorted(vars(args).items())
           if k not in ("func", "cacheable", "jobs")}
    # key on file contents, not names
    for k in _FILE_ARGS:
        v = doc.get(k)
        if isinstance(v, str) and Path(v).is_file():
            doc[k] = Path(v).read_text()
    return Path(root) / f"{serialize.cache_key(__version__, doc)}.out"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cache = _cache_path(args)
        if cache is not None and cache.is_file():
            sys.stdout.write(cache.read_text())
            return EXIT_OK
        outcome = args.func(args)
    except (InvalidInput, WeylOrderExceeded, ValueError, KeyError) as exc:
        print(f"ksrgroups: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonAbelianRGroupError as exc:
        print(f"ksrgroups: verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(outcome.text)
    if cache is not None and outcome.code == EXIT_OK:
        cache.parent.mkdir(parents=True, exist_ok=True)
        cache.write_text(outcome.text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
