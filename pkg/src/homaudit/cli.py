"""Command-line front end.

Commands: betti, morse-check, barcode, mv-audit, pair-audit. Input is a
UTF-8 text file with one simplex per line (`v0 v1 ... vk [: value]`,
`#` starts a comment); membership files list the simplices of a subcomplex
and are closed under faces after parsing.

Exit codes: 0 success / law holds; 1 audited law violated; 2 parse error;
3 not a discrete Morse function (morse-check); 4 covering or subcomplex
hypothesis failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .complexes import (MalformedSimplexError, NotSubcomplexError, SimplicialComplex,
                        Simplex, betti_numbers, close_under_faces, is_subcomplex)
from .morse import (Filtration, MorseFunction, critical_cells, is_perfect,
                    sublevel_filtration, validate_morse)
from .persistence import barcode as compute_barcode
from .persistence import compute_persistence
from .sequences import (MODULE, ORDINARY, PERSISTENT, MayerVietorisSystem,
                        NotCoveringError, PairSystem, SequenceAudit, module_sequence,
                        ordinary_sequence, persistent_sequence)

EXIT_OK = 0
EXIT_LAW_VIOLATED = 1
EXIT_PARSE = 2
EXIT_NOT_MORSE = 3
EXIT_NOT_COVERING = 4


class ParseError(Exception):
    def __init__(self, path, line_no, message):
        self.path, self.line_no, self.message = str(path), line_no, message
        where = f"{path}:{line_no}" if line_no else str(path)
        super().__init__(f"{where}: {message}")


class InputContractError(Exception):
    """Subcomplex / covering hypotheses on the parsed inputs failed."""


def _fraction(text: str, path, line_no) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(path, line_no, f"not a rational value: {text.strip()!r}") from None


def _parse_lines(path: Path):
    """Yield (line_no, Simplex, value or None) for each content line."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file: {exc}") from None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        try:
            verts = [int(tok) for tok in head.split()]
        except ValueError:
            raise ParseError(path, line_no,
                             f"vertex ids must be integers: {head.strip()!r}") from None
        try:
            simplex = Simplex(verts)
        except MalformedSimplexError as exc:
            raise ParseError(path, line_no, str(exc)) from None
        value = _fraction(tail, path, line_no) if sep == ":" else None
        yield line_no, simplex, value


def load_complex(path: Path, strict_values: bool = False
                 ) -> tuple[SimplicialComplex, Optional[MorseFunction]]:
    """Parse a complex file; closure-added faces inherit the minimum value of
    the explicitly valued simplices containing them (strict mode rejects
    inheritance instead)."""
    explicit: dict[Simplex, Fraction] = {}
    generators: list[Simplex] = []
    for line_no, simplex, value in _parse_lines(path):
        generators.append(simplex)
        if value is not None:
            explicit[simplex] = value
    K = close_under_faces(generators)
    if not explicit:
        return K, None
    values: dict[Simplex, Fraction] = {}
    for s in K.simplices():
        if s in explicit:
            values[s] = explicit[s]
            continue
        if strict_values:
            raise ParseError(path, 0, f"strict mode: no explicit value for {tuple(s)}")
        holders = [v for g, v in explicit.items() if set(s) <= set(g)]
        if not holders:
            raise ParseError(path, 0, f"no value given or inheritable for {tuple(s)}")
        values[s] = min(holders)
    return K, MorseFunction(K, values)


def load_membership(path: Path) -> SimplicialComplex:
    """Parse a subcomplex membership file; values, if any, are ignored."""
    return close_under_faces([s for _, s, _ in _parse_lines(path)])


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _build_filtration(K: SimplicialComplex, f: Optional[MorseFunction],
                      thresholds: Optional[list[Fraction]],
                      extra_labels: list[Fraction]) -> Filtration:
    """Filtration for a command run.

    Explicit thresholds win; otherwise the critical values when f is a valid
    Morse function, else all distinct values. Any --u/--v labels are spliced
    in, so persistent groups between arbitrary sublevels stay addressable. A
    file without values yields the one-step filtration of the full complex.
    """
    if f is None:
        if thresholds or extra_labels:
            raise InputContractError("thresholds given but the complex file carries no values")
        return Filtration([Fraction(0)], [K])
    if thresholds is not None:
        base = set(thresholds)
    elif not validate_morse(K, f):
        base = {f(s) for s in critical_cells(K, f)}
    else:
        base = {v for _, v in f.items()}
    base.update(extra_labels)
    return sublevel_filtration(K, f, base)


def _parse_threshold_list(text: str) -> list[Fraction]:
    items = [tok for chunk in text.split(",") for tok in chunk.split()]
    if not items:
        raise InputContractError("empty threshold list")
    try:
        return [Fraction(tok) for tok in items]
    except (ValueError, ZeroDivisionError):
        raise InputContractError(f"thresholds must be rationals, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_betti(args) -> int:
    K, _ = load_complex(Path(args.complex), args.strict_values)
    print(" ".join(f"b{k}={b}" for k, b in enumerate(betti_numbers(K, args.field))))
    return EXIT_OK


def cmd_morse_check(args) -> int:
    K, f = load_complex(Path(args.complex), args.strict_values)
    if f is None:
        raise InputContractError("morse-check needs a complex file with values")
    violations = validate_morse(K, f)
    if violations:
        print("NOT a discrete Morse function:")
        for v in violations:
            print(f"  {v}")
        return EXIT_NOT_MORSE
    print("OK: discrete Morse function")
    crit = critical_cells(K, f)
    for k in range(K.dim + 1):
        cells = [tuple(s) for s in crit if s.dim == k]
        print(f"critical {k}-cells ({len(cells)}):"
              + ("" if not cells else " " + " ".join(map(str, cells))))
    report = is_perfect(K, f, args.field)
    verdict = "yes" if report.perfect else "no"
    print(f"perfect: {verdict} (critical counts {list(report.critical_counts)}, "
          f"betti {list(report.betti)} over F_{args.field})")
    return EXIT_OK


def cmd_barcode(args) -> int:
    K, f = load_complex(Path(args.complex), args.strict_values)
    thresholds = _parse_threshold_list(args.thresholds) if args.thresholds else None
    filt = _build_filtration(K, f, thresholds, [])
    result = compute_persistence(filt, args.field)
    degrees = [args.degree] if args.degree is not None else list(range(max(K.dim, 0) + 1))
    rows = []
    for k in degrees:
        bars = compute_barcode(result, k)
        print(f"degree {k}:" + ("" if not bars.intervals else
                                " " + " ".join(str(iv) for iv in bars)))
        rows.append({"degree": k,
                     "intervals": [{"birth": iv.birth_label, "death": iv.death_label}
                                   for iv in bars]})
    if args.json:
        _write_report(args, command="barcode",
                      inputs={"complex": Path(args.complex)},
                      extra={"degrees": rows,
                             "thresholds": [str(t) for t in filt.thresholds]})
    return EXIT_OK


_LEVELS = {"ordinary": ORDINARY, "persistent": PERSISTENT, "module": MODULE}


def _audit_positions_payload(aud: SequenceAudit) -> list[dict]:
    rows = []
    for pos in aud.positions:
        row = {"term": pos.term, "degree": pos.degree, "dim": pos.dim,
               "image_in": pos.dim_image_in, "kernel_out": pos.dim_kernel_out,
               "order2": pos.order2, "exact": pos.exact, "defect": pos.defect}
        if pos.steps is not None:
            row["steps"] = [{"step": s.step, "dim": s.dim, "image_in": s.dim_image_in,
                             "kernel_out": s.dim_kernel_out, "order2": s.order2,
                             "exact": s.exact, "defect": s.defect} for s in pos.steps]
        rows.append(row)
    return rows


def _print_audit(aud: SequenceAudit) -> None:
    for pos in aud.positions:
        flags = f"order2={'yes' if pos.order2 else 'NO'} exact={'yes' if pos.exact else 'no'}"
        print(f"  k={pos.degree} {pos.term:<6} dim={pos.dim} im={pos.dim_image_in} "
              f"ker={pos.dim_kernel_out} defect={pos.defect} {flags}")


def _run_audit(args, kind: str) -> int:
    level = _LEVELS[args.level]
    complex_path = Path(args.complex)
    K, f = load_complex(complex_path, args.strict_values)
    A = load_membership(Path(args.subspace_a))
    if not is_subcomplex(A, K):
        raise InputContractError("subspace A is not a subcomplex of the main complex")
    thresholds = _parse_threshold_list(args.thresholds) if args.thresholds else None
    extra = [Fraction(label) for label in (args.u, args.v) if label is not None]
    filt = _build_filtration(K, f, thresholds, extra)

    inputs = {"complex": complex_path, "subspace_a": Path(args.subspace_a)}
    if kind == "mayer-vietoris":
        B = load_membership(Path(args.subspace_b))
        if not is_subcomplex(B, K):
            raise InputContractError("subspace B is not a subcomplex of the main complex")
        system = MayerVietorisSystem(K, A, B, filt, args.field)
        inputs["subspace_b"] = Path(args.subspace_b)
    else:
        system = PairSystem(K, A, filt, args.field)

    payload = {"thresholds": [str(t) for t in filt.thresholds], "level": level,
               "kind": kind}
    if level == ORDINARY:
        u = filt.index_of(args.u) if args.u is not None else len(filt) - 1
        _, aud = ordinary_sequence(system, u)
        law, holds = "exact", aud.exact
        payload["u"] = str(filt.thresholds[u])
    elif level == PERSISTENT:
        if args.u is None or args.v is None:
            raise InputContractError("persistent level needs --u and --v")
        u, v = filt.index_of(args.u), filt.index_of(args.v)
        if u > v:
            raise InputContractError("--u must not exceed --v")
        _, aud = persistent_sequence(system, u, v)
        law, holds = "order-2", aud.order2
        payload["u"] = str(filt.thresholds[u])
        payload["v"] = str(filt.thresholds[v])
        if kind == "mayer-vietoris":
            spaces = {"X": system.RX, "A": system.RA, "B": system.RB, "A∩B": system.RAB}
        else:
            spaces = {"X": system.RX, "A": system.RA, "(X,A)": system.RXA}
        payload["persistent_dims"] = {
            name: [R.persistent_group(k, u, v).dim for k in range(system.top_degree + 1)]
            for name, R in spaces.items()}
        for name in spaces:
            print(f"  dim H^{{{payload['u']},{payload['v']}}}({name}) by degree: "
                  f"{payload['persistent_dims'][name]}")
    else:
        _, aud = module_sequence(system)
        law, holds = "exact", aud.exact

    print(f"{kind} sequence audit, level {level}, field F_{args.field}")
    _print_audit(aud)
    if holds:
        print(f"law ({law}): holds")
    else:
        where = ", ".join(f"(k={p.degree}, {p.term})" for p in aud.positions
                          if not (p.order2 if law == "order-2" else p.exact))
        print(f"law ({law}): VIOLATED at {where}")
    if level == PERSISTENT and holds and not aud.exact:
        defects = {f"(k={k}, {t})": d for (t, k), d in sorted(aud.defects().items())}
        print(f"note: sequence is of order 2 but not exact; defects {defects}")

    payload["verdict"] = {"law": law, "holds": holds,
                          "order2": aud.order2, "exact": aud.exact}
    payload["positions"] = _audit_positions_payload(aud)
    if args.json:
        _write_report(args, command=f"{'mv' if kind == 'mayer-vietoris' else 'pair'}-audit",
                      inputs=inputs, extra=payload)
    return EXIT_OK if holds else EXIT_LAW_VIOLATED


def cmd_mv_audit(args) -> int:
    return _run_audit(args, "mayer-vietoris")


def cmd_pair_audit(args) -> int:
    return _run_audit(args, "pair")


def _write_report(args, command: str, inputs: dict, extra: dict) -> None:
    report = dict(extra)
    report["command"] = command
    report["field"] = args.field
    report["inputs"] = {name: {"path": str(p), "sha256": _digest(p)}
                        for name, p in inputs.items()}
    report["tool"] = "homaudit"
    report["version"] = __version__
    Path(args.json).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                               encoding="utf-8")


# ---------------------------------------------------------------------------
# argument wiring

def _prime(text: str) -> int:
    from .linalg import is_prime
    value = int(text)
    if not is_prime(value) or value >= 2**31:
        raise argparse.ArgumentTypeError(f"{text} is not a prime below 2^31")
    return value


def _add_common(sub):
    sub.add_argument("complex", help="complex file")
    sub.add_argument("--field", type=_prime, default=2, metavar="P",
                     help="prime coefficient field (default 2)")
    sub.add_argument("--strict-values", action="store_true",
                     help="reject files whose closure-added faces lack explicit values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homaudit",
        description="Persistent homology and exact-sequence audits over prime fields.")
    parser.add_argument("--version", action="version", version=f"homaudit {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("betti", help="Betti numbers of a complex")
    _add_common(p)
    p.set_defaults(func=cmd_betti)

    p = subs.add_parser("morse-check", help="validate a discrete Morse function")
    _add_common(p)
    p.set_defaults(func=cmd_morse_check)

    p = subs.add_parser("barcode", help="interval decomposition of the filtration")
    _add_common(p)
    p.add_argument("--thresholds", help="comma-separated rational threshold labels")
    p.add_argument("--degree", type=int, help="restrict output to one degree")
    p.add_argument("--json", help="write a JSON report to this path")
    p.set_defaults(func=cmd_barcode)

    for name, help_text in (("mv-audit", "audit the sequence of a triad X = A ∪ B"),
                            ("pair-audit", "audit the long sequence of a pair (X, A)")):
        p = subs.add_parser(name, help=help_text)
        _add_common(p)
        p.add_argument("--subspace-a", required=True, help="membership file for A")
        if name == "mv-audit":
            p.add_argument("--subspace-b", required=True, help="membership file for B")
        p.add_argument("--u", help="sublevel label (ordinary/persistent levels)")
        p.add_argument("--v", help="second sublevel label (persistent level)")
        p.add_argument("--level", required=True, choices=sorted(_LEVELS), help="audit level")
        p.add_argument("--thresholds", help="comma-separated rational threshold labels")
        p.add_argument("--json", help="write a JSON report to this path")
        p.set_defaults(func=cmd_mv_audit if name == "mv-audit" else cmd_pair_audit)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotCoveringError, NotSubcomplexError, InputContractError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_NOT_COVERING
    except KeyError as exc:
        print(f"input error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_NOT_COVERING


if __name__ == "__main__":
    sys.exit(main())
