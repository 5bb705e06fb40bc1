"""Command-line front end: ``barkerlab <command> ...``.

Exit codes: 0 success / true, 1 semantic false (not Barker, certificate
rejected), 2 usage errors (bad flags, bad sequence text, out-of-scope n).
Machine-readable output goes to stdout; progress goes to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .certlab import (CertificateError, NonexistenceCertificate, certificate_range,
                      nonexistence_certificate, verify_certificate)
from .newton import power_sums_monic, power_sums_q, verify_S_pattern, verify_s_pattern
from .polycore import build_Q, from_sequence, q_structure_check
from .searchlab import (DEFAULT_CEILING, RULES, SearchError, exhaustive_search,
                        psl_search, pruned_search, range_scan)
from .seqcore import (SequenceError, autocorrelation, canonicalize,
                      identity_suite, is_barker, merit_factor, parse_sequence)


class UsageError(Exception):
    pass


class Run:
    """Collects stdout text, files written and digests for the manifest."""

    def __init__(self, argv: list[str]):
        self.argv = argv
        self.out: list[str] = []
        self.inputs: dict[str, str] = {}
        self.files: dict[str, str] = {}

    def emit(self, text: str) -> None:
        self.out.append(text if text.endswith("\n") else text + "\n")

    def read_input(self, spec: str) -> str:
        if spec == "-":
            text = sys.stdin.read()
            name = "<stdin>"
        elif spec.startswith("@"):
            path = spec[1:]
            try:
                text = Path(path).read_text()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
            name = path
        else:
            text, name = spec, "<arg>"
        self.inputs[name] = _digest(text.encode())
        return text

    def write_file(self, path: str | Path, text: str) -> None:
        Path(path).write_text(text)
        self.files[str(path)] = _digest(text.encode())


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _seq(run: Run, spec: str):
    try:
        return parse_sequence(run.read_input(spec))
    except SequenceError as exc:
        raise UsageError(str(exc)) from None


# --------------------------------------------------------------------------
# commands

def cmd_autocorr(args, run: Run) -> int:
    prof = autocorrelation(_seq(run, args.sequence))
    if args.format == "json":
        run.emit(prof.to_json())
    elif args.format == "csv":
        run.emit(prof.to_csv())
    else:
        run.emit(" ".join(str(c) for c in prof))
    return 0


def cmd_check(args, run: Run) -> int:
    s = _seq(run, args.sequence)
    barker = is_barker(s)
    suite = identity_suite(s)
    conditional = {"skew", "eq3", "eq4", "odd_structure"}
    if s.n % 2 and barker:
        suite["q_structure"] = "pass" if q_structure_check(s) else "fail"
        if s.n >= 5:
            suite["S_pattern"] = "pass" if verify_S_pattern(s) else "fail"
            suite["s_pattern"] = "pass" if verify_s_pattern(s) else "fail"
    prof = autocorrelation(s)
    if args.format == "json":
        run.emit(json.dumps({"sequence": s.to_signs(), "n": s.n, "barker": barker,
                             "profile": list(prof), "identities": suite,
                             "barker_conditional": barker}))
    else:
        run.emit(f"{s.to_signs()}  n={s.n}  {'Barker' if barker else 'not Barker'}")
        run.emit("profile: " + " ".join(str(c) for c in prof))
        for name, res in suite.items():
            tag = ""
            if name in conditional and not barker and res != "n/a":
                tag = "  (not Barker-conditional)"
            run.emit(f"  {name:16s} {res}{tag}")
    return 0 if barker else 1


def _rules(text: str | None):
    if text is None:
        return RULES
    rules = tuple(r for r in text.split(",") if r)
    bad = set(rules) - set(RULES)
    if bad:
        raise UsageError(f"unknown rules {sorted(bad)}; choose from {','.join(RULES)}")
    return rules


def cmd_search(args, run: Run) -> int:
    canonical = not args.raw
    rules = _rules(args.rules)
    if args.mode == "pruned" or (args.mode == "auto" and args.n % 2 and args.n > 21):
        rep = pruned_search(args.n, rules, canonical, args.workers, args.ceiling,
                            prefix_bits=args.prefix_bits)
    else:
        rep = exhaustive_search(args.n, canonical, args.workers, args.ceiling)
    if args.format == "json":
        run.emit(rep.to_json(timing=False))
    elif args.format == "csv":
        run.emit(rep.to_csv())
    else:
        run.emit(f"n={rep.n} mode={rep.mode} found={len(rep.found)} nodes={rep.nodes_explored}")
        for s in rep.found:
            run.emit(s.to_signs())
    _progress(f"search n={rep.n}: {rep.wall_time:.3f}s, prune stats {rep.prune_stats}")
    return 0


def cmd_scan(args, run: Run) -> int:
    if not 1 <= args.lo <= args.hi:
        raise UsageError(f"bad range {args.lo}..{args.hi}")
    rows = []
    for n in range(args.lo, args.hi + 1):
        row = range_scan(n, n, args.mode, not args.raw, args.workers, args.ceiling)[0]
        _progress(f"scan n={n}: {row.barker_count} ({row.mode}, {row.time:.2f}s)")
        rows.append(row)
    if args.format == "json":
        run.emit(json.dumps([{"n": r.n, "barker_count": r.barker_count,
                              "example": r.example, "mode": r.mode} for r in rows]))
    elif args.format == "csv":
        run.emit("n,barker_count,example,mode")
        for r in rows:
            run.emit(f"{r.n},{r.barker_count},{r.example},{r.mode}")
    else:
        run.emit(f"{'n':>3}  {'count':>5}  {'mode':10s}  example")
        for r in rows:
            run.emit(f"{r.n:>3}  {r.barker_count:>5}  {r.mode:10s}  {r.example}")
    return 0


def cmd_psl(args, run: Run) -> int:
    best, wit = psl_search(args.n, args.workers, args.ceiling)
    if args.format == "json":
        run.emit(json.dumps({"n": args.n, "min_psl": best,
                             "witnesses": [s.to_signs() for s in wit]}))
    else:
        run.emit(f"n={args.n} min_psl={best} witnesses={len(wit)}")
        for s in wit:
            run.emit(s.to_signs())
    return 0


def cmd_certificate(args, run: Run) -> int:
    if args.verify:
        text = run.read_input("@" + args.verify)
        try:
            cert = NonexistenceCertificate.from_json(text)
            ok = verify_certificate(cert)
        except CertificateError as exc:
            run.emit(f"malformed certificate: {exc}")
            return 1
        if args.n is not None and cert.n != args.n:
            run.emit(f"certificate is for n={cert.n}, expected n={args.n}")
            return 1
        run.emit(f"n={cert.n}: {'valid' if ok else 'INVALID'}")
        return 0 if ok else 1
    if args.n is None:
        raise UsageError("certificate needs n (or --verify FILE)")
    try:
        if args.n_hi is None:
            cert = nonexistence_certificate(args.n)
            text = cert.to_json(indent=1 if args.format == "text" else None)
            if args.output:
                run.write_file(args.output, text + "\n")
                run.emit(f"n={args.n}: wrote {args.output} ({len(cert)} records, "
                         f"verified={verify_certificate(cert)})")
            else:
                run.emit(text)
            return 0
        if args.n <= 13 or args.n_hi < args.n:
            raise CertificateError(f"range {args.n}..{args.n_hi} is out of certificate scope (needs odd n > 13)")
    except CertificateError as exc:
        raise UsageError(str(exc)) from None
    ok_all = True
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        for n in range(args.n, args.n_hi + 1):
            if n % 2:
                cert = nonexistence_certificate(n)
                ok = verify_certificate(cert)
                ok_all &= ok
                run.write_file(out_dir / f"certificate_{n}.json", cert.to_json() + "\n")
        run.emit(f"wrote certificates for odd n in {args.n}..{args.n_hi} to {out_dir}; all valid={ok_all}")
    else:
        for n, ok, counts in certificate_range(args.n, args.n_hi, args.workers):
            ok_all &= ok
            run.emit(json.dumps({"n": n, "valid": ok, "cases": counts}))
    return 0 if ok_all else 1


def cmd_power_sums(args, run: Run) -> int:
    s = _seq(run, args.sequence)
    negated = s.entries[0] == -1
    p_seq = s.negated() if negated else s
    count = args.count if args.count is not None else max(1, s.n - 1)
    if count < 1:
        raise UsageError("count must be >= 1")
    sp = power_sums_monic(from_sequence(p_seq), count)
    S = power_sums_q(build_Q(s), count) if s.n % 2 else None
    barker = is_barker(s) and s.n % 2 == 1 and s.n >= 5
    m = (s.n - 1) // 2
    if args.format == "json":
        doc = {"sequence": s.to_signs(), "negated": negated,
               "s": json.loads(sp.to_json()), "S": json.loads(S.to_json()) if S else None}
        run.emit(json.dumps(doc))
        return 0
    if negated:
        run.emit("(sequence negated so that P is monic)")
    for mu in range(1, count + 1):
        line = f"s_{mu} = {sp[mu]}"
        if S is not None:
            line += f"    S_{mu} = {S[mu]}"
        if barker and mu % 2 == 0 and mu <= 2 * m - 2 and sp[mu] == -1 and S[mu] == -2:
            line += "    [pattern: s=-1, S=-2]"
        run.emit(line)
    return 0


def cmd_canon(args, run: Run) -> int:
    s = _seq(run, args.sequence)
    c = canonicalize(s)
    if args.format == "json":
        mf = merit_factor(s) if s.n >= 2 else None
        run.emit(json.dumps({"sequence": s.to_signs(), "canonical": c.to_signs(),
                             "merit_factor": None if mf is None else str(mf)}))
    else:
        run.emit(c.to_signs())
    return 0


# --------------------------------------------------------------------------
# parser

def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    parser.add_argument("--manifest", metavar="PATH", default=d(None),
                        help="write a JSON run manifest to PATH")
    parser.add_argument("--workers", type=int, default=d(1))
    parser.add_argument("--seed", type=int, default=d(None),
                        help="recorded in the manifest; core algorithms are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="barkerlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    seq_help = "sequence text (+-, 01 or comma list), @file, or - for stdin"
    p = add("autocorr", cmd_autocorr, "aperiodic autocorrelation profile")
    p.add_argument("sequence", help=seq_help)
    p = add("check", cmd_check, "Barker verdict plus identity suite")
    p.add_argument("sequence", help=seq_help)
    p = add("canon", cmd_canon, "canonical form under negation/reversal/alternation")
    p.add_argument("sequence", help=seq_help)
    p = add("power-sums", cmd_power_sums, "root power sums of P and Q")
    p.add_argument("sequence", help=seq_help)
    p.add_argument("count", nargs="?", type=int)

    for name, fn, help_ in (("search", cmd_search, "find all Barker sequences of length n"),
                            ("psl", cmd_psl, "exact minimum peak sidelobe level")):
        p = add(name, fn, help_)
        p.add_argument("n", type=int)
        p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                       help="largest n allowed (raise explicitly for longer runs)")
        if name == "search":
            p.add_argument("--mode", choices=("auto", "exhaustive", "pruned"), default="auto")
            p.add_argument("--rules", help=f"comma list from {','.join(RULES)}")
            p.add_argument("--raw", action="store_true", help="report every sequence, not one per orbit")
            p.add_argument("--prefix-bits", type=int, default=0, help="shard width for pruned search")
    p = add("scan", cmd_scan, "Barker counts over a length range")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--mode", choices=("auto", "exhaustive", "pruned"), default="auto")
    p.add_argument("--raw", action="store_true")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p = add("certificate", cmd_certificate, "emit or verify nonexistence certificates")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("n_hi", type=int, nargs="?")
    p.add_argument("--verify", metavar="FILE")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--out-dir", metavar="DIR")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    run = Run(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args, run)
    except (UsageError, SearchError, CertificateError) as exc:
        print(f"barkerlab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    output = "".join(run.out)
    sys.stdout.write(output)
    sys.stdout.flush()
    if args.manifest:
        manifest = {
            "command": ["barkerlab", *argv],
            "artifact_version": __version__,
            "input_digests": run.inputs,
            "output_digests": {"stdout": _digest(output.encode()), **run.files},
            "exit_code": code,
            "seed": args.seed,
            "timing": {"wall_seconds": round(time.perf_counter() - t0, 6)},
        }
        Path(args.manifest).write_text(json.dumps(manifest, indent=1) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
