"""Command-line front end: ``pingpong-cert certify | search | verify``.

Exit codes: 0 success, 2 negative verdict, 1 structural error, 64 usage,
65 malformed certificate, 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .casefile import BUILTIN_CASES, CaseFileError, builtin_case, load_case_file
from .errors import CertifierError, MalformedCertificate
from .pingpong.certificate import FREE_PRODUCT, Certificate, certify, dumps, verify_certificate
from .vsearch import Stage, search

EXIT_OK, EXIT_STRUCTURAL, EXIT_NEGATIVE = 0, 1, 2
EXIT_USAGE, EXIT_MALFORMED, EXIT_NOINPUT = 64, 65, 66
THREADS_ENV = "PINGPONG_CERT_THREADS"

log = logging.getLogger("pingpong_cert")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pingpong-cert", description="Exact ping-pong certificates for hypergeometric groups in Sp(6).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="certify one or all cases")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--case", type=int, choices=BUILTIN_CASES, help="built-in case number")
    src.add_argument("--spec", help="path to a case JSON file")
    src.add_argument("--all", action="store_true", help="all seven built-in cases")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")

    s = sub.add_parser("search", help="search for seed vectors v")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--case", type=int, choices=BUILTIN_CASES)
    src.add_argument("--spec")
    s.add_argument("--height", type=_nonneg_int, default=3)
    s.add_argument("--limit", type=_nonneg_int, default=10)
    s.add_argument("--include-known", action="store_true", help="try the case's own v first")
    s.add_argument("--out")

    vf = sub.add_parser("verify", help="re-check a certificate JSON file")
    vf.add_argument("path")
    return parser


def _load_spec(args, require_v: bool = True):
    if args.case is not None:
        return builtin_case(args.case)
    return load_case_file(args.spec, require_v=require_v)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def render_text(cert: Certificate) -> str:
    d = cert.derived
    lines = [
        f"case {cert.spec.id}: {cert.verdict}",
        f"  (a, d, c) = ({d.a}, {d.d}, {d.c});  p = {d.p}, epsilon = {d.epsilon:+d}, nil index of Z = {d.nil_index}",
        f"  identities: {sum(ok for _, ok in d.identities)}/{len(d.identities)} pass",
        f"  preconditions: {sum(ok for _, ok, _ in cert.preconditions)}/{len(cert.preconditions)} pass",
    ]
    for name, r in cert.conditions.items():
        if r.families:
            t = max(f.report.threshold for f in r.families)
            lines.append(
                f"  {name}: {'pass' if r.verdict else 'FAIL'}; max threshold |n| >= {t}; "
                f"{len(r.explicit_checks)} explicit j checked"
            )
        else:
            lines.append(f"  {name}: {'pass' if r.verdict else 'FAIL'} (single matrix)")
    lines.append(f"  v^T J P v = {cert.quadratic_value}")
    return "\n".join(lines) + "\n"


def _certify_builtin(n: int) -> Certificate:
    return certify(builtin_case(n))


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer") from None


def cmd_certify(args) -> int:
    if args.all:
        workers = _workers()
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                certs = list(pool.map(_certify_builtin, BUILTIN_CASES))
        else:
            certs = [_certify_builtin(n) for n in BUILTIN_CASES]
        if args.format == "text":
            text = "".join(render_text(c) for c in certs)
        else:
            text = "[" + ",".join(c.to_json() for c in certs) + "]\n"
        _write(text, args.out)
        return EXIT_OK if all(c.status == FREE_PRODUCT for c in certs) else EXIT_NEGATIVE

    cert = certify(_load_spec(args))
    _write(render_text(cert) if args.format == "text" else cert.to_json() + "\n", args.out)
    return EXIT_OK if cert.status == FREE_PRODUCT else EXIT_NEGATIVE


def cmd_search(args) -> int:
    spec = _load_spec(args, require_v=args.include_known)
    known = spec.v if args.include_known else None
    found = False
    candidates = search(spec, args.height, args.limit, known=known)
    lines = []
    for c in candidates:
        found |= c.stage_reached is Stage.CERTIFIED
        lines.append(dumps(c.to_dict()) + "\n")
    _write("".join(lines), args.out)
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        text = fh.read()
    ok = verify_certificate(text)
    print("certificate verified" if ok else "certificate REJECTED", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {"certify": cmd_certify, "search": cmd_search, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedCertificate as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (OSError, CaseFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except CertifierError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except ValueError as exc:
        # e.g. CaseSpec/HGParams precondition violations on user input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
