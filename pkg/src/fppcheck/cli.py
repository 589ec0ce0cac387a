"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage or configuration error.
Every option also reads an FPPCHECK_* environment variable; an explicit flag
wins over the environment, which wins over the built-in default.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .arith import InadmissiblePrimeError, ModularEmbedding, NumberFieldElement
from .corpus import (
    CorpusError,
    EquationCorpus,
    canonical_print,
    load_corpus,
    parse_corpus,
)
from .verify import (
    EXPECTED_BETTI,
    FIXED_POINTS,
    NEGATIVE_CONTROL,
    Resolution,
    VerifyConfig,
    betti_step,
    calibrate_entry,
    check_point,
    hilbert_function,
    invariance_certificate,
    run_all,
)

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
VERDICT_EXIT = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}

ENV_PREFIX = "FPPCHECK_"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass
class RunConfig:
    prime: int = 263
    root: int | None = None
    max_degree: int = 5
    max_betti: int = 3
    deep: bool = False
    corpus: str | None = None
    out: str | None = None
    format: str = "text"
    workers: int = 1

    # option name -> converter for the environment string
    ENV_FIELDS = {
        "prime": int,
        "root": int,
        "max_degree": int,
        "max_betti": int,
        "deep": _bool,
        "corpus": str,
        "out": str,
        "format": str,
        "workers": int,
    }

    @classmethod
    def resolve(cls, args: argparse.Namespace, environ: Mapping[str, str]) -> RunConfig:
        values = {}
        for name, conv in cls.ENV_FIELDS.items():
            flag = getattr(args, name, None)
            if flag is not None and flag is not False:
                values[name] = flag
                continue
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                values[name] = conv(raw)
            except ValueError as exc:
                raise UsageError(f"{ENV_PREFIX}{name.upper()}: {exc}") from None
        cfg = cls(**values)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.max_degree < 3:
            raise UsageError("--max-degree must be at least 3")
        if self.max_betti < 1:
            raise UsageError("--max-betti must be at least 1")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.format not in ("text", "structured"):
            raise UsageError(f"--format must be text or structured, not {self.format!r}")
        self.embedding()  # raises InadmissiblePrimeError

    def embedding(self) -> ModularEmbedding:
        return ModularEmbedding.for_prime(self.prime, self.root)

    def load(self) -> EquationCorpus:
        return load_corpus(self.corpus)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: RunConfig, args) -> int:
    c, e = cfg.load(), cfg.embedding()
    vc = VerifyConfig(cfg.max_degree, cfg.max_betti, cfg.deep, cfg.workers, calibrate=args.calibrate)
    report = run_all(c, e, vc)
    _emit(report.to_json() if cfg.format == "structured" else report.to_text(), cfg.out)
    return VERDICT_EXIT[report.verdict]


def cmd_corpus(cfg: RunConfig, args) -> int:
    if args.action == "import":
        if args.file:
            with open(args.file, encoding="utf-8") as fh:
                source = fh.read()
        else:
            source = sys.stdin.read()
        c = parse_corpus(source, expected=None)
        _emit(c.fingerprint() + "\n", cfg.out)
        return EXIT_PASS
    c = cfg.load()
    if args.action == "fingerprint":
        _emit(c.fingerprint() + "\n", cfg.out)
    elif args.action == "print":
        _emit(canonical_print(c), cfg.out)
    elif args.action == "export":
        target = args.file or cfg.out
        if not target:
            raise UsageError("corpus export needs --file")
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(canonical_print(c))
    return EXIT_PASS


def _parse_candidates(text: str) -> list[NumberFieldElement]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(NumberFieldElement.parse(part))
        except ValueError as exc:
            raise UsageError(f"bad candidate {part!r}: {exc}") from None
    if not out:
        raise UsageError("--candidates is empty")
    return out


def cmd_calibrate(cfg: RunConfig, args) -> int:
    c, e = cfg.load(), cfg.embedding()
    try:
        c[args.eq]
    except KeyError:
        raise UsageError(f"unknown entry eq {args.eq}") from None
    max_degree = args.max_degree if args.max_degree is not None else int(args.environ.get(ENV_PREFIX + "MAX_DEGREE", 4))
    if max_degree < 3:
        raise UsageError("--max-degree must be at least 3")
    candidates = _parse_candidates(args.candidates) if args.candidates else None
    try:
        results = calibrate_entry(c, args.eq, e, max_degree, candidates)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = []
    for r in results:
        lines.append(f"eq {r.entry} {r.term}: {r.status} (degrees 3..{max_degree}, p={e.p})")
        for value in r.candidates:
            hs = r.hilbert[value]
            trace = " ".join(f"h({h.degree})={h.quotient}" for h in hs)
            mark = "pass" if value in r.passing else "fail"
            cur = "  [shipped]" if value == r.current else ""
            lines.append(f"  {value!s:<16} {mark}  {trace}{cur}")
        lines.append(f"  passing: {', '.join(str(v) for v in r.passing) or '(none)'}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_PASS if all(r.resolved for r in results) else EXIT_INCONCLUSIVE


def cmd_hilbert(cfg: RunConfig, args) -> int:
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    c, e = cfg.load(), cfg.embedding()
    h = hilbert_function(c, args.degree, e, Resolution(c, e, workers=cfg.workers))
    status = "pass" if h.passed else "fail"
    _emit(
        f"h({h.degree}) = {h.quotient}  ambient={h.ambient} ideal={h.ideal_dim} expected={h.expected}  {status}\n",
        cfg.out,
    )
    return EXIT_PASS if h.passed else EXIT_FAIL


def cmd_betti(cfg: RunConfig, args) -> int:
    if args.step not in EXPECTED_BETTI or args.step > 4:
        raise UsageError("--step must be 1, 2, 3 or 4")
    c, e = cfg.load(), cfg.embedding()
    res = Resolution(c, e, workers=cfg.workers)
    lines, ok = [], True
    for i in range(1, args.step + 1):
        b = betti_step(c, i, e, res)
        ok = ok and b.passed
        lines.append(
            f"beta_{{{b.step},{b.degree}}} = {b.value}  expected={b.expected}"
            f"  image={b.image_rank} previous_kernel={b.previous_kernel_dim}  {'pass' if b.passed else 'fail'}"
        )
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_smooth(cfg: RunConfig, args) -> int:
    c = cfg.load()
    lines, ok = [], True
    for point in FIXED_POINTS:
        s = check_point(c, point)
        ok = ok and s.passed
        lines.append(f"{list(s.point)}: {s.status}, rank {s.jacobian_rank}, witnesses {list(s.witnesses)}")
    ctrl = check_point(c, NEGATIVE_CONTROL)
    ok = ok and not ctrl.on_variety
    lines.append(f"{list(ctrl.point)} (negative control): {ctrl.status}, nonvanishing {list(ctrl.nonvanishing)}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_invariance(cfg: RunConfig, args) -> int:
    inv = invariance_certificate(cfg.load())
    lines = [
        f"weight homogeneous: {inv.weight_homogeneous}",
        f"g3 images outside span: {list(inv.g3_outside_span)}",
        f"ord(g3) = {inv.g3_order}, ord(g7) = {inv.g7_order}, g3 g7 g3^-1 = g7^{inv.conjugation_k}",
    ]
    if inv.first_violation:
        lines.append(f"first violation: {inv.first_violation}")
    lines.append("pass" if inv.passed else "fail")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_PASS if inv.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--prime", type=int, help="admissible prime p (default 263)")
    g.add_argument("--root", type=int, help="square root of -7 mod p (default: the smaller one)")
    g.add_argument("--max-betti", type=int, help="last Betti step for verify (default 3)")
    g.add_argument("--deep", action="store_true", default=None, help="also check h(6) and Betti step 4 (minutes)")
    g.add_argument("--corpus", help="corpus file (default: embedded corpus)")
    g.add_argument("--out", help="write output here instead of stdout")
    g.add_argument("--format", choices=("text", "structured"), help="report format (default text)")
    g.add_argument("--workers", type=int, help="threads for block elimination (default 1)")
    g.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = _Parser(prog="fppcheck", description="Re-verify the 84 cubic equations of a fake projective plane.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="run the full check suite")
    p.add_argument("--max-degree", type=int, help="last Hilbert degree (default 5)")
    p.add_argument("--calibrate", action="store_true", help="also calibrate every flagged coefficient")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="print, export, import or fingerprint the corpus")
    p.add_argument("action", choices=("print", "export", "fingerprint", "import"))
    p.add_argument("--file", help="target for export, source for import (default stdin)")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("calibrate", parents=[common], help="search candidate values for flagged coefficients")
    p.add_argument("--eq", type=int, required=True, help="seed equation index")
    p.add_argument("--max-degree", type=int, help="check h(d) for d = 3..this (default 4)")
    p.add_argument("--candidates", help="comma-separated values in Q(t); write --candidates=-1-t,... when the list starts with '-'")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("hilbert", parents=[common], help="one value of the Hilbert function")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-degree", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers up to a step")
    p.add_argument("--step", type=int, required=True)
    p.add_argument("--max-degree", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_betti)

    for name, fn, text in (("smooth", cmd_smooth, "Jacobian rank at the fixed points"),
                           ("invariance", cmd_invariance, "group invariance certificate")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--max-degree", type=int, help=argparse.SUPPRESS)
        p.set_defaults(func=fn)
    return parser


def main(argv: Sequence[str] | None = None, environ: Mapping[str, str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    environ = os.environ if environ is None else environ
    args.environ = environ
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig.resolve(args, environ)
        return args.func(cfg, args)
    except (UsageError, InadmissiblePrimeError, CorpusError, OSError) as exc:
        print(f"fppcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
