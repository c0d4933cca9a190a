"""Command-line front end.

Rule files hold one rule per line, ``<letter> -> <token> <token> ...``, where
a token is a declared letter optionally followed by ``'`` for its inverse.
When every letter is a single lowercase character the compact form
``a->abA`` is also accepted, uppercase meaning inverse. ``#`` starts a
comment.

Exit status: 0 success, 2 parse error, 3 invalid input or parameters
outside the hypotheses of the cited results.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ParseError, InvalidInputError, TileShapeError
from .freegroup import Alphabet, FreeEndo, reduce
from .substitution import Substitution, forces_border, is_primitive
from .verdicts import (
    PROJECTION_REASONS,
    analyze_endo,
    analyze_substitution,
    h1_presentation,
    projection_check,
    torus_minus_points,
)
from . import reasons

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

SUBSTITUTION = "substitution"
ENDOMORPHISM = "endomorphism"

Token = tuple[str, bool]  # (letter, inverse)


@dataclass(frozen=True)
class RuleFile:
    mode: str
    rules: tuple[tuple[str, tuple[Token, ...]], ...]

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(tuple(x for x, _ in self.rules))

    def to_endo(self) -> FreeEndo:
        alphabet = self.alphabet
        images = tuple(
            reduce([(alphabet.index(name), -1 if inv else 1) for name, inv in tokens])
            for _, tokens in self.rules
        )
        return FreeEndo(alphabet, images)

    def to_substitution(self) -> Substitution:
        try:
            return Substitution(self.alphabet, self.to_endo().images)
        except TileShapeError as exc:
            raise InvalidInputError(str(exc)) from exc

    def echo(self) -> dict[str, str]:
        return {
            x: " ".join(name + ("'" if inv else "") for name, inv in tokens)
            for x, tokens in self.rules
        }


def parse_rules(text: str, mode: str = SUBSTITUTION) -> RuleFile:
    if mode not in (SUBSTITUTION, ENDOMORPHISM):
        raise ValueError(f"unknown mode {mode!r}")
    lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected '<letter> -> <image>'")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        if not _IDENT.match(lhs):
            raise ParseError(f"line {lineno}: {lhs!r} is not a letter name")
        lines.append((lineno, lhs, rhs))

    declared: list[str] = []
    for lineno, lhs, _ in lines:
        if lhs in declared:
            raise ParseError(f"line {lineno}: letter {lhs!r} has two rules")
        declared.append(lhs)
    known = set(declared)
    compact = all(len(x) == 1 and x.islower() for x in declared)

    rules = []
    empty = []
    for lineno, lhs, rhs in lines:
        parts = rhs.split()
        if not parts:
            empty.append(lhs)
            rules.append((lhs, ()))
            continue
        tokens: list[Token] = []
        if compact and len(parts) == 1 and parts[0] not in known and "'" not in parts[0]:
            for ch in parts[0]:
                if ch.lower() not in known:
                    raise ParseError(f"line {lineno}: unknown letter {ch!r}")
                tokens.append((ch.lower(), ch.isupper()))
        else:
            for tok in parts:
                inverse = tok.endswith("'")
                name = tok[:-1] if inverse else tok
                if not _IDENT.match(name):
                    raise ParseError(f"line {lineno}: malformed token {tok!r}")
                if name not in known:
                    raise ParseError(f"line {lineno}: unknown letter {name!r}")
                tokens.append((name, inverse))
        rules.append((lhs, tuple(tokens)))

    if not rules:
        raise InvalidInputError("rule file declares no letters")
    if empty:
        raise InvalidInputError(f"empty image for {', '.join(empty)}")
    if mode == SUBSTITUTION:
        bad = [x for x, tokens in rules if any(inv for _, inv in tokens)]
        if bad:
            raise InvalidInputError(
                f"inverse letters in the image of {', '.join(bad)}: substitutions "
                "map letters to non-empty positive words"
            )
    return RuleFile(mode, tuple(rules))


@dataclass(frozen=True)
class ReportEnvelope:
    tool_version: str
    input: dict
    verdicts: dict
    justifications: list = field(default_factory=list)

    def to_json(self, **kwargs) -> str:
        return json.dumps(
            {
                "tool_version": self.tool_version,
                "input": self.input,
                "verdicts": self.verdicts,
                "justifications": self.justifications,
            },
            **kwargs,
        )

    @classmethod
    def from_json(cls, text: str) -> ReportEnvelope:
        data = json.loads(text)
        if set(data) != {"tool_version", "input", "verdicts", "justifications"}:
            raise ValueError(f"unexpected envelope fields {sorted(data)}")
        return cls(data["tool_version"], data["input"], data["verdicts"], data["justifications"])

    def to_text(self) -> str:
        lines = [f"tileshape {self.tool_version}: {self.input.get('command', '')}"]
        for key, value in self.input.items():
            if key != "command":
                _render(lines, key, value, 1)
        lines.append("verdicts:")
        for key, value in self.verdicts.items():
            _render(lines, key, value, 1)
        lines.append("justification:")
        for step in self.justifications:
            lines.append(f"  [{step['label']}] {step['statement']}")
        return "\n".join(lines)


def _render(lines: list[str], key, value, depth: int):
    pad = "  " * depth
    if isinstance(value, dict):
        if not value:
            lines.append(f"{pad}{key}: {{}}")
            return
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(lines, k, v, depth + 1)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(f"{pad}{key}: {json.dumps(value)}")
    elif isinstance(value, list):
        lines.append(f"{pad}{key}: [{', '.join(str(v) for v in value)}]")
    else:
        lines.append(f"{pad}{key}: {value}")


def _envelope(inp: dict, verdicts: dict, chain) -> ReportEnvelope:
    steps = [{"label": label, "statement": text} for label, text in chain]
    return ReportEnvelope(__version__, inp, verdicts, steps)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def run_sub(path: str, cap_border: int, cap_proper: int) -> ReportEnvelope:
    rules = parse_rules(_read(path), SUBSTITUTION)
    s = rules.to_substitution()
    report = analyze_substitution(s, cap_border, cap_proper)
    inp = {"command": "sub", "file": path, "rules": rules.echo(),
           "cap_border": cap_border, "cap_proper": cap_proper}
    return _envelope(inp, report.verdicts(), report.justification)


def run_endo(path: str) -> ReportEnvelope:
    rules = parse_rules(_read(path), ENDOMORPHISM)
    report = analyze_endo(rules.to_endo())
    inp = {"command": "endo", "file": path, "rules": rules.echo()}
    return _envelope(inp, report.verdicts(), report.justification)


def run_cohomology(path: str, cap_border: int, cap_proper: int) -> ReportEnvelope:
    rules = parse_rules(_read(path), ENDOMORPHISM)
    e = rules.to_endo()
    inp = {"command": "cohomology", "file": path, "rules": rules.echo()}
    s = None
    if len(e.alphabet) >= 2 and all(w.is_positive and not w.is_identity for w in e.images):
        candidate = Substitution(e.alphabet, e.images)
        if is_primitive(candidate):
            s = candidate
    if s is not None:
        border = forces_border(s, cap_border, cap_proper)
        h1 = h1_presentation(s, border=border)
        inp.update(model="substitution tiling space", cap_border=cap_border, cap_proper=cap_proper)
        chain = [reasons.COHOMOLOGY_DIRECT_LIMIT]
        if border.forced:
            chain.append(reasons.BORDER_FORCING_MODEL)
    else:
        h1 = h1_presentation(e)
        inp.update(model="rose inverse limit")
        chain = [reasons.COHOMOLOGY_DIRECT_LIMIT]
    return _envelope(inp, h1.to_dict(), chain)


def run_torus(d: int, k: int) -> ReportEnvelope:
    t = torus_minus_points(d, k)
    verdicts = t.to_dict() | {"euler_characteristic": t.euler_characteristic}
    return _envelope({"command": "torus", "d": d, "k": k}, verdicts, [reasons.TORUS_MINUS_POINTS])


def run_projection(d: int, n: int) -> ReportEnvelope:
    p = projection_check(d, n)
    return _envelope({"command": "projection", "d": d, "n": n}, p.to_dict(), PROJECTION_REASONS)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON object instead of text")
    common.add_argument("--cap-border", type=int, default=argparse.SUPPRESS, metavar="N",
                        help="deepest supertile level tried for border forcing (default 8)")
    common.add_argument("--cap-proper", type=int, default=argparse.SUPPRESS, metavar="N",
                        help="largest power tried for properness (default 8)")

    parser = argparse.ArgumentParser(
        prog="tileshape", parents=[common],
        description="Stability, L-invariant and embedding obstructions for tiling spaces.",
    )
    parser.add_argument("--version", action="version", version=f"tileshape {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("sub", "full tiling space report for a substitution rule file"),
        ("endo", "stability and shape model for a free group endomorphism"),
        ("cohomology", "H^1 presentation of a rule file"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
    p = sub.add_parser("torus", parents=[common], help="cohomology of a torus minus points")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("projection", parents=[common], help="projection tiling obstruction")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with redirect_stderr(err), redirect_stdout(out):
            args = _parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors count as parse errors; --help and --version exit cleanly
        return 0 if exc.code in (0, None) else 2
    as_json = getattr(args, "json", False)
    cap_border = getattr(args, "cap_border", 8)
    cap_proper = getattr(args, "cap_proper", 8)
    try:
        if cap_border < 1 or cap_proper < 1:
            raise InvalidInputError("search caps must be at least 1")
        if args.command == "sub":
            env = run_sub(args.file, cap_border, cap_proper)
        elif args.command == "endo":
            env = run_endo(args.file)
        elif args.command == "cohomology":
            env = run_cohomology(args.file, cap_border, cap_proper)
        elif args.command == "torus":
            env = run_torus(args.d, args.k)
        else:
            env = run_projection(args.d, args.n)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except TileShapeError as exc:
        print(f"invalid input: {exc}", file=err)
        return 3
    print(env.to_json(indent=2) if as_json else env.to_text(), file=out)
    return 0


def main():
    sys.exit(run())
