"""The 84-equation corpus: text format, parser, orbit expansion, printing.

File format (UTF-8, ``#`` starts a comment)::

    eq 1 : (1+t)*U1*U2*U3 + 8*(U1^2*U5 + U2^2*U6 + U3^2*U4)
    eq 5 = g3(eq 4)
    eq 6 = g3^2(eq 4)

``t`` is i*sqrt(7).  A line starting with whitespace continues the previous
statement.  A ``?`` after a factor flags every monomial whose coefficient
depends on that factor as typographically uncertain.
"""

from __future__ import annotations

import hashlib
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from importlib import resources

from .arith import QQ_T, NumberFieldElement
from .poly import Monomial, Polynomial, mono_apply_g3, poly_apply_g3

CORPUS_SIZE = 84


class CorpusError(ValueError):
    pass


class CorpusSyntaxError(CorpusError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Provenance:
    """``power`` is 0 for an explicit entry, else the g3 exponent applied to ``source``."""

    power: int = 0
    source: int | None = None

    @property
    def explicit(self) -> bool:
        return self.power == 0

    def __str__(self) -> str:
        if self.explicit:
            return "explicit"
        g = "g3" if self.power == 1 else f"g3^{self.power}"
        return f"{g}-image-of({self.source})"


EXPLICIT = Provenance()


@dataclass(frozen=True)
class CorpusEntry:
    index: int
    poly: Polynomial
    provenance: Provenance = EXPLICIT
    flags: frozenset[Monomial] = frozenset()


@dataclass(frozen=True)
class EquationCorpus:
    entries: tuple[CorpusEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CorpusEntry]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> CorpusEntry:
        """Entry by its 1-based equation index."""
        for e in self.entries:
            if e.index == index:
                return e
        raise KeyError(f"no equation {index}")

    @property
    def polys(self) -> list[Polynomial]:
        return [e.poly for e in self.entries]

    def indices(self) -> list[int]:
        return [e.index for e in self.entries]

    def flagged_entries(self) -> list[CorpusEntry]:
        return [e for e in self.entries if e.flags]

    def fingerprint(self) -> str:
        return hashlib.sha256(canonical_print(self).encode()).hexdigest()

    def with_coefficient(self, index: int, term: Monomial, value) -> EquationCorpus:
        """Replace one coefficient of an explicit entry and re-derive its orbit images."""
        entry = self[index]
        if not entry.provenance.explicit:
            raise CorpusError(f"eq {index} is an orbit image; edit its seed eq {entry.provenance.source}")
        if term not in entry.poly.terms:
            raise CorpusError(f"eq {index} has no term {term}")
        terms = dict(entry.poly.terms)
        terms[term] = value
        new = CorpusEntry(index, Polynomial(terms, entry.poly.ring), EXPLICIT, entry.flags)
        seeds, rules = _split(self)
        seeds[index] = new
        return expand_orbits(seeds, rules, expected=None)

    def without(self, index: int) -> EquationCorpus:
        """Drop one equation; images that depended on it become explicit."""
        self[index]
        kept = tuple(
            CorpusEntry(e.index, e.poly, EXPLICIT if e.provenance.source == index else e.provenance, e.flags)
            for e in self.entries
            if e.index != index
        )
        return EquationCorpus(kept)

    def materialized(self) -> EquationCorpus:
        """Same polynomials with every entry marked explicit."""
        return EquationCorpus(tuple(CorpusEntry(e.index, e.poly, EXPLICIT, e.flags) for e in self.entries))


def _split(c: EquationCorpus) -> tuple[dict[int, CorpusEntry], dict[int, tuple[int, int]]]:
    seeds, rules = {}, {}
    for e in c.entries:
        if e.provenance.explicit:
            seeds[e.index] = e
        else:
            rules[e.index] = (e.provenance.power, e.provenance.source)
    return seeds, rules


# --------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>U\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*/^():=?]))"
)


@dataclass
class _Tok:
    kind: str  # num, var, ident, sym, end
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int, col0: int = 1) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            col = pos + col0 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise CorpusSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), line, start + col0))
        pos = m.end()
    return toks


# A parsed value: polynomial plus the monomials whose coefficient is flagged.
_Val = tuple[Polynomial, frozenset]


class _Parser:
    def __init__(self, toks: list[_Tok], end: tuple[int, int]) -> None:
        self.toks = toks
        self.pos = 0
        self.end = _Tok("end", "", *end)

    def peek(self) -> _Tok:
        return self.toks[self.pos] if self.pos < len(self.toks) else self.end

    def next(self) -> _Tok:
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        if tok.kind == "end" and self.toks:
            last = self.toks[-1]
            raise CorpusSyntaxError(f"{message} after {last.text!r} at end of statement", last.line, last.col)
        raise CorpusSyntaxError(f"{message}, found {tok.text!r}", tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            self.error(f"expected {text!r}")
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "num":
            self.error("expected an integer")
        self.next()
        return int(tok.text)

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    # statement := 'eq' INT ':' expr | 'eq' INT '=' g3 ['^' INT] '(' 'eq' INT ')'
    def statement(self):
        self.expect("eq")
        k = self.expect_int()
        tok = self.peek()
        if tok.text == ":":
            self.next()
            poly, flags = self.expr()
            if not self.at_end():
                self.error("expected an operator")
            return k, poly, flags
        if tok.text == "=":
            self.next()
            g = self.peek()
            if g.text != "g3":
                self.error("expected 'g3'")
            self.next()
            power = 1
            if self.peek().text == "^":
                self.next()
                power = self.expect_int()
                if power not in (1, 2):
                    self.error("g3 exponent must be 1 or 2")
            self.expect("(")
            self.expect("eq")
            j = self.expect_int()
            self.expect(")")
            if not self.at_end():
                self.error("unexpected trailing input")
            return k, power, j
        self.error("expected ':' or '='")

    def expr(self) -> _Val:
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "sym":
            sign = -1 if self.next().text == "-" else 1
        poly, flags = self.term()
        if sign < 0:
            poly = -poly
        while self.peek().kind == "sym" and self.peek().text in ("+", "-"):
            op = self.next().text
            rhs, rflags = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
            flags = flags | rflags
        return poly, flags

    def term(self) -> _Val:
        poly, flags = self.factor()
        while self.peek().kind == "sym" and self.peek().text in ("*", "/"):
            op_tok = self.next()
            rhs, rflags = self.factor()
            if op_tok.text == "*":
                flags = _mul_flags(poly, flags, rhs, rflags)
                poly = poly * rhs
            else:
                c = _as_constant(rhs)
                if c is None:
                    raise CorpusSyntaxError("division by a non-constant", op_tok.line, op_tok.col)
                if not c:
                    raise CorpusSyntaxError("division by zero", op_tok.line, op_tok.col)
                flags = _mul_flags(poly, flags, rhs, rflags)
                poly = poly.scale(NumberFieldElement(1) / c)
        return poly, flags

    def factor(self) -> _Val:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "-":
            self.next()
            poly, flags = self.factor()
            return -poly, flags
        poly, flags = self.atom()
        if self.peek().text == "^" and self.peek().kind == "sym":
            self.next()
            n = self.expect_int()
            base, bflags = poly, flags
            poly, flags = Polynomial.constant(QQ_T.one), frozenset()
            for _ in range(n):
                flags = _mul_flags(poly, flags, base, bflags)
                poly = poly * base
        if self.peek().text == "?" and self.peek().kind == "sym":
            self.next()
            flags = frozenset(poly.terms)
        return poly, flags

    def atom(self) -> _Val:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Polynomial.constant(NumberFieldElement(int(tok.text))), frozenset()
        if tok.kind == "ident" and tok.text == "t":
            self.next()
            return Polynomial.constant(NumberFieldElement(0, 1)), frozenset()
        if tok.kind == "var":
            i = int(tok.text[1:])
            if i > 9:
                self.error("variable index out of range")
            self.next()
            return Polynomial.variable(i), frozenset()
        if tok.kind == "sym" and tok.text == "(":
            self.next()
            val = self.expr()
            self.expect(")")
            return val
        self.error("expected a number, 't', a variable or '('")


def _as_constant(p: Polynomial):
    if not p.terms:
        return NumberFieldElement(0)
    if len(p.terms) == 1:
        (m, c), = p.terms.items()
        if m.degree == 0:
            return c
    return None


def _mul_flags(a: Polynomial, fa: frozenset, b: Polynomial, fb: frozenset) -> frozenset:
    if not fa and not fb:
        return frozenset()
    out = {m1 * m2 for m1 in fa for m2 in b.terms}
    out |= {m1 * m2 for m1 in a.terms for m2 in fb}
    return frozenset(out)


def _statements(source: str) -> Iterator[tuple[list[_Tok], tuple[int, int]]]:
    """Group physical lines into statements, yielding tokens and an end position."""
    current: list[_Tok] = []
    end = (1, 1)
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        continuation = line[0].isspace()
        toks = _tokenize(line, lineno)
        if continuation and current:
            current.extend(toks)
        else:
            if current:
                yield current, end
            current = toks
        end = (lineno, len(line.rstrip()) + 1)
    if current:
        yield current, end


def parse_statements(source: str) -> tuple[dict[int, CorpusEntry], dict[int, tuple[int, int]]]:
    """Parse text into explicit seed entries and orbit rules ``k -> (power, j)``."""
    seeds: dict[int, CorpusEntry] = {}
    rules: dict[int, tuple[int, int]] = {}
    for toks, end in _statements(source):
        parser = _Parser(toks, end)
        first = toks[0]
        result = parser.statement()
        k = result[0]
        if k in seeds or k in rules:
            raise CorpusSyntaxError(f"equation {k} defined twice", first.line, first.col)
        if isinstance(result[1], Polynomial):
            _, poly, flags = result
            seeds[k] = CorpusEntry(k, poly, EXPLICIT, frozenset(m for m in flags if m in poly.terms))
        else:
            _, power, j = result
            rules[k] = (power, j)
    return seeds, rules


def expand_orbits(
    seeds: dict[int, CorpusEntry] | Iterable[CorpusEntry],
    rules: dict[int, tuple[int, int]] | None = None,
    expected: int | None = CORPUS_SIZE,
) -> EquationCorpus:
    """Materialize every orbit rule ``eq k = g3^power(eq j)``.

    Accepts an already expanded corpus's entries (with no rules) unchanged.
    """
    if not isinstance(seeds, dict):
        seeds = {e.index: e for e in seeds}
    rules = dict(rules or {})
    for e in list(seeds.values()):
        if not e.provenance.explicit:
            rules.setdefault(e.index, (e.provenance.power, e.provenance.source))
            del seeds[e.index]
    collision = seeds.keys() & rules.keys()
    if collision:
        raise CorpusError(f"index collision: {sorted(collision)}")

    done: dict[int, CorpusEntry] = dict(seeds)

    def resolve(k: int, stack: tuple[int, ...]) -> CorpusEntry:
        if k in done:
            return done[k]
        if k not in rules:
            raise CorpusError(f"orbit rule references undefined eq {k}")
        if k in stack:
            raise CorpusError(f"cyclic orbit rules through eq {k}")
        power, j = rules[k]
        if j not in done and j not in rules:
            raise CorpusError(f"eq {k} references undefined eq {j}")
        src = resolve(j, stack + (k,))
        poly, flags = src.poly, src.flags
        for _ in range(power):
            poly = poly_apply_g3(poly)
            flags = frozenset(mono_apply_g3(m) for m in flags)
        entry = CorpusEntry(k, poly, Provenance(power, j), flags)
        done[k] = entry
        return entry

    for k in sorted(rules):
        resolve(k, ())
    entries = tuple(done[k] for k in sorted(done))
    if expected is not None:
        if len(entries) != expected or [e.index for e in entries] != list(range(1, expected + 1)):
            raise CorpusError(f"expansion yields {len(entries)} equations, expected eq 1..{expected}")
    return EquationCorpus(entries)


def parse_corpus(source: str, expected: int | None = CORPUS_SIZE) -> EquationCorpus:
    seeds, rules = parse_statements(source)
    return expand_orbits(seeds, rules, expected=expected)


def canonical_print(c: EquationCorpus) -> str:
    lines = []
    for e in c.entries:
        if e.provenance.explicit:
            lines.append(f"eq {e.index} : {e.poly.format(e.flags)}")
        else:
            g = "g3" if e.provenance.power == 1 else f"g3^{e.provenance.power}"
            lines.append(f"eq {e.index} = {g}(eq {e.provenance.source})")
    return "\n".join(lines) + "\n"


def embedded_source() -> str:
    return resources.files("fppcheck").joinpath("data/corpus.fpp").read_text(encoding="utf-8")


_EMBEDDED: EquationCorpus | None = None


def load_embedded() -> EquationCorpus:
    global _EMBEDDED
    if _EMBEDDED is None:
        _EMBEDDED = parse_corpus(embedded_source())
    return _EMBEDDED


def load_corpus(path: str | None = None) -> EquationCorpus:
    if path is None:
        return load_embedded()
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read(), expected=None)


def corpus_from_polys(polys: Sequence[Polynomial]) -> EquationCorpus:
    """Ad hoc corpus of explicit entries numbered from 1."""
    return EquationCorpus(tuple(CorpusEntry(i, p) for i, p in enumerate(polys, start=1)))
