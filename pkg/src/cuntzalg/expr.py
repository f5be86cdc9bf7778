"""The element expression language: parsing and deterministic display.

Grammar (whitespace insignificant, adjoint tick binds tighter than '*'):

    element  := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ["'"] | '(' element ')' ["'"]
    atom     := 'S' digits | 'zeta(' int ',' int ')' | 'sqrt(' digits ')'
              | digits ['/' digits]

``S3'`` is the adjoint of the third generating isometry. Formatting runs a
greedy sibling contraction (a full family S_{a i} S_{b i}^*, i = 1..n, with
one shared coefficient collapses to S_a S_b^*) and emits terms sorted by
gauge degree, then word; contraction is display-only and never feeds
equality decisions. Exact-backend output parses back to an equal element.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .algebra import Element, Monomial
from .backends import EXACT, NumericScalar
from .scalars import CycloScalar

__all__ = ["ParseError", "contract_terms", "format_element", "format_scalar",
           "parse_element", "sorted_terms"]


class ParseError(ValueError):
    """A syntax or range error, with position and the tokens that would fit."""

    def __init__(self, message: str, line: int, column: int,
                 expected: Optional[list[str]] = None):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected or []


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


_SYMBOLS = {"+", "-", "*", "/", "(", ")", ",", "'"}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "S":
                k = j
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j:
                    raise ParseError("generator needs an index", line, col,
                                     ["S<digits>"])
                tokens.append(_Token("gen", text[j:k], line, col))
                col += k - i
                i = k
                continue
            if word in ("zeta", "sqrt"):
                tokens.append(_Token(word, word, line, col))
                col += j - i
                i = j
                continue
            raise ParseError(f"unknown name {word!r}", line, col,
                             ["S<digits>", "zeta", "sqrt"])
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], rank: int, backend):
        self.tokens = tokens
        self.pos = 0
        self.rank = rank
        self.backend = backend

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column, [kind])
        self.pos += 1
        return tok

    def parse(self) -> Element:
        value = self.element()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column,
                             ["+", "-", "*", "end of input"])
        return value

    def element(self) -> Element:
        negate = False
        if self.peek().kind == "-":
            self.take("-")
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind)
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> Element:
        value = self.factor()
        while self.peek().kind == "*":
            self.take("*")
            value = value * self.factor()
        return value

    def factor(self) -> Element:
        tok = self.peek()
        if tok.kind == "(":
            self.take("(")
            value = self.element()
            self.take(")")
        else:
            value = self.atom()
        if self.peek().kind == "'":
            self.take("'")
            value = value.adjoint()
        return value

    def atom(self) -> Element:
        tok = self.peek()
        if tok.kind == "gen":
            self.take("gen")
            index = int(tok.text)
            if not 1 <= index <= self.rank:
                raise ParseError(f"generator index {index} out of 1..{self.rank}",
                                 tok.line, tok.column)
            return Element.generator(self.rank, index, self.backend)
        if tok.kind == "zeta":
            self.take("zeta")
            self.take("(")
            order = self.signed_int()
            self.take(",")
            power = self.signed_int()
            self.take(")")
            if order < 1:
                raise ParseError("zeta needs a positive order", tok.line, tok.column)
            return self._scalar(self.backend.zeta(order, power))
        if tok.kind == "sqrt":
            self.take("sqrt")
            self.take("(")
            arg = self.signed_int()
            self.take(")")
            if arg < 1:
                raise ParseError("sqrt needs a positive integer", tok.line, tok.column)
            return self._scalar(self.backend.sqrt_int(arg))
        if tok.kind == "int":
            self.take("int")
            num = int(tok.text)
            if self.peek().kind == "/":
                self.take("/")
                den_tok = self.take("int")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.column)
                return self._scalar(self.backend.rational(num, den))
            return self._scalar(self.backend.rational(num))
        raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column,
                         ["S<digits>", "zeta", "sqrt", "<rational>", "("])

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.take("-")
            sign = -1
        tok = self.take("int")
        return sign * int(tok.text)

    def _scalar(self, coeff) -> Element:
        return Element(self.rank, {Monomial((), ()): coeff})


def parse_element(text: str, n: int, backend=EXACT) -> Element:
    """Parse ``text`` as an element of the rank-n algebra."""
    if n < 2:
        raise ValueError(f"rank must be >= 2, got {n}")
    return _Parser(_tokenize(text), n, backend).parse()


# ---------------------------------------------------------------------------
# formatting


def contract_terms(terms: dict, rank: int) -> dict:
    """Greedy display contraction: collapse full sibling families.

    Whenever all of S_{a 1}S_{b 1}^*, ..., S_{a n}S_{b n}^* are present with
    one shared coefficient, they merge into S_a S_b^*. Repeats to a fixed
    point. Purely cosmetic; never used to decide equality.
    """
    work = dict(terms)
    changed = True
    while changed:
        changed = False
        buckets: dict[tuple, list[Monomial]] = {}
        for mono in work:
            if mono.alpha and mono.beta and mono.alpha[-1] == mono.beta[-1]:
                buckets.setdefault((mono.alpha[:-1], mono.beta[:-1]), []).append(mono)
        for (pa, pb), members in buckets.items():
            if len(members) != rank:
                continue
            if sorted(m.alpha[-1] for m in members) != list(range(1, rank + 1)):
                continue
            coeff = work[members[0]]
            if not all(work[m] == coeff for m in members[1:]):
                continue
            for m in members:
                del work[m]
            parent = Monomial(pa, pb)
            if parent in work:
                total = work[parent] + coeff
                if total.is_zero():
                    del work[parent]
                else:
                    work[parent] = total
            else:
                work[parent] = coeff
            changed = True
    return work


def sorted_terms(terms: dict) -> list[tuple[Monomial, object]]:
    return sorted(terms.items(), key=lambda mc: (mc[0].degree, mc[0].alpha, mc[0].beta))


def format_scalar(coeff) -> str:
    """A scalar as expression-language text (parenthesised when composite)."""
    if isinstance(coeff, NumericScalar):
        return f"({coeff})"
    if coeff.is_rational():
        q = coeff.as_fraction()
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    parts = []
    for e, c in enumerate(coeff.coeffs):
        if not c:
            continue
        if e == 0:
            piece = str(c.numerator) if c.denominator == 1 else \
                f"{c.numerator}/{c.denominator}"
        else:
            zeta = f"zeta({coeff.order},{e})"
            if c == 1:
                piece = zeta
            elif c == -1:
                piece = f"-{zeta}"
            elif c.denominator == 1:
                piece = f"{c.numerator}*{zeta}"
            else:
                piece = f"{c.numerator}/{c.denominator}*{zeta}"
        parts.append(piece)
    joined = parts[0]
    for piece in parts[1:]:
        joined += piece if piece.startswith("-") else "+" + piece
    return f"({joined})" if len(parts) > 1 or not parts[0][0].isdigit() else joined


def _format_word(mono: Monomial) -> str:
    bits = [f"S{a}" for a in mono.alpha]
    bits += [f"S{b}'" for b in reversed(mono.beta)]
    return "*".join(bits)


def format_element(x: Element) -> str:
    """Deterministic display form; exact output re-parses to an equal element."""
    display = contract_terms(x.terms, x.rank)
    if not display:
        return "0"
    chunks = []
    for mono, coeff in sorted_terms(display):
        word = _format_word(mono)
        if not word:
            text = format_scalar(coeff)
        else:
            scal = format_scalar(coeff)
            if scal == "1":
                text = word
            elif scal == "-1":
                text = f"-{word}"
            else:
                text = f"{scal}*{word}"
        chunks.append(text)
    out = chunks[0]
    for text in chunks[1:]:
        if text.startswith("-"):
            out += f" - {text[1:]}"
        else:
            out += f" + {text}"
    return out
