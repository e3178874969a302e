"""Exact sparse homogeneous polynomials over the rationals.

A form is stored as a map from exponent tuples to nonzero ``Fraction``
coefficients.  All arithmetic is exact; floating point enters only through
the explicitly approximate ``evaluate_float``.

Variables are written ``x1, x2, ...`` in text.  The grammar (whitespace
ignored) is:

    form   := [sign] term { sign term }     sign   := '+' | '-'
    term   := coeff [ '*' mono ] | mono     coeff  := int [ '/' posint ]
    mono   := factor { '*' factor }         factor := 'x' posint [ '^' posint ]

Files hold one form each; lines starting with ``#`` carry metadata
(``# name: motzkin``).  Serialization emits coefficients as ``p/q`` when
``q != 1``, so ``parse_form(format_form(f))`` round-trips bit-exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotHomogeneous, ParseError

Exponent = tuple[int, ...]
RationalLike = Fraction | int | str

_ZERO = Fraction(0)


def grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    """Graded-lexicographic sort key: total degree first, then lex."""
    return (sum(exponent), exponent)


def format_rational(value: Fraction) -> str:
    """Render exactly as ``p`` or ``p/q``; inverse of ``Fraction(text)``."""
    return str(value)


@dataclass(frozen=True)
class SparseForm:
    """Homogeneous polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients, stored in graded-lex descending order; treat it as
    read-only.  The zero form has an empty map and keeps whatever degree
    the construction context supplied.
    """

    num_vars: int
    degree: int
    terms: dict[Exponent, Fraction]
    name: str | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(self.terms.keys())

    def coefficient(self, exponent: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exponent), _ZERO)

    def __str__(self) -> str:
        return format_form(self)


def make_form(
    num_vars: int,
    terms: Mapping[Exponent, RationalLike] | Iterable[tuple[Exponent, RationalLike]],
    name: str | None = None,
    zero_degree: int = 0,
) -> SparseForm:
    """Build the canonical form: like terms combined, zeros dropped.

    ``zero_degree`` records the degree when everything cancels; a nonzero
    result infers its degree from the terms and raises ``NotHomogeneous``
    on mixed total degrees.
    """
    if num_vars < 0:
        raise ValueError("num_vars must be nonnegative")
    items = terms.items() if isinstance(terms, Mapping) else terms
    combined: dict[Exponent, Fraction] = {}
    degree: int | None = None
    for exponent, coeff in items:
        exponent = tuple(int(e) for e in exponent)
        if len(exponent) != num_vars:
            raise DimensionMismatch(
                f"exponent {exponent} has length {len(exponent)}, expected {num_vars}"
            )
        if any(e < 0 for e in exponent):
            raise ValueError(f"negative entry in exponent {exponent}")
        total = sum(exponent)
        if degree is None:
            degree = total
        elif total != degree:
            raise NotHomogeneous(
                f"mixed total degrees {degree} and {total} in one form"
            )
        combined[exponent] = combined.get(exponent, _ZERO) + Fraction(coeff)
    ordered = {
        e: c
        for e, c in sorted(combined.items(), key=lambda t: grlex_key(t[0]), reverse=True)
        if c != 0
    }
    if not ordered:
        degree = degree if degree is not None else zero_degree
    assert degree is not None
    return SparseForm(num_vars=num_vars, degree=degree, terms=ordered, name=name)


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\d+|[+\-*/^x]")
_SPACE = re.compile(r"\s+")


def _tokenize(text: str) -> list[str]:
    stripped = _SPACE.sub("", text)
    tokens: list[str] = []
    pos = 0
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None:
            raise ParseError(f"unexpected character {stripped[pos]!r} at offset {pos}")
        tokens.append(match.group(0))
        pos = match.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return token

    def expect_int(self, what: str) -> int:
        token = self.take()
        if not token.isdigit():
            raise ParseError(f"expected {what}, found {token!r}")
        return int(token)


def _parse_factor(stream: _TokenStream) -> tuple[int, int]:
    """factor := 'x' posint [ '^' posint ]; returns (variable index, power)."""
    token = stream.take()
    if token != "x":
        raise ParseError(f"expected variable, found {token!r}")
    index = stream.expect_int("variable index")
    if index < 1:
        raise ParseError("variable indices start at 1")
    power = 1
    if stream.peek() == "^":
        stream.take()
        power = stream.expect_int("exponent")
        if power < 1:
            raise ParseError("exponents must be positive")
    return index, power


def _parse_term(stream: _TokenStream) -> tuple[Fraction, dict[int, int]]:
    coeff = Fraction(1)
    powers: dict[int, int] = {}
    token = stream.peek()
    if token is None:
        raise ParseError("empty term")
    if token.isdigit():
        numerator = stream.expect_int("coefficient")
        denominator = 1
        if stream.peek() == "/":
            stream.take()
            denominator = stream.expect_int("denominator")
            if denominator < 1:
                raise ParseError("denominators must be positive")
        coeff = Fraction(numerator, denominator)
        if stream.peek() == "*":
            stream.take()
        else:
            return coeff, powers  # bare constant term
    elif token != "x":
        raise ParseError(f"expected term, found {token!r}")
    index, power = _parse_factor(stream)
    powers[index] = powers.get(index, 0) + power
    while stream.peek() == "*":
        stream.take()
        index, power = _parse_factor(stream)
        powers[index] = powers.get(index, 0) + power
    return coeff, powers


def parse_form(text: str, num_vars: int | None = None, name: str | None = None) -> SparseForm:
    """Parse polynomial text into its canonical form.

    With ``num_vars`` omitted, the variable count is the maximal index
    used.  Cancellation to zero is accepted (the result is flagged by
    ``is_zero``); mixed total degrees raise ``NotHomogeneous``.
    """
    stream = _TokenStream(_tokenize(text))
    if stream.peek() is None:
        raise ParseError("empty form")
    raw_terms: list[tuple[Fraction, dict[int, int]]] = []
    sign = Fraction(1)
    if stream.peek() in {"+", "-"}:
        sign = Fraction(-1) if stream.take() == "-" else Fraction(1)
    while True:
        coeff, powers = _parse_term(stream)
        raw_terms.append((sign * coeff, powers))
        token = stream.peek()
        if token is None:
            break
        if token not in {"+", "-"}:
            raise ParseError(f"expected '+' or '-', found {token!r}")
        sign = Fraction(-1) if stream.take() == "-" else Fraction(1)
    max_index = max((max(p) for _, p in raw_terms if p), default=0)
    if num_vars is None:
        num_vars = max_index
    elif max_index > num_vars:
        raise ParseError(
            f"variable x{max_index} exceeds the declared {num_vars} variables"
        )
    pairs = []
    for coeff, powers in raw_terms:
        exponent = tuple(powers.get(i, 0) for i in range(1, num_vars + 1))
        pairs.append((exponent, coeff))
    return make_form(num_vars, pairs, name=name)


def format_form(f: SparseForm) -> str:
    """Serialize in graded-lex descending term order; exact round trip."""
    if f.is_zero:
        if f.num_vars >= 1 and f.degree >= 1:
            mono = f"x{f.num_vars}" + (f"^{f.degree}" if f.degree > 1 else "")
            return f"0*{mono}"
        return "0"
    parts: list[str] = []
    for position, (exponent, coeff) in enumerate(f.terms.items()):
        factors = [
            f"x{i + 1}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exponent)
            if e > 0
        ]
        magnitude = abs(coeff)
        if not factors:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = format_rational(magnitude) + "*" + "*".join(factors)
        if position == 0:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts)


def load_form_file(path: str) -> SparseForm:
    """Read a one-form UTF-8 file; '#' lines are metadata ('# name: ...')."""
    name: str | None = None
    body: list[str] = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            stripped = line.strip()
            if stripped.startswith("#"):
                meta = stripped.lstrip("#").strip()
                if meta.lower().startswith("name:"):
                    name = meta[5:].strip()
                continue
            if stripped:
                body.append(stripped)
    if not body:
        raise ParseError(f"no polynomial text in {path}")
    return parse_form(" ".join(body), name=name)


def save_form_file(path: str, f: SparseForm) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        if f.name:
            handle.write(f"# name: {f.name}\n")
        handle.write(format_form(f) + "\n")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def evaluate(f: SparseForm, point: Sequence[RationalLike]) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    if len(point) != f.num_vars:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, form has {f.num_vars} variables"
        )
    values = [Fraction(v) for v in point]
    total = Fraction(0)
    for exponent, coeff in f.terms.items():
        term = coeff
        for value, power in zip(values, exponent):
            if power:
                term *= value**power
        total += term
    return total


def evaluate_float(f: SparseForm, point: Sequence[float]) -> float:
    """Double-precision evaluation; approximate, for residual checks only."""
    if len(point) != f.num_vars:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, form has {f.num_vars} variables"
        )
    total = 0.0
    for exponent, coeff in f.terms.items():
        term = float(coeff)
        for value, power in zip(point, exponent):
            if power:
                term *= float(value) ** power
        total += term
    return total


# ---------------------------------------------------------------------------
# form arithmetic (what the transforms and test-instance builders need)
# ---------------------------------------------------------------------------

def add_forms(*forms: SparseForm) -> SparseForm:
    if not forms:
        raise ValueError("add_forms needs at least one form")
    num_vars = forms[0].num_vars
    if any(f.num_vars != num_vars for f in forms):
        raise DimensionMismatch("cannot add forms in different variable counts")
    degrees = {f.degree for f in forms if not f.is_zero}
    if len(degrees) > 1:
        raise NotHomogeneous(f"cannot add forms of degrees {sorted(degrees)}")
    pairs = [(e, c) for f in forms for e, c in f.terms.items()]
    hint = degrees.pop() if degrees else forms[0].degree
    return make_form(num_vars, pairs, zero_degree=hint)


def scale_form(f: SparseForm, factor: RationalLike) -> SparseForm:
    factor = Fraction(factor)
    return make_form(
        f.num_vars,
        [(e, c * factor) for e, c in f.terms.items()],
        zero_degree=f.degree,
    )


def mul_forms(f: SparseForm, g: SparseForm) -> SparseForm:
    if f.num_vars != g.num_vars:
        raise DimensionMismatch("cannot multiply forms in different variable counts")
    product: dict[Exponent, Fraction] = {}
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            key = tuple(a + b for a, b in zip(ef, eg))
            product[key] = product.get(key, _ZERO) + cf * cg
    return make_form(f.num_vars, product, zero_degree=f.degree + g.degree)


def form_power(f: SparseForm, k: int) -> SparseForm:
    if k < 0:
        raise ValueError("nonnegative powers only")
    result = make_form(f.num_vars, {(0,) * f.num_vars: Fraction(1)})
    for _ in range(k):
        result = mul_forms(result, f)
    return result


def variable(num_vars: int, index: int) -> SparseForm:
    """The form ``x<index>`` (1-based, to match the text grammar)."""
    if not 1 <= index <= num_vars:
        raise DimensionMismatch(f"variable x{index} outside 1..{num_vars}")
    exponent = tuple(1 if i == index - 1 else 0 for i in range(num_vars))
    return make_form(num_vars, {exponent: Fraction(1)})


# ---------------------------------------------------------------------------
# transforms used to build test instances
# ---------------------------------------------------------------------------

def embed_variables(f: SparseForm, m: int) -> SparseForm:
    """Zero-pad every exponent to ``num_vars + m`` variables."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return f
    pad = (0,) * m
    return make_form(
        f.num_vars + m,
        [(e + pad, c) for e, c in f.terms.items()],
        zero_degree=f.degree,
    )


def multiply_monomial_square(f: SparseForm, var_index: int, ell: int) -> SparseForm:
    """Multiply by ``x<var_index>^(2*ell)``; raises the degree by ``2*ell``."""
    if not 1 <= var_index <= f.num_vars:
        raise DimensionMismatch(f"variable x{var_index} outside 1..{f.num_vars}")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    shift = 2 * ell
    position = var_index - 1
    pairs = [
        (tuple(e + shift if i == position else e for i, e in enumerate(exp)), c)
        for exp, c in f.terms.items()
    ]
    return make_form(f.num_vars, pairs, zero_degree=f.degree + shift)


def substitute_linear(f: SparseForm, matrix: Sequence[Sequence[RationalLike]]) -> SparseForm:
    """Expand ``f(A x)`` exactly for a square rational matrix ``A``.

    Row ``i`` of the matrix gives the substitution of variable ``x(i+1)``.
    """
    n = f.num_vars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DimensionMismatch(f"matrix must be {n}x{n}")
    rows = [[Fraction(v) for v in row] for row in matrix]
    one = (0,) * n
    linear: list[dict[Exponent, Fraction]] = []
    for row in rows:
        entry = {
            tuple(1 if j == i else 0 for j in range(n)): value
            for i, value in enumerate(row)
            if value != 0
        }
        linear.append(entry)

    def dict_mul(a: dict[Exponent, Fraction], b: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(p + q for p, q in zip(ea, eb))
                out[key] = out.get(key, _ZERO) + ca * cb
        return {e: c for e, c in out.items() if c != 0}

    accumulated: dict[Exponent, Fraction] = {}
    for exponent, coeff in f.terms.items():
        partial: dict[Exponent, Fraction] = {one: coeff}
        for position, power in enumerate(exponent):
            for _ in range(power):
                partial = dict_mul(partial, linear[position])
                if not partial:
                    break
            if not partial:
                break
        for key, value in partial.items():
            accumulated[key] = accumulated.get(key, _ZERO) + value
    return make_form(n, accumulated, zero_degree=f.degree)
