"""Finite-field scalars, monomials, polynomials, and polynomial systems.

Everything here is an immutable value type.  Monomials carry a global
graded-lexicographic order (total degree first, then higher powers of
earlier variables first) so that matrix rows and columns built from them
are reproducible across runs.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple


class PolyError(ValueError):
    """Raised for malformed algebraic inputs."""


class PolyParseError(PolyError):
    """Raised when polynomial text cannot be parsed."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p); carries the residue arithmetic for the field."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise PolyError(f"field modulus must be prime, got {self.p!r}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise PolyError("inverse of zero")
        return pow(a, -1, self.p)


def field_ops(field: FieldSpec) -> FieldSpec:
    """Return the arithmetic contract (add, sub, mul, neg, inv) for a field.

    FieldSpec itself carries the operations; this accessor exists so callers
    that only need arithmetic can name the capability.
    """
    if not isinstance(field, FieldSpec):
        raise PolyError("field_ops expects a FieldSpec")
    return field


@functools.total_ordering
@dataclass(frozen=True)
class Monomial:
    """A power product of variables.

    exponents is a sparse map stored as ((var, exp), ...) with var indices
    ascending, every exp positive, and var < n_vars.  Variable index i
    corresponds to x{i+1} in text form.
    """

    exponents: Tuple[Tuple[int, int], ...]
    n_vars: int

    def __post_init__(self) -> None:
        last = -1
        for var, exp in self.exponents:
            if var <= last:
                raise PolyError(f"variables out of order in {self.exponents}")
            if not 0 <= var < self.n_vars:
                raise PolyError(f"variable index {var} outside 0..{self.n_vars - 1}")
            if exp <= 0:
                raise PolyError(f"exponent {exp} must be positive")
            last = var

    @classmethod
    def make(cls, exponents: Mapping[int, int] | Iterable[Tuple[int, int]], n_vars: int) -> "Monomial":
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: Dict[int, int] = {}
        for var, exp in items:
            merged[var] = merged.get(var, 0) + exp
        pairs = tuple(sorted((v, e) for v, e in merged.items() if e != 0))
        return cls(pairs, n_vars)

    @classmethod
    def from_vars(cls, variables: Sequence[int], n_vars: int) -> "Monomial":
        """Build from a variable list with multiplicity, e.g. (0, 0, 1) = x1^2*x2."""
        pairs = tuple((v, len(list(grp))) for v, grp in itertools.groupby(sorted(variables)))
        return cls(pairs, n_vars)

    @classmethod
    def one(cls, n_vars: int) -> "Monomial":
        return cls((), n_vars)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def is_constant(self) -> bool:
        return not self.exponents

    def expanded(self) -> Tuple[int, ...]:
        """Sorted variable indices with multiplicity; the graded-order key."""
        return tuple(v for v, e in self.exponents for _ in range(e))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.degree, self.expanded())

    def mul(self, other: "Monomial") -> "Monomial":
        if self.n_vars != other.n_vars:
            raise PolyError("monomial n_vars mismatch")
        return Monomial.make(list(self.exponents) + list(other.exponents), self.n_vars)

    def exponent_of(self, var: int) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    def __lt__(self, other: "Monomial") -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key() < other.sort_key()


# Term display order: total degree descending, then graded-lex within a
# degree, so "x1^3+1" and "x1^2+x1*x2+x2^2" print in the conventional way.
def _display_key(m: Monomial) -> Tuple[int, Tuple[int, ...]]:
    return (-m.degree, m.expanded())


@dataclass(frozen=True)
class Polynomial:
    """A polynomial over GF(p) as a term map Monomial -> nonzero coefficient.

    terms is canonically ordered by _display_key; no zero coefficients are
    stored; the zero polynomial has an empty term tuple and degree -1.
    """

    field: FieldSpec
    n_vars: int
    terms: Tuple[Tuple[Monomial, int], ...]

    def __post_init__(self) -> None:
        prev = None
        for mono, coeff in self.terms:
            if mono.n_vars != self.n_vars:
                raise PolyError("term n_vars mismatch")
            if not 0 < coeff < self.field.p:
                raise PolyError(f"coefficient {coeff} outside 1..{self.field.p - 1}")
            key = _display_key(mono)
            if prev is not None and key <= prev:
                raise PolyError("terms out of canonical order")
            prev = key

    @classmethod
    def make(
        cls,
        field: FieldSpec,
        n_vars: int,
        terms: Mapping[Monomial, int] | Iterable[Tuple[Monomial, int]],
    ) -> "Polynomial":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Monomial, int] = {}
        for mono, coeff in items:
            acc[mono] = (acc.get(mono, 0) + coeff) % field.p
        kept = [(m, c) for m, c in acc.items() if c != 0]
        kept.sort(key=lambda mc: _display_key(mc[0]))
        return cls(field, n_vars, tuple(kept))

    @classmethod
    def zero(cls, field: FieldSpec, n_vars: int) -> "Polynomial":
        return cls(field, n_vars, ())

    @classmethod
    def constant(cls, field: FieldSpec, n_vars: int, c: int) -> "Polynomial":
        return cls.make(field, n_vars, [(Monomial.one(n_vars), c)])

    @classmethod
    def one(cls, field: FieldSpec, n_vars: int) -> "Polynomial":
        return cls.constant(field, n_vars, 1)

    @classmethod
    def from_monomial(cls, mono: Monomial, field: FieldSpec, coeff: int = 1) -> "Polynomial":
        return cls.make(field, mono.n_vars, [(mono, coeff)])

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(m.degree for m, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def term_map(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def coeff(self, mono: Monomial) -> int:
        for m, c in self.terms:
            if m == mono:
                return c
        return 0

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def __str__(self) -> str:
        return format_poly(self)


def _check_compatible(a: Polynomial, b: Polynomial) -> None:
    if a.field != b.field:
        raise PolyError("field mismatch")
    if a.n_vars != b.n_vars:
        raise PolyError("n_vars mismatch")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_compatible(a, b)
    acc = dict(a.terms)
    p = a.field.p
    for mono, coeff in b.terms:
        acc[mono] = (acc.get(mono, 0) + coeff) % p
    return Polynomial.make(a.field, a.n_vars, acc)


def negate(a: Polynomial) -> Polynomial:
    p = a.field.p
    return Polynomial.make(a.field, a.n_vars, [(m, p - c) for m, c in a.terms])


def poly_scale(a: Polynomial, c: int) -> Polynomial:
    return Polynomial.make(a.field, a.n_vars, [(m, co * c) for m, co in a.terms])


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_compatible(a, b)
    p = a.field.p
    acc: Dict[Monomial, int] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            m = ma.mul(mb)
            acc[m] = (acc.get(m, 0) + ca * cb) % p
    return Polynomial.make(a.field, a.n_vars, acc)


def poly_eval(a: Polynomial, point: Sequence[int]) -> int:
    """Evaluate at a point given as a length-n_vars vector of residues."""
    if len(point) != a.n_vars:
        raise PolyError(f"point length {len(point)} != n_vars {a.n_vars}")
    p = a.field.p
    total = 0
    for mono, coeff in a.terms:
        v = coeff
        for var, exp in mono.exponents:
            v = (v * pow(point[var] % p, exp, p)) % p
        total = (total + v) % p
    return total


def monomials_up_to(
    n_vars: int,
    d: int,
    residue_filter: Optional[Tuple[int, int]] = None,
) -> list[Monomial]:
    """All monomials of total degree <= d in graded-lexicographic order.

    residue_filter = (r, k) keeps only degrees congruent to r mod k.
    The full list has exactly C(n_vars + d, d) elements.
    """
    if d < 0:
        raise PolyError("degree bound must be nonnegative")
    out: list[Monomial] = []
    for deg in range(d + 1):
        if residue_filter is not None:
            r, k = residue_filter
            if k <= 0:
                raise PolyError("residue_filter modulus must be positive")
            if deg % k != r % k:
                continue
        for tup in itertools.combinations_with_replacement(range(n_vars), deg):
            out.append(Monomial.from_vars(tup, n_vars))
    return out


def count_monomials_up_to(n_vars: int, d: int) -> int:
    return math.comb(n_vars + d, d)


def format_monomial(mono: Monomial, coeff: int = 1) -> str:
    if mono.is_constant():
        return str(coeff)
    parts = [] if coeff == 1 else [str(coeff)]
    for var, exp in mono.exponents:
        parts.append(f"x{var + 1}" if exp == 1 else f"x{var + 1}^{exp}")
    return "*".join(parts)


def format_poly(a: Polynomial) -> str:
    if a.is_zero():
        return "0"
    return "+".join(format_monomial(m, c) for m, c in a.terms)


def _split_terms(s: str) -> list[Tuple[int, str]]:
    terms = []
    i = 0
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        if j == i:
            raise PolyParseError(f"empty term at position {i} in {s!r}")
        terms.append((sign, s[i:j]))
        i = j
    if not terms:
        raise PolyParseError("empty polynomial text")
    return terms


def _parse_term(body: str, n_vars: int, where: str) -> Tuple[Monomial, int]:
    coeff = 1
    exps: list[Tuple[int, int]] = []
    for pos, part in enumerate(body.split("*")):
        if not part:
            raise PolyParseError(f"empty factor in term {where!r}")
        if part.isdigit():
            if pos != 0:
                raise PolyParseError(f"coefficient must lead the term in {where!r}")
            coeff = int(part)
            continue
        if not part.startswith("x"):
            raise PolyParseError(f"bad factor {part!r} in term {where!r}")
        var_txt, caret, exp_txt = part[1:].partition("^")
        if not var_txt.isdigit() or (caret and not exp_txt.isdigit()):
            raise PolyParseError(f"bad factor {part!r} in term {where!r}")
        var = int(var_txt)
        exp = int(exp_txt) if caret else 1
        if not 1 <= var <= n_vars:
            raise PolyParseError(f"variable x{var} outside 1..{n_vars} in term {where!r}")
        if exp < 1:
            raise PolyParseError(f"exponent must be positive in term {where!r}")
        exps.append((var - 1, exp))
    return Monomial.make(exps, n_vars), coeff


def parse_poly(text: str, field: FieldSpec, n_vars: int) -> Polynomial:
    """Parse the text form: terms joined by + (or -), term = c*x<i>^<e>*...

    Whitespace is ignored anywhere.  Coefficients reduce mod p; a leading
    minus maps to the additive inverse.
    """
    s = "".join(text.split())
    if s == "0":
        return Polynomial.zero(field, n_vars)
    pairs = []
    for sign, body in _split_terms(s):
        mono, coeff = _parse_term(body, n_vars, body)
        pairs.append((mono, sign * coeff))
    return Polynomial.make(field, n_vars, pairs)


def parse_monomial(text: str, n_vars: int) -> Monomial:
    """Parse a single monomial like x1*x8*x9 or x2^3 (no coefficient)."""
    s = "".join(text.split())
    mono, coeff = _parse_term(s, n_vars, s)
    if coeff != 1:
        raise PolyParseError(f"expected a bare monomial, got coefficient {coeff} in {text!r}")
    return mono


@dataclass(frozen=True)
class PolySystem:
    """An ordered polynomial system F = (f_1, ..., f_s) with source tags.

    Tags name where each polynomial came from (vertex:i, edge:u-v,
    cutter:u-v-w, user:k) and travel into certificates.
    """

    field: FieldSpec
    n_vars: int
    polys: Tuple[Polynomial, ...]
    tags: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.polys:
            raise PolyError("polynomial system must be nonempty")
        if not self.tags:
            object.__setattr__(self, "tags", tuple(f"user:{i}" for i in range(len(self.polys))))
        if len(self.tags) != len(self.polys):
            raise PolyError("tags length must match polynomial count")
        for poly in self.polys:
            if poly.field != self.field or poly.n_vars != self.n_vars:
                raise PolyError("system polynomial field or n_vars mismatch")

    @classmethod
    def make(
        cls,
        field_spec: FieldSpec,
        n_vars: int,
        polys: Iterable[Polynomial],
        tags: Optional[Iterable[str]] = None,
    ) -> "PolySystem":
        return cls(field_spec, n_vars, tuple(polys), tuple(tags) if tags is not None else ())

    @property
    def max_degree(self) -> int:
        return max(p.degree for p in self.polys)

    def __len__(self) -> int:
        return len(self.polys)


__all__ = [
    "FieldSpec",
    "Monomial",
    "Polynomial",
    "PolySystem",
    "PolyError",
    "PolyParseError",
    "field_ops",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "poly_scale",
    "negate",
    "monomials_up_to",
    "count_monomials_up_to",
    "format_monomial",
    "format_poly",
    "parse_poly",
    "parse_monomial",
]
