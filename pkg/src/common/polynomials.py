"""
Polynomials over F_2
====================

Sparse multivariate polynomials over F_2 in at most five variables.

A monomial is one int holding the prefix sums of its exponent vector in 8-bit
fields, lowest field first::

    field f = e_1 + ... + e_{f+1}      (field 4 is the total degree)

With that packing, integer comparison is exactly degrevlex with the first
variable largest, and multiplying monomials is integer addition. A polynomial
is a frozenset of such ints; addition is symmetric difference.

Ambients fix the variable names: ``P4`` = v,w,x,y,z; ``P3`` = x,y,z,w;
``P2`` = x,y,z; ``A2`` = x,y.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.common.binfield import FieldElem, get_field
from src.common.errors import PolynomialParseError

NVARS = 5
FIELD_BITS = 8
FIELD_MASK = (1 << FIELD_BITS) - 1
DEGREE_SHIFT = FIELD_BITS * (NVARS - 1)
GUARD = sum(0x80 << (FIELD_BITS * i) for i in range(NVARS))

AMBIENTS: Dict[str, Tuple[str, ...]] = {
    "P4": ("v", "w", "x", "y", "z"),
    "P3": ("x", "y", "z", "w"),
    "P2": ("x", "y", "z"),
    "A2": ("x", "y"),
}


def pack(exponents: Sequence[int]) -> int:
    """Pack an exponent vector (at most five entries) into a monomial key."""
    if len(exponents) > NVARS or any(e < 0 for e in exponents):
        raise ValueError(f"Invalid exponent vector {tuple(exponents)}")
    key = 0
    running = 0
    for f in range(NVARS):
        running += exponents[f] if f < len(exponents) else 0
        key |= running << (FIELD_BITS * f)
    if running > FIELD_MASK:
        raise ValueError("Total degree too large for the monomial packing")
    return key


_EXPONENT_CACHE: Dict[int, Tuple[Tuple[int, ...], int, int]] = {}


def _decode(key: int) -> Tuple[Tuple[int, ...], int, int]:
    """(exponent tuple, SWAR-packed exponents, support mask), memoized."""
    cached = _EXPONENT_CACHE.get(key)
    if cached is None:
        exps = []
        previous = 0
        for f in range(NVARS):
            running = (key >> (FIELD_BITS * f)) & FIELD_MASK
            exps.append(running - previous)
            previous = running
        swar = sum(e << (FIELD_BITS * i) for i, e in enumerate(exps))
        support = sum(1 << i for i, e in enumerate(exps) if e)
        cached = (tuple(exps), swar, support)
        _EXPONENT_CACHE[key] = cached
    return cached


def exponents(key: int) -> Tuple[int, ...]:
    return _decode(key)[0]


def support(key: int) -> int:
    return _decode(key)[2]


def monomial_degree(key: int) -> int:
    return key >> DEGREE_SHIFT


def divides(a: int, b: int) -> bool:
    """True iff monomial a divides monomial b."""
    return (((_decode(b)[1] | GUARD) - _decode(a)[1]) & GUARD) == GUARD


def lcm(a: int, b: int) -> int:
    ea, eb = exponents(a), exponents(b)
    return pack([max(x, y) for x, y in zip(ea, eb)])


def coprime(a: int, b: int) -> bool:
    return support(a) & support(b) == 0


def unit(i: int) -> int:
    """The monomial of the i-th variable."""
    exps = [0] * NVARS
    exps[i] = 1
    return pack(exps)


@lru_cache(maxsize=None)
def monomials_of_degree(d: int, nvars: int) -> Tuple[int, ...]:
    """All degree-d monomial keys in the first nvars variables, ascending."""
    keys = []
    for combo in combinations_with_replacement(range(nvars), d):
        exps = [0] * NVARS
        for i in combo:
            exps[i] += 1
        keys.append(pack(exps))
    return tuple(sorted(keys))


@dataclass(frozen=True)
class Monomial:
    """A single monomial; ``key`` is the degrevlex-ordered packing."""
    key: int

    @property
    def exponents(self) -> Tuple[int, ...]:
        return exponents(self.key)

    @property
    def degree(self) -> int:
        return monomial_degree(self.key)

    def divides(self, other: "Monomial") -> bool:
        return divides(self.key, other.key)

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key


def _render_monomial(key: int, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, exponents(key)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts) or "1"


def _lex_order(key: int) -> Tuple[int, ...]:
    return exponents(key)


@dataclass(frozen=True)
class MultiPoly:
    """A polynomial over F_2; coefficients are implicit (every listed term is 1)."""
    terms: FrozenSet[int]
    variables: Tuple[str, ...]

    def __post_init__(self):
        if len(self.variables) > NVARS:
            raise ValueError(f"At most {NVARS} variables are supported")

    # Constructors

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(frozenset(), tuple(variables))

    @classmethod
    def one(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(frozenset({0}), tuple(variables))

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        return cls(frozenset({unit(tuple(variables).index(name))}), tuple(variables))

    @classmethod
    def from_terms(cls, terms: Iterable[int], variables: Sequence[str]) -> "MultiPoly":
        acc = set()
        for t in terms:
            acc ^= {t}
        return cls(frozenset(acc), tuple(variables))

    @classmethod
    def from_exponents(cls, exponent_vectors: Iterable[Sequence[int]], variables: Sequence[str]) -> "MultiPoly":
        return cls.from_terms((pack(e) for e in exponent_vectors), variables)

    @classmethod
    def parse(cls, text: str, ambient: str = "P4") -> "MultiPoly":
        """Parse text such as ``vx + z(v + w + z)`` in a named ambient or explicit variable string."""
        variables = AMBIENTS.get(ambient, tuple(ambient))
        return _Parser(text, variables).parse()

    # Arithmetic

    def _check(self, other: "MultiPoly"):
        if other.variables != self.variables:
            raise ValueError(f"Variable mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(self.terms ^ other.terms, self.variables)

    __sub__ = __add__

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        acc = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a + b}
        return MultiPoly(frozenset(acc), self.variables)

    def __pow__(self, e: int) -> "MultiPoly":
        result = MultiPoly.one(self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, monomial: int) -> "MultiPoly":
        return MultiPoly(frozenset(t + monomial for t in self.terms), self.variables)

    def partial(self, i: int) -> "MultiPoly":
        """Formal derivative in the i-th variable (d/dx x^e = e x^(e-1) mod 2)."""
        step = unit(i)
        return MultiPoly(
            frozenset(t - step for t in self.terms if exponents(t)[i] & 1),
            self.variables,
        )

    # Inspection

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((monomial_degree(t) for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(t) for t in self.terms}) <= 1

    def leading_monomial(self) -> Optional[Monomial]:
        return Monomial(max(self.terms)) if self.terms else None

    def coefficient(self, exps: Sequence[int]) -> int:
        return 1 if pack(exps) in self.terms else 0

    # Evaluation

    def evaluate(self, point: Sequence[FieldElem]) -> FieldElem:
        field = point[0].field
        total = 0
        for t in self.terms:
            value = 1
            for coordinate, e in zip(point, exponents(t)):
                if e:
                    value = field.mul_bits(value, field.pow_bits(coordinate.bits, e))
            total ^= value
        return FieldElem(total, field)

    def evaluate_array(self, points: np.ndarray, k: int) -> np.ndarray:
        """Values at every row of a (N, nvars) array of F_{2^k} bit patterns."""
        field = get_field(k)
        table = field.mul_table()
        result = np.zeros(points.shape[0], dtype=np.uint8)
        for t in self.terms:
            value = np.ones(points.shape[0], dtype=np.uint8)
            for i, e in enumerate(exponents(t)):
                if e:
                    value = table[value, field.power_table(e)[points[:, i]]]
            result ^= value
        return result

    # Rendering

    def sorted_terms(self) -> List[int]:
        """Terms in lexicographic order, largest first."""
        return sorted(self.terms, key=_lex_order, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_render_monomial(t, self.variables) for t in self.sorted_terms())


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


class _Parser:
    """Recursive descent: expr := term (+ term)*, term := factor+, factor := atom (^ n)?"""

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str]]:
        tokens = []
        for number, name, symbol in _TOKEN.findall(text):
            if number:
                tokens.append(("num", number))
            elif name:
                if name not in self.variables:
                    raise PolynomialParseError(f"Unknown variable {name!r}; expected one of {''.join(self.variables)}")
                tokens.append(("var", name))
            elif symbol:
                if symbol not in "+-*^()":
                    raise PolynomialParseError(f"Unexpected character {symbol!r} in {text!r}")
                tokens.append(("sym", symbol))
        return tokens

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise PolynomialParseError(f"Unexpected end of input in {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolynomialParseError("Empty polynomial")
        result = self._expr()
        if self._peek() is not None:
            raise PolynomialParseError(f"Trailing input after position {self.pos} in {self.text!r}")
        return result

    def _expr(self) -> MultiPoly:
        if self._peek() in (("sym", "+"), ("sym", "-")):
            self._take()
        result = self._term()
        while self._peek() in (("sym", "+"), ("sym", "-")):
            self._take()
            result = result + self._term()
        return result

    def _starts_factor(self, token) -> bool:
        return token is not None and (token[0] in ("num", "var") or token == ("sym", "("))

    def _term(self) -> MultiPoly:
        result = self._factor()
        while True:
            token = self._peek()
            if token == ("sym", "*"):
                self._take()
                result = result * self._factor()
            elif self._starts_factor(token):
                result = result * self._factor()
            else:
                return result

    def _factor(self) -> MultiPoly:
        base = self._atom()
        if self._peek() == ("sym", "^"):
            self._take()
            kind, value = self._take()
            if kind != "num":
                raise PolynomialParseError(f"Exponent must be an integer in {self.text!r}")
            base = base ** int(value)
        return base

    def _atom(self) -> MultiPoly:
        kind, value = self._take()
        if kind == "num":
            return MultiPoly.one(self.variables) if int(value) % 2 else MultiPoly.zero(self.variables)
        if kind == "var":
            return MultiPoly.variable(value, self.variables)
        if value == "(":
            inner = self._expr()
            if self._take() != ("sym", ")"):
                raise PolynomialParseError(f"Missing ')' in {self.text!r}")
            return inner
        raise PolynomialParseError(f"Unexpected {value!r} in {self.text!r}")
