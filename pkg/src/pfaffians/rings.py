"""Exact sparse multivariate polynomial arithmetic.

Coefficients live in an exact field: the rationals (``QQ``, backed by
`fractions.Fraction`) or a prime field (``GF(p)``, backed by machine ints
reduced mod p).  Polynomials are immutable sparse term dictionaries keyed by
exponent tuples, ordered by a configurable term order (degrevlex by default).

The text format accepted by :meth:`PolynomialRing.parse` and produced by
``str()`` uses integer (or ``a/b`` rational) literals, declared variable
names, ``+ - * ^`` and parentheses; implicit multiplication is a syntax
error.  ``parse(str(f)) == f`` for every polynomial ``f``.
"""

from __future__ import annotations

from fractions import Fraction


class ParseError(ValueError):
    """Raised for malformed polynomial text; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field QQ; elements are `fractions.Fraction` values."""

    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        return a / self.coerce(b) if not isinstance(b, Fraction) else a / b

    def coeff_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p); elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} vanishes in GF({self.p})"
                )
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def coeff_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_of_characteristic(char: int):
    """QQ for char 0, GF(char) for prime char."""
    return QQ if char == 0 else GF(char)


# ---------------------------------------------------------------------------
# term orders

def _key_grevlex(exps):
    total = 0
    for e in exps:
        total += e
    return (total, tuple(-e for e in reversed(exps)))


def _key_grlex(exps):
    total = 0
    for e in exps:
        total += e
    return (total, exps)


def _key_lex(exps):
    return exps


_ORDER_KEYS = {"grevlex": _key_grevlex, "grlex": _key_grlex, "lex": _key_lex}


class TermOrder:
    """A named monomial order exposed as a sort key on exponent tuples."""

    def __init__(self, name: str):
        if name not in _ORDER_KEYS:
            raise ValueError(f"unknown term order {name!r}; choose from {sorted(_ORDER_KEYS)}")
        self.name = name
        self.key = _ORDER_KEYS[name]

    def greater(self, a, b) -> bool:
        return self.key(a) > self.key(b)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.name == self.name

    def __hash__(self):
        return hash(("order", self.name))

    def __repr__(self):
        return f"TermOrder({self.name!r})"


# ---------------------------------------------------------------------------
# rings

_NAME_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class PolynomialRing:
    """A polynomial ring over an exact field with a fixed term order.

    >>> R = PolynomialRing(QQ, ["x", "y"])
    >>> x, y = R.gens
    >>> str(x**2 - 2*x*y)
    'x^2 - 2*x*y'
    """

    def __init__(self, field, variables, order: str | TermOrder = "grevlex"):
        self.field = field
        variables = tuple(variables)
        if not variables:
            raise ValueError("need at least one variable")
        seen = set()
        for v in variables:
            if not v or v[0].isdigit() or not set(v) <= _NAME_OK:
                raise ValueError(f"bad variable name {v!r}")
            if v in seen:
                raise ValueError(f"duplicate variable name {v!r}")
            seen.add(v)
        self.variables = variables
        self.order = order if isinstance(order, TermOrder) else TermOrder(order)
        self.nvars = len(variables)
        self._varindex = {v: i for i, v in enumerate(variables)}
        self._zero_exp = (0,) * self.nvars
        self.zero = Polynomial(self, {})
        self.one = Polynomial(self, {self._zero_exp: field.one})
        self.gens = tuple(
            Polynomial(self, {tuple(1 if j == i else 0 for j in range(self.nvars)): field.one})
            for i in range(self.nvars)
        )

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def gen(self, which) -> "Polynomial":
        if isinstance(which, str):
            which = self._varindex[which]
        return self.gens[which]

    def constant(self, value) -> "Polynomial":
        c = self.field.coerce(value)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def polynomial(self, terms: dict) -> "Polynomial":
        """Build a polynomial from {exponent tuple: coefficient}, normalizing."""
        out = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = self.field.coerce(coeff)
            if c:
                out[exps] = c
        return Polynomial(self, out)

    def _build(self, terms: dict) -> "Polynomial":
        # internal: terms already use native coefficients, may contain zeros
        p = self.field.characteristic
        if p:
            out = {m: c for m, c in terms.items() if c % p}
            for m in out:
                out[m] %= p
        else:
            out = {m: c for m, c in terms.items() if c}
        return Polynomial(self, out)

    def monomials_of_degree(self, degree: int):
        """Yield all exponent tuples of the given total degree (deterministic)."""
        if degree < 0:
            return
        n = self.nvars
        exps = [0] * n

        def rec(i, rem):
            if i == n - 1:
                exps[i] = rem
                yield tuple(exps)
                return
            for e in range(rem, -1, -1):
                exps[i] = e
                yield from rec(i + 1, rem - e)
            exps[i] = 0

        yield from rec(0, degree)

    def random_homogeneous(self, degree: int, rng, nonzero: bool = True) -> "Polynomial":
        """A random homogeneous polynomial of the given degree.

        Coefficients are drawn uniformly from GF(p), or from small integers
        over QQ.  Deterministic for a given `random.Random` state.
        """
        p = self.field.characteristic
        for _ in range(64):
            terms = {}
            for m in self.monomials_of_degree(degree):
                c = rng.randrange(p) if p else rng.randint(-2, 2)
                if c:
                    terms[m] = self.field.coerce(c)
            if terms or not nonzero:
                return Polynomial(self, terms)
        raise RuntimeError("failed to draw a nonzero polynomial")

    def parse(self, text: str) -> "Polynomial":
        return _parse_polynomial(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.field == self.field
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}] ({self.order.name})"


def polynomial_ring(char: int, variables, order: str = "grevlex") -> PolynomialRing:
    """Convenience constructor from a characteristic (0 or prime)."""
    return PolynomialRing(field_of_characteristic(char), variables, order)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """An immutable sparse polynomial; construct via its ring."""

    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self.ring._build(out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return self.ring._build(out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return self.ring._build(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, coeff) -> "Polynomial":
        c = self.ring.field.coerce(coeff)
        if not c:
            return self.ring.zero
        mul = self.ring.field.mul
        return Polynomial(self.ring, {m: mul(c, v) for m, v in self.terms.items()})

    def mul_term(self, exps, coeff) -> "Polynomial":
        """Multiply by coeff * x^exps without building an intermediate polynomial."""
        c = self.ring.field.coerce(coeff)
        if not c or not self.terms:
            return self.ring.zero
        mul = self.ring.field.mul
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): mul(c, v) for m, v in self.terms.items()},
        )

    # -- degree and leading data ------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous polynomial (-1 for 0); error otherwise."""
        if not self.terms:
            return -1
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: {self}")
        return degs.pop()

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None:
            self._lead = max(self.terms, key=self.ring.order.key)
        return self._lead

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def sorted_terms(self):
        """Terms as (exponent tuple, coefficient), descending in the ring order."""
        key = self.ring.order.key
        return [(m, self.terms[m]) for m in sorted(self.terms, key=key, reverse=True)]

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient self / divisor; raises ValueError if not divisible."""
        if not isinstance(divisor, Polynomial) or divisor.ring != self.ring:
            raise ValueError("divisor must come from the same ring")
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        field = self.ring.field
        dm = divisor.leading_monomial()
        dc = divisor.leading_coefficient()
        dc_inv = field.inv(dc)
        rest = dict(self.terms)
        key = self.ring.order.key
        quot = {}
        while rest:
            m = max(rest, key=key)
            shift = tuple(a - b for a, b in zip(m, dm))
            if any(e < 0 for e in shift):
                raise ValueError("not exactly divisible")
            c = field.mul(rest[m], dc_inv)
            quot[shift] = c
            for m2, c2 in divisor.terms.items():
                tgt = tuple(a + b for a, b in zip(shift, m2))
                v = rest.get(tgt, 0) - c * c2
                if field.characteristic:
                    v %= field.characteristic
                if v:
                    rest[tgt] = v
                elif tgt in rest:
                    del rest[tgt]
        return Polynomial(self.ring, quot)

    def __str__(self):
        return _format_polynomial(self)

    def __repr__(self):
        return f"<{_format_polynomial(self)}>"


# ---------------------------------------------------------------------------
# printer

def _format_monomial(ring: PolynomialRing, exps) -> str:
    parts = []
    for name, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_polynomial(poly: Polynomial) -> str:
    if poly.is_zero:
        return "0"
    ring = poly.ring
    rational = ring.field.characteristic == 0
    pieces = []
    for i, (m, c) in enumerate(poly.sorted_terms()):
        mono = _format_monomial(ring, m)
        if rational and c < 0:
            sign = "-" if i == 0 else " - "
            c = -c
        else:
            sign = "" if i == 0 else " + "
        cs = ring.field.coeff_str(c)
        if mono and cs == "1":
            body = mono
        elif mono:
            body = f"{cs}*{mono}"
        else:
            body = cs
        pieces.append(sign + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parser

_TOK_INT = "int"
_TOK_NAME = "name"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_TOK_INT, text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_TOK_NAME, text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((_TOK_OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_TOK_END, "", n))
    return tokens


class _Parser:
    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, at = self.peek()
        if kind != _TOK_OP or value != op:
            raise ParseError(f"expected {op!r}", at)
        return self.advance()

    def parse(self) -> Polynomial:
        poly = self.expression()
        kind, value, at = self.peek()
        if kind != _TOK_END:
            raise ParseError(f"unexpected {value!r}", at)
        return poly

    def expression(self) -> Polynomial:
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value in "+-":
            self.advance()
            result = self.term()
            if value == "-":
                result = -result
        else:
            result = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value in "+-":
                self.advance()
                rhs = self.term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, value, at = self.peek()
            if kind == _TOK_OP and value == "*":
                self.advance()
                result = result * self.factor()
            elif kind in (_TOK_INT, _TOK_NAME) or (kind == _TOK_OP and value == "("):
                raise ParseError("missing operator (implicit multiplication is not allowed)", at)
            else:
                return result

    def factor(self) -> Polynomial:
        kind, value, at = self.peek()
        if kind == _TOK_OP and value == "-":
            self.advance()
            return -self.factor()
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value == "^":
            self.advance()
            kind, value, at = self.peek()
            if kind != _TOK_INT:
                raise ParseError("exponent must be a nonnegative integer", at)
            self.advance()
            return base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value, at = self.advance()
        if kind == _TOK_INT:
            num = int(value)
            kind2, value2, _ = self.peek()
            if kind2 == _TOK_OP and value2 == "/":
                self.advance()
                kind3, value3, at3 = self.peek()
                if kind3 != _TOK_INT:
                    raise ParseError("denominator must be an integer literal", at3)
                self.advance()
                den = int(value3)
                if den == 0:
                    raise ParseError("zero denominator", at3)
                return self.ring.constant(Fraction(num, den))
            return self.ring.constant(num)
        if kind == _TOK_NAME:
            if value not in self.ring._varindex:
                raise ParseError(f"unknown variable {value!r}", at)
            return self.ring.gen(value)
        if kind == _TOK_OP and value == "(":
            inner = self.expression()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", at)


def _parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    return _Parser(ring, text).parse()
