"""Exact scalars: rationals and rational functions in one transcendental ``t``.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions
are :class:`RationalFunction` instances kept in lowest terms with a monic
denominator.  Arithmetic that produces a constant function collapses back to
a ``Fraction``, so a scalar equal to a rational is always a ``Fraction`` and
equality of canonical forms is equality of values.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Poly = Tuple[Fraction, ...]  # coefficients, lowest degree first, no trailing zeros
Scalar = Union[Fraction, "RationalFunction"]

ZERO = Fraction(0)
ONE = Fraction(1)


class ScalarError(ArithmeticError):
    """Raised for division by zero or malformed scalar text."""


# ---------------------------------------------------------------------------
# polynomials over Q


def _strip(p: Iterable) -> Poly:
    c = [Fraction(x) for x in p]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _strip((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO)
                  for i in range(n))


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def p_scale(a: Poly, c: Fraction) -> Poly:
    return _strip(x * c for x in a) if c else ()


def p_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    if not b:
        raise ScalarError("polynomial division by zero")
    r = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            r[i + k] -= f * y
        r = list(_strip(r))
    return _strip(q), tuple(r)


def p_monic(a: Poly) -> Poly:
    return p_scale(a, 1 / a[-1]) if a else ()


def p_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, p_divmod(a, b)[1]
    return p_monic(a)


# ---------------------------------------------------------------------------


class RationalFunction:
    """Element of Q(t) with a non-constant canonical representation.

    Construct through :func:`rational_function`, which performs gcd
    cancellation and collapses constants to ``Fraction``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._hash = hash((num, den))

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _parts(x) -> Tuple[Poly, Poly]:
        if isinstance(x, RationalFunction):
            return x.num, x.den
        if isinstance(x, (int, Fraction)):
            return _strip((x,)), (ONE,)
        raise TypeError(type(x))

    def __add__(self, other):
        try:
            n2, d2 = self._parts(other)
        except TypeError:
            return NotImplemented
        return rational_function(p_add(p_mul(self.num, d2), p_mul(n2, self.den)),
                                 p_mul(self.den, d2))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(p_neg(self.num), self.den)

    def __sub__(self, other):
        try:
            n2, d2 = self._parts(other)
        except TypeError:
            return NotImplemented
        return rational_function(p_sub(p_mul(self.num, d2), p_mul(n2, self.den)),
                                 p_mul(self.den, d2))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            n2, d2 = self._parts(other)
        except TypeError:
            return NotImplemented
        return rational_function(p_mul(self.num, n2), p_mul(self.den, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            n2, d2 = self._parts(other)
        except TypeError:
            return NotImplemented
        if not n2:
            raise ScalarError("division by zero")
        return rational_function(p_mul(self.num, d2), p_mul(self.den, n2))

    def __rtruediv__(self, other):
        n1, d1 = self._parts(other)
        return rational_function(p_mul(n1, self.den), p_mul(d1, self.num))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else 1 / self
        out: Scalar = Fraction(1)
        for _ in range(abs(k)):
            out = base * out
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        # canonical non-constant functions never equal a rational
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RationalFunction({format_scalar(self)!r})"

    __str__ = lambda self: format_scalar(self)


def rational_function(num: Sequence, den: Sequence = (1,)) -> Scalar:
    """Return the canonical scalar ``num/den`` (coefficient lists, low degree first)."""
    num, den = _strip(num), _strip(den)
    if not den:
        raise ScalarError("division by zero")
    if not num:
        return ZERO
    g = p_gcd(num, den)
    if len(g) > 1:
        num, den = p_divmod(num, g)[0], p_divmod(den, g)[0]
    lead = den[-1]
    num, den = p_scale(num, 1 / lead), p_scale(den, 1 / lead)
    if len(num) == 1 and len(den) == 1:
        return num[0]
    return RationalFunction(num, den)


T = rational_function((0, 1))  # the transcendental t


def as_scalar(x) -> Scalar:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field arithmetic; ``op`` is one of add, sub, mul, div."""
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ScalarError("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def sign(x: Scalar) -> int:
    """Sign of a rational scalar.  Rational functions have no order here."""
    if not is_rational(x):
        raise ScalarError(f"sign undefined for non-rational scalar {format_scalar(x)}")
    return (x > 0) - (x < 0)


def numerator_denominator(x: Scalar) -> Tuple[Poly, Poly]:
    return RationalFunction._parts(x)


# ---------------------------------------------------------------------------
# Q-linear independence


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return p_monic(p_divmod(p_mul(a, b), p_gcd(a, b))[0])


def common_denominator(values: Iterable[Scalar]) -> Poly:
    den: Poly = (ONE,)
    for v in values:
        den = poly_lcm(den, numerator_denominator(v)[1])
    return den


def flatten(values: Sequence[Scalar], den: Poly | None = None,
            degree: int | None = None) -> list[list[Fraction]]:
    """Rational coefficient vectors of ``v * den`` for each value.

    With a common denominator the map Q(t) -> Q^k is Q-linear and injective
    on the Q-span of ``values``, which is what exact Q-rank questions need.
    """
    if den is None:
        den = common_denominator(values)
    polys = []
    for v in values:
        n, d = numerator_denominator(v)
        q, r = p_divmod(p_mul(n, den), d)
        if r:
            raise ScalarError("denominator does not divide the common denominator")
        polys.append(q)
    if degree is None:
        degree = max((len(p) for p in polys), default=0)
    out = []
    for p in polys:
        if len(p) > degree:
            raise ScalarError("degree exceeds flattening bound")
        out.append(list(p) + [ZERO] * (degree - len(p)))
    return out


def q_linear_independent(values: Sequence[Scalar]) -> bool:
    """True iff no nontrivial rational combination of ``values`` vanishes."""
    from .linalg import rank

    values = [as_scalar(v) for v in values]
    if not values:
        raise ValueError("values must be nonempty")
    rows = flatten(values)
    return rank(rows) == len(values)


# ---------------------------------------------------------------------------
# text encoding


def _format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = _format_rational(a)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if a == 1 else f"{_format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def format_scalar(x: Scalar) -> str:
    """Canonical text: ``p/q`` for rationals, ``(<poly>)/(<poly>)`` in ``t`` otherwise."""
    if isinstance(x, RationalFunction):
        return f"({_format_poly(x.num)})/({_format_poly(x.den)})"
    return _format_rational(Fraction(x))


_TERM = re.compile(r"([+-]?)([0-9]+(?:/[0-9]+)?)?(\*?t(?:\^([0-9]+))?)?")


def _parse_poly(s: str) -> Poly:
    s = s.replace(" ", "")
    if not s:
        raise ScalarError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ScalarError(f"cannot parse polynomial {s!r}")
        sgn, num, mono, exp = m.groups()
        if mono and mono.startswith("*") and num is None:
            raise ScalarError(f"cannot parse polynomial {s!r}")
        c = Fraction(num) if num else ONE
        if sgn == "-":
            c = -c
        k = (int(exp) if exp else 1) if mono else 0
        coeffs[k] = coeffs.get(k, ZERO) + c
        pos = m.end()
    top = max(coeffs)
    return _strip(coeffs.get(i, ZERO) for i in range(top + 1))


def parse_scalar(s: str) -> Scalar:
    """Inverse of :func:`format_scalar`."""
    s = s.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
    if m:
        return rational_function(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
    if "t" in s:
        return rational_function(_parse_poly(s))
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"cannot parse scalar {s!r}") from exc
