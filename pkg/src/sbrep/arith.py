"""Exact scalars: Gaussian rationals, Laurent polynomials in ``t`` and a
quadratic-extension layer used for 2x2 eigenvectors.

Rationals are ``gmpy2.mpq`` values.  All scalar objects are immutable and
hashable; equal values compare and hash equal across the three scalar types
whenever they represent the same Gaussian rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    EvalAtZero,
    NonUnitLaurentDivisor,
    RadicandMismatch,
)

__all__ = [
    "GaussianRational",
    "LaurentPoly",
    "QuadExt",
    "I",
    "ONE",
    "ZERO",
    "T",
    "as_gaussian",
    "as_rational",
    "laurent_eval",
    "rational_sqrt",
    "gaussian_sqrt",
    "sqrt_quad",
    "scalar_arith",
    "ring_of",
]

_MPQ = type(mpq(0))


def as_rational(x):
    """Coerce ints, Fractions, mpq or strings like ``"3/4"`` to ``mpq``."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, (Fraction, _RationalABC)):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return mpq(f.numerator, f.denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational")


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"1/2-3/4i"``, ``"-i"``, ``"2"``, ``"1+i"`` and similar."""
        s = text.replace(" ", "").replace("*", "").replace("j", "i").replace("I", "i")
        if not s:
            raise ValueError("empty scalar literal")
        if not s.endswith("i"):
            return cls(as_rational(s))
        body = s[:-1]
        k = max(body.rfind("+"), body.rfind("-"))
        if k > 0:
            re_s, im_s = body[:k], body[k:]
        else:
            re_s, im_s = "0", body
        if im_s in ("", "+"):
            im_s = "1"
        elif im_s == "-":
            im_s = "-1"
        return cls(as_rational(re_s), as_rational(im_s))

    # ring structure -------------------------------------------------------
    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self):
        """The field norm ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if not n:
            raise DivisionByZero("Gaussian rational 0 has no inverse")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        lifted = _lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return self.re == lifted.re and self.im == lifted.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self):
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            im_s = "i"
        elif im == -1:
            im_s = "-i"
        else:
            im_s = f"{im}i"
        if not re:
            return im_s
        if im_s.startswith("-"):
            return f"{re}{im_s}"
        return f"{re}+{im_s}"

    def to_json(self):
        return {
            "re": {"num": str(self.re.numerator), "den": str(self.re.denominator)},
            "im": {"num": str(self.im.numerator), "den": str(self.im.denominator)},
        }

    @classmethod
    def from_json(cls, obj):
        def rat(r):
            return mpq(int(r["num"]), int(r["den"]))
        return cls(rat(obj["re"]), rat(obj["im"]))


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def as_gaussian(x) -> GaussianRational:
    """Coerce ints, rationals, strings, complex or JSON dicts to Q(i)."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _MPQ, Fraction, _RationalABC)):
        return GaussianRational(x)
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, dict):
        return GaussianRational.from_json(x)
    if isinstance(x, QuadExt) and not x.coeff:
        return x.base
    if isinstance(x, LaurentPoly) and x.is_constant():
        return x.constant_term()
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only integral complex literals are exact")
        return GaussianRational(int(x.real), int(x.imag))
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


def _lift(x):
    if isinstance(x, (int, _MPQ, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    return NotImplemented


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


class LaurentPoly:
    """Finite sum ``sum(c_k * t**k)`` with Gaussian-rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coeff in items:
                c = as_gaussian(coeff)
                if c:
                    exp = int(exp)
                    prev = clean.get(exp)
                    c = c if prev is None else prev + c
                    if c:
                        clean[exp] = c
                    else:
                        clean.pop(exp, None)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def zero(self):
        return LAURENT_ZERO

    def one(self):
        return LAURENT_ONE

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def constant_term(self):
        return self._terms.get(0, ZERO)

    def is_unit(self):
        """Units of Q(i)[t, 1/t] are exactly the nonzero monomials."""
        return len(self._terms) == 1

    def min_degree(self):
        return min(self._terms) if self._terms else None

    def max_degree(self):
        return max(self._terms) if self._terms else None

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return LaurentPoly(out)

    __rmul__ = __mul__

    def inverse(self):
        if not self._terms:
            raise DivisionByZero("Laurent polynomial 0 has no inverse")
        if len(self._terms) != 1:
            raise NonUnitLaurentDivisor(f"{self} is not a unit of the Laurent ring")
        (e, c), = self._terms.items()
        return LaurentPoly({-e: c.inverse()})

    def __truediv__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = LAURENT_ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def evaluate(self, t0):
        return laurent_eval(self, t0)

    def __call__(self, t0):
        return laurent_eval(self, t0)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "t"
            else:
                mono = f"t^{e}"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif c.im:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json(self):
        return [{"exp": e, "coeff": c.to_json()} for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, obj):
        return cls({int(item["exp"]): GaussianRational.from_json(item["coeff"]) for item in obj})


def _as_laurent(x):
    if type(x) is LaurentPoly:
        return x
    if type(x) is GaussianRational:
        return LaurentPoly({0: x}) if x else LAURENT_ZERO
    lifted = _lift(x)
    if lifted is NotImplemented:
        return NotImplemented
    return LaurentPoly({0: lifted})


LAURENT_ZERO = LaurentPoly()
LAURENT_ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


def laurent_eval(p: LaurentPoly, t0) -> GaussianRational:
    """Substitute ``t = t0`` into ``p``."""
    t0 = as_gaussian(t0)
    if not isinstance(p, LaurentPoly):
        return as_gaussian(p)
    if not t0:
        if p.min_degree() is not None and p.min_degree() < 0:
            raise EvalAtZero(f"cannot evaluate {p} at t = 0")
        return p.constant_term()
    total = ZERO
    for e, c in p._terms.items():
        total = total + c * t0 ** e
    return total


# --------------------------------------------------------------------------
# square roots and the quadratic extension Q(i)(sqrt(delta))
# --------------------------------------------------------------------------


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or ``None``."""
    q = as_rational(q)
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    return None


def gaussian_sqrt(d) -> GaussianRational | None:
    """Exact square root of ``d`` inside Q(i), or ``None`` if there is none.

    The root returned has positive real part, or is ``y*i`` with ``y > 0``.
    """
    d = as_gaussian(d)
    if not d:
        return ZERO
    p, q = d.re, d.im
    r = rational_sqrt(p * p + q * q)
    if r is None:
        return None
    x = rational_sqrt((p + r) / 2)
    if x is None:
        return None
    if x:
        y = q / (2 * x)
    else:
        y = rational_sqrt((r - p) / 2)
        if y is None:
            return None
    root = GaussianRational(x, y)
    return root if root * root == d else None


class QuadExt:
    """``base + coeff * sqrt(radicand)`` over Q(i) with a fixed radicand.

    When ``radicand`` is a square in Q(i) the radical part is folded into
    ``base`` so that the representation stays unique.
    """

    __slots__ = ("base", "coeff", "radicand")

    def __init__(self, base=0, coeff=0, radicand=0):
        base = as_gaussian(base)
        coeff = as_gaussian(coeff)
        radicand = as_gaussian(radicand)
        if coeff:
            root = gaussian_sqrt(radicand)
            if root is not None:
                base = base + coeff * root
                coeff = ZERO
        self.base = base
        self.coeff = coeff
        self.radicand = radicand

    @classmethod
    def _raw(cls, base, coeff, radicand):
        obj = object.__new__(cls)
        obj.base, obj.coeff, obj.radicand = base, coeff, radicand
        return obj

    def zero(self):
        return QuadExt._raw(ZERO, ZERO, self.radicand)

    def one(self):
        return QuadExt._raw(ONE, ZERO, self.radicand)

    def is_plain(self):
        return not self.coeff

    def simplify(self):
        """Return a plain ``GaussianRational`` when the radical part is zero."""
        return self.base if not self.coeff else self

    def __bool__(self):
        return bool(self.base) or bool(self.coeff)

    def is_zero(self):
        return not self

    def _coerce(self, other):
        if type(other) is QuadExt:
            if other.coeff and self.coeff and other.radicand != self.radicand:
                raise RadicandMismatch(f"sqrt({self.radicand}) vs sqrt({other.radicand})")
            return other
        if type(other) is GaussianRational:
            return QuadExt._raw(other, ZERO, self.radicand)
        lifted = _lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return QuadExt._raw(lifted, ZERO, self.radicand)

    def _radicand_with(self, other):
        return self.radicand if self.coeff or not other.coeff else other.radicand

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt._raw(self.base + other.base, self.coeff + other.coeff,
                            self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.base, -self.coeff, self.radicand)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        delta = self._radicand_with(other)
        a, b, c, d = self.base, self.coeff, other.base, other.coeff
        return QuadExt._raw(a * c + b * d * delta, a * d + b * c, delta)

    __rmul__ = __mul__

    def conjugate_radical(self):
        return QuadExt._raw(self.base, -self.coeff, self.radicand)

    def inverse(self):
        a, b = self.base, self.coeff
        n = a * a - b * b * self.radicand
        if not n:
            raise DivisionByZero("quadratic-extension 0 has no inverse")
        return QuadExt._raw(a / n, -b / n, self.radicand)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is QuadExt:
            if self.coeff or other.coeff:
                return (self.base == other.base and self.coeff == other.coeff
                        and self.radicand == other.radicand)
            return self.base == other.base
        if type(other) is GaussianRational or _lift(other) is not NotImplemented:
            return not self.coeff and self.base == other
        return NotImplemented

    def __hash__(self):
        if not self.coeff:
            return hash(self.base)
        return hash((self.base, self.coeff, self.radicand))

    def __repr__(self):
        return f"QuadExt({self})"

    def __str__(self):
        if not self.coeff:
            return str(self.base)
        rad = f"sqrt({self.radicand})"
        c = self.coeff
        term = rad if c == 1 else (f"-{rad}" if c == -1 else f"({c})*{rad}")
        if not self.base:
            return term
        return f"{self.base} - {term[1:]}" if term.startswith("-") else f"{self.base} + {term}"

    def to_json(self):
        return {"base": self.base.to_json(), "coeff": self.coeff.to_json(),
                "radicand": self.radicand.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussianRational.from_json(obj["base"]),
                   GaussianRational.from_json(obj["coeff"]),
                   GaussianRational.from_json(obj["radicand"]))


def sqrt_quad(d) -> QuadExt:
    """Square root of ``d`` as a quadratic-extension element.

    Perfect squares of Q(i) come back with a zero radical part.
    """
    d = as_gaussian(d)
    root = gaussian_sqrt(d)
    if root is not None:
        return QuadExt._raw(root, ZERO, d)
    return QuadExt._raw(ZERO, ONE, d)


def scalar_arith(lhs, rhs, op: str):
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}`` exactly."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if not rhs:
            raise DivisionByZero("division by zero")
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def ring_of(x) -> str:
    """Name of the scalar ring a value lives in."""
    if type(x) is GaussianRational:
        return "gaussian"
    if type(x) is LaurentPoly:
        return "laurent"
    if type(x) is QuadExt:
        return "quad"
    raise TypeError(f"{x!r} is not an sbrep scalar")


def scalar_to_json(x):
    ring_of(x)
    return x.to_json()


def scalar_from_json(obj, ring: str):
    if ring == "gaussian":
        if isinstance(obj, dict) and "re" in obj:
            return GaussianRational.from_json(obj)
        return as_gaussian(obj)
    if ring == "laurent":
        if isinstance(obj, list):
            return LaurentPoly.from_json(obj)
        return LaurentPoly.constant(as_gaussian(obj))
    if ring == "quad":
        return QuadExt.from_json(obj)
    raise ValueError(f"unknown ring {ring!r}")
