"""Exact scalars: ordered rings Z, Q, Q(l) and the quadratic extension C = R(i).

Integers and rationals are plain ``int`` / ``fractions.Fraction``.  The
rational function field Q(l) is :class:`RatFun`, ordered l-adically: a
nonzero p/q is positive iff the product of the lowest-degree coefficients
of p and q is positive, i.e. iff it is positive for all small enough l > 0.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Union

__all__ = [
    "RatFun",
    "Complex",
    "LAMBDA",
    "ZERO",
    "ONE",
    "I",
    "RINGS",
    "sign_of",
    "conj",
    "norm_sq",
    "qdiv",
    "parse_scalar",
    "format_scalar",
    "format_real",
    "ring_of",
    "to_complex",
]

RINGS = ("int", "rat", "ratfun")

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------- dense polynomials over Q, coefficients low -> high ----------

def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] += c
    return _trim(out)


def _psub(p, q):
    out = list(p) + [_F0] * (len(q) - len(p))
    for k, c in enumerate(q):
        out[k] -= c
    return _trim(out)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [_F0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pscale(p, c):
    if not c:
        return ()
    return tuple(a * c for a in p)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) <= dq:
        return (), _trim(rem)
    quot = [_F0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c:
            c = c / lead
            quot[k - dq] = c
            for j in range(dq + 1):
                rem[k - dq + j] -= c * q[j]
    return _trim(quot), _trim(rem[:dq])


def _pmonic(p):
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(c / lead for c in p)


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p) if p else ()


def _low(p):
    for c in p:
        if c:
            return c
    return _F0


class RatFun:
    """Element p(l)/q(l) of Q(l) with q monic and gcd(p, q) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(_F1,), _reduced=False):
        if _reduced:
            self.num = num
            self.den = den
            return
        num = _trim([Fraction(c) for c in num])
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("RatFun with zero denominator")
        if not num:
            self.num, self.den = (), (_F1,)
            return
        if len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls((c,) if c else (), (_F1,), _reduced=True)

    # -- structure --
    def is_polynomial(self):
        return len(self.den) == 1

    def is_constant(self):
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self):
        return self.num[0] if self.num else _F0

    def sign(self):
        if not self.num:
            return 0
        s = _low(self.num) * _low(self.den)
        return 1 if s > 0 else -1

    def evaluate(self, x):
        x = Fraction(x)

        def ev(p):
            acc = _F0
            for c in reversed(p):
                acc = acc * x + c
            return acc

        d = ev(self.den)
        if not d:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return ev(self.num) / d

    # -- arithmetic --
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun.const(other)
        return None

    def __add__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFun(_padd(self.num, o.num), (_F1,), _reduced=True)
        return RatFun(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(tuple(-c for c in self.num), self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.den) == 1 and len(o.num) <= 1:
            c = o.num[0] if o.num else _F0
            return RatFun(_pscale(self.num, c), self.den if c else (_F1,), _reduced=True)
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFun(_pmul(self.num, o.num), (_F1,), _reduced=True)
        return RatFun(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("RatFun division by zero")
        return self * RatFun(o.den, o.num)

    def __rtruediv__(self, other):
        o = RatFun._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RatFun.const(1) / (self ** (-k))
        out = RatFun.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --
    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return len(self.den) == 1 and (self.num[0] if self.num else 0) == other and len(self.num) <= 1
        return NotImplemented

    def __hash__(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"RatFun({format_real(self)!r})"


LAMBDA = RatFun((_F0, _F1), (_F1,), _reduced=True)

Real = Union[int, Fraction, RatFun]


def sign_of(a) -> int:
    """Trichotomy sign in {-1, 0, +1} of a real scalar (l-adic for Q(l))."""
    if isinstance(a, Complex):
        if a.im:
            raise ValueError(f"sign of non-real scalar {a}")
        a = a.re
    if isinstance(a, RatFun):
        return a.sign()
    return (a > 0) - (a < 0)


def qdiv(a, b):
    """Exact quotient of real scalars; int / int yields a Fraction."""
    if type(a) is int and type(b) is int:
        return Fraction(a, b)
    return a / b


def _real_abs(a):
    return -a if sign_of(a) < 0 else a


class Complex:
    """z = re + im*i with re, im in one of the ordered rings."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re
        self.im = im

    def conj(self):
        return Complex(self.re, -self.im)

    def norm_sq(self):
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return not self.im

    def __add__(self, o):
        if type(o) is Complex:
            return Complex(self.re + o.re, self.im + o.im)
        if isinstance(o, (int, Fraction, RatFun)):
            return Complex(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, o):
        if type(o) is Complex:
            return Complex(self.re - o.re, self.im - o.im)
        if isinstance(o, (int, Fraction, RatFun)):
            return Complex(self.re - o, self.im)
        return NotImplemented

    def __rsub__(self, o):
        if isinstance(o, (int, Fraction, RatFun)):
            return Complex(o - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, o):
        if type(o) is Complex:
            a, b, c, d = self.re, self.im, o.re, o.im
            if not b:
                if not d:
                    return Complex(a * c, 0)
                return Complex(a * c, a * d)
            if not d:
                return Complex(a * c, b * c)
            return Complex(a * c - b * d, a * d + b * c)
        if isinstance(o, (int, Fraction, RatFun)):
            return Complex(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        if type(o) is not Complex:
            if isinstance(o, (int, Fraction, RatFun)):
                o = Complex(o, 0)
            else:
                return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("complex division by zero")
            return Complex(qdiv(self.re, o.re), qdiv(self.im, o.re) if self.im else 0)
        n = o.norm_sq()
        num = self * o.conj()
        return Complex(qdiv(num.re, n), qdiv(num.im, n))

    def __rtruediv__(self, o):
        if isinstance(o, (int, Fraction, RatFun)):
            return Complex(o, 0) / self
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Complex(1, 0) / (self ** (-k))
        out = Complex(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if type(o) is Complex:
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction, RatFun)):
            return not self.im and self.re == o
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Complex({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Complex(0, 0)
ONE = Complex(1, 0)
I = Complex(0, 1)


def to_complex(x) -> Complex:
    if type(x) is Complex:
        return x
    if isinstance(x, (int, Fraction, RatFun)):
        return Complex(x, 0)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {x!r} to a scalar")


def conj(z):
    z = to_complex(z)
    return Complex(z.re, -z.im)


def norm_sq(z):
    z = to_complex(z)
    return z.re * z.re + z.im * z.im


# ---------- text syntax ----------

def _fmt_q(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_poly(p):
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        mono = "" if k == 0 else ("l" if k == 1 else f"l**{k}")
        if k == 0:
            term = _fmt_q(mag)
        elif mag == 1:
            term = mono
        else:
            term = f"{_fmt_q(mag)}*{mono}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append((" + " if c > 0 else " - ") + term)
    return "".join(parts)


def format_real(x) -> str:
    if isinstance(x, RatFun):
        if x.is_polynomial():
            return _fmt_poly(x.num)
        return f"({_fmt_poly(x.num)})/({_fmt_poly(x.den)})"
    return _fmt_q(x)


def _is_compound(x):
    return isinstance(x, RatFun) and not x.is_constant()


def format_scalar(z) -> str:
    """Canonical text form; ``parse_scalar(format_scalar(z)) == z``."""
    z = to_complex(z)
    re, im = z.re, z.im
    if not im:
        return format_real(re)
    if _is_compound(im):
        im_term, neg = f"({format_real(im)})*i", False
    else:
        neg = sign_of(im) < 0
        mag = -im if neg else im
        im_term = "i" if mag == 1 else f"{format_real(mag)}*i"
    if not re:
        return ("-" if neg else "") + im_term
    return format_real(re) + (" - " if neg else " + ") + im_term


class ScalarSyntaxError(ValueError):
    pass


def _eval(node, allow_l):
    if isinstance(node, ast.Expression):
        return _eval(node.body, allow_l)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return Complex(node.value, 0)
    if isinstance(node, ast.Name):
        if node.id == "i":
            return I
        if node.id in ("l", "λ"):
            if not allow_l:
                raise ScalarSyntaxError("'l' only allowed for ring ratfun")
            return Complex(LAMBDA, 0)
        raise ScalarSyntaxError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, allow_l)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int):
                raise ScalarSyntaxError("exponent must be an integer literal")
            return _eval(node.left, allow_l) ** node.right.value
        a = _eval(node.left, allow_l)
        b = _eval(node.right, allow_l)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ScalarSyntaxError(f"unsupported syntax: {ast.dump(node)}")


def _normalize_real(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def parse_scalar(text, ring: str = "ratfun") -> Complex:
    """Parse ``-3``, ``-3/7``, ``(1 + 2*l)/(1 - l)``, ``a + b*i``.

    ``ring`` restricts what is accepted: ``int`` only Gaussian integers,
    ``rat`` no ``l``.
    """
    if isinstance(text, int):
        return Complex(text, 0)
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise ScalarSyntaxError(f"cannot parse scalar {text!r}") from exc
    z = _eval(tree, ring == "ratfun")
    z = Complex(_normalize_real(z.re), _normalize_real(z.im))
    if ring == "int" and not (type(z.re) is int and type(z.im) is int):
        raise ScalarSyntaxError(f"{text!r} is not a Gaussian integer")
    return z


def ring_of(values) -> str:
    """Smallest ring among int < rat < ratfun containing all values."""
    ring = "int"
    for z in values:
        z = to_complex(z)
        for x in (z.re, z.im):
            if isinstance(x, RatFun):
                if not x.is_constant():
                    return "ratfun"
                x = x.constant_value()
            if isinstance(x, Fraction) and x.denominator != 1:
                ring = "rat"
    return ring
