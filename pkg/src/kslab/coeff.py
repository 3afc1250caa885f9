"""Exact scalars in Q(q^{1/2})[T] localised at the q-integers.

A :class:`Scalar` is stored as ::

    c(Q, T) * Q**e * prod(numerator factors) / prod((1 - q**k) ** m_k)

with ``Q = q**(1/2)``.  The cofactor ``c`` is a polynomial with rational
coefficients (python-flint ``fmpq_mpoly``) that is never divisible by ``Q``.
Numerator factors of the shapes ``1 - q^k``, ``1 - T q^k`` and ``T - q^k``
are kept unexpanded so that long q-Pochhammer products stay cheap to add and
compare; denominators only ever contain ``1 - q^k``.

The same ring hosts the Hurwitz deformation parameter ``u = e^{lambda/2}``
under ``u -> Q`` (so that ``q`` plays the role of ``e^lambda``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import flint

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "qfactorial_pochhammer",
    "normalize",
    "render_scalar",
    "parse_scalar",
]

_CTX = flint.fmpq_mpoly_ctx.get(("Q", "T"), "lex")
_Q, _T = _CTX.gens()
_P0 = _CTX.constant(0)
_P1 = _CTX.constant(1)

# numerator factor kinds
ONE_MINUS_Q = "q"  # 1 - q^k,   k >= 1
ONE_MINUS_TQ = "Tq"  # 1 - T q^k, k >= 0
T_MINUS_Q = "T-q"  # T - q^k,   k >= 0


@lru_cache(maxsize=None)
def _qint(k: int, m: int = 1):
    """(1 - Q^(2k))^m as a polynomial."""
    return (1 - _Q ** (2 * k)) ** m


@lru_cache(maxsize=None)
def _factor_poly(key, m: int = 1):
    kind, k = key
    if kind == ONE_MINUS_Q:
        return _qint(k, m)
    if kind == ONE_MINUS_TQ:
        return (1 - _T * _Q ** (2 * k)) ** m
    if kind == T_MINUS_Q:
        return (_T - _Q ** (2 * k)) ** m
    raise KeyError(key)


@lru_cache(maxsize=None)
def _qpow_poly(n: int):
    return _Q**n


@lru_cache(maxsize=None)
def _geometric(big: int, small: int):
    """(1 - q^big) / (1 - q^small) for small | big."""
    out = _P0
    for i in range(big // small):
        out += _Q ** (2 * small * i)
    return out


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _as_fmpq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _min_q_degree(p) -> int:
    return min(m[0] for m in p.monoms())


class Scalar:
    """Immutable exact scalar; see the module docstring for the layout."""

    __slots__ = ("_p", "_e", "_num", "_den")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._p, self._e, self._num, self._den = value._p, value._e, value._num, value._den
            return
        if not isinstance(value, (int, Rational, Fraction)):
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._p = _CTX.constant(_as_fmpq(value))
        self._e = 0
        self._num = {}
        self._den = {}

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, p, e, num, den):
        s = object.__new__(cls)
        s._p, s._e, s._num, s._den = p, e, num, den
        return s

    @classmethod
    def _build(cls, p, e=0, num=None, den=None):
        return _normalize(p, e, dict(num or {}), dict(den or {}))

    @classmethod
    def qpow(cls, h) -> "Scalar":
        """``q**h`` for integer or half-integer ``h``."""
        h = Fraction(h)
        if (2 * h).denominator != 1:
            raise ValueError(f"only half-integer powers of q are representable, got {h}")
        return cls._raw(_P1, int(2 * h), {}, {})

    @classmethod
    def Qpow(cls, n: int) -> "Scalar":
        """``Q**n = q**(n/2)``; also ``u**n`` for the Hurwitz parameter."""
        return cls._raw(_P1, int(n), {}, {})

    @classmethod
    def T(cls, power: int = 1) -> "Scalar":
        if power < 0:
            raise ValueError("T only appears with non-negative powers")
        return cls._raw(_T**power, 0, {}, {})

    @classmethod
    def one_minus_q(cls, k: int) -> "Scalar":
        """``1 - q**k`` for any integer ``k``."""
        if k == 0:
            return ZERO
        if k > 0:
            return cls._raw(_P1, 0, {(ONE_MINUS_Q, k): 1}, {})
        # 1 - q^-k = -q^-k (1 - q^k)
        return cls._raw(_CTX.constant(-1), 2 * k, {(ONE_MINUS_Q, -k): 1}, {})

    @classmethod
    def one_minus_Tq(cls, k: int) -> "Scalar":
        """``1 - T q**k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return cls._raw(_P1, 0, {(ONE_MINUS_TQ, k): 1}, {})

    @classmethod
    def T_minus_q(cls, k: int) -> "Scalar":
        """``T - q**k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return cls._raw(_P1, 0, {(T_MINUS_Q, k): 1}, {})

    @classmethod
    def inv_one_minus_q(cls, k: int, m: int = 1) -> "Scalar":
        """``(1 - q**k)**-m`` for ``k >= 1``."""
        if k < 1:
            raise ValueError("k must be positive")
        return cls._raw(_P1, 0, {}, {k: m})

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self):
        return not self._p.is_zero()

    def is_one(self) -> bool:
        return self == ONE

    def has_T(self) -> bool:
        if self._p.degrees()[1] > 0:
            return True
        return any(kind != ONE_MINUS_Q for kind, _ in self._num)

    @property
    def denominator(self) -> dict:
        """Multiset of the ``k`` in the ``(1 - q^k)`` denominator factors."""
        return dict(self._den)

    @property
    def q_exponent(self) -> Fraction:
        """Exponent of the extracted ``q`` monomial, as a half-integer."""
        return Fraction(self._e, 2)

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return Scalar._raw(-self._p, self._e, self._num, self._den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Scalar._raw(self._p * _as_fmpq(other), self._e, self._num, self._den)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(other, self.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self._p.is_zero():
            return ZERO
        num = {key: m * n for key, m in self._num.items()}
        den = {k: m * n for k, m in self._den.items()}
        return _normalize(self._p**n, self._e * n, num, den)

    def mul_qpow(self, n_half: int) -> "Scalar":
        """Multiply by ``Q**n_half`` (cheap exponent shift)."""
        if self._p.is_zero():
            return self
        return Scalar._raw(self._p, self._e + n_half, self._num, self._den)

    def inverse(self) -> "Scalar":
        """Multiplicative inverse, when it exists inside the ring.

        Raises ZeroDivisionError for zero and ValueError when the
        numerator is not a product of cyclotomic polynomials in q^{1/2}.
        """
        if self._p.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        for kind, _ in self._num:
            if kind != ONE_MINUS_Q:
                raise ValueError(f"{self} is not invertible: numerator involves T")
        if self._p.degrees()[1] > 0:
            raise ValueError(f"{self} is not invertible: numerator involves T")
        num = {(ONE_MINUS_Q, k): m for k, m in self._den.items()}
        den = {}
        for (_, k), m in self._num.items():
            den[k] = den.get(k, 0) + m
        p = self._p
        if p.is_constant():
            c = p.coeffs()[0]
            return _normalize(_CTX.constant(1 / c), -self._e, num, den)
        const, factors = p.factor()
        out = _CTX.constant(1 / const)
        e = -self._e
        for f, mult in factors:
            if f == _Q:
                e -= mult
                continue
            d = _cyclotomic_order(f)
            if d is None:
                raise ValueError(f"{self} is not invertible: factor {f} is not cyclotomic")
            # 1/f = ((1 - q^d) / f) / (1 - q^d)
            cof, rem = divmod(_qint(d), f)
            assert rem.is_zero()
            out *= cof**mult
            den[d] = den.get(d, 0) + mult
        return _normalize(out, e, num, den)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if (
            self._e == other._e
            and self._num == other._num
            and self._den == other._den
        ):
            return self._p == other._p
        return _add(self, -other).is_zero()

    __hash__ = None

    # -- substitution -------------------------------------------------
    def subs_T(self, value) -> "Scalar":
        """Substitute ``T = value`` (an integer or Fraction)."""
        value = Fraction(value)
        p = self._p.subs({"T": _as_fmpq(value)}) if self._p.degrees()[1] else self._p
        num, e = {}, self._e
        for key, m in self._num.items():
            kind, k = key
            if kind == ONE_MINUS_Q:
                num[key] = num.get(key, 0) + m
            elif value == 0 and kind == ONE_MINUS_TQ:
                continue
            elif value == 0 and kind == T_MINUS_Q:
                p = p * (-1) ** m
                e += 2 * k * m
            elif value == 1 and k > 0:
                # 1 - T q^k and T - q^k both become 1 - q^k
                num[(ONE_MINUS_Q, k)] = num.get((ONE_MINUS_Q, k), 0) + m
            else:
                p = p * _factor_poly(key, m).subs({"T": _as_fmpq(value)})
        return _normalize(p, e, num, dict(self._den))

    def evaluate(self, Q, T=0) -> Fraction:
        """Evaluate at rational ``q^{1/2} = Q`` and ``T``."""
        Q, T = Fraction(Q), Fraction(T)
        if Q == 0:
            raise ZeroDivisionError("Q = 0 is not in the domain")
        point = {"Q": _as_fmpq(Q), "T": _as_fmpq(T)}

        def val(poly):
            c = poly.subs(point).coeffs()
            return _to_fraction(c[0]) if c else Fraction(0)

        out = val(self._p) * Q ** int(self._e)
        for key, m in self._num.items():
            out *= val(_factor_poly(key)) ** m
        for k, m in self._den.items():
            d = 1 - Q ** (2 * k)
            if d == 0:
                raise ZeroDivisionError(f"1 - q^{k} vanishes at Q = {Q}")
            out /= d**m
        return out

    # -- Laurent data -------------------------------------------------
    def expanded(self):
        """Numerator as one polynomial: returns (poly, e, den)."""
        p = self._p
        for key, m in self._num.items():
            p = p * _factor_poly(key, m)
        return p, self._e, dict(self._den)

    def laurent_terms(self) -> dict:
        """``{n: c}`` with ``self == sum c Q^n``; requires no T, no denominator."""
        if self._den:
            raise ValueError(f"{self} has a q-integer denominator")
        p, e, _ = self.expanded()
        if p.degrees()[1] > 0:
            raise ValueError(f"{self} depends on T")
        return {int(m[0]) + e: _to_fraction(c) for m, c in zip(p.monoms(), p.coeffs())}

    def as_fraction(self) -> Fraction:
        """The value of a constant Scalar; ValueError otherwise."""
        terms = self.laurent_terms()
        if not terms:
            return Fraction(0)
        if list(terms) != [0]:
            raise ValueError(f"{self} is not a rational constant")
        return terms[0]

    # -- text ---------------------------------------------------------
    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"


ZERO = Scalar._raw(_P0, 0, {}, {})
ONE = Scalar._raw(_P1, 0, {}, {})


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return Scalar(x)
    return NotImplemented


def _cyclotomic_order(f):
    """Least k with f | (1 - q^k), or None when f is not cyclotomic in Q."""
    if f.degrees()[1] > 0:
        return None
    deg = f.degrees()[0]
    for k in range(1, deg * deg + 2):
        _, r = divmod(_qint(k), f)
        if r.is_zero():
            return k
    return None


def _reduce_cofactor(p, den):
    """Divide p by q-integer factors of the denominator; updates den in place."""
    changed = True
    while changed and den and not p.is_constant():
        changed = False
        for k in sorted(den, reverse=True):
            for d in range(0, k):
                if d and k % d:
                    continue
                g = _qint(k) if d == 0 else _geometric(k, d)
                quo, rem = divmod(p, g)
                if rem.is_zero():
                    p = quo
                    den[k] -= 1
                    if not den[k]:
                        del den[k]
                    if d:
                        den[d] = den.get(d, 0) + 1
                    changed = True
                    break
            if changed:
                break
    return p


def _normalize(p, e, num, den, deep=False) -> Scalar:
    if p.is_zero():
        return ZERO
    num = {k: m for k, m in num.items() if m}
    den = {k: m for k, m in den.items() if m}
    if den:
        # identical factors
        for k in list(den):
            key = (ONE_MINUS_Q, k)
            if key in num:
                c = min(num[key], den[k])
                num[key] -= c
                den[k] -= c
                if not num[key]:
                    del num[key]
                if not den[k]:
                    del den[k]
        # (1 - q^{k'}) / (1 - q^k) with k | k'
        qnum = [key for key in num if key[0] == ONE_MINUS_Q]
        for k in sorted(den, reverse=True) if qnum else ():
            for key in sorted(qnum, reverse=True):
                if k not in den:
                    break
                if key not in num:
                    continue
                kk = key[1]
                if kk % k:
                    continue
                c = min(num[key], den[k])
                p = p * _geometric(kk, k) ** c
                num[key] -= c
                den[k] -= c
                if not num[key]:
                    del num[key]
                if not den[k]:
                    del den[k]
        # cofactor divisible by (1 - q^k); the full partial-factor search
        # (1 - q^k)/(1 - q^d) is too costly here and only runs in normalize()
        if den and not p.is_constant():
            if deep:
                p = _reduce_cofactor(p, den)
            elif p.subs({"Q": 1}).is_zero():
                for k in sorted(den, reverse=True):
                    while den.get(k):
                        quo, rem = divmod(p, _qint(k))
                        if not rem.is_zero():
                            break
                        p = quo
                        den[k] -= 1
                    if not den[k]:
                        del den[k]
    m = int(_min_q_degree(p))
    if m:
        p = p / _qpow_poly(m)
        e += m
    return Scalar._raw(p, e, num, den)


def _mul(a: Scalar, b: Scalar) -> Scalar:
    if a._p.is_zero() or b._p.is_zero():
        return ZERO
    if not b._num and not b._den:
        if not a._den or b._p.is_constant():
            num, den = a._num, a._den
            p = a._p * b._p
            if b._p.is_constant():
                return Scalar._raw(p, a._e + b._e, num, den)
            return _normalize(p, a._e + b._e, dict(num), dict(den))
    num = dict(a._num)
    for key, m in b._num.items():
        num[key] = num.get(key, 0) + m
    den = dict(a._den)
    for k, m in b._den.items():
        den[k] = den.get(k, 0) + m
    return _normalize(a._p * b._p, a._e + b._e, num, den)


def _add(a: Scalar, b: Scalar) -> Scalar:
    if a._p.is_zero():
        return b
    if b._p.is_zero():
        return a
    if a._num == b._num and a._den == b._den:
        e = min(a._e, b._e)
        pa = a._p if a._e == e else a._p * _qpow_poly(a._e - e)
        pb = b._p if b._e == e else b._p * _qpow_poly(b._e - e)
        return _normalize(pa + pb, e, dict(a._num), dict(a._den))
    pa, pb = a._p, b._p
    den = dict(a._den)
    for k, m in b._den.items():
        if m > den.get(k, 0):
            den[k] = m
    for k, m in den.items():
        ma, mb = a._den.get(k, 0), b._den.get(k, 0)
        if m > ma:
            pa = pa * _qint(k, m - ma)
        if m > mb:
            pb = pb * _qint(k, m - mb)
    num = {}
    for key in set(a._num) | set(b._num):
        ma, mb = a._num.get(key, 0), b._num.get(key, 0)
        g = min(ma, mb)
        if g:
            num[key] = g
        if ma > g:
            pa = pa * _factor_poly(key, ma - g)
        if mb > g:
            pb = pb * _factor_poly(key, mb - g)
    e = min(a._e, b._e)
    if a._e > e:
        pa = pa * _qpow_poly(a._e - e)
    if b._e > e:
        pb = pb * _qpow_poly(b._e - e)
    return _normalize(pa + pb, e, num, den)


def normalize(x: Scalar) -> Scalar:
    """Re-run canonicalisation, also cancelling partial q-integer factors."""
    return _normalize(x._p, x._e, dict(x._num), dict(x._den), deep=True)


def qfactorial_pochhammer(n: int, style: str = "oneMinusQ", a: Scalar | None = None) -> Scalar:
    """q-factorials and q-Pochhammer symbols.

    ``oneMinusQ``:  prod_{k=1}^n (1 - q^k)
    ``brackets``:   [n]! = prod_{k=1}^n (q^{k/2} - q^{-k/2})
    ``aPochhammer``: prod_{k=1}^n (1 - a q^{k-1})
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if style == "oneMinusQ":
        if n == 0:
            return ONE
        return Scalar._raw(_P1, 0, {(ONE_MINUS_Q, k): 1 for k in range(1, n + 1)}, {})
    if style == "brackets":
        out = ONE
        for k in range(1, n + 1):
            out = out * (Scalar.Qpow(k) - Scalar.Qpow(-k))
        return out
    if style == "aPochhammer":
        if a is None:
            raise ValueError("aPochhammer needs the parameter a")
        a = _coerce(a)
        if _is_T_monomial(a):
            # a = T: keep the factors unexpanded
            return Scalar._raw(_P1, 0, {(ONE_MINUS_TQ, k): 1 for k in range(n)}, {})
        out = ONE
        for k in range(n):
            out = out * (ONE - a.mul_qpow(2 * k))
        return out
    raise ValueError(f"unknown style {style!r}")


def _is_T_monomial(a: Scalar) -> bool:
    return not a._num and not a._den and a._e == 0 and a._p == _T


# ---------------------------------------------------------------------------
# text rendering and parsing
# ---------------------------------------------------------------------------


def _render_qexp(n: int) -> str:
    """Q^n as text in q."""
    if n % 2 == 0:
        k = n // 2
        if k == 1:
            return "q"
        return f"q^{k}" if k > 0 else f"q^({k})"
    return f"q^({n}/2)"


def _render_term(c: Fraction, qn: int, tn: int) -> str:
    parts = []
    if qn:
        parts.append(_render_qexp(qn))
    if tn:
        parts.append("T" if tn == 1 else f"T^{tn}")
    mag = abs(c)
    body = "*".join(parts)
    if not body:
        text = str(mag)
    elif mag == 1:
        text = body
    else:
        text = f"{mag}*{body}"
    return ("-" if c < 0 else "+") + text


def _render_factor(key) -> str:
    kind, k = key
    qk = "1" if k == 0 else _render_qexp(2 * k)
    if kind == ONE_MINUS_Q:
        return f"(1-{qk})"
    if kind == ONE_MINUS_TQ:
        return "(1-T)" if k == 0 else f"(1-T*{qk})"
    return f"(T-{qk})"


def render_scalar(x: Scalar) -> str:
    """Round-trip text form, e.g. ``q^(3/2)*(1-T*q)/((1-q)*(1-q^2)^2)``."""
    if x._p.is_zero():
        return "0"
    terms = sorted(
        ((m[0] + x._e, m[1], _to_fraction(c)) for m, c in zip(x._p.monoms(), x._p.coeffs())),
        key=lambda t: (t[1], t[0]),
    )
    body = "".join(_render_term(c, qn, tn) for qn, tn, c in terms)
    if body.startswith("+"):
        body = body[1:]
    factors = []
    for key in sorted(x._num, key=lambda kk: (kk[0], kk[1])):
        m = x._num[key]
        f = _render_factor(key)
        factors.append(f if m == 1 else f"{f}^{m}")
    if len(terms) > 1 and factors:
        body = f"({body})"
    if factors:
        if body == "1":
            body = "*".join(factors)
        elif body == "-1":
            body = "-" + "*".join(factors)
        else:
            body = body + "*" + "*".join(factors)
    if x._den:
        dens = []
        for k in sorted(x._den):
            f = _render_factor((ONE_MINUS_Q, k))
            m = x._den[k]
            dens.append(f if m == 1 else f"{f}^{m}")
        den = dens[0] if len(dens) == 1 else "(" + "*".join(dens) + ")"
        if len(terms) > 1 and not factors:
            body = f"({body})"
        body = f"{body}/{den}"
    return body


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.toks = []
        for num, ch in _TOKEN.findall(text):
            self.toks.append(int(num) if num else ch)
        self.toks = [t for t in self.toks if t != " "]
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if expected is not None and t != expected:
            raise ValueError(f"expected {expected!r}, got {t!r}")
        self.i += 1
        return t

    def expr(self) -> Scalar:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Scalar:
        out = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            f = self.power()
            out = out * f if op == "*" else out / f
        return out

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.take("(")
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            n = Fraction(self.take())
            if self.peek() == "/":
                self.take()
                n /= self.take()
            self.take(")")
            return sign * n
        if self.peek() == "-":
            self.take()
            return -Fraction(self.take())
        return Fraction(self.take())

    def power(self) -> Scalar:
        t = self.peek()
        if t == "(":
            self.take()
            base = self.expr()
            self.take(")")
            if self.peek() == "^":
                self.take()
                n = self.exponent()
                if n.denominator != 1:
                    raise ValueError("fractional power of a compound expression")
                base = base ** int(n)
            return base
        if t == "q":
            self.take()
            n = Fraction(1)
            if self.peek() == "^":
                self.take()
                n = self.exponent()
            return Scalar.qpow(n)
        if t == "T":
            self.take()
            n = 1
            if self.peek() == "^":
                self.take()
                n = int(self.exponent())
            return Scalar.T(n)
        if isinstance(t, int):
            self.take()
            return Scalar(t)
        if t == "-":
            self.take()
            return -self.power()
        raise ValueError(f"unexpected token {t!r}")


def parse_scalar(text: str) -> Scalar:
    """Inverse of ``str(Scalar)``."""
    p = _Parser(text)
    out = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input at token {p.peek()!r}")
    return out
