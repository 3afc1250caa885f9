"""Quantum-torus operators extended by the Euler operator.

An atom ``z^m E^n c(D)`` acts on ``z^k`` by ``c(k) q^{nk} z^{k+m}`` where
``E = q^{D}`` and ``D = z d/dz``.  Products are brought back to the fixed
normal order with ``E^n z^m = q^{nm} z^m E^n`` and ``c(D) z^m = z^m c(D+m)``.
"""

from __future__ import annotations

import re
from math import comb

from .coeff import ONE, ZERO, Scalar, parse_scalar
from .laurent import ZSeries

__all__ = ["TorusOp", "op_mul", "op_commutator", "op_apply", "parse_op"]


def _trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ZERO
        y = b[i] if i < len(b) else ZERO
        out.append(x + y)
    return _trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _poly_shift(c, m):
    """c(D + m) in the monomial basis."""
    if m == 0 or len(c) <= 1:
        return tuple(c)
    out = [ZERO] * len(c)
    for i, ci in enumerate(c):
        if ci.is_zero():
            continue
        for j in range(i + 1):
            out[j] = out[j] + ci * (comb(i, j) * m ** (i - j))
    return _trim(out)


def _poly_eval(c, k: int) -> Scalar:
    acc = ZERO
    for ci in reversed(c):
        acc = acc * k + ci
    return acc


class TorusOp:
    """Finite sum of normal-ordered atoms ``z^m E^n c(D)``."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=None):
        clean = {}
        for key, c in (atoms or {}).items():
            c = _trim(x if isinstance(x, Scalar) else Scalar(x) for x in c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.atoms: dict[tuple[int, int], tuple[Scalar, ...]] = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def atom(cls, m: int = 0, n: int = 0, coeff=ONE) -> "TorusOp":
        return cls({(m, n): (coeff,)})

    @classmethod
    def identity(cls) -> "TorusOp":
        return cls.atom()

    @classmethod
    def z(cls, m: int = 1) -> "TorusOp":
        return cls.atom(m, 0)

    @classmethod
    def E(cls, n: int = 1) -> "TorusOp":
        return cls.atom(0, n)

    @classmethod
    def D(cls) -> "TorusOp":
        return cls({(0, 0): (ZERO, ONE)})

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "TorusOp") -> "TorusOp":
        out = dict(self.atoms)
        for key, c in other.atoms.items():
            out[key] = _poly_add(out[key], c) if key in out else c
        return TorusOp(out)

    def __neg__(self):
        return TorusOp({k: tuple(-x for x in c) for k, c in self.atoms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TorusOp":
        return TorusOp({k: tuple(x * s for x in c) for k, c in self.atoms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusOp):
            return op_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "TorusOp":
        out = TorusOp.identity()
        for _ in range(k):
            out = op_mul(out, self)
        return out

    def __call__(self, f: ZSeries) -> ZSeries:
        return op_apply(self, f)

    def is_zero(self) -> bool:
        return not self.atoms

    def __eq__(self, other):
        if not isinstance(other, TorusOp):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_pure_torus(self) -> bool:
        return all(len(c) == 1 for c in self.atoms.values())

    @property
    def z_range(self) -> tuple[int, int]:
        ms = [m for m, _ in self.atoms]
        return (min(ms), max(ms)) if ms else (0, 0)

    def __str__(self):
        return render_op(self)

    def __repr__(self):
        return f"TorusOp({render_op(self)!r})"


def op_mul(A: TorusOp, B: TorusOp) -> TorusOp:
    """(z^m1 E^n1 c1(D))(z^m2 E^n2 c2(D)) = q^{n1 m2} z^{m1+m2} E^{n1+n2} c1(D+m2) c2(D)."""
    out: dict = {}
    for (m1, n1), c1 in A.atoms.items():
        for (m2, n2), c2 in B.atoms.items():
            c = _poly_mul(_poly_shift(c1, m2), c2)
            if n1 * m2:
                c = tuple(x.mul_qpow(2 * n1 * m2) for x in c)
            key = (m1 + m2, n1 + n2)
            out[key] = _poly_add(out[key], c) if key in out else c
    return TorusOp(out)


def op_commutator(A: TorusOp, B: TorusOp) -> TorusOp:
    return op_mul(A, B) - op_mul(B, A)


def op_apply(A: TorusOp, f: ZSeries) -> ZSeries:
    """Act on a series: z^k -> c(k) q^{nk} z^{k+m}.

    The result is exact down to z^{-(N - max m)} when f is exact down to z^{-N}.
    """
    out: dict[int, Scalar] = {}
    for (m, n), c in A.atoms.items():
        for k, v in f.coeffs.items():
            ck = _poly_eval(c, k) if len(c) > 1 else c[0]
            if ck.is_zero():
                continue
            term = (v * ck).mul_qpow(2 * n * k) if n * k else v * ck
            key = k + m
            out[key] = out[key] + term if key in out else term
    if f.tail_order is None or not A.atoms:
        tail = f.tail_order
    else:
        tail = f.tail_order - A.z_range[1]
    return ZSeries(out, tail)


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------


def _render_cpoly(c) -> str:
    parts = []
    for i, x in enumerate(c):
        if x.is_zero():
            continue
        s = str(x)
        d = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
        if not d:
            parts.append(s)
        elif s == "1":
            parts.append(d)
        elif s == "-1":
            parts.append("-" + d)
        else:
            parts.append(f"({s})*{d}")
    body = " + ".join(parts)
    return body if len(parts) == 1 else f"({body})"


def render_op(A: TorusOp) -> str:
    """Text like ``1 - E^-1 - q^(1/2)*z^-1*E^-3``."""
    if not A.atoms:
        return "0"
    out = []
    for (m, n) in sorted(A.atoms, key=lambda k: (-k[0], -k[1])):
        c = A.atoms[(m, n)]
        gens = []
        if m:
            gens.append("z" if m == 1 else f"z^{m}")
        if n:
            gens.append("E" if n == 1 else f"E^{n}")
        cs = _render_cpoly(c)
        neg = False
        if len(c) == 1 and cs.startswith("-") and "+" not in cs[1:] and "-" not in cs[1:]:
            neg, cs = True, cs[1:]
        if gens:
            if cs == "1":
                body = "*".join(gens)
            elif len(c) == 1 and ("+" in cs or "-" in cs[1:]):
                body = f"({cs})*" + "*".join(gens)
            else:
                body = cs + "*" + "*".join(gens)
        else:
            body = cs
        out.append(("- " if neg else "+ ") + body)
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[1:]


def parse_op(text: str, **params: int) -> TorusOp:
    """Parse the operator grammar; symbolic exponents like ``-(r+1)`` take ``params``.

    Terms are products of a coefficient and the generators ``z``, ``E``, ``D``.
    """
    src = text
    for name, val in params.items():
        src = re.sub(rf"\b{name}\b", str(val), src)
    src = re.sub(r"\^\s*-?\s*\(([-+\d\s]+)\)", lambda m: _eval_int_paren(m), src)
    tokens = _split_terms(src)
    out = TorusOp()
    for sign, term in tokens:
        out = out + _parse_term(term).scale(Scalar(sign))
    return out


def _eval_int_paren(m):
    whole = m.group(0)
    inner = m.group(1)
    val = eval(inner, {"__builtins__": {}}, {})  # digits and +/- only
    neg = whole.replace(" ", "").startswith("^-")
    return f"^{-val if neg else val}"


def _split_terms(src: str):
    out, depth, cur, sign = [], 0, "", 1
    i = 0
    src = src.strip()
    while i < len(src):
        ch = src[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith("^"):
            out.append((sign, cur.strip()))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif depth == 0 and ch in "+-" and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
        i += 1
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def _parse_term(term: str) -> TorusOp:
    factors = _split_factors(term)
    op = TorusOp.identity()
    for f in factors:
        m = re.fullmatch(r"([zED])(?:\^(-?\d+))?", f)
        if m:
            g, e = m.group(1), int(m.group(2) or 1)
            if g == "z":
                op = op_mul(op, TorusOp.z(e))
            elif g == "E":
                op = op_mul(op, TorusOp.E(e))
            else:
                op = op_mul(op, TorusOp.D() ** e)
        else:
            op = op.scale(parse_scalar(f))
    return op


def _split_factors(term: str):
    out, depth, cur = [], 0, ""
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "* " and depth == 0:
            if cur.strip():
                out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out

