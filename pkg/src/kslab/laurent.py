"""Truncated Laurent series in z^{-1} with explicit reliability bookkeeping.

A :class:`ZSeries` stores finitely many coefficients together with
``tail_order`` N: every coefficient of z^k with k >= -N is exact, and
nothing is known below.  ``tail_order=None`` marks an exact finite sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coeff import ONE, ZERO, Scalar, parse_scalar

__all__ = ["ZSeries", "Discrepancy", "series_eq_to_order"]


def _min_tail(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class ZSeries:
    """Sparse truncated Laurent series ``sum c_k z^k``."""

    __slots__ = ("coeffs", "tail_order")

    def __init__(self, coeffs=None, tail_order: int | None = None):
        items = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(c, Scalar):
                c = Scalar(c)
            if tail_order is not None and k < -tail_order:
                continue
            if not c.is_zero():
                items[int(k)] = c
        self.coeffs: dict[int, Scalar] = items
        self.tail_order = tail_order

    @classmethod
    def monomial(cls, k: int, c=ONE, tail_order: int | None = None) -> "ZSeries":
        return cls({k: c}, tail_order)

    @property
    def top(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    @property
    def bottom(self) -> int:
        """Lowest exponent that is exactly represented (``-tail_order``)."""
        if self.tail_order is None:
            return min(self.coeffs, default=0)
        return -self.tail_order

    def __getitem__(self, k: int) -> Scalar:
        if self.tail_order is not None and k < -self.tail_order:
            raise IndexError(f"z^{k} lies below the reliable range z^{-self.tail_order}")
        return self.coeffs.get(k, ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, tail_order: int) -> "ZSeries":
        if self.tail_order is not None and tail_order > self.tail_order:
            raise ValueError("cannot extend the reliable range by truncation")
        return ZSeries(self.coeffs, tail_order)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "ZSeries") -> "ZSeries":
        tail = _min_tail(self.tail_order, other.tail_order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return ZSeries(out, tail)

    def __neg__(self) -> "ZSeries":
        return ZSeries({k: -c for k, c in self.coeffs.items()}, self.tail_order)

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + (-other)

    def scale(self, s) -> "ZSeries":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        if s.is_zero():
            return ZSeries({}, self.tail_order)
        return ZSeries({k: c * s for k, c in self.coeffs.items()}, self.tail_order)

    def shift(self, m: int) -> "ZSeries":
        """Multiply by z^m."""
        tail = None if self.tail_order is None else self.tail_order - m
        return ZSeries({k + m: c for k, c in self.coeffs.items()}, tail)

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return ZSeries({}, _min_tail(self.tail_order, other.tail_order))
        # unknown terms of one factor times the top of the other
        tails = []
        if self.tail_order is not None:
            tails.append(self.tail_order - other.top)
        if other.tail_order is not None:
            tails.append(other.tail_order - self.top)
        tail = min(tails) if tails else None
        out: dict[int, Scalar] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if tail is not None and k < -tail:
                    continue
                p = a * b
                out[k] = out[k] + p if k in out else p
        return ZSeries(out, tail)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return series_eq_to_order(self, other) is None

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(f"z^{k}: {c}" for k, c in sorted(self.coeffs.items(), reverse=True)[:6])
        more = " ..." if len(self.coeffs) > 6 else ""
        return f"ZSeries({{{shown}{more}}}, tail_order={self.tail_order})"

    # -- I/O ----------------------------------------------------------
    def to_tsv(self) -> str:
        """``exponent<TAB>scalar`` rows by descending exponent."""
        rows = [f"{k}\t{c}" for k, c in sorted(self.coeffs.items(), reverse=True)]
        return "\n".join(rows) + ("\n" if rows else "")

    @classmethod
    def from_tsv(cls, text: str, tail_order: int | None = None) -> "ZSeries":
        coeffs = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            k, c = line.split("\t")
            coeffs[int(k)] = parse_scalar(c)
        return cls(coeffs, tail_order)


@dataclass(frozen=True)
class Discrepancy:
    exponent: int
    left: Scalar
    right: Scalar


def series_eq_to_order(a: ZSeries, b: ZSeries) -> Discrepancy | None:
    """Compare on the common reliable range.

    Returns None when equal, else the highest-exponent discrepancy.
    """
    tail = _min_tail(a.tail_order, b.tail_order)
    keys = set(a.coeffs) | set(b.coeffs)
    for k in sorted(keys, reverse=True):
        if tail is not None and k < -tail:
            break
        x, y = a.coeffs.get(k, ZERO), b.coeffs.get(k, ZERO)
        if x != y:
            return Discrepancy(k, x, y)
    return None


def exp_series(terms: dict[int, Scalar], order: int) -> ZSeries:
    """``exp(sum_{n>=1} f_n z^{-n})`` through z^{-order}.

    Uses n g_n = sum_{k=1}^n k f_k g_{n-k}.
    """
    g = [ONE]
    for n in range(1, order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            f = terms.get(k)
            if f is not None and not f.is_zero() and not g[n - k].is_zero():
                acc = acc + f * g[n - k] * k
        g.append(acc * _frac(1, n))
    return ZSeries({-n: c for n, c in enumerate(g)}, order)


def _frac(a, b):
    from fractions import Fraction

    return Fraction(a, b)


def linear_combination(pairs: Iterable[tuple[Scalar, ZSeries]]) -> ZSeries:
    out = None
    for s, f in pairs:
        term = f.scale(s)
        out = term if out is None else out + term
    return out if out is not None else ZSeries({})
