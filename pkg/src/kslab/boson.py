"""Bosonic Fock space: polynomials in the power sums p_1, p_2, ...

A :class:`PPoly` maps partitions (p-monomials ``p_mu = prod p_{mu_i}``) to
:class:`Scalar` coefficients.  The Heisenberg modes act as ``alpha_m = m d/dp_m``
for ``m > 0`` and multiplication by ``p_{-m}`` for ``m < 0``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .coeff import ONE, ZERO, Scalar
from .kacschwarz import CheckReport
from .partitions import EMPTY, Partition, partitions_of

__all__ = [
    "PPoly",
    "InconsistencyError",
    "alpha_apply",
    "cut_join_apply",
    "virasoro_w_apply",
    "parse_wkind",
    "schur_poly",
    "complete_h",
    "standard_tableaux_counts",
    "cut_join_eigenvalue",
    "hurwitz_tau",
    "lambda_expand",
    "cut_join_ode",
    "q_product_identity_check",
]


class InconsistencyError(RuntimeError):
    """Raised when two exact constructions that must agree do not."""


def _sc(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


class PPoly:
    """Finite linear combination of p-monomials with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mu, c in (terms or {}).items():
            c = _sc(c)
            if not c.is_zero():
                clean[mu if isinstance(mu, Partition) else Partition(mu)] = c
        self.terms: dict[Partition, Scalar] = clean

    @classmethod
    def _trusted(cls, terms) -> "PPoly":
        out = cls.__new__(cls)
        out.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        return out

    @classmethod
    def one(cls) -> "PPoly":
        return cls({EMPTY: ONE})

    @classmethod
    def p(cls, *parts: int, coeff=1) -> "PPoly":
        return cls({Partition(parts): coeff})

    # -- inspection ----------------------------------------------------
    def coeff(self, mu) -> Scalar:
        return self.terms.get(Partition(mu), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_grade(self) -> int:
        return max((mu.size for mu in self.terms), default=0)

    def grade_part(self, d: int) -> "PPoly":
        return PPoly._trusted({mu: c for mu, c in self.terms.items() if mu.size == d})

    def truncate(self, d_max: int) -> "PPoly":
        return PPoly._trusted({mu: c for mu, c in self.terms.items() if mu.size <= d_max})

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "PPoly":
        return PPoly({mu: fn(c) for mu, c in self.terms.items()})

    # -- algebra -------------------------------------------------------
    def __add__(self, other: "PPoly") -> "PPoly":
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out[mu] + c if mu in out else c
        return PPoly._trusted(out)

    def __neg__(self) -> "PPoly":
        return PPoly._trusted({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other: "PPoly") -> "PPoly":
        return self + (-other)

    def scale(self, s) -> "PPoly":
        s = _sc(s)
        if s.is_zero():
            return PPoly()
        return PPoly._trusted({mu: c * s for mu, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PPoly):
            return self.scale(other)
        out: dict = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                key = Partition(mu + nu)
                v = a * b
                out[key] = out[key] + v if key in out else v
        return PPoly._trusted(out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"PPoly({self.render()!r})"

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mu in _ordered(self.terms):
            mono = "*".join(f"p{i}" for i in mu) or "1"
            parts.append(f"({self.terms[mu]})*{mono}")
        return " + ".join(parts)

    # -- derivations ---------------------------------------------------
    def d_dp(self, m: int) -> "PPoly":
        out: dict = {}
        for mu, c in self.terms.items():
            k = mu.count(m)
            if k:
                key = mu.without(m)
                v = c * k
                out[key] = out[key] + v if key in out else v
        return PPoly._trusted(out)

    def mul_p(self, m: int) -> "PPoly":
        return PPoly._trusted({mu.with_parts(m): c for mu, c in self.terms.items()})

    def to_tsv(self) -> str:
        """Rows ``grade<TAB>partition<TAB>coefficient`` sorted by grade then partition."""
        lines = ["grade\tpartition\tcoefficient"]
        for mu in _ordered(self.terms):
            lines.append(f"{mu.size}\t{mu}\t{self.terms[mu]}")
        return "\n".join(lines) + "\n"


def _ordered(terms) -> list[Partition]:
    return sorted(terms, key=lambda mu: (mu.size, tuple(-x for x in mu)))


# ---------------------------------------------------------------------------
# Heisenberg, cut-and-join, W-operators
# ---------------------------------------------------------------------------


def alpha_apply(m: int, f: PPoly) -> PPoly:
    if m == 0:
        raise ValueError("alpha_0 is excluded (it acts by zero on charge 0)")
    if m > 0:
        return f.d_dp(m).scale(m)
    return f.mul_p(-m)


def cut_join_apply(f: PPoly) -> PPoly:
    """K0 = 1/2 sum_{m,n>=1} ((m+n) p_m p_n d/dp_{m+n} + mn p_{m+n} d^2/dp_m dp_n)."""
    out: dict = {}

    def add(key, v):
        out[key] = out[key] + v if key in out else v

    for mu, c in f.terms.items():
        mult = mu.multiplicities()
        # cut: one part s splits into m + n
        for s, k in mult.items():
            rest = mu.without(s)
            for m in range(1, s):
                add(rest.with_parts(m, s - m), c * Fraction(s * k, 2))
        # join: an ordered pair of parts merges
        for m, km in mult.items():
            for n, kn in mult.items():
                pairs = km * (kn - (m == n))
                if pairs:
                    add(mu.without(m, n).with_parts(m + n), c * Fraction(m * n * pairs, 2))
    return PPoly._trusted(out)


def parse_wkind(kind) -> tuple[str, int]:
    """Accept ``("L", m)``, ``("K", m)`` or text like ``L(-1)``."""
    if isinstance(kind, str):
        name, _, rest = kind.strip().partition("(")
        kind = (name.strip(), int(rest.rstrip(")")))
    name, m = kind
    if name not in ("L", "K"):
        raise ValueError(f"unknown W-operator {name!r}")
    return name, int(m)


def _normal_ordered_apply(indices: Iterable[int], f: PPoly) -> PPoly:
    # creators left, annihilators right; rightmost acts first
    seq = sorted(indices, key=lambda i: i > 0)
    g = f
    for i in reversed(seq):
        g = alpha_apply(i, g)
        if g.is_zero():
            break
    return g


def virasoro_w_apply(kind, f: PPoly, grade_max: int | None = None) -> PPoly:
    """L_m = 1/2 sum :a_j a_k:, K_m = 1/6 sum :a_j a_k a_l: over j+k(+l) = m."""
    name, m = parse_wkind(kind)
    arity, weight = (2, Fraction(1, 2)) if name == "L" else (3, Fraction(1, 6))
    bound = f.max_grade + abs(m)
    rng = [i for i in range(-bound, bound + 1) if i]  # alpha_0 = 0 on charge 0
    out = PPoly()
    cache: dict = {}
    for head in itertools.product(rng, repeat=arity - 1):
        last = m - sum(head)
        if last == 0 or abs(last) > bound:
            continue
        key = tuple(sorted(head + (last,)))
        if key not in cache:
            cache[key] = _normal_ordered_apply(key, f)
        out = out + cache[key]
    out = out.scale(weight)
    return out.truncate(grade_max) if grade_max is not None else out


# ---------------------------------------------------------------------------
# Schur polynomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def complete_h(n: int) -> PPoly:
    """h_n = sum_{|mu|=n} p_mu / z_mu, from exp(sum p_i x^i / i)."""
    if n < 0:
        return PPoly()
    return PPoly({mu: Fraction(1, mu.z) for mu in partitions_of(n)})


@lru_cache(maxsize=None)
def schur_poly(lam) -> PPoly:
    """Jacobi-Trudi determinant det[h_{lam_i - i + j}]."""
    lam = Partition(lam)
    n = len(lam)
    if n == 0:
        return PPoly.one()

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> PPoly:
        # expansion along row `row` over the still-free columns
        if row == n:
            return PPoly.one()
        acc = PPoly()
        free = sorted(cols)
        for pos, j in enumerate(free):
            h = complete_h(lam[row] - row + j)
            if h.is_zero():
                continue
            term = h * minor(row + 1, cols - {j})
            acc = acc - term if pos % 2 else acc + term
        return acc

    return minor(0, frozenset(range(n)))


def standard_tableaux_counts(d: int) -> dict[Partition, int]:
    """f^lambda for |lambda| = d by adding one box at a time (Pieri for p_1)."""
    counts = {EMPTY: 1}
    for _ in range(d):
        nxt: dict = {}
        for lam, c in counts.items():
            for mu in lam.add_box_options():
                nxt[mu] = nxt.get(mu, 0) + c
        counts = nxt
    return counts


@lru_cache(maxsize=None)
def cut_join_eigenvalue(lam) -> Scalar:
    lam = Partition(lam)
    s = schur_poly(lam)
    ks = cut_join_apply(s)
    mu0 = next(iter(_ordered(s.terms)))
    ratio = ks.coeff(mu0) / s.terms[mu0]
    if not (ks - s.scale(ratio)).is_zero():
        raise InconsistencyError(f"K0 s_{lam} is not proportional to s_{lam}")
    return ratio


# ---------------------------------------------------------------------------
# the Hurwitz tau-function
# ---------------------------------------------------------------------------


def hurwitz_tau(d_max: int) -> PPoly:
    """e^{lambda K0} e^{p1} through grade d_max, u = e^{lambda/2} stored as Q."""
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    out = PPoly()
    for d in range(d_max + 1):
        for lam, f in standard_tableaux_counts(d).items():
            c = cut_join_eigenvalue(lam).as_fraction()
            weight = Scalar.Qpow(int(2 * c)) * Fraction(f, factorial(d))
            out = out + schur_poly(lam).scale(weight)
    return out


def lambda_expand(f: PPoly, b_max: int) -> list[PPoly]:
    """Coefficients of lambda^b, b <= b_max, after u^k -> exp(k lambda / 2)."""
    out: list[dict] = [dict() for _ in range(b_max + 1)]
    for mu, c in f.terms.items():
        if c.has_T():
            raise ValueError("lambda_expand needs coefficients in Q only")
        terms = c.laurent_terms()
        for b in range(b_max + 1):
            v = sum((cf * Fraction(k, 2) ** b for k, cf in terms.items()), Fraction(0))
            if v:
                out[b][mu] = Scalar(v / factorial(b))
    return [PPoly(t) for t in out]


def cut_join_ode(d_max: int, b_max: int) -> list[PPoly]:
    """Z_b = K0^b e^{p1} / b!, the Taylor coefficients of the cut-and-join flow."""
    z = PPoly({Partition((1,) * d): Fraction(1, factorial(d)) for d in range(d_max + 1)})
    out = []
    for b in range(b_max + 1):
        out.append(z.scale(Fraction(1, factorial(b))))
        z = cut_join_apply(z)
    return out


# ---------------------------------------------------------------------------
# q-series product identities on dense int64 arrays (x, q, a)
# ---------------------------------------------------------------------------


def _mono(shape, x=0, q=0, a=0, c=1):
    arr = np.zeros(shape, np.int64)
    if x < shape[0] and q < shape[1] and a < shape[2]:
        arr[x, q, a] = c
    return arr


def _geom(shape, x, q):
    """1/(1 - x^x q^q) truncated to shape."""
    arr = np.zeros(shape, np.int64)
    k = 0
    while k * x < shape[0] and k * q < shape[1]:
        arr[k * x, k * q, 0] = 1
        k += 1
        if x == 0 and q == 0:
            raise ValueError("1/(1-1) is not a formal series")
    return arr


def _product_lhs(shape, with_a: bool, m_start: int) -> np.ndarray:
    """prod_{m >= m_start} (1 - a q^{m+1} x) / (1 - q^m x); factors past q_max are 1."""
    out = _mono(shape)
    for m in range(m_start, shape[1]):
        out = _kernels.series_mul(out, _geom(shape, 1, m))
        if with_a:
            out = _kernels.series_mul(out, _mono(shape) - _mono(shape, 1, m + 1, 1))
    return out


def _product_rhs(shape, with_a: bool, q_shift: int) -> np.ndarray:
    """sum_n x^n q^{n q_shift} (aq;q)_n / (q;q)_n."""
    out = np.zeros(shape, np.int64)
    for n in range(shape[0]):
        term = _mono(shape, n, n * q_shift)
        for j in range(1, n + 1):
            term = _kernels.series_mul(term, _geom(shape, 0, j))
            if with_a:
                term = _kernels.series_mul(term, _mono(shape) - _mono(shape, 0, j, 1))
        out += term
    return out


def _array_residual(lhs, rhs, limit=5) -> list:
    diff = lhs - rhs
    out = []
    for x, q, a in zip(*np.nonzero(diff)):
        out.append((f"x^{x} q^{q} a^{a}", str(int(diff[x, q, a]))))
        if len(out) >= limit:
            break
    return out


def q_product_identity_check(x_max: int, q_max: int, with_a: bool = True) -> CheckReport:
    """Exact check of prod (1-a q^{m+1} x)/(1-q^m x) = sum x^n (aq;q)_n/(q;q)_n.

    With ``with_a=False`` the a = 0 forms are checked: the identity itself and
    its x -> qx shift prod_{m>=1} 1/(1-q^m x) = sum q^n x^n/(q;q)_n.
    """
    if x_max < 0 or q_max < 0:
        raise ValueError("bounds must be non-negative")
    shape = (x_max + 1, q_max + 1, (x_max + 1) if with_a else 1)
    params = {"x_max": x_max, "q_max": q_max, "with_a": with_a, "backend": _kernels.backend_name()}
    name = "q_product_identity"
    if with_a:
        res = _array_residual(_product_lhs(shape, True, 0), _product_rhs(shape, True, 0))
        return CheckReport(name, "symbolic-a", params, res)
    res = _array_residual(_product_lhs(shape, False, 0), _product_rhs(shape, False, 0))
    res += _array_residual(_product_lhs(shape, False, 1), _product_rhs(shape, False, 1))
    return CheckReport(name, "a=0", params, res)
