"""Brute-force Hurwitz counts by enumerating transposition words in S_d.

``count_factorizations`` never touches characters or Schur functions, so it
is an independent ground truth for the tau-function coefficients.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import _kernels
from .boson import hurwitz_tau, lambda_expand
from .kacschwarz import CheckReport
from .partitions import Partition, partitions_of

__all__ = [
    "HurwitzQuery",
    "SymmetricGroup",
    "count_factorizations",
    "normalized_count",
    "oracle_rows",
    "check_tau_vs_oracle",
    "MAX_D",
    "MAX_B",
    "MITM_FROM",
]

MAX_D, MAX_B = 6, 8
MITM_FROM = 6  # words of length >= this are split in two halves


@dataclass(frozen=True)
class HurwitzQuery:
    mu: Partition
    b: int

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        d = self.mu.size
        if d < 1 or d > MAX_D:
            raise ValueError(f"degree must be in 1..{MAX_D}, got {d}")
        if self.b < 0 or self.b > MAX_B:
            raise ValueError(f"b must be in 0..{MAX_B}, got {self.b}")


class SymmetricGroup:
    """S_d with permutations indexed in lexicographic order."""

    def __init__(self, d: int):
        self.d = d
        self.perms = np.array(list(itertools.permutations(range(d))), dtype=np.int64).reshape(-1, d)
        weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
        self._codes = self.perms @ weights
        self._weights = weights
        # comp[i, j] = index of perms[i] o perms[j]   ((p o q)(x) = p(q(x)))
        composed = self.perms[:, self.perms]
        self.comp = np.searchsorted(self._codes, composed @ weights)
        self.identity = 0
        self.inverse = np.argmax(self.comp == self.identity, axis=1)
        self.transpositions = np.array(
            [self.index(self._transposition(i, j)) for i, j in itertools.combinations(range(d), 2)],
            dtype=np.int64,
        )

    def _transposition(self, i, j):
        p = list(range(self.d))
        p[i], p[j] = j, i
        return p

    def index(self, perm) -> int:
        code = int(np.dot(np.asarray(perm, dtype=np.int64), self._weights))
        k = int(np.searchsorted(self._codes, code))
        if k >= len(self._codes) or self._codes[k] != code:
            raise ValueError(f"{perm} is not a permutation of {self.d}")
        return k

    def standard_rep(self, mu: Partition) -> int:
        """The permutation cycling consecutive blocks of sizes mu_1, mu_2, ..."""
        p, start = list(range(self.d)), 0
        for part in mu:
            for i in range(part):
                p[start + i] = start + (i + 1) % part
            start += part
        return self.index(p)

    def cycle_type(self, k: int) -> Partition:
        p, seen, parts = self.perms[k], set(), []
        for s in range(self.d):
            if s in seen:
                continue
            n, x = 0, s
            while x not in seen:
                seen.add(x)
                x = int(p[x])
                n += 1
            parts.append(n)
        return Partition(parts)

    def conjugate(self, k: int, g: int) -> int:
        return int(self.comp[self.comp[g, k], self.inverse[g]])

    @lru_cache(maxsize=None)
    def word_histogram(self, length: int) -> np.ndarray:
        """Counts of words tau_length ... tau_1 of transpositions by product."""
        return _kernels.word_histogram(self.comp, self.transpositions, length, self.identity)


@lru_cache(maxsize=None)
def _group(d: int) -> SymmetricGroup:
    return SymmetricGroup(d)


def _count(G: SymmetricGroup, target: int, b: int) -> int:
    if b < MITM_FROM:
        return int(G.word_histogram(b)[target])
    # tau_b ... tau_1 = B o A with A the first h letters
    h = b // 2
    hist_a, hist_b = G.word_histogram(h), G.word_histogram(b - h)
    partner = G.comp[G.inverse, target]  # B^-1 o sigma for every B
    return int(np.dot(hist_b, hist_a[partner]))


def count_factorizations(q: HurwitzQuery | Partition, b: int | None = None, representative: int | None = None) -> int:
    """Ordered b-tuples of transpositions with product a fixed permutation of type mu."""
    if not isinstance(q, HurwitzQuery):
        q = HurwitzQuery(Partition(q), b)
    G = _group(q.mu.size)
    target = G.standard_rep(q.mu) if representative is None else representative
    if G.cycle_type(target) != q.mu:
        raise ValueError("representative has the wrong cycle type")
    return _count(G, target, q.b)


def normalized_count(mu, b: int) -> Fraction:
    """N_b(mu) / (b! z_mu)."""
    mu = Partition(mu)
    return Fraction(count_factorizations(mu, b), factorial(b) * mu.z)


def _grade2_closed_form(mu: Partition, b: int) -> Fraction:
    # from (u^2 + u^-2)/4 p1^2 + (u^2 - u^-2)/4 p2 with u^2 = e^lambda
    sign = (-1) ** b
    num = 1 + sign if mu == Partition((1, 1)) else 1 - sign
    return Fraction(num, 4 * factorial(b))


def oracle_rows(d_max: int, b_max: int) -> list[tuple]:
    """Rows (d, mu, b, N, N/(b! z_mu), tau coefficient, match)."""
    if d_max > MAX_D or b_max > MAX_B:
        raise ValueError(f"oracle bounds are d <= {MAX_D}, b <= {MAX_B}")
    tau_b = lambda_expand(hurwitz_tau(d_max), b_max)
    rows = []
    for d in range(1, d_max + 1):
        for mu in reversed(partitions_of(d)):
            for b in range(b_max + 1):
                n = count_factorizations(mu, b)
                norm = Fraction(n, factorial(b) * mu.z)
                tc = tau_b[b].coeff(mu).as_fraction()
                rows.append((d, mu, b, n, norm, tc, norm == tc))
    return rows


def check_tau_vs_oracle(d_max: int = 5, b_max: int = 6, seed: int = 0):
    """Tau coefficients against enumeration; returns (CheckReport, rows)."""
    residual, notes = [], []
    # the normalization contract, validated at d <= 2 before the sweep
    tau2 = lambda_expand(hurwitz_tau(2), b_max)
    for b in range(b_max + 1):
        for mu in (Partition((2,)), Partition((1, 1))):
            closed = _grade2_closed_form(mu, b)
            if closed != normalized_count(mu, b) or closed != tau2[b].coeff(mu).as_fraction():
                residual.append((f"contract {mu} b={b}", str(closed)))
        if normalized_count((1,), b) != (1 if b == 0 else 0):
            residual.append((f"contract (1) b={b}", "d=1"))
    if residual:
        return CheckReport("tau_vs_oracle", "hurwitz", {"d_max": d_max, "b_max": b_max}, residual,
                           "normalization contract failed at d <= 2"), []
    notes.append("contract N_b(mu)/(b! z_mu) validated at d<=2")

    rows = oracle_rows(d_max, b_max)
    for d, mu, b, n, norm, tc, ok in rows:
        if not ok:
            residual.append((f"{mu} b={b}", f"oracle {norm} tau {tc}"))
        if n and (b - (d - len(mu))) % 2:
            residual.append((f"{mu} b={b}", f"parity violated: N={n}"))

    rng = random.Random(seed)
    for d in range(1, d_max + 1):
        G = _group(d)
        for mu in partitions_of(d):
            base = G.standard_rep(mu)
            for b in range(min(b_max, 5) + 1):
                ref = _count(G, base, b)
                for _ in range(3):
                    g = rng.randrange(len(G.perms))
                    if _count(G, G.conjugate(base, g), b) != ref:
                        residual.append((f"{mu} b={b}", "not a class function"))
    notes.append("parity and conjugation invariance checked")
    params = {"d_max": d_max, "b_max": b_max, "rows": len(rows), "backend": _kernels.backend_name()}
    return CheckReport("tau_vs_oracle", "hurwitz", params, residual[:5], "; ".join(notes)), rows
