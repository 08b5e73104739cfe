"""Affine weights lambda = lambda_bar + lambda(d) delta + lambda(K) Lambda_0.

Simple affine roots are alpha_1..alpha_n plus alpha_0 = delta - beta, with
alpha_0^vee = K - beta^vee when the form is positive.  Every element of the
affine root lattice Q has a unique expansion over {alpha_1..alpha_n, delta};
the alpha_0 coefficient of an element of Q is its delta coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .rootsys import (
    Coroot,
    RootSystem,
    RootSystemError,
    coroot,
    dominant_conjugate,
    is_dominant as _finite_dominant,
    is_integral,
)


class NonIntegralLevelError(ValueError):
    """Raised by integrality checks when lambda(K) is not an integer."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AffineWeight:
    finite: tuple
    d: Fraction = Fraction(0)
    level: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(_q(x) for x in self.finite))
        object.__setattr__(self, "d", _q(self.d))
        object.__setattr__(self, "level", _q(self.level))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a + b for a, b in zip(self.finite, other.finite)),
                            self.d + other.d, self.level + other.level)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a - b for a, b in zip(self.finite, other.finite)),
                            self.d - other.d, self.level - other.level)

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(tuple(-a for a in self.finite), -self.d, -self.level)

    def __mul__(self, k) -> "AffineWeight":
        k = _q(k)
        return AffineWeight(tuple(k * a for a in self.finite), k * self.d, k * self.level)

    __rmul__ = __mul__

    def sort_key(self):
        return (-self.d, tuple(-x for x in self.finite), self.level)

    def __str__(self):
        from .serialize import format_weight
        return format_weight(self)


def compose(finite: Sequence, d, level) -> AffineWeight:
    return AffineWeight(tuple(finite), d, level)


def decompose(lam: AffineWeight) -> tuple:
    """Return (lambda_bar, lambda(d), lambda(K))."""
    return lam.finite, lam.d, lam.level


def zero(rs: RootSystem) -> AffineWeight:
    return AffineWeight((0,) * rs.rank)


def delta(rs: RootSystem) -> AffineWeight:
    return AffineWeight((0,) * rs.rank, 1, 0)


def lambda0(rs: RootSystem) -> AffineWeight:
    return AffineWeight((0,) * rs.rank, 0, 1)


def fundamental(rs: RootSystem, i: int) -> AffineWeight:
    """omega_i (i >= 1) extended by zero on K and d."""
    return AffineWeight(tuple(int(j == i - 1) for j in range(rs.rank)))


def finite_root(rs: RootSystem, alpha: Sequence, n=0) -> AffineWeight:
    """alpha + n delta as an affine weight (level 0)."""
    return AffineWeight(rs.root_to_weight(alpha), n, 0)


def simple_root(rs: RootSystem, i: int) -> AffineWeight:
    """alpha_i for i = 0..n."""
    if i == 0:
        return AffineWeight(tuple(-x for x in rs.root_to_weight(rs.highest_root)), 1, 0)
    e = tuple(int(j == i - 1) for j in range(rs.rank))
    return finite_root(rs, e)


@dataclass(frozen=True)
class AffineRealRoot:
    alpha: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        if not any(self.alpha):
            raise RootSystemError("real affine roots need a nonzero finite part")

    def weight(self, rs: RootSystem) -> AffineWeight:
        return finite_root(rs, self.alpha, self.n)

    def is_positive(self) -> bool:
        return self.n > 0 or (self.n == 0 and all(x >= 0 for x in self.alpha))


@dataclass(frozen=True)
class AffineCoroot:
    finite_part: Coroot
    k_coeff: Fraction

    def __call__(self, lam: AffineWeight) -> Fraction:
        return self.finite_part(lam.finite) + self.k_coeff * lam.level


def affine_coroot(rs: RootSystem, gamma: AffineRealRoot) -> AffineCoroot:
    """(alpha + n delta)^vee = alpha^vee + 2n/(alpha, alpha) K."""
    fin = coroot(rs, gamma.alpha)
    return AffineCoroot(fin, Fraction(2 * gamma.n) / rs.root_length2(gamma.alpha))


def alpha0_value(rs: RootSystem, lam: AffineWeight) -> Fraction:
    """lam(alpha_0^vee) = lam(K) - lam_bar(beta^vee)."""
    return lam.level - coroot(rs, rs.highest_root)(lam.finite)


def simple_coroot_values(rs: RootSystem, lam: AffineWeight) -> tuple:
    """(lam(alpha_0^vee), lam(alpha_1^vee), ..., lam(alpha_n^vee))."""
    return (alpha0_value(rs, lam),) + tuple(lam.finite)


def _require_positive_form(rs: RootSystem):
    if rs.form_sign != 1:
        raise RootSystemError("dominance is defined here only for form_sign = +1")


def is_dominant(rs: RootSystem, lam: AffineWeight) -> bool:
    """True iff lam takes values in N on alpha_0^vee..alpha_n^vee."""
    _require_positive_form(rs)
    if lam.level.denominator != 1:
        raise NonIntegralLevelError(f"level {lam.level} is not an integer")
    return all(v >= 0 and v.denominator == 1 for v in simple_coroot_values(rs, lam))


def affine_expansion(rs: RootSystem, x: AffineWeight) -> tuple | None:
    """Coefficients (n_0, ..., n_n) of x over alpha_0..alpha_n, or None if x is not in Q."""
    if x.level != 0 or x.d.denominator != 1:
        return None
    c = rs.weight_to_root(x.finite)
    if not is_integral(c):
        return None
    n0 = x.d
    beta = rs.highest_root
    return (int(n0),) + tuple(int(ci + n0 * b) for ci, b in zip(c, beta))


def affine_leq(rs: RootSystem, mu: AffineWeight, lam: AffineWeight) -> bool:
    """mu <= lam: lam - mu is an N-combination of alpha_0..alpha_n."""
    e = affine_expansion(rs, lam - mu)
    return e is not None and all(k >= 0 for k in e)


def finite_leq0(rs: RootSystem, mu: Sequence, lam: Sequence) -> bool:
    """mu <=_0 lam: lam - mu is an N-combination of alpha_1..alpha_n."""
    c = rs.weight_to_root([Fraction(a) - Fraction(b) for a, b in zip(lam, mu)])
    return all(x >= 0 and x.denominator == 1 for x in c)


def in_root_lattice(rs: RootSystem, w: Sequence) -> bool:
    return is_integral(rs.weight_to_root(w))


def form(rs: RootSystem, mu: AffineWeight, nu: AffineWeight) -> Fraction:
    """(mu | nu) on h^*, with (delta | Lambda_0) = 1 and delta, Lambda_0 isotropic."""
    return rs.inner(mu.finite, nu.finite) + mu.level * nu.d + mu.d * nu.level


# -- cosets and minimal representatives --------------------------------------


@dataclass(frozen=True)
class Coset:
    """An element of weight lattice / root lattice, keyed by its minimal dominant weight."""

    type_key: str
    representative: tuple


def _descend(rs: RootSystem, lam: tuple) -> tuple:
    """Subtract positive roots while staying dominant until no step applies.

    A dominant weight with a strictly lower dominant weight in its coset always
    admits such a step, so the end point is the minimal element.
    """
    pos = [rs.root_to_weight(a) for a in rs.positive_roots]
    cur = lam
    while True:
        for a in pos:
            nxt = tuple(x - y for x, y in zip(cur, a))
            if _finite_dominant(nxt):
                cur = nxt
                break
        else:
            return cur


def dominant_below(rs: RootSystem, lam: Sequence) -> list:
    """All dominant mu with mu <=_0 lam, by exhaustive search of a bounded box.

    For dominant mu the simple-root coordinates are non-negative (the inverse
    Cartan matrix is non-negative), so lam - mu has coordinates bounded by
    those of lam.
    """
    c = rs.weight_to_root(lam)
    bounds = [int(x // 1) if x >= 0 else -1 for x in c]
    if any(b < 0 for b in bounds):
        return []
    out = []
    for k in product(*(range(b + 1) for b in bounds)):
        mu = tuple(Fraction(x) - y for x, y in zip(lam, rs.root_to_weight(k)))
        if _finite_dominant(mu):
            out.append(mu)
    return out


def _minimal_search(rs: RootSystem, lam: tuple) -> tuple:
    cand = _descend(rs, dominant_conjugate(rs, lam))
    below = dominant_below(rs, cand)
    if below != [cand]:
        raise AssertionError(f"descent ended at non-minimal weight {cand}")
    return cand


def coset_of(rs: RootSystem, lam: Sequence) -> Coset:
    lam = tuple(Fraction(x) for x in lam)
    if not is_integral(lam):
        raise ValueError(f"{lam} is not an integral weight")
    return Coset(str(rs.type), _minimal_search(rs, lam))


def minimal_representative(rs: RootSystem, c: Coset) -> tuple:
    if c.type_key != str(rs.type):
        raise ValueError(f"coset belongs to {c.type_key}, not {rs.type}")
    return c.representative


def coset_representatives(rs: RootSystem) -> list[Coset]:
    """One Coset per element of the weight lattice modulo the root lattice."""
    seen = {}
    for w in [(0,) * rs.rank] + [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]:
        c = coset_of(rs, w)
        seen.setdefault(c.representative, c)
    cosets = sorted(seen.values(), key=lambda c: (sum(c.representative), c.representative))
    if len(cosets) != rs.coset_index:
        raise AssertionError(f"{rs.type}: found {len(cosets)} cosets, expected {rs.coset_index}")
    return cosets


def minimal_weight_table(rs: RootSystem) -> tuple[bool, list]:
    """Check beta^vee takes value 0 or 1 on every minimal dominant weight.

    Returns (ok, [(coset, lam, lam(beta^vee)), ...]).
    """
    _require_positive_form(rs)
    bv = coroot(rs, rs.highest_root)
    rows = []
    for c in coset_representatives(rs):
        lam = minimal_representative(rs, c)
        rows.append((c, lam, bv(lam)))
    return all(v in (0, 1) for _, _, v in rows), rows


verify_lemma_1_4 = minimal_weight_table
