"""Casimir eigenvalue bookkeeping: rho, the form on h^*, and the pair audit.

Weights are paired through an explicit Gram matrix on the basis
(omega_1..omega_n, delta, Lambda_0).  The identification h -> h^* is never built
as a map; it only enters through this matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import AffineWeight, affine_expansion, is_dominant, simple_root
from .hwmodules import WeightSupport
from .rootsys import RootSystem, RootSystemError, coroot, solve_left


@dataclass(frozen=True)
class AffineGram:
    rs: RootSystem
    matrix: tuple

    @property
    def size(self) -> int:
        return len(self.matrix)


def affine_gram(rs: RootSystem) -> AffineGram:
    n = rs.rank
    inv = rs.cartan_inverse
    g = rs.gram
    m = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        for j in range(n):
            # (omega_i, omega_j) = (A^-1)_{ji} (alpha_i, alpha_i) / 2
            m[i][j] = inv[j][i] * g[i][i] / 2
    m[n][n + 1] = m[n + 1][n] = Fraction(1)
    return AffineGram(rs, tuple(tuple(r) for r in m))


def _vec(w: AffineWeight) -> tuple:
    return tuple(w.finite) + (w.d, w.level)


def pairing(g: AffineGram, mu: AffineWeight, lam: AffineWeight) -> Fraction:
    u, v = _vec(mu), _vec(lam)
    return sum((u[i] * g.matrix[i][j] * v[j]
                for i in range(g.size) for j in range(g.size) if u[i] and v[j]), Fraction(0))


def rho(rs: RootSystem) -> AffineWeight:
    """Solve rho(alpha_i^vee) = 1 for i = 0..n with rho(d) = 0."""
    if rs.form_sign != 1:
        raise RootSystemError("rho is defined here only for form_sign = +1")
    n = rs.rank
    bv = coroot(rs, rs.highest_root).coeffs
    # unknowns (x_1..x_n, k); rows are the coroots alpha_1^vee..alpha_n^vee, K - beta^vee
    a = [[Fraction(int(i == j)) for j in range(n)] + [Fraction(0)] for i in range(n)]
    a.append([-Fraction(b) for b in bv] + [Fraction(1)])
    inv = solve_left(a)
    x = [sum(inv[i][j] for j in range(n + 1)) for i in range(n + 1)]
    return AffineWeight(tuple(x[:n]), 0, x[n])


def _as_root_element(rs: RootSystem, beta) -> AffineWeight:
    if isinstance(beta, AffineWeight):
        return beta
    coeffs = tuple(beta)
    if len(coeffs) != rs.rank + 1:
        raise ValueError(f"expected {rs.rank + 1} coefficients over alpha_0..alpha_n")
    out = AffineWeight((0,) * rs.rank)
    for i, c in enumerate(coeffs):
        if c:
            out = out + simple_root(rs, i) * c
    return out


def casimir_gap(g: AffineGram, lam: AffineWeight, beta) -> Fraction:
    """2<lam + rho, beta> - <beta, beta> for beta in Q+ minus {0}.

    ``beta`` is an AffineWeight or coefficients over alpha_0..alpha_n.
    """
    rs = g.rs
    b = _as_root_element(rs, beta)
    e = affine_expansion(rs, b)
    if e is None or any(k < 0 for k in e):
        raise ValueError(f"{b} is not in Q+")
    if not any(e):
        raise ValueError("beta must be nonzero")
    return 2 * pairing(g, lam + rho(rs), b) - pairing(g, b, b)


lemma_a_quantity = casimir_gap


def casimir_shift(g: AffineGram, lam: AffineWeight, beta, a) -> Fraction:
    """Predicted Casimir eigenvalue a + 2<lam + rho, beta> - <beta, beta>."""
    rs = g.rs
    b = _as_root_element(rs, beta)
    if affine_expansion(rs, b) is None:
        raise ValueError(f"{b} is not in the root lattice")
    return Fraction(a) + 2 * pairing(g, lam + rho(rs), b) - pairing(g, b, b)


@dataclass(frozen=True)
class PairRow:
    lam: AffineWeight
    mu: AffineWeight
    beta: tuple
    value: Fraction


@dataclass(frozen=True)
class PairAudit:
    rows: tuple

    @property
    def ok(self) -> bool:
        return all(r.value != 0 for r in self.rows)

    @property
    def all_positive(self) -> bool:
        return all(r.value > 0 for r in self.rows)

    @property
    def violations(self) -> list:
        return [r for r in self.rows if r.value == 0]


def primitive_pair_audit(support: WeightSupport, lam_top: AffineWeight | None = None) -> PairAudit:
    """Evaluate 2<lam + rho, beta> - <beta, beta> over dominant pairs lam > mu = lam - beta."""
    rs = support.rs
    if support.level is not None and support.level < 1:
        raise ValueError("the pair audit needs level >= 1")
    if lam_top is not None and lam_top.level < 1:
        raise ValueError("the pair audit needs level >= 1")
    g = affine_gram(rs)
    dom = [w for w in support.sorted_weights() if is_dominant(rs, w)]
    rows = []
    for lam in dom:
        for mu in dom:
            if mu == lam:
                continue
            e = affine_expansion(rs, lam - mu)
            if e is None or any(k < 0 for k in e):
                continue
            rows.append(PairRow(lam, mu, e, casimir_gap(g, lam, lam - mu)))
    return PairAudit(tuple(rows))


def casimir_eigenvalue(g: AffineGram, lam: AffineWeight) -> Fraction:
    """|lam + rho|^2 - |rho|^2, the Casimir scalar on a highest-weight vector of weight lam."""
    r = rho(g.rs)
    return pairing(g, lam + r, lam + r) - pairing(g, r, r)


def ledger_descent(g: AffineGram, lam: AffineWeight, betas: Sequence, a=0) -> list:
    """Chain casimir_shift along successive descents lam -> lam - b1 -> ..."""
    out = []
    cur, val = lam, Fraction(a)
    for b in betas:
        val = casimir_shift(g, cur, b, val)
        cur = cur - _as_root_element(g.rs, b)
        out.append((cur, val))
    return out
