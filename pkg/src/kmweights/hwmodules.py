"""Weight sets P(lambda) of integrable highest-weight modules.

Truncation depth is the alpha_0 coefficient of lambda - mu, which for mu <= lambda
equals lambda(d) - mu(d).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Literal, Sequence

from .affine import (
    AffineRealRoot,
    AffineWeight,
    affine_expansion,
    affine_leq,
    coset_of,
    delta,
    finite_root,
    form,
    is_dominant,
    lambda0,
    minimal_representative,
    simple_coroot_values,
    simple_root,
)
from .rootsys import RootSystem, dual_coxeter, is_integral


class NotDominantError(ValueError):
    pass


@dataclass
class WeightSupport:
    """A finite set of affine weights with positive multiplicities."""

    rs: RootSystem
    entries: dict = field(default_factory=dict)
    depth: int | None = None

    def __post_init__(self):
        levels = {w.level for w in self.entries}
        if len(levels) > 1:
            raise ValueError(f"support mixes levels {sorted(levels)}")
        if any(m < 1 for m in self.entries.values()):
            raise ValueError("multiplicities must be >= 1")

    @classmethod
    def of(cls, rs: RootSystem, weights: Iterable[AffineWeight], depth=None) -> "WeightSupport":
        return cls(rs, {w: 1 for w in weights}, depth)

    def __contains__(self, w) -> bool:
        return w in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.sorted_weights())

    def sorted_weights(self) -> list:
        return sorted(self.entries, key=AffineWeight.sort_key)

    @property
    def level(self):
        return next(iter(self.entries)).level if self.entries else None

    def merge(self, other: "WeightSupport") -> "WeightSupport":
        """Multiplicity-additive union (direct sum of the underlying modules)."""
        out = dict(self.entries)
        for w, m in other.entries.items():
            out[w] = out.get(w, 0) + m
        depth = None if self.depth is None or other.depth is None else max(self.depth, other.depth)
        return WeightSupport(self.rs, out, depth)


def _check_highest(rs: RootSystem, lam: AffineWeight):
    if not is_dominant(rs, lam):
        raise NotDominantError(f"{lam} is not dominant integral")
    if lam.level < 1:
        raise NotDominantError(f"{lam} has level {lam.level} < 1")


def _simple_roots(rs: RootSystem) -> list:
    return [simple_root(rs, i) for i in range(rs.rank + 1)]


def affine_dominant_conjugate(rs: RootSystem, mu: AffineWeight) -> AffineWeight:
    """Dominant element of the affine Weyl orbit of an integral weight of positive level."""
    if mu.level <= 0:
        raise ValueError("affine Weyl orbits have dominant elements only at positive level")
    alphas = _simple_roots(rs)
    while True:
        vals = simple_coroot_values(rs, mu)
        i = next((k for k, v in enumerate(vals) if v < 0), None)
        if i is None:
            return mu
        mu = mu - alphas[i] * vals[i]


def depth_of(lam: AffineWeight, mu: AffineWeight) -> Fraction:
    return lam.d - mu.d


def member(rs: RootSystem, mu: AffineWeight, lam: AffineWeight) -> bool:
    """mu in P(lambda): the dominant conjugate of mu is <= lambda."""
    _check_highest(rs, lam)
    if affine_expansion(rs, lam - mu) is None:
        return False
    return affine_leq(rs, affine_dominant_conjugate(rs, mu), lam)


class Freudenthal:
    """Multiplicities in V(lambda) by the Freudenthal recursion.

    Positive roots used at depth k: alpha + m delta (0 <= m <= k, alpha > 0 when
    m = 0) with multiplicity 1 and m delta (1 <= m <= k) with multiplicity rank.
    """

    def __init__(self, rs: RootSystem, lam: AffineWeight):
        _check_highest(rs, lam)
        self.rs = rs
        self.lam = lam
        self.rho = AffineWeight((1,) * rs.rank, 0, dual_coxeter(rs))
        lr = lam + self.rho
        self._top = form(rs, lr, lr)
        self._cache: dict = {lam: 1}
        self._real = [(a, finite_root(rs, a)) for a in sorted(rs.roots)]
        self._delta = delta(rs)

    def _roots_at(self, k: int):
        for m in range(k + 1):
            dm = self._delta * m
            for a, w in self._real:
                if m == 0 and not all(x >= 0 for x in a):
                    continue
                yield w + dm, 1
            if m:
                yield dm, self.rs.rank

    def __call__(self, mu: AffineWeight) -> int:
        hit = self._cache.get(mu)
        if hit is not None:
            return hit
        e = affine_expansion(self.rs, self.lam - mu)
        if e is None or any(x < 0 for x in e):
            return 0
        rhs = Fraction(0)
        for gamma, mult in self._roots_at(e[0]):
            j = 1
            while True:
                nu = mu + gamma * j
                f = affine_expansion(self.rs, self.lam - nu)
                if any(x < 0 for x in f):
                    break
                m_nu = self(nu)
                if m_nu:
                    rhs += mult * form(self.rs, nu, gamma) * m_nu
                j += 1
        mr = mu + self.rho
        coef = self._top - form(self.rs, mr, mr)
        if coef == 0:
            if rhs != 0:
                raise ArithmeticError(f"Freudenthal: zero denominator with nonzero sum at {mu}")
            val = 0
        else:
            v = 2 * rhs / coef
            if v < 0 or v.denominator != 1:
                raise ArithmeticError(f"Freudenthal produced {v} at {mu}")
            val = int(v)
        self._cache[mu] = val
        return val


def freudenthal_mult(rs: RootSystem, lam: AffineWeight, mu: AffineWeight) -> int:
    return Freudenthal(rs, lam)(mu)


def enumerate_P(rs: RootSystem, lam: AffineWeight, depth: int,
                multiplicities: bool = True) -> WeightSupport:
    """All weights of V(lambda) with depth <= D, with multiplicities.

    Every non-highest weight mu of V(lambda) has mu + alpha_i in P(lambda) for
    some i, and adding alpha_i never increases depth, so a breadth-first descent
    by simple roots through members reaches the whole truncation.
    """
    _check_highest(rs, lam)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    alphas = _simple_roots(rs)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for a in alphas:
            nu = mu - a
            if nu in seen or depth_of(lam, nu) > depth:
                continue
            if member(rs, nu, lam):
                seen.add(nu)
                queue.append(nu)
    if multiplicities:
        f = Freudenthal(rs, lam)
        entries = {w: f(w) for w in sorted(seen, key=AffineWeight.sort_key)}
    else:
        entries = {w: 1 for w in sorted(seen, key=AffineWeight.sort_key)}
    return WeightSupport(rs, entries, depth)


@dataclass(frozen=True)
class Mu0Result:
    mu0: AffineWeight
    s: Fraction
    member: bool


def construct_mu0(rs: RootSystem, lam: AffineWeight, s) -> Mu0Result:
    """mu_0 = minimal(coset of lambda_bar) + s delta + lambda(K) Lambda_0."""
    _check_highest(rs, lam)
    s = Fraction(s)
    gap = lam.d - s
    if gap < 0 or gap.denominator != 1:
        raise ValueError(f"lambda(d) - s = {gap} is not a non-negative integer")
    mbar = minimal_representative(rs, coset_of(rs, lam.finite))
    mu0 = AffineWeight(mbar, s, 0) + lambda0(rs) * lam.level
    return Mu0Result(mu0, s, member(rs, mu0, lam))


# -- gap searches (finite-support form) -------------------------------------

EtaLattice = Literal["root", "weight"]


def _in_cone(v: Sequence, lattice: EtaLattice) -> bool:
    """v nonzero with non-negative simple-root coordinates (integral for 'root')."""
    if not any(v) or any(x < 0 for x in v):
        return False
    return lattice == "weight" or is_integral(v)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _gap_search(support: WeightSupport, lam: AffineWeight, sign: int,
                window: int | None, lattice: EtaLattice):
    if lam not in support:
        raise ValueError(f"{lam} is not in the support")
    rs = support.rs
    offsets = []
    for w in support.entries:
        if w.level != lam.level:
            continue
        c = rs.weight_to_root([sign * (a - b) for a, b in zip(w.finite, lam.finite)])
        offsets.append(c)
    reach = max((sum(c) for c in offsets if _in_cone(c, "weight")), default=0)
    if window is None:
        window = max(2, int(reach // 1))
    for h in range(1, window):
        for eta0 in _compositions(h, rs.rank):
            if not any(_in_cone([x - y for x, y in zip(c, eta0)], lattice) for c in offsets):
                return tuple(sign * x for x in eta0)
    return None


def find_gap_up(support: WeightSupport, lam: AffineWeight, window: int | None = None,
                eta_lattice: EtaLattice = "root"):
    """Smallest-height eta0 >0 0 in the root lattice with lam + eta0 + eta outside
    the support for every nonzero eta >=0 0 (finite parts; any delta shift).

    Candidates have height below ``window`` (default: max(2, largest height of
    an upward offset present in the support)), so that lam + eta0 + eta can be
    tested against the truncation.  ``eta_lattice="weight"`` lets eta range
    over weight-lattice points with non-negative rational root coordinates.
    Returns simple-root coordinates, or None.
    """
    return _gap_search(support, lam, 1, window, eta_lattice)


def find_gap_down(support: WeightSupport, lam: AffineWeight, window: int | None = None,
                  eta_lattice: EtaLattice = "root"):
    """Mirror of :func:`find_gap_up`; the result has non-positive coordinates."""
    return _gap_search(support, lam, -1, window, eta_lattice)


def coset_split(support: WeightSupport) -> list[WeightSupport]:
    """Partition by classes modulo the affine root lattice."""
    rs = support.rs
    parts: dict = {}
    for w in support.sorted_weights():
        c = rs.weight_to_root(w.finite)
        key = (tuple(x - (x.numerator // x.denominator) for x in c), w.d - (w.d.numerator // w.d.denominator), w.level)
        parts.setdefault(key, {})[w] = support.entries[w]
    return [WeightSupport(rs, e, support.depth) for e in parts.values()]


def as_real_root(rs: RootSystem, x: AffineWeight) -> AffineRealRoot | None:
    if x.level != 0 or x.d.denominator != 1:
        return None
    c = rs.weight_to_root(x.finite)
    if not is_integral(c):
        return None
    a = tuple(int(v) for v in c)
    if not rs.is_root(a):
        return None
    return AffineRealRoot(a, int(x.d))


def audit_root_gaps(support: WeightSupport, lam: AffineWeight, eta: AffineWeight):
    """Check lam + alpha is outside the support for positive real roots alpha > eta.

    Returns (ok, counterexamples) where counterexamples are AffineRealRoots.
    """
    if lam not in support:
        raise ValueError(f"{lam} is not in the support")
    rs = support.rs
    bad = []
    for w in support.sorted_weights():
        g = as_real_root(rs, w - lam)
        if g is None or not g.is_positive():
            continue
        e = affine_expansion(rs, g.weight(rs) - eta)
        if e is not None and all(k >= 0 for k in e) and any(e):
            bad.append(g)
    return not bad, bad


audit_claim_1_10 = audit_root_gaps


def box_candidates(rs: RootSystem, lam: AffineWeight, depth: int, spread: int = 2) -> set:
    """Weights lam - sum n_i alpha_i with n_0 <= depth and small finite coefficients,
    together with their finite Weyl images; used to probe membership boundaries."""
    from .rootsys import weyl_orbit
    alphas = _simple_roots(rs)
    out = set()
    ranges = [range(depth + 1)] + [range(depth * 2 + spread + 1)] * rs.rank
    for ns in product(*ranges):
        mu = lam
        for k, a in zip(ns, alphas):
            if k:
                mu = mu - a * k
        for f in weyl_orbit(rs, mu.finite):
            out.add(AffineWeight(f, mu.d, mu.level))
    return out
