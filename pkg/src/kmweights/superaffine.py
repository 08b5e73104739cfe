"""Affine Lie superalgebras: even-part catalog and the non-existence obstruction.

Weights live on h = h_1 + h_2 + CK + Cd: an AffineWeight whose finite part is
the concatenation of the fundamental coordinates of the even simple
components (the centre summand of A(m,n) and C(n) carries no coordinate).
The first component has a positive form (highest root of square 2), the
second a negative one (square -2).  Odd roots are never materialized.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Literal

from .affine import AffineRealRoot, AffineWeight
from .rootsys import RootSystem, SimpleType, build_root_system, coroot


class SuperSpecError(ValueError):
    pass


class HypothesisError(ValueError):
    """An input does not meet the hypotheses of the obstruction argument."""


@dataclass(frozen=True)
class Component:
    rs: RootSystem
    offset: int

    @property
    def rank(self) -> int:
        return self.rs.rank

    def restrict(self, w: AffineWeight) -> tuple:
        return w.finite[self.offset:self.offset + self.rank]

    def root_weight(self, gamma: AffineRealRoot, total_rank: int) -> AffineWeight:
        return _embedded(self, gamma.alpha, total_rank) + AffineWeight((0,) * total_rank, gamma.n, 0)

    def coroot_value(self, w: AffineWeight, gamma: AffineRealRoot) -> Fraction:
        """w(gamma^vee) with gamma^vee = alpha^vee + 2n/(alpha, alpha) K."""
        a2 = self.rs.root_length2(gamma.alpha)
        return coroot(self.rs, gamma.alpha)(self.restrict(w)) + Fraction(2 * gamma.n) / a2 * w.level


@lru_cache(maxsize=None)
def _embedded(comp: Component, alpha: tuple, total_rank: int) -> AffineWeight:
    fin = [Fraction(0)] * total_rank
    for i, x in enumerate(comp.rs.root_to_weight(alpha)):
        fin[comp.offset + i] = x
    return AffineWeight(tuple(fin))


@dataclass(frozen=True)
class SuperAlgebraSpec:
    name: str
    even_components: tuple  # ((SimpleType, form_sign), ...)
    has_center_summand: bool
    parameter: Fraction | None = None
    first_factor: int = 0

    @property
    def total_rank(self) -> int:
        return sum(t.rank for t, _ in self.even_components)

    def components(self) -> list[Component]:
        out, off = [], 0
        for t, sign in self.even_components:
            out.append(Component(build_root_system(t, sign), off))
            off += t.rank
        return out

    def zero_weight(self, level=0, d=0) -> AffineWeight:
        return AffineWeight((0,) * self.total_rank, d, level)

    def delta(self) -> AffineWeight:
        return self.zero_weight(0, 1)


def _st(series: str, rank: int) -> SimpleType:
    return SimpleType(series, rank, degenerate_ok=True)


def _with_signs(parts: Iterable[SimpleType]) -> tuple:
    parts = list(parts)
    return tuple((t, 1 if i == 0 else -1) for i, t in enumerate(parts))


_NAME = re.compile(r"\s*([A-Z])\s*\(\s*([^)]*)\)\s*")


def catalog(name: str, first_factor: int = 0) -> SuperAlgebraSpec:
    """Even part of a basic Lie superalgebra with form signs assigned."""
    m = _NAME.fullmatch(name)
    if not m:
        raise SuperSpecError(f"cannot parse superalgebra name {name!r}")
    letter, args = m.group(1), m.group(2)
    raw = [a.strip() for a in re.split(r"[,;:]", args)]
    try:
        if letter == "D" and len(raw) == 3:
            if raw[:2] != ["2", "1"]:
                raise SuperSpecError(f"unknown superalgebra {name!r}")
            a = Fraction(raw[2])
            if a in (0, -1):
                raise SuperSpecError("D(2,1;a) needs a not in {0, -1}")
            return SuperAlgebraSpec(f"D(2,1;{a})", _with_signs([_st("D", 2), _st("A", 1)]),
                                    False, a, first_factor)
        nums = [int(x) for x in raw]
    except (ValueError, ZeroDivisionError):
        raise SuperSpecError(f"bad parameters in {name!r}") from None
    canon = f"{letter}({','.join(str(x) for x in nums)})"
    if letter == "A" and len(nums) == 2:
        mm, nn = nums
        if mm < 0 or nn < 0 or mm + nn < 1:
            raise SuperSpecError(f"{canon}: need m, n >= 0 and m + n >= 1")
        parts = [_st("A", r) for r in (mm, nn) if r >= 1]
        return SuperAlgebraSpec(canon, _with_signs(parts), True)
    if letter == "C" and len(nums) == 1:
        if nums[0] < 2:
            raise SuperSpecError(f"{canon}: need n >= 2")
        return SuperAlgebraSpec(canon, _with_signs([_st("C", nums[0])]), True)
    if letter == "B" and len(nums) == 2:
        mm, nn = nums
        if mm < 0 or nn < 1:
            raise SuperSpecError(f"{canon}: need m >= 0, n >= 1")
        parts = ([_st("B", mm)] if mm else []) + [_st("C", nn)]
        return SuperAlgebraSpec(canon, _with_signs(parts), False)
    if letter == "D" and len(nums) == 2:
        mm, nn = nums
        if mm < 2 or nn < 1:
            raise SuperSpecError(f"{canon}: need m >= 2, n >= 1")
        return SuperAlgebraSpec(canon, _with_signs([_st("D", mm), _st("C", nn)]), False)
    if letter == "F" and nums == [4]:
        return SuperAlgebraSpec("F(4)", _with_signs([_st("B", 3), _st("A", 1)]), False)
    if letter == "G" and nums == [3]:
        return SuperAlgebraSpec("G(3)", _with_signs([_st("G", 2), _st("A", 1)]), False)
    raise SuperSpecError(f"unknown superalgebra {name!r}")


def normalize_form(spec: SuperAlgebraSpec) -> list[RootSystem]:
    return [c.rs for c in spec.components()]


def string_step(comp: Component, lam: AffineWeight, gamma: AffineRealRoot,
                total_rank: int | None = None) -> AffineWeight | None:
    """If lam(gamma^vee) > 0, lam - gamma must also be a weight."""
    if not comp.rs.is_root(gamma.alpha):
        raise SuperSpecError(f"{gamma.alpha} is not a root of {comp.rs.type}")
    if comp.coroot_value(lam, gamma) > 0:
        n = total_rank if total_rank is not None else len(lam.finite)
        return lam - comp.root_weight(gamma, n)
    return None


# -- Delta(lambda) -----------------------------------------------------------


def _second(spec: SuperAlgebraSpec) -> Component:
    comps = spec.components()
    if len(comps) < 2:
        raise HypothesisError(
            f"{spec.name} has one simple even component; the obstruction needs two "
            "(single-component algebras fall under the highest-weight classification instead)")
    return comps[1]


def delta_lambda(spec: SuperAlgebraSpec, lam: AffineWeight,
                 include_depth0: bool = False) -> frozenset:
    """Negative real roots gamma of the second affinized component with lam(gamma^vee) <= 0.

    gamma = alpha - n delta (n > 0) always; with include_depth0 also the
    negative finite roots (n = 0).
    """
    if lam.level <= 0:
        raise HypothesisError("Delta(lambda) is finite only at positive level")
    comp = _second(spec)
    out = set()
    for a in sorted(comp.rs.roots):
        n = 1
        while comp.coroot_value(lam, AffineRealRoot(a, -n)) <= 0:
            out.add(AffineRealRoot(a, -n))
            n += 1
        if include_depth0 and not all(x >= 0 for x in a):
            if comp.coroot_value(lam, AffineRealRoot(a, 0)) <= 0:
                out.add(AffineRealRoot(a, 0))
    return frozenset(out)


def delta_lambda_bound(spec: SuperAlgebraSpec, lam: AffineWeight,
                       include_depth0: bool = False) -> int:
    """|Delta(lambda)| in closed form.

    lam((alpha - n delta)^vee) = c + n k lam(K) with c = lam(alpha^vee) and
    k = -2/(alpha, alpha) > 0, so the count per alpha is max(0, floor(-c/(k lam(K)))).
    """
    if lam.level <= 0:
        raise HypothesisError("Delta(lambda) is finite only at positive level")
    comp = _second(spec)
    total = 0
    for a in comp.rs.roots:
        c = coroot(comp.rs, a)(comp.restrict(lam))
        k = Fraction(-2) / comp.rs.root_length2(a)
        total += max(0, (-c / (k * lam.level)).__floor__())
        if include_depth0 and not all(x >= 0 for x in a) and c <= 0:
            total += 1
    return total


def threshold_r(delta_set: Iterable[AffineRealRoot]) -> int:
    """Least r >= 1 with alpha - s delta outside Delta(lambda) for all s >= r."""
    return 1 + max((-g.n for g in delta_set if g.n < 0), default=0)


# -- support candidates and integrability rules --------------------------------


@dataclass(frozen=True)
class SupportCandidate:
    """A finite weight set claimed as P(V), with the window -depth <= d <= 0."""

    spec: SuperAlgebraSpec
    level: int
    weights: frozenset
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "weights", frozenset(self.weights))
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        n = self.spec.total_rank
        for w in self.weights:
            if len(w.finite) != n:
                raise ValueError(f"{w} has {len(w.finite)} finite coordinates, expected {n}")
            if w.level != self.level:
                raise ValueError(f"{w} is not at level {self.level}")

    def in_window(self, w: AffineWeight) -> bool:
        return -self.depth <= w.d <= 0

    def sorted_weights(self) -> list:
        return sorted(self.weights, key=AffineWeight.sort_key)

    def is_trivial(self) -> bool:
        return not self.weights or self.weights == {self.spec.zero_weight(self.level)}


@dataclass(frozen=True)
class Violation:
    kind: Literal["string", "odd-ladder"]
    weight: AffineWeight
    component: int | None = None
    root: AffineRealRoot | None = None
    missing: AffineWeight | None = None


def _string_moves(spec, comps, w: AffineWeight, depth: int):
    """(component index, gamma, w - gamma) for every string conclusion landing in the window."""
    n_tot = spec.total_rank
    lo, hi = int(w.d), int(w.d) + depth
    dl = spec.delta()
    for ci, comp in enumerate(comps):
        part = comp.restrict(w)
        for a in sorted(comp.rs.roots):
            c = coroot(comp.rs, a)(part)
            k = 2 * w.level / comp.rs.root_length2(a)
            base = w - _embedded(comp, a, n_tot)
            for n in range(lo, hi + 1):
                if c + n * k > 0:
                    yield ci, AffineRealRoot(a, n), base - dl * n


def integrable_support_rules(spec: SuperAlgebraSpec, S: SupportCandidate) -> list[Violation]:
    """String closure of both even components inside the window, and odd-ladder termination.

    The odd-ladder rule is a surrogate for finite generation under the odd
    part: each delta ladder w + m delta (m >= 1) must leave the support
    within ``depth`` steps.
    """
    comps = spec.components()
    out = []
    for w in S.sorted_weights():
        for ci, g, target in _string_moves(spec, comps, w, S.depth):
            if S.in_window(target) and target not in S.weights:
                out.append(Violation("string", w, ci, g, target))
    dl = spec.delta()
    for w in S.sorted_weights():
        if S.depth >= 1 and all(w + dl * m in S.weights for m in range(1, S.depth + 1)):
            out.append(Violation("odd-ladder", w, missing=None))
    return out


def string_closure(spec: SuperAlgebraSpec, seeds: Iterable[AffineWeight], level: int,
                   depth: int, max_size: int = 50000) -> SupportCandidate:
    """Smallest window-truncated set containing the seeds and closed under string steps."""
    comps = spec.components()
    seen = {w for w in seeds if -depth <= w.d <= 0}
    stack = list(seen)
    while stack:
        w = stack.pop()
        for _, _, t in _string_moves(spec, comps, w, depth):
            if -depth <= t.d <= 0 and t not in seen:
                seen.add(t)
                stack.append(t)
                if len(seen) > max_size:
                    raise RuntimeError("string closure exceeded max_size")
    return SupportCandidate(spec, level, frozenset(seen), depth)


# -- obstruction engine -----------------------------------------------------------

Rule = Literal["lemma2.5", "subclaim1", "subclaim2", "subclaim3", "heisenberg", "gap1.7"]


@dataclass(frozen=True)
class Step:
    rule: str
    premises: tuple
    conclusion: object  # AffineWeight | "contradiction" | "holds" | "consistent-at-depth"
    root: AffineRealRoot | None = None
    component: int | None = None
    value: Fraction | None = None
    forbidden: tuple = ()
    note: str = ""


@dataclass
class ObstructionTrace:
    spec: str
    level: int
    depth: int
    mode: str
    lam: AffineWeight | None = None
    delta_lambda: tuple = ()
    r: int | None = None
    p: int | None = None
    steps: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.steps:
            return "consistent-at-depth"
        last = self.steps[-1].conclusion
        return last if isinstance(last, str) else "consistent-at-depth"


class _Engine:
    def __init__(self, spec: SuperAlgebraSpec, S: SupportCandidate, mode: str):
        self.spec = spec
        self.S = S
        self.W = S.weights
        self.comp = _second(spec)
        self.ci = 1
        self.n_tot = spec.total_rank
        self.dl = spec.delta()
        self.pos = [a for a in self.comp.rs.positive_roots]
        self.min_d = min((w.d for w in self.W), default=Fraction(0))
        self.max_d = max((w.d for w in self.W), default=Fraction(0))
        self.trace = ObstructionTrace(spec.name, S.level, S.depth, mode)
        self.mode = mode

    def emb(self, a, n=0) -> AffineWeight:
        return self.comp.root_weight(AffineRealRoot(a, n), self.n_tot)

    def step(self, *args, **kw):
        self.trace.steps.append(Step(*args, **kw))

    def string_rule(self, premise: AffineWeight, gamma: AffineRealRoot, label: str, why: str) -> bool:
        """Apply the sl2-string rule; True if its conclusion is missing from S."""
        val = self.comp.coroot_value(premise, gamma)
        assert val > 0
        concl = premise - self.comp.root_weight(gamma, self.n_tot)
        self.step("lemma2.5", (premise,), concl, gamma, self.ci, val)
        if concl not in self.W:
            self.step(label, (concl,), "contradiction", note=why)
            return True
        return False

    def run(self) -> ObstructionTrace:
        W, dl = self.W, self.dl
        # (i) a weight with nothing below it along positive roots of the second component
        lam = next((w for w in self.S.sorted_weights()
                    if all(w - self.emb(a) not in W for a in self.pos)), None)
        if lam is None:
            raise HypothesisError("no weight of S is lowest along the second component")
        self.trace.lam = lam
        self.step("gap1.7", (), lam, note="lam - alpha is outside S for every positive alpha of the second component")
        for a in self.pos:
            g = AffineRealRoot(a, 0)
            if self.comp.coroot_value(lam, g) > 0:
                if self.string_rule(lam, g, "gap1.7", "lam - alpha was excluded by the choice of lam"):
                    return self.trace
        # (ii) Delta(lambda) and r
        dset = delta_lambda(self.spec, lam)
        r = threshold_r(dset)
        self.trace.delta_lambda = tuple(sorted(dset, key=lambda g: (g.n, g.alpha)))
        self.trace.r = r
        # (iii) subclaim 1: lam - s delta outside S for s >= r
        s_hi = int(lam.d - self.min_d)
        a0 = self.pos[-1]
        for s in range(r, s_hi + 1):
            w = lam - dl * s
            if w in W:
                self.string_rule(w, AffineRealRoot(a0, -s), "subclaim1",
                           "lam - alpha was excluded by the choice of lam")
                return self.trace
        self.step("subclaim1", (lam,), "holds",
                  forbidden=tuple(lam - dl * s for s in range(r, s_hi + 1)))
        p = max(s for s in range(0, s_hi + 1) if lam - dl * s in W)
        self.trace.p = p
        # subclaim 2: lam - alpha - (m + p) delta outside S for m > 0
        forb = []
        for m in range(1, int(lam.d - p - self.min_d) + 1):
            for a in self.pos:
                w = lam - self.emb(a) - dl * (m + p)
                if w in W:
                    self.string_rule(w, AffineRealRoot(tuple(-x for x in a), 0), "subclaim2",
                               "lam - (m + p) delta was excluded by the choice of p")
                    return self.trace
                forb.append(w)
        self.step("subclaim2", (lam,), "holds", forbidden=tuple(forb))
        # subclaim 3: lam + alpha - (m + p + 1) delta outside S for m >= r
        forb = []
        for m in range(r, int(lam.d - p - 1 - self.min_d) + 1):
            for a in self.pos:
                w = lam + self.emb(a) - dl * (m + p + 1)
                if w in W:
                    self.string_rule(w, AffineRealRoot(a, -m), "subclaim3",
                               "lam - (p + 1) delta was excluded by the choice of p")
                    return self.trace
                forb.append(w)
        self.step("subclaim3", (lam,), "holds", forbidden=tuple(forb))
        # (iv) descend to a weight killed by every x_alpha(n), n < 0, alpha in Delta_2 + {0}
        low = lam - dl * p
        while True:
            nxt = next((w for w in self.S.sorted_weights()
                        if w.d < low.d and self._is_lowering(w - low)), None)
            if nxt is None:
                break
            low = nxt
        # (v) Heisenberg: low + m delta is a weight for every m > 0
        m = 1
        while low + dl * m in W:
            m += 1
        target = low + dl * m
        if self.mode == "window" and not self.S.in_window(target):
            self.step("heisenberg", (low,), "consistent-at-depth",
                      note="every ladder weight inside the window is present")
            return self.trace
        self.step("heisenberg", (low,), target,
                  note="h(n) v != 0 for n > 0 on a vector killed by the negative modes")
        self.step("heisenberg", (target,), "contradiction", note="ladder weight missing from S")
        return self.trace

    def _is_lowering(self, x: AffineWeight) -> bool:
        """x = alpha + n delta with n < 0 and alpha a root of the second component or 0."""
        if x.level != 0 or x.d >= 0 or x.d.denominator != 1:
            return False
        off, k = self.comp.offset, self.comp.rank
        if any(v for i, v in enumerate(x.finite) if not off <= i < off + k):
            return False
        part = x.finite[off:off + k]
        if not any(part):
            return True
        c = self.comp.rs.weight_to_root(part)
        return all(v.denominator == 1 for v in c) and self.comp.rs.is_root(tuple(int(v) for v in c))


def obstruction_run(spec: SuperAlgebraSpec, S: SupportCandidate,
                    mode: Literal["finite", "window"] = "finite") -> ObstructionTrace:
    """Replay the non-existence argument on a candidate weight set.

    ``mode="finite"`` treats S as the complete (finite) weight set, so the
    Heisenberg ladder always leaves S.  ``mode="window"`` only accepts
    conclusions that land inside the depth window and may end
    ``consistent-at-depth``.
    """
    if S.level <= 0:
        raise HypothesisError(f"level must be > 0 (got {S.level})")
    _second(spec)
    if not S.weights:
        tr = ObstructionTrace(spec.name, S.level, S.depth, mode)
        tr.steps.append(Step("gap1.7", (), "consistent-at-depth", note="empty support"))
        return tr
    return _Engine(spec, S, mode).run()
