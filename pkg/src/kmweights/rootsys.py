"""Finite root systems with exact rational data.

Simple roots follow Bourbaki numbering:

    ====  ==============================================================
    type  labelling
    ====  ==============================================================
    A_n   chain 1-2-...-n
    B_n   1-2-...-(n-1)=>n, alpha_n short
    C_n   1-2-...-(n-1)<=n, alpha_n long
    D_n   chain 1-...-(n-2), with n-1 and n both attached to n-2
    E_n   1-3-4-5-6-7-8 chain, 2 attached to 4
    F_4   1-2=>3-4, alpha_1, alpha_2 long
    G_2   alpha_1 short, alpha_2 long; highest root 3a1 + 2a2
    ====  ==============================================================

Weights are tuples of Fractions in the fundamental-weight basis
(``w[i] = w(alpha_i^vee)``); roots are integer tuples in the simple-root
basis.  The Cartan matrix satisfies
``cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``, so a root with
simple coordinates ``c`` has weight coordinates ``c @ cartan``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Weight = tuple  # tuple[Fraction, ...]
Root = tuple  # tuple[int, ...]

SERIES = "ABCDEFG"


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int
    # B1, C1 (both A1) and D2 (A1 x A1) only occur as even parts of superalgebras
    degenerate_ok: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in SERIES or not isinstance(n, int) or n < 1:
            raise RootSystemError(f"invalid type {s}{n}")
        low = {"A": 1, "B": 2, "C": 2, "D": 3}.get(s)
        if low is not None:
            if self.degenerate_ok and ((s in "BC" and n >= 1) or (s == "D" and n >= 2)):
                return
            if n < low:
                raise RootSystemError(f"{s}{n}: rank must be >= {low}")
        elif s == "E" and n not in (6, 7, 8):
            raise RootSystemError(f"E{n}: rank must be 6, 7 or 8")
        elif s == "F" and n != 4:
            raise RootSystemError(f"F{n}: rank must be 4")
        elif s == "G" and n != 2:
            raise RootSystemError(f"G{n}: rank must be 2")

    def __str__(self):
        return f"{self.series}{self.rank}"

    @classmethod
    def parse(cls, text: str, degenerate_ok: bool = False) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse algebra type {text!r}: expected <series><rank>, e.g. A2")
        return cls(m.group(1).upper(), int(m.group(2)), degenerate_ok)


def _gram_long2(t: SimpleType) -> list[list[Fraction]]:
    """Gram matrix of the simple roots with long roots of square length 2."""
    n = t.rank
    g = [[Fraction(0)] * n for _ in range(n)]

    def link(i, j, v):
        g[i - 1][j - 1] = g[j - 1][i - 1] = Fraction(v)

    s = t.series
    if s == "A" or (s in "BC" and n == 1):
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        for i in range(1, n):
            link(i, i + 1, -1)
    elif s == "B":
        for i in range(1, n):
            g[i - 1][i - 1] = Fraction(2)
        g[n - 1][n - 1] = Fraction(1)
        for i in range(1, n):
            link(i, i + 1, -1)
    elif s == "C":
        for i in range(1, n):
            g[i - 1][i - 1] = Fraction(1)
        g[n - 1][n - 1] = Fraction(2)
        for i in range(1, n - 1):
            link(i, i + 1, Fraction(-1, 2))
        link(n - 1, n, -1)
    elif s == "D":
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        if n >= 3:
            for i in range(1, n - 2):
                link(i, i + 1, -1)
            link(n - 2, n - 1, -1)
            link(n - 2, n, -1)
    elif s == "E":
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if j <= n:
                link(i, j, -1)
    elif s == "F":
        for i, v in enumerate([2, 2, 1, 1]):
            g[i][i] = Fraction(v)
        link(1, 2, -1)
        link(2, 3, -1)
        link(3, 4, Fraction(-1, 2))
    elif s == "G":
        g[0][0] = Fraction(2, 3)
        g[1][1] = Fraction(2)
        link(1, 2, -1)
    return g


def solve_left(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


@dataclass(frozen=True)
class Coroot:
    """The functional mu -> 2(mu, alpha)/(alpha, alpha), in the simple-coroot basis."""

    coeffs: tuple

    def __call__(self, weight: Sequence) -> Fraction:
        return sum((Fraction(c) * w for c, w in zip(self.coeffs, weight)), Fraction(0))


@dataclass(frozen=True, eq=False)
class RootSystem:
    type: SimpleType
    form_sign: int = 1

    def __post_init__(self):
        if self.form_sign not in (1, -1):
            raise RootSystemError("form_sign must be +1 or -1")

    def __eq__(self, other):
        return (isinstance(other, RootSystem) and self.type == other.type
                and self.form_sign == other.form_sign)

    def __hash__(self):
        return hash((self.type, self.form_sign))

    def __repr__(self):
        return f"RootSystem({self.type}, form_sign={self.form_sign:+d})"

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def gram(self) -> tuple:
        base = _gram_long2(self.type)
        # long roots are never shorter than the highest root, so base has (beta, beta) = 2
        return tuple(tuple(self.form_sign * x for x in row) for row in base)

    @cached_property
    def cartan(self) -> tuple:
        g = self.gram
        n = self.rank
        c = [[2 * g[i][j] / g[j][j] for j in range(n)] for i in range(n)]
        for row in c:
            for x in row:
                if x.denominator != 1:
                    raise RootSystemError("non-integral Cartan entry")
        return tuple(tuple(int(x) for x in row) for row in c)

    @cached_property
    def cartan_inverse(self) -> tuple:
        return tuple(tuple(row) for row in solve_left(self.cartan))

    @cached_property
    def coset_index(self) -> int:
        return int(determinant(self.cartan))

    # -- conversions -------------------------------------------------------

    def root_to_weight(self, c: Sequence) -> Weight:
        n = self.rank
        return tuple(sum((Fraction(c[j]) * self.cartan[j][i] for j in range(n)), Fraction(0))
                     for i in range(n))

    def weight_to_root(self, w: Sequence) -> tuple:
        """Simple-root coordinates of a weight (rational in general)."""
        n = self.rank
        inv = self.cartan_inverse
        return tuple(sum((Fraction(w[j]) * inv[j][i] for j in range(n)), Fraction(0))
                     for i in range(n))

    def simple_root_weight(self, i: int) -> Weight:
        return tuple(Fraction(x) for x in self.cartan[i])

    def inner(self, lam: Sequence, mu: Sequence) -> Fraction:
        """(lam, mu) for weights given in fundamental coordinates."""
        c = self.weight_to_root(lam)
        g = self.gram
        return sum((c[i] * Fraction(mu[i]) * g[i][i] / 2 for i in range(self.rank)), Fraction(0))

    def root_inner(self, a: Sequence, b: Sequence) -> Fraction:
        g = self.gram
        n = self.rank
        return sum((Fraction(a[i]) * g[i][j] * b[j] for i in range(n) for j in range(n)),
                   Fraction(0))

    # -- roots -------------------------------------------------------------

    @cached_property
    def roots(self) -> frozenset:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        stack = list(simple)
        while stack:
            a = stack.pop()
            for i in range(n):
                p = sum(a[j] * self.cartan[j][i] for j in range(n))
                b = tuple(a[j] - (p if j == i else 0) for j in range(n))
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return frozenset(seen)

    @cached_property
    def positive_roots(self) -> tuple:
        pos = [a for a in self.roots if all(x >= 0 for x in a)]
        return tuple(sorted(pos, key=lambda a: (sum(a), a)))

    def is_root(self, a: Sequence) -> bool:
        return tuple(a) in self.roots

    @cached_property
    def highest_root(self) -> Root:
        return highest_root(self)

    def root_length2(self, a: Sequence) -> Fraction:
        return _length2(self, tuple(a))


def build_root_system(t: SimpleType | str, form_sign: int = 1) -> RootSystem:
    if isinstance(t, str):
        t = SimpleType.parse(t)
    rs = RootSystem(t, form_sign)
    _ = rs.cartan, rs.roots
    return rs


def coroot(rs: RootSystem, alpha: Sequence) -> Coroot:
    return _coroot(rs, tuple(alpha))


@lru_cache(maxsize=None)
def _length2(rs: RootSystem, a: tuple) -> Fraction:
    return rs.root_inner(a, a)


@lru_cache(maxsize=None)
def _coroot(rs: RootSystem, alpha: tuple) -> Coroot:
    if not rs.is_root(alpha):
        raise RootSystemError(f"{alpha} is not a root of {rs.type}")
    a2 = rs.root_length2(alpha)
    g = rs.gram
    return Coroot(tuple(alpha[i] * g[i][i] / a2 for i in range(rs.rank)))


def highest_root(rs: RootSystem) -> Root:
    pos = rs.positive_roots
    top = pos[-1]
    for a in pos:
        if any(x > y for x, y in zip(a, top)):
            # D2 = A1 x A1 has no unique top; take the first factor
            if rs.type.series == "D" and rs.rank == 2:
                return (1, 0)
            raise RootSystemError(f"no unique highest root in {rs.type}")
    return top


def reflect(rs: RootSystem, w: Sequence, i: int) -> Weight:
    k = Fraction(w[i])
    if not k:
        return tuple(w)
    return tuple(Fraction(x) - k * c for x, c in zip(w, rs.cartan[i]))


def weyl_orbit(rs: RootSystem, lam: Sequence) -> frozenset:
    start = tuple(Fraction(x) for x in lam)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for i in range(rs.rank):
            v = reflect(rs, w, i)
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def dominant_conjugate(rs: RootSystem, lam: Sequence) -> Weight:
    w = tuple(Fraction(x) for x in lam)
    while True:
        i = next((j for j, x in enumerate(w) if x < 0), None)
        if i is None:
            return w
        w = reflect(rs, w, i)


def is_dominant(w: Iterable) -> bool:
    return all(x >= 0 for x in w)


def is_integral(w: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in w)


def dual_coxeter(rs: RootSystem) -> int:
    """1 + rho(beta^vee); computed, not tabulated."""
    b = coroot(rs, rs.highest_root)
    return 1 + int(sum(b.coeffs))


ALL_TYPES_UP_TO_8 = (
    [SimpleType("A", n) for n in range(1, 9)]
    + [SimpleType("B", n) for n in range(2, 9)]
    + [SimpleType("C", n) for n in range(2, 9)]
    + [SimpleType("D", n) for n in range(3, 9)]
    + [SimpleType("E", n) for n in (6, 7, 8)]
    + [SimpleType("F", 4), SimpleType("G", 2)]
)


def types_up_to_rank(max_rank: int) -> list[SimpleType]:
    return [t for t in ALL_TYPES_UP_TO_8 if t.rank <= max_rank]
