from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from kmweights.affine import (
    AffineRealRoot,
    AffineWeight,
    NonIntegralLevelError,
    affine_coroot,
    affine_expansion,
    affine_leq,
    compose,
    coset_of,
    coset_representatives,
    decompose,
    delta,
    finite_leq0,
    fundamental,
    is_dominant,
    lambda0,
    minimal_representative,
    minimal_weight_table,
    simple_root,
)
from kmweights.rootsys import RootSystemError, build_root_system, coroot, types_up_to_rank


def test_decompose_examples(A1):
    w = fundamental(A1, 1) + delta(A1) * 3 + lambda0(A1) * 2
    assert decompose(w) == ((1,), 3, 2)
    assert decompose(lambda0(A1)) == ((0,), 0, 1)
    assert decompose(delta(A1)) == ((0,), 1, 0)


def test_affine_coroot_examples():
    a2 = build_root_system("A2")
    beta = a2.highest_root
    assert affine_coroot(a2, AffineRealRoot((1, 0), 0)).k_coeff == 0
    assert affine_coroot(a2, AffineRealRoot(beta, 1)).k_coeff == 1
    neg = build_root_system("C2", -1)
    g = affine_coroot(neg, AffineRealRoot(neg.highest_root, 1))
    assert g.k_coeff == -1
    assert g.finite_part == coroot(neg, neg.highest_root)


def test_dominance_examples(A1):
    L0, d = lambda0(A1), delta(A1)
    assert is_dominant(A1, L0)
    assert is_dominant(A1, L0 - d)
    assert not is_dominant(A1, fundamental(A1, 1))


def test_dominance_rejects_fractional_level(A1):
    with pytest.raises(NonIntegralLevelError):
        is_dominant(A1, AffineWeight((0,), 0, Fraction(1, 2)))


def test_dominance_needs_positive_form():
    with pytest.raises(RootSystemError):
        is_dominant(build_root_system("A1", -1), AffineWeight((0,), 0, 1))


def test_order_examples(A1):
    L0, d = lambda0(A1), delta(A1)
    assert affine_leq(A1, L0 - d, L0)
    assert affine_expansion(A1, d) == (1, 1)
    assert affine_leq(A1, L0, L0)
    assert not affine_leq(A1, L0 + simple_root(A1, 1), L0)


def test_finite_order_examples():
    a1, a2 = build_root_system("A1"), build_root_system("A2")
    assert finite_leq0(a1, (-1,), (1,))
    assert not finite_leq0(a2, (0, 0), (1, 0))
    assert finite_leq0(a2, (1, 0), (1, 0))


def test_alpha0_is_delta_minus_beta():
    for name in ["A1", "A3", "B3", "G2", "F4"]:
        rs = build_root_system(name)
        a0 = simple_root(rs, 0)
        assert affine_expansion(rs, a0) == (1,) + (0,) * rs.rank
        assert a0 + AffineWeight(rs.root_to_weight(rs.highest_root)) == delta(rs)


def test_coset_examples():
    a1, a2 = build_root_system("A1"), build_root_system("A2")
    assert coset_of(a1, (1,)) == coset_of(a1, (3,))
    assert coset_of(a1, (0,)) != coset_of(a1, (1,))
    assert coset_of(a2, (1, 0)) != coset_of(a2, (0, 1))
    assert minimal_representative(a1, coset_of(a1, (0,))) == (0,)
    assert minimal_representative(a1, coset_of(a1, (1,))) == (1,)
    assert minimal_representative(a2, coset_of(a2, (1, 0))) == (1, 0)


def test_minimal_tables():
    a1, a2, e8 = (build_root_system(n) for n in ("A1", "A2", "E8"))
    ok, rows = minimal_weight_table(a1)
    assert ok and [(lam, v) for _, lam, v in rows] == [((0,), 0), ((1,), 1)]
    ok, rows = minimal_weight_table(a2)
    assert ok and sorted(v for _, _, v in rows) == [0, 1, 1]
    ok, rows = minimal_weight_table(e8)
    assert ok and [(lam, v) for _, lam, v in rows] == [((0,) * 8, 0)]


def test_coset_of_wrong_type(A1, A2):
    with pytest.raises(ValueError):
        minimal_representative(A1, coset_of(A2, (1, 0)))


# -- independent oracles --------------------------------------------------------


def _dominant_box(rs, height):
    for lab in product(range(height + 1), repeat=rs.rank):
        if sum(lab) <= height:
            yield tuple(Fraction(x) for x in lab)


def _minimal_by_search(rs, height):
    """Per coset (keyed by fractional root coordinates), the <=_0-minimal
    dominant weights among those with label sum <= height."""
    classes = {}
    for w in _dominant_box(rs, height):
        key = tuple(x - (x.numerator // x.denominator) for x in rs.weight_to_root(w))
        classes.setdefault(key, []).append(w)
    out = {}
    for key, ws in classes.items():
        mins = [w for w in ws if not any(v != w and finite_leq0(rs, v, w) for v in ws)]
        out[key] = mins
    return out


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"])
def test_minimal_matches_height_doubling_search(name):
    rs = build_root_system(name)
    h = 2
    found = _minimal_by_search(rs, h)
    while True:
        bigger = _minimal_by_search(rs, 2 * h)
        if bigger == found and all(len(v) == 1 for v in found.values()):
            break
        found, h = bigger, 2 * h
        assert h <= 16
    expected = sorted(v[0] for v in found.values())
    got = sorted(minimal_representative(rs, c) for c in coset_representatives(rs))
    assert got == expected


@pytest.mark.parametrize("t", types_up_to_rank(5), ids=str)
def test_coset_count_is_determinant(t):
    rs = build_root_system(t)
    assert len(coset_representatives(rs)) == rs.coset_index


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2", "A3", "B2", "C3", "D4", "G2"]), st.data())
def test_coset_separation_matches_root_integrality(name, data):
    rs = build_root_system(name)
    draw = lambda: tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)))
    u, v = draw(), draw()
    diff = rs.weight_to_root([a - b for a, b in zip(u, v)])
    same = all(x.denominator == 1 for x in diff)
    assert (coset_of(rs, u) == coset_of(rs, v)) == same


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-3, 3), st.integers(0, 3))
def test_dominance_agrees_with_coroot_values(fin, d, level):
    rs = build_root_system("A2")
    w = compose(fin, d, level)
    expected = all(x >= 0 for x in fin) and level - fin[0] - fin[1] >= 0
    assert is_dominant(rs, w) == expected
