"""Step-by-step verification of obstruction traces.

Shares no code path with the engine beyond raw root-system data: pairings,
Delta(lambda), r and p are recomputed here from the Gram matrix.
"""
from __future__ import annotations

from fractions import Fraction

from .affine import AffineWeight
from .superaffine import ObstructionTrace, SupportCandidate, SuperAlgebraSpec


def _pair(comp, w: AffineWeight, alpha, n) -> Fraction:
    """w((alpha + n delta)^vee) = 2 (w_bar, alpha)/(alpha, alpha) + 2n w(K)/(alpha, alpha)."""
    g = comp.rs.gram
    k = comp.rank
    part = w.finite[comp.offset:comp.offset + k]
    # (w_bar, alpha_i) = w_i (alpha_i, alpha_i) / 2
    wa = sum((Fraction(alpha[i]) * part[i] * g[i][i] / 2 for i in range(k)), Fraction(0))
    aa = sum((Fraction(alpha[i]) * g[i][j] * alpha[j] for i in range(k) for j in range(k)), Fraction(0))
    return 2 * wa / aa + Fraction(2 * n) * w.level / aa


def _embed(comp, total: int, alpha, n) -> AffineWeight:
    fin = [Fraction(0)] * total
    for i in range(comp.rank):
        fin[comp.offset + i] = sum((Fraction(alpha[j]) * comp.rs.cartan[j][i] for j in range(comp.rank)),
                                   Fraction(0))
    return AffineWeight(tuple(fin), n, 0)


def check_trace(spec: SuperAlgebraSpec, S: SupportCandidate, tr: ObstructionTrace) -> list[str]:
    """Return a list of problems; empty means the trace verifies."""
    errs: list[str] = []
    W = S.weights
    comps = spec.components()
    comp = comps[1]
    total = spec.total_rank
    dl = AffineWeight((0,) * total, 1, 0)
    positives = [a for a in comp.rs.roots if all(x >= 0 for x in a)]
    min_d = min((w.d for w in W), default=Fraction(0))
    known = set(W)
    lam = tr.lam

    if not tr.steps:
        return ["empty trace"]
    if not W:
        return [] if tr.verdict == "consistent-at-depth" else ["empty support must be consistent"]

    if tr.r is not None:
        want = 1
        for a in comp.rs.roots:
            n = 1
            while _pair(comp, lam, a, -n) <= 0:
                want = max(want, n + 1)
                n += 1
        if want != tr.r:
            errs.append(f"r recomputed as {want}, trace says {tr.r}")
    if tr.p is not None:
        s_lo = [s for s in range(0, int(lam.d - min_d) + 1) if lam - dl * s in W]
        if not s_lo or max(s_lo) != tr.p:
            errs.append(f"p recomputed as {max(s_lo) if s_lo else None}, trace says {tr.p}")

    for k, st in enumerate(tr.steps):
        tag = f"step {k} ({st.rule})"
        for prem in st.premises:
            if prem not in known:
                errs.append(f"{tag}: premise {prem} is neither input nor derived")
        if st.rule == "gap1.7" and isinstance(st.conclusion, AffineWeight):
            w = st.conclusion
            if w not in W:
                errs.append(f"{tag}: {w} not in S")
            for a in positives:
                if w - _embed(comp, total, a, 0) in W:
                    errs.append(f"{tag}: {w} - alpha in S for alpha={a}")
            if w != lam:
                errs.append(f"{tag}: selected weight differs from trace header")
        elif st.rule == "lemma2.5":
            (prem,) = st.premises
            g = st.root
            c = comps[st.component]
            v = _pair(c, prem, g.alpha, g.n)
            if v <= 0:
                errs.append(f"{tag}: pairing {v} is not positive")
            if st.value != v:
                errs.append(f"{tag}: recorded pairing {st.value}, recomputed {v}")
            if st.conclusion != prem - _embed(c, total, g.alpha, g.n):
                errs.append(f"{tag}: conclusion is not premise - gamma")
            known.add(st.conclusion)
        elif st.conclusion == "holds":
            if st.rule not in ("subclaim1", "subclaim2", "subclaim3"):
                errs.append(f"{tag}: rule {st.rule} cannot conclude 'holds'")
            expect = _expected_forbidden(st.rule, lam, tr, positives, comp, total, dl, min_d)
            if expect is not None and tuple(expect) != tuple(st.forbidden):
                errs.append(f"{tag}: forbidden list does not match the claimed range")
            for w in st.forbidden:
                if w in W:
                    errs.append(f"{tag}: forbidden weight {w} is in S")
        elif st.rule == "heisenberg" and isinstance(st.conclusion, AffineWeight):
            (low,) = st.premises
            if low not in W:
                errs.append(f"{tag}: {low} not in S")
            for w in W:
                x = w - low
                if x.d < 0 and x.level == 0 and _is_lowering(comp, total, x):
                    errs.append(f"{tag}: {low} is not lowest, {w} lies below it")
                    break
            m = st.conclusion.d - low.d
            if m < 1 or st.conclusion - dl * m != low:
                errs.append(f"{tag}: conclusion is not on the delta ladder above {low}")
            known.add(st.conclusion)
        elif st.conclusion == "contradiction":
            (w,) = st.premises
            if w in W:
                errs.append(f"{tag}: contradiction claimed but {w} is in S")
        elif st.conclusion == "consistent-at-depth":
            if tr.mode != "window":
                errs.append(f"{tag}: 'consistent-at-depth' is only reachable in window mode")
            if st.rule == "heisenberg":
                (low,) = st.premises
                m = 1
                while low + dl * m in W:
                    m += 1
                if S.in_window(low + dl * m):
                    errs.append(f"{tag}: ladder weight {low + dl * m} is missing inside the window")
        if st.conclusion in ("contradiction", "consistent-at-depth") and k != len(tr.steps) - 1:
            errs.append(f"{tag}: terminal conclusion before the last step")
    if tr.steps[-1].conclusion not in ("contradiction", "consistent-at-depth"):
        errs.append("trace does not end in a verdict")
    return errs


def _is_lowering(comp, total, x: AffineWeight) -> bool:
    off, k = comp.offset, comp.rank
    if x.d.denominator != 1:
        return False
    if any(v for i, v in enumerate(x.finite) if not off <= i < off + k):
        return False
    part = x.finite[off:off + k]
    if not any(part):
        return True
    for a in comp.rs.roots:
        if _embed(comp, total, a, 0).finite[off:off + k] == tuple(part):
            return True
    return False


def _expected_forbidden(rule, lam, tr, positives, comp, total, dl, min_d):
    r, p = tr.r, tr.p
    pos = sorted(positives, key=lambda a: (sum(a), a))
    if rule == "subclaim1":
        return [lam - dl * s for s in range(r, int(lam.d - min_d) + 1)]
    if rule == "subclaim2":
        return [lam - _embed(comp, total, a, 0) - dl * (m + p)
                for m in range(1, int(lam.d - p - min_d) + 1) for a in pos]
    if rule == "subclaim3":
        return [lam + _embed(comp, total, a, 0) - dl * (m + p + 1)
                for m in range(r, int(lam.d - p - 1 - min_d) + 1) for a in pos]
    return None
