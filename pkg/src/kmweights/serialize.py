"""JSON encoding of exact rationals and weights, and weight-expression parsing."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

FORMAT_VERSION = "kmweights/1"


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


def parse_q(s: Any) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("not an exact rational", s) from None
    raise ParseError(f"expected a rational string, got {type(s).__name__}")


def weight_to_json(w) -> dict:
    return {"finite": [q(x) for x in w.finite], "d": q(w.d), "level": q(w.level)}


def weight_from_json(obj: dict):
    from .affine import AffineWeight
    try:
        return AffineWeight(tuple(parse_q(x) for x in obj["finite"]),
                            parse_q(obj.get("d", "0")), parse_q(obj.get("level", "0")))
    except (KeyError, TypeError):
        raise ParseError(f"malformed affine weight {obj!r}") from None


def format_weight(w) -> str:
    parts = []
    for i, x in enumerate(w.finite, start=1):
        if x:
            parts.append(_term(x, f"w{i}"))
    if w.level:
        parts.append(_term(w.level, "L0"))
    if w.d:
        parts.append(_term(w.d, "d"))
    if not parts:
        return "0"
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def _term(c: Fraction, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return f"-{sym}"
    return f"{c}{sym}" if c.denominator == 1 else f"({c}){sym}"


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])\s*)?(?:(?P<coef>\d+(?:/\d+)?)\s*\*?)?\s*"
                    r"(?P<sym>Λ0|L0|Lambda0|ω\d+|w\d+|omega\d+|δ|delta|d|0)\s*")


def parse_weight_expr(text: str, rank: int):
    """Parse expressions such as ``"Λ0 + ω1 - 2δ"`` or ``"2L0+w1-d"``."""
    from .affine import AffineWeight
    fin = [Fraction(0)] * rank
    d = Fraction(0)
    level = Fraction(0)
    pos = 0
    first = True
    s = text.strip()
    if not s:
        raise ParseError("empty weight expression", text, 0)
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        if not first and m.group("sign") is None:
            raise ParseError("expected '+' or '-'", text, m.start())
        first = False
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        sym = m.group("sym")
        if sym in ("Λ0", "L0", "Lambda0"):
            level += c
        elif sym in ("δ", "delta", "d"):
            d += c
        elif sym == "0":
            pass
        else:
            i = int(re.sub(r"\D", "", sym))
            if not 1 <= i <= rank:
                raise ParseError(f"fundamental weight index {i} out of range 1..{rank}",
                                 text, m.start("sym"))
            fin[i - 1] += c
        pos = m.end()
    return AffineWeight(tuple(fin), d, level)
