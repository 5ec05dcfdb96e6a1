"""Extended-real arithmetic and serialization helpers.

Values live in [-inf, +inf] as ordinary Python floats, so the total order
NEG_INF < real < POS_INF comes for free. Arithmetic follows the usual
extended conventions: a +/- inf = +/-inf for finite a, inf + inf = inf,
-inf - inf = -inf, and 0 * (+/-inf) = 0. The last one differs from IEEE
(which yields NaN), hence the helpers below instead of bare operators.
Indeterminate sums (inf + -inf) raise rather than silently produce NaN.
"""

from __future__ import annotations

import math

NEG_INF = float("-inf")
POS_INF = float("inf")


def xadd(a: float, b: float) -> float:
    if math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0):
        raise ValueError("indeterminate sum: inf + -inf")
    return a + b


def xmul(a: float, b: float) -> float:
    # 0 * (+/-inf) = 0 by convention
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def to_json_value(x: float) -> float | str:
    """Extended reals serialize as numbers; infinities as "+inf"/"-inf"."""
    if x == POS_INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return float(x)


def from_json_value(v: object) -> float:
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("+inf", "inf"):
            return POS_INF
        if s == "-inf":
            return NEG_INF
        raise ValueError(f"not an extended real: {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"not an extended real: {v!r}")
    return float(v)


def format_csv_value(x: float) -> str:
    """Shortest round-trip decimal; infinities as the +inf/-inf literals."""
    if x == POS_INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return repr(float(x))
