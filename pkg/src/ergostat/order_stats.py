"""Dynamic k-th order-statistic selection and rank schedules.

The tracker is a growing multiset of reals supporting select-by-rank; it is
the streaming engine the convergence experiments feed one sample at a time
(or in chunks between checkpoints). Ranks are 1-based and count
multiplicity: select(1) is the minimum, select(size) the maximum.

Storage is exact (no sketching): the limit statements under test concern
exact order statistics. The backing container is ``sortedcontainers.SortedList``,
whose indexed access and insertion are logarithmic-with-small-constants; the
test suite pins both the sorted-oracle equivalence and a throughput bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sortedcontainers import SortedList


class OrderStatTracker:
    """Growing multiset of finite reals with logarithmic insert/select."""

    __slots__ = ("_items",)

    def __init__(self) -> None:
        self._items = SortedList()

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    @property
    def size(self) -> int:
        return len(self._items)

    def insert(self, x: float) -> None:
        if not math.isfinite(x):
            raise ValueError(f"only finite values can be inserted, got {x!r}")
        self._items.add(x)

    def extend(self, xs) -> None:
        arr = np.asarray(xs, dtype=float)
        if arr.size and not np.isfinite(arr).all():
            raise ValueError("only finite values can be inserted (NaN/inf present)")
        self._items.update(arr.tolist())

    def select(self, k: int) -> float:
        """k-th smallest counting multiplicity, 1 <= k <= size."""
        if not 1 <= k <= len(self._items):
            raise IndexError(f"rank {k} out of range for size {len(self._items)}")
        return self._items[k - 1]

    def clear(self) -> None:
        self._items.clear()


_KINDS = ("bottom_const", "top_const", "power_low", "power_high")


def _ceil_power(n: int, beta: float) -> int:
    # tiny slack so exact powers (e.g. 100**0.5) do not round up a rank
    return max(1, math.ceil(n**beta - 1e-9))


@dataclass(frozen=True)
class RankSchedule:
    """Rule n -> k_n with 1 <= k_n <= n and k_n/n -> lam in {0, 1}.

    bottom_const(k) and power_low(beta) target the lower tail (lam = 0);
    top_const(j) and power_high(beta) mirror them at the upper tail
    (lam = 1). The power schedules give the intermediate regime:
    min(k_n, n - k_n) -> inf while k_n/n -> lam. Small n are clamped into
    [1, n] rather than rejected; finitely many terms cannot change a limit.
    """

    kind: str
    param: float

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind in ("bottom_const", "top_const"):
            if self.param < 1 or self.param != int(self.param):
                raise ValueError("constant-rank schedules need a positive integer")
        else:
            if not 0.0 < self.param < 1.0:
                raise ValueError("power schedules need beta in (0, 1)")

    @classmethod
    def bottom_const(cls, k: int) -> "RankSchedule":
        return cls("bottom_const", float(k))

    @classmethod
    def top_const(cls, j: int) -> "RankSchedule":
        return cls("top_const", float(j))

    @classmethod
    def power_low(cls, beta: float) -> "RankSchedule":
        return cls("power_low", float(beta))

    @classmethod
    def power_high(cls, beta: float) -> "RankSchedule":
        return cls("power_high", float(beta))

    @property
    def lam(self) -> int:
        return 0 if self.kind in ("bottom_const", "power_low") else 1

    def rank_at(self, n: int) -> int:
        if n < 1:
            raise ValueError("sample size must be >= 1")
        if self.kind == "bottom_const":
            return min(int(self.param), n)
        if self.kind == "top_const":
            return max(1, n - int(self.param) + 1)
        if self.kind == "power_low":
            return min(_ceil_power(n, self.param), n)
        k = n - _ceil_power(n, self.param) + 1
        return min(max(k, 1), n)

    def to_json(self) -> dict:
        if self.kind == "bottom_const":
            return {"kind": self.kind, "k": int(self.param)}
        if self.kind == "top_const":
            return {"kind": self.kind, "j": int(self.param)}
        return {"kind": self.kind, "beta": self.param}

    @classmethod
    def from_json(cls, obj: dict) -> "RankSchedule":
        kind = obj.get("kind")
        if kind == "bottom_const":
            return cls.bottom_const(int(obj["k"]))
        if kind == "top_const":
            return cls.top_const(int(obj["j"]))
        if kind == "power_low":
            return cls.power_low(float(obj["beta"]))
        if kind == "power_high":
            return cls.power_high(float(obj["beta"]))
        raise ValueError(f"unknown schedule kind {kind!r}")
