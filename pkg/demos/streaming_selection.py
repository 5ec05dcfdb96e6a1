"""Walkthrough: streaming k-th order statistics and rank schedules.

The tracker maintains a growing multiset with select-by-rank; a rank
schedule is a rule n -> k_n with 1 <= k_n <= n whose ratio k_n/n converges
to 0 (lower tail) or 1 (upper tail).
"""

import numpy as np

from ergostat import OrderStatTracker, RankSchedule

rng = np.random.default_rng(0)

tracker = OrderStatTracker()
for x in (3.0, 1.0, 2.0, 1.0):
    tracker.insert(x)
print("size:", tracker.size)
print("select(1..4):", [tracker.select(k) for k in range(1, 5)])  # ties counted

# Bulk feeding + running median of a growing sample
tracker.clear()
for chunk in range(10):
    tracker.extend(rng.normal(size=1000))
    n = tracker.size
    print(f"n={n:6d}  median={tracker.select(n // 2 + 1):+.4f}")

# Four schedule kinds: fixed ranks at either tail, and intermediate
# power-law ranks whose distance to both tails grows.
schedules = {
    "minimum (k=1)": RankSchedule.bottom_const(1),
    "maximum (j=1)": RankSchedule.top_const(1),
    "lower sqrt": RankSchedule.power_low(0.5),
    "upper sqrt": RankSchedule.power_high(0.5),
}
print(f"\n{'n':>10} " + " ".join(f"{name:>14}" for name in schedules))
for n in (10, 100, 10_000, 1_000_000):
    row = " ".join(f"{s.rank_at(n):>14d}" for s in schedules.values())
    print(f"{n:>10d} {row}")

for name, s in schedules.items():
    n = 10**6
    print(f"{name}: k_n/n at n=1e6 -> {s.rank_at(n) / n:.4f} (lam={s.lam})")
