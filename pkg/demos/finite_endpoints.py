"""Walkthrough: conditional support endpoints on a finite probability space.

The conditional left endpoint of a random variable X given a sigma-field is
the almost-surely largest measurable lower bound of X. On a finite space a
sigma-field is an atom partition and the endpoint is computed exactly:
per positive-mass atom, the minimum of X over the atom's supported outcomes.
"""

import numpy as np

from ergostat import (
    FiniteSpace,
    Partition,
    TableRV,
    brute_force_conditional_left_endpoint,
    conditional_left_endpoint,
    conditional_probability,
    conditional_right_endpoint,
    essential_supremum,
    unconditional_endpoints,
)

# A four-outcome space, uniform masses, and the sigma-field generated by
# the two-atom partition {w0, w1} | {w2, w3}.
space = FiniteSpace((0.25, 0.25, 0.25, 0.25))
coarse = Partition(((0, 1), (2, 3)))
x = TableRV((1.0, 2.0, 3.0, 4.0))

left = conditional_left_endpoint(space, x, coarse)
right = conditional_right_endpoint(space, x, coarse)
print("x:                ", x.values)
print("left endpoint:    ", left.values)   # (1, 1, 3, 3)
print("right endpoint:   ", right.values)  # (2, 2, 4, 4)

# The trivial sigma-field recovers the unconditional support endpoints,
# and the singleton partition reproduces the variable itself.
print("trivial:   ", conditional_left_endpoint(space, x, Partition.trivial(4)).values)
print("singletons:", conditional_left_endpoint(space, x, Partition.singletons(4)).values)
print("unconditional:", unconditional_endpoints(space, x))

# The brute-force oracle searches the whole family of dominated
# partition-measurable candidates instead of taking per-atom minima.
oracle = brute_force_conditional_left_endpoint(space, x, coarse)
print("oracle agrees:", oracle.values == left.values)

# Conditional probabilities are per-atom mass ratios.
print("P({w0} | partition):", conditional_probability(space, {0}, coarse).values)

# Essential supremum of a finite family = pointwise maximum.
family = [TableRV((0.0, 1.0, 0.0, 1.0)), TableRV((1.0, 0.0, 1.0, 0.0))]
print("essential supremum:", essential_supremum(space, family).values)

# Zero-mass outcomes carry flagged placeholders: results are only
# determined almost surely.
degenerate = FiniteSpace((0.5, 0.5, 0.0, 0.0))
flagged = conditional_left_endpoint(degenerate, x, coarse)
print("zero-mass atom:", flagged.values, "flagged:", sorted(flagged.flagged))

# Monotone increasing limits do NOT commute with the left endpoint: on a
# 100-point grid modeling [0, 1], the indicator of [1/n, 1] always has
# endpoint 0 under the trivial sigma-field, yet its pointwise limit is the
# constant 1, whose endpoint is 1.
n_points = 100
grid_space = FiniteSpace((1.0 / n_points,) * n_points)
trivial = Partition.trivial(n_points)
grid = np.arange(n_points) / n_points
for n in (2, 10, 100):
    indicator = TableRV(tuple((grid >= 1.0 / n).astype(float)))
    v = conditional_left_endpoint(grid_space, indicator, trivial).values[0]
    print(f"left endpoint of indicator [1/{n}, 1]: {v}")
print("left endpoint of the limit (constant 1):",
      conditional_left_endpoint(grid_space, TableRV((1.0,) * n_points), trivial).values[0])
