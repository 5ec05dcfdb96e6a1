"""Randomized verification suite for the finite-space endpoint calculus.

Generates finite spaces (with zero-mass outcomes and zero-mass atoms mixed
in), random partitions, and integer-valued tables, then checks every
algebraic identity the conditional endpoints must satisfy, plus exact
agreement between the fast per-atom path and the brute-force oracle.
Integer values keep all arithmetic exact, so every check is an equality,
not a tolerance.

The checks call the endpoint operations through the module object so a
deliberately broken implementation injected for testing (or by a cautious
user) is picked up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import finite_probability as fp
from .extended import NEG_INF
from .finite_probability import FiniteSpace, Partition, TableRV


@dataclass(frozen=True)
class Violation:
    prop: str
    detail: str
    instance: dict


@dataclass(frozen=True)
class SuiteResult:
    checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def random_space(rng: np.random.Generator, max_outcomes: int) -> FiniteSpace:
    n = int(rng.integers(1, max_outcomes + 1))
    w = rng.random(n) + 0.05
    if n >= 2 and rng.random() < 0.35:
        # zero out a proper subset so zero-mass outcomes appear regularly
        k = int(rng.integers(1, n))
        idx = rng.choice(n, size=k, replace=False)
        w[idx] = 0.0
    w = w / w.sum()
    return FiniteSpace(tuple(float(p) for p in w))


def random_partition(rng: np.random.Generator, n: int) -> Partition:
    style = rng.random()
    if style < 0.15:
        return Partition.trivial(n)
    if style < 0.30:
        return Partition.singletons(n)
    n_atoms = int(rng.integers(1, n + 1))
    owner = rng.integers(0, n_atoms, size=n)
    # guarantee non-empty atoms by seeding one outcome per atom
    order = rng.permutation(n)
    for j in range(min(n_atoms, n)):
        owner[order[j]] = j
    atoms: dict[int, list[int]] = {}
    for i, j in enumerate(owner):
        atoms.setdefault(int(j), []).append(i)
    return Partition(tuple(tuple(a) for a in atoms.values()))


def random_int_rv(rng: np.random.Generator, n: int, lo: int = -5, hi: int = 5) -> TableRV:
    return TableRV(tuple(float(v) for v in rng.integers(lo, hi + 1, size=n)))


def random_measurable_rv(
    rng: np.random.Generator, part: Partition, n: int, nonneg: bool = False
) -> TableRV:
    lo = 0 if nonneg else -4
    per_atom = {j: float(rng.integers(lo, 5)) for j in range(len(part.atoms))}
    values = [0.0] * n
    for j, atom in enumerate(part.atoms):
        for i in atom:
            values[i] = per_atom[j]
    return TableRV(tuple(values))


def independent_instance(
    rng: np.random.Generator, max_outcomes: int
) -> tuple[FiniteSpace, Partition, TableRV]:
    """Product-structured instance: the rv's conditional law is the same on
    every atom, so it is independent of the partition by construction."""
    k = int(rng.integers(1, 4))
    m = int(rng.integers(1, max(2, max_outcomes // k) + 1))
    m = min(m, max_outcomes // k)
    m = max(m, 1)
    atom_mass = rng.random(k) + 0.1
    atom_mass = atom_mass / atom_mass.sum()
    value_prob = rng.random(m) + 0.1
    value_prob = value_prob / value_prob.sum()
    values_pool = rng.choice(np.arange(-6, 7), size=m, replace=False)
    probs: list[float] = []
    values: list[float] = []
    atoms: list[tuple[int, ...]] = []
    idx = 0
    for j in range(k):
        atom = []
        for t in range(m):
            probs.append(float(atom_mass[j] * value_prob[t]))
            values.append(float(values_pool[t]))
            atom.append(idx)
            idx += 1
        atoms.append(tuple(atom))
    total = sum(probs)
    probs = [p / total for p in probs]
    return FiniteSpace(tuple(probs)), Partition(tuple(atoms)), TableRV(tuple(values))


def _instance_json(space: FiniteSpace, part: Partition, rvs: dict[str, TableRV]) -> dict:
    return fp.space_to_json(space, part, rvs)


def _add(values_a, values_b):
    return TableRV(tuple(a + b for a, b in zip(values_a.values, values_b.values)))


def _mul(values_a, values_b):
    return TableRV(tuple(a * b for a, b in zip(values_a.values, values_b.values)))


def _scale(a: float, rv: TableRV) -> TableRV:
    return TableRV(tuple(a * v for v in rv.values))


def _neg(rv: TableRV) -> TableRV:
    return TableRV(tuple(-v for v in rv.values), rv.flagged)


def check_instance(
    space: FiniteSpace,
    part: Partition,
    x: TableRV,
    rng: np.random.Generator,
) -> list[Violation]:
    """Run every endpoint identity on one instance; exact comparisons only."""
    out: list[Violation] = []
    n = space.size

    def bad(prop: str, detail: str, extra: dict[str, TableRV] | None = None) -> None:
        rvs = {"x": x}
        if extra:
            rvs.update(extra)
        out.append(Violation(prop, detail, _instance_json(space, part, rvs)))

    rep = fp.validate_space(space)
    if not rep.ok:
        bad("valid_space", "; ".join(rep.violations))
        return out

    left = fp.conditional_left_endpoint(space, x, part)
    right = fp.conditional_right_endpoint(space, x, part)

    if not fp.is_measurable(space, left, part):
        bad("left_endpoint_measurable", "left endpoint not constant per atom")
    if not fp.dominated_given(space, x, left, part):
        bad("left_endpoint_dominates", "P(X >= left | partition) != 1 a.s.")

    # fast path must agree with the assignment-enumeration oracle exactly
    oracle = fp.brute_force_conditional_left_endpoint(space, x, part)
    if not (fp.as_equal(space, left, oracle) and left.flagged == oracle.flagged):
        bad(
            "fast_equals_brute_force",
            f"fast {left.values} vs oracle {oracle.values}",
        )

    # reflection identity, dual-routed through the oracle on -x
    oracle_right = _neg(fp.brute_force_conditional_left_endpoint(space, _neg(x), part))
    if not fp.as_equal(space, right, oracle_right):
        bad("reflection_identity", f"right {right.values} vs -left(-x) {oracle_right.values}")

    # measurable variables are their own left endpoint
    y = random_measurable_rv(rng, part, n)
    if not fp.as_equal(space, fp.conditional_left_endpoint(space, y, part), y):
        bad("measurable_fixed_point", "left(y) != y for partition-measurable y", {"y": y})

    # additive shift by a measurable variable
    lhs = fp.conditional_left_endpoint(space, _add(x, y), part)
    rhs = _add(left, y)
    if not fp.as_equal(space, lhs, rhs):
        bad("additive_shift", f"left(x+y) {lhs.values} != left(x)+y {rhs.values}", {"y": y})

    # multiplicative scaling by a non-negative measurable variable
    ynn = random_measurable_rv(rng, part, n, nonneg=True)
    lhs = fp.conditional_left_endpoint(space, _mul(x, ynn), part)
    rhs = _mul(ynn, left)
    if not fp.as_equal(space, lhs, rhs):
        bad(
            "nonneg_scaling",
            f"left(x*y) {lhs.values} != y*left(x) {rhs.values}",
            {"ynn": ynn},
        )

    # constants are fixed points
    a = float(rng.integers(-3, 4))
    const = TableRV((a,) * n)
    if not fp.as_equal(space, fp.conditional_left_endpoint(space, const, part), const):
        bad("constant_fixed_point", f"left({a}) != {a}")

    # non-negative scalar homogeneity
    c = float(rng.integers(0, 4))
    lhs = fp.conditional_left_endpoint(space, _scale(c, x), part)
    rhs = _scale(c, left)
    if not fp.as_equal(space, lhs, rhs):
        bad("scalar_homogeneity", f"left({c}x) {lhs.values} != {c}*left(x) {rhs.values}")

    # monotonicity: x >= x2 a.s. implies left(x) >= left(x2) a.s.
    drop = TableRV(tuple(float(v) for v in rng.integers(0, 4, size=n)))
    x2 = TableRV(tuple(xv - dv for xv, dv in zip(x.values, drop.values)))
    if not fp.as_geq(space, left, fp.conditional_left_endpoint(space, x2, part)):
        bad("monotone_in_rv", "x >= x2 a.s. but left(x) < left(x2) somewhere", {"x2": x2})

    # lower bounds lift: x >= a a.s. implies left(x) >= a a.s.
    gamma0, gamma1 = fp.unconditional_endpoints(space, x)
    for bound in (gamma0, gamma0 - 1.0):
        if not all(left.values[i] >= bound for i in space.support):
            bad("lower_bound_lift", f"x >= {bound} a.s. but left(x) < {bound}")

    # an a.s.-constant left endpoint equals the unconditional left endpoint
    supported = [left.values[i] for i in space.support]
    if supported and all(v == supported[0] for v in supported):
        if supported[0] != gamma0:
            bad("constant_implies_unconditional", f"constant {supported[0]} != {gamma0}")

    # monotone finite chains: x_1 >= ... >= x_m = x, endpoints non-increasing
    m = int(rng.integers(2, 5))
    chain = [x]
    for _ in range(m - 1):
        inc = rng.integers(0, 3, size=n).astype(float)
        for i in space.zero_mass:
            inc[i] = float(rng.integers(-3, 4))  # a.s. ordering only
        chain.append(TableRV(tuple(p + q for p, q in zip(chain[-1].values, inc))))
    chain.reverse()  # now chain[0] >= ... >= chain[-1] = x, a.s.
    lefts = [fp.conditional_left_endpoint(space, xi, part) for xi in chain]
    for k in range(len(lefts) - 1):
        if not fp.as_geq(space, lefts[k], lefts[k + 1]):
            bad("chain_monotone", f"left endpoints increase at step {k}")
            break
    if not fp.as_equal(space, lefts[-1], left):
        bad("chain_terminal", "chain terminal endpoint differs from left(x)")

    # stabilizing dominated pairs stay dominated in the limit
    stab_at = int(rng.integers(1, 4))
    seq_x, seq_q = [], []
    for t in range(stab_at + 2):
        step = max(0, stab_at - t)
        xt = TableRV(tuple(v + step for v in x.values))
        seq_x.append(xt)
        seq_q.append(fp.conditional_left_endpoint(space, xt, part))
    for xt, qt in zip(seq_x, seq_q):
        if not fp.dominated_given(space, xt, qt, part):
            bad("stabilized_closure", "a prefix pair is not dominated")
            break
    else:
        if not fp.dominated_given(space, seq_x[-1], seq_q[-1], part):
            bad("stabilized_closure", "stabilized pair not dominated")

    # essential supremum: fold equality, domination, minimality
    fam = [random_int_rv(rng, n) for _ in range(int(rng.integers(1, 6)))]
    ess = fp.essential_supremum(space, fam)
    fold = fam[0]
    for member in fam[1:]:
        fold = TableRV(tuple(max(p, q) for p, q in zip(fold.values, member.values)))
    if not fp.as_equal(space, ess, fold):
        bad("esssup_fold", "essential supremum differs from pairwise-max fold")
    for member in fam:
        if not all(ess.values[i] >= member.values[i] for i in space.support):
            bad("esssup_dominates", "a family member exceeds the essential supremum a.s.")
            break
    bump = TableRV(
        tuple(
            ess.values[i] + (float(rng.integers(0, 3)) if space.probs[i] > 0 else -9.0)
            for i in range(n)
        )
    )
    if not fp.as_geq(space, bump, ess):
        bad("esssup_minimal", "a dominating rv fails to dominate the essential supremum")

    # conditional probabilities against the direct-ratio oracle
    ev_size = int(rng.integers(0, n + 1))
    event = tuple(int(i) for i in rng.choice(n, size=ev_size, replace=False))
    cp = fp.conditional_probability(space, event, part)
    if not fp.is_measurable(space, cp, part):
        bad("cond_prob_measurable", "conditional probability not partition-measurable")
    ev = frozenset(event)
    for atom in part.atoms:
        pa = sum(space.probs[i] for i in atom)
        if pa == 0.0:
            if not all(i in cp.flagged and cp.values[i] == 0.0 for i in atom):
                bad("cond_prob_zero_atom", "zero-mass atom not flagged with value 0")
            continue
        expect = sum(space.probs[i] for i in atom if i in ev) / pa
        if any(cp.values[i] != expect for i in atom):
            bad("cond_prob_ratio", f"atom {atom}: {expect} expected")

    # a.s. measurability ignores zero-mass outcomes
    if space.zero_mass:
        z = space.zero_mass[0]
        twisted = list(y.values)
        twisted[z] = twisted[z] + 7.0
        if not fp.is_measurable(space, TableRV(tuple(twisted)), part):
            bad("as_measurability", "zero-mass outcome perturbation broke measurability")

    return out


def check_independent_instance(
    space: FiniteSpace, part: Partition, x: TableRV
) -> list[Violation]:
    """For rvs independent of the partition the endpoint is a.s. constant
    and equals the unconditional left endpoint."""
    out: list[Violation] = []
    if not fp.independent_of_partition(space, rv=x, part=part):
        return out  # construction failed factorization; nothing to assert
    left = fp.conditional_left_endpoint(space, x, part)
    gamma0, _ = fp.unconditional_endpoints(space, x)
    supported = [left.values[i] for i in space.support]
    if any(v != gamma0 for v in supported):
        out.append(
            Violation(
                "independent_constant",
                f"left endpoint {supported} != unconditional {gamma0}",
                _instance_json(space, part, {"x": x}),
            )
        )
    return out


def run_finite_suite(
    n_spaces: int, max_outcomes: int, seed: int, stop_on_first: bool = False
) -> SuiteResult:
    if n_spaces <= 0:
        raise ValueError("empty suite")
    if not 1 <= max_outcomes <= 12:
        raise ValueError("max_outcomes must be in [1, 12]")
    rng = np.random.default_rng(seed)
    violations: list[Violation] = []
    for t in range(n_spaces):
        space = random_space(rng, max_outcomes)
        part = random_partition(rng, space.size)
        x = random_int_rv(rng, space.size)
        violations.extend(check_instance(space, part, x, rng))
        if t % 5 == 0:
            ispace, ipart, ix = independent_instance(rng, max_outcomes)
            violations.extend(check_independent_instance(ispace, ipart, ix))
        if violations and stop_on_first:
            break
    return SuiteResult(checked=n_spaces, violations=tuple(violations))


def shrink_instance(violation: Violation) -> Violation:
    """Greedy outcome-dropping shrink that preserves the violation."""
    current = violation
    changed = True
    while changed:
        changed = False
        inst = current.instance
        n = len(inst["probs"])
        if n <= 1:
            break
        for drop in range(n):
            probs = [p for i, p in enumerate(inst["probs"]) if i != drop]
            total = sum(probs)
            if total <= 0:
                continue
            probs = [p / total for p in probs]
            remap = {old: new for new, old in enumerate(i for i in range(n) if i != drop)}
            atoms = tuple(
                tuple(remap[i] for i in atom if i != drop) for atom in inst["atoms"]
            )
            atoms = tuple(a for a in atoms if a)
            rvs = {
                name: [v for i, v in enumerate(vals) if i != drop]
                for name, vals in inst["rvs"].items()
            }
            try:
                space, part, tables = fp.space_from_json(
                    {"probs": probs, "atoms": [list(a) for a in atoms], "rvs": rvs}
                )
                smaller = _recheck(space, part, tables, current.prop)
            except Exception:
                continue
            if smaller is not None:
                current = smaller
                changed = True
                break
    return current


def _recheck(
    space: FiniteSpace, part: Partition, tables: dict[str, TableRV], prop: str
) -> Violation | None:
    rng = np.random.default_rng(0)
    x = tables.get("x")
    if x is None:
        return None
    found = [v for v in check_instance(space, part, x, rng) if v.prop == prop]
    found += [v for v in check_independent_instance(space, part, x) if v.prop == prop]
    return found[0] if found else None
