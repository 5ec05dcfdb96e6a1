import itertools
import math

import numpy as np
import pytest

from ergostat.extended import (
    NEG_INF,
    POS_INF,
    format_csv_value,
    from_json_value,
    to_json_value,
    xadd,
    xmul,
)
from ergostat.finite_probability import (
    FiniteSpace,
    Partition,
    TableRV,
    as_equal,
    brute_force_conditional_left_endpoint,
    conditional_left_endpoint,
    conditional_probability,
    conditional_right_endpoint,
    dominated_given,
    essential_supremum,
    independent_of_partition,
    is_measurable,
    space_from_json,
    space_to_json,
    unconditional_endpoints,
    validate_space,
)


def uniform_space(n):
    return FiniteSpace((1.0 / n,) * n)


# --- extended-real conventions -------------------------------------------------


def test_extended_order_and_arithmetic():
    assert NEG_INF < -1e300 < 0.0 < 1e300 < POS_INF
    assert xadd(3.0, POS_INF) == POS_INF
    assert xadd(3.0, NEG_INF) == NEG_INF
    assert xadd(POS_INF, POS_INF) == POS_INF
    assert xadd(NEG_INF, NEG_INF) == NEG_INF
    assert xmul(0.0, POS_INF) == 0.0
    assert xmul(0.0, NEG_INF) == 0.0
    assert xmul(2.0, POS_INF) == POS_INF
    assert xmul(-2.0, POS_INF) == NEG_INF
    with pytest.raises(ValueError):
        xadd(POS_INF, NEG_INF)


def test_extended_json_and_csv_round_trip():
    assert to_json_value(POS_INF) == "+inf"
    assert to_json_value(NEG_INF) == "-inf"
    assert to_json_value(1.5) == 1.5
    assert from_json_value("+inf") == POS_INF
    assert from_json_value("-inf") == NEG_INF
    assert from_json_value(2) == 2.0
    with pytest.raises(ValueError):
        from_json_value("nope")
    assert format_csv_value(POS_INF) == "+inf"
    assert format_csv_value(0.5) == "0.5"


# --- validation ----------------------------------------------------------------


def test_validate_uniform_ok():
    assert validate_space(FiniteSpace((0.5, 0.5))).ok


def test_validate_mass_deficit():
    rep = validate_space(FiniteSpace((0.5, 0.4)))
    assert not rep.ok
    assert any("sum" in v for v in rep.violations)


def test_validate_zero_mass_flagged_but_ok():
    rep = validate_space(FiniteSpace((1.0, 0.0)))
    assert rep.ok
    assert rep.zero_mass_outcomes == (1,)


def test_validate_negative_mass():
    rep = validate_space(FiniteSpace((1.2, -0.2)))
    assert not rep.ok
    assert any("negative" in v for v in rep.violations)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition(((0, 1), (1, 2))).atom_index(3)  # overlap
    with pytest.raises(ValueError):
        Partition(((0,),)).atom_index(2)  # not exhaustive
    with pytest.raises(ValueError):
        Partition(((0, 5),)).atom_index(2)  # out of range


# --- measurability ---------------------------------------------------------------


def _measurable_oracle(space, rv, part):
    # pairwise enumeration over supported outcomes of each atom
    for atom in part.atoms:
        sup = [i for i in atom if space.probs[i] > 0]
        for i, j in itertools.combinations(sup, 2):
            if rv.values[i] != rv.values[j]:
                return False
    return True


def test_is_measurable_constant_per_atom():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    assert is_measurable(sp, TableRV((7, 7, -1, -1)), part)


def test_is_measurable_nonconstant_atom():
    sp = uniform_space(2)
    part = Partition.trivial(2)
    assert not is_measurable(sp, TableRV((1, 2)), part)


def test_is_measurable_ignores_zero_mass():
    sp = FiniteSpace((0.5, 0.5, 0.0))
    part = Partition.trivial(3)
    rv = TableRV((4, 4, 99))
    assert is_measurable(sp, rv, part)
    assert _measurable_oracle(sp, rv, part)


def test_is_measurable_matches_oracle_randomized():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        probs = rng.random(n)
        probs[rng.random(n) < 0.3] = 0.0
        if probs.sum() == 0:
            probs[0] = 1.0
        probs /= probs.sum()
        sp = FiniteSpace(tuple(probs))
        owner = rng.integers(0, max(1, n // 2), size=n)
        atoms = {}
        for i, j in enumerate(owner):
            atoms.setdefault(int(j), []).append(i)
        part = Partition(tuple(tuple(a) for a in atoms.values()))
        rv = TableRV(tuple(float(v) for v in rng.integers(0, 3, size=n)))
        assert is_measurable(sp, rv, part) == _measurable_oracle(sp, rv, part)


def test_is_measurable_length_mismatch():
    with pytest.raises(ValueError):
        is_measurable(uniform_space(3), TableRV((1, 2)), Partition.trivial(3))


# --- conditional probability ------------------------------------------------------


def test_conditional_probability_direct_ratio():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    cp = conditional_probability(sp, {0}, part)
    assert cp.values == (0.5, 0.5, 0.0, 0.0)


def test_conditional_probability_certainty():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    cp = conditional_probability(sp, range(4), part)
    assert cp.values == (1.0, 1.0, 1.0, 1.0)


def test_conditional_probability_zero_mass_atom():
    sp = FiniteSpace((0.5, 0.5, 0.0, 0.0))
    part = Partition(((0, 1), (2, 3)))
    cp = conditional_probability(sp, {0, 2}, part)
    assert cp.values[2] == 0.0 and cp.values[3] == 0.0
    assert cp.flagged == frozenset({2, 3})


def test_conditional_probability_out_of_range():
    with pytest.raises(IndexError):
        conditional_probability(uniform_space(2), {5}, Partition.trivial(2))


def test_conditional_probability_matches_sum_oracle_randomized():
    rng = np.random.default_rng(11)
    for _ in range(60):
        n = 8
        probs = rng.dirichlet(np.ones(n))
        sp = FiniteSpace(tuple(float(p) for p in probs))
        owner = rng.integers(0, 3, size=n)
        atoms = {}
        for i, j in enumerate(owner):
            atoms.setdefault(int(j), []).append(i)
        part = Partition(tuple(tuple(a) for a in atoms.values()))
        event = set(int(i) for i in rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False))
        cp = conditional_probability(sp, event, part)
        assert is_measurable(sp, cp, part)
        for atom in part.atoms:
            pa = sum(sp.probs[i] for i in atom)
            expected = sum(sp.probs[i] for i in atom if i in event) / pa
            for i in atom:
                assert cp.values[i] == expected


# --- unconditional endpoints ------------------------------------------------------


def test_unconditional_endpoints_basic():
    assert unconditional_endpoints(uniform_space(4), TableRV((1, 2, 3, 4))) == (1.0, 4.0)


def test_unconditional_endpoints_degenerate():
    assert unconditional_endpoints(uniform_space(2), TableRV((5, 5))) == (5.0, 5.0)


def test_unconditional_endpoints_skip_zero_mass():
    sp = FiniteSpace((0.5, 0.5, 0.0))
    assert unconditional_endpoints(sp, TableRV((1, 2, 9))) == (1.0, 2.0)


def test_unconditional_endpoints_no_support():
    sp = FiniteSpace((0.0, 0.0))
    with pytest.raises(ValueError):
        unconditional_endpoints(sp, TableRV((1, 2)))


# --- conditional endpoints ---------------------------------------------------------


def test_left_endpoint_two_atoms():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    assert conditional_left_endpoint(sp, TableRV((1, 2, 3, 4)), part).values == (1, 1, 3, 3)


def test_left_endpoint_trivial_partition_is_unconditional():
    sp = uniform_space(4)
    rv = TableRV((4, 1, 3, 2))
    left = conditional_left_endpoint(sp, rv, Partition.trivial(4))
    assert left.values == (1.0,) * 4


def test_left_endpoint_singletons_is_rv():
    sp = uniform_space(4)
    rv = TableRV((4, 1, 3, 2))
    left = conditional_left_endpoint(sp, rv, Partition.singletons(4))
    assert left.values == rv.values


def test_left_endpoint_zero_mass_atom_flagged():
    sp = FiniteSpace((0.5, 0.5, 0.0, 0.0))
    part = Partition(((0, 1), (2, 3)))
    left = conditional_left_endpoint(sp, TableRV((1, 2, 3, 4)), part)
    assert left.values == (1.0, 1.0, NEG_INF, NEG_INF)
    assert left.flagged == frozenset({2, 3})
    right = conditional_right_endpoint(sp, TableRV((1, 2, 3, 4)), part)
    assert right.values == (2.0, 2.0, POS_INF, POS_INF)
    assert right.flagged == frozenset({2, 3})


def test_right_endpoint_examples():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    assert conditional_right_endpoint(sp, TableRV((1, 2, 3, 4)), part).values == (2, 2, 4, 4)
    assert conditional_right_endpoint(sp, TableRV((7, 7, 7, 7)), Partition.trivial(4)).values == (7.0,) * 4
    trivial_max = conditional_right_endpoint(sp, TableRV((4, 1, 3, 2)), Partition.trivial(4))
    assert trivial_max.values == (4.0,) * 4


def test_left_endpoint_requires_finite_rv():
    sp = uniform_space(2)
    with pytest.raises(ValueError):
        conditional_left_endpoint(sp, TableRV((1.0, POS_INF)), Partition.trivial(2))


# --- essential supremum ---------------------------------------------------------------


def test_essential_supremum_pointwise_max():
    sp = uniform_space(2)
    out = essential_supremum(sp, [TableRV((0, 1)), TableRV((1, 0))])
    assert out.values == (1.0, 1.0)


def test_essential_supremum_singleton_identity():
    sp = uniform_space(3)
    q = TableRV((3, 1, 2))
    assert essential_supremum(sp, [q]).values == q.values


def test_essential_supremum_empty_family():
    with pytest.raises(ValueError):
        essential_supremum(uniform_space(2), [])


def test_essential_supremum_definition_randomized():
    rng = np.random.default_rng(13)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        probs = rng.dirichlet(np.ones(n))
        sp = FiniteSpace(tuple(float(p) for p in probs))
        fam = [TableRV(tuple(float(v) for v in rng.integers(-5, 6, size=n))) for _ in range(10)]
        ess = essential_supremum(sp, fam)
        # fold of pairwise max
        fold = fam[0]
        for m in fam[1:]:
            fold = TableRV(tuple(max(a, b) for a, b in zip(fold.values, m.values)))
        assert ess.values == fold.values
        # definition (i): a.s. domination of each member
        for m in fam:
            assert all(ess.values[i] >= m.values[i] for i in sp.support)
        # definition (ii): minimality among a.s. dominators, by enumeration of bumps
        for m in fam:
            for i in sp.support:
                if m.values[i] == ess.values[i]:
                    # lowering the supremum below a member breaks domination
                    lowered = list(ess.values)
                    lowered[i] -= 1.0
                    assert lowered[i] < m.values[i]


# --- brute-force oracle ---------------------------------------------------------------


def test_brute_force_agrees_on_example():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    out = brute_force_conditional_left_endpoint(sp, TableRV((1, 2, 3, 4)), part)
    assert out.values == (1.0, 1.0, 3.0, 3.0)


def test_brute_force_trivial_partition():
    sp = uniform_space(4)
    out = brute_force_conditional_left_endpoint(sp, TableRV((4, 1, 3, 2)), Partition.trivial(4))
    assert out.values == (1.0,) * 4


def test_brute_force_guard():
    sp = uniform_space(13)
    with pytest.raises(ValueError):
        brute_force_conditional_left_endpoint(sp, TableRV((0,) * 13), Partition.trivial(13))


def test_brute_force_literal_and_factorized_paths_agree():
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        probs = rng.dirichlet(np.ones(n))
        probs = np.where(rng.random(n) < 0.2, 0.0, probs)
        if probs.sum() == 0:
            probs[0] = 1.0
        probs /= probs.sum()
        sp = FiniteSpace(tuple(float(p) for p in probs))
        owner = rng.integers(0, n, size=n)
        atoms = {}
        for i, j in enumerate(owner):
            atoms.setdefault(int(j), []).append(i)
        part = Partition(tuple(tuple(a) for a in atoms.values()))
        rv = TableRV(tuple(float(v) for v in rng.integers(-3, 4, size=n)))
        literal = brute_force_conditional_left_endpoint(sp, rv, part)
        factorized = brute_force_conditional_left_endpoint(sp, rv, part, enumeration_cap=0)
        assert literal.values == factorized.values
        assert literal.flagged == factorized.flagged
        fast = conditional_left_endpoint(sp, rv, part)
        assert as_equal(sp, fast, literal) and fast.flagged == literal.flagged


def test_left_endpoint_satisfies_defining_properties():
    rng = np.random.default_rng(19)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        probs = rng.dirichlet(np.ones(n))
        sp = FiniteSpace(tuple(float(p) for p in probs))
        owner = rng.integers(0, max(1, n // 2), size=n)
        atoms = {}
        for i, j in enumerate(owner):
            atoms.setdefault(int(j), []).append(i)
        part = Partition(tuple(tuple(a) for a in atoms.values()))
        rv = TableRV(tuple(float(v) for v in rng.integers(-5, 6, size=n)))
        left = conditional_left_endpoint(sp, rv, part)
        assert is_measurable(sp, left, part)
        assert dominated_given(sp, rv, left, part)


# --- independence ----------------------------------------------------------------------


def test_independent_of_partition_product_structure():
    # outcome masses factor as atom_mass * value_prob
    atom_mass = (0.3, 0.7)
    value_prob = (0.25, 0.75)
    probs, values, atoms = [], [], []
    idx = 0
    for am in atom_mass:
        atom = []
        for vp, v in zip(value_prob, (2.0, 5.0)):
            probs.append(am * vp)
            values.append(v)
            atom.append(idx)
            idx += 1
        atoms.append(tuple(atom))
    sp = FiniteSpace(tuple(probs))
    part = Partition(tuple(atoms))
    rv = TableRV(tuple(values))
    assert independent_of_partition(sp, rv, part)
    left = conditional_left_endpoint(sp, rv, part)
    assert all(left.values[i] == 2.0 for i in sp.support)


def test_not_independent_when_conditional_law_differs():
    sp = uniform_space(4)
    part = Partition(((0, 1), (2, 3)))
    assert not independent_of_partition(sp, TableRV((1, 2, 3, 4)), part)


# --- monotone-limit counterexample ------------------------------------------------------


def test_increasing_limits_do_not_commute():
    # uniform grid on {0, 1/N, ..., (N-1)/N} modeling [0, 1]
    n_points = 100
    sp = uniform_space(n_points)
    grid = [j / n_points for j in range(n_points)]
    trivial = Partition.trivial(n_points)
    one = TableRV((1.0,) * n_points)
    assert conditional_left_endpoint(sp, one, trivial).values[0] == 1.0
    for n in range(2, n_points + 1):
        indicator = TableRV(tuple(1.0 if g >= 1.0 / n else 0.0 for g in grid))
        left = conditional_left_endpoint(sp, indicator, trivial)
        assert left.values[0] == 0.0


# --- JSON interface ------------------------------------------------------------------------


def test_space_json_round_trip():
    sp = FiniteSpace((0.25, 0.25, 0.5))
    part = Partition(((0, 1), (2,)))
    rvs = {"x": TableRV((1.0, NEG_INF, 3.0))}
    obj = space_to_json(sp, part, rvs)
    sp2, part2, rvs2 = space_from_json(obj)
    assert sp2.probs == sp.probs
    assert part2.atoms == part.atoms
    assert rvs2["x"].values == rvs["x"].values


def test_space_json_rejects_garbage():
    with pytest.raises(ValueError):
        space_from_json({"probs": [1.0]})
    with pytest.raises(ValueError):
        space_from_json([1, 2, 3])
