"""Exact conditional support endpoints on finite probability spaces.

A finite probability space is a vector of outcome masses. A sub-sigma-field
is represented by the partition of outcomes into its atoms, which loses
nothing on a finite space: every sigma-field there is generated by a unique
partition. Random variables are per-outcome value tables.

Two conventions run through the module:

* "almost surely" quantifies over outcomes of positive mass only.
  Zero-mass outcomes are permitted and may carry arbitrary placeholder
  values; results report them through the ``flagged`` channel of
  :class:`TableRV` so callers can exclude them from comparisons.
* Masses are doubles compared with a 1e-12 tolerance (they come from user
  input); random-variable values are compared exactly (they are symbolic).

The central objects are the conditional left endpoint of the support of a
random variable given a partition (the almost-surely largest
partition-measurable lower bound of the variable), its reflected right
counterpart, and the essential supremum of a finite family. On a finite
space the left endpoint restricted to a positive-mass atom is the minimum
of the variable over the supported outcomes of that atom; a brute-force
search over the full family of dominated partition-measurable candidates is
provided as an independent oracle for that shortcut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .extended import NEG_INF, POS_INF, from_json_value, to_json_value

MASS_TOL = 1e-12


@dataclass(frozen=True)
class FiniteSpace:
    """Finite outcome set with masses. Immutable; safe to share."""

    probs: tuple[float, ...]
    outcomes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if not self.outcomes:
            object.__setattr__(
                self, "outcomes", tuple(f"w{i}" for i in range(len(self.probs)))
            )
        else:
            object.__setattr__(self, "outcomes", tuple(str(o) for o in self.outcomes))

    @property
    def size(self) -> int:
        return len(self.probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p > 0.0)

    @property
    def zero_mass(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p == 0.0)


@dataclass(frozen=True)
class Partition:
    """Disjoint, exhaustive, non-empty atoms; generates the sigma-field."""

    atoms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canon = tuple(tuple(sorted(set(a))) for a in self.atoms)
        object.__setattr__(self, "atoms", tuple(sorted(canon)))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    def atom_index(self, n: int) -> list[int]:
        """Per-outcome index of the containing atom. Raises if not a partition of range(n)."""
        idx = [-1] * n
        for j, atom in enumerate(self.atoms):
            for i in atom:
                if not 0 <= i < n:
                    raise ValueError(f"atom member {i} out of range for {n} outcomes")
                if idx[i] != -1:
                    raise ValueError(f"outcome {i} appears in two atoms")
                idx[i] = j
        if any(a == -1 for a in idx):
            missing = [i for i, a in enumerate(idx) if a == -1]
            raise ValueError(f"outcomes not covered by any atom: {missing}")
        if any(len(a) == 0 for a in self.atoms):
            raise ValueError("empty atom")
        return idx


@dataclass(frozen=True)
class TableRV:
    """Random variable as one value per outcome, possibly +/-inf.

    ``flagged`` marks outcomes whose value is an a.s.-irrelevant placeholder
    (they lie in zero-mass atoms); comparisons should skip them.
    """

    values: tuple[float, ...]
    flagged: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "flagged", frozenset(self.flagged))

    def is_finite_valued(self) -> bool:
        return all(v not in (NEG_INF, POS_INF) for v in self.values)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]
    zero_mass_outcomes: tuple[int, ...]


def validate_space(space: FiniteSpace) -> ValidationReport:
    """Check the space invariants; zero-mass outcomes are permitted but flagged."""
    violations: list[str] = []
    if space.outcomes and len(space.outcomes) != len(space.probs):
        violations.append(
            f"outcome/prob length mismatch: {len(space.outcomes)} != {len(space.probs)}"
        )
    for i, p in enumerate(space.probs):
        if p < 0.0:
            violations.append(f"negative mass {p!r} at outcome {i}")
    total = sum(space.probs)
    if abs(total - 1.0) > MASS_TOL:
        violations.append(f"sum = {total!r}")
    return ValidationReport(
        ok=not violations,
        violations=tuple(violations),
        zero_mass_outcomes=space.zero_mass,
    )


def _check_lengths(space: FiniteSpace, rv: TableRV) -> None:
    if len(rv.values) != space.size:
        raise ValueError(
            f"rv has {len(rv.values)} values for a space of {space.size} outcomes"
        )


def _require_finite(rv: TableRV) -> None:
    if not rv.is_finite_valued():
        raise ValueError("operation requires a finite-valued rv")


def is_measurable(space: FiniteSpace, rv: TableRV, part: Partition) -> bool:
    """True iff rv is constant on every atom, ignoring zero-mass outcomes."""
    _check_lengths(space, rv)
    part.atom_index(space.size)
    for atom in part.atoms:
        supported = [rv.values[i] for i in atom if space.probs[i] > 0.0]
        if supported and any(v != supported[0] for v in supported[1:]):
            return False
    return True


def conditional_probability(
    space: FiniteSpace, event: Iterable[int], part: Partition
) -> TableRV:
    """P(event | partition) as a table: on atom A, P(event & A) / P(A).

    Zero-mass atoms get value 0 and their outcomes flagged.
    """
    part.atom_index(space.size)
    ev = frozenset(event)
    for i in ev:
        if not 0 <= i < space.size:
            raise IndexError(f"event outcome {i} out of range")
    values = [0.0] * space.size
    flagged: set[int] = set()
    for atom in part.atoms:
        mass = sum(space.probs[i] for i in atom)
        if mass == 0.0:
            flagged.update(atom)
            continue
        hit = sum(space.probs[i] for i in atom if i in ev)
        v = hit / mass
        for i in atom:
            values[i] = v
    return TableRV(tuple(values), frozenset(flagged))


def unconditional_endpoints(space: FiniteSpace, rv: TableRV) -> tuple[float, float]:
    """(min, max) of rv over positive-mass outcomes."""
    _check_lengths(space, rv)
    _require_finite(rv)
    supported = [rv.values[i] for i in space.support]
    if not supported:
        raise ValueError("all outcomes have zero probability")
    return min(supported), max(supported)


def conditional_left_endpoint(
    space: FiniteSpace, rv: TableRV, part: Partition
) -> TableRV:
    """Largest partition-measurable a.s. lower bound of rv.

    On each positive-mass atom this is the minimum of rv over the atom's
    supported outcomes. Atoms of zero mass receive the placeholder NEG_INF
    and are flagged: the result is only determined almost surely.
    """
    _check_lengths(space, rv)
    _require_finite(rv)
    part.atom_index(space.size)
    values = [0.0] * space.size
    flagged: set[int] = set()
    for atom in part.atoms:
        supported = [rv.values[i] for i in atom if space.probs[i] > 0.0]
        if supported:
            v = min(supported)
        else:
            v = NEG_INF
            flagged.update(atom)
        for i in atom:
            values[i] = v
    return TableRV(tuple(values), frozenset(flagged))


def conditional_right_endpoint(
    space: FiniteSpace, rv: TableRV, part: Partition
) -> TableRV:
    """Smallest partition-measurable a.s. upper bound, via reflection.

    Computed exactly as the negated left endpoint of the negated variable,
    which equals the per-atom maximum over supported outcomes. Zero-mass
    atoms carry the placeholder POS_INF, flagged.
    """
    neg = TableRV(tuple(-v for v in rv.values))
    left = conditional_left_endpoint(space, neg, part)
    return TableRV(tuple(-v for v in left.values), left.flagged)


def essential_supremum(space: FiniteSpace, family: Sequence[TableRV]) -> TableRV:
    """Pointwise maximum of a non-empty finite family.

    Satisfies both halves of the essential-supremum definition: it a.s.
    dominates every member, and any rv dominating every member a.s.
    dominates it. On a finite space the finite pointwise maximum realizes
    this exactly, so no countable-reduction machinery is needed.
    """
    members = list(family)
    if not members:
        raise ValueError("essential supremum of an empty family")
    for rv in members:
        _check_lengths(space, rv)
    values = tuple(
        max(rv.values[i] for rv in members) for i in range(space.size)
    )
    return TableRV(values)


def dominated_given(
    space: FiniteSpace, x: TableRV, q: TableRV, part: Partition
) -> bool:
    """P(X >= Q | partition) = 1 a.s., checked from the definition.

    On each positive-mass atom the conditional probability of {X >= Q}
    equals the atom mass carried by outcomes where x_i >= q_i divided by
    the atom mass; it is 1 exactly when no supported outcome violates the
    inequality. Zero-mass atoms impose nothing.
    """
    _check_lengths(space, x)
    _check_lengths(space, q)
    for atom in part.atoms:
        for i in atom:
            if space.probs[i] > 0.0 and not x.values[i] >= q.values[i]:
                return False
    return True


def as_equal(space: FiniteSpace, u: TableRV, v: TableRV) -> bool:
    """Equality over positive-mass outcomes (exact on values)."""
    _check_lengths(space, u)
    _check_lengths(space, v)
    return all(u.values[i] == v.values[i] for i in space.support)


def as_geq(space: FiniteSpace, u: TableRV, v: TableRV) -> bool:
    _check_lengths(space, u)
    _check_lengths(space, v)
    return all(u.values[i] >= v.values[i] for i in space.support)


def independent_of_partition(
    space: FiniteSpace, rv: TableRV, part: Partition
) -> bool:
    """Factorization check: P({rv = v} & A) = P(rv = v) P(A) for all v, A."""
    _check_lengths(space, rv)
    part.atom_index(space.size)
    distinct = sorted(set(rv.values))
    for v in distinct:
        pv = sum(space.probs[i] for i in range(space.size) if rv.values[i] == v)
        for atom in part.atoms:
            pa = sum(space.probs[i] for i in atom)
            joint = sum(space.probs[i] for i in atom if rv.values[i] == v)
            if abs(joint - pv * pa) > MASS_TOL:
                return False
    return True


def brute_force_conditional_left_endpoint(
    space: FiniteSpace,
    rv: TableRV,
    part: Partition,
    *,
    max_outcomes: int = 12,
    enumeration_cap: int = 20_000,
) -> TableRV:
    """Independent oracle for :func:`conditional_left_endpoint`.

    Enumerates partition-measurable candidates with per-atom values drawn
    from the rv's value set plus NEG_INF, keeps those satisfying
    P(X >= Q | partition) = 1 a.s. (checked by the definitional mass
    condition, never by a per-atom minimum), and returns the pointwise a.s.
    maximum of the kept candidates. Restricting candidate values to the
    value set loses nothing: raising any kept candidate to the next value
    at or below the dominated bound keeps it dominated.

    When the full Cartesian product of assignments is small enough the
    enumeration is literal; beyond ``enumeration_cap`` it factorizes over
    atoms (equivalent, because the domination condition constrains each
    atom separately), which the tests cross-check against the literal path.
    """
    _check_lengths(space, rv)
    _require_finite(rv)
    part.atom_index(space.size)
    if space.size > max_outcomes:
        raise ValueError(
            f"instance too large for brute force: {space.size} > {max_outcomes} outcomes"
        )

    candidates = sorted(set(rv.values)) + [NEG_INF]
    atoms = part.atoms
    n_assignments = len(candidates) ** len(atoms)

    def atom_value_ok(atom: tuple[int, ...], v: float) -> bool:
        # P(X >= v | atom) = 1: no supported outcome of the atom may violate.
        return all(
            space.probs[i] == 0.0 or rv.values[i] >= v for i in atom
        )

    best: list[float | None] = [None] * len(atoms)
    if n_assignments <= enumeration_cap:
        supported_atoms = [
            tuple(i for i in atom if space.probs[i] > 0.0) for atom in atoms
        ]
        for assignment in itertools.product(candidates, repeat=len(atoms)):
            ok = True
            for j, sup in enumerate(supported_atoms):
                v = assignment[j]
                for i in sup:
                    if rv.values[i] < v:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for j, v in enumerate(assignment):
                    if best[j] is None or v > best[j]:
                        best[j] = v
    else:
        for j, atom in enumerate(atoms):
            valid = [v for v in candidates if atom_value_ok(atom, v)]
            best[j] = max(valid)

    values = [0.0] * space.size
    flagged: set[int] = set()
    for j, atom in enumerate(atoms):
        has_support = any(space.probs[i] > 0.0 for i in atom)
        if has_support:
            v = best[j]
            assert v is not None  # NEG_INF is always a dominated candidate
        else:
            v = NEG_INF
            flagged.update(atom)
        for i in atom:
            values[i] = v
    return TableRV(tuple(values), frozenset(flagged))



# --- JSON interface -------------------------------------------------------
#
# {"probs": [...], "atoms": [[...], ...], "rvs": {"name": [...]}}
# with extended reals as numbers or the strings "-inf"/"+inf".


def space_from_json(obj: dict) -> tuple[FiniteSpace, Partition, dict[str, TableRV]]:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    try:
        probs = [float(p) for p in obj["probs"]]
        atoms = tuple(tuple(int(i) for i in a) for a in obj["atoms"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed space description: {exc}") from exc
    space = FiniteSpace(tuple(probs), tuple(obj.get("outcomes", ())))
    part = Partition(atoms)
    part.atom_index(space.size)
    rvs = {
        str(name): TableRV(tuple(from_json_value(v) for v in vals))
        for name, vals in obj.get("rvs", {}).items()
    }
    for rv in rvs.values():
        _check_lengths(space, rv)
    return space, part, rvs


def space_to_json(
    space: FiniteSpace, part: Partition, rvs: dict[str, TableRV] | None = None
) -> dict:
    return {
        "probs": list(space.probs),
        "atoms": [list(a) for a in part.atoms],
        "rvs": {
            name: [to_json_value(v) for v in rv.values]
            for name, rv in (rvs or {}).items()
        },
    }
