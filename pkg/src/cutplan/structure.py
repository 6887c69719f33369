"""System fault-tolerance structures, minimal cutsets, and minimal pathsets.

A system of m components is described by a coherent (monotone) boolean
structure function phi over component-failure indicators: phi(x) = 1 means the
combination of failed components x brings the whole system down.  Structures
are given either as an explicit truth table or as a list of cutsets; both
reduce to the canonical incidence matrix of inclusion-minimal cutsets that the
planner operates on.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateStructure, InputError, InternalInvariantError, NonCoherentStructure

# Truth tables are enumerated exhaustively; beyond this many components the
# 2^m table is no longer reasonable and callers must supply cutsets directly.
TRUTH_TABLE_MAX_COMPONENTS = 20


def _check_component_names(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    if not names:
        raise InputError("a structure needs at least one component")
    if len(set(names)) != len(names):
        raise InputError("component names must be unique")
    for name in names:
        if not isinstance(name, str) or not name:
            raise InputError("component names must be nonempty strings")
    return names


@dataclass(frozen=True)
class SystemStructure:
    """Coherent structure function over m components.

    Exactly one of ``cutsets`` / ``truth_table`` is set.  ``cutsets`` holds
    component-index sets; failure of all components in any one of them fails
    the system.  ``truth_table`` holds phi for every state, indexed by the
    bitmask with bit j set when component j has failed.

    Instances are validated on construction: truth tables must be monotone
    (witnessed ``NonCoherentStructure`` otherwise) and non-constant, so every
    constructed value satisfies phi(all working) = 0 and phi(all failed) = 1.
    """

    component_names: tuple[str, ...]
    cutsets: tuple[frozenset[int], ...] | None = None
    truth_table: tuple[int, ...] | None = None

    def __post_init__(self):
        names = _check_component_names(self.component_names)
        object.__setattr__(self, "component_names", names)
        if (self.cutsets is None) == (self.truth_table is None):
            raise InputError("provide exactly one of cutsets or truth_table")
        if self.cutsets is not None:
            self._validate_cutsets()
        else:
            self._validate_truth_table()

    @property
    def m(self) -> int:
        return len(self.component_names)

    @classmethod
    def from_cutsets(cls, component_names: Sequence[str], cutsets: Iterable[Iterable[int]]) -> "SystemStructure":
        """Build from cutsets given as iterables of component indices."""
        sets = tuple(frozenset(c) for c in cutsets)
        return cls(tuple(component_names), cutsets=sets)

    @classmethod
    def from_truth_table(cls, component_names: Sequence[str], table: Sequence[int]) -> "SystemStructure":
        """Build from a full truth table indexed by failed-component bitmask."""
        return cls(tuple(component_names), truth_table=tuple(int(v) for v in table))

    def _validate_cutsets(self):
        m = self.m
        if not self.cutsets:
            raise DegenerateStructure("no cutsets given: the system can never fail")
        for cut in self.cutsets:
            if not cut:
                raise InputError("cutsets must be nonempty component sets")
            if not all(isinstance(j, int) and 0 <= j < m for j in cut):
                raise InputError("cutset members must be component indices in range")

    def _validate_truth_table(self):
        m = self.m
        if m > TRUTH_TABLE_MAX_COMPONENTS:
            raise InputError(
                "truth tables are limited to %d components; give cutsets instead"
                % TRUTH_TABLE_MAX_COMPONENTS
            )
        table = self.truth_table
        if len(table) != 1 << m:
            raise InputError("truth table must list all %d states" % (1 << m))
        if any(v not in (0, 1) for v in table):
            raise InputError("truth table values must be 0 or 1")
        # Monotone: failing one more component never repairs the system.
        for mask in range(1 << m):
            if not table[mask]:
                continue
            for j in range(m):
                if not mask & (1 << j):
                    larger = mask | (1 << j)
                    if not table[larger]:
                        raise NonCoherentStructure(
                            _mask_to_state(mask, m), _mask_to_state(larger, m)
                        )
        if table[0]:
            # Monotone with phi(0...0) = 1 means phi is constant 1.
            raise DegenerateStructure("the system fails even with no failed components")
        if not table[(1 << m) - 1]:
            raise DegenerateStructure("the system survives failure of every component")

    def phi(self, mask: int) -> int:
        """Structure function over a failed-component bitmask."""
        if self.truth_table is not None:
            return self.truth_table[mask]
        failed = {j for j in range(self.m) if mask & (1 << j)}
        return int(any(cut <= failed for cut in self.cutsets))


@dataclass(frozen=True)
class CutsetMatrix:
    """0/1 incidence matrix of the minimal cutsets: one row per cutset.

    Entry (i, j) is 1 when component j belongs to minimal cutset i.  Rows are
    pairwise distinct and incomparable under the subset order.  A column of
    zeros is legal (a component irrelevant to system failure) and is surfaced
    via :meth:`zero_columns`.
    """

    component_names: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        names = _check_component_names(self.component_names)
        object.__setattr__(self, "component_names", names)
        m = len(names)
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise InputError("cutset matrix needs at least one row")
        sets = []
        for row in rows:
            if len(row) != m:
                raise InputError("every matrix row must have one entry per component")
            if any(v not in (0, 1) for v in row):
                raise InputError("matrix entries must be 0 or 1")
            members = frozenset(j for j, v in enumerate(row) if v)
            if not members:
                raise InputError("every cutset row needs at least one member")
            sets.append(members)
        for a, b in itertools.combinations(sets, 2):
            if a <= b or b <= a:
                raise InputError("cutset rows must be distinct and pairwise incomparable")

    @property
    def s(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.component_names)

    @classmethod
    def from_index_sets(cls, component_names: Sequence[str], sets: Iterable[Iterable[int]]) -> "CutsetMatrix":
        names = tuple(component_names)
        rows = []
        for members in sets:
            row = [0] * len(names)
            for j in members:
                row[j] = 1
            rows.append(tuple(row))
        return cls(names, tuple(rows))

    def row_members(self, i: int) -> tuple[int, ...]:
        """Component indices of cutset i, ascending."""
        return tuple(j for j, v in enumerate(self.rows[i]) if v)

    def row_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.row_members(i)) for i in range(self.s))

    def zero_columns(self) -> tuple[int, ...]:
        """Indices of components that appear in no minimal cutset."""
        return tuple(j for j in range(self.m) if all(row[j] == 0 for row in self.rows))

    def canonical_digest(self) -> str:
        """Hex digest identifying the matrix independent of row order and labels."""
        keys = sorted(self.row_members(i) for i in range(self.s))
        payload = "m=%d;rows=%s" % (
            self.m,
            "|".join(",".join(str(j) for j in key) for key in keys),
        )
        return hashlib.sha256(payload.encode("ascii")).hexdigest()


def _mask_to_state(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(m))


def _canonical_family(sets: Iterable[frozenset[int]]) -> list[tuple[int, ...]]:
    """Sorted member-index tuples, lexicographic by component index."""
    return sorted(tuple(sorted(s)) for s in set(sets))


def _minimalize(sets: Iterable[frozenset[int]]) -> set[frozenset[int]]:
    """Drop duplicates and every set that strictly contains another."""
    unique = set(sets)
    return {s for s in unique if not any(o < s for o in unique)}


def minimal_cutsets(structure: SystemStructure) -> CutsetMatrix:
    """Reduce a structure to its inclusion-minimal cutsets, canonically ordered.

    For truth-table input the minimal failed states are extracted by exhaustive
    enumeration; for cutset input, duplicates and supersets are removed.
    """
    m = structure.m
    if structure.truth_table is not None:
        table = structure.truth_table
        minimal = []
        for mask in range(1, 1 << m):
            if not table[mask]:
                continue
            # Minimal iff removing any single failed component repairs the system.
            if all(table[mask & ~(1 << j)] == 0 for j in range(m) if mask & (1 << j)):
                minimal.append(frozenset(j for j in range(m) if mask & (1 << j)))
        if not minimal:
            raise DegenerateStructure("structure has no failed states")
        family = set(minimal)
    else:
        family = _minimalize(structure.cutsets)
    ordered = _canonical_family(family)
    return CutsetMatrix.from_index_sets(structure.component_names, ordered)


def minimal_pathsets(cutsets: CutsetMatrix) -> tuple[tuple[int, ...], ...]:
    """All inclusion-minimal component sets intersecting every minimal cutset.

    These are the minimal path sets of the dual structure: keeping every
    component of any one of them working guarantees system success.  Found by
    branching over the elements of the first cutset not yet hit, pruning
    branches already covered by a known hitting set, then filtering to the
    inclusion-minimal family.  Exact; intended for the small s and m of this
    domain.
    """
    rows = cutsets.row_sets()
    found: set[frozenset[int]] = set()

    def extend(chosen: frozenset[int]):
        unhit = next((row for row in rows if not row & chosen), None)
        if unhit is None:
            found.add(chosen)
            return
        for j in sorted(unhit):
            candidate = chosen | {j}
            # A completion of candidate can only be a superset of a known
            # hitting set, hence never minimal.
            if any(h <= candidate for h in found):
                continue
            extend(candidate)

    extend(frozenset())
    if not found:
        raise InternalInvariantError("no hitting set found for a nonempty cutset family")
    return tuple(_canonical_family(_minimalize(found)))


def shortest_path_length(cutsets: CutsetMatrix) -> int:
    """Size of the smallest minimal pathset (fewest components that must work)."""
    return min(len(p) for p in minimal_pathsets(cutsets))
