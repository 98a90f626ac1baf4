"""Traversal-order tables and their comparison against the shipped fixture.

Starting from a chosen site (entering on a chosen role at shoulders) and
walking the word in one of the two directions, the twenty visits receive
the values 1..20 in order.  A :class:`TraversalTable` holds one such
assignment.  Ten starts are enough to represent every table up to the
quarter-turn relabeling: both directions at one branch center and at one
shoulder per ring, each shoulder entered on either role.

The shipped fixture (``data/reference_cases.csv``) lists eleven reference
tables, cases a..k.  ``check_fixture`` matches them against an ensemble
and its mirrors, applying shipped errata rows when a case cannot be
matched raw.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .diagram import (
    BRANCH_SITES,
    LETTER_SITES,
    ROTATION_RELABEL,
    DiagramWord,
    Role,
    canonical_818,
    site_class,
    SiteClass,
)


class InvalidStartSpecError(ValueError):
    pass


class StartNotFoundError(ValueError):
    """Start site does not occur in the word."""


class RoleMissingError(ValueError):
    """Start site occurs, but never with the requested entry role."""


class EmptyEnsembleError(ValueError):
    pass


class FixtureParseError(ValueError):
    pass


class Direction(Enum):
    CW = "cw"
    CCW = "ccw"

    def __str__(self) -> str:
        return self.value


# Clockwise is pinned to the stored visit order of canonical_818(): the
# (K, cw) table reproduces fixture case a.
_FORWARD = Direction.CW

_ROLE_ORDER = {Role.OVER: 0, Role.UNDER: 1, Role.THROUGH: 2}

REPRESENTATIVE_SITES = ("K", "F", "A")  # one per class: branch, outer, inner


@dataclass(frozen=True)
class StartSpec:
    """Where and how a traversal begins.

    Branch centers take no entry role (the single through visit is the
    start); shoulders need one of over/under to pick the occurrence.
    """

    site: str
    direction: Direction
    entry_role: Optional[Role] = None

    def __post_init__(self) -> None:
        if self.site not in LETTER_SITES:
            raise InvalidStartSpecError(f"start site must be one of A..L, got {self.site!r}")
        if self.site in BRANCH_SITES:
            if self.entry_role is not None:
                raise InvalidStartSpecError(f"branch start {self.site} takes no entry role")
        else:
            if self.entry_role not in (Role.OVER, Role.UNDER):
                raise InvalidStartSpecError(f"shoulder start {self.site} needs an over or under entry role")

    def __str__(self) -> str:
        if self.entry_role is None:
            return f"{self.site},{self.direction}"
        return f"{self.site},{self.direction},{self.entry_role}"


@dataclass(frozen=True)
class TraversalTable:
    """Values 1..20 assigned to the twenty (site, role) visits."""

    start: StartSpec
    entries: tuple[tuple[str, Role, int], ...]
    mirrored: bool = False

    @classmethod
    def from_values(
        cls, start: StartSpec, values: Mapping[tuple[str, Role], int], mirrored: bool = False
    ) -> "TraversalTable":
        ordered = tuple(
            (site, role, values[(site, role)])
            for site, role in sorted(values, key=lambda k: (k[0], _ROLE_ORDER[k[1]]))
        )
        return cls(start, ordered, mirrored)

    def as_dict(self) -> dict[tuple[str, Role], int]:
        return {(site, role): value for site, role, value in self.entries}

    def value(self, site: str, role: Role) -> int:
        for s, r, v in self.entries:
            if s == site and r is role:
                return v
        raise KeyError((site, role))

    def over(self, site: str) -> int:
        return self.value(site, Role.OVER)

    def under(self, site: str) -> int:
        return self.value(site, Role.UNDER)

    def through(self, site: str) -> int:
        return self.value(site, Role.THROUGH)

    def same_assignment(self, other: "TraversalTable") -> bool:
        """Equal as value assignments, ignoring how each was produced."""
        return self.entries == other.entries

    def describe(self) -> str:
        return f"mirror({self.start})" if self.mirrored else str(self.start)


def traverse(word: DiagramWord, start: StartSpec) -> TraversalTable:
    """Assign 1..len(word) walking from the start occurrence.

    CW walks the stored order forward, CCW backward.  The start visit
    always receives value 1.
    """
    n = len(word)
    positions = [i for i, v in enumerate(word) if v.site == start.site]
    if not positions:
        raise StartNotFoundError(f"site {start.site} does not occur in the word")
    want = Role.THROUGH if start.entry_role is None else start.entry_role
    at = next((i for i in positions if word[i].role is want), None)
    if at is None:
        raise RoleMissingError(f"site {start.site} has no {want} visit")
    step = 1 if start.direction is _FORWARD else -1
    values: dict[tuple[str, Role], int] = {}
    for k in range(n):
        v = word[(at + step * k) % n]
        key = (v.site, v.role)
        if key in values:
            raise ValueError(f"duplicate visit {key}; table undefined for this word")
        values[key] = k + 1
    return TraversalTable.from_values(start, values)


def mirror_table(table: TraversalTable) -> TraversalTable:
    """The same traversal on the mirror diagram: over and under values swap."""
    values = {
        (site, role.swapped): value for (site, role), value in table.as_dict().items()
    }
    return TraversalTable.from_values(table.start, values, mirrored=not table.mirrored)


def relabel_table(table: TraversalTable, mapping: Mapping[str, str]) -> TraversalTable:
    """Rename sites; the start spec moves with them."""
    values = {
        (mapping[site], role): value for (site, role), value in table.as_dict().items()
    }
    start = StartSpec(mapping[table.start.site], table.start.direction, table.start.entry_role)
    return TraversalTable.from_values(start, values, mirrored=table.mirrored)


@dataclass(frozen=True)
class StateEnsemble:
    """A labeled collection of tables with pairwise distinct start specs."""

    label: str
    tables: tuple[TraversalTable, ...]

    def __post_init__(self) -> None:
        specs = [(t.start, t.mirrored) for t in self.tables]
        if len(set(specs)) != len(specs):
            raise ValueError("duplicate start specs in ensemble")

    def __len__(self) -> int:
        return len(self.tables)


def _start_specs_for(site: str) -> list[StartSpec]:
    if site in BRANCH_SITES:
        return [StartSpec(site, d) for d in (Direction.CW, Direction.CCW)]
    return [
        StartSpec(site, d, r)
        for d in (Direction.CW, Direction.CCW)
        for r in (Role.OVER, Role.UNDER)
    ]


def enumerate_representatives(word: Optional[DiagramWord] = None) -> StateEnsemble:
    """The ten tables that generate all forty under the quarter-turn relabeling.

    One site per class (K, F, A), both directions, shoulders entered on
    both roles; ordered site-major, then direction (cw first), then role
    (over first).
    """
    word = canonical_818() if word is None else word
    tables = tuple(
        traverse(word, spec)
        for site in REPRESENTATIVE_SITES
        for spec in _start_specs_for(site)
    )
    return StateEnsemble("reps10", tables)


def enumerate_all(word: Optional[DiagramWord] = None) -> StateEnsemble:
    """All forty tables, sites in letter order, then direction, then role."""
    word = canonical_818() if word is None else word
    tables = tuple(
        traverse(word, spec)
        for site in LETTER_SITES
        for spec in _start_specs_for(site)
    )
    return StateEnsemble("all40", tables)


def with_mirrors(ensemble: StateEnsemble) -> list[TraversalTable]:
    """Direct tables first, then the mirror of each."""
    return list(ensemble.tables) + [mirror_table(t) for t in ensemble.tables]


def rotation_orbits(tables: Sequence[TraversalTable]) -> tuple[tuple[int, ...], ...]:
    """Group table indices into orbits of the quarter-turn relabeling.

    Also checks equivariance along the way: relabeling a member table
    must reproduce the ensemble's table for the relabeled start spec.
    """
    def key(t: TraversalTable):
        return (t.start.site, t.start.direction, t.start.entry_role, t.mirrored)

    index = {key(t): i for i, t in enumerate(tables)}
    if len(index) != len(tables):
        raise ValueError("duplicate start specs")
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for i, table in enumerate(tables):
        if i in seen:
            continue
        orbit: list[int] = []
        cur_i, cur = i, table
        while cur_i not in seen:
            seen.add(cur_i)
            orbit.append(cur_i)
            rotated = relabel_table(cur, ROTATION_RELABEL)
            nxt_i = index.get(key(rotated))
            if nxt_i is None:
                raise ValueError(f"ensemble not closed under rotation at {rotated.start}")
            if not tables[nxt_i].same_assignment(rotated):
                raise ValueError(f"rotation equivariance violated at {rotated.start}")
            cur_i, cur = nxt_i, tables[nxt_i]
        orbits.append(tuple(orbit))
    return tuple(orbits)


# ---------------------------------------------------------------------------
# Fixture handling


@dataclass(frozen=True)
class FixtureCase:
    case_id: str
    entries: tuple[tuple[str, Role, int], ...]

    def as_dict(self) -> dict[tuple[str, Role], int]:
        return {(site, role): value for site, role, value in self.entries}


_ROLE_BY_NAME = {"over": Role.OVER, "under": Role.UNDER, "through": Role.THROUGH}

_ALL_KEYS = frozenset(
    [(s, Role.THROUGH) for s in BRANCH_SITES]
    + [(s, r) for s in LETTER_SITES if s not in BRANCH_SITES for r in (Role.OVER, Role.UNDER)]
)


def _parse_row_key(lineno: int, site: str, role_name: str) -> tuple[str, Role]:
    if site not in LETTER_SITES:
        raise FixtureParseError(f"line {lineno}: unknown site {site!r}")
    role = _ROLE_BY_NAME.get(role_name)
    if role is None:
        raise FixtureParseError(f"line {lineno}: unknown role {role_name!r}")
    is_branch = site_class(site) is SiteClass.BRANCH_CENTER
    if is_branch != (role is Role.THROUGH):
        raise FixtureParseError(f"line {lineno}: role {role_name!r} does not fit site {site!r}")
    return site, role


def _parse_int(lineno: int, text: str, column: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FixtureParseError(f"line {lineno}: {column} {text!r} is not an integer") from None


def load_table_fixture(path) -> tuple[FixtureCase, ...]:
    """Read a case table from CSV with header ``case,site,role,value``."""
    cases: dict[str, dict[tuple[str, Role], int]] = {}
    last_line = 1
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["case", "site", "role", "value"]:
            raise FixtureParseError("line 1: expected header case,site,role,value")
        for lineno, row in enumerate(reader, start=2):
            last_line = lineno
            if len(row) != 4:
                raise FixtureParseError(f"line {lineno}: expected 4 fields, got {len(row)}")
            case_id, site, role_name, value_text = row
            if not case_id:
                raise FixtureParseError(f"line {lineno}: empty case id")
            key = _parse_row_key(lineno, site, role_name)
            value = _parse_int(lineno, value_text, "value")
            entries = cases.setdefault(case_id, {})
            if key in entries:
                raise FixtureParseError(f"line {lineno}: duplicate entry {site} {role_name} in case {case_id}")
            entries[key] = value
    for case_id, entries in cases.items():
        if set(entries) != _ALL_KEYS:
            raise FixtureParseError(
                f"line {last_line}: case {case_id} incomplete ({len(entries)} of {len(_ALL_KEYS)} entries)"
            )
    return tuple(
        FixtureCase(
            case_id,
            tuple(
                (site, role, entries[(site, role)])
                for site, role in sorted(entries, key=lambda k: (k[0], _ROLE_ORDER[k[1]]))
            ),
        )
        for case_id, entries in cases.items()
    )


def load_errata(path) -> dict[str, list[tuple[str, Role, int, int]]]:
    """Read correction rows: ``case,site,role,value,corrected_value``."""
    out: dict[str, list[tuple[str, Role, int, int]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["case", "site", "role", "value", "corrected_value"]:
            raise FixtureParseError("line 1: expected header case,site,role,value,corrected_value")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 5:
                raise FixtureParseError(f"line {lineno}: expected 5 fields, got {len(row)}")
            case_id, site, role_name, value_text, corrected_text = row
            key = _parse_row_key(lineno, site, role_name)
            original = _parse_int(lineno, value_text, "value")
            corrected = _parse_int(lineno, corrected_text, "corrected_value")
            out.setdefault(case_id, []).append((key[0], key[1], original, corrected))
    return out


def shipped_fixture_path() -> Path:
    return Path(str(resources.files("knot818").joinpath("data/reference_cases.csv")))


def shipped_errata_path() -> Path:
    return Path(str(resources.files("knot818").joinpath("data/reference_cases_errata.csv")))


def case_multiset_violations(case: FixtureCase) -> list[str]:
    """Diagnostics for a case whose values are not exactly {1..20}."""
    by_value: dict[int, list[str]] = {}
    for site, role, value in case.entries:
        by_value.setdefault(value, []).append(f"{site} {role}")
    diags = []
    for value in sorted(by_value):
        places = by_value[value]
        if not 1 <= value <= 20:
            diags.append(f"value {value} out of range at {', '.join(places)}")
        elif len(places) > 1:
            diags.append(f"value {value} duplicated at {', '.join(places)}")
    for value in range(1, 21):
        if value not in by_value:
            diags.append(f"value {value} missing")
    return diags


class MatchStatus(Enum):
    MATCHED = "MATCHED"
    MATCHED_WITH_ERRATUM = "MATCHED_WITH_ERRATUM"
    UNMATCHED = "UNMATCHED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    status: MatchStatus
    witness: Optional[TraversalTable]
    violations: tuple[str, ...]
    erratum_applied: bool = False


@dataclass(frozen=True)
class FixtureReport:
    ensemble_label: str
    results: tuple[CaseResult, ...]

    @property
    def all_matched(self) -> bool:
        return all(r.status is not MatchStatus.UNMATCHED for r in self.results)


def _find_match(pool: Iterable[TraversalTable], entries: dict) -> Optional[TraversalTable]:
    for table in pool:
        if table.as_dict() == entries:
            return table
    return None


def check_fixture(
    ensemble: StateEnsemble,
    fixture: Sequence[FixtureCase],
    errata: Optional[Mapping[str, list[tuple[str, Role, int, int]]]] = None,
) -> FixtureReport:
    """Match every fixture case against the ensemble and its mirrors.

    A case that fails to match raw is retried with its errata rows
    applied (each row must agree with the stored value it corrects).
    Multiset violations are reported for the raw case either way.
    """
    if not ensemble.tables:
        raise EmptyEnsembleError("cannot match against an empty ensemble")
    pool = with_mirrors(ensemble)
    results = []
    for case in fixture:
        violations = tuple(case_multiset_violations(case))
        entries = case.as_dict()
        witness = _find_match(pool, entries)
        if witness is not None:
            results.append(CaseResult(case.case_id, MatchStatus.MATCHED, witness, violations))
            continue
        corrections = (errata or {}).get(case.case_id)
        if corrections:
            corrected = dict(entries)
            for site, role, original, new_value in corrections:
                stored = corrected.get((site, role))
                if stored != original:
                    raise FixtureParseError(
                        f"erratum for case {case.case_id} expects {site} {role} = {original}, fixture has {stored}"
                    )
                corrected[(site, role)] = new_value
            witness = _find_match(pool, corrected)
            if witness is not None:
                results.append(
                    CaseResult(case.case_id, MatchStatus.MATCHED_WITH_ERRATUM, witness, violations, True)
                )
                continue
        results.append(CaseResult(case.case_id, MatchStatus.UNMATCHED, None, violations))
    return FixtureReport(ensemble.label, tuple(results))
