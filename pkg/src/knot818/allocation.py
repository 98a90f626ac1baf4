"""Per-site allocation totals and the defect structure they expose.

Summing the values a traversal assigns at each site (over plus under at
shoulders, the single through value at branch centers) always spends the
same budget, 210 per table, but the split across the four sites of a
class is uneven for any single table.  The defect report makes that
precise with exact rationals: per class, the mean, the largest absolute
deviation from it, and a mismatch flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .diagram import BRANCH_SITES, INNER_SITES, OUTER_SITES, SiteClass
from .traversal import EmptyEnsembleError, StateEnsemble, TraversalTable


class IncompleteAllocationError(ValueError):
    """Totals are missing one or more of the twelve sites."""


# Report order: branch centers, outer shoulders, inner shoulders.
CLASS_SITES = (
    (SiteClass.BRANCH_CENTER, BRANCH_SITES),
    (SiteClass.OUTER_SHOULDER, OUTER_SITES),
    (SiteClass.INNER_SHOULDER, INNER_SITES),
)


@dataclass(frozen=True)
class SiteAllocation:
    """Integer totals per site, tagged with where they came from."""

    source: str
    totals: tuple[tuple[str, int], ...]

    @classmethod
    def from_mapping(cls, source: str, totals: Mapping[str, int]) -> "SiteAllocation":
        return cls(source, tuple(sorted(totals.items())))

    def as_dict(self) -> dict[str, int]:
        return dict(self.totals)

    @property
    def grand_total(self) -> int:
        return sum(v for _, v in self.totals)


def site_totals(table: TraversalTable) -> SiteAllocation:
    """Allocation of one table: over+under per shoulder, through per branch."""
    totals: dict[str, int] = {}
    for (site, _role), value in table.as_dict().items():
        totals[site] = totals.get(site, 0) + value
    return SiteAllocation.from_mapping(table.describe(), totals)


def ensemble_totals(ensemble: StateEnsemble) -> SiteAllocation:
    """Site totals summed over every table of the ensemble."""
    if not ensemble.tables:
        raise EmptyEnsembleError(f"ensemble {ensemble.label!r} has no tables")
    totals: dict[str, int] = {}
    for table in ensemble.tables:
        for (site, _role), value in table.as_dict().items():
            totals[site] = totals.get(site, 0) + value
    return SiteAllocation.from_mapping(ensemble.label, totals)


@dataclass(frozen=True)
class ClassStats:
    site_class: SiteClass
    entries: tuple[tuple[str, int], ...]
    mean: Fraction
    max_deviation: Fraction
    mismatch: bool


@dataclass(frozen=True)
class DefectReport:
    source: str
    classes: tuple[ClassStats, ...]

    @property
    def any_mismatch(self) -> bool:
        return any(c.mismatch for c in self.classes)


def defect_report(allocation: SiteAllocation) -> DefectReport:
    """Exact per-class statistics of an allocation over all twelve sites."""
    totals = allocation.as_dict()
    missing = [
        site
        for _cls, sites in CLASS_SITES
        for site in sites
        if site not in totals
    ]
    if missing:
        raise IncompleteAllocationError(f"allocation missing sites {', '.join(sorted(missing))}")
    stats = []
    for cls, sites in CLASS_SITES:
        values = [totals[s] for s in sites]
        mean = Fraction(sum(values), len(values))
        deviations = [abs(Fraction(v) - mean) for v in values]
        stats.append(
            ClassStats(
                site_class=cls,
                entries=tuple(zip(sites, values)),
                mean=mean,
                max_deviation=max(deviations),
                mismatch=len(set(values)) > 1,
            )
        )
    return DefectReport(allocation.source, tuple(stats))
