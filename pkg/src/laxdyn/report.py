"""Witness-producing validation reports.

Every law checker in the package returns a :class:`Report`: a list of
:class:`Violation` records, each naming the violated law and the witnessing
values.  Checkers collect *all* witnesses rather than failing fast, and
reports are canonically ordered so identical inputs always produce identical
output.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """One violated law together with the values that witness it.

    ``witnesses`` is a tuple of (field, value) pairs; ``location`` is an
    optional label for which part of a compound structure was checked
    (e.g. "clock" vs "datation" inside an open dynamic).
    """

    law: str
    witnesses: tuple[tuple[str, str], ...]
    location: str = ""

    def witness_map(self) -> dict[str, str]:
        return dict(self.witnesses)

    def describe(self) -> str:
        parts = " ".join(f"{k}={v}" for k, v in self.witnesses)
        where = f" [{self.location}]" if self.location else ""
        return f"{self.law}: {parts}{where}" if parts else f"{self.law}{where}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, location: str = "", **witnesses) -> None:
        pairs = tuple((k, str(v)) for k, v in witnesses.items())
        self.violations.append(Violation(law, pairs, location))

    def extend(self, other: "Report", location: str = "") -> None:
        for v in other.violations:
            loc = location or v.location
            self.violations.append(Violation(v.law, v.witnesses, loc))

    def canonical(self) -> "Report":
        key = lambda v: (v.location, v.law, tuple(sorted(v.witnesses)))
        return Report(sorted(self.violations, key=key))

    def by_law(self, law: str) -> list[Violation]:
        return [v for v in self.violations if v.law == law]

    def lines(self) -> list[str]:
        return [v.describe() for v in self.canonical().violations]

    def to_records(self) -> list[dict]:
        return [
            {"law": v.law, "witnesses": v.witness_map(), "location": v.location}
            for v in self.canonical().violations
        ]
