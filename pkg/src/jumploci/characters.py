"""The character torus side: torsion grids, cosets, Galois orbits and scans.

Jump loci are finite unions of torsion-translated subtori, so sampling them on
the grid of characters whose coordinates have order dividing N detects every
component whose translate has order dividing N.  N is a completeness
parameter: a scan at order N says nothing about components that only carry
points of other orders.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from . import fox
from .errors import BudgetExceededError, CoverageError
from .fox import CohomologyDims, Presentation, TorsionCharacter

__all__ = [
    "DEFAULT_BUDGET",
    "ScanReport",
    "TorsionCoset",
    "coset_contains",
    "embed_deleted",
    "enumerate_coset",
    "galois_orbit",
    "grid",
    "scan",
]

DEFAULT_BUDGET = 20_000


def embed_deleted(t: TorsionCharacter, position: int) -> TorsionCharacter:
    """Pull a character of the smaller complement back: insert t_position = 1.

    >>> str(embed_deleted(TorsionCharacter.of("1/3", "1/2"), 1))
    '(0, 1/3, 1/2)'
    """
    if not 1 <= position <= t.rank + 1:
        raise ValueError(f"position {position} out of range 1..{t.rank + 1}")
    q = list(t.exponents)
    q.insert(position - 1, Fraction(0))
    return TorsionCharacter(tuple(q))


def restrict(t: TorsionCharacter, deleted: Iterable[int]) -> TorsionCharacter:
    """Inverse of embed_deleted: drop the given (1-based) coordinates."""
    deleted = set(deleted)
    return TorsionCharacter(tuple(q for i, q in enumerate(t.exponents, 1) if i not in deleted))


def galois_orbit(t: TorsionCharacter) -> list[TorsionCharacter]:
    """Orbit of t under q -> a*q (mod 1), a a unit modulo the order of t."""
    n = t.order
    return sorted({t.galois(a) for a in range(1, n + 1) if gcd(a, n) == 1})


def _check_budget(size: int, budget: int) -> None:
    if size > budget:
        raise BudgetExceededError(size, budget)


def grid(r: int, order: int, fixed: Iterable[int] = ()) -> list[TorsionCharacter]:
    """All characters with coordinates in (1/order)Z/Z, trivial at ``fixed`` coordinates."""
    if order < 1:
        raise ValueError(f"order bound must be at least 1, got {order}")
    fixed = set(fixed)
    steps = [Fraction(a, order) for a in range(order)]
    axes = [[Fraction(0)] if i in fixed else steps for i in range(1, r + 1)]
    return [TorsionCharacter(q) for q in itertools.product(*axes)]


def _hermite_rows(rows: Sequence[Sequence[int]], r: int) -> tuple[tuple[int, ...], ...]:
    rows = [tuple(int(a) for a in row) for row in rows if any(row)]
    if not rows:
        return ()
    if any(len(row) != r for row in rows):
        raise ValueError(f"equation rows must have length {r}")
    basis = hermite_normal_form(Matrix(rows).T).T
    return tuple(tuple(int(a) for a in basis.row(i)) for i in range(basis.rows))


@dataclass(frozen=True)
class TorsionCoset:
    """The coset {translate * s : prod_i s_i^a_i = 1 for every row a}.

    Equation rows are stored as the Hermite basis of the lattice they span.
    """

    translate: TorsionCharacter
    equations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "equations", _hermite_rows(self.equations, self.translate.rank)
        )

    @property
    def ambient(self) -> int:
        return self.translate.rank

    @property
    def dimension(self) -> int:
        if not self.equations:
            return self.ambient
        return self.ambient - Matrix(self.equations).rank()

    def same_as(self, other: TorsionCoset) -> bool:
        return self.equations == other.equations and coset_contains(self, other.translate)

    def to_json(self) -> dict:
        return {"translate": self.translate.to_json(), "equations": [list(a) for a in self.equations]}

    @classmethod
    def from_json(cls, data: dict) -> TorsionCoset:
        return cls(TorsionCharacter(tuple(data["translate"])), tuple(map(tuple, data["equations"])))


def coset_contains(coset: TorsionCoset, t: TorsionCharacter) -> bool:
    """True iff sum_i a_i (q_i - rho_i) is an integer for every equation row a."""
    if t.rank != coset.ambient:
        raise ValueError("character and coset live in different tori")
    diff = [q - p for q, p in zip(t.exponents, coset.translate.exponents)]
    return all(sum(a * d for a, d in zip(row, diff)).denominator == 1 for row in coset.equations)


def enumerate_coset(
    coset: TorsionCoset, order: int, budget: int = DEFAULT_BUDGET
) -> list[TorsionCharacter]:
    """Grid points of order dividing ``order`` on the coset, by pruned backtracking.

    Coordinates are assigned last to first; an equation is checked as soon as
    all coordinates it involves are assigned.
    """
    r = coset.ambient
    _check_budget(order**r, budget)
    rho = coset.translate.exponents
    due: dict[int, list[tuple[int, ...]]] = {i: [] for i in range(r)}
    for row in coset.equations:
        due[min(i for i, a in enumerate(row) if a)].append(row)
    steps = [Fraction(a, order) for a in range(order)]
    found = []
    q = [Fraction(0)] * r

    def extend(i: int) -> None:
        if i < 0:
            found.append(TorsionCharacter(tuple(q)))
            return
        for step in steps:
            q[i] = step
            if all(
                sum(a * (q[j] - rho[j]) for j, a in enumerate(row) if a).denominator == 1
                for row in due[i]
            ):
                extend(i - 1)

    if r == 0:
        return [TorsionCharacter(())]
    extend(r - 1)
    return sorted(found)


@dataclass
class ScanReport:
    """Twisted dimensions on a torsion grid plus the requested jump loci."""

    presentation: str
    order: int
    components: int
    records: dict[TorsionCharacter, CohomologyDims]
    fixed: tuple[int, ...] = ()
    selectors: tuple[tuple[int, int], ...] = ((1, 1),)

    def locus(self, degree: int, mult: int) -> list[TorsionCharacter]:
        """Grid points of V^degree_mult."""
        return sorted(t for t, d in self.records.items() if d.degree(degree) >= mult)

    @property
    def loci(self) -> dict[tuple[int, int], list[TorsionCharacter]]:
        return {(i, k): self.locus(i, k) for i, k in self.selectors}

    def covers(self, order: int, fixed: Iterable[int]) -> bool:
        want = grid(self.components, order, fixed)
        return all(t in self.records for t in want)

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "order": self.order,
            "components": self.components,
            "fixed": list(self.fixed),
            "records": [
                {"q": t.to_json(), "h0": d.h0, "h1": d.h1, "h2": d.h2}
                for t, d in sorted(self.records.items())
            ],
            "loci": [
                {"degree": i, "mult": k, "characters": [t.to_json() for t in pts]}
                for (i, k), pts in self.loci.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> ScanReport:
        records = {
            TorsionCharacter(tuple(rec["q"])): CohomologyDims(rec["h0"], rec["h1"], rec["h2"])
            for rec in data["records"]
        }
        selectors = tuple((loc["degree"], loc["mult"]) for loc in data.get("loci", ()))
        report = cls(
            data["presentation"],
            data["order"],
            data["components"],
            records,
            tuple(data.get("fixed", ())),
            selectors,
        )
        for loc in data.get("loci", ()):
            stored = [TorsionCharacter(tuple(q)) for q in loc["characters"]]
            if stored != report.locus(loc["degree"], loc["mult"]):
                raise CoverageError(
                    f"stored V^{loc['degree']}_{loc['mult']} disagrees with the records"
                )
        return report

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"q_{i}" for i in range(1, self.components + 1)] + ["h0", "h1", "h2"])
        for t, d in sorted(self.records.items()):
            writer.writerow(t.to_json() + [d.h0, d.h1, d.h2])
        return buf.getvalue()


def _evaluate_chunk(args: tuple[Presentation, list[TorsionCharacter]]) -> list[CohomologyDims]:
    pres, chars = args
    return [fox.twisted_dims(pres, t) for t in chars]


def evaluate_many(
    pres: Presentation, chars: Sequence[TorsionCharacter], jobs: int = 1
) -> dict[TorsionCharacter, CohomologyDims]:
    """twisted_dims on many characters, optionally across worker processes."""
    if jobs <= 1 or len(chars) < 2 * jobs:
        return {t: fox.twisted_dims(pres, t) for t in chars}
    size = -(-len(chars) // (4 * jobs))
    chunks = [list(chars[i : i + size]) for i in range(0, len(chars), size)]
    out: dict[TorsionCharacter, CohomologyDims] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk, dims in zip(chunks, pool.map(_evaluate_chunk, [(pres, c) for c in chunks])):
            out.update(zip(chunk, dims))
    return out


def scan(
    pres: Presentation,
    order: int,
    selectors: Sequence[tuple[int, int]] = ((1, 1),),
    *,
    fixed: Iterable[int] = (),
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    name: str = "",
) -> ScanReport:
    """Evaluate twisted dims on the order-N grid (optionally on a slice t_i = 1, i in fixed)."""
    if order < 1:
        raise ValueError(f"order bound must be at least 1, got {order}")
    r = pres.components
    fixed = tuple(sorted(set(fixed)))
    if any(not 1 <= i <= r for i in fixed):
        raise ValueError(f"fixed coordinates {fixed} out of range 1..{r}")
    for i, k in selectors:
        if i not in (0, 1, 2) or k < 1:
            raise ValueError(f"bad jump-locus selector (degree={i}, mult={k})")
    _check_budget(order ** (r - len(fixed)), budget)
    chars = grid(r, order, fixed)
    records = evaluate_many(pres, chars, jobs)
    return ScanReport(name, order, r, records, fixed, tuple(tuple(s) for s in selectors))
