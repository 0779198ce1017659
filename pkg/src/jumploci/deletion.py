"""Deletion-restriction for rank one local systems on germ complements.

Let U be the complement of all branches and V the complement of the branches
outside a set S, with L_t trivial around every branch in S.  Restricting L_t
to the punctured branch C_i^* (i in S) gives a rank one system on a circle
with monodromy

    lambda_i(t) = prod_{j != i} t_j^{l_ij},

so H^0 and H^1 of C_i^* are both 1-dimensional when lambda_i(t) = 1 and zero
otherwise.  The long exact sequence of the pair splits, which leaves pure
dimension bookkeeping:

    h1(V) = h1(U) - #{i in S : lambda_i(t) = 1}, and the same for h2.

For a single deleted branch this reads off V^1_k of the smaller complement
from V^1_k and V^1_{k+1} of U.  The verifier below recomputes both sides
independently and reports every disagreement instead of assuming the
formula.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import fox
from .braid import BraidWord, LinkingMatrix, artin_presentation, component_count, delete_component, linking_matrix
from .characters import DEFAULT_BUDGET, ScanReport, grid, restrict, scan
from .cyclotomic import CycScalar
from .errors import (
    BudgetExceededError,
    ComponentUnderflowError,
    ContradictionError,
    CoverageError,
    HypothesisViolationError,
    InvalidComponentError,
    JumpLociError,
)
from .fox import CohomologyDims, TorsionCharacter

__all__ = [
    "DeletionScenario",
    "VerificationReport",
    "circle_dims",
    "delete_components",
    "meridian_exponent",
    "meridian_scalar",
    "predict_deleted_h1",
    "predict_multi_deleted",
    "transform_jump_locus",
    "verify_deletion",
]


def _require_trivial(t: TorsionCharacter, i: int) -> None:
    if not 1 <= i <= t.rank:
        raise InvalidComponentError(f"component {i} is not among 1..{t.rank}")
    if t.exponents[i - 1] != 0:
        raise HypothesisViolationError(
            f"t_{i} = exp(2 pi i {t.exponents[i - 1]}) but the deleted branch needs t_{i} = 1"
        )


def meridian_exponent(t: TorsionCharacter, i: int, linking: LinkingMatrix) -> Fraction:
    """lambda_i(t) written as exp(2 pi i e); returns e in [0, 1)."""
    _require_trivial(t, i)
    return sum(
        (linking(i, j) * q for j, q in enumerate(t.exponents, 1) if j != i), Fraction(0)
    ) % 1


def meridian_scalar(t: TorsionCharacter, i: int, linking: LinkingMatrix) -> CycScalar:
    """Monodromy of L_t restricted to the punctured branch C_i^*, as an exact scalar.

    >>> from jumploci.braid import LinkingMatrix
    >>> L = LinkingMatrix(((0, 2), (2, 0)))
    >>> meridian_scalar(TorsionCharacter.of(0, "1/2"), 1, L).is_one()
    True
    """
    _require_trivial(t, i)
    if linking.size != t.rank:
        raise ValueError("linking matrix and character disagree on the number of branches")
    n = t.order
    value = CycScalar.rational(1, n)
    for j in range(1, t.rank + 1):
        if j != i:
            value = value * t.coordinate(j).embed(n) ** linking(i, j)
    return value


def circle_dims(monodromy: CycScalar) -> tuple[int, int]:
    """(dim H^0, dim H^1) of a rank one local system on a circle."""
    return (1, 1) if monodromy.is_one() else (0, 0)


def predict_deleted_h1(h1_u: int, monodromy: CycScalar) -> int:
    """dim H^1 after deleting one branch with trivial coordinate.

    h1 is unchanged when the monodromy around the deleted branch is
    nontrivial and drops by one otherwise.
    """
    if monodromy.is_one():
        if h1_u < 1:
            raise ContradictionError("monodromy is trivial but h1 of U is 0")
        return h1_u - 1
    return h1_u


def _check_deletion_set(t: TorsionCharacter, deleted: Iterable[int]) -> tuple[int, ...]:
    deleted = tuple(sorted(set(deleted)))
    if not deleted:
        raise ValueError("nothing to delete")
    if len(deleted) >= t.rank:
        raise ComponentUnderflowError("at least one branch must survive the deletion")
    for i in deleted:
        _require_trivial(t, i)
    return deleted


def predict_multi_deleted(
    dims_u: CohomologyDims,
    t: TorsionCharacter,
    deleted: Iterable[int],
    linking: LinkingMatrix,
    *,
    strict: bool = True,
) -> CohomologyDims:
    """Dims of the complement V of the surviving branches, from those of U.

    With ``strict`` the character must be nontrivial on every surviving
    branch (the split case); the trivial character goes through
    b_1(U) = r instead.
    """
    deleted = _check_deletion_set(t, deleted)
    r = t.rank
    if t.is_trivial():
        if tuple(dims_u) != (1, r, r - 1):
            raise ContradictionError(f"trivial character on {r} branches but dims are {tuple(dims_u)}")
        rv = r - len(deleted)
        return CohomologyDims(1, rv, rv - 1)
    if strict:
        survivors_trivial = [i for i in range(1, r + 1) if i not in deleted and t.exponents[i - 1] == 0]
        if survivors_trivial:
            raise HypothesisViolationError(
                f"t is trivial on surviving branches {survivors_trivial}"
            )
    drop = sum(1 for i in deleted if meridian_scalar(t, i, linking).is_one())
    h1, h2 = dims_u.h1 - drop, dims_u.h2 - drop
    if h1 < 0 or h2 < 0:
        raise ContradictionError(
            f"{drop} trivial monodromies but dims of U are {tuple(dims_u)}"
        )
    return CohomologyDims(dims_u.h0, h1, h2)


def transform_jump_locus(
    report_u: ScanReport, mult: int, linking: LinkingMatrix, deleted: int
) -> list[TorsionCharacter]:
    """Predicted grid points of V^1_mult of the complement without branch ``deleted``.

    A slice point t (t_deleted = 1) is kept iff it lies in V^1_{mult+1}(U), or
    in V^1_mult(U) with nontrivial monodromy around the deleted branch.
    Points are returned in the coordinates of the smaller complement.
    """
    if mult < 1:
        raise ValueError(f"multiplicity must be at least 1, got {mult}")
    if not report_u.covers(report_u.order, [deleted]):
        raise CoverageError(
            f"report does not cover the slice t_{deleted} = 1 at order {report_u.order}"
        )
    out = []
    for t in grid(report_u.components, report_u.order, [deleted]):
        h1 = report_u.records[t].h1
        if h1 >= mult + 1 or (h1 >= mult and not meridian_scalar(t, deleted, linking).is_one()):
            out.append(restrict(t, [deleted]))
    return sorted(out)


def delete_components(braid: BraidWord, deleted: Iterable[int]) -> BraidWord:
    """Delete several components; labels refer to the original braid."""
    for c in sorted(set(deleted), reverse=True):
        braid = delete_component(braid, c)
    return braid


@dataclass(frozen=True)
class DeletionScenario:
    braid: BraidWord
    deleted: tuple[int, ...] = (1,)
    linking: LinkingMatrix | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "deleted", tuple(sorted(set(self.deleted))))
        r = component_count(self.braid)
        if r < 2:
            raise ComponentUnderflowError("deletion needs at least two branches")
        for c in self.deleted:
            if not 1 <= c <= r:
                raise InvalidComponentError(f"component {c} is not among 1..{r}")
        if len(self.deleted) >= r:
            raise ComponentUnderflowError("at least one branch must survive the deletion")
        if self.linking is None:
            object.__setattr__(self, "linking", linking_matrix(self.braid))
        elif self.linking.size != r:
            raise ValueError("linking matrix size does not match the braid")

    @property
    def components(self) -> int:
        return component_count(self.braid)

    @property
    def deleted_braid(self) -> BraidWord:
        return delete_components(self.braid, self.deleted)


@dataclass
class VerificationRow:
    q: TorsionCharacter
    dims_u: CohomologyDims | None
    monodromy: dict[int, Fraction]
    route: str
    predicted: CohomologyDims | None
    predicted_direct: CohomologyDims | None
    iterated_h1: int | None
    computed: CohomologyDims
    intermediate_ok: bool | None = None
    error: str | None = None

    @property
    def match(self) -> bool:
        return (
            self.error is None
            and self.predicted == self.computed
            and self.predicted_direct == self.computed
            and (self.iterated_h1 is None or self.iterated_h1 == self.computed.h1)
            and self.intermediate_ok is not False
        )

    def to_json(self) -> dict:
        dims = lambda d: None if d is None else list(d)  # noqa: E731
        return {
            "q": self.q.to_json(),
            "dims_u": dims(self.dims_u),
            "monodromy": [
                {"component": i, "exponent": str(e), "trivial": e == 0}
                for i, e in sorted(self.monodromy.items())
            ],
            "route": self.route,
            "predicted": dims(self.predicted),
            "predicted_direct": dims(self.predicted_direct),
            "iterated_h1": self.iterated_h1,
            "computed": list(self.computed),
            "intermediate_ok": self.intermediate_ok,
            "error": self.error,
            "match": self.match,
        }

    @classmethod
    def from_json(cls, data: dict) -> VerificationRow:
        dims = lambda d: None if d is None else CohomologyDims(*d)  # noqa: E731
        return cls(
            TorsionCharacter(tuple(data["q"])),
            dims(data["dims_u"]),
            {m["component"]: Fraction(m["exponent"]) for m in data["monodromy"]},
            data["route"],
            dims(data["predicted"]),
            dims(data["predicted_direct"]),
            data["iterated_h1"],
            CohomologyDims(*data["computed"]),
            data["intermediate_ok"],
            data["error"],
        )


@dataclass
class SetCheck:
    mult: int
    predicted: list[TorsionCharacter]
    scanned: list[TorsionCharacter]

    @property
    def match(self) -> bool:
        return self.predicted == self.scanned

    def to_json(self) -> dict:
        return {
            "mult": self.mult,
            "predicted": [t.to_json() for t in self.predicted],
            "scanned": [t.to_json() for t in self.scanned],
            "match": self.match,
        }


@dataclass
class VerificationReport:
    scenario: str
    braid: BraidWord
    deleted: tuple[int, ...]
    order: int
    linking: LinkingMatrix
    rows: list[VerificationRow] = field(default_factory=list)
    set_checks: list[SetCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.match for row in self.rows) and all(c.match for c in self.set_checks)

    @property
    def mismatches(self) -> list[VerificationRow]:
        return [row for row in self.rows if not row.match]

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "braid": self.braid.to_json(),
            "deleted": list(self.deleted),
            "order": self.order,
            "linking": self.linking.to_json(),
            "passed": self.passed,
            "rows": [row.to_json() for row in self.rows],
            "set_checks": [c.to_json() for c in self.set_checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        return cls(
            data["scenario"],
            BraidWord.from_json(data["braid"]),
            tuple(data["deleted"]),
            data["order"],
            LinkingMatrix(tuple(map(tuple, data["linking"]))),
            [VerificationRow.from_json(row) for row in data["rows"]],
            [
                SetCheck(
                    c["mult"],
                    [TorsionCharacter(tuple(q)) for q in c["predicted"]],
                    [TorsionCharacter(tuple(q)) for q in c["scanned"]],
                )
                for c in data["set_checks"]
            ],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        r = self.linking.size
        writer.writerow(
            [f"q_{i}" for i in range(1, r + 1)]
            + ["route", "dims_u", "predicted", "computed", "match", "error"]
        )
        fmt = lambda d: "" if d is None else "/".join(map(str, d))  # noqa: E731
        for row in self.rows:
            writer.writerow(
                row.q.to_json()
                + [row.route, fmt(row.dims_u), fmt(row.predicted), fmt(row.computed),
                   int(row.match), row.error or ""]
            )
        return buf.getvalue()


def _lift(dims_v: CohomologyDims, drop: int) -> CohomologyDims:
    return CohomologyDims(dims_v.h0, dims_v.h1 + drop, dims_v.h2 + drop)


def verify_deletion(
    scenario: DeletionScenario,
    order: int,
    mults: Sequence[int] = (1, 2),
    *,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> VerificationReport:
    """Check the deletion formulas on every slice character of order dividing ``order``.

    U is scanned on the slice {t_i = 1 : i deleted}; the complement of the
    surviving branches is scanned on its full grid, independently.  A
    character that is trivial on some surviving branch is predicted by first
    deleting all its trivial branches and then restoring the extra ones;
    the one-shot formula is evaluated too and both must agree.
    """
    S = scenario.deleted
    r = scenario.components
    L = scenario.linking
    rv = r - len(S)
    required = 2 * order**rv
    if required > budget:
        raise BudgetExceededError(required, budget)

    pres_u = artin_presentation(scenario.braid)
    pres_v = artin_presentation(scenario.deleted_braid)
    report_u = scan(pres_u, order, ((1, 1),), fixed=S, budget=budget, jobs=jobs)
    report_v = scan(pres_v, order, ((1, 1),), budget=budget, jobs=jobs)
    lv = L.minor(*S)
    survivors = [i for i in range(1, r + 1) if i not in S]
    enlarged_cache: dict[tuple[int, ...], fox.Presentation] = {}

    report = VerificationReport(scenario.name, scenario.braid, S, order, L)
    for t in sorted(report_u.records):
        dims_u = report_u.records[t]
        t_v = restrict(t, S)
        computed = report_v.records[t_v]
        monodromy = {}
        row = VerificationRow(t, dims_u, monodromy, "", None, None, None, computed)
        try:
            for i in S:
                e = meridian_exponent(t, i, L)
                if (e == 0) != meridian_scalar(t, i, L).is_one():
                    raise ContradictionError(f"monodromy routes disagree at component {i}")
                monodromy[i] = e
            extra = [i for i in survivors if t.exponents[i - 1] == 0]
            row.predicted_direct = predict_multi_deleted(dims_u, t, S, L, strict=False)
            if t.is_trivial():
                row.route = "b1"
                row.predicted = predict_multi_deleted(dims_u, t, S, L)
            elif not extra:
                row.route = "split"
                row.predicted = predict_multi_deleted(dims_u, t, S, L)
            else:
                row.route = "enlarged"
                big = tuple(sorted(S + tuple(extra)))
                dims_big = predict_multi_deleted(dims_u, t, big, L)
                if big not in enlarged_cache:
                    enlarged_cache[big] = artin_presentation(delete_components(scenario.braid, big))
                actual_big = fox.twisted_dims(enlarged_cache[big], restrict(t, big))
                row.intermediate_ok = actual_big == dims_big
                # restore the extra branches inside the complement of the survivors
                ext = [survivors.index(i) + 1 for i in extra]
                restore = sum(1 for i in ext if meridian_scalar(t_v, i, lv).is_one())
                row.predicted = _lift(dims_big, restore)
            if len(S) > 1:
                h1 = dims_u.h1
                for i in S:
                    h1 = predict_deleted_h1(h1, meridian_scalar(t, i, L))
                row.iterated_h1 = h1
        except JumpLociError as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        report.rows.append(row)

    if len(S) == 1:
        for k in mults:
            report.set_checks.append(
                SetCheck(k, transform_jump_locus(report_u, k, L, S[0]), report_v.locus(1, k))
            )
    return report
