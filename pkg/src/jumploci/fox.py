"""Twisted cohomology of presentation 2-complexes via Fox calculus.

A rank one local system on a link complement is a character of pi_1 that
factors through H_1 = Z^r, so it is determined by its values t_1..t_r on the
meridians.  For a presentation <x_1..x_n | R_1..R_m> whose generators are
meridians, the cellular chain complex of the universal abelian cover,
specialised at a character, is

    C_2 = Q(zeta)^m --(Fox Jacobian)--> C_1 = Q(zeta)^n --(x_j - 1)--> C_0 = Q(zeta)

and its homology gives the twisted (co)homology dimensions.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .cyclotomic import CycMatrix, CycScalar, as_exponent, rank, root_of_unity
from .errors import ArityError

__all__ = [
    "CohomologyDims",
    "Presentation",
    "TorsionCharacter",
    "fox_derivative",
    "fox_jacobian",
    "free_reduce",
    "jump_membership",
    "twisted_dims",
]


def free_reduce(word: Iterable[int]) -> list[int]:
    """Cancel adjacent inverse pairs in a word of signed generator indices."""
    out: list[int] = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return out


@dataclass(frozen=True)
class Presentation:
    """Finite presentation whose generators are meridians.

    ``labels[j - 1]`` is the component whose meridian x_j is; relators are
    tuples of signed 1-based generator indices.
    """

    generators: int
    labels: tuple[int, ...]
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        if len(self.labels) != self.generators:
            raise ValueError("need one meridian label per generator")
        r = max(self.labels, default=0)
        if set(self.labels) != set(range(1, r + 1)):
            raise ValueError(f"meridian labels must cover 1..{r}, got {sorted(set(self.labels))}")
        for w in self.relators:
            for g in w:
                if not 1 <= abs(g) <= self.generators:
                    raise ValueError(f"relator letter {g} out of range")
            if any(abelianize(self, w)):
                raise ValueError(f"relator {list(w)} is not null-homologous")

    @property
    def components(self) -> int:
        return max(self.labels, default=0)

    @classmethod
    def from_json(cls, data: dict) -> Presentation:
        return cls(int(data["generators"]), tuple(data["labels"]), tuple(map(tuple, data["relators"])))

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "labels": list(self.labels),
            "relators": [list(w) for w in self.relators],
        }


def abelianize(pres: Presentation, word: Iterable[int]) -> list[int]:
    """Image of a word in H_1 = Z^r, in the meridian basis."""
    vec = [0] * pres.components
    for g in word:
        vec[pres.labels[abs(g) - 1] - 1] += 1 if g > 0 else -1
    return vec


@dataclass(frozen=True, order=True)
class TorsionCharacter:
    """A character with root-of-unity coordinates t_i = exp(2 pi i q_i).

    Exponents are stored reduced to [0, 1).

    >>> TorsionCharacter.parse("0, 1/3").order
    3
    """

    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", tuple(as_exponent(q) % 1 for q in self.exponents)
        )

    @classmethod
    def of(cls, *exponents) -> TorsionCharacter:
        return cls(tuple(exponents))

    @classmethod
    def trivial(cls, r: int) -> TorsionCharacter:
        return cls((Fraction(0),) * r)

    @classmethod
    def parse(cls, text: str) -> TorsionCharacter:
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(tuple(part.strip() for part in text.split(",")))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return lcm(1, *(q.denominator for q in self.exponents))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def coordinate(self, i: int) -> CycScalar:
        """t_i as an exact root of unity (1-based index)."""
        return root_of_unity(self.exponents[i - 1])

    def inverse(self) -> TorsionCharacter:
        return TorsionCharacter(tuple(-q for q in self.exponents))

    def galois(self, a: int) -> TorsionCharacter:
        return TorsionCharacter(tuple(a * q for q in self.exponents))

    def to_json(self) -> list[str]:
        return [str(q) for q in self.exponents]

    def __str__(self):
        return "(" + ", ".join(str(q) for q in self.exponents) + ")"


class CohomologyDims(NamedTuple):
    h0: int
    h1: int
    h2: int

    def degree(self, i: int) -> int:
        if i not in (0, 1, 2):
            raise ValueError(f"cohomological degree must be 0, 1 or 2, got {i}")
        return self[i]


def fox_derivative(
    word: Sequence[int], j: int, t: TorsionCharacter, labels: Sequence[int]
) -> CycScalar:
    """Fox derivative d(word)/dx_j pushed to Q(zeta) by x_i -> t_{labels[i]}.

    Uses d(uv) = du + phi(u) dv letter by letter.
    """
    n = t.order
    prefix = CycScalar.rational(1, n)
    total = CycScalar.rational(0, n)
    for g in word:
        x = t.coordinate(labels[abs(g) - 1]).embed(n)
        if g == j:
            total = total + prefix
        elif g == -j:
            total = total - prefix * x.inverse()
        prefix = prefix * x if g > 0 else prefix * x.inverse()
    return total


@lru_cache(maxsize=256)
def fox_jacobian(pres: Presentation) -> tuple[tuple[dict, ...], ...]:
    """Abelianized Fox Jacobian as Laurent polynomials in t_1..t_r.

    Entry [i][j] maps an exponent vector to its integer coefficient.
    """
    r = pres.components
    rows = []
    for w in pres.relators:
        row = [defaultdict(int) for _ in range(pres.generators)]
        e = [0] * r
        for g in w:
            c = pres.labels[abs(g) - 1] - 1
            if g > 0:
                row[g - 1][tuple(e)] += 1
                e[c] += 1
            else:
                e[c] -= 1
                row[-g - 1][tuple(e)] -= 1
        rows.append(tuple({k: v for k, v in entry.items() if v} for entry in row))
    return tuple(rows)


def _evaluate(poly: dict, t: TorsionCharacter, n: int) -> CycScalar:
    steps = [int(q * n) for q in t.exponents]
    powers: dict[int, int] = defaultdict(int)
    for exps, coeff in poly.items():
        powers[sum(e * s for e, s in zip(exps, steps)) % n] += coeff
    return CycScalar.from_powers(n, powers)


def boundary_matrices(pres: Presentation, t: TorsionCharacter) -> tuple[CycMatrix, CycMatrix]:
    """(d1, d2) of the chain complex specialised at t, over Q(zeta_N), N = ord t."""
    n = t.order
    d1 = CycMatrix.from_rows(
        [[t.coordinate(c).embed(n) - 1] for c in pres.labels], cols=1
    )
    d2 = CycMatrix.from_rows(
        [[_evaluate(p, t, n) for p in row] for row in fox_jacobian(pres)],
        cols=pres.generators,
    )
    return d1, d2


def twisted_dims(pres: Presentation, t: TorsionCharacter) -> CohomologyDims:
    """dim H^i(U, L_t) for i = 0, 1, 2.

    Computed as the homology of the chain complex twisted by the inverse
    character (field-coefficient duality between H^i(L_t) and H_i(L_t^-1)).

    >>> from jumploci.braid import BraidWord, artin_presentation
    >>> twisted_dims(artin_presentation(BraidWord(2, (1, 1))), TorsionCharacter.of(0, "1/3"))
    CohomologyDims(h0=0, h1=0, h2=0)
    """
    if t.rank != pres.components:
        raise ArityError(
            f"character has {t.rank} coordinates but the presentation has "
            f"{pres.components} components"
        )
    d1, d2 = boundary_matrices(pres, t.inverse())
    r1, r2 = rank(d1), rank(d2)
    return CohomologyDims(1 - r1, pres.generators - r1 - r2, len(pres.relators) - r2)


def jump_membership(pres: Presentation, t: TorsionCharacter, degree: int, mult: int) -> bool:
    """Whether t lies in the jump locus V^degree_mult."""
    if mult < 1:
        raise ValueError(f"multiplicity must be at least 1, got {mult}")
    return twisted_dims(pres, t).degree(degree) >= mult
