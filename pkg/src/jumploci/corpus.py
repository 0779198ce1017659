"""Built-in germs with braids, branch data and documented expectations.

Braids are the braid monodromy of the germ over a small circle |x| = eps:
two branches with contact order m give sigma_1^(2m), r concurrent lines give
the full twist (sigma_1 ... sigma_(r-1))^r, and the cusp y^2 = x^3 gives
sigma_1^3.  For the cusp together with its tangent line y = 0, the two cusp
strands +-x^(3/2) turn three half-turns around the fixed middle strand y = 0,
which is the cube of the half twist sigma_1 sigma_2 sigma_1.

Branch lists are ordered to match the braid's component labels.  Each fact
carries a ``source`` naming how the expected value was obtained.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .braid import BraidWord, LinkingMatrix
from .branches import Branch, Parametrization
from .characters import TorsionCoset
from .fox import TorsionCharacter

__all__ = ["CORPUS", "CorpusEntry", "Fact", "corpus", "corpus_names"]


@dataclass(frozen=True)
class Fact:
    claim: str
    value: object
    source: str

    def to_json(self) -> dict:
        return {"claim": self.claim, "value": self.value, "source": self.source}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    braid: BraidWord
    linking: LinkingMatrix
    branches: tuple[Branch, ...] | None = None
    # nontrivial grid points of V^1_1 lie exactly on these cosets (h1 on them given)
    cosets: tuple[tuple[TorsionCoset, int], ...] = ()
    facts: tuple[Fact, ...] = field(default=())

    @property
    def components(self) -> int:
        return self.linking.size

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "braid": self.braid.to_json(),
            "branches": None if self.branches is None else [b.to_json() for b in self.branches],
            "linking": self.linking.to_json(),
            "cosets": [{"coset": c.to_json(), "h1": h} for c, h in self.cosets],
            "facts": [f.to_json() for f in self.facts],
        }


def _line(slope: int, name: str) -> Branch:
    """y = slope * x, parametrized by s -> (s, slope * s)."""
    y = ((slope, 1),) if slope else ()
    return Branch(
        poly=((1, 0, 1), (-slope, 1, 0)),
        param=Parametrization(((1, 1),), y, 8),
        name=name,
    )


def _parabola(sign: int, name: str) -> Branch:
    """y = sign * x^2."""
    return Branch(
        poly=((1, 0, 1), (-sign, 2, 0)),
        param=Parametrization(((1, 1),), ((sign, 2),), 8),
        name=name,
    )


_CUSP = Branch(
    poly=((1, 0, 2), (-1, 3, 0)),
    param=Parametrization(((1, 2),), ((1, 3),), 12),
    name="y^2 - x^3",
)


def _full_twist(r: int) -> BraidWord:
    return BraidWord(r, tuple(range(1, r)) * r)


def _all_ones(r: int) -> LinkingMatrix:
    return LinkingMatrix(tuple(tuple(int(i != j) for j in range(r)) for i in range(r)))


def _b1_facts(r: int) -> tuple[Fact, ...]:
    return (
        Fact("h1 at the trivial character", r, "b1 of a germ complement equals the branch count"),
        Fact("h1 at the trivial character after deleting one branch", r - 1, "b1 of the smaller complement"),
    )


CORPUS: dict[str, CorpusEntry] = {
    entry.name: entry
    for entry in [
        CorpusEntry(
            "hopf",
            "two transverse smooth branches (y - x)(y + x)",
            BraidWord(2, (1, 1)),
            LinkingMatrix(((0, 1), (1, 0))),
            (_line(1, "y - x"), _line(-1, "y + x")),
            (),
            _b1_facts(2)
            + (Fact("V^1_1 on any grid", ["trivial character only"], "local systems on a torus are acyclic unless trivial"),),
        ),
        CorpusEntry(
            "tangent-pair",
            "two smooth branches with contact order 2, (y - x^2)(y + x^2)",
            BraidWord(2, (1, 1, 1, 1)),
            LinkingMatrix(((0, 2), (2, 0))),
            (_parabola(1, "y - x^2"), _parabola(-1, "y + x^2")),
            ((TorsionCoset(TorsionCharacter.of("1/2", 0), ((1, 1),)), 1),),
            _b1_facts(2)
            + (Fact("nontrivial V^1_1 is the coset t1*t2 = -1 with h1 = 1", "t1*t2 = -1", "grid scans at N = 4 and N = 8"),),
        ),
        CorpusEntry(
            "three-lines",
            "three concurrent lines y = -x, y = 0, y = x",
            _full_twist(3),
            _all_ones(3),
            (_line(-1, "y + x"), _line(0, "y"), _line(1, "y - x")),
            ((TorsionCoset(TorsionCharacter.trivial(3), ((1, 1, 1),)), 1),),
            _b1_facts(3)
            + (Fact("nontrivial V^1_1 is t1*t2*t3 = 1 with h1 = 1", "t1*t2*t3 = 1", "grid scan at N = 6"),),
        ),
        CorpusEntry(
            "four-lines",
            "four concurrent lines y = -x, y = 0, y = x, y = 2x",
            _full_twist(4),
            _all_ones(4),
            (_line(-1, "y + x"), _line(0, "y"), _line(1, "y - x"), _line(2, "y - 2x")),
            ((TorsionCoset(TorsionCharacter.trivial(4), ((1, 1, 1, 1),)), 2),),
            _b1_facts(4)
            + (Fact("nontrivial V^1_1 is t1*t2*t3*t4 = 1 with h1 = 2", "t1*t2*t3*t4 = 1", "grid scan at N = 4"),),
        ),
        CorpusEntry(
            "cusp",
            "the ordinary cusp y^2 = x^3 (trefoil link, one branch)",
            BraidWord(2, (1, 1, 1)),
            LinkingMatrix(((0,),)),
            (_CUSP,),
            (
                (TorsionCoset(TorsionCharacter.of("1/6"), ((1,),)), 1),
                (TorsionCoset(TorsionCharacter.of("5/6"), ((1,),)), 1),
            ),
            (
                Fact("h1 at the trivial character", 1, "b1 of a knot complement"),
                Fact("nontrivial V^1_1 is the primitive 6th roots of unity", ["1/6", "5/6"], "roots of the Alexander polynomial t^2 - t + 1"),
            ),
        ),
        CorpusEntry(
            "cusp-line",
            "the cusp y^2 = x^3 with its tangent line y = 0",
            BraidWord(3, (1, 2, 1) * 3),
            LinkingMatrix(((0, 3), (3, 0))),
            (_CUSP, _line(0, "y")),
            (
                (TorsionCoset(TorsionCharacter.of(0, "1/3"), ((2, 1),)), 1),
                (TorsionCoset(TorsionCharacter.of(0, "2/3"), ((2, 1),)), 1),
            ),
            _b1_facts(2)
            + (Fact("nontrivial V^1_1 is t1^2*t2 = primitive cube root of unity", "t1^2*t2 in {z3, z3^2}", "grid scan at N = 12"),),
        ),
    ]
}


def corpus_names() -> list[str]:
    return list(CORPUS)


def corpus(name: str) -> CorpusEntry:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; choose from {', '.join(CORPUS)}") from None
