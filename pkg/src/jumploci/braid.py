"""Braid closures of singularity links.

A link of a plane curve germ is the closure of a positive braid.  This module
reads off its components and pairwise linking numbers from a braid word,
writes down the Artin presentation of the complement, and removes components.

Strands and components are labelled from 1, matching the Artin generator
convention where sigma_k (letter k) crosses the strands in positions k, k+1
and letter -k is its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ComponentUnderflowError, InvalidComponentError, MalformedBraidError
from .fox import Presentation, free_reduce

__all__ = [
    "BraidWord",
    "LinkingMatrix",
    "artin_action",
    "artin_presentation",
    "components",
    "delete_component",
    "linking_matrix",
    "permutation",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise MalformedBraidError(f"a braid needs at least one strand, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        for pos, k in enumerate(self.letters):
            if not 1 <= abs(k) <= self.strands - 1:
                raise MalformedBraidError(
                    f"letter {k} at position {pos} is out of range for {self.strands} strands"
                )

    @classmethod
    def from_json(cls, data: dict) -> BraidWord:
        if not isinstance(data, dict) or "strands" not in data or "word" not in data:
            raise MalformedBraidError("braid object needs 'strands' and 'word' fields")
        if not isinstance(data["strands"], int) or isinstance(data["strands"], bool):
            raise MalformedBraidError("braid field 'strands' must be an integer")
        word = data["word"]
        if not isinstance(word, list) or not all(
            isinstance(k, int) and not isinstance(k, bool) and k != 0 for k in word
        ):
            raise MalformedBraidError("braid field 'word' must be a list of nonzero integers")
        return cls(data["strands"], tuple(word))

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": list(self.letters)}

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"<empty braid on {self.strands} strand(s)>"
        return " ".join(f"s{k}" if k > 0 else f"s{-k}^-1" for k in self.letters)


@dataclass(frozen=True)
class LinkingMatrix:
    """Symmetric matrix of pairwise linking numbers, zero on the diagonal."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        r = len(rows)
        for i, row in enumerate(rows):
            if len(row) != r:
                raise ValueError("linking matrix must be square")
            if row[i] != 0:
                raise ValueError("linking matrix diagonal must be zero")
            for j in range(r):
                if row[j] != rows[j][i]:
                    raise ValueError("linking matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        """Linking number of components i and j (1-based)."""
        return self.entries[i - 1][j - 1]

    def minor(self, *deleted: int) -> LinkingMatrix:
        """Drop the rows and columns of the given (1-based) components."""
        keep = [i for i in range(self.size) if i + 1 not in deleted]
        return LinkingMatrix(tuple(tuple(self.entries[i][j] for j in keep) for i in keep))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def permutation(braid: BraidWord) -> list[int]:
    """occupant[p] = strand (0-based start position) sitting at position p after the word."""
    occupant = list(range(braid.strands))
    for k in braid.letters:
        a = abs(k) - 1
        occupant[a], occupant[a + 1] = occupant[a + 1], occupant[a]
    return occupant


def components(braid: BraidWord) -> tuple[int, ...]:
    """Component label (1..r) of each strand; labels ordered by first strand.

    >>> components(BraidWord(2, (1,)))
    (1, 1)
    >>> components(BraidWord(2, (1, 1)))
    (1, 2)
    """
    occupant = permutation(braid)
    # the strand that starts at p ends at end[p]; closing the braid glues end to start
    end = [0] * braid.strands
    for pos, strand in enumerate(occupant):
        end[strand] = pos
    labels = [0] * braid.strands
    r = 0
    for start in range(braid.strands):
        if labels[start]:
            continue
        r += 1
        p = start
        while not labels[p]:
            labels[p] = r
            p = end[p]
    return tuple(labels)


def component_count(braid: BraidWord) -> int:
    return max(components(braid))


def linking_matrix(braid: BraidWord) -> LinkingMatrix:
    """Half the signed count of crossings between each pair of components.

    >>> linking_matrix(BraidWord(2, (1, 1))).entries
    ((0, 1), (1, 0))
    """
    labels = components(braid)
    r = max(labels)
    halves = [[Fraction(0)] * r for _ in range(r)]
    occupant = list(range(braid.strands))
    for k in braid.letters:
        a = abs(k) - 1
        ca, cb = labels[occupant[a]] - 1, labels[occupant[a + 1]] - 1
        if ca != cb:
            sign = Fraction(1 if k > 0 else -1, 2)
            halves[ca][cb] += sign
            halves[cb][ca] += sign
        occupant[a], occupant[a + 1] = occupant[a + 1], occupant[a]
    for i in range(r):
        for j in range(r):
            if halves[i][j].denominator != 1:
                raise MalformedBraidError(
                    f"odd crossing count between components {i + 1} and {j + 1}"
                )
    return LinkingMatrix(tuple(tuple(int(x) for x in row) for row in halves))


def _substitute(word: Sequence[int], images: dict[int, tuple[int, ...]]) -> list[int]:
    out: list[int] = []
    for g in word:
        img = images.get(abs(g))
        if img is None:
            out.append(g)
        elif g > 0:
            out.extend(img)
        else:
            out.extend(-h for h in reversed(img))
    return free_reduce(out)


def artin_action(braid: BraidWord) -> list[list[int]]:
    """Images of x_1..x_n under the Artin automorphism of the braid.

    Letters act left to right: the automorphism of the first letter is
    applied to the generators, then the second letter's substitution is
    applied to the result, and so on.
    """
    images = [[j] for j in range(1, braid.strands + 1)]
    for k in braid.letters:
        i = abs(k)
        if k > 0:
            sub = {i: (i, i + 1, -i), i + 1: (i,)}
        else:
            sub = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
        images = [_substitute(w, sub) for w in images]
    return images


def artin_presentation(braid: BraidWord, drop: int | None = None) -> Presentation:
    """Presentation of pi_1 of the closure complement.

    Generators are the meridians x_1..x_n of the strands at the top of the
    braid; relators are beta(x_j) x_j^-1 for every j except ``drop``
    (default: the last one, n).

    >>> artin_presentation(BraidWord(2, (1, 1))).relators
    ((1, 2, 1, -2, -1, -1),)
    """
    n = braid.strands
    if drop is None:
        drop = n
    if not 1 <= drop <= n:
        raise ValueError(f"relator index {drop} out of range 1..{n}")
    images = artin_action(braid)
    relators = tuple(
        tuple(free_reduce(images[j - 1] + [-j])) for j in range(1, n + 1) if j != drop
    )
    labels = components(braid)
    return Presentation(n, labels, relators)


def delete_component(braid: BraidWord, component: int) -> BraidWord:
    """Remove every strand of one component and reindex the rest.

    >>> delete_component(BraidWord(2, (1, 1)), 1)
    BraidWord(strands=1, letters=())
    """
    labels = components(braid)
    r = max(labels)
    if not 1 <= component <= r:
        raise InvalidComponentError(f"component {component} is not among 1..{r}")
    if r == 1:
        raise ComponentUnderflowError("cannot delete the only component of a knot")
    deleted = {s for s, c in enumerate(labels) if c == component}
    occupant = list(range(braid.strands))
    letters = []
    for k in braid.letters:
        a = abs(k) - 1
        if occupant[a] not in deleted and occupant[a + 1] not in deleted:
            new_pos = sum(1 for p in range(a) if occupant[p] not in deleted)
            letters.append((new_pos + 1) * (1 if k > 0 else -1))
        occupant[a], occupant[a + 1] = occupant[a + 1], occupant[a]
    return BraidWord(braid.strands - len(deleted), tuple(letters))
