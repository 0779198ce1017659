"""Branches of plane curve germs and their intersection multiplicities.

The linking number of the knots of two branches equals their intersection
multiplicity at the origin, which is the s-adic valuation of one branch's
equation evaluated along a parametrization of the other.  This gives an
independent route to the linking matrix read off from a braid.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .braid import LinkingMatrix
from .cyclotomic import as_exponent
from .errors import InsufficientTruncationError, NonReducedInputError

__all__ = [
    "Branch",
    "Parametrization",
    "intersection_multiplicity",
    "linking_matrix_from_branches",
]

Series = dict  # exponent -> Fraction


@dataclass(frozen=True)
class Parametrization:
    """(x(s), y(s)) known exactly modulo s^trunc."""

    x: tuple[tuple[Fraction, int], ...]
    y: tuple[tuple[Fraction, int], ...]
    trunc: int

    def __post_init__(self):
        for name in ("x", "y"):
            terms = tuple((as_exponent(c), int(e)) for c, e in getattr(self, name))
            object.__setattr__(self, name, terms)
            if any(e < 1 for c, e in terms if c):
                raise ValueError(f"{name}(s) must vanish at s = 0")
        exps = [e for c, e in self.x + self.y if c]
        if not exps:
            raise ValueError("parametrization is constant")
        if gcd(*exps) != 1:
            raise ValueError(f"parametrization is not primitive (exponent gcd {gcd(*exps)})")
        if self.trunc < 1:
            raise ValueError("truncation order must be positive")

    def series(self, name: str) -> Series:
        out: Series = defaultdict(Fraction)
        for c, e in getattr(self, name):
            out[e] += c
        return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class Branch:
    """One irreducible branch: an equation, a parametrization, or both."""

    poly: tuple[tuple[Fraction, int, int], ...] | None = None
    param: Parametrization | None = None
    name: str = ""

    def __post_init__(self):
        if self.poly is None and self.param is None:
            raise ValueError("a branch needs an equation or a parametrization")
        if self.poly is not None:
            terms = tuple((as_exponent(c), int(i), int(j)) for c, i, j in self.poly)
            if any(i < 0 or j < 0 for _, i, j in terms):
                raise ValueError("monomial exponents must be non-negative")
            if any(c and i == j == 0 for c, i, j in terms):
                raise ValueError("equation must vanish at the origin")
            object.__setattr__(self, "poly", terms)

    @classmethod
    def from_json(cls, data: dict) -> Branch:
        poly = data.get("poly")
        param = data.get("param")
        if poly is not None:
            poly = tuple(tuple(m) for m in poly)
        if param is not None:
            param = Parametrization(
                tuple(tuple(t) for t in param["x"]),
                tuple(tuple(t) for t in param["y"]),
                int(param["trunc"]),
            )
        return cls(poly, param, str(data.get("name", "")))

    def to_json(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        if self.poly is not None:
            out["poly"] = [[_num(c), i, j] for c, i, j in self.poly]
        if self.param is not None:
            out["param"] = {
                "x": [[_num(c), e] for c, e in self.param.x],
                "y": [[_num(c), e] for c, e in self.param.y],
                "trunc": self.param.trunc,
            }
        return out


def _num(c: Fraction):
    return c.numerator if c.denominator == 1 else str(c)


def _mul(a: Series, b: Series) -> Series:
    out: Series = defaultdict(Fraction)
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return {e: c for e, c in out.items() if c}


def _power(a: Series, k: int, cache: dict) -> Series:
    if k not in cache:
        cache[k] = _mul(_power(a, k - 1, cache), a)
    return cache[k]


def compose(poly: Sequence[tuple[Fraction, int, int]], param: Parametrization) -> Series:
    """f(x(s), y(s)) for the polynomial parts of the parametrization, exactly."""
    xs, ys = {0: {0: Fraction(1)}}, {0: {0: Fraction(1)}}
    xs[1], ys[1] = param.series("x"), param.series("y")
    out: Series = defaultdict(Fraction)
    for c, i, j in poly:
        for e, v in _mul(_power(xs[1], i, xs), _power(ys[1], j, ys)).items():
            out[e] += c * v
    return {e: v for e, v in out.items() if v}


def intersection_multiplicity(a: Branch, b: Branch) -> int:
    """ord_s f_a(x_b(s), y_b(s)).

    >>> line = Branch(poly=((1, 0, 1),))
    >>> cusp = Branch(param=Parametrization(((1, 2),), ((1, 3),), 10))
    >>> intersection_multiplicity(line, cusp)
    3
    """
    if a.poly is None:
        raise ValueError("first branch needs an equation")
    if b.param is None:
        raise ValueError("second branch needs a parametrization")
    composed = compose(a.poly, b.param)
    if not composed:
        raise NonReducedInputError("the parametrized branch lies on the other branch")
    v = min(composed)
    if v >= b.param.trunc:
        raise InsufficientTruncationError(
            f"valuation {v} is not below the truncation order {b.param.trunc}"
        )
    return v


def _pair_multiplicity(bi: Branch, bj: Branch) -> int:
    if bi.poly is not None and bj.param is not None:
        return intersection_multiplicity(bi, bj)
    if bj.poly is not None and bi.param is not None:
        return intersection_multiplicity(bj, bi)
    raise ValueError("need an equation for one branch and a parametrization for the other")


def linking_matrix_from_branches(branches: Sequence[Branch]) -> LinkingMatrix:
    """Pairwise intersection multiplicities as a linking matrix."""
    r = len(branches)
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            rows[i][j] = rows[j][i] = _pair_multiplicity(branches[i], branches[j])
    return LinkingMatrix(tuple(map(tuple, rows)))
