"""Exact arithmetic in cyclotomic fields Q(zeta_N) and exact matrix rank.

An element of Q(zeta_N) is stored as the unique polynomial of degree
< phi(N) representing it modulo the N-th cyclotomic polynomial.  Elements
of different conductors are compared and combined after embedding both into
Q(zeta_L), L = lcm of the conductors, using zeta_N = zeta_L^(L/N).

    >>> z = root_of_unity(Fraction(1, 3))
    >>> z * z * z == 1
    True
    >>> root_of_unity(Fraction(1, 4)) + root_of_unity(Fraction(3, 4)) == 0
    True
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import InvalidExponentError

__all__ = [
    "CycScalar",
    "CycMatrix",
    "as_exponent",
    "cyclotomic_polynomial",
    "euler_phi",
    "rank",
    "root_of_unity",
]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod(num: list, den: Sequence) -> tuple[list, list]:
    """Long division of coefficient lists (lowest degree first) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
        assert not any(rem)
    return tuple(int(c) for c in poly)


def as_exponent(value) -> Fraction:
    """Coerce an exponent (int, Fraction, "a/b" string or (a, b) pair) to a Fraction.

    Floats are refused: characters must be torsion and exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidExponentError(f"exponent must be an exact rational, got {value!r}")
    try:
        if isinstance(value, tuple):
            num, den = value
            if den == 0:
                raise ZeroDivisionError
            return Fraction(num, den)
        if isinstance(value, (Rational, str)):
            return Fraction(value)
    except ZeroDivisionError:
        raise InvalidExponentError(f"exponent {value!r} has zero denominator") from None
    except ValueError as exc:
        raise InvalidExponentError(f"cannot parse exponent {value!r}") from exc
    raise InvalidExponentError(f"exponent must be an exact rational, got {value!r}")


@dataclass(frozen=True, eq=False)
class CycScalar:
    """An element of Q(zeta_N) given by its residue modulo Phi_N."""

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError(f"conductor must be positive, got {self.conductor}")
        if len(self.coeffs) != euler_phi(self.conductor):
            raise ValueError(
                f"Q(zeta_{self.conductor}) needs {euler_phi(self.conductor)} "
                f"coefficients, got {len(self.coeffs)}"
            )

    __hash__ = None  # equality is across conductors; no canonical hash

    @classmethod
    def from_poly(cls, conductor: int, poly: Iterable) -> CycScalar:
        """Reduce an arbitrary polynomial in zeta_N modulo Phi_N."""
        phi = cyclotomic_polynomial(conductor)
        _, rem = _poly_divmod([Fraction(c) for c in poly], phi)
        rem = rem + [Fraction(0)] * (len(phi) - 1 - len(rem))
        return cls(conductor, tuple(rem))

    @classmethod
    def from_powers(cls, conductor: int, powers: dict[int, int | Fraction]) -> CycScalar:
        """The element sum c_k zeta_N^k for a mapping {k: c_k}."""
        poly = [0] * conductor
        for k, c in powers.items():
            poly[k % conductor] += c
        return cls.from_poly(conductor, poly)

    @classmethod
    def rational(cls, value, conductor: int = 1) -> CycScalar:
        deg = euler_phi(conductor)
        return cls(conductor, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def zeta(cls, conductor: int) -> CycScalar:
        return cls.from_powers(conductor, {1: 1})

    def embed(self, conductor: int) -> CycScalar:
        """Image in Q(zeta_M) for a multiple M of the current conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot embed Q(zeta_{self.conductor}) into Q(zeta_{conductor})")
        k = conductor // self.conductor
        poly = [Fraction(0)] * (k * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * k] = c
        return CycScalar.from_poly(conductor, poly)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def _coerce(self, other) -> tuple[CycScalar, CycScalar]:
        if not isinstance(other, CycScalar):
            if isinstance(other, float) or not isinstance(other, Rational):
                return NotImplemented
            other = CycScalar.rational(other, self.conductor)
        n = lcm(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycScalar(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycScalar(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if a.conductor <= 2:
            return CycScalar(a.conductor, (a.coeffs[0] * b.coeffs[0],))
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycScalar.from_poly(a.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        # invariant: s * self == r_prev (mod Phi_n)
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(n)], list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                break
            lead = r1[-1]
            quot, rem = _poly_divmod([c / lead for c in r0], [c / lead for c in r1])
            s_next = _poly_sub(s0, _poly_mul(quot, s1))
            r0, r1 = r1, [c * lead for c in rem]
            s0, s1 = s1, s_next
        c = r1[0]
        return CycScalar.from_poly(n, [x / c for x in s1])

    def __truediv__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, float) or not isinstance(other, Rational):
                return NotImplemented
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycScalar(self.conductor, tuple(c / other for c in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> CycScalar:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycScalar.rational(1, self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                coef = str(c) if (not mono or c != 1) else ""
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        body = " + ".join(terms) or "0"
        return f"CycScalar[{self.conductor}]({body})"


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]


def root_of_unity(q) -> CycScalar:
    """exp(2 pi i q) as an element of Q(zeta_d), d the reduced denominator of q."""
    q = as_exponent(q) % 1
    d = q.denominator
    return CycScalar.from_powers(d, {q.numerator: 1})


def multiplicative_order(q) -> int:
    """Order of exp(2 pi i q); equals the reduced denominator of q mod 1."""
    return (as_exponent(q) % 1).denominator


@dataclass(frozen=True)
class CycMatrix:
    """Dense matrix over Q(zeta_N), all entries sharing one conductor."""

    rows: int
    cols: int
    entries: tuple[tuple[CycScalar, ...], ...]
    conductor: int = 1

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> CycMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        n = 1
        for r in rows:
            for x in r:
                if isinstance(x, CycScalar):
                    n = lcm(n, x.conductor)
        grid = tuple(
            tuple(
                x.embed(n) if isinstance(x, CycScalar) else CycScalar.rational(x, n)
                for x in r
            )
            for r in rows
        )
        return cls(len(rows), cols, grid, n)

    def transpose(self) -> CycMatrix:
        grid = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return CycMatrix(self.cols, self.rows, grid, self.conductor)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def rank(matrix: CycMatrix | Sequence[Sequence]) -> int:
    """Exact rank over Q(zeta_N) by Bareiss fraction-free elimination.

    >>> rank(CycMatrix.from_rows([[1, 2], [2, 4]]))
    1
    """
    if not isinstance(matrix, CycMatrix):
        matrix = CycMatrix.from_rows(matrix)
    m = [list(r) for r in matrix.entries]
    nrows, ncols = matrix.rows, matrix.cols
    prev = CycScalar.rational(1, matrix.conductor)
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        prev_inv = prev.inverse()
        for i in range(r + 1, nrows):
            e = m[i][col]
            row_i, row_r = m[i], m[r]
            for j in range(col + 1, ncols):
                row_i[j] = (p * row_i[j] - e * row_r[j]) * prev_inv
            row_i[col] = CycScalar.rational(0, matrix.conductor)
        prev = p
        r += 1
    return r
