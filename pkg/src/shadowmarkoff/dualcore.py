"""Exact dual-number arithmetic and the shadow Markoff mutation.

A dual number is ``a + alpha*eps`` with ``eps**2 == 0``.  Both parts are kept
as :class:`fractions.Fraction`, which is always reduced with a positive
denominator, so componentwise equality is mathematical equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: ``0.9`` is not ``9/10``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """``p`` when the denominator is 1, otherwise ``p/q``."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DualRational:
    body: Fraction
    shadow: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "body", as_rational(self.body))
        object.__setattr__(self, "shadow", as_rational(self.shadow))

    def __add__(self, other: "DualRational") -> "DualRational":
        return dual_add(self, other)

    def __sub__(self, other: "DualRational") -> "DualRational":
        return DualRational(self.body - other.body, self.shadow - other.shadow)

    def __mul__(self, other: "DualRational") -> "DualRational":
        return dual_mul(self, other)

    def __truediv__(self, other: "DualRational") -> "DualRational":
        if other.body == 0:
            raise ZeroDivisionError("dual number with zero body is not invertible")
        # (a + alpha eps) / (b + beta eps) = a/b + (alpha b - a beta)/b^2 eps
        return DualRational(
            self.body / other.body,
            (self.shadow * other.body - self.body * other.shadow) / other.body ** 2,
        )

    def __repr__(self) -> str:
        return f"DualRational({format_rational(self.body)}, {format_rational(self.shadow)})"


def dual_add(x: DualRational, y: DualRational) -> DualRational:
    return DualRational(x.body + y.body, x.shadow + y.shadow)


def dual_mul(x: DualRational, y: DualRational) -> DualRational:
    # the eps**2 term vanishes
    return DualRational(x.body * y.body, x.body * y.shadow + y.body * x.shadow)


@dataclass(frozen=True)
class ShadowTriple:
    first: DualRational
    second: DualRational
    third: DualRational

    @classmethod
    def from_parts(cls, bodies, shadows) -> "ShadowTriple":
        return cls(*(DualRational(b, s) for b, s in zip(bodies, shadows, strict=True)))

    @property
    def entries(self) -> Tuple[DualRational, DualRational, DualRational]:
        return (self.first, self.second, self.third)

    @property
    def bodies(self) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(e.body for e in self.entries)

    @property
    def shadows(self) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(e.shadow for e in self.entries)


@dataclass(frozen=True)
class Sigma:
    value: Fraction


def sigma_of_root(alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> Sigma:
    """Sum of the root shadows, the constant of the deformed equation."""
    return Sigma(as_rational(alpha) + as_rational(beta) + as_rational(gamma))


def check_shadow_equation(t: ShadowTriple, sigma: Sigma) -> bool:
    """Test ``A^2 + B^2 + C^2 == (3 - sigma*eps) * A*B*C`` in the dual algebra."""
    A, B, C = t.entries
    lhs = A * A + B * B + C * C
    rhs = DualRational(3, -sigma.value) * A * B * C
    return lhs == rhs


def classical_mutate(t: Tuple[int, int, int], slot: int) -> Tuple[int, int, int]:
    """Replace entry ``slot`` (1-based) of an integer triple by (b^2 + c^2)/a."""
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot}")
    i = slot - 1
    a = t[i]
    if a == 0:
        raise ZeroDivisionError("cannot mutate at a zero entry")
    b, c = (t[j] for j in range(3) if j != i)
    q, r = divmod(b * b + c * c, a)
    if r:
        raise ArithmeticError(f"mutation of {t} at slot {slot} is not integral")
    out = list(t)
    out[i] = q
    return tuple(out)


def mutate_at(t: ShadowTriple, slot: int) -> ShadowTriple:
    """Pure (non-permuting) dual mutation at ``slot`` (1-based)."""
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot}")
    i = slot - 1
    entries = list(t.entries)
    a, alpha = entries[i].body, entries[i].shadow
    if a == 0:
        raise ZeroDivisionError("cannot mutate at a zero body")
    (b, beta), (c, gamma) = ((e.body, e.shadow) for j, e in enumerate(entries) if j != i)
    a_new = (b * b + c * c) / a
    alpha_new = (-a_new * alpha + 2 * b * beta + 2 * c * gamma) / a
    entries[i] = DualRational(a_new, alpha_new)
    return ShadowTriple(*entries)
