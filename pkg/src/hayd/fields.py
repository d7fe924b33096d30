"""Exact ground fields: the rationals and prime fields F_p.

Scalars are plain Python values: ``fractions.Fraction`` over the rationals
(always reduced, positive denominator) and ``int`` residues in [0, p) over a
prime field.  All arithmetic goes through a Field instance so the rest of the
package never touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldError

RATIONALS = "rationals"
PRIME = "prime-field"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A ground field specification plus its scalar arithmetic."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise FieldError("rationals take no characteristic")
        elif self.kind == PRIME:
            if self.p is None or not is_prime(self.p):
                raise FieldError(f"characteristic {self.p!r} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    def __str__(self):
        return "Q" if self.kind == RATIONALS else f"F_{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def coerce(self, x):
        """Turn an int, Fraction, or 'a/b' string into a normalized scalar."""
        if self.kind == RATIONALS:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, str):
                try:
                    return Fraction(x)
                except (ValueError, ZeroDivisionError) as exc:
                    raise FieldError(f"bad rational literal {x!r}") from exc
            raise FieldError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, str):
            try:
                x = int(x)
            except ValueError as exc:
                raise FieldError(f"bad integer literal {x!r}") from exc
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise FieldError(f"cannot coerce {x} into {self}")
            x = x.numerator
        if not isinstance(x, int):
            raise FieldError(f"cannot coerce {x!r} into {self}")
        return x % self.p

    def add(self, a, b):
        return a + b if self.kind == RATIONALS else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == RATIONALS else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == RATIONALS else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == RATIONALS else (-a) % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise FieldError("division by zero")
        if self.kind == RATIONALS:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == self.one


def field_ops(field: Field, op: str, a, b=None):
    """Dispatch a named scalar operation: add, mul, neg, or inv."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise FieldError(f"unknown scalar operation {op!r}")


_RAT = Field(RATIONALS)
_PRIME_CACHE: dict[int, Field] = {}


def rationals() -> Field:
    return _RAT


def prime_field(p: int) -> Field:
    try:
        return _PRIME_CACHE[p]
    except KeyError:
        f = Field(PRIME, p)
        _PRIME_CACHE[p] = f
        return f
