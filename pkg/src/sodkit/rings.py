"""Coefficient rings: the integers, the rationals, and prime fields.

A :class:`RingSpec` bundles the handful of element operations the rest of
the package needs (coercion, arithmetic, inversion).  Elements are plain
Python objects: ``int`` for ZZ and GF(p), ``Fraction`` for QQ.  Keeping
elements unboxed makes the dense loops in the matrix code cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of ZZ, QQ, or GF(p) for a prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        elif self.p is not None:
            raise ValueError("p is only meaningful for prime fields")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def label(self) -> str:
        if self.kind == "Z":
            return "ZZ"
        if self.kind == "Q":
            return "QQ"
        return f"F{self.p}"

    # -- element operations -------------------------------------------------

    def coerce(self, x):
        """Bring an int, Fraction, or same-ring element into canonical form."""
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                num = x.numerator % self.p
                den = x.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return num * pow(den, self.p - 2, self.p) % self.p
            return int(x) % self.p
        if self.kind == "Q":
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "Fp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "Fp" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "Fp" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero")
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        if self.kind == "Q":
            return 1 / Fraction(a)
        if a in (1, -1):
            return a
        raise ValueError(f"{a} is not a unit in ZZ")

    def div(self, a, b):
        return self.mul(a, self.inv(b)) if self.kind == "Fp" else self.coerce(Fraction(a) / Fraction(b))


ZZ = RingSpec("Z")
QQ = RingSpec("Q")


def GF(p: int) -> RingSpec:
    return RingSpec("Fp", p)


def ring_from_label(label: str) -> RingSpec:
    """Parse labels like ``QQ``, ``ZZ``, ``F2``, ``F101``."""
    s = label.strip().upper()
    if s in ("Q", "QQ"):
        return QQ
    if s in ("Z", "ZZ"):
        return ZZ
    if s.startswith("F") and s[1:].isdigit():
        return GF(int(s[1:]))
    raise ValueError(f"cannot parse ring label {label!r}")
