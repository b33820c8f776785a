from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import *

from sympy import factorint, isprime

from ..utils import InvalidInputError, NonSimpleGroupError


class Twist(Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Twist.PLUS else -1

    @classmethod
    def parse(cls, text: str) -> Twist:
        text = text.strip()
        if text in ("+", "+1", "plus", "GL"):
            return cls.PLUS
        if text in ("-", "-1", "minus", "GU"):
            return cls.MINUS
        raise InvalidInputError(f"Twist must be '+' or '-', got {text!r}")


class Family(Enum):
    A = "A"
    TWISTED_A = "2A"
    B = "B"
    C = "C"
    D = "D"
    TWISTED_D = "2D"
    TRIALITY_D4 = "3D4"
    G2 = "G2"
    F4 = "F4"
    E6 = "E6"
    TWISTED_E6 = "2E6"
    E7 = "E7"
    E8 = "E8"
    SUZUKI = "2B2"
    REE_G2 = "2G2"
    REE_F4 = "2F4"

    @property
    def fixed_rank(self) -> int | None:
        return FIXED_RANKS.get(self)

    @property
    def min_rank(self) -> int:
        return MIN_RANKS.get(self, 1)

    @property
    def ambient(self) -> Family:
        """The untwisted family whose Weyl group is used for a twisted family."""
        return AMBIENT_FAMILIES.get(self, self)

    @property
    def twisted(self) -> bool:
        return self.ambient is not self

    @property
    def suzuki_ree(self) -> bool:
        return self in (Family.SUZUKI, Family.REE_G2, Family.REE_F4)

    @property
    def classical(self) -> bool:
        return self in (
            Family.A,
            Family.TWISTED_A,
            Family.B,
            Family.C,
            Family.D,
            Family.TWISTED_D,
        )

    @classmethod
    def parse(cls, text: str) -> Family:
        key = text.strip().translate(SUPERSCRIPT_TO_ASCII).replace("_", "")
        for family in cls:
            if family.value.lower() == key.lower():
                return family
        raise InvalidInputError(f"Unknown Lie-type family {text!r}")


SUPERSCRIPT_TO_ASCII = str.maketrans("²³₂₄₆₇₈", "2324678")

FIXED_RANKS: dict[Family, int] = {
    Family.TRIALITY_D4: 4,
    Family.G2: 2,
    Family.F4: 4,
    Family.E6: 6,
    Family.TWISTED_E6: 6,
    Family.E7: 7,
    Family.E8: 8,
    Family.SUZUKI: 2,
    Family.REE_G2: 2,
    Family.REE_F4: 4,
}

MIN_RANKS: dict[Family, int] = {
    Family.A: 1,
    Family.TWISTED_A: 2,
    Family.B: 2,
    Family.C: 2,
    Family.D: 4,
    Family.TWISTED_D: 4,
}

AMBIENT_FAMILIES: dict[Family, Family] = {
    Family.TWISTED_A: Family.A,
    Family.TWISTED_D: Family.D,
    Family.TRIALITY_D4: Family.D,
    Family.TWISTED_E6: Family.E6,
    Family.SUZUKI: Family.B,
    Family.REE_G2: Family.G2,
    Family.REE_F4: Family.F4,
}

SUZUKI_REE_CHARACTERISTIC: dict[Family, int] = {
    Family.SUZUKI: 2,
    Family.REE_G2: 3,
    Family.REE_F4: 2,
}

# (family, rank, q) triples that do not name a simple group.
NON_SIMPLE: dict[tuple[Family, int, int], str] = {
    (Family.A, 1, 2): "A1(2) is isomorphic to Sym(3)",
    (Family.A, 1, 3): "A1(3) is isomorphic to Alt(4)",
    (Family.TWISTED_A, 2, 2): "2A2(2) is solvable of order 72",
    (Family.B, 2, 2): "B2(2) is isomorphic to Sym(6); its derived subgroup is Alt(6) = A1(9)",
    (Family.C, 2, 2): "C2(2) is isomorphic to Sym(6); its derived subgroup is Alt(6) = A1(9)",
    (Family.G2, 2, 2): "G2(2) is isomorphic to 2A2(3):2; its derived subgroup is 2A2(3)",
    (Family.SUZUKI, 2, 2): "2B2(2) is a Frobenius group of order 20",
    (Family.REE_G2, 2, 3): "2G2(3) is isomorphic to A1(8):3; its derived subgroup is A1(8)",
    (Family.REE_F4, 4, 2): "2F4(2) is not simple; its derived subgroup (the Tits group) is not modelled",
}


def parse_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m into (p, m); raises if q is not a prime power."""
    if q < 2:
        raise InvalidInputError(f"{q} is not a prime power")

    factors = factorint(q)
    if len(factors) != 1:
        raise InvalidInputError(f"{q} is not a prime power")

    ((p, m),) = factors.items()
    return int(p), int(m)


@dataclass(frozen=True)
class GLSpec:
    """GL_n^eta(q) with q = p^m; eta = MINUS names the unitary group GU_n(q)."""

    n: int
    eta: Twist
    p: int
    m: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"n must be positive, got {self.n}")
        if not isprime(self.p):
            raise InvalidInputError(f"{self.p} is not a prime")
        if self.m < 1:
            raise InvalidInputError(f"m must be positive, got {self.m}")

    @classmethod
    def of(cls, n: int, eta: Twist | str, q: int) -> GLSpec:
        eta = eta if isinstance(eta, Twist) else Twist.parse(eta)
        p, m = parse_prime_power(q)
        return cls(n=n, eta=eta, p=p, m=m)

    @classmethod
    def parse(cls, tokens: Sequence[str] | str) -> GLSpec:
        """Parse "n sign q", e.g. "3 + 11" or ["3", "-", "4"]."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        if len(tokens) != 3:
            raise InvalidInputError(f"GL descriptor needs 'n sign q', got {tokens!r}")

        n, eta, q = tokens
        try:
            return cls.of(int(n), eta, int(q))
        except ValueError as e:
            if isinstance(e, InvalidInputError):
                raise
            raise InvalidInputError(f"Malformed GL descriptor {tokens!r}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def sign(self) -> int:
        return self.eta.sign

    @property
    def q_minus_eta(self) -> int:
        return self.q - self.sign

    @property
    def name(self) -> str:
        return f"GL{self.n}({self.q})" if self.eta is Twist.PLUS else f"GU{self.n}({self.q})"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SimpleGroupSpec:
    """A finite simple group of Lie type: family, rank parameter l, and q = p^m.

    For the Suzuki and Ree families, m must be odd and p is fixed (2 or 3).
    Parameters naming a non-simple group raise NonSimpleGroupError.
    """

    family: Family
    rank: int
    p: int
    m: int = 1

    def __post_init__(self) -> None:
        fixed = self.family.fixed_rank
        if fixed is not None and self.rank != fixed:
            raise InvalidInputError(
                f"{self.family.value} has fixed rank {fixed}, got {self.rank}"
            )
        if self.rank < self.family.min_rank:
            raise InvalidInputError(
                f"{self.family.value} requires rank >= {self.family.min_rank}, got {self.rank}"
            )
        if not isprime(self.p):
            raise InvalidInputError(f"{self.p} is not a prime")
        if self.m < 1:
            raise InvalidInputError(f"m must be positive, got {self.m}")

        if self.family.suzuki_ree:
            char = SUZUKI_REE_CHARACTERISTIC[self.family]
            if self.p != char or self.m % 2 == 0:
                raise InvalidInputError(
                    f"{self.family.value}(q) requires q = {char}^(2k+1), got {self.q}"
                )

        reason = NON_SIMPLE.get((self.family, self.rank, self.q))
        if reason is not None:
            raise NonSimpleGroupError(reason)

    @classmethod
    def of(cls, family: Family | str, q: int, rank: int | None = None) -> SimpleGroupSpec:
        family = family if isinstance(family, Family) else Family.parse(family)
        if rank is None:
            rank = family.fixed_rank
            if rank is None:
                raise InvalidInputError(f"{family.value} needs an explicit rank")

        p, m = parse_prime_power(q)
        return cls(family=family, rank=rank, p=p, m=m)

    @classmethod
    def parse(cls, text: str | Sequence[str]) -> SimpleGroupSpec:
        """Parse "family rank q" (e.g. "A 1 7", "2A 2 4") or "family q" for fixed-rank families."""
        tokens = text.split() if isinstance(text, str) else list(text)

        try:
            if len(tokens) == 3:
                return cls.of(tokens[0], int(tokens[2]), rank=int(tokens[1]))
            if len(tokens) == 2:
                return cls.of(tokens[0], int(tokens[1]))
        except ValueError as e:
            if isinstance(e, InvalidInputError):
                raise
            raise InvalidInputError(f"Malformed group descriptor {text!r}")

        raise InvalidInputError(f"Malformed group descriptor {text!r}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def n(self) -> int:
        """The dimension parameter used by the conditions: A_{n-1}, 2A_{n-1}, B_n, C_n, D_n, 2D_n."""
        if self.family in (Family.A, Family.TWISTED_A):
            return self.rank + 1
        return self.rank

    @property
    def eta(self) -> Twist:
        if self.family in (Family.TWISTED_A, Family.TWISTED_D, Family.TWISTED_E6):
            return Twist.MINUS
        return Twist.PLUS

    @property
    def name(self) -> str:
        if self.family.fixed_rank is not None:
            return f"{self.family.value}({self.q})"
        return f"{self.family.value}{self.rank}({self.q})"

    def descriptor(self) -> str:
        return f"{self.family.value} {self.rank} {self.q}"

    def __str__(self) -> str:
        return self.name
