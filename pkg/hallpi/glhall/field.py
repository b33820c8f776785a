from __future__ import annotations

import itertools
from typing import *

from loguru import logger
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from ..utils import InvalidInputError

Matrix = tuple[tuple[int, ...], ...]

# Fields up to this order get exp/log lookup tables; larger ones use polynomial arithmetic.
LUT_LIMIT = 2**16


class GaloisField:
    """F_{p^k} as F_p[x]/(f), elements encoded as integers.

    An element sum(c_i x^i) is the integer sum(c_i p^i), so the prime subfield is
    0, 1, ..., p - 1 and integer literals below p can be used directly. The modulus f is the
    first monic irreducible polynomial (lexicographic in its coefficients) whose root x
    generates the multiplicative group, unless one is given.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not isprime(p):
            raise InvalidInputError(f"{p} is not a prime")
        if k < 1:
            raise InvalidInputError(f"field degree must be positive, got {k}")

        self.p = p
        self.k = k
        self.order = p**k

        if modulus is None:
            self.modulus = self._find_modulus()
        else:
            self.modulus = [int(c) % p for c in modulus]
            if len(self.modulus) != k + 1 or self.modulus[0] != 1:
                raise InvalidInputError(f"modulus must be monic of degree {k}")
            if not gf_irreducible_p(self.modulus, p, ZZ):
                raise InvalidInputError(f"modulus {self.modulus} is not irreducible over F_{p}")
            if not self._is_primitive(self.modulus):
                raise InvalidInputError(f"x does not generate F_{self.order}^* modulo {self.modulus}")

        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.order <= LUT_LIMIT:
            self._build_tables()

        logger.debug(f"GF({p}^{k}) with modulus {self.modulus}")

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaloisField):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, tuple(self.modulus)))

    def _is_primitive(self, f: list[int]) -> bool:
        if self.k == 1:
            return True
        x = [1, 0]
        for ell in factorint(self.order - 1):
            if gf_pow_mod(x, (self.order - 1) // ell, f, self.p, ZZ) == [1]:
                return False
        return True

    def _find_modulus(self) -> list[int]:
        if self.k == 1:
            return [1, 0]
        for tail in itertools.product(range(self.p), repeat=self.k):
            f = [1, *tail]
            if f[-1] == 0:
                continue
            if gf_irreducible_p(f, self.p, ZZ) and self._is_primitive(f):
                return f
        raise InvalidInputError(f"no primitive polynomial of degree {self.k} over F_{self.p}")

    @property
    def generator(self) -> int:
        """A generator of the multiplicative group: x itself, or a primitive root when k = 1."""
        if self.k > 1:
            return self.p
        if self.p == 2:
            return 1
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // ell, self.p) != 1 for ell in factorint(self.p - 1)):
                return g
        raise AssertionError("unreachable")

    def _build_tables(self) -> None:
        size = self.order - 1
        exp = [0] * size
        log = [0] * self.order
        g, value = self.generator, 1
        for i in range(size):
            exp[i] = value
            log[value] = i
            value = self._poly_mul(value, g)
        self._exp, self._log = exp, log

    # Polynomial encoding: sympy's dense lists, leading coefficient first.
    def to_poly(self, a: int) -> list[int]:
        digits = []
        while a:
            a, c = divmod(a, self.p)
            digits.append(c)
        return digits[::-1]

    def from_poly(self, f: Sequence[int]) -> int:
        value = 0
        for c in f:
            value = value * self.p + int(c) % self.p
        return value

    def _poly_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        product = gf_mul(self.to_poly(a), self.to_poly(b), self.p, ZZ)
        return self.from_poly(gf_rem(product, self.modulus, self.p, ZZ))

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise InvalidInputError(f"{a} is not an element of {self!r}")
        return a

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_poly(gf_add(self.to_poly(a), self.to_poly(b), self.p, ZZ))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_poly([-c for c in self.to_poly(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None and self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._poly_mul(a, b)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        if self._log is not None and self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        n %= self.order - 1
        if self.k == 1:
            return pow(a, n, self.p)
        return self.from_poly(gf_pow_mod(self.to_poly(a), n, self.modulus, self.p, ZZ))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def frobenius(self, a: int, power: int = 1) -> int:
        """a -> a^(p^power)."""
        return self.pow(a, self.p**power)

    def log(self, a: int) -> int:
        if a == 0:
            raise InvalidInputError("0 has no discrete logarithm")
        if self._log is not None:
            return self._log[a]
        g, value = self.generator, 1
        for i in range(self.order - 1):
            if value == a:
                return i
            value = self.mul(value, g)
        raise AssertionError("unreachable")

    def element_order(self, a: int) -> int:
        if a == 0:
            raise InvalidInputError("0 has no multiplicative order")
        n = self.order - 1
        for ell, e in factorint(n).items():
            for _ in range(e):
                if self.pow(a, n // ell) != 1:
                    break
                n //= ell
        return n

    def element_of_order(self, d: int) -> int:
        if d < 1 or (self.order - 1) % d:
            raise InvalidInputError(f"{self!r} has no element of order {d}")
        return self.pow(self.generator, (self.order - 1) // d)

    def subfield(self, degree: int) -> list[int]:
        """Elements of the subfield F_{p^degree}, i.e. the fixed points of a -> a^(p^degree)."""
        if self.k % degree:
            raise InvalidInputError(f"F_{self.p}^{degree} is not a subfield of {self!r}")
        if degree == self.k:
            return list(self.elements())
        step = (self.order - 1) // (self.p**degree - 1)
        return [0] + [self.pow(self.generator, step * i) for i in range(self.p**degree - 1)]

    # Matrices are tuples of row tuples.
    def identity(self, n: int) -> Matrix:
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def diagonal(self, entries: Sequence[int]) -> Matrix:
        n = len(entries)
        return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))

    def mat_mul(self, a: Matrix, b: Matrix) -> Matrix:
        columns = tuple(zip(*b))
        rows = []
        for row in a:
            out = []
            for column in columns:
                total = 0
                for x, y in zip(row, column):
                    if x and y:
                        total = self.add(total, self.mul(x, y))
                out.append(total)
            rows.append(tuple(out))
        return tuple(rows)

    def mat_pow(self, a: Matrix, n: int) -> Matrix:
        if n < 0:
            a, n = self.mat_inv(a), -n
        result = self.identity(len(a))
        while n:
            if n & 1:
                result = self.mat_mul(result, a)
            a = self.mat_mul(a, a)
            n >>= 1
        return result

    def mat_map(self, a: Matrix, func: Callable[[int], int]) -> Matrix:
        return tuple(tuple(func(x) for x in row) for row in a)

    @staticmethod
    def transpose(a: Matrix) -> Matrix:
        return tuple(zip(*a))

    def _row_reduce(self, a: Matrix, augment: Matrix | None = None) -> tuple[int, list[list[int]]]:
        """Gauss-Jordan elimination; returns (determinant, reduced rows)."""
        n = len(a)
        rows = [list(row) + (list(augment[i]) if augment else []) for i, row in enumerate(a)]
        det = 1
        for col in range(n):
            pivot = next((i for i in range(col, n) if rows[i][col]), None)
            if pivot is None:
                return 0, rows
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = self.neg(det)
            lead = rows[col][col]
            det = self.mul(det, lead)
            scale = self.inv(lead)
            rows[col] = [self.mul(scale, x) for x in rows[col]]
            for i in range(n):
                if i != col and rows[i][col]:
                    factor = rows[i][col]
                    rows[i] = [self.sub(x, self.mul(factor, y)) for x, y in zip(rows[i], rows[col])]
        return det, rows

    def det(self, a: Matrix) -> int:
        return self._row_reduce(a)[0]

    def mat_inv(self, a: Matrix) -> Matrix:
        n = len(a)
        det, rows = self._row_reduce(a, self.identity(n))
        if det == 0:
            raise InvalidInputError("matrix is singular")
        return tuple(tuple(row[n:]) for row in rows)

    def is_identity(self, a: Matrix) -> bool:
        return a == self.identity(len(a))

    def matrix_order(self, a: Matrix, bound: int | None = None) -> int:
        """Order of an invertible matrix by repeated multiplication."""
        identity, power, n = self.identity(len(a)), a, 1
        while power != identity:
            power = self.mat_mul(power, a)
            n += 1
            if bound is not None and n > bound:
                raise InvalidInputError(f"matrix order exceeds {bound}")
        return n
