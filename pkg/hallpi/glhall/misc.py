from __future__ import annotations

import json
import operator
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import *

from cachetools import LRUCache, cachedmethod
from loguru import logger

from ..arith import PrimeSet
from ..orders import GLSpec, Twist
from ..utils import (
    CERTIFICATE_SCHEMA_VERSION,
    DEFAULT_MATRIX_ENUMERATION_BOUND,
    EnumerationBoundError,
    InvalidInputError,
    named_methodkey,
    resolve_bound,
)
from .field import GaloisField, Matrix


@dataclass(frozen=True)
class HallContext:
    """The regime data a construction was built from: n = dr + k, pi = {r} + tau."""

    item: str
    r: int
    tau: PrimeSet
    d: int
    k: int


class MatrixSubgroup:
    """A subgroup of GL_n(F) given by generators, enumerated lazily up to a bound."""

    def __init__(
        self,
        name: str,
        gl: GLSpec,
        field: GaloisField,
        generators: Iterable[Matrix],
        context: HallContext | None = None,
        bound: int | None = None,
    ):
        self.name = name
        self.gl = gl
        self.field = field
        self.generators = tuple(dict.fromkeys(generators))
        self.context = context
        self.bound = resolve_bound(bound, DEFAULT_MATRIX_ENUMERATION_BOUND)

        for g in self.generators:
            if len(g) != gl.n or any(len(row) != gl.n for row in g):
                raise InvalidInputError(f"{name}: generator is not {gl.n}x{gl.n}")

        self._cache: LRUCache = LRUCache(maxsize=16)
        self._exceeds_bound = False

    def __repr__(self) -> str:
        return f"MatrixSubgroup({self.name!r}, {self.gl}, gens={len(self.generators)})"

    @property
    def identity(self) -> Matrix:
        return self.field.identity(self.gl.n)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return self.field.mat_mul(a, b)

    @cachedmethod(operator.attrgetter("_cache"), key=named_methodkey("elements"))
    def elements(self) -> frozenset[Matrix]:
        """Closure of the generators by breadth-first right multiplication.

        Raises:
            EnumerationBoundError: when the closure grows past `self.bound`.
        """
        identity = self.identity
        seen = {identity}
        queue = deque([identity])

        while queue:
            current = queue.popleft()
            for g in self.generators:
                nxt = self.mul(current, g)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.bound:
                        raise EnumerationBoundError(
                            f"{self.name} in {self.gl} has more than {self.bound} elements"
                        )
                    queue.append(nxt)

        logger.debug(f"{self.name} in {self.gl}: enumerated {len(seen)} elements")

        return frozenset(seen)

    def try_elements(self) -> frozenset[Matrix] | None:
        if self._exceeds_bound:
            return None
        try:
            return self.elements()
        except EnumerationBoundError as e:
            logger.warning(str(e))
            self._exceeds_bound = True
            return None

    @property
    def verified(self) -> bool:
        """Whether the closure has been (or can be) enumerated within the bound."""
        return self.try_elements() is not None

    @property
    def order(self) -> int | None:
        elements = self.try_elements()
        return len(elements) if elements is not None else None

    def __contains__(self, matrix: Matrix) -> bool:
        return matrix in self.elements()

    def commutes_with(self, other: MatrixSubgroup) -> bool:
        """Generator-wise commuting check, which suffices for elementwise commuting."""
        return all(
            self.mul(a, b) == self.mul(b, a) for a in self.generators for b in other.generators
        )

    def is_normalized_by(self, other: MatrixSubgroup) -> bool:
        """Whether every generator of `other` conjugates this subgroup into itself."""
        elements = self.elements()
        for x in other.generators:
            x_inv = self.field.mat_inv(x)
            for g in self.generators:
                if self.mul(self.mul(x_inv, g), x) not in elements:
                    return False
        return True


@dataclass(frozen=True)
class CentralizerReport:
    gl: str
    order: int
    expected_order: int
    tau_ranks: dict[int, int]
    expected_rank: int
    contains_r: bool
    structure: str

    @property
    def matches(self) -> bool:
        return (
            self.contains_r
            and self.order == self.expected_order
            and all(m == self.expected_rank for m in self.tau_ranks.values())
        )


@dataclass(frozen=True)
class WitnessCheck:
    """For one t in tau: the rank of K against the best t-rank among centralizers in TR."""

    t: int
    witness_rank: int
    witness_order: int
    witness_is_pi_group: bool
    max_centralizer_rank: int
    commuting: bool
    r1_frobenius_fixed: bool

    @property
    def certified(self) -> bool:
        return (
            self.commuting
            and self.witness_is_pi_group
            and self.max_centralizer_rank < self.witness_rank
        )


@dataclass(frozen=True)
class WitnessReport:
    gl: str
    pi: PrimeSet
    applicable: bool
    verified: bool = False
    item: str | None = None
    r: int | None = None
    d: int | None = None
    k: int | None = None
    hall_order: int | None = None
    order_r_elements: int = 0
    checks: tuple[WitnessCheck, ...] = ()
    reasons: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.applicable and self.verified and bool(self.checks) and all(
            c.certified for c in self.checks
        )

    @property
    def conclusion(self) -> str:
        if not self.applicable:
            return "not applicable: " + ", ".join(self.reasons)
        if not self.verified:
            return "partial: TR exceeds the enumeration bound"
        if self.certified:
            return "D_pi failure certified: KR1 embeds in no conjugate of TR"
        return "not certified"


@dataclass(frozen=True)
class FrobeniusReport:
    gl: str
    applicable: bool
    field_degree: int = 0
    trivial: bool = False
    t_normalized: bool = False
    r_fixed: bool = False
    reasons: tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return self.applicable and self.t_normalized and self.r_fixed


@dataclass(frozen=True)
class PsiReport:
    gl: str
    t: int
    applicable: bool
    psi_exponent: int | None = None
    k_fixed: bool = False
    r1_fixed: bool = False
    k_centralizes_r1: bool = False
    reasons: tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return self.applicable and self.k_fixed and self.k_centralizes_r1


class CertificateRecord(TypedDict):
    schema: str
    field: dict[str, Any]
    gl: dict[str, Any]
    name: str
    order: int | None
    verified: bool
    generators: list[list[list[int]]]


def save_certificate(path: str | Path, subgroup: MatrixSubgroup) -> Path:
    """Write the generators of a subgroup with the field polynomial header as JSON."""
    path = Path(path)
    order = subgroup.order

    record: CertificateRecord = {
        "schema": CERTIFICATE_SCHEMA_VERSION,
        "field": {
            "p": subgroup.field.p,
            "degree": subgroup.field.k,
            "modulus": list(subgroup.field.modulus),
        },
        "gl": {
            "n": subgroup.gl.n,
            "eta": subgroup.gl.eta.value,
            "p": subgroup.gl.p,
            "m": subgroup.gl.m,
        },
        "name": subgroup.name,
        "order": order,
        "verified": order is not None,
        "generators": [[list(row) for row in g] for g in subgroup.generators],
    }

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record, indent=2))

    logger.debug(f"certificate for {subgroup.name} written to {path}")

    return path


def load_certificate(path: str | Path, bound: int | None = None) -> MatrixSubgroup:
    try:
        record = json.loads(Path(path).read_text())
        if record["schema"] != CERTIFICATE_SCHEMA_VERSION:
            raise InvalidInputError(f"unknown certificate schema {record['schema']!r}")

        field_header = record["field"]
        galois_field = GaloisField(
            int(field_header["p"]), int(field_header["degree"]), field_header["modulus"]
        )

        gl_header = record["gl"]
        gl = GLSpec(
            n=int(gl_header["n"]),
            eta=Twist(gl_header["eta"]),
            p=int(gl_header["p"]),
            m=int(gl_header["m"]),
        )

        generators = [
            tuple(tuple(galois_field.check(int(x)) for x in row) for row in g)
            for g in record["generators"]
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed certificate {path}: {e}")

    return MatrixSubgroup(record["name"], gl, galois_field, generators, bound=bound)
