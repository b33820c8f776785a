from __future__ import annotations

import random
from collections import deque
from typing import *

from cachetools import LRUCache, cached
from loguru import logger
from sympy import isprime

from ..arith import PrimeSet, factor, is_pi_number, p_adic_valuation, pi_part, prime_spectrum
from ..classifier import gl_hall_pi_order, regime_item
from ..orders import GLSpec, Twist, gl_order
from ..utils import HallPiException, InvalidInputError, RegimeError
from .field import GaloisField, Matrix
from .misc import (
    CentralizerReport,
    FrobeniusReport,
    HallContext,
    MatrixSubgroup,
    PsiReport,
    WitnessCheck,
    WitnessReport,
)

# Attempts at a random hermitian seed before giving up on a nondegenerate invariant form.
HERMITIAN_SEED_ATTEMPTS = 512


@cached(cache=LRUCache(maxsize=32))
def _galois_field(p: int, k: int) -> GaloisField:
    return GaloisField(p, k)


def field_for(gl: GLSpec) -> GaloisField:
    """F_q for GL_n(q), F_{q^2} for GU_n(q)."""
    return _galois_field(gl.p, gl.m if gl.eta is Twist.PLUS else 2 * gl.m)


def conjugate(gl: GLSpec, galois_field: GaloisField, a: int) -> int:
    """The involution a -> a^q of F_{q^2}; the identity for eta = +."""
    if gl.eta is Twist.PLUS:
        return a
    return galois_field.frobenius(a, gl.m)


def frobenius_matrix(galois_field: GaloisField, matrix: Matrix, power: int = 1) -> Matrix:
    """phi^power: (a_ij) -> (a_ij^(p^power))."""
    return galois_field.mat_map(matrix, lambda a: galois_field.frobenius(a, power))


def is_unitary(matrix: Matrix, gl: GLSpec, galois_field: GaloisField | None = None) -> bool:
    """Membership in GL_n^eta(q); for eta = - the condition (a_ij^q) = ((a_ij)^-1)^T."""
    galois_field = galois_field or field_for(gl)

    if gl.eta is Twist.PLUS:
        return galois_field.det(matrix) != 0

    conj = galois_field.mat_map(matrix, lambda a: conjugate(gl, galois_field, a))
    product = galois_field.mat_mul(conj, galois_field.transpose(matrix))
    return galois_field.is_identity(product)


def hall_context(gl: GLSpec, pi: PrimeSet) -> HallContext:
    """Regime data (item, r, tau, d, k) for GL_n^eta(q); raises RegimeError outside it."""
    hit = regime_item(gl, pi)
    values = {w.name: w.value for w in hit.witnesses}
    return HallContext(
        item=hit.tag,
        r=int(values["r"]),
        tau=PrimeSet.parse(str(values["tau"])),
        d=int(values["d"]),
        k=int(values["k"]),
    )


def regime_pi(gl: GLSpec, t: int | None = None) -> PrimeSet:
    """A pi putting GL_n^eta(q) in the E_pi \\ D_pi regime, for operations called without one.

    r runs over the odd primes of |G| other than p in increasing order, and tau is every prime
    of q - eta above both r and n (only t, when given). The first r for which the regime holds
    gives pi = {r} | tau.

    Raises:
        RegimeError: when no r works.
    """
    torus = prime_spectrum(factor(gl.q_minus_eta))

    for r in prime_spectrum(gl_order(gl)):
        if r == 2 or r == gl.p:
            continue
        tau = PrimeSet(tuple(s for s in torus if s > max(r, gl.n) and t in (None, s)))
        if not tau:
            continue

        pi = tau | (r,)
        try:
            regime_item(gl, pi)
        except RegimeError:
            continue

        logger.debug(f"{gl}: regime pi {pi!r}")
        return pi

    target = f" with t = {t}" if t is not None else ""
    raise RegimeError(["no-regime-pi"], f"{gl}: no pi puts it in the E_pi \\ D_pi regime{target}")


def _tau_exponent(gl: GLSpec, tau: PrimeSet) -> int:
    return pi_part(factor(gl.q_minus_eta), tau).value


def _in_torus(galois_field: GaloisField, matrix: Matrix, exponent: int) -> bool:
    """Whether the matrix is diagonal with every entry of order dividing `exponent`."""
    for i, row in enumerate(matrix):
        for j, a in enumerate(row):
            if i != j and a != 0:
                return False
            if i == j and (a == 0 or galois_field.pow(a, exponent) != 1):
                return False
    return True


def build_T(gl: GLSpec, tau: PrimeSet, bound: int | None = None) -> MatrixSubgroup:
    """The tau-Hall subgroup of the diagonal torus: (q - eta)_tau^n.

    Raises:
        InvalidInputError: when some t in tau does not divide q - eta.
    """
    missing = [t for t in tau if gl.q_minus_eta % t]
    if missing:
        raise InvalidInputError(f"{gl}: {missing} do not divide q - eta = {gl.q_minus_eta}")

    galois_field = field_for(gl)
    exponent = _tau_exponent(gl, tau)

    generators = []
    if exponent > 1:
        z = galois_field.element_of_order(exponent)
        for i in range(gl.n):
            generators.append(galois_field.diagonal([z if j == i else 1 for j in range(gl.n)]))

    logger.debug(f"T in {gl}: diagonal entries of order {exponent}")

    return MatrixSubgroup("T", gl, galois_field, generators, bound=bound)


def _cycle_matrix(galois_field: GaloisField, n: int, start: int, length: int) -> Matrix:
    image = list(range(n))
    for i in range(length):
        image[start + i] = start + (i + 1) % length
    return tuple(tuple(1 if image[i] == j else 0 for j in range(n)) for i in range(n))


def build_R(gl: GLSpec, r: int, bound: int | None = None) -> MatrixSubgroup:
    """Sylow r-subgroup of the permutation matrices: floor(n/r) disjoint r-cycles.

    Raises:
        InvalidInputError: when r is not an odd prime.
        RegimeError: when r > n or floor(n/r) >= r - 1.
    """
    if r == 2 or not isprime(r):
        raise InvalidInputError(f"{r} is not an odd prime")

    failures = []
    if r > gl.n:
        failures.append("r-exceeds-n")
    elif gl.n // r >= r - 1:
        failures.append("d-below-r-minus-1")
    if failures:
        raise RegimeError(failures, f"{gl}: no regime R for r = {r}")

    galois_field = field_for(gl)
    generators = [_cycle_matrix(galois_field, gl.n, j * r, r) for j in range(gl.n // r)]

    return MatrixSubgroup("R", gl, galois_field, generators, bound=bound)


def build_TR(gl: GLSpec, pi: PrimeSet, bound: int | None = None) -> MatrixSubgroup:
    """The pi-Hall subgroup TR = T x| R of GL_n^eta(q) in the E_pi \\ D_pi regime.

    When TR fits in the enumeration bound its order is checked against |G|_pi and T is
    checked to be normal; otherwise the construction is returned unverified.

    Args:
        gl (GLSpec): The group GL_n^eta(q).
        pi (PrimeSet): The set of primes.
        bound (int, optional): Enumeration bound. Defaults to the matrix default.

    Raises:
        RegimeError: when (gl, pi) is outside the regime.
        HallPiException: when an enumerated TR disagrees with |G|_pi.
    """
    context = hall_context(gl, pi)
    T = build_T(gl, context.tau, bound=bound)
    R = build_R(gl, context.r, bound=bound)

    TR = MatrixSubgroup(
        "TR", gl, T.field, T.generators + R.generators, context=context, bound=bound
    )

    if gl.eta is Twist.MINUS and not all(is_unitary(g, gl, TR.field) for g in TR.generators):
        raise HallPiException(f"{gl}: TR generator outside the unitary group")

    order = TR.order
    if order is None:
        logger.warning(f"{gl} {pi}: TR exceeds the enumeration bound; unverified")
        return TR

    expected = gl_hall_pi_order(gl, pi).value
    if order != expected:
        raise HallPiException(f"{gl} {pi}: |TR| = {order}, expected {expected}")
    if T.try_elements() is not None and not T.is_normalized_by(R):
        raise HallPiException(f"{gl} {pi}: R does not normalize T")

    logger.info(f"{gl} {pi}: TR of order {order} via item {context.item}")

    return TR


def _closure(galois_field: GaloisField, identity: Matrix, generators: Sequence[Matrix]) -> set[Matrix]:
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in generators:
            nxt = galois_field.mat_mul(current, g)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def generating_set(galois_field: GaloisField, elements: Iterable[Matrix], n: int) -> list[Matrix]:
    """A greedy generating set for a (small) group given by its elements."""
    identity = galois_field.identity(n)
    generators: list[Matrix] = []
    span = {identity}
    for x in sorted(elements):
        if x not in span:
            generators.append(x)
            span = _closure(galois_field, identity, generators)
    return generators


def _subgroup_from_elements(
    name: str, like: MatrixSubgroup, elements: Collection[Matrix]
) -> MatrixSubgroup:
    subgroup = MatrixSubgroup(
        name,
        like.gl,
        like.field,
        generating_set(like.field, elements, like.gl.n),
        context=like.context,
        bound=like.bound,
    )
    return subgroup


def _rank_of(size: int, t: int) -> int:
    return p_adic_valuation(size, t) if size > 1 else 0


def t_rank(elements: Iterable[Matrix], t: int, galois_field: GaloisField) -> int:
    """Maximal rank of an elementary abelian t-subgroup inside a group given by its elements."""
    elements = sorted(elements)
    if not elements:
        return 0

    identity = galois_field.identity(len(elements[0]))
    mul = galois_field.mat_mul
    order_t = [x for x in elements if x != identity and galois_field.mat_pow(x, t) == identity]

    if not order_t:
        return 0

    def commute(x: Matrix, y: Matrix) -> bool:
        return mul(x, y) == mul(y, x)

    if all(commute(x, y) for i, x in enumerate(order_t) for y in order_t[i + 1 :]):
        return _rank_of(len(order_t) + 1, t)

    best = 0

    def extend(subgroup: frozenset[Matrix], candidates: list[Matrix]) -> None:
        nonlocal best
        rank = _rank_of(len(subgroup), t)
        best = max(best, rank)
        if rank + len(candidates) <= best:
            return
        for i, x in enumerate(candidates):
            powers = [identity]
            for _ in range(t - 1):
                powers.append(mul(powers[-1], x))
            grown = frozenset(mul(s, y) for s in subgroup for y in powers)
            rest = [y for y in candidates[i + 1 :] if y not in grown and commute(x, y)]
            extend(grown, rest)

    extend(frozenset([identity]), order_t)

    return best


def centralizer_in_TR_of_R(
    tr: MatrixSubgroup, r_sub: MatrixSubgroup
) -> tuple[MatrixSubgroup, CentralizerReport]:
    """C_TR(R) by exhaustive scan of TR, with its tau-ranks against d + k.

    Raises:
        EnumerationBoundError: when TR cannot be enumerated.
    """
    if tr.context is None:
        raise InvalidInputError(f"{tr.name} carries no regime context")

    mul = tr.mul
    elements = tr.elements()
    centralizer = [
        x for x in elements if all(mul(x, g) == mul(g, x) for g in r_sub.generators)
    ]
    members = set(centralizer)

    context = tr.context
    tau_ranks = {t: t_rank(centralizer, t, tr.field) for t in context.tau}
    exponent = _tau_exponent(tr.gl, context.tau)

    report = CentralizerReport(
        gl=tr.gl.name,
        order=len(centralizer),
        expected_order=exponent ** (context.d + context.k) * context.r**context.d,
        tau_ranks=tau_ranks,
        expected_rank=context.d + context.k,
        contains_r=all(g in members for g in r_sub.generators),
        structure=f"{exponent}^{context.d + context.k} x {context.r}^{context.d}",
    )

    logger.info(f"C_TR(R) in {tr.gl}: order {report.order}, tau-ranks {tau_ranks}")

    return _subgroup_from_elements("C_TR(R)", tr, centralizer), report


def _hermitian_form(galois_field: GaloisField, gl: GLSpec, matrix: Matrix) -> Callable:
    def h(x: Sequence[int], y: Sequence[int]) -> int:
        total = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and matrix[i][j]:
                    term = galois_field.mul(xi, matrix[i][j])
                    term = galois_field.mul(term, conjugate(gl, galois_field, yj))
                    total = galois_field.add(total, term)
        return total

    return h


def _orthonormal_basis(
    galois_field: GaloisField, gl: GLSpec, form: Matrix, scalars: Sequence[int]
) -> list[list[int]]:
    """Rows b_i with h(b_i, b_j) = delta_ij for a nondegenerate hermitian form, scalars from `scalars`."""
    h = _hermitian_form(galois_field, gl, form)
    F = galois_field
    n = len(form)

    def scale(c: int, v: Sequence[int]) -> list[int]:
        return [F.mul(c, a) for a in v]

    def plus(u: Sequence[int], v: Sequence[int]) -> list[int]:
        return [F.add(a, b) for a, b in zip(u, v)]

    remaining = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    basis: list[list[int]] = []

    while remaining:
        index = next((i for i, v in enumerate(remaining) if h(v, v)), None)

        if index is None:
            # every remaining vector is isotropic; combine two that pair nontrivially
            combined = None
            for i, u in enumerate(remaining):
                for v in remaining[i + 1 :]:
                    for c in scalars:
                        w = plus(u, scale(c, v))
                        if h(w, w):
                            combined = (i, w)
                            break
                    if combined:
                        break
                if combined:
                    break
            if combined is None:
                raise HallPiException("hermitian form is degenerate")
            index, w = combined
            remaining[index] = w

        v = remaining.pop(index)
        target = F.inv(h(v, v))
        mu = next(
            (c for c in scalars if c and F.mul(c, conjugate(gl, F, c)) == target), None
        )
        if mu is None:
            raise HallPiException("no normalizing scalar in the chosen subfield")

        b = scale(mu, v)
        basis.append(b)
        remaining = [plus(w, scale(F.neg(h(w, b)), b)) for w in remaining]

    return basis


def _companion_of_cyclotomic(galois_field: GaloisField, r: int) -> Matrix:
    """Companion matrix of 1 + x + ... + x^(r-1) over the prime field."""
    size = r - 1
    minus_one = galois_field.neg(1)
    rows = []
    for i in range(size):
        row = [1 if i == j + 1 else 0 for j in range(size)]
        row[size - 1] = minus_one
        rows.append(tuple(row))
    return tuple(rows)


def _odd_frobenius_exponent(galois_field: GaloisField) -> int:
    """phi_{2'} = phi^(2-part of the field degree)."""
    return 2 ** p_adic_valuation(galois_field.k, 2)


def unitary_order_r_block(gl: GLSpec, r: int) -> Matrix:
    """An element of order r in GL_{r-1}^eta(q), fixed by phi_{2'}.

    For eta = + this is the companion matrix of the r-th cyclotomic polynomial. For eta = - the
    same matrix is averaged into an invariant hermitian form and carried into the identity-form
    unitary group through an orthonormal basis of that form.
    """
    F = field_for(gl)
    companion = _companion_of_cyclotomic(F, r)

    if gl.eta is Twist.PLUS:
        return companion

    block = GLSpec(n=r - 1, eta=gl.eta, p=gl.p, m=gl.m)
    scalars = F.subfield(_odd_frobenius_exponent(F))
    fixed = [c for c in scalars if conjugate(gl, F, c) == c]
    powers = [F.mat_pow(companion, i) for i in range(r)]
    rng = random.Random(r * gl.q)

    seed = F.identity(r - 1)
    for attempt in range(HERMITIAN_SEED_ATTEMPTS):
        accumulated = [[0] * (r - 1) for _ in range(r - 1)]
        for c in powers:
            c_star = F.transpose(F.mat_map(c, lambda a: conjugate(gl, F, a)))
            term = F.mat_mul(F.mat_mul(c, seed), c_star)
            accumulated = [[F.add(x, y) for x, y in zip(u, v)] for u, v in zip(accumulated, term)]
        form = tuple(tuple(row) for row in accumulated)

        if F.det(form) != 0:
            break

        rows = [[0] * (r - 1) for _ in range(r - 1)]
        for i in range(r - 1):
            rows[i][i] = rng.choice(fixed)
            for j in range(i + 1, r - 1):
                rows[i][j] = rng.choice(scalars)
                rows[j][i] = conjugate(gl, F, rows[i][j])
        seed = tuple(tuple(row) for row in rows)
    else:
        raise HallPiException(f"{block}: no nondegenerate invariant hermitian form found")

    basis = tuple(tuple(b) for b in _orthonormal_basis(F, gl, form, scalars))
    element = F.mat_mul(F.mat_mul(basis, companion), F.mat_inv(basis))

    if not is_unitary(element, block, F):
        raise HallPiException(f"{block}: order-{r} block is not unitary")

    logger.debug(f"{block}: order-{r} block after {attempt + 1} hermitian seed(s)")

    return element


def _embed_block(galois_field: GaloisField, n: int, block: Matrix, offset: int) -> Matrix:
    rows = [list(row) for row in galois_field.identity(n)]
    for i, row in enumerate(block):
        for j, a in enumerate(row):
            rows[offset + i][offset + j] = a
    return tuple(tuple(row) for row in rows)


def build_witness_K(
    gl: GLSpec, t: int, pi: PrimeSet | None = None, bound: int | None = None
) -> tuple[MatrixSubgroup, MatrixSubgroup]:
    """K and R1 inside the block group GL_{r-1}^eta(q)^d x GL_1^eta(q)^(d+k).

    R1 is elementary abelian of order r^d, one order-r block per GL_{r-1}^eta factor. K is the
    elementary abelian t-part of the center of the block group: one scalar of order t per
    block, so rank 2d + k.

    Without pi, the regime pi is taken from `regime_pi(gl, t)`.

    Raises:
        RegimeError: when (gl, pi) is outside the regime.
        InvalidInputError: when t is not in tau.
    """
    context = hall_context(gl, pi if pi is not None else regime_pi(gl, t))
    if t not in context.tau:
        raise InvalidInputError(f"{t} is not in tau = {context.tau!r}")

    F = field_for(gl)
    n, r, d, k = gl.n, context.r, context.d, context.k

    offsets = [j * (r - 1) for j in range(d)]
    sizes = [r - 1] * d
    offsets += [d * (r - 1) + j for j in range(d + k)]
    sizes += [1] * (d + k)

    zeta = F.element_of_order(t)
    K_generators = []
    for offset, size in zip(offsets, sizes):
        entries = [zeta if offset <= i < offset + size else 1 for i in range(n)]
        K_generators.append(F.diagonal(entries))

    block = unitary_order_r_block(gl, r)
    R1_generators = [_embed_block(F, n, block, offset) for offset in offsets[:d]]

    K = MatrixSubgroup("K", gl, F, K_generators, context=context, bound=bound)
    R1 = MatrixSubgroup("R1", gl, F, R1_generators, context=context, bound=bound)

    if not K.commutes_with(R1):
        raise HallPiException(f"{gl}: K and R1 do not commute")

    return K, R1


def _order_r_elements(tr: MatrixSubgroup, r: int) -> list[Matrix]:
    """Every element of TR of order exactly r, in enumeration order."""
    F, identity = tr.field, tr.identity
    return [x for x in tr.elements() if x != identity and F.mat_pow(x, r) == identity]


def verify_dpi_failure_witness(
    gl: GLSpec, pi: PrimeSet, bound: int | None = None
) -> WitnessReport:
    """Certify that G is not D_pi: KR1 embeds in no conjugate of the pi-Hall subgroup TR.

    KR1 is a pi-group whose t-rank is 2d + k, while every order-r element x of TR has
    m_t(C_TR(x)) <= d + k. The scan runs over every order-r element of TR.
    """
    try:
        context = hall_context(gl, pi)
    except RegimeError as e:
        logger.info(f"{gl} {pi}: witness not applicable ({', '.join(e.failures)})")
        return WitnessReport(gl=gl.name, pi=pi, applicable=False, reasons=tuple(e.failures))

    TR = build_TR(gl, pi, bound=bound)
    base = dict(
        gl=gl.name,
        pi=pi,
        applicable=True,
        item=context.item,
        r=context.r,
        d=context.d,
        k=context.k,
    )

    elements = TR.try_elements()
    if elements is None:
        return WitnessReport(**base, verified=False, reasons=("enumeration-bound",))

    order_r = _order_r_elements(TR, context.r)
    centralizers = [[y for y in elements if TR.mul(x, y) == TR.mul(y, x)] for x in order_r]

    checks = []
    for t in context.tau:
        K, R1 = build_witness_K(gl, t, pi=pi, bound=bound)
        witness_rank = t_rank(K.elements(), t, TR.field)
        witness_order = len(K.elements()) * len(R1.elements())
        max_rank = max((t_rank(c, t, TR.field) for c in centralizers), default=0)

        phi_odd = _odd_frobenius_exponent(TR.field)
        r1_fixed = all(frobenius_matrix(TR.field, g, phi_odd) == g for g in R1.generators)

        checks.append(
            WitnessCheck(
                t=t,
                witness_rank=witness_rank,
                witness_order=witness_order,
                witness_is_pi_group=is_pi_number(factor(witness_order), pi),
                max_centralizer_rank=max_rank,
                commuting=K.commutes_with(R1),
                r1_frobenius_fixed=r1_fixed,
            )
        )

    report = WitnessReport(
        **base,
        verified=True,
        hall_order=len(elements),
        order_r_elements=len(order_r),
        checks=tuple(checks),
    )

    logger.info(f"{gl} {pi}: {report.conclusion}")

    return report


def frobenius_action_check(gl: GLSpec, pi: PrimeSet | None = None) -> FrobeniusReport:
    """phi: (a_ij) -> (a_ij^p) normalizes T and fixes R elementwise, checked on generators.

    phi is injective and T is the full tau-torus, so phi(T) <= T gives phi(T) = T.
    Without pi, the check runs on the regime pi of `regime_pi`.
    """
    try:
        context = hall_context(gl, pi if pi is not None else regime_pi(gl))
    except RegimeError as e:
        return FrobeniusReport(gl=gl.name, applicable=False, reasons=tuple(e.failures))

    T = build_T(gl, context.tau)
    R = build_R(gl, context.r)
    F = T.field
    exponent = _tau_exponent(gl, context.tau)

    report = FrobeniusReport(
        gl=gl.name,
        applicable=True,
        field_degree=F.k,
        trivial=F.k == 1,
        t_normalized=all(_in_torus(F, frobenius_matrix(F, g), exponent) for g in T.generators),
        r_fixed=all(frobenius_matrix(F, g) == g for g in R.generators),
    )

    logger.debug(f"{gl} {pi}: frobenius check {report}")

    return report


def psi_fixed_check(gl: GLSpec, pi: PrimeSet, t: int) -> PsiReport:
    """When t | m, psi = phi^(k/t) has order t and fixes K elementwise, with K <= C_G(R1)."""
    try:
        context = hall_context(gl, pi)
    except RegimeError as e:
        return PsiReport(gl=gl.name, t=t, applicable=False, reasons=tuple(e.failures))

    if t not in context.tau:
        return PsiReport(gl=gl.name, t=t, applicable=False, reasons=("t-not-in-tau",))
    if gl.m % t:
        return PsiReport(gl=gl.name, t=t, applicable=False, reasons=("t-does-not-divide-m",))

    K, R1 = build_witness_K(gl, t, pi=pi)
    F = K.field
    exponent = F.k // t

    return PsiReport(
        gl=gl.name,
        t=t,
        applicable=True,
        psi_exponent=exponent,
        k_fixed=all(frobenius_matrix(F, g, exponent) == g for g in K.generators),
        r1_fixed=all(frobenius_matrix(F, g, exponent) == g for g in R1.generators),
        k_centralizes_r1=K.commutes_with(R1),
    )
