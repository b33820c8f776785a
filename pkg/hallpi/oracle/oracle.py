from __future__ import annotations

from collections import deque
from typing import *

from cachetools import LRUCache, cached
from loguru import logger

from ..arith import PrimeSet, factor, mult_order, pi_part, prime_spectrum
from ..orders import SimpleGroupSpec
from ..utils import HallPiException, InvalidInputError
from .misc import (
    MainTheoremReport,
    OvergroupCheck,
    PiSubgroupClasses,
    StarEquivalenceReport,
)
from .perm_group import Perm, PermGroup, perm_conj, perm_mul


def enumerate_elements(G: PermGroup) -> list[Perm]:
    return sorted(G.elements())


def _group_key(G: PermGroup, *args: Any) -> tuple:
    return (G.degree, G.generators, *args)


def pi_order(G: PermGroup, pi: PrimeSet) -> int:
    """|G|_pi."""
    return pi_part(factor(G.order), pi).value


def conjugating_element(U: PermGroup, V: PermGroup, G: PermGroup) -> Perm | None:
    """Some g in G with U^g = V, or None."""
    if U.signature() != V.signature():
        return None
    target = V.elements()
    for g in G.elements():
        if all(perm_conj(u, g) in target for u in U.generators):
            return g
    return None


def contained_in_conjugate(U: PermGroup, H: PermGroup, G: PermGroup) -> Perm | None:
    """Some g in G with U^g <= H, or None."""
    target = H.elements()
    for g in G.elements():
        if all(perm_conj(u, g) in target for u in U.generators):
            return g
    return None


class _ConjugacyIndex:
    """Subgroups kept up to conjugacy under `under`, bucketed by signature."""

    def __init__(self, under: PermGroup):
        self.under = under
        self.representatives: list[PermGroup] = []
        self._buckets: dict[tuple, list[PermGroup]] = {}
        self._seen: dict[frozenset[Perm], PermGroup] = {}

    def add(self, U: PermGroup) -> tuple[PermGroup, bool]:
        """Returns the class representative of U and whether U opened a new class."""
        elements = U.elements()
        if elements in self._seen:
            return self._seen[elements], False

        bucket = self._buckets.setdefault(U.signature(), [])
        for rep in bucket:
            if conjugating_element(U, rep, self.under) is not None:
                self._seen[elements] = rep
                return rep, False

        bucket.append(U)
        self.representatives.append(U)
        self._seen[elements] = U
        return U, True


def _double_coset(U: PermGroup, x: Perm) -> set[Perm]:
    return {perm_mul(perm_mul(a, x), b) for a in U.elements() for b in U.elements()}


@cached(cache=LRUCache(maxsize=256), key=_group_key)
def pi_subgroup_classes(G: PermGroup, pi: PrimeSet) -> PiSubgroupClasses:
    """Every pi-subgroup of G up to conjugacy, by joins starting from cyclic pi-subgroups.

    Each class representative U is extended by every pi-element x outside it; a pi-subgroup
    <U, x> opens a new class or lands in a known one. Every pi-subgroup is reached by a chain
    of such joins, and conjugating the chain keeps it inside explored representatives, so the
    list is complete. A representative with no extension is a maximal pi-subgroup.
    """
    cap = pi_order(G, pi)
    pi_elements = G.pi_elements(pi)

    index = _ConjugacyIndex(G)
    index.add(G.cyclic(G.identity))
    for x in pi_elements:
        index.add(G.cyclic(x))

    maximal: list[PermGroup] = []
    queue = deque(index.representatives)
    explored: set[frozenset[Perm]] = set()

    while queue:
        U = queue.popleft()
        if U.elements() in explored:
            continue
        explored.add(U.elements())

        extended = False
        done = set(U.elements())
        for x in pi_elements:
            if x in done:
                continue
            done |= _double_coset(U, x)

            V = U.join(x, cap=cap)
            if V is None or pi_part(factor(V.order), pi).value != V.order:
                continue

            extended = True
            rep, new = index.add(V)
            if new:
                queue.append(rep)

        if not extended:
            maximal.append(U)

    classes = sorted(index.representatives, key=lambda U: (U.order, sorted(U.elements())))
    maximal.sort(key=lambda U: (U.order, sorted(U.elements())))

    logger.debug(
        f"{G!r} {pi}: {len(classes)} pi-subgroup classes, {len(maximal)} maximal"
    )

    return PiSubgroupClasses(
        pi=pi, pi_order=cap, classes=tuple(classes), maximal=tuple(maximal)
    )


def maximal_pi_subgroups(G: PermGroup, pi: PrimeSet) -> list[PermGroup]:
    """One representative per conjugacy class of maximal pi-subgroups."""
    return list(pi_subgroup_classes(G, pi).maximal)


def hall_subgroups(G: PermGroup, pi: PrimeSet) -> list[PermGroup]:
    """One representative per conjugacy class of pi-Hall subgroups."""
    return list(pi_subgroup_classes(G, pi).halls)


def has_hall(G: PermGroup, pi: PrimeSet) -> PermGroup | None:
    halls = hall_subgroups(G, pi)
    return halls[0] if halls else None


def check_Cpi(G: PermGroup, pi: PrimeSet) -> bool:
    """E_pi and any two pi-Hall subgroups are conjugate."""
    return len(hall_subgroups(G, pi)) == 1


def check_Dpi_by_definition(G: PermGroup, pi: PrimeSet) -> bool:
    """C_pi and every pi-subgroup lies in a pi-Hall subgroup."""
    lattice = pi_subgroup_classes(G, pi)
    if len(lattice.halls) != 1:
        return False

    (H,) = lattice.halls
    return all(contained_in_conjugate(U, H, G) is not None for U in lattice.classes)


def check_Dpi_by_maximal(G: PermGroup, pi: PrimeSet) -> bool:
    """The maximal pi-subgroups form one class, of full pi-order."""
    lattice = pi_subgroup_classes(G, pi)
    return len(lattice.maximal) == 1 and lattice.maximal[0].order == lattice.pi_order


def check_Dpi(G: PermGroup, pi: PrimeSet) -> bool:
    """D_pi by definition, cross-asserted against the maximal-subgroup form.

    Raises:
        HallPiException: when the two forms disagree.
    """
    by_definition = check_Dpi_by_definition(G, pi)
    by_maximal = check_Dpi_by_maximal(G, pi)

    if by_definition != by_maximal:
        raise HallPiException(
            f"{G!r} {pi}: D_pi by definition is {by_definition}, by maximal subgroups {by_maximal}"
        )

    return by_definition


def _require_subgroup(H: PermGroup, G: PermGroup) -> None:
    if not H.is_subgroup_of(G):
        raise InvalidInputError(f"{H!r} is not a subgroup of {G!r}")


def _distinct_conjugates(H: PermGroup, G: PermGroup) -> list[PermGroup]:
    conjugates: dict[frozenset[Perm], PermGroup] = {}
    H.elements()
    for g in G.elements():
        Hg = H.conjugate(g)
        conjugates.setdefault(Hg.elements(), Hg)
    return list(conjugates.values())


def is_pronormal(H: PermGroup, G: PermGroup) -> bool:
    """For every g in G, H and H^g are conjugate in <H, H^g>."""
    _require_subgroup(H, G)

    for Hg in _distinct_conjugates(H, G):
        if Hg == H:
            continue
        L = H.join(*Hg.generators)
        assert L is not None
        if conjugating_element(H, Hg, L) is None:
            logger.debug(f"{H!r} is not pronormal in {G!r}")
            return False

    return True


def subgroups(H: PermGroup) -> list[PermGroup]:
    """Every subgroup of H, by iterated joins of cyclic subgroups."""
    found: dict[frozenset[Perm], PermGroup] = {}
    for x in sorted(H.elements()):
        C = H.cyclic(x)
        found.setdefault(C.elements(), C)

    queue = deque(found.values())
    while queue:
        U = queue.popleft()
        done = set(U.elements())
        for x in sorted(H.elements()):
            if x in done:
                continue
            done |= _double_coset(U, x)
            V = U.join(x)
            assert V is not None
            if V.elements() not in found:
                found[V.elements()] = V
                queue.append(V)

    return sorted(found.values(), key=lambda U: (U.order, sorted(U.elements())))


def subgroup_classes(groups: Iterable[PermGroup], under: PermGroup) -> list[PermGroup]:
    """Representatives of the given subgroups up to conjugacy in `under`."""
    index = _ConjugacyIndex(under)
    for U in groups:
        index.add(U)
    return index.representatives


def is_strongly_pronormal(H: PermGroup, G: PermGroup) -> bool:
    """For every K <= H and g in G, some x in <H, K^g> has K^(gx) <= H.

    K runs over H-class representatives of subgroups of H: replacing K by K^h replaces g by hg,
    so the condition holds for a class as soon as it holds for its representative.
    """
    _require_subgroup(H, G)

    for K in subgroup_classes(subgroups(H), under=H):
        for Kg in _distinct_conjugates(K, G):
            L = H.join(*Kg.generators)
            assert L is not None
            if contained_in_conjugate(Kg, H, L) is None:
                logger.debug(f"{H!r} is not strongly pronormal in {G!r}: fails for |K| = {K.order}")
                return False

    return True


def overgroups(H: PermGroup, G: PermGroup) -> list[PermGroup]:
    """Every M with H <= M <= G, by joins with outside elements to a fixpoint."""
    _require_subgroup(H, G)

    found: dict[frozenset[Perm], PermGroup] = {H.elements(): H}
    queue = deque([H])

    while queue:
        M = queue.popleft()
        done = set(M.elements())
        for x in sorted(G.elements()):
            if x in done:
                continue
            done |= _double_coset(M, x)
            N = M.join(x)
            assert N is not None
            if N.elements() not in found:
                found[N.elements()] = N
                queue.append(N)

    return sorted(found.values(), key=lambda M: (M.order, sorted(M.elements())))


def verify_main_theorem(G: PermGroup, pi: PrimeSet, name: str = "") -> MainTheoremReport:
    """Every overgroup of every pi-Hall subgroup of a D_pi group is D_pi."""
    name = name or G.name
    if not check_Dpi(G, pi):
        return MainTheoremReport(group=name, pi=pi, applicable=False, reasons=("not-dpi",))

    checks = []
    for H in hall_subgroups(G, pi):
        for M in overgroups(H, G):
            checks.append(OvergroupCheck(hall_order=H.order, overgroup_order=M.order, dpi=check_Dpi(M, pi)))

    report = MainTheoremReport(group=name, pi=pi, applicable=True, checks=tuple(checks))
    logger.info(f"{name} {pi}: {len(checks)} overgroups checked, passes={report.passes}")

    return report


def check_Upi(G: PermGroup, pi: PrimeSet) -> bool:
    """D_pi, and every overgroup of a pi-Hall subgroup is D_pi."""
    return verify_main_theorem(G, pi).passes


def normal_abelian_hall(U: PermGroup, tau: PrimeSet) -> PermGroup | None:
    """The normal abelian tau-Hall subgroup of U: its tau-elements, when they form one."""
    elements = U.pi_elements(tau)
    members = set(elements)

    if len(elements) != pi_order(U, tau):
        return None
    if any(perm_mul(a, b) not in members for a in elements for b in elements):
        return None
    if any(perm_mul(a, b) != perm_mul(b, a) for a in elements for b in elements):
        return None

    return PermGroup(elements, U.degree, bound=U.bound, elements=elements)


def _r_and_tau(G: PermGroup, pi: PrimeSet) -> tuple[int | None, PrimeSet]:
    pi_effective = pi & prime_spectrum(factor(G.order))
    if not pi_effective:
        return None, PrimeSet()
    r = pi_effective.min()
    return r, pi_effective - (r,)


def check_star_property(G: PermGroup, pi: PrimeSet) -> bool:
    """(*): every pi-subgroup of G has a normal abelian tau-Hall subgroup.

    tau is pi & pi(G) without its least prime. The property is conjugation invariant, so
    one subgroup per class is checked.
    """
    r, tau = _r_and_tau(G, pi)
    if r is None:
        return True

    return all(normal_abelian_hall(U, tau) is not None for U in pi_subgroup_classes(G, pi).classes)


def check_dpi_star_equivalence(
    G: PermGroup, pi: PrimeSet, spec: SimpleGroupSpec, name: str = ""
) -> StarEquivalenceReport:
    """With 2, p not in pi, G in E_pi and e(q, t) constant on pi & pi(G): D_pi iff (*)."""
    name = name or G.name or spec.name
    pi_effective = pi & prime_spectrum(factor(G.order))

    reasons = []
    if 2 in pi:
        reasons.append("2-in-pi")
    if spec.p in pi:
        reasons.append("characteristic-in-pi")
    if not reasons and len({mult_order(spec.q, t) for t in pi_effective}) > 1:
        reasons.append("unequal-orders")
    if not reasons and has_hall(G, pi) is None:
        reasons.append("not-epi")

    if reasons:
        return StarEquivalenceReport(group=name, pi=pi, applicable=False, reasons=tuple(reasons))

    return StarEquivalenceReport(
        group=name,
        pi=pi,
        applicable=True,
        dpi=check_Dpi(G, pi),
        star=check_star_property(G, pi),
    )
