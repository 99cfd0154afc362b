"""Towers of quotients A/N_i built from characteristic filtrations of A.

With a finite chain ``A >= N_0 >= ... >= N_k = 1`` the limit of the
quotient tower is A itself, and the canonical map ``x -> (x N_i)`` is a
G-equivariant isomorphism.  The derived series of a solvable group is the
standard source of such a chain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import GAction, check_equivariant, induced_action_on_quotient
from .errors import NotCharacteristic, NotNested, NotSolvable, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    automorphisms,
    derived_series,
    is_characteristic,
    make_hom,
    omega_subgroup,
    section,
)
from .h1 import h1
from .hn import h_n
from .systems import (
    EVENLY_CONTINUOUS_NOTE,
    InverseSystem,
    limit,
    make_tower,
    mediating_hom,
    theta_1,
    theta_n,
)

__all__ = [
    "Filtration",
    "make_filtration",
    "chain_from_orders",
    "derived_tower",
    "filtration_tower",
    "verify_presentation",
]


@dataclass(frozen=True, eq=False)
class Filtration:
    group: FiniteGroup
    chain: tuple

    @property
    def orders(self) -> list:
        return [n.order for n in self.chain]

    @property
    def reaches_trivial(self) -> bool:
        return self.chain[-1].is_trivial()


def make_filtration(a: FiniteGroup, chain, check_characteristic=True) -> Filtration:
    """Validate nesting and characteristic members.

    ``check_characteristic`` uses Aut(A) and so is limited by the order cap.
    """
    chain = tuple(n if isinstance(n, Subgroup) else Subgroup(a, n) for n in chain)
    if not chain:
        raise ValidationError(detail="empty filtration")
    for i in range(1, len(chain)):
        if not chain[i].members <= chain[i - 1].members:
            raise NotNested(i)
    if check_characteristic:
        auts = automorphisms(a)
        for i, n in enumerate(chain):
            if not is_characteristic(a, n, auts):
                raise NotCharacteristic(i)
    return Filtration(a, chain)


def chain_from_orders(a: FiniteGroup, orders) -> list:
    """Members ``<x : x^m = 1>`` for each requested order m.

    These subgroups are always characteristic; a requested order that the
    construction does not hit (e.g. in a non-cyclic group) is an error.
    """
    out = []
    for m in orders:
        n = omega_subgroup(a, int(m))
        if n.order != int(m):
            raise ValidationError(m, detail=f"no canonical subgroup of order {m} (got {n.order})")
        out.append(n)
    return out


def _quotient_tower(act: GAction, chain, name):
    """Levels A/N_i listed top first (smallest N on top)."""
    quotients = []
    for i, n in enumerate(chain):
        try:
            q_act, proj = induced_action_on_quotient(act, n)
        except NotCharacteristic:
            raise NotCharacteristic(i) from None
        quotients.append((q_act, proj))
    quotients.reverse()
    maps = []
    for (hi, phi_hi), (lo, phi_lo) in zip(quotients, quotients[1:]):
        reps = section(phi_hi)
        maps.append(make_hom(hi.a, lo.a, [phi_lo(reps[y]) for y in hi.a.elements]))
    objects = [q for q, _ in quotients]
    cone = tuple(p for _, p in quotients)
    return make_tower(objects, maps, name=name, source=act, cone=cone)


def filtration_tower(act: GAction, chain, name="") -> InverseSystem:
    """Tower ``A/N_0 <- A/N_1 <- ... <- A/N_k`` for a characteristic chain.

    Every member of the chain contributes a level, including ``N_0 = A``
    (the trivial quotient) when it is present.
    """
    filt = chain if isinstance(chain, Filtration) else make_filtration(act.a, chain)
    if not filt.reaches_trivial:
        raise ValidationError(detail="filtration must end at the trivial subgroup")
    return _quotient_tower(act, filt.chain, name or "filtration")


def derived_tower(act: GAction, name="") -> InverseSystem:
    """Tower ``A/A(1) <- A/A(2) <- ... <- A/A(k) = A`` along the derived series."""
    series = derived_series(act.a)
    if not series[-1].is_trivial():
        raise NotSolvable(series[-1].order, detail="derived series stalls above 1")
    chain = series[1:] if len(series) > 1 else series
    return _quotient_tower(act, chain, name or "derived")


def verify_presentation(act: GAction, tower: InverseSystem, degrees=(), budget=None) -> dict:
    """Check that A -> lim A/N_i is an equivariant isomorphism, then compare
    the comparison maps on the tower with cohomology of A computed directly.

    ``degrees`` lists extra abelian degrees to run besides degree 1.
    """
    if tower.cone is None:
        raise ValidationError(detail="tower carries no canonical maps from A")
    lim = limit(tower, budget)
    canon = mediating_hom(lim, tower.cone)
    equivariant = True
    try:
        check_equivariant(canon, act, lim.action)
    except ValidationError:
        equivariant = False
    iso = canon.is_injective() and canon.is_surjective()
    th1 = theta_1(tower, budget)
    direct1 = h1(act, budget).size
    report = {
        "order": act.a.order,
        "levels": [obj.a.order for obj in tower.objects],
        "limit_order": lim.order,
        "injective": canon.is_injective(),
        "surjective": canon.is_surjective(),
        "equivariant": equivariant,
        "isomorphism": iso and equivariant,
        "theta": {1: th1.to_json()},
        "direct": {1: direct1},
        "consistent": th1.bijective and th1.left_size == direct1 == th1.right_size,
        "notes": [EVENLY_CONTINUOUS_NOTE],
    }
    for n in degrees:
        thn = theta_n(tower, n, budget)
        direct = h_n(act, n, budget).h_size
        report["theta"][n] = thn.to_json()
        report["direct"][n] = direct
        report["consistent"] &= thn.ok and thn.left_size == direct == thn.right_size
    report["ok"] = report["isomorphism"] and report["consistent"]
    return report
