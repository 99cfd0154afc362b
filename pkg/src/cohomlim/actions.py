"""Actions of a finite group G on a finite group A by automorphisms.

An action is stored as a full ``|G| x |A|`` table with ``table[s, x]`` the
image of ``x`` under ``s``.  Row ``s`` is the automorphism of A attached to
``s``, so an action is the same data as a homomorphism G -> Aut(A).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AutomorphismAxiom,
    CompositionAxiom,
    IdentityAxiom,
    NotAbelian,
    NotCharacteristic,
    NotEquivariant,
    NotPreserved,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    automorphisms,
    is_characteristic,
    is_normal,
    quotient_group,
    section,
)

__all__ = [
    "GAction",
    "validate_action",
    "trivial_action",
    "inversion_action",
    "conjugation_action",
    "action_from_hom",
    "action_to_hom",
    "restrict_action",
    "fixed_points",
    "induced_action_on_quotient",
    "check_equivariant",
]


@dataclass(frozen=True, eq=False)
class GAction:
    g: FiniteGroup
    a: FiniteGroup
    table: np.ndarray
    name: str = ""

    def __call__(self, s, x) -> int:
        return int(self.table[s, x])

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<GAction{label} {self.g!r} on {self.a!r}>"

    def is_trivial(self) -> bool:
        return bool((self.table == np.arange(self.a.order)[None, :]).all())

    def same_as(self, other) -> bool:
        return self is other or (
            self.g.same_table(other.g)
            and self.a.same_table(other.a)
            and np.array_equal(self.table, other.table)
        )


def validate_action(g: FiniteGroup, a: FiniteGroup, table, name="") -> GAction:
    """Check identity, composition and automorphism axioms exhaustively.

    Axioms are checked in the order identity, automorphism, composition,
    and the first violation is raised with its witnesses.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (g.order, a.order):
        raise ValidationError(detail=f"action table must be {g.order}x{a.order}")
    if t.min() < 0 or t.max() >= a.order:
        raise ValidationError(detail="action entries out of range")
    xs = np.arange(a.order)
    bad = np.flatnonzero(t[0] != xs)
    if bad.size:
        raise IdentityAxiom(int(bad[0]))
    # s(xy) == s(x) s(y)
    lhs = t[:, a.mul]
    rhs = a.mul[t[:, :, None], t[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise AutomorphismAxiom(*map(int, bad[0]))
    # table[st, x] == table[s, table[t, x]]
    lhs = t[g.mul]
    rhs = t[np.arange(g.order)[:, None, None], t[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise CompositionAxiom(*map(int, bad[0]))
    t = t.copy()
    t.setflags(write=False)
    return GAction(g, a, t, name)


def trivial_action(g: FiniteGroup, a: FiniteGroup) -> GAction:
    return validate_action(g, a, np.tile(np.arange(a.order), (g.order, 1)), "trivial")


def inversion_action(g: FiniteGroup, a: FiniteGroup) -> GAction:
    """G of order 2 acting on abelian A by x -> x^-1."""
    if g.order != 2:
        raise ValidationError(detail="inversion action needs G of order 2")
    if not a.is_abelian():
        x, y = map(int, np.argwhere(a.mul != a.mul.T)[0])
        raise NotAbelian(x, y)
    return validate_action(g, a, np.stack([np.arange(a.order), a.inv]), "inversion")


def conjugation_action(g: FiniteGroup, a: FiniteGroup | None = None) -> GAction:
    """G acting on itself by s.x = s x s^-1."""
    if a is not None and not g.same_table(a):
        raise ValidationError(detail="conjugation needs A = G")
    a = g if a is None else a
    s = np.arange(g.order)
    table = g.mul[g.mul[s[:, None], s[None, :]], g.inv[s][:, None]]
    return validate_action(g, a, table, "conjugation")


def action_from_hom(g: FiniteGroup, a: FiniteGroup, rho, name="") -> GAction:
    """Action from a homomorphism G -> Aut(A).

    ``rho[s]`` is the automorphism for ``s``, given as a GroupHom A -> A or a
    plain image table.
    """
    rows = [r.image if isinstance(r, GroupHom) else tuple(r) for r in rho]
    return validate_action(g, a, rows, name)


def action_to_hom(act: GAction) -> list:
    """Rows of the table as automorphisms of A, one per element of G."""
    return [GroupHom(act.a, act.a, tuple(row.tolist()), "rho") for row in act.table]


def restrict_action(act: GAction, psi: GroupHom) -> GAction:
    """A regarded as an H-group through ``psi: H -> G``."""
    if not psi.target.same_table(act.g):
        raise ValidationError(detail="psi must land in the acting group")
    return validate_action(psi.source, act.a, act.table[list(psi.image)], act.name)


def fixed_points(act: GAction) -> Subgroup:
    """A^G, which is also H^0(G, A)."""
    fixed = np.flatnonzero((act.table == np.arange(act.a.order)[None, :]).all(axis=0))
    return Subgroup(act.a, fixed.tolist())


def check_equivariant(phi: GroupHom, src: GAction, dst: GAction):
    """Raise NotEquivariant(s, x) unless phi(s.x) == s.phi(x) everywhere."""
    img = np.asarray(phi.image)
    lhs = img[src.table]
    rhs = dst.table[:, img]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotEquivariant(*map(int, bad[0]))


def induced_action_on_quotient(act: GAction, n: Subgroup, require_characteristic=None):
    """Action of G on A/N making the projection equivariant.

    Returns ``(quotient_action, projection)``.  When A has order at most 24
    N is also required to be characteristic (checked via Aut(A)); otherwise
    normality plus stability under every row of the action is enough.
    """
    a = act.a
    if require_characteristic is None:
        require_characteristic = a.order <= 24
    if not is_normal(a, n):
        # let quotient_group raise with the witness
        quotient_group(a, n)
    for s in act.g.elements:
        if any(int(act.table[s, x]) not in n.members for x in n.members):
            raise NotPreserved(s)
    if require_characteristic and not is_characteristic(a, n, automorphisms(a)):
        raise NotCharacteristic(detail="subgroup is not characteristic in A")
    q, proj = quotient_group(a, n)
    reps = section(proj)
    table = [[proj(int(act.table[s, reps[y]])) for y in q.elements] for s in act.g.elements]
    return validate_action(act.g, q, table, act.name), proj
