"""G-torsors under A and their correspondence with H^1.

A torsor here always has point set ``range(|A|)``.  It carries a left
G-action ``g_table`` and a right A-action ``a_table`` that is simply
transitive and compatible with G: ``s.(p.x) = s.p . s.x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import GAction
from .errors import ActionMismatch, NotTorsor
from .h1 import Cocycle1, H1Set

__all__ = [
    "Torsor",
    "validate_torsor",
    "torsor_from_cocycle",
    "cocycle_from_torsor",
    "are_isomorphic",
    "classify_torsors",
]


@dataclass(frozen=True, eq=False)
class Torsor:
    act: GAction
    g_table: np.ndarray
    a_table: np.ndarray

    @property
    def size(self) -> int:
        return int(self.a_table.shape[0])


def validate_torsor(t: Torsor) -> Torsor:
    act = t.act
    g, a = act.g, act.a
    gt, at = np.asarray(t.g_table), np.asarray(t.a_table)
    n = a.order
    if gt.shape != (g.order, n) or at.shape != (n, n):
        raise NotTorsor(detail="table shapes do not match the action")
    if not (gt[0] == np.arange(n)).all():
        raise NotTorsor(0, detail="identity of G does not act trivially")
    bad = np.argwhere(gt[g.mul] != gt[np.arange(g.order)[:, None, None], gt[None, :, :]])
    if bad.size:
        raise NotTorsor(*map(int, bad[0]), detail="G-action is not a composition law")
    if not (at[:, 0] == np.arange(n)).all():
        raise NotTorsor(detail="identity of A does not act trivially")
    # (p.x).y == p.(xy)
    bad = np.argwhere(at[at[:, :, None], np.arange(n)[None, None, :]] != at[:, a.mul])
    if bad.size:
        raise NotTorsor(*map(int, bad[0]), detail="A-action is not a right action")
    # simple transitivity: each row of a_table is a bijection onto the points
    for p in range(n):
        if len(set(at[p].tolist())) != n:
            raise NotTorsor(p, detail="A-action is not simply transitive")
    # s.(p.x) == (s.p).(s.x)
    lhs = gt[:, at]
    rhs = at[gt[:, :, None], act.table[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotTorsor(*map(int, bad[0]), detail="actions are not compatible")
    return t


def torsor_from_cocycle(a: Cocycle1) -> Torsor:
    """The twisted torsor: s acts by p -> a[s] * s.p, A by right multiplication."""
    act = a.act
    v = np.asarray(a.values, dtype=np.int64)
    g_table = act.a.mul[v[:, None], act.table]
    a_table = np.array(act.a.mul)
    return Torsor(act, g_table, a_table)


def cocycle_from_torsor(t: Torsor, p0=0) -> Cocycle1:
    """a[s] is the unique x with s.p0 = p0.x."""
    row = np.asarray(t.a_table[p0])
    where = np.empty(t.size, dtype=np.int64)
    where[row] = np.arange(t.size)
    values = where[np.asarray(t.g_table)[:, p0]]
    return Cocycle1(t.act, tuple(values.tolist()))


def are_isomorphic(t1: Torsor, t2: Torsor):
    """A bijection of points commuting with both actions, or None.

    Any such map is determined by where it sends point 0, because it
    commutes with the simply transitive A-action; so only ``|A|`` candidates
    are tried.  On twisted torsors these are the left multiplications.
    """
    if not t1.act.same_as(t2.act):
        raise ActionMismatch(detail="torsors live over different actions")
    at1, at2 = np.asarray(t1.a_table), np.asarray(t2.a_table)
    gt1, gt2 = np.asarray(t1.g_table), np.asarray(t2.g_table)
    n = t1.size
    # row 0 of a_table1 is a bijection A -> points: point p = 0.x
    x_of = np.empty(n, dtype=np.int64)
    x_of[at1[0]] = np.arange(n)
    for q in range(n):
        alpha = at2[q, x_of]
        if (alpha[gt1] == gt2[:, alpha]).all():
            return tuple(alpha.tolist())
    return None


def classify_torsors(act: GAction, z1, h: H1Set | None = None) -> dict:
    """Group the twisted torsors of all cocycles in ``z1`` up to isomorphism.

    Each torsor is compared with one representative per class found so
    far.  Returns ``{"classes": [[values, ...], ...], "agrees_with_h1": bool}``
    when ``h`` is given.
    """
    reps: list = []
    members: list = []
    for c in sorted(z1, key=lambda c: c.values):
        t = torsor_from_cocycle(c)
        for i, (rt, _) in enumerate(reps):
            if are_isomorphic(rt, t) is not None:
                members[i].append(c)
                break
        else:
            reps.append((t, c))
            members.append([c])
    out = {"classes": members, "reps": [c for _, c in reps]}
    if h is not None:
        iso_part = {frozenset(c.values for c in cls) for cls in members}
        h1_part = {frozenset(c.values for c in cls) for cls in h.classes}
        out["agrees_with_h1"] = iso_part == h1_part
    return out
