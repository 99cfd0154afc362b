"""Nonabelian 1-cocycles and H^1 as a pointed orbit set.

A 1-cocycle is a map ``a: G -> A`` with ``a[st] = a[s] * s.a[t]``.  The
group A acts on the right of Z^1 by ``(a.x)[s] = x^-1 a[s] s.x`` and H^1 is
the set of orbits, pointed by the class of the constant cocycle at 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .actions import GAction, check_equivariant, restrict_action
from .errors import NotCocycle, NotGenerating, NotWellDefined
from .groups import GroupHom, Subgroup, generate, generating_set
from .limits import check_budget

__all__ = [
    "Cocycle1",
    "H1Set",
    "is_cocycle",
    "make_cocycle",
    "trivial_cocycle",
    "enumerate_z1_bruteforce",
    "enumerate_z1_backtracking",
    "enumerate_z1",
    "cb_act",
    "h1",
    "stabilizer",
    "orbit",
    "pushforward",
    "pullback",
]


@dataclass(frozen=True)
class Cocycle1:
    act: GAction = field(compare=False, repr=False)
    values: tuple

    def __getitem__(self, s):
        return self.values[s]

    def __len__(self):
        return len(self.values)


def is_cocycle(act: GAction, values) -> bool:
    """True iff a[st] == a[s] * s.a[t] for every pair (s, t)."""
    v = np.asarray(values, dtype=np.int64)
    if v.shape != (act.g.order,):
        return False
    lhs = v[act.g.mul]
    rhs = act.a.mul[v[:, None], act.table[:, v]]
    return bool((lhs == rhs).all())


def make_cocycle(act: GAction, values) -> Cocycle1:
    values = tuple(int(x) for x in values)
    if not is_cocycle(act, values):
        raise NotCocycle(values)
    return Cocycle1(act, values)


def trivial_cocycle(act: GAction) -> Cocycle1:
    return Cocycle1(act, (0,) * act.g.order)


def _cocycle_mask(act, cand):
    """Vectorised cocycle test over a batch of candidate value tables."""
    ok = np.ones(cand.shape[0], dtype=bool)
    amul, t = act.a.mul, act.table
    for s in act.g.elements:
        for u in act.g.elements:
            st = act.g.mul[s, u]
            ok &= cand[:, st] == amul[cand[:, s], t[s, cand[:, u]]]
            if not ok.any():
                return ok
    return ok


def enumerate_z1_bruteforce(act: GAction, budget=None, chunk=1 << 16) -> set:
    """Z^1 by testing every map with a[1] = 1.

    This is the reference enumerator; it checks ``|A|^(|G|-1)`` candidates.
    """
    ng, na = act.g.order, act.a.order
    total = na ** (ng - 1)
    check_budget(total, budget)
    out = set()
    radix = na ** np.arange(ng - 2, -1, -1, dtype=np.int64) if ng > 1 else None
    for start in range(0, total, chunk):
        k = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cand = np.zeros((k.size, ng), dtype=np.int64)
        if ng > 1:
            cand[:, 1:] = (k[:, None] // radix[None, :]) % na
        mask = _cocycle_mask(act, cand)
        out.update(Cocycle1(act, tuple(row)) for row in cand[mask].tolist())
    return out


def enumerate_z1_backtracking(act: GAction, generators=None, budget=None) -> set:
    """Z^1 by choosing values on generators and propagating.

    Values spread along a breadth-first walk of the Cayley graph using
    ``a[s g] = a[s] * s.a[g]``; an assignment survives only if that rule is
    consistent for every element s and every generator g, which forces the
    cocycle identity on all pairs.
    """
    g, a = act.g, act.a
    gens = generating_set(g) if generators is None else [int(x) for x in generators]
    if generate(g, gens).order != g.order:
        raise NotGenerating(*gens)
    check_budget(a.order ** len(gens), budget)
    gens = [s for s in gens if s != 0]
    # BFS spanning tree: each element reached as parent * gen
    tree = []
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.mul[x, s])
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, s))
                    nxt.append(y)
        frontier = nxt
    out = set()
    amul, t, gmul = a.mul, act.table, g.mul
    for images in itertools.product(range(a.order), repeat=len(gens)):
        val = dict(zip(gens, images))
        vals = [-1] * g.order
        vals[0] = 0
        for y, x, s in tree:
            vals[y] = int(amul[vals[x], t[x, val[s]]])
        if any(vals[s] != val[s] for s in gens):
            continue
        ok = True
        for x in g.elements:
            for s in gens:
                if vals[int(gmul[x, s])] != int(amul[vals[x], t[x, val[s]]]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(Cocycle1(act, tuple(vals)))
    return out


def enumerate_z1(act: GAction, budget=None, oracle=False) -> set:
    if oracle:
        return enumerate_z1_bruteforce(act, budget)
    return enumerate_z1_backtracking(act, budget=budget)


def cb_act(a: Cocycle1, x) -> Cocycle1:
    """The coboundary action: (a.x)[s] = x^-1 a[s] s.x."""
    act = a.act
    amul = act.a.mul
    xi = int(act.a.inv[x])
    v = np.asarray(a.values, dtype=np.int64)
    out = amul[xi, amul[v, act.table[:, x]]]
    return Cocycle1(act, tuple(out.tolist()))


def stabilizer(a: Cocycle1) -> Subgroup:
    return Subgroup(a.act.a, [x for x in a.act.a.elements if cb_act(a, x) == a])


def orbit(a: Cocycle1) -> frozenset:
    return frozenset(cb_act(a, x) for x in a.act.a.elements)


def _orbit_table(act, values):
    """All x -> a.x at once: row x is the cocycle a.x."""
    amul = act.a.mul
    v = np.asarray(values, dtype=np.int64)
    xs = np.arange(act.a.order)
    return amul[act.a.inv[xs][:, None], amul[v[None, :], act.table[:, xs].T]]


@dataclass(frozen=True, eq=False)
class H1Set:
    act: GAction
    classes: tuple
    reps: tuple
    stab_sizes: tuple
    class_of: dict
    base_class_index: int = 0
    z1_size: int = 0

    def __len__(self):
        return len(self.classes)

    @property
    def size(self) -> int:
        return len(self.classes)

    def rep(self, i) -> Cocycle1:
        return self.reps[i]

    def classify(self, a: Cocycle1) -> int:
        return self.class_of[a.values]

    def to_json(self) -> dict:
        return {
            "z1_size": self.z1_size,
            "classes": [
                {"size": len(c), "stab_size": st, "rep": list(r.values)}
                for c, st, r in zip(self.classes, self.stab_sizes, self.reps)
            ],
            "base_class": self.base_class_index,
        }


def h1(act: GAction, budget=None, oracle=False, z1=None) -> H1Set:
    """Partition Z^1 into coboundary orbits.

    Classes are sorted by their lexicographically minimal member, which is
    also the stored representative; the trivial cocycle is all zeros and so
    always lands in class 0.
    """
    if z1 is None:
        z1 = enumerate_z1(act, budget, oracle)
    values = sorted(c.values for c in z1)
    remaining = set(values)
    classes, reps, stabs = [], [], []
    for v in values:
        if v not in remaining:
            continue
        rows = _orbit_table(act, v)
        members = {tuple(r) for r in rows.tolist()}
        stab = int((rows == np.asarray(v)[None, :]).all(axis=1).sum())
        if not members <= remaining:
            raise NotWellDefined(v, detail="orbit leaves the enumerated Z^1")
        remaining -= members
        classes.append(frozenset(Cocycle1(act, m) for m in members))
        reps.append(Cocycle1(act, min(members)))
        stabs.append(stab)
    class_of = {c.values: i for i, cls in enumerate(classes) for c in cls}
    base = class_of[(0,) * act.g.order]
    return H1Set(act, tuple(classes), tuple(reps), tuple(stabs), class_of, base, len(values))


def _pushed_values(phi, values):
    return tuple(phi.image[v] for v in values)


def pushforward(phi: GroupHom, obj, target, source: GAction | None = None):
    """Push a cocycle or a whole H^1 along an equivariant ``phi: A -> A'``.

    For a Cocycle1, ``target`` is the GAction on A' and the result is the
    cocycle ``s -> phi(a[s])``.  For an H1Set, ``target`` is the H1Set of A'
    and the result is the induced map of pointed sets as a list of class
    indices; every member of every class is pushed, so a
    representative-dependent map raises NotWellDefined.
    """
    if isinstance(obj, Cocycle1):
        check_equivariant(phi, obj.act, target)
        return Cocycle1(target, _pushed_values(phi, obj.values))
    if isinstance(obj, H1Set):
        check_equivariant(phi, obj.act, target.act)
        out = []
        for i, cls in enumerate(obj.classes):
            images = {target.class_of[_pushed_values(phi, c.values)] for c in cls}
            if len(images) != 1:
                raise NotWellDefined(i, detail="class image depends on representative")
            out.append(images.pop())
        return out
    raise TypeError(f"cannot push forward {type(obj).__name__}")


def pullback(psi: GroupHom, a: Cocycle1, restricted: GAction | None = None) -> Cocycle1:
    """Cocycle ``t -> a[psi(t)]`` over H, with A an H-group through psi."""
    if restricted is None:
        restricted = restrict_action(a.act, psi)
    return Cocycle1(restricted, tuple(a.values[psi.image[t]] for t in psi.source.elements))
