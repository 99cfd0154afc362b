"""Inhomogeneous cochains and H^n for an abelian G-module A.

An n-cochain is a table of ``|G|**n`` elements of A.  The tuple
``(s1, ..., sn)`` sits at mixed-radix position
``s1*|G|**(n-1) + ... + sn``; degree 0 is a single element of A.  All
arithmetic goes through the Cayley table of A, written additively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .actions import GAction, check_equivariant
from .errors import NotWellDefined, ValidationError
from .groups import FiniteGroup, validate_group
from .limits import check_budget

__all__ = [
    "Cochain",
    "CohomologyGroup",
    "differential",
    "differential_batch",
    "all_cochains",
    "z_n",
    "b_n",
    "h_n",
    "stab_n",
    "orbit_n",
    "add_cochains",
    "induced_map",
]


@dataclass(frozen=True)
class Cochain:
    act: GAction = field(compare=False, repr=False)
    n: int
    values: tuple

    def __len__(self):
        return len(self.values)


def _require_module(act):
    act.a.require_abelian()


@lru_cache(maxsize=None)
def _tuples(ng, n):
    """All of G^n as rows, in mixed-radix order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((ng,) * n).reshape(n, -1).T


def _encode(cols, ng):
    """Mixed-radix position of tuples stored column-wise (shape (N, k))."""
    if cols.shape[1] == 0:
        return np.zeros(cols.shape[0], dtype=np.int64)
    weights = ng ** np.arange(cols.shape[1] - 1, -1, -1, dtype=np.int64)
    return cols @ weights


@lru_cache(maxsize=None)
def _plan(gmul_bytes, ng, n):
    """Positions read by d_n: s1, (s2..sn), each merged face, (s1..s_{n-1})."""
    gmul = np.frombuffer(gmul_bytes, dtype=np.int64).reshape(ng, ng)
    tup = _tuples(ng, n)
    s1 = tup[:, 0]
    first = _encode(tup[:, 1:], ng)
    middle = []
    for i in range(1, n):
        merged = np.concatenate(
            [tup[:, : i - 1], gmul[tup[:, i - 1], tup[:, i]][:, None], tup[:, i + 1:]], axis=1
        )
        middle.append(_encode(merged, ng))
    last = _encode(tup[:, : n - 1], ng)
    return s1, first, middle, last


def _plan_for(g: FiniteGroup, n):
    return _plan(g.mul.tobytes(), g.order, n)


def differential_batch(act: GAction, f: np.ndarray, n: int) -> np.ndarray:
    """d_n applied row-wise to a batch ``f`` of (n-1)-cochains.

    (d_n f)(s1..sn) = s1.f(s2..sn) + sum_i (-1)^i f(.., s_i s_{i+1}, ..)
    + (-1)^n f(s1..s_{n-1}).
    """
    if n < 1:
        raise ValueError("differential needs n >= 1")
    a = act.a
    add, neg = a.mul, a.inv
    f = np.asarray(f, dtype=np.int64)
    s1, first, middle, last = _plan_for(act.g, n)
    out = act.table[s1[None, :], f[:, first]]
    for i, pos in enumerate(middle, start=1):
        term = f[:, pos]
        out = add[out, neg[term] if i % 2 else term]
    term = f[:, last]
    out = add[out, neg[term] if n % 2 else term]
    return out


def differential(f: Cochain) -> Cochain:
    """d_{n+1} of an n-cochain."""
    _require_module(f.act)
    row = np.asarray(f.values, dtype=np.int64)[None, :]
    out = differential_batch(f.act, row, f.n + 1)[0]
    return Cochain(f.act, f.n + 1, tuple(out.tolist()))


def add_cochains(f: Cochain, g: Cochain) -> Cochain:
    if f.n != g.n:
        raise ValidationError(detail="degrees differ")
    add = f.act.a.mul
    return Cochain(f.act, f.n, tuple(int(add[x, y]) for x, y in zip(f.values, g.values)))


def all_cochains(act: GAction, n: int, budget=None, chunk=1 << 15):
    """Yield every n-cochain in blocks of rows (lexicographic order)."""
    na = act.a.order
    width = act.g.order ** n
    total = na ** width
    check_budget(total, budget)
    radix = na ** np.arange(width - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        k = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield (k[:, None] // radix[None, :]) % na


def z_n(act: GAction, n: int, budget=None) -> set:
    """Kernel of d_{n+1}, by testing every n-cochain."""
    _require_module(act)
    out = set()
    for block in all_cochains(act, n, budget):
        d = differential_batch(act, block, n + 1)
        keep = block[(d == 0).all(axis=1)]
        out.update(Cochain(act, n, tuple(r)) for r in keep.tolist())
    return out


def b_n(act: GAction, n: int, budget=None) -> set:
    """Image of d_n over all (n-1)-cochains; B^0 = {0}."""
    _require_module(act)
    if n == 0:
        return {Cochain(act, 0, (0,))}
    out = set()
    for block in all_cochains(act, n - 1, budget):
        d = differential_batch(act, block, n)
        out.update(Cochain(act, n, tuple(r)) for r in np.unique(d, axis=0).tolist())
    return out


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    act: GAction
    n: int
    z_size: int
    b_size: int
    h_size: int
    class_of: dict
    reps: tuple
    group: FiniteGroup
    element_orders: tuple

    def classify(self, f: Cochain) -> int:
        return self.class_of[f.values]

    def classes(self) -> list:
        out = [set() for _ in range(self.h_size)]
        for v, i in self.class_of.items():
            out[i].add(v)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "z": self.z_size,
            "b": self.b_size,
            "h": self.h_size,
            "orders": list(self.element_orders),
        }


def _element_orders(q):
    out = []
    for x in q.elements:
        k, y = 1, x
        while y != 0:
            y = int(q.mul[y, x])
            k += 1
        out.append(k)
    return tuple(sorted(out))


def h_n(act: GAction, n: int, budget=None, z=None, b=None) -> CohomologyGroup:
    """H^n = Z^n / B^n as a finite abelian group.

    Cosets are numbered by their lexicographically minimal member, so the
    zero class is 0.  The quotient comes back as a FiniteGroup together with
    the multiset of element orders.
    """
    _require_module(act)
    z = z_n(act, n, budget) if z is None else z
    b = b_n(act, n, budget) if b is None else b
    add = act.a.mul
    zvals = sorted(c.values for c in z)
    barr = np.array(sorted(c.values for c in b), dtype=np.int64)
    remaining = set(zvals)
    class_of, reps = {}, []
    for v in zvals:
        if v not in remaining:
            continue
        coset = add[np.asarray(v)[None, :], barr]
        members = {tuple(r) for r in coset.tolist()}
        if not members <= remaining:
            raise ValidationError(v, detail="coset leaves Z^n; B^n is not inside Z^n")
        idx = len(reps)
        reps.append(Cochain(act, n, min(members)))
        for m in members:
            class_of[m] = idx
        remaining -= members
    k = len(reps)
    rarr = np.array([r.values for r in reps], dtype=np.int64)
    table = [[class_of[tuple(add[rarr[i], rarr[j]].tolist())] for j in range(k)] for i in range(k)]
    q = validate_group(table, name=f"H{n}")
    if len(zvals) != k * len(barr):
        raise ValidationError(detail="|Z| is not |B| times the number of cosets")
    return CohomologyGroup(act, n, len(zvals), len(barr), k, class_of, tuple(reps), q, _element_orders(q))


def stab_n(a: Cochain, budget=None) -> set:
    """(n-1)-cochains f with a + d_n f = a, found by direct search."""
    act, n = a.act, a.n
    _require_module(act)
    if n < 1:
        raise ValueError("stabilizers need n >= 1")
    add = act.a.mul
    av = np.asarray(a.values, dtype=np.int64)
    out = set()
    for block in all_cochains(act, n - 1, budget):
        moved = add[av[None, :], differential_batch(act, block, n)]
        keep = block[(moved == av[None, :]).all(axis=1)]
        out.update(Cochain(act, n - 1, tuple(r)) for r in keep.tolist())
    return out


def orbit_n(a: Cochain, budget=None) -> set:
    """{a + d_n f : f an (n-1)-cochain}."""
    act, n = a.act, a.n
    _require_module(act)
    if n < 1:
        raise ValueError("orbits need n >= 1")
    add = act.a.mul
    av = np.asarray(a.values, dtype=np.int64)
    out = set()
    for block in all_cochains(act, n - 1, budget):
        moved = add[av[None, :], differential_batch(act, block, n)]
        out.update(Cochain(act, n, tuple(r)) for r in np.unique(moved, axis=0).tolist())
    return out


def induced_map(phi, src: CohomologyGroup, dst: CohomologyGroup) -> list:
    """Class map H^n(G, A) -> H^n(G, A') of an equivariant ``phi: A -> A'``.

    Every member of every class is pushed, so a representative-dependent
    result raises NotWellDefined.
    """
    check_equivariant(phi, src.act, dst.act)
    img = np.asarray(phi.image, dtype=np.int64)
    out = [None] * src.h_size
    for v, i in src.class_of.items():
        j = dst.class_of[tuple(img[list(v)].tolist())]
        if out[i] is None:
            out[i] = j
        elif out[i] != j:
            raise NotWellDefined(i, detail="class image depends on representative")
    return out
