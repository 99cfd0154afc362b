"""Finite groups as integer-indexed Cayley tables.

Elements are the integers ``0 .. order-1`` and element ``0`` is always the
identity.  Tables are stored as read-only numpy arrays so that every
exhaustive check can be vectorised.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotHomomorphism,
    NotNormal,
    NotSubgroup,
    SizeLimit,
    ValidationError,
)
from .limits import DEFAULT_ORDER_CAP

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "Subgroup",
    "validate_group",
    "make_cyclic",
    "make_dihedral",
    "make_symmetric",
    "direct_product",
    "trivial_group",
    "group_from_spec",
    "generate",
    "generating_set",
    "element_order",
    "commutator_subgroup",
    "derived_series",
    "is_normal",
    "quotient_group",
    "automorphisms",
    "is_characteristic",
    "omega_subgroup",
    "identity_hom",
    "compose",
]


def _frozen(arr):
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    inv: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} order={self.order}>"

    def m(self, x, y) -> int:
        return int(self.mul[x, y])

    def power(self, x, k) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def require_abelian(self):
        if not self.is_abelian():
            x, y = map(int, np.argwhere(self.mul != self.mul.T)[0])
            raise NotAbelian(x, y, detail=f"{self!r} is not abelian")

    def to_json(self) -> dict:
        return {"order": self.order, "mul": self.mul.tolist()}

    def same_table(self, other) -> bool:
        return self is other or bool(np.array_equal(self.mul, other.mul))


def validate_group(table, name="", cap=None) -> FiniteGroup:
    """Check the group axioms on a raw table and build a FiniteGroup.

    Element 0 must be a two-sided identity.  The checks run identity,
    then inverses, then associativity, and each failure names the first
    witness found.
    """
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ValidationError(detail="table must be a non-empty square")
    n = mul.shape[0]
    if cap is not None and n > cap:
        raise SizeLimit(n, cap)
    if mul.min() < 0 or mul.max() >= n:
        raise ValidationError(detail="table entries out of range")
    idx = np.arange(n)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        raise NoIdentity(detail="element 0 is not a two-sided identity")
    inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        hits = np.flatnonzero((mul[x] == 0) & (mul[:, x] == 0))
        if hits.size == 0:
            raise NoInverse(x)
        inv[x] = hits[0]
    # (xy)z == x(yz) for all triples at once
    left = mul[mul[:, :, None], idx[None, None, :]]
    right = mul[idx[:, None, None], mul[None, :, :]]
    bad = np.argwhere(left != right)
    if bad.size:
        raise NotAssociative(*map(int, bad[0]))
    return FiniteGroup(_frozen(mul), _frozen(inv), name)


def _check_cap(order, cap):
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    if order > cap:
        raise SizeLimit(order, cap)


def trivial_group() -> FiniteGroup:
    return validate_group([[0]], name="1")


def make_cyclic(n, cap=None) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_cap(n, cap)
    i = np.arange(n)
    return validate_group((i[:, None] + i[None, :]) % n, name=f"Z/{n}")


def make_dihedral(n, cap=None) -> FiniteGroup:
    """Dihedral group of order 2n; index ``i + n*j`` stands for r^i s^j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_cap(2 * n, cap)
    table = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for x in range(2 * n):
        i, a = x % n, x // n
        for y in range(2 * n):
            k, b = y % n, y // n
            sign = -1 if a else 1
            table[x, y] = (i + sign * k) % n + n * ((a + b) % 2)
    return validate_group(table, name=f"D{n}")


def make_symmetric(n) -> FiniteGroup:
    """Symmetric group on ``n <= 5`` points; (pq)(x) = p(q(x)).

    Element order follows ``itertools.permutations`` so the identity comes
    first.  S5 (order 120) is allowed past the usual order cap.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 5:
        raise SizeLimit(math.factorial(n), 120)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return validate_group(table, name=f"S{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, cap=None) -> FiniteGroup:
    """Index ``x*|H| + y`` stands for the pair (x, y)."""
    _check_cap(g.order * h.order, cap)
    nh = h.order
    a = np.arange(g.order * nh)
    gx, hx = a // nh, a % nh
    table = g.mul[gx[:, None], gx[None, :]] * nh + h.mul[hx[:, None], hx[None, :]]
    return validate_group(table, name=f"{g.name}x{h.name}")


_CTOR = re.compile(r"^\s*(cyclic|dihedral|symmetric)\s*:\s*(\d+)\s*$")


def _split_product_args(body):
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ValueError(f"product needs two factors: {body!r}")


def group_from_spec(spec, cap=None) -> FiniteGroup:
    """Build a group from ``"cyclic:8"``, ``"product:(cyclic:2,cyclic:2)"``,
    or a JSON-style ``{"order": n, "mul": [[...]]}`` mapping."""
    if isinstance(spec, dict):
        mul = spec["mul"]
        if "order" in spec and spec["order"] != len(mul):
            raise ValidationError(detail="order does not match table size")
        return validate_group(mul, name=spec.get("name", ""), cap=cap)
    text = str(spec).strip()
    m = _CTOR.match(text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "cyclic":
            return make_cyclic(n, cap)
        if kind == "dihedral":
            return make_dihedral(n, cap)
        return make_symmetric(n)
    if text.startswith("product:"):
        body = text[len("product:"):].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"bad product spec {text!r}")
        left, right = _split_product_args(body[1:-1])
        return direct_product(group_from_spec(left, cap), group_from_spec(right, cap), cap)
    if text == "trivial":
        return trivial_group()
    raise ValueError(f"unknown group constructor {text!r}")


def group_from_json(text) -> FiniteGroup:
    return group_from_spec(json.loads(text))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent.same_table(other.parent) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def is_trivial(self) -> bool:
        return self.members == {0}

    def sorted(self) -> list:
        return sorted(self.members)


def check_subgroup(parent, members) -> Subgroup:
    members = frozenset(int(x) for x in members)
    if 0 not in members:
        raise NotSubgroup(detail="identity missing")
    for x in members:
        if int(parent.inv[x]) not in members:
            raise NotSubgroup(x, detail="not closed under inverses")
        for y in members:
            if int(parent.mul[x, y]) not in members:
                raise NotSubgroup(x, y, detail="not closed under multiplication")
    return Subgroup(parent, members)


def generate(g: FiniteGroup, gens) -> Subgroup:
    """Smallest subgroup containing ``gens`` (closure under right multiplication)."""
    gens = [int(x) for x in gens]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(g.mul[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(g, seen)


def element_order(g: FiniteGroup, x) -> int:
    k, y = 1, int(x)
    while y != 0:
        y = int(g.mul[y, x])
        k += 1
    return k


def generating_set(g: FiniteGroup) -> list:
    """A small generating set, chosen greedily by decreasing element order.

    Ties are broken by index so the result is deterministic.
    """
    order = [element_order(g, x) for x in g.elements]
    candidates = sorted(range(1, g.order), key=lambda x: (-order[x], x))
    gens, span = [], {0}
    for x in candidates:
        if len(span) == g.order:
            break
        if x not in span:
            gens.append(x)
            span = set(generate(g, gens).members)
    return gens


def commutator_subgroup(g: FiniteGroup, h: Subgroup | None = None) -> Subgroup:
    """[H, H] inside G (H defaults to G): closure of all x^-1 y^-1 x y."""
    members = sorted(h.members) if h is not None else list(g.elements)
    comms = set()
    for x in members:
        for y in members:
            xy = g.mul[g.inv[x], g.inv[y]]
            comms.add(int(g.mul[g.mul[xy, x], y]))
    return generate(g, sorted(comms))


def derived_series(g: FiniteGroup) -> list:
    """G = A(0) >= A(1) >= ... until two consecutive terms agree.

    The stationary term is listed once; it is trivial iff G is solvable.
    """
    series = [Subgroup(g, g.elements)]
    while True:
        nxt = commutator_subgroup(g, series[-1])
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def is_normal(g: FiniteGroup, n: Subgroup) -> bool:
    try:
        _check_normal(g, n)
    except NotNormal:
        return False
    return True


def _check_normal(g, n):
    for x in g.elements:
        for y in n.sorted():
            c = int(g.mul[g.mul[x, y], g.inv[x]])
            if c not in n.members:
                raise NotNormal(x, y)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))

    def __call__(self, x) -> int:
        return self.image[x]

    def __repr__(self):
        return f"<GroupHom {self.source!r} -> {self.target!r}>"

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, [x for x, y in enumerate(self.image) if y == 0])

    def image_set(self) -> frozenset:
        return frozenset(self.image)

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.order


def make_hom(source, target, image, name="") -> GroupHom:
    """Validate the homomorphism law exhaustively and wrap the table."""
    img = np.asarray(image, dtype=np.int64)
    if img.shape != (source.order,):
        raise ValidationError(detail="image table has wrong length")
    if img.min() < 0 or img.max() >= target.order:
        raise ValidationError(detail="image entries out of range")
    lhs = img[source.mul]
    rhs = target.mul[img[:, None], img[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotHomomorphism(*map(int, bad[0]))
    return GroupHom(source, target, tuple(img.tolist()), name)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements), "id")


def compose(second: GroupHom, first: GroupHom) -> GroupHom:
    """``second ∘ first``."""
    return GroupHom(first.source, second.target, tuple(second.image[y] for y in first.image))


def quotient_group(g: FiniteGroup, n: Subgroup):
    """G/N on minimal coset representatives.

    Returns ``(quotient, projection)``.  Cosets are numbered by increasing
    minimal representative, so N itself (representative 0) is the identity.
    """
    _check_normal(g, n)
    coset_of = {}
    reps = []
    for x in g.elements:
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for y in n.members:
            coset_of[int(g.mul[x, y])] = idx
    k = len(reps)
    table = [[coset_of[int(g.mul[reps[i], reps[j]])] for j in range(k)] for i in range(k)]
    q = validate_group(table, name=f"{g.name}/{n.order}" if g.name else "")
    proj = GroupHom(g, q, tuple(coset_of[x] for x in g.elements), "proj")
    return q, proj


def section(proj: GroupHom) -> list:
    """Minimal preimage of each element of the target."""
    reps = [None] * proj.target.order
    for x, y in enumerate(proj.image):
        if reps[y] is None:
            reps[y] = x
    return reps


def _extend_from_generators(g, gens, images, target):
    """Extend generator images to a map on all of G; None if inconsistent."""
    phi = [-1] * g.order
    phi[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = int(g.mul[x, s])
            v = int(target.mul[phi[x], t])
            if phi[y] == -1:
                phi[y] = v
                queue.append(y)
            elif phi[y] != v:
                return None
    return phi


def automorphisms(g: FiniteGroup, cap=None) -> list:
    """All automorphisms of G.

    Backtracks over images of a greedy generating set; a generator may
    only go to an element of the same order.
    """
    _check_cap(g.order, cap)
    gens = generating_set(g)
    orders = [element_order(g, x) for x in g.elements]
    options = [[y for y in g.elements if orders[y] == orders[s]] for s in gens]
    out = []
    for images in itertools.product(*options):
        phi = _extend_from_generators(g, gens, images, g)
        if phi is None or len(set(phi)) != g.order:
            continue
        out.append(GroupHom(g, g, tuple(phi), "aut"))
    return out


def is_characteristic(g: FiniteGroup, n: Subgroup, auts=None) -> bool:
    auts = automorphisms(g) if auts is None else auts
    return all({a(x) for x in n.members} == n.members for a in auts)


def omega_subgroup(g: FiniteGroup, m) -> Subgroup:
    """Subgroup generated by all x with x^m = 1.

    Always characteristic; for cyclic groups it is the unique subgroup of
    order m when m divides |G|.
    """
    return generate(g, [x for x in g.elements if g.power(x, m) == 0])
