"""Independent brute-force oracles.

These use only plain Python lists and itertools, never the package's
numpy kernels, so agreement with the library is a genuine cross-check.
"""

from itertools import product


def table(g):
    return [list(map(int, row)) for row in g.mul]


def act_table(act):
    return [list(map(int, row)) for row in act.table]


def inverse_of(mul, x):
    return next(y for y in range(len(mul)) if mul[x][y] == 0)


def is_group_table(mul):
    n = len(mul)
    if any(mul[0][x] != x or mul[x][0] != x for x in range(n)):
        return False
    if any(all(mul[x][y] != 0 for y in range(n)) for x in range(n)):
        return False
    return all(mul[mul[x][y]][z] == mul[x][mul[y][z]] for x in range(n) for y in range(n) for z in range(n))


def element_order(mul, x):
    k, y = 1, x
    while y != 0:
        y = mul[y][x]
        k += 1
    return k


def closure(mul, gens):
    members = {0} | set(gens)
    while True:
        new = {mul[x][y] for x in members for y in members} | members
        if new == members:
            return frozenset(members)
        members = new


def commutators(mul, h=None):
    n = len(mul)
    h = range(n) if h is None else sorted(h)
    comms = set()
    for x in h:
        for y in h:
            xi, yi = inverse_of(mul, x), inverse_of(mul, y)
            comms.add(mul[mul[xi][yi]][mul[x][y]])
    return closure(mul, comms)


def is_hom(src, dst, f):
    n = len(src)
    return all(f[src[x][y]] == dst[f[x]][f[y]] for x in range(n) for y in range(n))


def all_automorphisms(mul):
    """Every bijective endomorphism, by full permutation search (small groups only)."""
    from itertools import permutations

    n = len(mul)
    out = []
    for perm in permutations(range(1, n)):
        f = (0, *perm)
        if is_hom(mul, mul, f):
            out.append(f)
    return out


def z1(act):
    """All maps G -> A satisfying a[st] = a[s] * s(a[t])."""
    g, a, t = table(act.g), table(act.a), act_table(act)
    ng, na = len(g), len(a)
    out = set()
    for vals in product(range(na), repeat=ng):
        if all(vals[g[s][u]] == a[vals[s]][t[s][vals[u]]] for s in range(ng) for u in range(ng)):
            out.add(vals)
    return out


def cb(act, vals, x):
    a, t = table(act.a), act_table(act)
    xi = inverse_of(a, x)
    return tuple(a[a[xi][v]][t[s][x]] for s, v in enumerate(vals))


def h1_classes(act):
    """Orbit partition of Z^1 under the coboundary action, as a set of frozensets."""
    remaining = set(z1(act))
    classes = set()
    while remaining:
        v = remaining.pop()
        orb = frozenset(cb(act, v, x) for x in range(act.a.order))
        remaining -= orb
        classes.add(orb)
    return classes


def fixed(act):
    t = act_table(act)
    return frozenset(x for x in range(act.a.order) if all(row[x] == x for row in t))


def differential(act, f, n):
    """d_n applied to an (n-1)-cochain given as a dict from tuples to A (abelian, additive)."""
    g, a, t = table(act.g), table(act.a), act_table(act)
    ng = len(g)
    out = {}
    for s in product(range(ng), repeat=n):
        v = t[s[0]][f[s[1:]]]
        for i in range(1, n):
            merged = s[: i - 1] + (g[s[i - 1]][s[i]],) + s[i + 1 :]
            v = a[v][f[merged]] if i % 2 == 0 else a[v][inverse_of(a, f[merged])]
        last = f[s[:-1]]
        v = a[v][last] if n % 2 == 0 else a[v][inverse_of(a, last)]
        out[s] = v
    return out


def cochain_dict(act, n, values):
    return dict(zip(product(range(act.g.order), repeat=n), values))


def z_and_b(act, n):
    """Brute-force Z^n and B^n as sets of value tuples (row-major over G^n)."""
    na, ng = act.a.order, act.g.order
    zs = set()
    for vals in product(range(na), repeat=ng**n):
        d = differential(act, cochain_dict(act, n, vals), n + 1)
        if all(v == 0 for v in d.values()):
            zs.add(vals)
    if n == 0:
        return zs, {(0,)}
    bs = set()
    for vals in product(range(na), repeat=ng ** (n - 1)):
        d = differential(act, cochain_dict(act, n - 1, vals), n)
        bs.add(tuple(d[k] for k in sorted(d)))
    return zs, bs
