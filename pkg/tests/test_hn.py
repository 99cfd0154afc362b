from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cohomlim.actions import fixed_points, inversion_action, trivial_action, validate_action
from cohomlim.errors import BudgetExceeded, NotAbelian
from cohomlim.groups import direct_product, make_cyclic, make_hom, make_symmetric
from cohomlim.h1 import h1
from cohomlim.hn import (
    Cochain,
    add_cochains,
    b_n,
    differential,
    differential_batch,
    h_n,
    induced_map,
    orbit_n,
    stab_n,
    z_n,
)

C2, C3, C4 = make_cyclic(2), make_cyclic(3), make_cyclic(4)
TRIV22 = trivial_action(C2, C2)


MODULES = {
    "triv22": TRIV22,
    "inv23": inversion_action(C2, C3),
    "triv24": trivial_action(C2, C4),
    "inv24": inversion_action(C2, C4),
    "triv32": trivial_action(C3, C2),
    "triv33": trivial_action(C3, C3),
    "swap_klein": validate_action(C2, direct_product(C2, C2), [[0, 1, 2, 3], [0, 2, 1, 3]]),
}


def vals(s):
    return {c.values for c in s}


def test_differential_examples():
    act = inversion_action(C2, C3)
    for c in range(3):
        d = differential(Cochain(act, 0, (c,)))
        assert d.values == tuple((act(s, c) - c) % 3 for s in range(2))
    d = differential(Cochain(TRIV22, 1, (0, 1)))
    # entries (1,1),(1,s),(s,1),(s,s)
    assert d.values == (0, 0, 0, 0)
    d = differential(Cochain(TRIV22, 1, (1, 0)))
    assert d.values[3] == 1


@pytest.mark.parametrize("name", sorted(MODULES))
@pytest.mark.parametrize("n", [1, 2])
def test_differential_matches_oracle(name, n):
    act = MODULES[name]
    width = act.g.order ** (n - 1)
    rng = np.random.default_rng(n)
    batch = rng.integers(0, act.a.order, size=(20, width))
    ours = differential_batch(act, batch, n)
    for row, got in zip(batch.tolist(), ours.tolist()):
        d = oracles.differential(act, oracles.cochain_dict(act, n - 1, row), n)
        assert got == [d[k] for k in sorted(d)]


@pytest.mark.parametrize("ng,na", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 4), (2, 4)])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_complex_law_exhaustive(ng, na, n):
    g, a = make_cyclic(ng), make_cyclic(na)
    acts = [trivial_action(g, a)]
    if ng == 2:
        acts.append(inversion_action(g, a))
    for act in acts:
        width = ng**n
        if na**width > 70000:
            continue
        block = np.array(list(product(range(na), repeat=width)), dtype=np.int64).reshape(-1, width)
        dd = differential_batch(act, differential_batch(act, block, n + 1), n + 2)
        assert not dd.any()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sorted(MODULES)), st.integers(0, 2), st.data())
def test_additivity(name, n, data):
    act = MODULES[name]
    width = act.g.order**n
    f = data.draw(st.lists(st.integers(0, act.a.order - 1), min_size=width, max_size=width))
    g = data.draw(st.lists(st.integers(0, act.a.order - 1), min_size=width, max_size=width))
    cf, cg = Cochain(act, n, tuple(f)), Cochain(act, n, tuple(g))
    assert differential(add_cochains(cf, cg)) == add_cochains(differential(cf), differential(cg))


def test_z_and_b_examples():
    assert len(z_n(TRIV22, 2)) == 4
    assert len(b_n(TRIV22, 2)) == 2
    assert vals(b_n(trivial_action(C2, C4), 1)) == {(0, 0)}
    inv = inversion_action(C2, C4)
    assert vals(z_n(inv, 0)) == {(x,) for x in fixed_points(inv).members}


# the pure-Python oracle only handles up to a few thousand cochains
ORACLE_CASES = [
    (name, n)
    for name, act in sorted(MODULES.items())
    for n in (0, 1, 2)
    if act.a.order ** (act.g.order**n) <= 5000
]


@pytest.mark.parametrize("name,n", ORACLE_CASES)
def test_z_b_match_oracle(name, n):
    act = MODULES[name]
    zs, bs = oracles.z_and_b(act, n)
    assert vals(z_n(act, n)) == zs
    assert vals(b_n(act, n)) == bs
    assert bs <= zs


def test_degree_one_z_is_hom_for_trivial_action():
    act = trivial_action(C3, C3)
    homs = {tuple((k * s) % 3 for s in range(3)) for k in range(3)}
    assert vals(z_n(act, 1)) == homs == oracles.z1(act)


def test_h_examples():
    assert h_n(TRIV22, 0).h_size == 2
    assert h_n(TRIV22, 1).h_size == 2
    c = h_n(TRIV22, 2)
    assert (c.z_size, c.b_size, c.h_size) == (4, 2, 2)
    assert c.to_json() == {"n": 2, "z": 4, "b": 2, "h": 2, "orders": [1, 2]}
    assert h_n(inversion_action(C2, C3), 1).h_size == 1


def test_h3_frontier():
    c = h_n(TRIV22, 3)
    assert c.h_size == 2


@pytest.mark.parametrize("name", sorted(MODULES))
def test_h0_is_fixed_points(name):
    act = MODULES[name]
    c = h_n(act, 0)
    assert set(c.class_of) == {(x,) for x in fixed_points(act).members}


@pytest.mark.parametrize("name", sorted(MODULES))
def test_degree_one_matches_orbit_partition(name):
    act = MODULES[name]
    orbit_part = {frozenset(x.values for x in cls) for cls in h1(act).classes}
    coset_part = {frozenset(s) for s in h_n(act, 1).classes()}
    assert orbit_part == coset_part


@pytest.mark.parametrize("na", [2, 4])
@pytest.mark.parametrize("n", [1, 2])
def test_stab_orbit_degree_n(na, n):
    act = trivial_action(C2, make_cyclic(na))
    zprev = z_n(act, n - 1)
    bs = b_n(act, n)
    total = na ** (2 ** (n - 1))
    zero = Cochain(act, n, (0,) * 2**n)
    assert orbit_n(zero) == bs
    for a in z_n(act, n):
        assert stab_n(a) == zprev
        assert len(orbit_n(a)) == len(bs)
        assert len(orbit_n(a)) * len(stab_n(a)) == total


def test_nonabelian_rejected():
    act = trivial_action(C2, make_symmetric(3))
    with pytest.raises(NotAbelian):
        z_n(act, 1)
    with pytest.raises(NotAbelian):
        h_n(act, 1)


def test_budget():
    with pytest.raises(BudgetExceeded):
        z_n(trivial_action(C4, C4), 2, budget=1000)


def test_induced_map_on_reduction():
    src, dst = trivial_action(C2, C4), TRIV22
    red = make_hom(C4, C2, [0, 1, 0, 1])
    for n in (0, 1, 2):
        hs, hd = h_n(src, n), h_n(dst, n)
        m = induced_map(red, hs, hd)
        assert m[0] == 0 and len(m) == hs.h_size


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 5), (2, 6), (3, 4), (4, 3), (5, 2), (6, 2), (6, 3)]), st.integers(1, 3), st.data())
def test_complex_law_random(shape, n, data):
    ng, na = shape
    act = trivial_action(make_cyclic(ng), make_cyclic(na))
    seed = data.draw(st.integers(0, 2**32 - 1))
    f = np.random.default_rng(seed).integers(0, na, size=(50, ng**n))
    assert not differential_batch(act, differential_batch(act, f, n + 1), n + 2).any()
