import pytest

from cohomlim.actions import conjugation_action, inversion_action, trivial_action, validate_action
from cohomlim.errors import NotCharacteristic, NotNested, NotSolvable
from cohomlim.filtrations import (
    chain_from_orders,
    derived_tower,
    filtration_tower,
    make_filtration,
    verify_presentation,
)
from cohomlim.groups import (
    Subgroup,
    automorphisms,
    derived_series,
    direct_product,
    is_characteristic,
    make_cyclic,
    make_dihedral,
    make_symmetric,
)
from cohomlim.systems import limit, validate_system

C2 = make_cyclic(2)
C8 = make_cyclic(8)
S3 = make_symmetric(3)


def levels(tower):
    return [tower.objects[r].a.order for r in tower.tower_order()]


def test_derived_tower_examples():
    ab = derived_tower(inversion_action(C2, make_cyclic(6)))
    assert levels(ab) == [6]
    t = derived_tower(conjugation_action(S3))
    assert levels(t) == [6, 2]
    assert t.objects[1].is_trivial()
    with pytest.raises(NotSolvable):
        derived_tower(conjugation_action(make_symmetric(5)))


def test_filtration_tower_examples():
    act = inversion_action(C2, C8)
    t = filtration_tower(act, [Subgroup(C8, range(8)), Subgroup(C8, {0})])
    assert levels(t) == [8, 1]
    t = filtration_tower(act, chain_from_orders(C8, [8, 4, 2, 1]))
    assert levels(t) == [8, 4, 2, 1]
    for r in range(len(t.objects) - 1):
        img = t.phi(r, r + 1).image
        assert img == tuple(x % t.objects[r + 1].a.order for x in range(t.objects[r].a.order))


def test_non_characteristic_and_non_nested():
    klein = direct_product(C2, C2)
    with pytest.raises(NotCharacteristic) as e:
        make_filtration(klein, [Subgroup(klein, range(4)), Subgroup(klein, {0, 1}), Subgroup(klein, {0})])
    assert e.value.witness == (1,)
    with pytest.raises(NotNested):
        make_filtration(C8, [Subgroup(C8, {0, 4}), Subgroup(C8, {0, 2, 4, 6})])


@pytest.mark.parametrize("spec", [S3, make_dihedral(4), make_symmetric(4)])
def test_derived_members_characteristic(spec):
    auts = automorphisms(spec)
    assert all(is_characteristic(spec, n, auts) for n in derived_series(spec))


def test_presentation_examples():
    act = inversion_action(C2, C8)
    rep = verify_presentation(act, filtration_tower(act, chain_from_orders(C8, [8, 1])))
    assert rep["ok"]
    rep = verify_presentation(act, filtration_tower(act, chain_from_orders(C8, [8, 4, 2, 1])), degrees=(2,))
    assert rep["ok"] and rep["isomorphism"] and rep["limit_order"] == 8
    assert rep["direct"][1] == rep["theta"][1]["left_size"]
    conj = conjugation_action(S3)
    rep = verify_presentation(conj, derived_tower(conj))
    assert rep["ok"] and rep["injective"] and rep["surjective"] and rep["equivariant"]


def test_tower_is_equivariant_and_functorial():
    conj = conjugation_action(make_symmetric(4))
    t = derived_tower(conj)
    validate_system(t)
    assert levels(t) == [24, 6, 2]
    lim = limit(t)
    assert lim.order == 24


def test_klein_swap_chain():
    klein = direct_product(C2, C2)
    swap = validate_action(C2, klein, [[0, 1, 2, 3], [0, 2, 1, 3]])
    rep = verify_presentation(swap, derived_tower(swap))
    assert rep["ok"]
    t = filtration_tower(swap, [Subgroup(klein, range(4)), Subgroup(klein, {0})])
    assert verify_presentation(swap, t)["ok"]


def test_trivial_action_presentation():
    act = trivial_action(make_cyclic(3), make_cyclic(9))
    t = filtration_tower(act, chain_from_orders(make_cyclic(9), [9, 3, 1]))
    assert verify_presentation(act, t, degrees=(1,))["ok"]
