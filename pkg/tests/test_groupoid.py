import random

import pytest

from grpdhopf.groupoid import (FiniteGroupoid, GuardExceededError, MalformedGroupoidError, action_groupoid,
                               band_groupoid, compose_morphisms, connected_components, cyclic_group,
                               disjoint_union, enumerate_morphisms, find_isomorphism, induced_groupoid,
                               is_isomorphism, is_transitive, isotropy_group, law_holds, pair_groupoid,
                               spanning_arrows, symmetric_group, tables_match_under, unit_groupoid,
                               validate_groupoid, validate_morphism)

from conftest import member, mutate_entry


def group_iso_exists(a, b):
    return find_isomorphism(a, b) is not None


def test_validate_pair():
    g = pair_groupoid(2)
    assert validate_groupoid(g).ok and g.n_arrows == 4


def test_swapped_entry_reports_witness():
    g = pair_groupoid(2)
    comp = dict(g.compose_table)
    k1, k2 = sorted(comp)[:2]
    comp[k1], comp[k2] = comp[k2], comp[k1]
    bad = g.replace(compose=comp)
    rep = validate_groupoid(bad)
    assert not rep.ok
    for v in rep.violations:
        assert not law_holds(bad, v.axiom, v.witness)


def test_empty_object_set_rejected():
    g = FiniteGroupoid(0, [], [], {}, [], [])
    assert validate_groupoid(g).first().axiom == "objects_nonempty"


def test_dangling_ids_are_malformed():
    g = pair_groupoid(2)
    with pytest.raises(MalformedGroupoidError):
        validate_groupoid(g.replace(inverse=[9] * g.n_arrows))


def test_unit_groupoid():
    assert unit_groupoid(1).n_arrows == 1
    g = unit_groupoid(3)
    assert g.n_arrows == 3 and len(connected_components(g)) == 3
    assert validate_groupoid(unit_groupoid(5)).ok
    with pytest.raises(ValueError):
        unit_groupoid(0)


def test_pair_groupoid():
    g = pair_groupoid(3)
    assert g.n_arrows == 9 and is_transitive(g)
    assert all(isotropy_group(g, x).n_arrows == 1 for x in g.objects)


def test_action_groupoids():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    swap = action_groupoid(z2, lambda a, x: (a + x) % 2, 2)
    assert validate_groupoid(swap).ok
    phi = find_isomorphism(swap, pair_groupoid(2))
    assert phi is not None and is_isomorphism(phi)
    trivial = action_groupoid(z2, lambda a, x: x, 2)
    assert trivial.n_arrows == 4 and len(connected_components(trivial)) == 2
    assert all(group_iso_exists(isotropy_group(trivial, x), z2) for x in trivial.objects)
    trans = action_groupoid(z3, lambda a, x: (a + x) % 3, 3)
    assert trans.n_arrows == 9 and is_transitive(trans)
    assert all(isotropy_group(trans, x).n_arrows == 1 for x in trans.objects)


def test_band_groupoid():
    z2 = cyclic_group(2)
    g = band_groupoid(2, z2)
    assert g.n_arrows == 8 and is_transitive(g)
    for x in g.objects:
        iso = isotropy_group(g, x)
        # canonical bijection (x, h, x) -> h
        assert tables_match_under(iso, z2, list(z2.arrows))
    one = band_groupoid(1, symmetric_group(3))
    assert tables_match_under(one, symmetric_group(3), list(range(6)))


def test_induced_groupoid():
    g = band_groupoid(2, cyclic_group(2))
    pt, mor = induced_groupoid(g, [0])
    assert validate_morphism(mor).ok
    assert group_iso_exists(pt, isotropy_group(g, 0))
    same, _ = induced_groupoid(g, [0, 1])
    assert group_iso_exists(same, g)
    two, _ = induced_groupoid(g, [1, 1])
    assert group_iso_exists(two, band_groupoid(2, isotropy_group(g, 1)))


def test_disjoint_union():
    u = disjoint_union(unit_groupoid(1), unit_groupoid(1))
    assert group_iso_exists(u, unit_groupoid(2))
    g = disjoint_union(pair_groupoid(2), cyclic_group(2))
    assert g.n_arrows == 6 and len(connected_components(g)) == 2
    h = disjoint_union(unit_groupoid(3), g)
    assert len(connected_components(h)) == 5


def test_components_and_isotropy():
    assert len(connected_components(pair_groupoid(3))) == 1
    assert group_iso_exists(isotropy_group(band_groupoid(2, cyclic_group(2)), 1), cyclic_group(2))


def test_enumerate_morphisms_counts():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    assert len(enumerate_morphisms(unit_groupoid(1), pair_groupoid(3))) == 3
    assert len(enumerate_morphisms(z2, z2)) == 2
    assert len(enumerate_morphisms(z3, z2)) == 1
    # oracle: brute force over all arrow maps z3 -> s3
    s3 = symmetric_group(3)
    count = 0
    for a in s3.arrows:
        images = [s3.identity[0], a, s3.compose(a, a)]
        if s3.compose(images[2], a) == s3.identity[0]:
            count += 1
    assert len(enumerate_morphisms(z3, s3)) == count == 3


def test_enumerate_respects_guard():
    with pytest.raises(GuardExceededError):
        enumerate_morphisms(pair_groupoid(4), unit_groupoid(1), guard=10)


def test_morphism_composition():
    g = band_groupoid(2, cyclic_group(2))
    ms = enumerate_morphisms(cyclic_group(2), g)
    phi = ms[-1]
    for psi in enumerate_morphisms(g, g, guard=8)[:5]:
        assert validate_morphism(compose_morphisms(psi, phi)).ok


def test_spanning_arrows_go_to_base_point():
    g = member("union_pair2_z2")
    tau = spanning_arrows(g)
    for y, a in tau.items():
        assert g.src[a] == y
    assert tau[0] == g.identity[0] and tau[2] == g.identity[2]


@pytest.mark.parametrize("seed", range(5))
def test_random_mutations_caught(seed):
    rng = random.Random(seed)
    g = member("band_2_z2")
    bad, _ = mutate_entry(g, rng)
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert all(not law_holds(bad, v.axiom, v.witness) for v in rep.violations)
