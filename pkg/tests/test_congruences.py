import random

import pytest

from finalg import (
    CoverPair,
    Partition,
    check_interval_modular_permuting,
    check_perspectivity,
    congruence_lattice,
    is_congruence,
    principal_congruence,
    structure_report,
)

from oracles import brute_congruences, brute_principal


def test_partition_normal_form():
    p = Partition(4, [[3, 1], [0, 2]])
    assert p.blocks == ((0, 2), (1, 3))
    assert p.related(1, 3) and not p.related(0, 1)
    assert Partition.zero(3).rank == 0
    assert Partition.one(3).rank == 2
    with pytest.raises(ValueError):
        Partition(3, [[0, 1]])
    with pytest.raises(ValueError):
        Partition(3, [[0, 1], [1, 2]])


def test_partition_lattice_ops():
    from finalg import join

    p = Partition(4, [[0, 1], [2], [3]])
    q = Partition(4, [[1, 2], [0], [3]])
    assert (p | q).blocks == ((0, 1, 2), (3,))
    assert join(p, q) == p | q
    assert (p & q).blocks == ((0,), (1,), (2,), (3,))
    assert p <= p | q and q <= p | q
    assert (p | Partition.zero(4)) == p


def test_principal_congruence_examples(z4):
    assert principal_congruence(z4, 0, 2).blocks == ((0, 2), (1, 3))
    assert principal_congruence(z4, 0, 1) == Partition.one(4)
    assert principal_congruence(z4, 2, 2) == Partition.zero(4)


def test_principal_matches_brute_oracle(z2, z4, s2, two_sq, gen1, gen3):
    for alg in (z2, z4, s2, two_sq, gen1.algebra, gen3.algebra):
        for a in range(alg.size):
            for b in range(a + 1, alg.size):
                assert principal_congruence(alg, a, b) == brute_principal(alg, a, b)


def test_principal_matches_lattice_minimum(gen2):
    # on the 8-element generated fixture, compare against the least lattice
    # element containing the pair
    alg = gen2.algebra
    lat = congruence_lattice(alg)
    for a in range(alg.size):
        for b in range(a + 1, alg.size):
            containing = [p for p in lat.elements if p.related(a, b)]
            least = containing[0]
            for p in containing[1:]:
                least = least.meet(p)
            assert principal_congruence(alg, a, b) == least


def test_congruence_lattice_examples(z4, s2, two_sq):
    lat4 = congruence_lattice(z4)
    assert [p.blocks for p in lat4.elements] == [
        ((0,), (1,), (2,), (3,)),
        ((0, 2), (1, 3)),
        ((0, 1, 2, 3),),
    ]
    assert len(congruence_lattice(s2)) == 2
    lat_sq = congruence_lattice(two_sq)
    assert len(lat_sq) == 5
    skew = Partition(4, [[0, 3], [1, 2]])
    assert skew in lat_sq


def test_lattice_matches_brute(z4, s2, two_sq, gen1):
    for alg in (z4, s2, two_sq, gen1.algebra):
        assert set(congruence_lattice(alg).elements) == set(brute_congruences(alg))


def test_lattice_elements_are_congruences(z4, two_sq, gen2):
    for alg in (z4, two_sq, gen2.algebra):
        for p in congruence_lattice(alg).elements:
            assert is_congruence(alg, p)


def test_join_properties():
    rng = random.Random(11)
    n = 6
    parts = []
    for _ in range(8):
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(3)]
        parts.append(Partition.from_pairs(n, pairs))
    for p in parts:
        assert p.join(p) == p
        for q in parts:
            assert p.join(q) == q.join(p)
            for r in parts:
                assert p.join(q).join(r) == p.join(q.join(r))


def test_structure_report_examples(z4, s2, two_sq, z4_theta):
    rep4 = structure_report(congruence_lattice(z4))
    assert rep4.monolith == z4_theta and rep4.is_si
    rep_sq = structure_report(congruence_lattice(two_sq))
    assert rep_sq.monolith is None and not rep_sq.is_si
    rep_s2 = structure_report(congruence_lattice(s2))
    assert rep_s2.monolith == Partition.one(2) and rep_s2.is_si


def test_monolith_below_everything(z4, s2, gen1, gen2, gen3):
    for alg in (z4, s2, gen1.algebra, gen2.algebra, gen3.algebra):
        lat = congruence_lattice(alg)
        rep = structure_report(lat)
        assert rep.is_si
        for p in lat.elements:
            if p.rank > 0:
                assert rep.monolith.leq(p)


def test_completely_meet_irreducibles_have_covers(z4, two_sq):
    for alg in (z4, two_sq):
        lat = congruence_lattice(alg)
        rep = structure_report(lat)
        for low, plus in rep.completely_meet_irreducibles:
            assert (lat.position(low), lat.position(plus)) in lat.covers
            for q in lat.elements:
                if low < q:
                    assert plus.leq(q)


def test_perspectivity_examples(two_sq, z4, z4_theta):
    lat = congruence_lattice(two_sq)
    zero, one = Partition.zero(4), Partition.one(4)
    eta1 = Partition(4, [[0, 1], [2, 3]])
    eta2 = Partition(4, [[0, 2], [1, 3]])
    assert check_perspectivity(lat, (zero, eta1), (eta2, one))
    # reflexive case: gamma = alpha, delta = beta
    assert check_perspectivity(lat, (zero, eta1), (zero, eta1))
    lat4 = congruence_lattice(z4)
    assert not check_perspectivity(
        lat4, (Partition.zero(4), z4_theta), (z4_theta, Partition.one(4))
    )


def test_perspectivity_cover_validation(two_sq):
    lat = congruence_lattice(two_sq)
    eta1 = Partition(4, [[0, 1], [2, 3]])
    with pytest.raises(ValueError):
        check_perspectivity(
            lat, CoverPair(Partition.zero(4), Partition.one(4)), (eta1, Partition.one(4))
        )


def test_interval_reports(z4, two_sq, s2):
    lat4 = congruence_lattice(z4)
    rep = check_interval_modular_permuting(
        z4, lat4, Partition.zero(4), Partition.one(4), quotient_abelian=True
    )
    assert rep.passed and rep.precondition_verified
    lat_sq = congruence_lattice(two_sq)
    rep = check_interval_modular_permuting(
        two_sq, lat_sq, Partition.zero(4), Partition.one(4), quotient_abelian=True
    )
    assert rep.passed
    lat_s2 = congruence_lattice(s2)
    rep = check_interval_modular_permuting(
        s2, lat_s2, Partition.zero(2), Partition.one(2), quotient_abelian=False
    )
    assert not rep.precondition_verified  # degenerate guard: flag carried through
