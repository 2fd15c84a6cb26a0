import random

import pytest

from nearrack.permkit import (
    Permutation,
    PermutationError,
    all_permutations,
    compose,
    from_cycles,
    identity,
    involutions,
    parse_cycles,
    print_cycles,
    telephone_number,
)


def test_compose_examples():
    f = parse_cycles("(1,2)", 2)
    assert compose(f, f).is_identity()
    g = parse_cycles("(1,2,3)", 3)
    assert compose(g, identity(3)) == g
    # table evaluation: x=1 -> f(g(1)) with f=(2,3), g=(1,2,3)
    f = parse_cycles("(2,3)", 3)
    assert print_cycles(compose(f, g)) == "(1,3)"


def test_compose_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(identity(2), identity(3))


def test_parse_cycles_examples():
    assert parse_cycles("(2,5)(3,4)", 5).map == (1, 5, 4, 3, 2)
    assert parse_cycles("id", 4).is_identity()
    assert parse_cycles("(1,2,4)(3,6,5)", 6).map == (2, 4, 6, 1, 3, 5)


@pytest.mark.parametrize("bad", ["(1,7)", "(1,2)(2,3)", "(1,,2)", "1,2", "(a,b)"])
def test_parse_cycles_rejects(bad):
    with pytest.raises(PermutationError):
        parse_cycles(bad, 5)


def test_print_parse_round_trip():
    for n in range(1, 7):
        for p in all_permutations(n):
            assert parse_cycles(print_cycles(p), n) == p


def test_inverse_composes_to_identity():
    for n in range(1, 7):
        for p in all_permutations(n):
            assert compose(p, p.inverse()).is_identity()
    rng = random.Random(7)
    for _ in range(200):
        tab = list(range(1, 11))
        rng.shuffle(tab)
        p = Permutation(tuple(tab))
        assert compose(p, p.inverse()).is_identity()
        assert compose(p.inverse(), p).is_identity()


def test_involutions_counts_against_brute_force():
    for n in range(2, 8):
        got = list(involutions(n))
        maps = {p.map for p in got}
        assert len(maps) == len(got), "duplicates emitted"
        brute = [
            p
            for p in all_permutations(n)
            if not p.is_identity() and compose(p, p).is_identity()
        ]
        assert maps == {p.map for p in brute}
        assert len(got) == telephone_number(n) - 1


def test_involutions_small_cases():
    assert [p.map for p in involutions(2)] == [(2, 1)]
    assert len(list(involutions(4))) == 9  # 6 transpositions + 3 double
    assert list(involutions(3, fixed_point_free=True)) == []
    fpf4 = list(involutions(4, fixed_point_free=True))
    assert len(fpf4) == 3
    assert all(not p.fixed_points() for p in fpf4)


def test_cycle_structure_helpers():
    p = parse_cycles("(1,4)(2,3)", 5)
    assert p.is_involution()
    assert p.fixed_points() == (5,)
    assert p.cycle_type() == (2, 2)
    assert p.order() == 2
    q = parse_cycles("(1,2,3)", 3)
    assert q.order() == 3 and not q.is_involution()


def test_relabel_is_conjugation():
    p = parse_cycles("(1,2,3)", 4)
    phi = parse_cycles("(1,4)", 4)
    assert print_cycles(p.relabel(phi)) == "(2,3,4)"


def test_from_cycles_rejects_overlap():
    with pytest.raises(PermutationError):
        from_cycles(4, [(1, 2), (2, 3)])
