from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lconvex import instances
from lconvex.convex import (
    LConvexSpace,
    SpaceMap,
    all_maps,
    compose,
    constant_map,
    cp_maps,
    directed_join_audit,
    family_cap,
    generate_structure,
    hull,
    identity,
    inclusion,
    inverse,
    is_S0,
    s0_witness,
    subspace,
    validate_structure,
)
from lconvex.errors import (
    BudgetExceeded,
    CarrierMismatch,
    EmptySubcarrier,
    MissingBottomTop,
    NotMeetClosed,
    NotStratified,
    SizeLimitExceeded,
)
from lconvex.lfuzz import LSet, all_lsets, characteristic, sub
from lconvex.quantale import build_chain_quantale

from .strategies import QUANTALES, lsets, spaces


def naive_closure(q, n, gens):
    """Oracle: repeat full passes of meets and p -> C until nothing changes."""
    fam = {(q.bottom,) * n, (q.top,) * n} | {g.degrees for g in gens}
    while True:
        new = set(fam)
        for a, b in product(fam, repeat=2):
            new.add(tuple(q.meet[x][y] for x, y in zip(a, b)))
        for p, a in product(q.elements, fam):
            new.add(tuple(q.residuum[p][x] for x in a))
        if new == fam:
            return fam
        fam = new


def least_superset(X, A):
    """Oracle hull: the convex superset of A below every other one."""
    ups = [C for C in X.convexes if A <= C]
    least = [C for C in ups if all(C <= D for D in ups)]
    assert len(least) == 1
    return least[0]


def test_constants_on_godel3_are_a_space(g3):
    X = validate_structure(g3, 2, [LSet(g3, (0, 0)), LSet(g3, (2, 2))])
    assert len(X.convexes) == 2


def test_constants_on_lukasiewicz3_not_stratified(l3):
    with pytest.raises(NotStratified) as info:
        validate_structure(l3, 2, [LSet(l3, (0, 0)), LSet(l3, (2, 2))])
    # 1/2 -> 0 is 1/2 there
    assert info.value.witness == (1, (0, 0))


def test_boolean_chain_family_valid():
    X = instances.boolean_chain_space()
    assert len(X.convexes) == 3


def test_missing_top_and_meet_closure(g3):
    with pytest.raises(MissingBottomTop):
        validate_structure(g3, 2, [LSet(g3, (0, 0)), LSet(g3, (2, 1))])
    with pytest.raises(NotMeetClosed):
        validate_structure(g3, 2, [LSet(g3, d) for d in [(0, 0), (2, 0), (0, 2), (2, 2)]]
                           + [LSet(g3, (1, 1))])


def test_mismatched_family_rejected(g3, l3):
    with pytest.raises(CarrierMismatch):
        validate_structure(g3, 2, [LSet(g3, (0, 0)), LSet(g3, (2, 2)), LSet(l3, (2, 2))])


def test_generate_worked_space(g3):
    X = generate_structure(g3, 2, [LSet(g3, (2, 1))])
    assert [c.degrees for c in X.convexes] == [(0, 0), (2, 1), (2, 2)]
    assert X == instances.godel_worked_space()


def test_generate_from_boolean_singletons(boolean):
    gens = [characteristic(boolean, 3, x) for x in range(3)]
    X = generate_structure(boolean, 3, gens)
    # meets never produce unions: the empty set, the singletons and the whole set
    assert {c.degrees for c in X.convexes} == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}
    assert X == instances.boolean_three_point_non_sober()
    assert directed_join_audit(X) is None


def test_generate_with_no_generators(l3):
    X = generate_structure(l3, 2)
    # 1/2 -> 0_X is the constant 1/2
    assert [c.degrees for c in X.convexes] == [(0, 0), (1, 1), (2, 2)]


def test_generation_budget(monkeypatch, l3):
    gens = [LSet(l3, d) for d in [(2, 0, 1), (0, 1, 2), (1, 2, 0)]]
    with pytest.raises(BudgetExceeded):
        generate_structure(l3, 3, gens, cap=4)
    monkeypatch.setenv("LCONVEX_MAX_FAMILY", "5")
    assert family_cap() == 5
    with pytest.raises(BudgetExceeded):
        generate_structure(l3, 3, gens)


@given(spaces(max_size=3, max_generators=3))
def test_generation_matches_naive_closure(X):
    gens = list(X.convexes)
    assert {c.degrees for c in X.convexes} == naive_closure(X.quantale, X.size, gens)


@given(st.sampled_from(QUANTALES), st.data())
def test_generation_is_least(q, data):
    n = data.draw(st.integers(1, 3))
    gens = data.draw(st.lists(lsets(q, n), max_size=3))
    X = generate_structure(q, n, gens)
    assert {c.degrees for c in X.convexes} == naive_closure(q, n, gens)
    assert directed_join_audit(X) is None if len(X.convexes) <= 12 else True


def test_hull_worked_values(worked):
    q = worked.quantale
    assert hull(worked, characteristic(q, 2, 0)).degrees == (2, 1)
    assert hull(worked, characteristic(q, 2, 1)).degrees == (2, 2)
    assert hull(worked, worked.bottom_set()) == worked.bottom_set()
    for C in worked.convexes:
        assert hull(worked, C) == C


@given(spaces())
def test_hull_matches_least_superset(X):
    for A in all_lsets(X.quantale, X.size):
        h = hull(X, A)
        assert h == least_superset(X, A)
        assert A <= h and hull(X, h) == h and h in X


@given(spaces(), st.data())
def test_hull_monotone_and_sub_lemma(X, data):
    A = data.draw(lsets(X.quantale, X.size))
    B = data.draw(lsets(X.quantale, X.size))
    if A <= B:
        assert hull(X, A) <= hull(X, B)
    for C in X.convexes:
        assert sub(A, C) == sub(hull(X, A), C)


def test_s0_examples(worked, g3):
    assert is_S0(worked)
    X = instances.indiscrete(g3, 2)
    assert not is_S0(X)
    assert s0_witness(X) == (0, 1)
    assert is_S0(generate_structure(g3, 1))


def test_subspace_examples(worked):
    B = instances.boolean_chain_space()
    assert [c.degrees for c in subspace(B, [1]).convexes] == [(0,), (1,)]
    assert [c.degrees for c in subspace(worked, [1]).convexes] == [(0,), (1,), (2,)]
    assert subspace(worked, [0, 1]) == worked
    with pytest.raises(EmptySubcarrier):
        subspace(worked, [])


def test_identity_all_flags(worked):
    flags = identity(worked).flags
    assert all(flags.to_document().values())


def test_constant_map_into_point_with_top_hull(worked):
    # point b has hull 1_X, so every preimage is a constant set
    q = worked.quantale
    others = [generate_structure(q, 3, [LSet(q, (2, 0, 1))]), instances.indiscrete(q, 2)]
    for X in [worked] + others:
        f = constant_map(X, worked, 1)
        consts = {(a,) * X.size for a in X.quantale.elements}
        backs = {f.backward(D).degrees for D in worked.convexes}
        assert backs <= consts
        assert f.flags.cp == all(b in X.members for b in backs)


def test_inclusion_is_subspace_embedding(worked):
    for pts in ([0], [1], [0, 1]):
        j = inclusion(worked, pts)
        assert j.flags.cp and j.flags.subspace_embedding


def test_compose_and_inverse(worked):
    i = identity(worked)
    assert compose(i, i) == i
    assert inverse(i) == i
    with pytest.raises(ValueError):
        inverse(constant_map(worked, worked, 0))
    with pytest.raises(CarrierMismatch):
        compose(i, identity(instances.boolean_chain_space()))


def test_map_enumeration(worked):
    maps = list(all_maps(worked, worked))
    assert [f.points for f in maps] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [f.points for f in all_maps(worked, worked, fixed={0: 1})] == [(1, 0), (1, 1)]
    with pytest.raises(SizeLimitExceeded):
        list(all_maps(worked, worked, cap=3))
    assert all(f.flags.cp for f in cp_maps(worked, worked))


def _cp_by_hulls(f):
    X, Y = f.source, f.target
    first = second = True
    for A in all_lsets(X.quantale, X.size):
        lhs = f.forward(hull(X, A))
        rhs = hull(Y, f.forward(A))
        first &= lhs <= rhs
        second &= hull(Y, lhs) == rhs
    return first, second


@given(spaces(qs=[build_chain_quantale(3, "godel")]), spaces(qs=[build_chain_quantale(3, "godel")]), st.data())
def test_cp_equivalent_to_hull_conditions(X, Y, data):
    points = tuple(data.draw(st.integers(0, Y.size - 1)) for _ in X.points)
    f = SpaceMap(X, Y, points)
    first, second = _cp_by_hulls(f)
    assert f.flags.cp == first == second


def test_cp_hull_conditions_exhaustive_small():
    q = build_chain_quantale(3, "lukasiewicz")
    spaces_ = [generate_structure(q, 2, [LSet(q, g)]) for g in [(2, 1), (1, 2), (2, 0), (0, 0)]]
    spaces_.append(generate_structure(q, 1))
    for X, Y in product(spaces_, repeat=2):
        for f in all_maps(X, Y):
            first, second = _cp_by_hulls(f)
            assert f.flags.cp == first == second


@given(spaces())
def test_space_round_trip(X):
    Y = LConvexSpace(X.quantale, X.size, X.convexes, labels=X.labels)
    assert X == Y and hash(X) == hash(Y)
    assert validate_structure(X.quantale, X.size, reversed(X.convexes)) == X
