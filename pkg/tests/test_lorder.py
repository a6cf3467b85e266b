import random
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lconvex import instances
from lconvex.convex import generate_structure
from lconvex.errors import E1Violation, E2Violation, E3Violation, SizeLimitExceeded
from lconvex.lfuzz import LSet, all_lsets
from lconvex.quantale import build_chain_quantale
from lconvex.lorder import (
    LOrderedSet,
    check_lorder,
    down,
    find_order_iso,
    inclusion_order,
    inf,
    inf_preserving,
    is_complete,
    is_order_iso,
    is_order_preserving,
    sup,
    sup_preserving,
    up,
)
from lconvex.sober import sobrify

from .strategies import spaces


def crisp(q, rel):
    return [[q.top if r else q.bottom for r in row] for row in rel]


def powerset_order(q, n):
    family = list(all_lsets(q, n))
    return family, inclusion_order(q, family)


def weighted_join(q, family, A):
    """Oracle for the supremum in (L^X, sub): join over B of A(B) (x) B."""
    n = family[0].size
    out = [q.bottom] * n
    for w, B in zip(A.degrees, family):
        for x in range(n):
            out[x] = q.join[out[x]][q.tensor[w][B[x]]]
    return LSet(q, tuple(out))


def weighted_meet(q, family, A):
    """Oracle for the infimum in (L^X, sub): meet over B of A(B) -> B."""
    n = family[0].size
    out = [q.top] * n
    for w, B in zip(A.degrees, family):
        for x in range(n):
            out[x] = q.meet[out[x]][q.residuum[w][B[x]]]
    return LSet(q, tuple(out))


def test_e1_e3_violations(g3):
    with pytest.raises(E1Violation):
        check_lorder(g3, [[1, 2], [0, 2]])
    with pytest.raises(E3Violation):
        check_lorder(g3, [[2, 2], [2, 2]])


def test_e2_violation(l3):
    # e(0,1) = e(1,2) = 1 but e(0,2) = 0
    e = [[2, 2, 0], [0, 2, 2], [0, 0, 2]]
    with pytest.raises(E2Violation):
        check_lorder(l3, e)


def test_crisp_relation_valid_iff_partial_order(boolean):
    chain = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    check_lorder(boolean, crisp(boolean, chain))
    not_transitive = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    with pytest.raises(E2Violation):
        check_lorder(boolean, crisp(boolean, not_transitive))


def test_down_of_worked_family(worked):
    P = inclusion_order(worked.quantale, worked.convexes)
    D = worked.convexes.index(LSet(worked.quantale, (2, 1)))
    # sub(0_X, D) = 1, sub(D, D) = 1, sub(1_X, D) = 1/2
    assert down(P, D).degrees == (2, 2, 1)
    assert up(P, D)[D] == worked.quantale.top


def test_crisp_two_chain_down(boolean):
    P = check_lorder(boolean, crisp(boolean, [[1, 1], [0, 1]]))
    assert down(P, 1).degrees == (1, 1)
    for x in range(2):
        assert down(P, x)[x] == boolean.top


def test_sup_of_down_set_is_the_point(worked):
    P = inclusion_order(worked.quantale, worked.convexes)
    for x in range(P.size):
        assert sup(P, down(P, x)) == x
        assert inf(P, up(P, x)) == x


def test_sup_of_empty_is_least(worked):
    P = inclusion_order(worked.quantale, worked.convexes)
    bottom = LSet(worked.quantale, (0,) * P.size)
    assert worked.convexes[sup(P, bottom)] == worked.bottom_set()
    assert worked.convexes[inf(P, bottom)] == worked.top_set()


def test_singleton_powerset_sup_worked_value(g3):
    family, P = powerset_order(g3, 1)
    # degree 1/2 on the set (1), 0 elsewhere
    A = LSet(g3, tuple(1 if B.degrees == (2,) else 0 for B in family))
    assert family[sup(P, A)].degrees == (1,)


@pytest.mark.parametrize("flavor", ["godel", "lukasiewicz"])
def test_powerset_sup_inf_formulas_exhaustive(flavor):
    q = build_chain_quantale(3, flavor)
    family, P = powerset_order(q, 1)
    for A in all_lsets(q, P.size):
        assert family[sup(P, A)] == weighted_join(q, family, A)
        assert family[inf(P, A)] == weighted_meet(q, family, A)


def test_powerset_sup_inf_formulas_sampled(l3):
    family, P = powerset_order(l3, 2)
    rng = random.Random(7)
    for _ in range(300):
        A = LSet(l3, tuple(rng.randrange(3) for _ in range(P.size)))
        assert family[sup(P, A)] == weighted_join(l3, family, A)
        assert family[inf(P, A)] == weighted_meet(l3, family, A)


def test_completeness(boolean, worked):
    antichain = check_lorder(boolean, crisp(boolean, [[1, 0], [0, 1]]))
    assert not is_complete(antichain)
    assert is_complete(check_lorder(boolean, [[1]]))
    assert is_complete(inclusion_order(worked.quantale, worked.convexes))
    with pytest.raises(SizeLimitExceeded):
        is_complete(inclusion_order(worked.quantale, worked.convexes), cap=10)


@given(spaces())
def test_convex_family_is_complete(X):
    P = inclusion_order(X.quantale, X.convexes)
    if X.quantale.size ** P.size <= 20_000:
        assert is_complete(P)


def test_iso_search(boolean, worked):
    chain = check_lorder(boolean, crisp(boolean, [[1, 1], [0, 1]]))
    antichain = check_lorder(boolean, crisp(boolean, [[1, 0], [0, 1]]))
    assert find_order_iso(chain, antichain) is None
    assert find_order_iso(chain, chain) == (0, 1)
    assert is_order_preserving((0, 1), chain, chain)
    assert is_order_iso((0, 1), chain, chain)
    S = sobrify(worked)
    P = inclusion_order(worked.quantale, worked.convexes)
    Q = inclusion_order(S.space.quantale, S.space.convexes)
    f = find_order_iso(P, Q)
    assert f is not None
    phi_map = tuple(S.space.convexes.index(S.phi(C)) for C in worked.convexes)
    assert is_order_iso(phi_map, P, Q)


@given(spaces(), st.randoms(use_true_random=False))
def test_iso_search_finds_relabelings(X, rnd):
    P = inclusion_order(X.quantale, X.convexes)
    perm = list(range(P.size))
    rnd.shuffle(perm)
    inv = [0] * P.size
    for i, p in enumerate(perm):
        inv[p] = i
    Q = LOrderedSet(P.quantale, [[P.e[inv[a]][inv[b]] for b in range(P.size)] for a in range(P.size)])
    f = find_order_iso(P, Q)
    assert f is not None and is_order_iso(f, P, Q)


def _small_complete_orders():
    out = []
    for q in (instances.godel3(), instances.lukasiewicz3()):
        for gens in [(), ((2, 1),), ((1, 2),), ((2, 0),), ((1, 1),), ((1, 0),), ((2, 1), (1, 2))]:
            X = generate_structure(q, 2, [LSet(q, g) for g in gens])
            if len(X.convexes) <= 3:
                out.append(inclusion_order(q, X.convexes))
        for rel in ([[1, 1, 1], [0, 1, 1], [0, 0, 1]], [[1, 1], [0, 1]]):
            out.append(check_lorder(q, crisp(q, rel)))
    return out


def test_bijection_sup_preserving_iff_iso_exhaustive():
    orders = _small_complete_orders()
    checked = 0
    for P, Q in product(orders, repeat=2):
        if P.quantale != Q.quantale or P.size != Q.size or not (is_complete(P) and is_complete(Q)):
            continue
        for f in permutations(range(P.size)):
            iso = is_order_iso(f, P, Q)
            assert sup_preserving(f, P, Q) == iso
            assert inf_preserving(f, P, Q) == iso
            checked += 1
    assert checked > 20
