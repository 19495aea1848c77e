import itertools
import random

import pytest
import sympy

from twistlat import (
    InvalidInputError,
    RefinementError,
    build_gamma,
    chain_parity_check,
    conjugacy_witnesses,
    gram_matrix,
    invariant_span_closure,
    quadratic_refinement,
    quotient_lattice,
    transvection,
    verify_all_relations,
    verify_pair_relation,
)
from twistlat import intlinalg as la
from twistlat.lattice import QuotientLattice, SkewLattice
from twistlat.transvect import (
    refinement_identity_ok,
    refinement_invariant_under,
    sp_matrix,
    transvection_shape,
    triangle_identity_expected,
)


@pytest.fixture(scope="module")
def ctx():
    g = build_gamma(4)
    q = quotient_lattice(gram_matrix(4))
    return g, q


def test_transvection_fixes_own_class(ctx):
    g, q = ctx
    for v in g.vertices:
        t = transvection(q, v)
        a = q.class_map[g.index[v]]
        assert la.mat_vec(t.entries, a) == a


def test_transvection_shapes(ctx):
    g, q = ctx
    for sign in (1, -1):
        for v in g.vertices:
            s = transvection_shape(q, v, sign)
            assert s.ok
            assert s.deviation_rank == 1
            assert s.fixed_space_dim == 9
    # independent rank oracle on a few deviations
    for v in list(g.vertices)[:4]:
        t = transvection(q, v)
        dev = la.mat_sub(t.entries, la.identity(10))
        assert sympy.Matrix([list(r) for r in dev]).rank() == 1


def test_form_preservation_and_sp_matrix_guard(ctx):
    g, q = ctx
    t = transvection(q, (0, 0, 1, 1))
    m = la.mat_mul(la.mat_mul(la.transpose(t.entries), q.induced_gram), t.entries)
    assert m == q.induced_gram
    bad = [[2 if i == j else 0 for j in range(10)] for i in range(10)]
    with pytest.raises(InvalidInputError):
        sp_matrix(q, bad)


def test_pair_relation_examples(ctx):
    g, q = ctx
    t1 = transvection(q, (0, 0, 0, 1))
    t2 = transvection(q, (0, 1, 0, 1))
    assert verify_pair_relation(t1, t2, expect_braid=True)
    t3 = transvection(q, (0, 1, 0, 0))
    t4 = transvection(q, (1, 0, 1, 0))
    assert verify_pair_relation(t3, t4, expect_braid=False)
    assert not verify_pair_relation(t3, t4, expect_braid=True)


@pytest.mark.parametrize("sign", [1, -1])
def test_all_relations(ctx, sign):
    g, q = ctx
    rep = verify_all_relations(q, g, sign=sign)
    assert rep.ok, (rep.pair_failures[:3], rep.triangle_failures[:3])
    assert rep.pairs_checked == 120
    assert rep.triangles_checked == 110


def test_all_transvections_distinct(ctx):
    g, q = ctx
    mats = {transvection(q, v).entries for v in g.vertices}
    assert len(mats) == 16


def test_k2_collapsed_generators_still_consistent():
    """In the rank-2 quotient of the k=2 lattice the two middle vertices
    have equal classes, so their transvections coincide; the relation
    checker must treat that pair as consistent."""
    g = build_gamma(2)
    q = quotient_lattice(gram_matrix(2))
    t01 = transvection(q, (0, 1))
    t10 = transvection(q, (1, 0))
    assert t01.entries == t10.entries
    assert not g.is_edge((0, 1), (1, 0))
    rep = verify_all_relations(q, g, sign=1)
    assert rep.ok


def test_triangle_orientation_rule(ctx):
    """Direct mini-oracle: the four-letter identity holds exactly in the
    orientation class where the signed pairings multiply to -sign."""
    g, q = ctx
    tri = ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 1))
    ts = {v: transvection(q, v).entries for v in tri}
    for x, y, z in itertools.permutations(tri):
        lhs = la.mat_mul(la.mat_mul(ts[x], ts[y]), la.mat_mul(ts[z], ts[x]))
        rhs = la.mat_mul(la.mat_mul(ts[y], ts[z]), la.mat_mul(ts[x], ts[y]))
        assert (lhs == rhs) == triangle_identity_expected(q, x, y, z, 1)
    # each orientation class has exactly three orderings
    flags = [
        triangle_identity_expected(q, x, y, z, 1)
        for x, y, z in itertools.permutations(tri)
    ]
    assert sum(flags) == 3


def test_conjugacy_witnesses(ctx):
    g, q = ctx
    words = conjugacy_witnesses(q, g)
    assert len(words) == 16
    assert words[(0, 0, 0, 0)] == ()
    # every word is verified inside the call; check the edge identity here
    u, v = (0, 0, 0, 0), (0, 0, 0, 1)
    tu, tv = transvection(q, u).entries, transvection(q, v).entries
    tui = transvection(q, u, -1).entries
    tvi = transvection(q, v, -1).entries
    c = la.mat_mul(tu, tv)
    cinv = la.mat_mul(tvi, tui)
    assert la.mat_mul(la.mat_mul(c, tu), cinv) == tv


def test_quadratic_refinement(ctx):
    g, q = ctx
    ref = quadratic_refinement(q)
    assert ref.table[0] == 0
    for c in q.class_map:
        assert ref.value(c) == 1
    assert refinement_identity_ok(ref)
    for v in g.vertices:
        assert refinement_invariant_under(ref, q, v)


def test_quadratic_refinement_random_identity_samples(ctx):
    """Slow-path oracle for the packed identity check."""
    _, q = ctx
    ref = quadratic_refinement(q)
    rng = random.Random(11)
    for _ in range(300):
        x = rng.randrange(1024)
        y = rng.randrange(1024)
        assert (
            ref.table[x ^ y]
            == ref.table[x] ^ ref.table[y] ^ ref.pairing_mod2(x, y)
        )


def test_refinement_failure_paths():
    # classes that do not span the mod-2 quotient
    j2 = ((0, 1), (-1, 0))
    fake = QuotientLattice(
        source=SkewLattice(k=1, gram=j2),
        rank=2,
        induced_gram=j2,
        class_map=((1, 0), (1, 0)),
        radical_basis=(),
    )
    with pytest.raises(RefinementError):
        quadratic_refinement(fake)
    # a dependent class forced to value 0: e1+e3 with <e1,e3> = 0
    j4 = (
        (0, 1, 0, 0),
        (-1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, -1, 0),
    )
    classes = (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, 0, 1, 0),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
    )
    fake = QuotientLattice(
        source=SkewLattice(k=3, gram=tuple(tuple(0 for _ in range(8)) for _ in range(8))),
        rank=4,
        induced_gram=j4,
        class_map=classes,
        radical_basis=(),
    )
    with pytest.raises(RefinementError) as err:
        quadratic_refinement(fake)
    assert err.value.offending is not None


def test_invariant_span_closure(ctx):
    g, q = ctx
    assert invariant_span_closure(q, [(0,) * 10]) == 0
    assert invariant_span_closure(q, q.class_map) == 10
    for v in g.vertices:
        assert invariant_span_closure(q, [q.class_map[g.index[v]]]) == 10


def test_chain_parity(ctx):
    g, q = ctx
    nonzero, parity = chain_parity_check(q)
    assert nonzero is True
    assert parity == 1
    # supporting fact: the probe class does not pair with the sixth chain slot
    from twistlat import hl_pairing

    assert hl_pairing((0, 1, 1, 1), (1, 0, 1, 0)) == 0


def test_chain_parity_requires_k4():
    q = quotient_lattice(gram_matrix(2))
    with pytest.raises(InvalidInputError):
        chain_parity_check(q)


def test_determinism_of_rep(ctx):
    g, q = ctx
    a = verify_all_relations(q, g, sign=1)
    b = verify_all_relations(q, g, sign=1)
    assert a.pairs_checked == b.pairs_checked
    assert conjugacy_witnesses(q, g) == conjugacy_witnesses(q, g)
