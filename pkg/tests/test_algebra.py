"""Integer matrices, Smith form, coset enumeration, order certificates."""

import random

import pytest

from helpers import (random_int_matrix, random_unimodular_ops,
                     random_valid_graph, transformed)
from stratifold import (AbelianInvariants, CosetTable, Exhausted, FiniteOrder,
                        FSignature, Generator, GroupPresentation, IntMatrix,
                        InfiniteOrder, OrderOracle, UnknownOrder, Word,
                        abelianization, apply_transforms, element_order,
                        fgroup_presentation, lens_spine, natural_presentation,
                        normalize, relation_matrix, s2xs1_spine,
                        smith_normal_form, todd_coxeter)


def pres(gens, rels):
    """Presentation from name->role pairs and syllable lists."""
    return GroupPresentation(
        tuple(Generator(n, r) for n, r in gens),
        tuple(Word(tuple(s)) for s in rels))


KLEIN = pres([("a", "black"), ("b", "black")],
             [[("a", -1), ("b", 1), ("a", 1), ("b", 1)]])


class TestIntMatrix:
    def test_from_rows_and_indexing(self):
        m = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert (m.rows, m.cols) == (2, 2)
        assert m[0, 1] == 2
        assert m[1, 0] == 3
        assert m.to_lists() == [[1, 2], [3, 4]]

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_entry_count_checked(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2, (1, 2, 3))

    def test_zeros_and_identity(self):
        assert IntMatrix.zeros(2, 3).entries == (0,) * 6
        assert IntMatrix.identity(2).to_lists() == [[1, 0], [0, 1]]


class TestSmithNormalForm:
    def test_diag_2_3(self):
        # SNF of diag(2, 3) is diag(1, 6)
        inv, ops = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
        assert inv == AbelianInvariants(0, (6,))
        d = apply_transforms(IntMatrix.from_rows([[2, 0], [0, 3]]), ops)
        assert d.to_lists() == [[1, 0], [0, 6]]

    def test_zero_matrix_is_free(self):
        inv, _ = smith_normal_form(IntMatrix.zeros(2, 3))
        assert inv == AbelianInvariants(3, ())

    def test_identity_is_trivial(self):
        inv, _ = smith_normal_form(IntMatrix.identity(3))
        assert inv == AbelianInvariants(0, ())
        assert inv.is_trivial

    def test_unit_factors_dropped(self):
        inv, _ = smith_normal_form(IntMatrix.from_rows([[1, 0], [0, 5]]))
        assert inv == AbelianInvariants(0, (5,))

    def test_negative_entry(self):
        inv, _ = smith_normal_form(IntMatrix.from_rows([[-4]]))
        assert inv == AbelianInvariants(0, (4,))

    def test_replay_reaches_divisibility_chain(self):
        rng = random.Random(808)
        for _ in range(60):
            m = random_int_matrix(rng)
            inv, ops = smith_normal_form(m)
            d = apply_transforms(m, ops)
            diag = [d[i, i] for i in range(min(d.rows, d.cols))]
            for i in range(d.rows):
                for j in range(d.cols):
                    if i != j:
                        assert d[i, j] == 0
            assert all(x >= 0 for x in diag)
            for a, b in zip(diag, diag[1:]):
                if a:
                    assert b % a == 0
                else:
                    assert b == 0
            nonzero = [x for x in diag if x]
            assert inv.free_rank == m.cols - len(nonzero)
            assert inv.torsion == tuple(x for x in nonzero if x >= 2)

    def test_invariants_stable_under_unimodular_changes(self):
        rng = random.Random(809)
        for _ in range(40):
            m = random_int_matrix(rng)
            inv, _ = smith_normal_form(m)
            inv2, _ = smith_normal_form(transformed(m, rng))
            assert inv2 == inv


class TestAbelianInvariants:
    def test_chain_enforced(self):
        with pytest.raises(ValueError):
            AbelianInvariants(0, (2, 3))
        with pytest.raises(ValueError):
            AbelianInvariants(0, (1,))

    def test_order(self):
        assert AbelianInvariants(0, (2, 4)).order() == 8
        assert AbelianInvariants(1, ()).order() is None
        assert AbelianInvariants(0, ()).order() == 1

    def test_direct_sum_merges_chains(self):
        a = AbelianInvariants(0, (2,))
        b = AbelianInvariants(0, (3,))
        assert a.direct_sum(b) == AbelianInvariants(0, (6,))
        c = AbelianInvariants(1, (2, 2)).direct_sum(AbelianInvariants(0, (4,)))
        assert c == AbelianInvariants(1, (2, 2, 4))


class TestAbelianization:
    def test_cyclic(self):
        p = pres([("b", "black")], [[("b", 5)]])
        assert abelianization(p) == AbelianInvariants(0, (5,))

    def test_no_relators_is_free(self):
        p = pres([("a", "black"), ("b", "black")], [])
        assert relation_matrix(p).rows == 0
        assert abelianization(p) == AbelianInvariants(2, ())

    def test_relation_matrix_sums_exponents(self):
        p = pres([("a", "black"), ("b", "black")],
                 [[("a", 1), ("b", 1), ("a", -1), ("b", -1)], [("a", 2), ("b", 3)]])
        assert relation_matrix(p).to_lists() == [[0, 0], [2, 3]]

    def test_torus_graph(self):
        from stratifold import StratifoldGraph, WhiteVertex
        g = StratifoldGraph([WhiteVertex("w", 1)], [], [])
        assert abelianization(natural_presentation(g)) == AbelianInvariants(2, ())

    def test_circle_bundle_over_projective_plane(self):
        from stratifold import p2xs1_spine
        ab = abelianization(natural_presentation(normalize(p2xs1_spine())))
        assert ab == AbelianInvariants(1, (2,))

    def test_lens_family(self):
        for q in range(2, 10):
            g = normalize(lens_spine(q))
            ab = abelianization(natural_presentation(g))
            assert ab == AbelianInvariants(0, (q,))


class TestToddCoxeter:
    def test_dihedral_six(self):
        # triangle group (2,2,3) has order 2*3 = 6
        t = todd_coxeter(fgroup_presentation(FSignature(0, (2, 2, 3))))
        assert isinstance(t, CosetTable)
        assert t.cosets == 6

    def test_single_relator_cyclic(self):
        t = todd_coxeter(pres([("a", "black")], [[("a", 1)]]))
        assert t.cosets == 1

    def test_icosahedral_sixty(self):
        # triangle group (2,3,5) has order 60
        t = todd_coxeter(fgroup_presentation(FSignature(0, (2, 3, 5))))
        assert t.cosets == 60

    def test_deterministic(self):
        p = fgroup_presentation(FSignature(0, (2, 3, 4)))
        t1 = todd_coxeter(p)
        t2 = todd_coxeter(p)
        assert t1.action == t2.action

    def test_subgroup_index(self):
        # <c1> has order 2 in the order-6 group, hence index 3
        p = fgroup_presentation(FSignature(0, (2, 2, 3)))
        t = todd_coxeter(p, subgroup=(Word((("c1", 1),)),))
        assert t.cosets == 3

    def test_exhaustion_reports_budget(self):
        out = todd_coxeter(KLEIN, budget=8)
        assert isinstance(out, Exhausted)
        assert out.budget == 8
        assert out.defined >= 8

    def test_permutation_orders(self):
        t = todd_coxeter(fgroup_presentation(FSignature(0, (2, 2, 3))))
        assert t.permutation_order(Word((("c1", 1),))) == 2
        assert t.permutation_order(Word((("c3", 1),))) == 3
        # c1 c2 = c3^-1 from the product relator
        assert t.permutation_order(Word((("c1", 1), ("c2", 1)))) == 3

    def test_relators_act_trivially(self):
        p = fgroup_presentation(FSignature(0, (2, 3, 4)))
        t = todd_coxeter(p)
        for r in p.relators:
            assert t.word_permutation(r) == tuple(range(t.cosets))

    def test_act_respects_involution(self):
        t = todd_coxeter(fgroup_presentation(FSignature(0, (2, 2, 3))))
        for c in range(t.cosets):
            assert t.act(t.act(c, "c1", 1), "c1", 1) == c


class TestElementOrder:
    def test_power_relator_certificate(self):
        p = pres([("b", "black")], [[("b", 5)]])
        v = element_order(p, Word((("b", 1),)))
        assert isinstance(v, FiniteOrder)
        assert v.order == 5
        assert "power relator" in v.certificate

    def test_infinite_via_abelianization(self):
        p = natural_presentation(normalize(s2xs1_spine()))
        v = element_order(p, Word((("t.e2", 1),)))
        assert isinstance(v, InfiniteOrder)

    def test_infinite_in_free_abelian(self):
        p = pres([("a", "black"), ("b", "black")],
                 [[("a", 1), ("b", 1), ("a", -1), ("b", -1)]])
        assert isinstance(element_order(p, Word((("b", 1),))), InfiniteOrder)

    def test_identity_reduction(self):
        # in the annulus-plus-disk graph the black curve bounds: order 1
        p = natural_presentation(normalize(s2xs1_spine()))
        v = element_order(p, Word((("b.b", 1),)))
        assert v == FiniteOrder(1, "word reduces to the identity under Tietze moves")

    def test_abstention_within_budget(self):
        # the abelian image of b has order 2 but the group needs
        # enumeration, which cannot close in 2 cosets
        v = element_order(KLEIN, Word((("b", 1),)), budget=2)
        assert v == UnknownOrder(2)

    def test_enumeration_fallback(self):
        # (2,3,3) has order 12; c1 c2 has trivial abelian image there,
        # so only the coset table can settle it
        p = fgroup_presentation(FSignature(0, (2, 3, 3)))
        v = element_order(p, Word((("c2", 1), ("c3", -1))))
        assert isinstance(v, FiniteOrder)
        assert "coset" in v.certificate

    def test_reflection_orders_in_finite_families(self):
        for periods in ((2, 2, 2), (2, 2, 5), (2, 3, 3), (2, 3, 4), (2, 3, 5)):
            p = fgroup_presentation(FSignature(0, periods))
            v = element_order(p, Word((("c1", 1),)))
            assert v == FiniteOrder(2, v.certificate)
            assert isinstance(v, FiniteOrder)

    def test_empty_word(self):
        v = element_order(KLEIN, Word())
        assert v == FiniteOrder(1, "empty word")

    def test_undeclared_name_rejected(self):
        with pytest.raises(ValueError):
            element_order(KLEIN, Word((("zz", 1),)))


class TestOrderOracle:
    def test_shared_across_words(self):
        oracle = OrderOracle(fgroup_presentation(FSignature(0, (2, 3, 5))))
        got = {c: oracle.order(Word(((c, 1),))) for c in ("c1", "c2", "c3")}
        assert got["c1"].order == 2
        assert got["c2"].order == 3
        assert got["c3"].order == 5

    def test_budget_abstention(self):
        oracle = OrderOracle(KLEIN, budget=4)
        assert oracle.order(Word((("b", 1),))) == UnknownOrder(4)

    def test_random_graph_orders_are_verdicts(self):
        rng = random.Random(811)
        for _ in range(15):
            g = normalize(random_valid_graph(rng))
            p = natural_presentation(g)
            oracle = OrderOracle(p, budget=500)
            for b in g.blacks:
                v = oracle.order(Word(((f"b.{b.id}", 1),)))
                assert isinstance(v, (FiniteOrder, InfiniteOrder, UnknownOrder))
                if isinstance(v, FiniteOrder):
                    assert v.order >= 1


def test_unimodular_ops_generator_sanity():
    rng = random.Random(812)
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    for _ in range(20):
        t = apply_transforms(m, random_unimodular_ops(rng, 2, 2))
        inv, _ = smith_normal_form(t)
        assert inv == AbelianInvariants(0, (6,))
