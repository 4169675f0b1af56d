from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from fusscat import bintree
from fusscat.bintree import LEAF
from fusscat.dendriform import (
    Dendriform,
    OpNode,
    RewriteLimitError,
    check_lower_structure,
    forbidden_patterns,
    infix,
    is_normal,
    parse_expr,
    print_expr,
)
from fusscat.ktrees import enumerate_ktrees, fuss_catalan, leaf, node, reading_word, tree_from_word
from fusscat.lincomb import LinComb
from fusscat.mfqsym import decompose_into_classes
from fusscat.relations import dendriform_relations, special_patterns
from fusscat.sylvester import lift_max, mpermutations
from fusscat.words import parse_word
from oracles import class_bfs

WORKED_WORD = parse_word("9,9,7,7,8,6,6,4,3,3,2,2,4,5,1,1,5,8")
WORKED = "((g o1 ((g o1 (g o1 g)) > g)) o1 (g o1 (g > g))) < g"

D = {m: Dendriform(m) for m in (1, 2, 3)}


def trees(m, max_ops):
    return st.recursive(
        st.just(LEAF),
        lambda kids: st.builds(OpNode, st.integers(0, m), kids, kids),
        max_leaves=max_ops + 1,
    )


def F(*words):
    return LinComb(parse_word(w) for w in words)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_relation_shape(m):
    rels = dendriform_relations(m)
    assert len(rels) == comb(m + 2, 2)
    monos = [x for r in rels for x in r.lhs + r.rhs]
    assert len(monos) == len(set(monos)) == 2 * (m + 1) ** 2
    forb = forbidden_patterns(m)
    assert len(forb) == len(rels)
    assert all(sum(x in forb for x in r.lhs + r.rhs) == 1 for r in rels)


def test_forbidden_pattern_examples():
    m = 2
    assert special_patterns(1) == {("L", 0, 0), ("R", 1, 0), ("R", 1, 1)}
    assert not is_normal(OpNode(0, OpNode(0, LEAF, LEAF), LEAF), m)
    assert is_normal(OpNode(0, OpNode(2, LEAF, LEAF), LEAF), m)
    assert ("R", 2, 1) in special_patterns(3)
    assert len(special_patterns(2)) == 6


def test_parse_print_examples():
    assert parse_expr("g", 2) is LEAF
    assert parse_expr("(< g g)", 2) == OpNode(0, LEAF, LEAF)
    assert parse_expr("(o1 g (> g g))", 2) == OpNode(1, LEAF, OpNode(2, LEAF, LEAF))
    assert parse_expr("(o1g(>gg))", 2) == OpNode(1, LEAF, OpNode(2, LEAF, LEAF))


@pytest.mark.parametrize("bad", ["(< g)", "(o3 g g)", "(< g g", "(< g g))", "(x g g)", "h"])
def test_parse_errors(bad):
    with pytest.raises(SyntaxError, match="position"):
        parse_expr(bad, 2)


@given(trees(3, 6))
def test_print_parse_round_trip(t):
    assert parse_expr(print_expr(t, 3), 3) == t


def test_normalize_examples():
    d = D[2]
    t = d.parse("(< (< g g) g)")
    want = LinComb(d.parse(s) for s in ["(< g (< g g))", "(< g (o1 g g))", "(< g (> g g))"])
    assert d.normalize(t) == want
    t = d.parse("(> g (o1 g g))")
    assert d.normalize(t) == LinComb(d.parse(s) for s in ["(o1 (o1 g g) g)", "(o1 (> g g) g)"])
    normal = d.parse("(< g (o1 g g))")
    assert d.normalize(normal) == LinComb.basis(normal)


@pytest.mark.parametrize("m", [1, 2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_normalize_output_is_normal(m, data):
    t = data.draw(trees(m, 6))
    for s in D[m].normalize(t):
        assert D[m].is_normal(s)
        assert s.ops == t.ops


def test_rewrite_limit():
    d = Dendriform(2, step_limit=3)
    with pytest.raises(RewriteLimitError):
        d.normalize(d.parse("(< (< (< (< g g) g) g) g)"))


def test_enumerate_examples():
    assert len(D[2].enumerate_normal(1)) == 3
    assert len(D[2].enumerate_normal(2)) == 12
    assert len(D[1].enumerate_normal(2)) == 5
    assert 2 * 3**2 - comb(4, 2) == 12


@pytest.mark.parametrize("m,max_ops", [(1, 5), (2, 4), (3, 3)])
def test_census_against_filtered_brute_force(m, max_ops):
    d = D[m]
    for k in range(max_ops + 1):
        brute = [t for t in bintree.all_trees(k, m, OpNode) if d.is_normal(t)]
        assert set(brute) == set(d.enumerate_normal(k))
        assert len(brute) == fuss_catalan(m, k + 1)


def test_eval_examples():
    d = D[2]
    assert d.evaluate(LEAF) == F("11")
    assert d.evaluate(d.parse("(> g g)")) == F("1122")
    assert d.evaluate(d.parse("(o1 g g)")) == F("1212", "2112")


@pytest.mark.parametrize("m,max_ops", [(1, 4), (2, 3), (3, 2)])
def test_soundness_small(m, max_ops):
    d = D[m]
    all_trees = [t for k in range(max_ops + 1) for t in bintree.all_trees(k, m, OpNode)]
    assert d.check_soundness(all_trees) is None


@settings(max_examples=25, deadline=None)
@given(trees(2, 6))
def test_soundness_random_larger(t):
    d = D[2]
    assert d.evaluate_lincomb(d.normalize(t)) == d.evaluate(t)


def test_soundness_detects_a_broken_rule():
    d = Dendriform(2)
    bad = d.parse("(< (< g g) g)")
    d.rules[("L", 0, 0)] = LinComb([("R", 0, 0)])
    assert d.check_soundness([bad]) == bad


def test_dimension_examples():
    rep = D[2].dimension_check(3)
    assert (rep.census, rep.fuss_catalan, rep.rank, rep.ok) == (12, 12, 12, True)
    rep = D[1].dimension_check(4)
    assert (rep.census, rep.rank) == (14, 14)
    rep = D[2].dimension_check(1)
    assert (rep.census, rep.rank) == (1, 1)
    assert rep.to_json() == {"n": 1, "census": 1, "closed_form": 1, "rank": 1, "match": True}


def test_expr_examples():
    d = D[2]
    assert d.expr_from_ktree(leaf(2)) is LEAF
    k = node(None, leaf(2), None)
    assert d.expr_from_ktree(k) == d.parse("(o1 g g)")
    assert d.evaluate(d.expr_from_ktree(k)) == LinComb(class_bfs(reading_word(k)))
    with pytest.raises(ValueError):
        d.expr_from_ktree(None)
    with pytest.raises(ValueError):
        d.expr_from_ktree(leaf(3))


def test_worked_nine_node_expression():
    d = D[2]
    k = tree_from_word(WORKED_WORD)
    expr = d.expr_from_ktree(k)
    assert infix(expr, 2) == WORKED
    cert = d.certify_class_sum(expr, WORKED_WORD)
    assert cert.ok
    assert cert.lifts == [9]
    assert cert.explicit_terms == 512512
    assert cert.total_terms == 512512 * comb(17, 2)


def test_prec_with_generator_is_a_lift():
    for m in (1, 2, 3):
        alg = D[m].fqsym
        g = alg.generator()
        for x in mpermutations(m, 2) + mpermutations(m, 1):
            assert alg.prec(LinComb.basis(x), g) == LinComb(lift_max(x, m))


@pytest.mark.parametrize("m", [1, 2])
def test_certificate_agrees_with_explicit_evaluation(m):
    d = D[m]
    lifted = 0
    for n in range(1, 5):
        for k in enumerate_ktrees(m, n):
            expr = d.expr_from_ktree(k)
            w = reading_word(k)
            cert = d.certify_class_sum(expr, w)
            assert cert.ok
            assert cert.total_terms == len(d.evaluate(expr)) == len(class_bfs(w))
            lifted += bool(cert.lifts)
    assert lifted > 0


def test_certificate_rejects_wrong_class():
    d = D[2]
    cert = d.certify_class_sum(d.parse("(o1 g g)"), parse_word("1122"))
    assert not cert.ok


@pytest.mark.parametrize("m,max_nodes", [(1, 5), (2, 4), (3, 3)])
def test_realization(m, max_nodes):
    d = D[m]
    for n in range(1, max_nodes + 1):
        for k in enumerate_ktrees(m, n):
            expr = d.expr_from_ktree(k)
            assert expr.ops == n - 1
            assert d.evaluate(expr) == LinComb(class_bfs(reading_word(k)))


@pytest.mark.parametrize("m", [2, 3])
def test_lower_structure(m):
    words = [w for n in (1, 2) for w in mpermutations(m, n)]
    triples = [(u, v, w) for u in words for v in words for w in words]
    assert check_lower_structure(m, triples) is None
    assert check_lower_structure(m, triples[:20], reduced=False) is None


def test_census_by_root_shape():
    c = D[2].census_by_root(3)
    assert c["total"] == [1, 3, 12, 55]
    assert [c[str(x)][0] for x in range(3)] == [0, 0, 0]
    for k in range(1, 4):
        assert sum(c[str(x)][k] for x in range(3)) == c["total"][k]


@pytest.mark.parametrize("m,max_ops", [(1, 6), (2, 5), (3, 4)])
def test_counting_census_matches_listing(m, max_ops):
    assert D[m].census_counts(max_ops) == D[m].census_by_root(max_ops)
    assert D[m].census_counts(9)["total"] == [fuss_catalan(m, k + 1) for k in range(10)]
