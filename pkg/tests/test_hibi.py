import random

import pytest

from smtlab import (
    FiniteLattice,
    ParameterError,
    Relation,
    Space,
    check_degeneration_hypotheses,
    p_gen,
    rank_dimension_report,
    standard_multichains,
)
from smtlab.hibi import load_lattice, save_lattice
from smtlab.straighten import GRADED, straighten_pair
from fractions import Fraction


@pytest.fixture(scope="module")
def diamond():
    return FiniteLattice.chain_product((2, 2))


def test_diamond_has_one_binomial(diamond):
    gens = diamond.binomial_generators()
    assert len(gens) == 1
    g = gens[0]
    assert {g.x, g.y} == {(1, 2), (2, 1)}
    assert g.low == (1, 1) and g.high == (2, 2)


def test_chain_has_no_binomials():
    chain = FiniteLattice.chain_product((5,))
    assert chain.binomial_generators() == []


def test_bounded_lattice_binomial_count(space233):
    lat = FiniteLattice.bounded_generator_lattice(space233)
    pairs = lat.noncomparable_pairs()
    assert len(lat.binomial_generators()) == len(pairs) == 68


def test_normal_form_diamond(diamond):
    nf = diamond.normal_form([(1, 2), (2, 1)])
    assert nf == [(2, 2), (1, 1)]
    chain_input = [(2, 2), (1, 1), (1, 1)]
    assert diamond.normal_form(chain_input) == chain_input


def test_normal_form_strategy_independent(space233):
    lat = FiniteLattice.bounded_generator_lattice(space233)
    rng = random.Random(31)
    pool = lat.elements
    for _ in range(40):
        mono = [pool[rng.randrange(len(pool))] for _ in range(4)]
        first = lat.normal_form(mono, "first")
        last = lat.normal_form(mono, "last")
        rand = lat.normal_form(mono, "random", rng=random.Random(rng.random()))
        assert first == last == rand
        # rewrites preserve the entry multiset of every embedding slot
        from smtlab.poset import embed_chain
        before = [sorted(v) for v in
                  zip(*(embed_chain(space233, e) for e in mono))]
        after = [sorted(v) for v in
                 zip(*(embed_chain(space233, e) for e in first))]
        assert before == after


def test_hilbert_function_diamond(diamond):
    assert diamond.hilbert_function(0) == 1
    assert diamond.hilbert_function(1) == 4
    assert diamond.hilbert_function(2) == 9  # 1 + 2 + 2 + 4


def test_hilbert_agreement_with_multichain_enumeration(space233):
    lat = FiniteLattice.bounded_generator_lattice(space233)
    assert lat.hilbert_function(1) == 26
    for k in range(4):
        assert lat.hilbert_function(k) == len(standard_multichains(space233, k))


def test_non_lattice_is_rejected():
    # two maximal elements with no common upper bound
    with pytest.raises(ParameterError):
        FiniteLattice.from_leq(["a", "b"], lambda x, y: x == y)


def test_non_distributive_lattice_is_rejected():
    # the five-element pentagon: 0 < a < 1 and 0 < b < c < 1
    order = {
        ("0", "0"), ("a", "a"), ("b", "b"), ("c", "c"), ("1", "1"),
        ("0", "a"), ("0", "b"), ("0", "c"), ("0", "1"),
        ("a", "1"), ("b", "c"), ("b", "1"), ("c", "1"),
    }
    with pytest.raises(ParameterError):
        FiniteLattice.from_leq(["0", "a", "b", "c", "1"],
                               lambda x, y: (x, y) in order)


def test_degeneration_hypotheses_pass(ctx233):
    report = check_degeneration_hypotheses(ctx233)
    assert report["passed"]
    assert report["pairs_checked"] == 68
    assert report["violations"] == []


def test_degeneration_detects_corrupted_relation(ctx233):
    from smtlab.straighten import relation_violations
    rel = straighten_pair(ctx233, p_gen((1,), (2,)), p_gen((2,), (1,)),
                          mode=GRADED)
    corrupted = Relation(
        rel.lhs,
        ((Fraction(2), rel.rhs[0][1]),) + rel.rhs[1:],
        rel.mode)
    assert relation_violations(ctx233, corrupted)


def test_rank_dimension_report(space233):
    rep = rank_dimension_report(space233)
    assert rep["passed"]
    by = {r["poset"]: r for r in rep["posets"]}
    assert by["H"]["chain_cardinality_max"] == 9
    assert by["D"]["chain_cardinality_max"] == 11
    assert rep["lattice_algebra_dimension"] == 11  # rank + 1 = d + 3

    rep44 = rank_dimension_report(Space(2, 4, 4))
    by = {r["poset"]: r for r in rep44["posets"]}
    assert by["H"]["chain_cardinality_max"] == 13


def test_lattice_json_round_trip(diamond, tmp_path):
    labels = ["%d%d" % e for e in diamond.elements]
    path = tmp_path / "diamond.json"
    save_lattice(diamond, path, labels)
    loaded = load_lattice(path)
    assert len(loaded.elements) == 4
    assert len(loaded.binomial_generators()) == 1
    assert loaded.hilbert_function(2) == 9
