import json
import os
import random
from fractions import Fraction

import pytest

from smtlab import (
    BOT,
    TOP,
    GRADED,
    PLAIN,
    ParameterError,
    Relation,
    RelationContext,
    Space,
    monomial_weight,
    p_gen,
    presentation_check,
    relation_violations,
    straighten,
    straighten_pair,
    u_gen,
    xi_gen,
)
from smtlab.generators import (
    canonical_monomial,
    format_monomial,
    generator_elements,
    is_standard,
    lattice_elements,
)
from smtlab.straighten import dump_relations, load_relations, relations_corpus

DATA = os.path.join(os.path.dirname(__file__), "data")


def test_mixed_pair_collapses_to_single_minor(ctx233):
    rel = straighten_pair(ctx233, u_gen((1, 2)), xi_gen((1, 2)))
    assert rel.rhs == ((Fraction(1), (p_gen((1, 2), (1, 2)),)),)
    graded = straighten_pair(ctx233, u_gen((1, 2)), xi_gen((1, 2)), mode=GRADED)
    assert graded.rhs == ((Fraction(1), (p_gen((1, 2), (1, 2)), BOT)),)


def test_two_by_two_golden_relation(ctx233):
    rel = straighten_pair(ctx233, p_gen((1,), (2,)), p_gen((2,), (1,)))
    assert rel.rhs == (
        (Fraction(1), (p_gen((2,), (2,)), p_gen((1,), (1,)))),
        (Fraction(-1), (p_gen((1, 2), (1, 2)),)),
    )
    graded = straighten_pair(ctx233, p_gen((1,), (2,)), p_gen((2,), (1,)),
                             mode=GRADED)
    assert graded.rhs == (
        (Fraction(1), (p_gen((2,), (2,)), p_gen((1,), (1,)))),
        (Fraction(-1), (TOP, p_gen((1, 2), (1, 2)))),
    )


def test_pairing_times_row_minor_relation(ctx233):
    # expanding the determinant of the left matrix bordered by a pairing
    # column forces this two-term expansion
    rel = straighten_pair(ctx233, p_gen((1,), (1,)), u_gen((2, 3)))
    assert set(rel.rhs) == {
        (Fraction(1), (p_gen((2,), (1,)), u_gen((1, 3)))),
        (Fraction(-1), (p_gen((3,), (1,)), u_gen((1, 2)))),
    }


def test_three_term_row_minor_relation(ctx243):
    rel = straighten_pair(ctx243, u_gen((1, 4)), u_gen((2, 3)))
    assert set(rel.rhs) == {
        (Fraction(1), (u_gen((2, 4)), u_gen((1, 3)))),
        (Fraction(-1), (u_gen((3, 4)), u_gen((1, 2)))),
    }


def test_straighten_pair_rejects_standard_pairs(ctx233):
    with pytest.raises(ParameterError):
        straighten_pair(ctx233, p_gen((2,), (2,)), p_gen((1,), (1,)))


def test_every_relation_is_an_exact_polynomial_identity(ctx233):
    for rel in relations_corpus(ctx233, mode=PLAIN):
        lhs = ctx233.eval_monomial(rel.lhs)
        rhs = ctx233.ring.zero()
        for c, mono in rel.rhs:
            rhs = rhs + ctx233.eval_monomial(mono).scale(c)
        assert lhs == rhs
        assert all(is_standard(ctx233.space, m) for _, m in rel.rhs)


def test_relation_violations_negative_control(ctx233):
    good = straighten_pair(ctx233, p_gen((1,), (2,)), p_gen((2,), (1,)))
    assert relation_violations(ctx233, good) == []
    # corrupt the join*meet coefficient
    bad = Relation(good.lhs,
                   ((Fraction(2), good.rhs[0][1]), good.rhs[1]),
                   good.mode)
    problems = relation_violations(ctx233, bad)
    assert any("coefficient" in p for p in problems)
    assert any("different polynomials" in p for p in problems)


def test_weight_digits_and_base(space233):
    w = monomial_weight(space233, (p_gen((2,), (3,)),))
    assert w.base == 4
    assert w.digits == (2, 3, 1, 3, 3, 1)
    assert w.value == sum(d * 4 ** i for i, d in enumerate(reversed(w.digits)))
    assert monomial_weight(space233, (BOT,)).digits == (1, 1, 1, 1, 1, 1)
    with pytest.raises(ParameterError):
        monomial_weight(space233, (BOT,), base=3)


def test_straighten_standard_input_is_identity(ctx233):
    mono = (p_gen((2,), (2,)), p_gen((1,), (1,)))
    out = straighten(ctx233, mono)
    assert out == [(Fraction(1), canonical_monomial(ctx233.space, mono))]
    assert straighten(ctx233, ()) == [(Fraction(1), ())]


def test_straighten_mixed_pair(ctx233):
    out = straighten(ctx233, (u_gen((1, 2)), xi_gen((1, 2))))
    assert out == [(Fraction(1), (p_gen((1, 2), (1, 2)),))]


def test_straighten_degree_three_matches_polynomials(ctx233):
    mono = (p_gen((1,), (2,)), p_gen((2,), (1,)), p_gen((1,), (1,)))
    out = straighten(ctx233, mono)
    target = ctx233.eval_monomial(mono)
    acc = ctx233.ring.zero()
    for c, m in out:
        assert is_standard(ctx233.space, m)
        acc = acc + ctx233.eval_monomial(m).scale(c)
    assert acc == target


def test_straighten_rejects_bounds_in_plain_mode(ctx233):
    with pytest.raises(ParameterError):
        straighten(ctx233, (TOP, p_gen((1,), (1,))), mode=PLAIN)


def test_confluence_across_strategies(ctx233):
    rng = random.Random(99)
    pool = lattice_elements(ctx233.space)
    for _ in range(60):
        deg = rng.randrange(1, 5)
        mono = tuple(pool[rng.randrange(len(pool))] for _ in range(deg))
        outs = []
        for strategy in ("first", "last", "random"):
            srng = random.Random(rng.randrange(2 ** 32))
            outs.append(straighten(ctx233, mono, mode=GRADED,
                                   strategy=strategy, rng=srng))
        assert outs[0] == outs[1] == outs[2]


def test_weight_strictly_increases_in_graded_rewriting(ctx233):
    rng = random.Random(2024)
    pool = lattice_elements(ctx233.space)
    for _ in range(60):
        deg = rng.randrange(2, 5)
        mono = tuple(pool[rng.randrange(len(pool))] for _ in range(deg))
        trace = []
        straighten(ctx233, mono, mode=GRADED, trace=trace)
        for old, new in trace:
            assert new > old


def test_step_cap_guard(ctx233):
    from smtlab.errors import TerminationFailureError
    with pytest.raises(TerminationFailureError):
        straighten(ctx233, (p_gen((1,), (2,)), p_gen((2,), (1,))), step_cap=0)


def test_random_strategy_needs_rng(ctx233):
    with pytest.raises(ParameterError):
        straighten(ctx233, (p_gen((1,), (2,)), p_gen((2,), (1,))),
                   strategy="random")


def test_presentation_check_small_degrees(ctx233):
    report = presentation_check(ctx233, 2)
    assert report["passed"]
    rows = {r["degree"]: r for r in report["degrees"]}
    assert rows[1]["kernel_dim"] == 0
    # one independent quadric per non-standard pair
    assert rows[2]["kernel_dim"] == rows[2]["relation_span_dim"] == report["relations"]


def test_presentation_gl_restricted_contains_vanishing_minor(ctx233):
    # the full (n+1)-size pairing minor evaluates to zero, so the free
    # cubic expressing it lies in the kernel of evaluation
    ring = ctx233.ring
    det = ring.det([[ring.pairing(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)])
    assert det == ring.zero()
    report = presentation_check(ctx233, 3, p_only=True)
    assert report["passed"]


def test_relation_json_round_trip(ctx233, tmp_path):
    path = tmp_path / "rels.json"
    payload = dump_relations(ctx233, path)
    space, mode, rels = load_relations(path)
    assert space == ctx233.space
    assert mode == GRADED
    assert len(rels) == len(payload["relations"]) == 68
    fresh = relations_corpus(ctx233, mode=GRADED)
    assert rels == fresh


def test_golden_relation_corpus_is_stable(ctx233):
    path = os.path.join(DATA, "relations_2_3_3.json")
    with open(path) as fh:
        frozen = json.load(fh)
    from smtlab.straighten import relation_to_dict
    fresh = [relation_to_dict(r) for r in relations_corpus(ctx233, mode=GRADED)]
    assert frozen["relations"] == fresh
