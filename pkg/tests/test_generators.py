import pytest

from smtlab import (
    BOT,
    TOP,
    Space,
    content,
    format_monomial,
    is_standard,
    parse_monomial,
    p_gen,
    standard_monomials,
    standard_multichains,
    u_gen,
    xi_gen,
)
from smtlab.generators import (
    Content,
    canonical_monomial,
    generator_elements,
    lattice_elements,
    monomial_bidegree,
    violating_pairs,
)


def test_generator_counts(space233):
    H = generator_elements(space233)
    assert len(H) == 24  # 3 + 3 + (9 + 9)
    assert len({e for e in H}) == 24
    assert len(lattice_elements(space233)) == 26
    assert len(generator_elements(Space(1, 2, 2))) == 8  # 2 + 2 + 4


def test_is_standard(space233):
    assert is_standard(space233, (p_gen((2,), (2,)), p_gen((1,), (1,))))
    assert not is_standard(space233, (u_gen((1, 2)), xi_gen((1, 2))))
    assert not is_standard(space233, (p_gen((1,), (2,)), p_gen((2,), (1,))))
    assert is_standard(space233, ())
    assert is_standard(space233, (TOP, p_gen((1,), (1,)), u_gen((1, 2)), BOT))


def test_standardness_is_order_insensitive(space233):
    import itertools
    factors = [p_gen((2,), (1,)), u_gen((1, 3)), u_gen((1, 2))]
    vals = {is_standard(space233, perm)
            for perm in itertools.permutations(factors)}
    assert vals == {True}
    factors = [p_gen((1,), (2,)), p_gen((2,), (1,)), p_gen((3,), (3,))]
    vals = {is_standard(space233, perm)
            for perm in itertools.permutations(factors)}
    assert vals == {False}


@pytest.mark.parametrize("bid,count", [
    ((1, 1), 9),
    ((2, 2), 45),   # 36 ordered pairs of pairings + 9 two-row minors
    ((2, 0), 3),
    ((0, 2), 3),
    ((0, 0), 1),
    ((1, 0), 0),
    ((2, 1), 0),
    ((3, 1), 24),
    ((4, 0), 6),
])
def test_standard_monomial_counts(space233, bid, count):
    monos = standard_monomials(space233, *bid)
    assert len(monos) == count
    assert len(set(monos)) == count
    for m in monos:
        assert is_standard(space233, m)
        assert monomial_bidegree(space233, m) == bid


def test_content_examples(space233):
    assert content((p_gen((1,), (2,)),)) == Content((1,), (2,))
    assert content((u_gen((1, 2)), xi_gen((1, 3)))) == Content((1, 2), (1, 3))
    # additive and bound-insensitive
    assert content((TOP, BOT)) == Content((), ())
    lhs = content((u_gen((1, 2)), xi_gen((1, 2))))
    rhs = content((p_gen((1, 2), (1, 2)),))
    assert lhs == rhs


def test_multichain_counts(space233):
    assert len(standard_multichains(space233, 0)) == 1
    assert len(standard_multichains(space233, 1)) == 26
    assert len(standard_multichains(space233, 2)) == 283
    for m in standard_multichains(space233, 2):
        assert is_standard(space233, m)


def test_violating_pairs(space233):
    mono = canonical_monomial(
        space233, (p_gen((1,), (2,)), p_gen((2,), (1,)), BOT))
    pairs = violating_pairs(space233, mono)
    assert len(pairs) == 1
    i, j = pairs[0]
    assert {mono[i], mono[j]} == {p_gen((1,), (2,)), p_gen((2,), (1,))}


def test_monomial_text_round_trip(space233):
    monos = standard_monomials(space233, 2, 2)[:10]
    monos.append(())
    monos.append(canonical_monomial(space233, (TOP, BOT, u_gen((1, 2)))))
    for m in monos:
        assert parse_monomial(format_monomial(m), space233) == tuple(m)
    assert format_monomial(()) == "1"
