import random

import pytest

from tiltbraid.braid import BraidWord, garside_nf, geq_L
from tiltbraid.complexes import stalk
from tiltbraid.mutation import SiltingObject, silting_leq
from tiltbraid.rho import (
    BraidActionError,
    RhoContext,
    check_braid_action,
    endo_cartan,
    rho,
    top_projective_shift,
)
from tiltbraid.verify import grid_fixtures, staircase_up, staircase_down


@pytest.fixture(scope="module")
def ctx2():
    return RhoContext(2)


@pytest.fixture(scope="module")
def ctx3():
    return RhoContext(3)


def test_empty_word_is_regular(ctx2):
    T = ctx2.evaluate(BraidWord(2, ()))
    assert [s.terms for s in T.summands] == [{0: (1,)}, {0: (2,)}]


def test_generator_column_fixtures(ctx2):
    algebra = ctx2.algebra
    fixtures = grid_fixtures(algebra)
    assert ctx2.evaluate(BraidWord(2, (1,))).same_object(SiltingObject(algebra, fixtures["Y1[1]+Q"]))
    assert ctx2.evaluate(BraidWord(2, (-1,))).same_object(SiltingObject(algebra, fixtures["X1[-1]+Q"]))
    assert ctx2.evaluate(BraidWord(2, (1, 1))).same_object(SiltingObject(algebra, fixtures["Y2[2]+Q"]))
    assert ctx2.evaluate(BraidWord(2, (-1, -1))).same_object(SiltingObject(algebra, fixtures["X2[-2]+Q"]))


def test_powers_are_pairwise_distinct(ctx2):
    keys = set()
    for k in range(-3, 4):
        letters = tuple([1] * k if k >= 0 else [-1] * (-k))
        keys.add(ctx2.evaluate(BraidWord(2, letters)).object_key())
    assert len(keys) == 7


def test_top_label_never_mutates(ctx2):
    base = ctx2.evaluate(BraidWord(2, ()))
    for letters in ((1,), (1, 1), (-1,), (1, -1, 1)):
        T = ctx2.evaluate(BraidWord(2, letters))
        assert T.summand(2) is base.summand(2)
        assert top_projective_shift(T) == 0


def test_shift_equivariance(ctx2):
    word = BraidWord(2, (1, 1, -1))
    shifted_ctx = RhoContext(2, shift=2, algebra=ctx2.algebra)
    lhs = shifted_ctx.evaluate(word)
    rhs = ctx2.evaluate(word).shift(2)
    assert lhs.same_object(rhs)


def test_braid_relation_as_isomorphism(ctx3):
    x = ctx3.evaluate(BraidWord(3, (1, 2, 1)))
    y = ctx3.evaluate(BraidWord(3, (2, 1, 2)))
    assert x.same_object(y)


def test_positive_letters_strictly_descend(ctx3):
    rng = random.Random(6021)
    alphabet = [1, 2, -1, -2]
    for _ in range(15):
        w = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))))
        base = ctx3.evaluate(w)
        for i in (1, 2):
            bigger = ctx3.evaluate(BraidWord(3, (i,) + w.letters))
            assert silting_leq(bigger, base)
            assert not bigger.same_object(base)


def test_order_compatibility_samples(ctx3):
    assert geq_L(BraidWord(3, (1, 2)), BraidWord(3, (2,)))
    assert silting_leq(ctx3.evaluate(BraidWord(3, (1, 2))), ctx3.evaluate(BraidWord(3, (2,))))
    rng = random.Random(1371)
    alphabet = [1, 2, -1, -2]
    for _ in range(25):
        x = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4))))
        y = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4))))
        assert geq_L(x, y) == silting_leq(ctx3.evaluate(x), ctx3.evaluate(y))


def test_injectivity_proxy_small(ctx3):
    rng = random.Random(40)
    alphabet = [1, 2, -1, -2]
    words = [BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4)))) for _ in range(40)]
    for x in words:
        for y in words:
            assert (garside_nf(x) == garside_nf(y)) == ctx3.evaluate(x).same_object(ctx3.evaluate(y))


def test_endo_cartan_matches_base(ctx3):
    cartan = ctx3.algebra.cartan_matrix()
    for letters in ((), (1,), (2,), (1, 2), (1, -2, 1)):
        T = ctx3.evaluate(BraidWord(3, letters))
        mat = endo_cartan(T)
        assert mat == cartan
        assert sum(sum(r) for r in mat) == ctx3.algebra.dim


def test_check_braid_action_small():
    rep = check_braid_action(2, 4, order_samples=25)
    assert rep["words"] == 31
    assert rep["nf_classes"] == 9  # the powers s1^k for k in -4..4
    assert "left mutation" in rep["orientation"]


def test_check_braid_action_guard():
    with pytest.raises(BraidActionError):
        check_braid_action(5, 3)
    with pytest.raises(BraidActionError):
        check_braid_action(3, 7)


def test_rho_standalone_entry_point():
    T = rho(BraidWord(2, (1,)))
    assert {d for s in T.summands for d in s.terms} == {-1, 0}
