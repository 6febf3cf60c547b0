import random

import pytest

from tiltbraid.braid import (
    BraidError,
    BraidWord,
    GarsideNF,
    braids_equal,
    folded_embed,
    garside_nf,
    geq_L,
    half_twist,
    is_positive,
    perm_compose,
    perm_of_generator,
    starting_set,
    finishing_set,
    words_up_to,
)


# -- independent oracle: the (faithful) action on a free group -------------------

def _reduce(word):
    out = []
    for l in word:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _inv(word):
    return tuple(-x for x in reversed(word))


def free_group_action(n, letters):
    """Images of the free generators under the strand action; equal braid
    words produce equal image tuples, and conversely."""
    images = {j: (j,) for j in range(1, n + 1)}
    for l in letters:
        i = abs(l)
        new = dict(images)
        if l > 0:
            new[i] = _reduce(images[i] + images[i + 1] + _inv(images[i]))
            new[i + 1] = images[i]
        else:
            new[i] = images[i + 1]
            new[i + 1] = _reduce(_inv(images[i + 1]) + images[i] + images[i + 1])
        images = new
    return tuple(images[j] for j in range(1, n + 1))


def oracle_equal(u: BraidWord, v: BraidWord) -> bool:
    return free_group_action(u.n, u.letters) == free_group_action(v.n, v.letters)


# -- fixtures ----------------------------------------------------------------------

def test_defining_relation_is_half_twist():
    nf1 = garside_nf(BraidWord(3, (1, 2, 1)))
    nf2 = garside_nf(BraidWord(3, (2, 1, 2)))
    assert nf1 == nf2
    assert nf1.inf == 1 and nf1.factors == ()


def test_free_cancellation():
    assert garside_nf(BraidWord(3, (1, -1))).is_trivial()
    assert garside_nf(BraidWord(3, ())).is_trivial()


def test_negative_infimum():
    nf = garside_nf(BraidWord(3, (-2, 1, 2)))
    assert nf.inf == -1
    assert oracle_equal(nf.to_word(), BraidWord(3, (-2, 1, 2)))


def test_word_validation():
    with pytest.raises(BraidError):
        BraidWord(3, (0,))
    with pytest.raises(BraidError):
        BraidWord(3, (3,))
    with pytest.raises(BraidError):
        BraidWord(2, (1,)) * BraidWord(3, (1,))


def test_parse_and_format():
    w = BraidWord.parse(3, " 1 2 -1 ")
    assert w.letters == (1, 2, -1)
    assert BraidWord.parse(3, "").letters == ()


def test_nf_validation_rejects_bad_factor_sequences():
    # (s1, s2) in B_3 is not left-weighted: s2 starts the second factor but
    # does not finish the first
    with pytest.raises(BraidError):
        GarsideNF(3, 0, (perm_of_generator(3, 1), perm_of_generator(3, 2)))
    with pytest.raises(BraidError):
        GarsideNF(3, 0, (half_twist(3),))


def test_descent_sets():
    p = perm_compose(perm_of_generator(3, 1), perm_of_generator(3, 2))  # word s1 s2
    assert starting_set(p) == {1}
    assert finishing_set(p) == {2}


def test_nf_string():
    assert str(garside_nf(BraidWord(3, (1, 1)))) == "D^0 | 2 1 3 | 2 1 3"


# -- properties ----------------------------------------------------------------------

def test_nf_agrees_with_free_group_action():
    rng = random.Random(314159)
    alphabet = [1, 2, 3, -1, -2, -3]
    for _ in range(250):
        u = BraidWord(4, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 7))))
        v = BraidWord(4, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 7))))
        assert braids_equal(u, v) == oracle_equal(u, v)


def test_nf_respects_group_law():
    rng = random.Random(27)
    alphabet = [1, 2, -1, -2]
    for _ in range(80):
        u = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))))
        v = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))))
        assert garside_nf(u * v) == garside_nf(garside_nf(u).to_word() * garside_nf(v).to_word())


def test_positive_words_have_nonnegative_infimum():
    for w in words_up_to(3, 4):
        if all(l > 0 for l in w.letters):
            assert is_positive(w)


def test_divisibility_fixtures():
    assert geq_L(BraidWord(3, (1, 2)), BraidWord(3, (2,)))
    assert geq_L(BraidWord(3, (1, -2)), BraidWord(3, (1, -2)))
    assert not geq_L(BraidWord(3, (1,)), BraidWord(3, (2,)))


def test_divisibility_is_a_partial_order():
    rng = random.Random(8)
    alphabet = [1, 2, -1, -2]
    words = [BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4)))) for _ in range(25)]
    for x in words:
        assert geq_L(x, x)
    for x in words[:12]:
        for y in words[:12]:
            if geq_L(x, y) and geq_L(y, x):
                assert braids_equal(x, y)
            for z in words[:12]:
                if geq_L(x, y) and geq_L(y, z):
                    assert geq_L(x, z)


def test_folded_embedding_formula():
    assert folded_embed(BraidWord(2, (1,))).letters == (1, 3)
    assert folded_embed(BraidWord(3, (-2,))).letters == (-2, -4)
    assert folded_embed(BraidWord(2, ())).letters == ()


def test_folded_embedding_is_homomorphism():
    rng = random.Random(5150)
    alphabet = [1, 2, -1, -2]
    for _ in range(40):
        u = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        v = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        assert garside_nf(folded_embed(u) * folded_embed(v)) == garside_nf(folded_embed(u * v))
        assert garside_nf(folded_embed(u.inverse()) * folded_embed(u)).is_trivial()


def test_folded_embedding_is_injective_on_samples():
    rng = random.Random(31)
    alphabet = [1, 2, -1, -2]
    for _ in range(40):
        u = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        v = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        if not braids_equal(u, v):
            assert garside_nf(folded_embed(u)) != garside_nf(folded_embed(v))
