"""Independent brute-force confirmation of the rank-2 two-term enumeration.

The mutation search says there are exactly 6 two-term silting objects (4 of
them tilting).  Here the same count is recovered with no mutation at all:
every minimal two-term complex with at most two summands per degree and
0/±1 differential entries is generated directly, decomposed, and the basic
presilting pairs among the resulting indecomposables are counted.
"""

from itertools import combinations_with_replacement, product

import pytest

from tiltbraid.algebra import build_auslander
from tiltbraid.complexes import (
    ComplexError,
    ProjComplex,
    decompose,
    hom_dim,
    hom_window,
    intern_summand,
    minimize,
    positive_homs_vanish,
)
from tiltbraid.mutation import enumerate_interval, regular_silting


@pytest.fixture(scope="module")
def pool(lambda2):
    """All indecomposable minimal complexes supported in degrees {-1, 0} that
    arise from small shapes, up to isomorphism."""
    rad_piece = {}
    for s in (1, 2):
        for t in (1, 2):
            rad = [b for b in lambda2.piece(s, t) if b in set(lambda2.radical_basis())]
            rad_piece[(s, t)] = rad
    shapes = [()] + [tuple(m) for k in (1, 2) for m in combinations_with_replacement((1, 2), k)]
    coeffs = (0, 1, -1)
    found = []
    seen = set()
    for src in shapes:
        for tgt in shapes:
            if not src and not tgt:
                continue
            cells = [(t, s) for t in range(len(tgt)) for s in range(len(src))]
            choice_sets = []
            for t, s in cells:
                rad = rad_piece[(src[s], tgt[t])]
                choice_sets.append([(b, c) for b in rad for c in coeffs if c] + [None])
            for assignment in product(*choice_sets) if cells else [()]:
                diffs = {}
                if cells:
                    mat = [[lambda2.zero() for _ in src] for _ in tgt]
                    for (t, s), pick in zip(cells, assignment):
                        if pick is not None:
                            b, c = pick
                            mat[t][s] = lambda2.element({b: lambda2.field.of_int(c)})
                    diffs[-1] = mat
                terms = {}
                if src:
                    terms[-1] = src
                if tgt:
                    terms[0] = tgt
                X = minimize(ProjComplex(lambda2, terms, diffs))
                if X.is_zero():
                    continue
                for part in decompose(X):
                    rep = intern_summand(part)
                    if id(rep) not in seen:
                        seen.add(id(rep))
                        found.append(rep)
    return found


def test_pool_contains_the_expected_indecomposables(pool):
    # stalks in both degrees, the two staircases, and the loop complex
    sigs = sorted(str(sorted(u.terms.items())) for u in pool)
    assert "[(0, (1,))]" in sigs and "[(0, (2,))]" in sigs
    assert "[(-1, (1,)), (0, (2,))]" in sigs  # small-to-big staircase
    assert "[(-1, (2,)), (0, (1,))]" in sigs  # big-to-small staircase
    assert "[(-1, (1,))]" in sigs and "[(-1, (2,))]" in sigs
    assert sigs.count("[(-1, (2,)), (0, (2,))]") == 1  # the loop complex
    assert len(pool) == 7


def test_basic_presilting_pairs_match_the_mutation_search(lambda2, pool):
    silting_pairs = []
    for u, v in combinations_with_replacement(pool, 2):
        if u is v:
            continue
        pieces = (u, v)
        if all(positive_homs_vanish(x, y) for x in pieces for y in pieces):
            silting_pairs.append((u, v))
    assert len(silting_pairs) == 6
    tilting = 0
    for u, v in silting_pairs:
        ok = True
        for x in (u, v):
            for y in (u, v):
                for k in hom_window(x, y):
                    if k != 0 and hom_dim(x, y, k):
                        ok = False
        tilting += ok
    assert tilting == 4
    # and the mutation search finds isomorphic objects
    interval = enumerate_interval(regular_silting(lambda2))
    keys = {obj.object_key() for obj in interval}
    brute_keys = {tuple(sorted((id(u), id(v)))) for u, v in silting_pairs}
    assert keys == brute_keys
