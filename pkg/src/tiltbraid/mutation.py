"""Minimal approximations, irreducible silting mutation, and enumeration.

A silting object is stored as a labeled tuple of indecomposable minimal
complexes; labels transport through mutation by position (the mutated label
receives the cone).  Presilting is checked on construction, with the Hom
vanishing quantifier made finite by the degree-span window.
"""

from __future__ import annotations

from .algebra import Algebra
from .complexes import (
    ChainMap,
    CompositionAlgebra,
    ProjComplex,
    cone,
    direct_sum,
    hom_dim,
    hom_space,
    hom_window,
    intern_summand,
    minimize,
    positive_homs_vanish,
    stalk,
    sum_offsets,
    zero_complex,
    zero_map,
)


class MutationError(RuntimeError):
    pass


class SiltingObject:
    """Basic labeled silting object: label i (1-based) holds summand i-1.

    Summands are interned per algebra so that equal objects share identity;
    two silting objects are equal as objects iff their summand id-multisets
    coincide.
    """

    __slots__ = ("algebra", "summands", "provenance", "_total")

    def __init__(self, algebra: Algebra, summands, provenance="constructed", check=True):
        self.algebra = algebra
        summands = tuple(intern_summand(minimize(s)) for s in summands)
        self.summands = summands
        self.provenance = provenance
        self._total = None
        if check:
            for i, u in enumerate(summands):
                for j, v in enumerate(summands):
                    if i < j and u is v:
                        raise MutationError(f"summands {i + 1} and {j + 1} coincide; object is not basic")
            if not self.is_presilting():
                raise MutationError("object fails the presilting check")

    @property
    def rank(self):
        return len(self.summands)

    def summand(self, label: int) -> ProjComplex:
        return self.summands[label - 1]

    def total(self) -> ProjComplex:
        if self._total is None:
            self._total = direct_sum(self.summands)
        return self._total

    def is_presilting(self) -> bool:
        return all(positive_homs_vanish(u, v) for u in self.summands for v in self.summands)

    def is_tilting(self) -> bool:
        """Hom vanishing in both shift directions (generation is inherited)."""
        for u in self.summands:
            for v in self.summands:
                for k in hom_window(u, v):
                    if k != 0 and hom_dim(u, v, k) != 0:
                        return False
        return True

    def shift(self, m: int) -> "SiltingObject":
        return SiltingObject(
            self.algebra, tuple(s.shift(m) for s in self.summands), provenance=self.provenance, check=False
        )

    def object_key(self):
        """Hashable identity of the underlying object (labels forgotten)."""
        return tuple(sorted(id(s) for s in self.summands))

    def same_object(self, other: "SiltingObject") -> bool:
        return self.object_key() == other.object_key()

    def signature(self):
        return tuple(sorted(s.signature() for s in self.summands))

    def __repr__(self):
        return f"SiltingObject({self.algebra.name}; {self.rank} summands)"


def regular_silting(algebra: Algebra, shift: int = 0) -> SiltingObject:
    """The free module as the labeled silting object P_1 + ... + P_n, shifted."""
    n = algebra.quiver.num_vertices
    return SiltingObject(
        algebra, tuple(stalk(algebra, v, -shift) for v in range(1, n + 1)), provenance="regular", check=False
    )


# -- minimal approximations ----------------------------------------------------


def _approximation_data(X: ProjComplex, summand_list):
    """Hom spaces and the radical action shared by both approximation sides."""
    comp = CompositionAlgebra(list(summand_list))
    homs = [hom_space(X, U, 0) for U in summand_list]
    return comp, homs


def minimal_left_approximation(X: ProjComplex, summand_list) -> ChainMap:
    """Minimal left approximation X -> U' with U' built from `summand_list`.

    Generators of Hom(X, -) modulo rad(End)(postcomposition) give the columns;
    by Nakayama the choice is a minimal generating set, so no summand of U'
    can be dropped.  The zero map to the zero complex is returned when there
    are no maps at all.
    """
    summand_list = list(summand_list)
    A = X.algebra
    field = A.field
    if not summand_list:
        return zero_map(X, zero_complex(A), 0)
    comp = CompositionAlgebra(summand_list)
    homs = [hom_space(X, U, 0) for U in summand_list]
    chosen = []  # (target index k, chain map)
    for k, hk in enumerate(homs):
        if hk.dim == 0:
            continue
        # span of { r o m : r in rad(End), m in any Hom(X, U_j) } landing in U_k
        rad_images = []
        for rad_vec in comp.radical_rows():
            rad_elems = [(p, c) for p, c in enumerate(rad_vec) if c]
            for j, hj in enumerate(homs):
                if hj.dim == 0:
                    continue
                for m in hj.basis_maps():
                    acc = None
                    for p, c in rad_elems:
                        i2, j2, loc = comp.basis[p]
                        if j2 != j or i2 != k:
                            continue
                        r_map = comp.blocks[(i2, j2)].basis_maps()[loc]
                        term = r_map.compose(m).scale(c)
                        acc = term if acc is None else acc.add(term)
                    if acc is not None and not acc.is_zero():
                        rad_images.append(hk.reduce(acc))
        reps = _complement_representatives(field, rad_images, hk.dim)
        for vec in reps:
            chosen.append((k, hk.class_from_coeffs(vec)))
    if not chosen:
        return zero_map(X, zero_complex(A), 0)
    targets = [summand_list[k] for k, _ in chosen]
    U_prime = direct_sum(targets)
    mats = {}
    for d in X.terms:
        nr = len(U_prime.term(d))
        nc = len(X.term(d))
        if nr == 0 or nc == 0:
            continue
        offs = sum_offsets(targets, d)
        mat = [[A.zero() for _ in range(nc)] for _ in range(nr)]
        for blk, (k, g) in enumerate(chosen):
            sub = g.mats.get(d)
            if sub is None:
                continue
            for t, row in enumerate(sub):
                for s, e in enumerate(row):
                    mat[offs[blk] + t][s] = e
        mats[d] = mat
    return ChainMap(X, U_prime, 0, mats)


def minimal_right_approximation(X: ProjComplex, summand_list) -> ChainMap:
    """Minimal right approximation U' -> X (dual construction, precomposition)."""
    summand_list = list(summand_list)
    A = X.algebra
    field = A.field
    if not summand_list:
        return zero_map(zero_complex(A), X, 0)
    comp = CompositionAlgebra(summand_list)
    homs = [hom_space(U, X, 0) for U in summand_list]
    chosen = []
    for k, hk in enumerate(homs):
        if hk.dim == 0:
            continue
        rad_images = []
        for rad_vec in comp.radical_rows():
            rad_elems = [(p, c) for p, c in enumerate(rad_vec) if c]
            for j, hj in enumerate(homs):
                if hj.dim == 0:
                    continue
                for m in hj.basis_maps():
                    acc = None
                    for p, c in rad_elems:
                        i2, j2, loc = comp.basis[p]
                        if i2 != j or j2 != k:
                            continue
                        r_map = comp.blocks[(i2, j2)].basis_maps()[loc]
                        term = m.compose(r_map).scale(c)
                        acc = term if acc is None else acc.add(term)
                    if acc is not None and not acc.is_zero():
                        rad_images.append(hk.reduce(acc))
        reps = _complement_representatives(field, rad_images, hk.dim)
        for vec in reps:
            chosen.append((k, hk.class_from_coeffs(vec)))
    if not chosen:
        return zero_map(zero_complex(A), X, 0)
    sources = [summand_list[k] for k, _ in chosen]
    U_prime = direct_sum(sources)
    mats = {}
    for d in U_prime.terms:
        nr = len(X.term(d))
        nc = len(U_prime.term(d))
        if nr == 0 or nc == 0:
            continue
        offs = sum_offsets(sources, d)
        mat = [[A.zero() for _ in range(nc)] for _ in range(nr)]
        for blk, (k, g) in enumerate(chosen):
            sub = g.mats.get(d)
            if sub is None:
                continue
            for t, row in enumerate(sub):
                for s, e in enumerate(row):
                    mat[t][offs[blk] + s] = e
        mats[d] = mat
    return ChainMap(U_prime, X, 0, mats)


def _complement_representatives(field, inside_vectors, dim):
    """Unit-coordinate-free basis of (K^dim)/span(inside), as explicit vectors."""
    from .exact_linalg import _rref_rows

    work = [list(v) for v in inside_vectors]
    rank = len(_rref_rows(field, [list(v) for v in inside_vectors], dim)) if inside_vectors else 0
    reps = []
    for idx in range(dim):
        unit = [field.zero] * dim
        unit[idx] = field.one
        trial = work + [unit]
        r = len(_rref_rows(field, [list(t) for t in trial], dim))
        if r > rank:
            reps.append(unit)
            work.append(unit)
            rank = r
    return reps


def _assert_indecomposable(Y: ProjComplex):
    comp = CompositionAlgebra([Y])
    if comp.semisimple_dim() != 1:
        raise MutationError(
            f"mutation produced a decomposable cone (End/rad has dimension {comp.semisimple_dim()})"
        )


def mutate(T: SiltingObject, label: int, direction: str) -> SiltingObject:
    """Irreducible silting mutation at a label; 'left' uses the cone of the
    minimal left approximation, 'right' the co-cone of the right one."""
    if not (1 <= label <= T.rank):
        raise MutationError(f"label {label} out of range 1..{T.rank}")
    X = T.summand(label)
    others = [s for i, s in enumerate(T.summands) if i != label - 1]
    if direction == "left":
        f = minimal_left_approximation(X, others)
        Y = cone(f)
    elif direction == "right":
        g = minimal_right_approximation(X, others)
        Y = cone(g).shift(-1)
    else:
        raise MutationError("direction must be 'left' or 'right'")
    Y = minimize(Y)
    if Y.is_zero():
        raise MutationError("mutation produced the zero complex")
    _assert_indecomposable(Y)
    new_summands = list(T.summands)
    new_summands[label - 1] = Y
    return SiltingObject(T.algebra, new_summands, provenance=T.provenance)


# -- silting order and enumeration ---------------------------------------------


def silting_leq(S: SiltingObject, T: SiltingObject) -> bool:
    """S <= T iff Hom(T, S[i]) = 0 for every i > 0 (window-bounded)."""
    if S.algebra is not T.algebra:
        raise MutationError("silting comparison across different algebras")
    return all(positive_homs_vanish(u, v) for u in T.summands for v in S.summands)


def enumerate_interval(T: SiltingObject):
    """All silting objects in [T[1], T], by left-mutation search from T.

    Left mutations only descend, so the only prune needed is X >= T[1];
    termination is guaranteed at the scales this artifact accepts (the
    two-term regions here are finite).
    """
    bottom = T.shift(1)
    seen = {T.object_key(): T}
    frontier = [T]
    while frontier:
        nxt = []
        for obj in frontier:
            for label in range(1, obj.rank + 1):
                child = mutate(obj, label, "left")
                key = child.object_key()
                if key in seen:
                    continue
                if silting_leq(bottom, child):
                    seen[key] = child
                    nxt.append(child)
        frontier = nxt
    return list(seen.values())


def two_term_tilting_count(n: int, field=None):
    """(number of two-term silting objects, number of tilting ones) for the
    rank-n Auslander algebra."""
    from .algebra import build_auslander
    from .exact_linalg import QQ

    algebra = build_auslander(n, field or QQ)
    return two_term_counts_for(algebra)


def two_term_counts_for(algebra: Algebra):
    T = regular_silting(algebra)
    interval = enumerate_interval(T)
    tilting = sum(1 for obj in interval if obj.is_tilting())
    return len(interval), tilting


def h0(T: SiltingObject):
    """Degree-zero cohomology per summand of a two-term object.

    Returns a list of {"label", "dimension_vector", "support"} entries; a
    summand with vanishing H^0 contributes to the support part.
    """
    A = T.algebra
    n = A.quiver.num_vertices
    out = []
    for i, U in enumerate(T.summands):
        if any(d not in (-1, 0) for d in U.terms):
            raise MutationError("h0 report needs a two-term object")
        vec = []
        for w in range(1, n + 1):
            tgt = [b for v in U.term(0) for b in A.piece(w, v)]
            dim_t = len(tgt)
            if dim_t == 0:
                vec.append(0)
                continue
            rank = _h0_rank(A, U, w, dim_t)
            vec.append(dim_t - rank)
        out.append({
            "label": i + 1,
            "dimension_vector": vec,
            "support": not any(vec),
        })
    return out


def _h0_rank(algebra, U, w, dim_t):
    """Rank of left multiplication by the degree (-1 -> 0) differential on the
    w-th vertex column."""
    from .exact_linalg import Matrix, rank

    field = algebra.field
    src_cols = []
    mat = U.diffs.get(-1)
    src_vs = U.term(-1)
    tgt_vs = U.term(0)
    tgt_coords = []
    for t, v in enumerate(tgt_vs):
        for b in algebra.piece(w, v):
            tgt_coords.append((t, b))
    pos = {c: i for i, c in enumerate(tgt_coords)}
    if mat is None:
        return 0
    for s, v in enumerate(src_vs):
        for b in algebra.piece(w, v):
            col = [field.zero] * len(tgt_coords)
            for t in range(len(tgt_vs)):
                entry = mat[t][s]
                if entry.coeffs:
                    prod = algebra.mult_dicts(entry.coeffs, {b: field.one})
                    for bb, c in prod.items():
                        col[pos[(t, bb)]] = col[pos[(t, bb)]] + c
            src_cols.append(col)
    if not src_cols:
        return 0
    return rank(Matrix(field, src_cols, len(tgt_coords)))


# -- Hasse diagram --------------------------------------------------------------


def summand_signature_string(U: ProjComplex) -> str:
    parts = []
    for d, vs in sorted(U.terms.items()):
        parts.append(f"{d}:{'.'.join(str(v) for v in sorted(vs))}")
    return "|".join(parts)


def object_signature_string(T: SiltingObject) -> str:
    return " + ".join(sorted(summand_signature_string(s) for s in T.summands))


def hasse_dot(interval) -> str:
    """DOT source for the Hasse diagram of an enumerated interval; edges are
    irreducible left mutations between members."""
    objects = list(interval)
    keys = {obj.object_key(): i for i, obj in enumerate(objects)}
    names = {}
    for i, obj in enumerate(objects):
        names[i] = object_signature_string(obj)
    lines = ["digraph silting_interval {", '  rankdir="TB";']
    for i, obj in enumerate(objects):
        lines.append(f'  n{i} [label="{names[i]}"];')
    edges = set()
    for i, obj in enumerate(objects):
        for label in range(1, obj.rank + 1):
            child = mutate(obj, label, "left")
            j = keys.get(child.object_key())
            if j is not None:
                edges.add((i, j, label))
    for i, j, label in sorted(edges):
        lines.append(f'  n{i} -> n{j} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
