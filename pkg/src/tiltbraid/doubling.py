"""Symmetric doubling: the corner embedding, the Nakayama functor, and the
passage from tilting complexes over the Auslander algebra to self-injective
territory.

The Auslander algebra of rank n is identified with the corner e(Pi)e of the
preprojective algebra on 2n-1 vertices, e the sum of the low idempotents; the
identification sends generators to the like-named generators and is verified
to be an algebra isomorphism on construction.  The Nakayama functor is not
formula-coded: for every vertex a right-module isomorphism between the dual
of the left projective and the projective at the mirrored vertex is found by
exact linear algebra, and the induced action on all Hom components follows by
conjugating the dual of right multiplication.  Any other choice differs by an
inner twist, which no isomorphism-level test can see.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraElement, build_auslander, build_preprojective, corner_algebra
from .complexes import (
    ProjComplex,
    hom_dim,
    hom_window,
    intern_summand,
    minimize,
)
from .exact_linalg import Matrix, QQ, inverse as mat_inverse, solve
from .mutation import SiltingObject


class DoublingError(RuntimeError):
    pass


class CornerEmbedding:
    """Identification of an algebra with a corner of an ambient algebra.

    Built from the generator correspondence (same arrow names, same low
    vertices); each basis path is sent to the product of its arrow images and
    the result is checked to be bijective and multiplicative.
    """

    def __init__(self, small: Algebra, ambient: Algebra, vertices=None):
        if vertices is None:
            vertices = tuple(range(1, small.quiver.num_vertices + 1))
        self.small = small
        self.ambient = ambient
        self.vertices = tuple(vertices)
        if len(self.vertices) != small.quiver.num_vertices:
            raise DoublingError("vertex subset size does not match the small algebra")
        vmap = {i + 1: v for i, v in enumerate(self.vertices)}
        images = []
        for idx in range(small.dim):
            trav = small.basis_traversals[idx]
            if not trav:
                images.append(ambient.idempotent(vmap[small.basis_source[idx]]))
                continue
            acc = ambient.idempotent(vmap[small.basis_source[idx]])
            for arrow_idx in trav:
                name = small.quiver.arrows[arrow_idx].name
                acc = ambient.generator(name) * acc
            images.append(acc)
        self.images = tuple(images)
        self._verify()

    def _verify(self):
        small, ambient = self.small, self.ambient
        field = small.field
        rows = []
        for img in self.images:
            vec = [field.zero] * ambient.dim
            for k, c in img.coeffs.items():
                vec[k] = c
            rows.append(vec)
        from .exact_linalg import _rref_rows

        if len(_rref_rows(field, [list(r) for r in rows], ambient.dim)) != small.dim:
            raise DoublingError("generator correspondence is not injective")
        for i in range(small.dim):
            for j in range(small.dim):
                prod = small.mult_dicts({i: field.one}, {j: field.one})
                lhs = ambient.zero()
                for k, c in prod.items():
                    lhs = lhs + c * self.images[k]
                rhs = self.images[i] * self.images[j]
                if lhs != rhs:
                    raise DoublingError("generator correspondence is not multiplicative")

    def element(self, x: AlgebraElement) -> AlgebraElement:
        out = self.ambient.zero()
        for i, c in x.coeffs.items():
            out = out + c * self.images[i]
        return out

    def complex(self, X: ProjComplex) -> ProjComplex:
        """Fully faithful lift of a complex along the embedding."""
        if X.algebra is not self.small:
            raise DoublingError("complex does not live over the corner algebra")
        vmap = {i + 1: v for i, v in enumerate(self.vertices)}
        terms = {d: tuple(vmap[v] for v in vs) for d, vs in X.terms.items()}
        diffs = {d: [[self.element(e) for e in row] for row in X.diff(d)] for d in X.diffs}
        return ProjComplex(self.ambient, terms, diffs)


def auslander_inside_preprojective(n: int, field=QQ):
    """(Lambda_n, Pi_{2n-1}, embedding) with the standard generator alignment."""
    small = build_auslander(n, field)
    ambient = build_preprojective(2 * n - 1, field) if n > 1 else build_preprojective(1, field)
    emb = CornerEmbedding(small, ambient)
    return small, ambient, emb


def verify_corner_isomorphism(n: int, field=QQ) -> bool:
    """The corner on the low vertices is isomorphic to the rank-n Auslander
    algebra via the generator correspondence (dimension, Cartan data and
    structure constants all agree)."""
    small = build_auslander(n, field)
    ambient = build_preprojective(2 * n - 1, field)
    corner = corner_algebra(ambient, range(1, n + 1))
    if corner.dim != small.dim or corner.cartan_matrix() != small.cartan_matrix():
        return False
    CornerEmbedding(small, corner)  # raises when not an isomorphism onto its image
    return True


class NakayamaData:
    """The Nakayama functor on projectives over a mirror-symmetric algebra.

    Stores, for every basis Hom component, the image under the functor; the
    action is an exact algebra map composed with the vertex involution, so
    functoriality holds on the nose and the square is the identity up to an
    inner twist.
    """

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        m = algebra.quiver.num_vertices
        self.involution = {i: m + 1 - i for i in range(1, m + 1)}
        self._socle_functionals = {}
        for v in range(1, m + 1):
            self._socle_functionals[v] = self._find_functional(v)
        self._image_cache = {}
        self._verify()

    # the right-module isomorphism e_{nu(i)} A -> D(A e_i) is determined by a
    # functional on e_{nu(i)} A e_i making the multiplication pairing perfect
    def _find_functional(self, v: int):
        A = self.algebra
        field = A.field
        nu_v = self.involution[v]
        piece = A.piece(v, nu_v)  # paths v -> nu(v), the support of the functional
        if not piece:
            raise DoublingError("no Hom component to carry the duality functional")
        rows_idx = [i for i in range(A.dim) if A.basis_target[i] == nu_v]  # e_{nu v} A
        cols_idx = [i for i in range(A.dim) if A.basis_source[i] == v]  # A e_v
        # prefer the longest path's dual; fall back to small seeded combinations
        candidates = []
        for b in sorted(piece, key=lambda b: -len(A.basis_traversals[b])):
            candidates.append({b: field.one})
        import random

        rng = random.Random(1009 + v)
        for _ in range(30):
            candidates.append({b: field.of_int(rng.randint(-3, 3)) for b in piece})
        for lam in candidates:
            lam = {b: c for b, c in lam.items() if c}
            if not lam:
                continue
            gram = []
            for x in rows_idx:
                row = []
                for mcol in cols_idx:
                    prod = A.mult_dicts({x: field.one}, {mcol: field.one})
                    val = field.zero
                    for b, c in prod.items():
                        lc = lam.get(b)
                        if lc:
                            val = val + c * lc
                    row.append(val)
                gram.append(row)
            if len(rows_idx) == len(cols_idx) and mat_inverse(Matrix(field, gram, len(cols_idx))) is not None:
                return lam
        raise DoublingError(f"no perfect pairing functional at vertex {v}")

    def element_image(self, x_idx: int):
        """Image of a basis Hom component under the functor."""
        hit = self._image_cache.get(x_idx)
        if hit is not None:
            return hit
        A = self.algebra
        field = A.field
        i = A.basis_source[x_idx]
        j = A.basis_target[x_idx]
        ni, nj = self.involution[i], self.involution[j]
        lam_i = self._socle_functionals[i]
        lam_j = self._socle_functionals[j]
        # solve lam_j(y * m) = lam_i(m * x) over m in A e_j for y in e_{nu j} A e_{nu i}
        unknowns = A.piece(ni, nj)
        cols_m = [k for k in range(A.dim) if A.basis_source[k] == j]
        mat = []
        rhs = []
        for m in cols_m:
            row = []
            for y in unknowns:
                prod = A.mult_dicts({y: field.one}, {m: field.one})
                val = field.zero
                for b, c in prod.items():
                    lc = lam_j.get(b)
                    if lc:
                        val = val + c * lc
                row.append(val)
            mat.append(row)
            prod = A.mult_dicts({m: field.one}, {x_idx: field.one})
            val = field.zero
            for b, c in prod.items():
                lc = lam_i.get(b)
                if lc:
                    val = val + c * lc
            rhs.append(val)
        sol = solve(Matrix(field, mat, len(unknowns)), Matrix.column(field, rhs))
        if sol is None:
            raise DoublingError("Nakayama image solve failed")
        out = {unknowns[k]: sol.rows[k][0] for k in range(len(unknowns)) if sol.rows[k][0]}
        # uniqueness holds because the pairing is perfect
        elem = AlgebraElement(A, out)
        self._image_cache[x_idx] = elem
        return elem

    def element(self, x: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for i, c in x.coeffs.items():
            out = out + c * self.element_image(i)
        return out

    def _verify(self):
        A = self.algebra
        field = A.field
        for v in range(1, A.quiver.num_vertices + 1):
            img = self.element_image(A.idempotent_index[v])
            if img != A.idempotent(self.involution[v]):
                raise DoublingError("functor does not send idempotents to mirrored idempotents")
        import random

        rng = random.Random(4242)
        pairs = [(i, j) for i in range(A.dim) for j in range(A.dim)]
        if len(pairs) > 600:
            pairs = [pairs[rng.randrange(len(pairs))] for _ in range(600)]
        one = field.one
        for i, j in pairs:
            prod = A.mult_dicts({i: one}, {j: one})
            lhs = A.zero()
            for k, c in prod.items():
                lhs = lhs + c * self.element_image(k)
            rhs = self.element_image(i) * self.element_image(j)
            if lhs != rhs:
                raise DoublingError("functor is not multiplicative on Hom components")

    def complex(self, X: ProjComplex) -> ProjComplex:
        """Apply the functor degreewise: mirror the vertices, map the entries."""
        if X.algebra is not self.algebra:
            raise DoublingError("complex lives over a different algebra")
        terms = {d: tuple(self.involution[v] for v in vs) for d, vs in X.terms.items()}
        diffs = {d: [[self.element(e) for e in row] for row in X.diff(d)] for d in X.diffs}
        return ProjComplex(self.algebra, terms, diffs)


class DoublingContext:
    """Everything needed to push labeled tilting objects into the doubled world."""

    def __init__(self, n: int, field=QQ):
        self.n = n
        self.small, self.ambient, self.embedding = auslander_inside_preprojective(n, field)
        self.nakayama = NakayamaData(self.ambient)

    def ell(self, X: ProjComplex) -> ProjComplex:
        return self.embedding.complex(X)

    def nu(self, X: ProjComplex) -> ProjComplex:
        return self.nakayama.complex(X)

    def phi_summands(self, T: SiltingObject):
        """Basic representative of ell(T) + nu(ell(T)), as a summand list.

        Exactly 2n-1 pairwise non-isomorphic summands must survive and the
        result must have no self-extensions in either shift direction; both
        are hard errors otherwise.
        """
        if T.algebra is not self.small:
            raise DoublingError("object does not live over the small algebra")
        images = [intern_summand(minimize(self.ell(U))) for U in T.summands]
        doubled = [intern_summand(minimize(self.nu(U))) for U in images]
        basic = []
        for cand in images + doubled:
            if not any(existing is cand for existing in basic):
                basic.append(cand)
        if len(basic) != 2 * self.n - 1:
            raise DoublingError(
                f"doubling produced {len(basic)} summands, expected {2 * self.n - 1}"
            )
        for U in basic:
            for V in basic:
                for k in hom_window(U, V):
                    if k != 0 and hom_dim(U, V, k) != 0:
                        raise DoublingError("doubled object has a nonvanishing shifted Hom")
        return basic

    def phi(self, T: SiltingObject) -> ProjComplex:
        from .complexes import direct_sum

        return direct_sum(self.phi_summands(T))

    def phi_object(self, T: SiltingObject) -> SiltingObject:
        return SiltingObject(self.ambient, self.phi_summands(T), provenance="doubled", check=False)


def nu_stable(ctx: DoublingContext, summands) -> bool:
    """add of the summand list is stable under the Nakayama functor."""
    mapped = [intern_summand(minimize(ctx.nu(U))) for U in summands]
    return sorted(id(u) for u in mapped) == sorted(id(u) for u in summands)
