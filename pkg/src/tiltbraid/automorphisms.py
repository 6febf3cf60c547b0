"""Vertex-fixing outer automorphisms of the Auslander algebra.

The group materialized here fixes every idempotent and every upward arrow and
rescales the downward arrows through the loop class: the downward arrow at
step i goes to the sum over j of s_j (loop at vertex i)^{j-1} times that
arrow.  Composition corresponds to substitution of truncated power series:
build(s) after build(t) carries the series t(s(T)) -- the outer morphism's
series is substituted innermost.  That direction is pinned by a fixture.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraElement, gamma_element
from .complexes import ProjComplex
from .exact_linalg import Matrix, inverse as mat_inverse
from .mutation import SiltingObject


class AutomorphismError(ValueError):
    pass


class AlgebraMorphism:
    """Vertex-fixing algebra endomorphism, stored as images of the generators
    plus the induced (invertible) linear map on the basis."""

    def __init__(self, algebra: Algebra, arrow_images: dict):
        self.algebra = algebra
        self.arrow_images = dict(arrow_images)
        for a in algebra.quiver.arrows:
            if a.name not in self.arrow_images:
                raise AutomorphismError(f"missing image for arrow {a.name}")
        images = []
        for idx in range(algebra.dim):
            trav = algebra.basis_traversals[idx]
            acc = algebra.idempotent(algebra.basis_source[idx])
            for arrow_idx in trav:
                name = algebra.quiver.arrows[arrow_idx].name
                acc = self.arrow_images[name] * acc
            images.append(acc)
        self.images = tuple(images)
        self._verify()

    def _verify(self):
        A = self.algebra
        field = A.field
        rows = []
        for img in self.images:
            vec = [field.zero] * A.dim
            for k, c in img.coeffs.items():
                vec[k] = c
            rows.append(vec)
        self._matrix = Matrix(field, rows, A.dim).transpose()
        if mat_inverse(self._matrix) is None:
            raise AutomorphismError("induced linear map is not invertible")
        one = field.one
        for i in range(A.dim):
            for j in range(A.dim):
                prod = A.mult_dicts({i: one}, {j: one})
                lhs = A.zero()
                for k, c in prod.items():
                    lhs = lhs + c * self.images[k]
                if lhs != self.images[i] * self.images[j]:
                    raise AutomorphismError("arrow images do not preserve the relations")

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for i, c in x.coeffs.items():
            out = out + c * self.images[i]
        return out

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self after other."""
        if self.algebra is not other.algebra:
            raise AutomorphismError("morphisms over different algebras")
        return AlgebraMorphism(
            self.algebra,
            {name: self.apply(img) for name, img in other.arrow_images.items()},
        )

    def is_identity(self) -> bool:
        return all(
            self.images[i] == self.algebra.basis_element(i) for i in range(self.algebra.dim)
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMorphism)
            and self.algebra is other.algebra
            and self.images == other.images
        )

    def __hash__(self):
        return id(self)


def build_out_automorphism(algebra_or_n, coefficients, field=None) -> AlgebraMorphism:
    """The automorphism with e_i and a_i fixed and b_i mapped through the loop.

    `coefficients` is (s_1, ..., s_{n-1}) with s_1 invertible; b_i is sent to
    the sum over j of s_j (b_i a_i)^{j-1} b_i, where b_i a_i is the loop at
    vertex i+1 traversed downward first.
    """
    if isinstance(algebra_or_n, Algebra):
        algebra = algebra_or_n
    else:
        from .algebra import build_auslander
        from .exact_linalg import QQ

        algebra = build_auslander(algebra_or_n, field or QQ)
    n = algebra.quiver.num_vertices
    coeffs = list(coefficients)
    if n >= 2 and len(coeffs) != n - 1:
        raise AutomorphismError(f"need {n - 1} coefficients, got {len(coeffs)}")
    f = algebra.field
    coeffs = [c if not isinstance(c, int) else f.of_int(c) for c in coeffs]
    if n >= 2 and not coeffs[0]:
        raise AutomorphismError("leading coefficient must be invertible")
    arrow_images = {}
    for i in range(1, n):
        arrow_images[f"a{i}"] = algebra.generator(f"a{i}")
    for i in range(1, n):
        b = algebra.generator(f"b{i}")
        loop = b * algebra.generator(f"a{i}")  # the loop at vertex i, upward first
        img = algebra.zero()
        power = algebra.idempotent(i)
        for s in coeffs:
            img = img + s * (power * b)
            power = power * loop
        arrow_images[f"b{i}"] = img
    return AlgebraMorphism(algebra, arrow_images)


def compose_series(s, t, n: int, field):
    """Coefficients of g(h(T)) mod T^n for g = sum s_j T^j, h = sum t_j T^j
    (both without constant term, indices starting at 1)."""
    s = [c if not isinstance(c, int) else field.of_int(c) for c in s]
    t = [c if not isinstance(c, int) else field.of_int(c) for c in t]
    h = [field.zero] + list(t)  # degree-indexed, h[0] = 0
    h = h[:n] + [field.zero] * max(0, n - len(h))
    out = [field.zero] * n
    power = [field.zero] * n
    power[0] = field.one  # h^0
    for j, sj in enumerate(s, start=1):
        # power currently holds h^{j-1}; bump then add s_j h^j
        nxt = [field.zero] * n
        for a in range(n):
            if not power[a]:
                continue
            for b in range(n - a):
                if h[b]:
                    nxt[a + b] = nxt[a + b] + power[a] * h[b]
        power = nxt
        if sj:
            for k in range(n):
                if power[k]:
                    out[k] = out[k] + sj * power[k]
    return out[1:]  # coefficients of T^1..T^{n-1}


def coefficients_of(morphism: AlgebraMorphism):
    """Recover (s_1, ..., s_{n-1}) from a vertex-fixing morphism in the family.

    Read off the downward arrow at the top step, where all powers of the loop
    survive, by solving the (independent) linear system over the loop-power
    paths.
    """
    A = morphism.algebra
    n = A.quiver.num_vertices
    if n == 1:
        return []
    field = A.field
    top = n - 1
    b = A.generator(f"b{top}")
    loop = b * A.generator(f"a{top}")
    img = morphism.apply(b)
    piece = A.piece(n, top)
    pos = {k: r for r, k in enumerate(piece)}
    cols = []
    power = A.idempotent(top)
    for _ in range(1, n):
        path = power * b
        col = [field.zero] * len(piece)
        for k, c in path.coeffs.items():
            col[pos[k]] = c
        cols.append(col)
        power = power * loop
    rhs = [field.zero] * len(piece)
    for k, c in img.coeffs.items():
        rhs[pos[k]] = c
    from .exact_linalg import solve

    mat = Matrix(field, [[cols[j][r] for j in range(len(cols))] for r in range(len(piece))], len(cols))
    sol = solve(mat, Matrix.column(field, rhs))
    if sol is None:
        raise AutomorphismError("morphism is not in the loop-rescaling family")
    return [sol.rows[j][0] for j in range(len(cols))]


def twist_complex_one(X: ProjComplex, g: AlgebraMorphism) -> ProjComplex:
    """Apply the morphism to every differential entry."""
    if X.algebra is not g.algebra:
        raise AutomorphismError("complex and morphism live over different algebras")
    return ProjComplex(
        X.algebra,
        dict(X.terms),
        {d: [[g.apply(e) for e in row] for row in X.diff(d)] for d in X.diffs},
    )


def twist_complex(T: SiltingObject, g: AlgebraMorphism) -> SiltingObject:
    """Entrywise twist of a labeled silting object; isomorphic to the input."""
    return SiltingObject(
        T.algebra,
        tuple(twist_complex_one(U, g) for U in T.summands),
        provenance=T.provenance,
        check=False,
    )


def gamma_image_matches_series(morphism: AlgebraMorphism) -> bool:
    """The loop class transforms by the same truncated series as the arrows."""
    A = morphism.algebra
    field = A.field
    gamma = gamma_element(A)
    coeffs = coefficients_of(morphism)
    expected = A.zero()
    power = gamma
    for s in coeffs:
        expected = expected + s * power
        power = power * gamma
    return morphism.apply(gamma) == expected
