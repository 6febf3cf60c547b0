"""Bounded complexes of indecomposable projectives and their homotopy category.

Conventions, fixed once and exercised by fixtures:
  * differentials raise degree by one; a complex stores, for each degree d,
    a matrix whose (t, s) entry is a map from the s-th summand in degree d
    to the t-th summand in degree d+1, i.e. an element of e_{v_t} A e_{v_s};
  * Hom(e_v A, e_w A) = e_w A e_v with composition given by multiplication;
  * the shift satisfies X[m]^d = X^{d+m} with d_{X[m]} = (-1)^m d_X;
  * a cone places its source one degree below its target.

Hom spaces modulo homotopy are cohomologies of the Hom complex, computed by
two exact nullspace problems over the scalar field.
"""

from __future__ import annotations

import random

from .algebra import Algebra, AlgebraElement
from .exact_linalg import (
    Matrix,
    _rref_rows,
    nullspace,
    poly_divmod,
    poly_mul,
    poly_trim,
    poly_xgcd,
    solve,
)


class ComplexError(ValueError):
    pass


class DecompositionDiagnostic(RuntimeError):
    """Raised when a split is required but the endomorphism ring will not split."""


# -- matrices of algebra elements --------------------------------------------


def _zero_mat(algebra, nrows, ncols):
    z = algebra.zero()
    return [[z for _ in range(ncols)] for _ in range(nrows)]


def _mat_mult(algebra, A, B):
    if not A or not B:
        return []
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = {}
            for t in range(m):
                a = A[i][t]
                b = B[t][j]
                if a.coeffs and b.coeffs:
                    prod = algebra.mult_dicts(a.coeffs, b.coeffs)
                    for key, c in prod.items():
                        s = acc.get(key)
                        acc[key] = c if s is None else s + c
            row.append(AlgebraElement(algebra, acc))
        out.append(row)
    return out


def _mat_add(A, B, sign=1):
    return [[a + b if sign > 0 else a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_is_zero(A):
    return all(e.is_zero() for row in A for e in row)


def _mat_neg(A):
    return [[-e for e in row] for row in A]


class ProjComplex:
    """Bounded complex of projectives, one vertex index per summand per degree.

    Instances are immutable; identity is object identity (summand sharing and
    the per-algebra caches rely on it).
    """

    __slots__ = ("algebra", "terms", "diffs", "lo", "hi", "_minimal", "_sig")

    def __init__(self, algebra: Algebra, terms, diffs, _trusted=False):
        self.algebra = algebra
        cleaned = {d: tuple(vs) for d, vs in terms.items() if len(vs)}
        self.terms = cleaned
        degs = sorted(cleaned)
        self.lo = degs[0] if degs else 0
        self.hi = degs[-1] if degs else 0
        dd = {}
        for d, mat in diffs.items():
            if d in cleaned and d + 1 in cleaned and mat and not _mat_is_zero(mat):
                dd[d] = tuple(tuple(row) for row in mat)
        self.diffs = dd
        self._minimal = None
        self._sig = None
        if not _trusted:
            self._validate()

    def _validate(self):
        A = self.algebra
        for d, vs in self.terms.items():
            for v in vs:
                if not (1 <= v <= A.quiver.num_vertices):
                    raise ComplexError(f"vertex {v} out of range")
        for d, mat in self.diffs.items():
            src = self.terms[d]
            tgt = self.terms[d + 1]
            if len(mat) != len(tgt) or any(len(row) != len(src) for row in mat):
                raise ComplexError(f"differential shape mismatch in degree {d}")
            for t, row in enumerate(mat):
                for s, e in enumerate(row):
                    if e.algebra is not A:
                        raise ComplexError("differential entry from a foreign algebra")
                    piece = set(A.piece(src[s], tgt[t]))
                    if any(i not in piece for i in e.coeffs):
                        raise ComplexError("differential entry not graded correctly")
        for d in self.diffs:
            if d + 1 in self.diffs:
                comp = _mat_mult(A, [list(r) for r in self.diffs[d + 1]], [list(r) for r in self.diffs[d]])
                if not _mat_is_zero(comp):
                    raise ComplexError(f"d o d != 0 between degrees {d} and {d + 2}")

    def term(self, d):
        return self.terms.get(d, ())

    def diff(self, d):
        mat = self.diffs.get(d)
        if mat is not None:
            return [list(r) for r in mat]
        return _zero_mat(self.algebra, len(self.term(d + 1)), len(self.term(d)))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted(self.terms)

    def shift(self, m: int):
        """X[m] with X[m]^d = X^{d+m} and differential scaled by (-1)^m."""
        if m == 0:
            return self
        key = (id(self), m)
        cached = self.algebra.shift_cache.get(key)
        if cached is not None:
            return cached[1]
        terms = {d - m: vs for d, vs in self.terms.items()}
        sign = 1 if m % 2 == 0 else -1
        diffs = {}
        for d, mat in self.diffs.items():
            diffs[d - m] = [[e if sign > 0 else -e for e in row] for row in mat]
        out = ProjComplex(self.algebra, terms, diffs, _trusted=True)
        out._minimal = self._minimal
        self.algebra.shift_cache[key] = (self, out)
        return out

    def signature(self):
        if self._sig is None:
            self._sig = tuple((d, tuple(sorted(vs))) for d, vs in sorted(self.terms.items()))
        return self._sig

    def span(self):
        return self.hi - self.lo if self.terms else 0

    def total_summands(self):
        return sum(len(vs) for vs in self.terms.values())

    def __repr__(self):
        if self.is_zero():
            return "ProjComplex(0)"
        parts = [f"{d}:{list(vs)}" for d, vs in sorted(self.terms.items())]
        return f"ProjComplex({self.algebra.name}; {', '.join(parts)})"


def stalk(algebra: Algebra, vertex: int, degree: int = 0) -> ProjComplex:
    """The projective at `vertex` as a one-term complex."""
    return ProjComplex(algebra, {degree: (vertex,)}, {})


def zero_complex(algebra: Algebra) -> ProjComplex:
    return ProjComplex(algebra, {}, {})


def free_complex(algebra: Algebra) -> ProjComplex:
    """The regular representation as a stalk complex in degree zero."""
    return ProjComplex(algebra, {0: tuple(range(1, algebra.quiver.num_vertices + 1))}, {})


def direct_sum(complexes) -> ProjComplex:
    """Direct sum; summand s occupies a contiguous index block in each degree."""
    complexes = list(complexes)
    if not complexes:
        raise ComplexError("direct_sum of an empty family needs an algebra")
    A = complexes[0].algebra
    for X in complexes:
        if X.algebra is not A:
            raise ComplexError("direct_sum across different algebras")
    degrees = sorted({d for X in complexes for d in X.terms})
    terms = {}
    for d in degrees:
        terms[d] = tuple(v for X in complexes for v in X.term(d))
    diffs = {}
    for d in degrees:
        if d + 1 not in terms:
            continue
        nr, nc = len(terms[d + 1]), len(terms[d])
        if nr == 0 or nc == 0:
            continue
        mat = _zero_mat(A, nr, nc)
        r0 = c0 = 0
        for X in complexes:
            rows = len(X.term(d + 1))
            cols = len(X.term(d))
            sub = X.diffs.get(d)
            if sub is not None:
                for t in range(rows):
                    for s in range(cols):
                        mat[r0 + t][c0 + s] = sub[t][s]
            r0 += rows
            c0 += cols
        diffs[d] = mat
    return ProjComplex(A, terms, diffs, _trusted=True)


def sum_offsets(complexes, d):
    """Starting index of each summand's block in degree d of the direct sum."""
    offs = []
    at = 0
    for X in complexes:
        offs.append(at)
        at += len(X.term(d))
    return offs


class ChainMap:
    """Degreewise matrices realizing a map X -> Y[shift].

    The strict chain condition (with the shift sign) is validated on
    construction; homotopy classes are handled by HomSpace.
    """

    __slots__ = ("source", "target", "shift", "mats")

    def __init__(self, source: ProjComplex, target: ProjComplex, shift: int, mats, check=True):
        if source.algebra is not target.algebra:
            raise ComplexError("chain map across different algebras")
        self.source = source
        self.target = target
        self.shift = shift
        cleaned = {}
        for d, mat in mats.items():
            nr, nc = len(target.term(d + shift)), len(source.term(d))
            if nr and nc and not _mat_is_zero(mat):
                if len(mat) != nr or any(len(r) != nc for r in mat):
                    raise ComplexError(f"chain map shape mismatch in degree {d}")
                cleaned[d] = tuple(tuple(r) for r in mat)
        self.mats = cleaned
        if check:
            self._validate()

    def _validate(self):
        A = self.source.algebra
        k = self.shift
        sign = 1 if k % 2 == 0 else -1
        for d in set(self.source.terms) | {d - 1 for d in self.source.terms}:
            left = _mat_mult(A, self.mat(d + 1), self.source.diff(d))
            right = _mat_mult(A, self.target.diff(d + k), self.mat(d))
            if sign < 0:
                right = _mat_neg(right)
            if not _mat_is_zero(_mat_add(left, right, sign=-1)):
                raise ComplexError(f"chain condition fails at degree {d}")

    def mat(self, d):
        m = self.mats.get(d)
        if m is not None:
            return [list(r) for r in m]
        return _zero_mat(self.source.algebra, len(self.target.term(d + self.shift)), len(self.source.term(d)))

    def is_zero(self):
        return not self.mats

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other, for other: W -> X[j] and self: X -> Y[k]; result W -> Y[j+k]."""
        if other.target is not self.source:
            raise ComplexError("composition of non-composable chain maps")
        A = self.source.algebra
        j, k = other.shift, self.shift
        mats = {}
        for d in other.mats:
            left = self.mats.get(d + j)
            if left is None:
                continue
            prod = _mat_mult(A, [list(r) for r in left], other.mat(d))
            if not _mat_is_zero(prod):
                mats[d] = prod
        return ChainMap(other.source, self.target, j + k, mats, check=False)

    def add(self, other: "ChainMap") -> "ChainMap":
        mats = {}
        for d in set(self.mats) | set(other.mats):
            mats[d] = _mat_add(self.mat(d), other.mat(d))
        return ChainMap(self.source, self.target, self.shift, mats, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(
            self.source, self.target, self.shift,
            {d: [[e * c for e in row] for row in self.mat(d)] for d in self.mats},
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source is other.source
            and self.target is other.target
            and self.shift == other.shift
            and self.mats == other.mats
        )

    def __hash__(self):
        return id(self)


def identity_map(X: ProjComplex) -> ChainMap:
    A = X.algebra
    mats = {}
    for d, vs in X.terms.items():
        mat = _zero_mat(A, len(vs), len(vs))
        for i, v in enumerate(vs):
            mat[i][i] = A.idempotent(v)
        mats[d] = mat
    return ChainMap(X, X, 0, mats, check=False)


def zero_map(X: ProjComplex, Y: ProjComplex, shift: int = 0) -> ChainMap:
    return ChainMap(X, Y, shift, {}, check=False)


# -- Hom spaces modulo homotopy ----------------------------------------------


class HomSpace:
    """Hom_{K^b}(X, Y[k]): chain maps modulo the null-homotopic ones.

    Carries a basis of representing chain maps and an exact reduction of any
    cocycle onto that basis (used for composition in endomorphism algebras).
    """

    def __init__(self, X: ProjComplex, Y: ProjComplex, k: int):
        self.source = X
        self.target = Y
        self.k = k
        A = X.algebra
        field = A.field
        self.field = field
        self.coords = self._coords(k)
        self._pos = {c: i for i, c in enumerate(self.coords)}
        coords_up = self._coords(k + 1)
        coords_dn = self._coords(k - 1)
        d_here = self._diff_columns(k, self.coords, {c: i for i, c in enumerate(coords_up)})
        d_prev = self._diff_columns(k - 1, coords_dn, self._pos)

        n = len(self.coords)
        cocycle_rows = [list(col) for col in _cols_to_rows(field, d_here, n, len(coords_up))]
        kernel = nullspace(Matrix(field, cocycle_rows, n)) if n else []
        bound_vecs = []
        for col in d_prev:
            v = [field.zero] * n
            for idx, c in col.items():
                v[idx] = c
            bound_vecs.append(v)
        bound_rows = [list(v) for v in bound_vecs]
        if bound_rows:
            _rref_rows(field, bound_rows, n)
        bound_basis = [row for row in bound_rows if any(row)]
        self.boundary_basis = bound_basis
        reps = []
        work = [list(v) for v in bound_basis]
        rank = len(bound_basis)
        for vec in kernel:
            cand = [vec.rows[i][0] for i in range(n)]
            trial = work + [list(cand)]
            r = len(_rref_rows(field, [list(t) for t in trial], n)) if n else 0
            if r > rank:
                reps.append(cand)
                work.append(list(cand))
                rank = r
        self.rep_vectors = reps
        self.dim = len(reps)
        self._solve_mat = None
        self._basis_maps = None

    def _coords(self, j):
        X, Y = self.source, self.target
        A = X.algebra
        out = []
        for d in sorted(X.terms):
            tgt = Y.term(d + j)
            if not tgt:
                continue
            src = X.term(d)
            for t, w in enumerate(tgt):
                for s, v in enumerate(src):
                    for b in A.piece(v, w):
                        out.append((d, t, s, b))
        return out

    def _diff_columns(self, j, coords_in, pos_out):
        """Columns of the Hom-complex differential C^j -> C^{j+1}."""
        X, Y = self.source, self.target
        A = X.algebra
        field = A.field
        one = field.one
        sign = one if j % 2 == 0 else -one
        cols = []
        for (d, t, s, b) in coords_in:
            col = {}
            dy = Y.diffs.get(d + j)
            if dy is not None:
                for u in range(len(Y.term(d + j + 1))):
                    entry = dy[u][t]
                    if entry.coeffs:
                        prod = A.mult_dicts(entry.coeffs, {b: one})
                        for bb, c in prod.items():
                            key = pos_out.get((d, u, s, bb))
                            if key is not None:
                                col[key] = col.get(key, field.zero) + c
            dx = X.diffs.get(d - 1)
            if dx is not None:
                for s2 in range(len(X.term(d - 1))):
                    entry = dx[s][s2]
                    if entry.coeffs:
                        prod = A.mult_dicts({b: one}, entry.coeffs)
                        for bb, c in prod.items():
                            key = pos_out.get((d - 1, t, s2, bb))
                            if key is not None:
                                col[key] = col.get(key, field.zero) - sign * c
            cols.append(col)
        return cols

    # -- representatives and reduction --------------------------------

    def basis_maps(self):
        if self._basis_maps is None:
            self._basis_maps = [self._vector_to_map(v) for v in self.rep_vectors]
        return self._basis_maps

    def _vector_to_map(self, vec) -> ChainMap:
        A = self.source.algebra
        mats = {}
        for i, (d, t, s, b) in enumerate(self.coords):
            c = vec[i]
            if not c:
                continue
            mat = mats.get(d)
            if mat is None:
                mat = _zero_mat(A, len(self.target.term(d + self.k)), len(self.source.term(d)))
                mats[d] = mat
            mat[t][s] = mat[t][s] + AlgebraElement(A, {b: c})
        return ChainMap(self.source, self.target, self.k, mats, check=False)

    def map_to_vector(self, f: ChainMap):
        vec = [self.field.zero] * len(self.coords)
        for d in f.mats:
            mat = f.mats[d]
            for t, row in enumerate(mat):
                for s, e in enumerate(row):
                    for b, c in e.coeffs.items():
                        idx = self._pos.get((d, t, s, b))
                        if idx is None:
                            if c:
                                raise ComplexError("chain map does not live in this Hom space")
                        else:
                            vec[idx] = c
        return vec

    def reduce(self, f) -> list:
        """Coefficients of the class of `f` on the representative basis."""
        vec = self.map_to_vector(f) if isinstance(f, ChainMap) else list(f)
        n = len(self.coords)
        if self.dim == 0:
            return []
        if self._solve_mat is None:
            cols = [list(v) for v in self.rep_vectors] + [list(v) for v in self.boundary_basis]
            self._solve_mat = Matrix(self.field, _transpose(self.field, cols, n), len(cols))
        x = solve(self._solve_mat, Matrix.column(self.field, vec))
        if x is None:
            raise ComplexError("vector is not a cocycle of the Hom complex")
        return [x.rows[i][0] for i in range(self.dim)]

    def class_from_coeffs(self, coeffs) -> ChainMap:
        A = self.source.algebra
        f = zero_map(self.source, self.target, self.k)
        for c, g in zip(coeffs, self.basis_maps()):
            if c:
                f = f.add(g.scale(c))
        return f


def _cols_to_rows(field, cols, ncols_in, nrows_out):
    rows = [[field.zero] * ncols_in for _ in range(nrows_out)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    return rows


def _transpose(field, vectors, dim):
    return [[vec[i] for vec in vectors] for i in range(dim)]


def hom_space(X: ProjComplex, Y: ProjComplex, k: int = 0) -> HomSpace:
    if X.algebra is not Y.algebra:
        raise ComplexError("Hom across different algebras")
    cache = X.algebra.hom_cache
    key = (id(X), id(Y), k)
    hit = cache.get(key)
    if hit is not None:
        return hit[2]
    hs = HomSpace(X, Y, k)
    cache[key] = (X, Y, hs)
    return hs


def hom_dim(X, Y, k=0) -> int:
    return hom_space(X, Y, k).dim


def hom_window(X: ProjComplex, Y: ProjComplex):
    """Shifts k outside of which Hom(X, Y[k]) vanishes for degree reasons."""
    if X.is_zero() or Y.is_zero():
        return range(0)
    return range(Y.lo - X.hi, Y.hi - X.lo + 1)


def positive_homs_vanish(X: ProjComplex, Y: ProjComplex) -> bool:
    """Hom(X, Y[k]) = 0 for all k > 0; cached per object pair."""
    A = X.algebra
    key = (id(X), id(Y))
    hit = A.vanish_cache.get(key)
    if hit is not None:
        return hit[2]
    ok = True
    for k in hom_window(X, Y):
        if k > 0 and hom_dim(X, Y, k) != 0:
            ok = False
            break
    A.vanish_cache[key] = (X, Y, ok)
    return ok


# -- cones and minimization ---------------------------------------------------


def cone(f: ChainMap) -> ProjComplex:
    """Mapping cone of a strict shift-0 chain map, returned in minimal form."""
    if f.shift != 0:
        raise ComplexError("cone needs a chain map of shift zero")
    X, Y = f.source, f.target
    A = X.algebra
    degrees = sorted(set(d - 1 for d in X.terms) | set(Y.terms))
    terms = {}
    for d in degrees:
        terms[d] = tuple(X.term(d + 1)) + tuple(Y.term(d))
    diffs = {}
    for d in degrees:
        if d + 1 not in terms:
            continue
        nx1, ny = len(X.term(d + 1)), len(Y.term(d))
        nx2, ny1 = len(X.term(d + 2)), len(Y.term(d + 1))
        nr, nc = nx2 + ny1, nx1 + ny
        if nr == 0 or nc == 0:
            continue
        mat = _zero_mat(A, nr, nc)
        dx = X.diffs.get(d + 1)
        if dx is not None:
            for t in range(nx2):
                for s in range(nx1):
                    mat[t][s] = -dx[t][s]
        fm = f.mats.get(d + 1)
        if fm is not None:
            for t in range(ny1):
                for s in range(nx1):
                    mat[nx2 + t][s] = fm[t][s]
        dy = Y.diffs.get(d)
        if dy is not None:
            for t in range(ny1):
                for s in range(ny):
                    mat[nx2 + t][nx1 + s] = dy[t][s]
        diffs[d] = mat
    return minimize(ProjComplex(A, terms, diffs, _trusted=True))


def _find_unit_entry(algebra, terms, diffs):
    for d in sorted(diffs):
        mat = diffs[d]
        src = terms[d]
        tgt = terms[d + 1]
        for t in range(len(tgt)):
            for s in range(len(src)):
                if src[s] != tgt[t]:
                    continue
                e = mat[t][s]
                idem = algebra.idempotent_index[src[s]]
                if e.coeffs.get(idem):
                    return d, t, s
    return None


def minimize(X: ProjComplex) -> ProjComplex:
    """Homotopy-equivalent complex with all differential entries in the radical.

    Gaussian elimination on the differentials: any entry that is a unit of a
    vertex corner lets the contractible pair (source summand, target summand)
    split off; the remaining differential picks up the standard correction.
    """
    if X._minimal:
        return X
    A = X.algebra
    terms = {d: list(vs) for d, vs in X.terms.items()}
    diffs = {d: [list(r) for r in X.diff(d)] for d in X.diffs}
    while True:
        hit = _find_unit_entry(A, terms, diffs)
        if hit is None:
            break
        d, t, s = hit
        v = terms[d][s]
        mat = diffs[d]
        u_inv = A.invert_local(mat[t][s].coeffs, v)
        u_inv_elem = AlgebraElement(A, u_inv)
        rows = [i for i in range(len(terms[d + 1])) if i != t]
        cols = [j for j in range(len(terms[d])) if j != s]
        new_mat = []
        for i in rows:
            gamma_u = mat[i][s] * u_inv_elem
            new_row = []
            for j in cols:
                new_row.append(mat[i][j] - gamma_u * mat[t][j])
            new_mat.append(new_row)
        if rows and cols:
            diffs[d] = new_mat
        else:
            diffs.pop(d, None)
        if d - 1 in diffs:
            kept = [diffs[d - 1][j] for j in cols]
            if kept:
                diffs[d - 1] = kept
            else:
                diffs.pop(d - 1)
        if d + 1 in diffs:
            kept = [[row[i] for i in rows] for row in diffs[d + 1]]
            if kept and kept[0]:
                diffs[d + 1] = kept
            else:
                diffs.pop(d + 1)
        terms[d].pop(s)
        terms[d + 1].pop(t)
        if not terms[d]:
            terms.pop(d)
            diffs.pop(d, None)
        if d + 1 in terms and not terms[d + 1]:
            terms.pop(d + 1)
            diffs.pop(d + 1, None)
    out = ProjComplex(A, terms, diffs)
    out._minimal = True
    return out


def is_minimal(X: ProjComplex) -> bool:
    rad = set(X.algebra.radical_indices)
    return all(set(e.coeffs) <= rad for mat in X.diffs.values() for row in mat for e in row)


# -- endomorphism algebras and decomposition ----------------------------------


class CompositionAlgebra:
    """The algebra End(U_1 + ... + U_r) in K^b, with block structure by summand.

    Basis elements are homotopy classes of maps U_j -> U_i; the multiplication
    table, unit, trace-form radical and split semisimple data are all exact.
    """

    def __init__(self, objects):
        objects = list(objects)
        self.objects = objects
        A = objects[0].algebra
        self.algebra = A
        self.field = A.field
        self.blocks = {}
        self.basis = []
        for i, U in enumerate(objects):
            for j, V in enumerate(objects):
                hs = hom_space(V, U, 0)
                self.blocks[(i, j)] = hs
                for loc in range(hs.dim):
                    self.basis.append((i, j, loc))
        self.dim = len(self.basis)
        self._pos = {b: k for k, b in enumerate(self.basis)}
        self._prod_cache = {}
        self._identity = None
        self._radical_rows = None
        self._semi = None

    def product(self, p: int, q: int) -> dict:
        """Coefficients of basis[p] o basis[q] over the basis."""
        key = (p, q)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        i, j, lp = self.basis[p]
        i2, j2, lq = self.basis[q]
        out = {}
        if j == i2:
            f = self.blocks[(i, j)].basis_maps()[lp]
            g = self.blocks[(i2, j2)].basis_maps()[lq]
            comp = f.compose(g)
            target_block = self.blocks[(i, j2)]
            coeffs = target_block.reduce(comp)
            for loc, c in enumerate(coeffs):
                if c:
                    out[self._pos[(i, j2, loc)]] = c
        self._prod_cache[key] = out
        return out

    def mult_vec(self, x: dict, y: dict) -> dict:
        out = {}
        for p, cp in x.items():
            for q, cq in y.items():
                prod = self.product(p, q)
                if not prod:
                    continue
                c = cp * cq
                for r, cr in prod.items():
                    s = out.get(r)
                    out[r] = c * cr if s is None else s + c * cr
        return {k: v for k, v in out.items() if v}

    def identity_vec(self) -> dict:
        if self._identity is None:
            out = {}
            for i, U in enumerate(self.objects):
                hs = self.blocks[(i, i)]
                for loc, c in enumerate(hs.reduce(identity_map(U))):
                    if c:
                        out[self._pos[(i, i, loc)]] = c
            self._identity = out
        return self._identity

    def radical_rows(self):
        """Coordinate vectors spanning the Jacobson radical (Dickson trace form)."""
        if self._radical_rows is None:
            field = self.field
            if field.characteristic and field.characteristic <= self.dim:
                raise ComplexError("trace-form radical needs characteristic 0 or > dim")
            n = self.dim
            traces = []
            for k in range(n):
                tr = field.zero
                for j in range(n):
                    c = self.product(k, j).get(j)
                    if c:
                        tr = tr + c
                traces.append(tr)
            gram = []
            for i in range(n):
                row = []
                for j in range(n):
                    tr = field.zero
                    for k, c in self.product(i, j).items():
                        tr = tr + c * traces[k]
                    row.append(tr)
                gram.append(row)
            vecs = nullspace(Matrix(field, gram, n))
            self._radical_rows = [[v.rows[i][0] for i in range(n)] for v in vecs]
        return self._radical_rows

    def semisimple_data(self):
        """(chosen basis indices of E lifting a basis of E/rad, reduction solver)."""
        if self._semi is None:
            field = self.field
            n = self.dim
            rad = self.radical_rows()
            work = [list(v) for v in rad]
            rank = len(_rref_rows(field, [list(v) for v in rad], n)) if rad else 0
            chosen = []
            for idx in range(n):
                unit = [field.zero] * n
                unit[idx] = field.one
                trial = work + [unit]
                r = len(_rref_rows(field, [list(t) for t in trial], n))
                if r > rank:
                    chosen.append(idx)
                    work.append(unit)
                    rank = r
            cols = []
            for idx in chosen:
                unit = [field.zero] * n
                unit[idx] = field.one
                cols.append(unit)
            cols.extend(rad)
            mat = Matrix(field, _transpose(field, cols, n), len(cols)) if cols else None
            self._semi = (chosen, mat)
        return self._semi

    def semisimple_dim(self) -> int:
        return self.dim - len(self.radical_rows())

    def project_semisimple(self, vec_dict: dict):
        """Coordinates of the class of `vec` in E/rad over the chosen lift basis."""
        chosen, mat = self.semisimple_data()
        field = self.field
        v = [field.zero] * self.dim
        for k, c in vec_dict.items():
            v[k] = c
        if mat is None:
            return []
        x = solve(mat, Matrix.column(field, v))
        if x is None:
            raise ComplexError("vector outside the span of lift + radical")
        return [x.rows[i][0] for i in range(len(chosen))]

    def in_radical(self, vec_dict: dict) -> bool:
        return all(not c for c in self.project_semisimple(vec_dict))

    def chain_map_of(self, vec_dict: dict) -> ChainMap:
        """Strict chain-map representative of a coordinate vector (single object only)."""
        if len(self.objects) != 1:
            raise ComplexError("chain_map_of is for endomorphism algebras of one object")
        X = self.objects[0]
        hs = self.blocks[(0, 0)]
        coeffs = [self.field.zero] * hs.dim
        for (i, j, loc), pos in self._pos.items():
            c = vec_dict.get(pos)
            if c:
                coeffs[loc] = c
        return hs.class_from_coeffs(coeffs)


class _SemisimpleQuotient:
    """Split-off multiplication table of E/rad, for idempotent hunting."""

    def __init__(self, comp: CompositionAlgebra):
        self.comp = comp
        self.field = comp.field
        chosen, _ = comp.semisimple_data()
        self.chosen = chosen
        self.dim = len(chosen)
        self._table = {}

    def mult(self, x: list, y: list) -> list:
        ex = {self.chosen[i]: c for i, c in enumerate(x) if c}
        ey = {self.chosen[i]: c for i, c in enumerate(y) if c}
        prod = self.comp.mult_vec(ex, ey)
        return self.comp.project_semisimple(prod)

    def identity(self) -> list:
        return self.comp.project_semisimple(self.comp.identity_vec())

    def is_zero(self, x) -> bool:
        return all(not c for c in x)


def _min_poly(S: _SemisimpleQuotient, x: list):
    """Minimal polynomial of x in the quotient algebra, low-degree-first."""
    field = S.field
    n = S.dim
    powers = [S.identity()]
    while True:
        nxt = S.mult(powers[-1], x)
        rows = [list(p) for p in powers]
        piv_rank = len(_rref_rows(field, [list(r) for r in rows], n))
        trial = rows + [list(nxt)]
        r2 = len(_rref_rows(field, [list(t) for t in trial], n))
        if r2 == piv_rank:
            mat = Matrix(field, _transpose(field, powers, n), len(powers))
            sol = solve(mat, Matrix.column(field, nxt))
            coeffs = [-sol.rows[i][0] for i in range(len(powers))] + [field.one]
            return coeffs
        powers.append(nxt)
        if len(powers) > n + 1:
            raise ComplexError("minimal polynomial search runaway")


def _poly_eval_in_quotient(S: _SemisimpleQuotient, poly, x: list):
    out = [S.field.zero] * S.dim
    ident = S.identity()
    for c in reversed(poly):
        out = S.mult(out, x)
        if c:
            out = [a + c * b for a, b in zip(out, ident)]
    return out


def _factor_over_field(field, poly):
    """Irreducible factors (as monic coefficient lists) via sympy."""
    import sympy

    T = sympy.symbols("T")
    if field.characteristic == 0:
        expr = sum(sympy.Rational(c) * T ** i for i, c in enumerate(poly))
        _, factors = sympy.Poly(expr, T, domain="QQ").factor_list()
        out = []
        for f, mult in factors:
            cs = f.all_coeffs()[::-1]
            lead = cs[-1]
            cs = [field.of_fraction(_to_fraction(c / lead)) for c in cs]
            out.append((cs, mult))
        return out
    p = field.characteristic
    expr = sum(sympy.Integer(c.val) * T ** i for i, c in enumerate(poly))
    _, factors = sympy.Poly(expr, T, modulus=p, symmetric=False).factor_list()
    out = []
    for f, mult in factors:
        cs = [field.of_int(int(c)) for c in f.all_coeffs()[::-1]]
        lead = cs[-1]
        cs = [c / lead for c in cs]
        out.append((cs, mult))
    return out


def _to_fraction(x):
    from fractions import Fraction

    return Fraction(int(x.p), int(x.q)) if hasattr(x, "p") else Fraction(x)


def _idempotent_from_coprime_split(S, x, g, h):
    """Nontrivial idempotent from mu_x = g*h with gcd(g, h) = 1."""
    field = S.field
    one_poly, u, _ = poly_xgcd(field, g, h)
    if len(one_poly) != 1:
        return None
    e = _poly_eval_in_quotient(S, poly_mul(field, u, g), x)
    if S.is_zero(e) or e == S.identity():
        return None
    if S.mult(e, e) != e:
        return None
    return e


def _idempotent_from_singular(S: _SemisimpleQuotient, y: list):
    """Right identity of the left ideal S*y, for y a nonzero singular element."""
    field = S.field
    n = S.dim
    gens = []
    for i in range(n):
        unit = [field.zero] * n
        unit[i] = field.one
        gens.append(S.mult(unit, y))
    rows = [list(g) for g in gens]
    _rref_rows(field, rows, n)
    ideal = [row for row in rows if any(row)]
    if not ideal or len(ideal) >= n:
        return None
    cols = []
    rhs = []
    for z in ideal:
        for comp in range(n):
            rhs.append(z[comp])
    for e_idx in range(len(ideal)):
        col = []
        for z in ideal:
            ze = S.mult(z, ideal[e_idx])
            col.extend(ze)
        cols.append(col)
    mat = Matrix(field, _transpose(field, cols, len(rhs)), len(cols))
    x = solve(mat, Matrix.column(field, rhs))
    if x is None:
        return None
    e = [field.zero] * n
    for i in range(len(ideal)):
        c = x.rows[i][0]
        if c:
            e = [a + c * b for a, b in zip(e, ideal[i])]
    if S.is_zero(e) or e == S.identity() or S.mult(e, e) != e:
        return None
    return e


def _find_nontrivial_idempotent(S: _SemisimpleQuotient):
    """Search E/rad for an idempotent other than 0 and 1.

    Minimal polynomials with coprime factor groups give idempotents by CRT;
    non-squarefree ones give nilpotents whose left ideals are split off by a
    right-identity solve.  Returns None when everything looks like a division
    algebra (the caller reports the diagnostic).
    """
    field = S.field
    n = S.dim
    candidates = []
    for i in range(n):
        unit = [field.zero] * n
        unit[i] = field.one
        candidates.append(unit)
    for i in range(min(n, 6)):
        for j in range(min(n, 6)):
            ui = [field.zero] * n
            ui[i] = field.one
            uj = [field.zero] * n
            uj[j] = field.one
            candidates.append(S.mult(ui, uj))
    rng = random.Random(97531)
    for _ in range(40):
        candidates.append([field.of_int(rng.randint(-5, 5)) for _ in range(n)])

    for x in candidates:
        if S.is_zero(x):
            continue
        mu = _min_poly(S, x)
        if len(mu) <= 2:
            continue
        factors = _factor_over_field(field, mu)
        if len(factors) >= 2:
            g = factors[0][0]
            for _ in range(factors[0][1] - 1):
                g = poly_mul(field, g, factors[0][0])
            h, rem = poly_divmod(field, mu, g)
            if poly_trim(field, rem):
                continue
            e = _idempotent_from_coprime_split(S, x, g, h)
            if e is not None:
                return e
        elif factors and factors[0][1] >= 2:
            y = _poly_eval_in_quotient(S, factors[0][0], x)
            if not S.is_zero(y):
                e = _idempotent_from_singular(S, y)
                if e is not None:
                    return e
    return None


def _invert_unit_matrix(algebra, M, vertices_rows):
    """Inverse of a square matrix over A whose vertex-scalar part is invertible."""
    field = algebra.field
    n = len(M)
    scal = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if vertices_rows[i] == vertices_rows[j]:
                c = M[i][j].coeffs.get(algebra.idempotent_index[vertices_rows[i]])
                if c:
                    scal[i][j] = c
    from .exact_linalg import inverse as mat_inverse

    s_inv = mat_inverse(Matrix(field, scal, n))
    if s_inv is None:
        raise ComplexError("matrix has singular scalar part")
    s_inv_lift = [[
        AlgebraElement(algebra, {algebra.idempotent_index[vertices_rows[i]]: s_inv.rows[i][j]})
        if vertices_rows[i] == vertices_rows[j] and s_inv.rows[i][j] else algebra.zero()
        for j in range(n)] for i in range(n)]
    # M = S (1 + N) with N strictly radical; invert the unipotent part by Neumann
    N = _mat_mult(algebra, s_inv_lift, M)
    ident = [[algebra.idempotent(vertices_rows[i]) if i == j else algebra.zero() for j in range(n)] for i in range(n)]
    N = _mat_add(N, ident, sign=-1)
    neg_n = _mat_neg(N)
    acc = ident
    term = ident
    for _ in range(64):
        term = _mat_mult(algebra, term, neg_n)
        if _mat_is_zero(term):
            break
        acc = _mat_add(acc, term)
    else:
        raise ComplexError("unipotent part failed to terminate")
    return _mat_mult(algebra, acc, s_inv_lift)


def _split_by_strict_idempotent(X: ProjComplex, f: ChainMap):
    """Split X = im(f) + ker(f) for a strict idempotent endomorphism f."""
    A = X.algebra
    field = A.field
    transforms = {}
    masks = {}
    for d, vs in X.terms.items():
        n = len(vs)
        M = f.mat(d)
        groups = {}
        for i, v in enumerate(vs):
            groups.setdefault(v, []).append(i)
        G = [[A.zero() for _ in range(n)] for _ in range(n)]
        mask = [False] * n
        for v, idxs in groups.items():
            k = len(idxs)
            S = [[field.zero] * k for _ in range(k)]
            idem = A.idempotent_index[v]
            for a, ia in enumerate(idxs):
                for b, ib in enumerate(idxs):
                    c = M[ia][ib].coeffs.get(idem)
                    if c:
                        S[a][b] = c
            sm = Matrix(field, S, k)
            if not (sm * sm == sm):
                raise ComplexError("scalar part of idempotent is not idempotent")
            red, pivots = _rref_shim(field, S, k)
            im_cols = [[S[r][c] for r in range(k)] for c in pivots]
            ker = nullspace(sm)
            ker_cols = [[v2.rows[r][0] for r in range(k)] for v2 in ker]
            P = im_cols + ker_cols
            if len(P) != k:
                raise ComplexError("idempotent scalar block rank mismatch")
            p_inv = _field_inverse_cols(field, P, k)
            for a in range(k):
                for b in range(k):
                    c = p_inv[a][b]
                    if c:
                        G[idxs[a]][idxs[b]] = AlgebraElement(A, {idem: c})
            for a in range(len(im_cols)):
                mask[idxs[a]] = True
        transforms[d] = G
        masks[d] = mask

    # conjugate f by the scalar change of basis, then straighten by the
    # intertwiner V = D f' + (1 - D)(1 - f')
    new_f = {}
    for d in X.terms:
        G = transforms[d]
        Ginv = _invert_unit_matrix(A, G, list(X.terms[d]))
        new_f[d] = _mat_mult(A, _mat_mult(A, G, f.mat(d)), Ginv)
    final = {}
    for d, vs in X.terms.items():
        n = len(vs)
        mask = masks[d]
        D = [[A.idempotent(vs[i]) if (i == j and mask[i]) else A.zero() for j in range(n)] for i in range(n)]
        oneM = [[A.idempotent(vs[i]) if i == j else A.zero() for j in range(n)] for i in range(n)]
        fp = new_f[d]
        V = _mat_add(_mat_mult(A, D, fp), _mat_mult(A, _mat_add(oneM, _mat_neg(D)), _mat_add(oneM, _mat_neg(fp))))
        final[d] = _mat_mult(A, V, transforms[d])

    new_diffs = {}
    for d in X.diffs:
        W1 = final[d + 1]
        W0_inv = _invert_unit_matrix(A, final[d], list(X.terms[d]))
        new_diffs[d] = _mat_mult(A, _mat_mult(A, W1, X.diff(d)), W0_inv)

    def take(selector):
        terms = {}
        diffs = {}
        index_of = {}
        for d, vs in X.terms.items():
            sel = [i for i in range(len(vs)) if masks[d][i] == selector]
            index_of[d] = sel
            if sel:
                terms[d] = tuple(vs[i] for i in sel)
        for d, mat in new_diffs.items():
            rows = index_of.get(d + 1, [])
            cols = index_of.get(d, [])
            sub = [[mat[t][s] for s in cols] for t in rows]
            if sub and sub[0]:
                diffs[d] = sub
        return ProjComplex(A, terms, diffs)

    # verify the straightened idempotent commutes blockwise before splitting
    for d, mat in new_diffs.items():
        for t in range(len(X.terms[d + 1])):
            for s in range(len(X.terms[d])):
                if masks[d + 1][t] != masks[d][s] and mat[t][s].coeffs:
                    raise ComplexError("idempotent failed to straighten the differential")
    return take(True), take(False)


def _rref_shim(field, rows, ncols):
    work = [list(r) for r in rows]
    pivots = _rref_rows(field, work, ncols)
    return work, pivots


def _field_inverse_cols(field, cols, k):
    """Inverse of the matrix whose columns are `cols` (each of length k)."""
    from .exact_linalg import inverse as mat_inverse

    m = Matrix(field, [[cols[j][i] for j in range(k)] for i in range(k)], k)
    inv = mat_inverse(m)
    if inv is None:
        raise ComplexError("change of basis is singular")
    return [[inv.rows[i][j] for j in range(k)] for i in range(k)]


def decompose(X: ProjComplex, diagnostics=None):
    """Krull-Schmidt decomposition into indecomposable minimal complexes.

    A complex is indecomposable iff End/rad is one-dimensional; otherwise a
    nontrivial idempotent of End/rad is lifted (Newton iteration e <- 3e^2-2e^3
    on a strict representative, which converges because null-homotopic
    endomorphisms of a minimal complex have radical entries), straightened
    degreewise and used to split.  If the semisimple quotient admits no
    idempotent it is a division ring; that is flagged, not an error.
    """
    X = minimize(X)
    if X.is_zero():
        return []
    comp = CompositionAlgebra([X])
    if comp.semisimple_dim() == 1:
        return [X]
    S = _SemisimpleQuotient(comp)
    e_bar = _find_nontrivial_idempotent(S)
    if e_bar is None:
        if diagnostics is not None:
            diagnostics.append("indecomposable (division endo-ring)")
        return [X]
    vec = {S.chosen[i]: c for i, c in enumerate(e_bar) if c}
    f = comp.chain_map_of(vec)
    for _ in range(64):
        ff = f.compose(f)
        if ff == f:
            break
        f3 = ff.compose(f)
        f = ff.scale(comp.field.of_int(3)).add(f3.scale(comp.field.of_int(-2)))
    else:
        raise ComplexError("idempotent lifting did not converge")
    if f.is_zero() or f == identity_map(X):
        raise ComplexError("idempotent lift degenerated")
    X1, X2 = _split_by_strict_idempotent(X, f)
    if X1.is_zero() or X2.is_zero():
        raise ComplexError("idempotent split produced a zero part")
    return decompose(X1, diagnostics) + decompose(X2, diagnostics)


# -- isomorphism testing and interning ----------------------------------------


def summands_isomorphic(U: ProjComplex, V: ProjComplex) -> bool:
    """Isomorphism test for minimal indecomposable complexes.

    U and V are isomorphic iff some composition Hom(U,V) x Hom(V,U) lands
    outside the radical of End(U).
    """
    if U is V:
        return True
    if U.signature() != V.signature():
        return False
    fw = hom_space(U, V, 0)
    if fw.dim == 0:
        return False
    bw = hom_space(V, U, 0)
    if bw.dim == 0:
        return False
    end_u = CompositionAlgebra([U])
    for g in bw.basis_maps():
        for f in fw.basis_maps():
            h = g.compose(f)
            coeffs = end_u.blocks[(0, 0)].reduce(h)
            vec = {end_u._pos[(0, 0, loc)]: c for loc, c in enumerate(coeffs) if c}
            if vec and not end_u.in_radical(vec):
                return True
    return False


def intern_summand(X: ProjComplex) -> ProjComplex:
    """Canonical representative of a minimal indecomposable, per algebra."""
    A = X.algebra
    key = X.signature()
    bucket = A.intern_buckets.setdefault(key, [])
    for Y in bucket:
        if summands_isomorphic(X, Y):
            return Y
    bucket.append(X)
    return X


def is_isomorphic(X: ProjComplex, Y: ProjComplex) -> bool:
    """Isomorphism in the homotopy category, decided on minimal forms."""
    if X.algebra is not Y.algebra:
        raise ComplexError("isomorphism test across different algebras")
    Xm, Ym = minimize(X), minimize(Y)
    if Xm.is_zero() or Ym.is_zero():
        return Xm.is_zero() and Ym.is_zero()
    if Xm.signature() != Ym.signature():
        return False
    xs = decompose(Xm)
    ys = decompose(Ym)
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for u in xs:
        for k, v in enumerate(remaining):
            if summands_isomorphic(u, v):
                remaining.pop(k)
                break
        else:
            return False
    return True


# -- serialization -------------------------------------------------------------


def complex_to_json(X: ProjComplex):
    A = X.algebra
    fmt = A.field.fmt
    labels = A.basis_labels
    return {
        "algebra": A.name,
        "degrees": [{"degree": d, "vertices": list(vs)} for d, vs in sorted(X.terms.items())],
        "differentials": [
            {
                "degree": d,
                "entries": [
                    [{labels[i]: fmt(c) for i, c in sorted(e.coeffs.items())} for e in row]
                    for row in X.diff(d)
                ],
            }
            for d in sorted(X.diffs)
        ],
    }


def complex_from_json(algebra: Algebra, data) -> ProjComplex:
    if data["algebra"] != algebra.name:
        raise ComplexError(f"complex was serialized over {data['algebra']}, not {algebra.name}")
    terms = {entry["degree"]: tuple(entry["vertices"]) for entry in data["degrees"]}
    diffs = {}
    for blk in data.get("differentials", []):
        d = blk["degree"]
        diffs[d] = [[algebra.from_label_dict(cell) for cell in row] for row in blk["entries"]]
    return ProjComplex(algebra, terms, diffs)
