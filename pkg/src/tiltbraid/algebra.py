"""Finite-dimensional bound-quiver algebras as explicit multiplication tables.

Composition is function-style throughout: the product x*y means "apply y
first, then x", so a path labeled a1*b1 traverses b1 and then a1.  With this
convention the loop at vertex 1 through vertex 2 is b1*a1, and the defining
relation of both algebra families kills exactly that loop.

Basis elements are reduced paths, graded by (source, target) and by path
length; the defining relations are homogeneous of length two, so the quotient
is constructed length by length with exact linear algebra and the sweep stops
at the first length whose graded piece vanishes.
"""

from __future__ import annotations

from .exact_linalg import Matrix, QQ, _rref_rows, nullspace, solve


class AlgebraError(ValueError):
    pass


class Arrow:
    __slots__ = ("name", "source", "target")

    def __init__(self, name: str, source: int, target: int):
        self.name = name
        self.source = source
        self.target = target

    def __repr__(self):
        return f"Arrow({self.name}: {self.source}->{self.target})"


class Quiver:
    """Finite quiver with 1-based vertices and named arrows."""

    def __init__(self, num_vertices: int, arrows):
        if num_vertices < 1:
            raise AlgebraError("quiver needs at least one vertex")
        self.num_vertices = num_vertices
        self.arrows = tuple(arrows)
        names = set()
        for a in self.arrows:
            if not (1 <= a.source <= num_vertices and 1 <= a.target <= num_vertices):
                raise AlgebraError(f"arrow {a.name} out of vertex range")
            if a.name in names:
                raise AlgebraError(f"duplicate arrow name {a.name}")
            names.add(a.name)

    def to_json(self):
        return {
            "vertices": self.num_vertices,
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
        }


def doubled_line_quiver(n: int) -> Quiver:
    """Vertices 1..n with arrows a_i: i -> i+1 and b_i: i+1 -> i."""
    arrows = []
    for i in range(1, n):
        arrows.append(Arrow(f"a{i}", i, i + 1))
    for i in range(1, n):
        arrows.append(Arrow(f"b{i}", i + 1, i))
    return Quiver(n, arrows)


class AlgebraElement:
    """Linear combination of basis paths; coefficients stored sparsely."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            out[i] = -c if s is None else s - c
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mult_dicts(self.coeffs, other.coeffs))
        return AlgebraElement(self.algebra, {i: c * other for i, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, {i: scalar * c for i, c in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.coeffs.items()))))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        A = self.algebra
        parts = [f"{c}*{A.basis_labels[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


class Algebra:
    """Bound-quiver algebra: reduced-path basis plus structure constants.

    Instances are immutable after construction and safe for concurrent reads;
    identity (`is`) is the intended notion of algebra equality.
    """

    def __init__(self, field, quiver, name, traversals, sources, targets, mult,
                 labels=None, parent=None, parent_vertices=None):
        self.field = field
        self.quiver = quiver
        self.name = name
        self.basis_traversals = tuple(tuple(t) for t in traversals)
        self.basis_source = tuple(sources)
        self.basis_target = tuple(targets)
        self.dim = len(self.basis_traversals)
        self.mult = mult  # mult[i]: dict j -> {k: scalar} for b_i * b_j
        self.parent = parent
        self.parent_vertices = parent_vertices
        if labels is None:
            arrow_name = [a.name for a in quiver.arrows]
            labels = []
            for i, t in enumerate(self.basis_traversals):
                if not t:
                    labels.append(f"e{self.basis_source[i]}")
                else:
                    labels.append("*".join(arrow_name[a] for a in reversed(t)))
        self.basis_labels = tuple(labels)
        self.label_index = {lab: i for i, lab in enumerate(self.basis_labels)}
        self.idempotent_index = {}
        for i, t in enumerate(self.basis_traversals):
            if not t:
                self.idempotent_index[self.basis_source[i]] = i
        self.arrow_basis_index = {}
        for a in quiver.arrows:
            idx = self.label_index.get(a.name)
            if idx is not None:
                self.arrow_basis_index[a.name] = idx
        self.radical_indices = tuple(i for i, t in enumerate(self.basis_traversals) if t)
        pieces = {}
        for i in range(self.dim):
            pieces.setdefault((self.basis_source[i], self.basis_target[i]), []).append(i)
        self._pieces = {k: tuple(v) for k, v in pieces.items()}
        # caches shared by the homotopy-category layer; keyed by object identity
        self.hom_cache = {}
        self.vanish_cache = {}
        self.intern_buckets = {}
        self.shift_cache = {}

    # -- basic queries --------------------------------------------------

    def piece(self, source: int, target: int):
        """Basis indices of e_target * A * e_source (paths source -> target)."""
        return self._pieces.get((source, target), ())

    def unit_coeffs(self):
        one = self.field.one
        return {self.idempotent_index[v]: one for v in range(1, self.quiver.num_vertices + 1)}

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, dict(coeffs))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit_coeffs())

    def idempotent(self, v: int) -> AlgebraElement:
        return AlgebraElement(self, {self.idempotent_index[v]: self.field.one})

    def generator(self, name: str) -> AlgebraElement:
        return AlgebraElement(self, {self.arrow_basis_index[name]: self.field.one})

    def basis_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self, {i: self.field.one})

    def from_label_dict(self, data) -> AlgebraElement:
        return AlgebraElement(
            self, {self.label_index[lab]: self.field.parse(c) for lab, c in data.items()}
        )

    # -- multiplication --------------------------------------------------

    def mult_dicts(self, x: dict, y: dict) -> dict:
        out = {}
        for i, ci in x.items():
            row = self.mult[i]
            for j, cj in y.items():
                prod = row.get(j)
                if not prod:
                    continue
                c = ci * cj
                for k, ck in prod.items():
                    s = out.get(k)
                    v = c * ck if s is None else s + c * ck
                    out[k] = v
        return {k: v for k, v in out.items() if v}

    def cartan_matrix(self):
        """Integer matrix with entry (i, j) = dim e_i A e_j."""
        n = self.quiver.num_vertices
        return [[len(self.piece(j, i)) for j in range(1, n + 1)] for i in range(1, n + 1)]

    def radical_basis(self):
        """Indices of the Jacobson radical basis: all paths of length >= 1."""
        return self.radical_indices

    def invert_local(self, coeffs: dict, v: int) -> dict:
        """Inverse of a unit of the corner e_v A e_v, by exact solve."""
        piece = self.piece(v, v)
        k = len(piece)
        mat = [[self.field.zero] * k for _ in range(k)]
        pos = {b: idx for idx, b in enumerate(piece)}
        for col, b in enumerate(piece):
            prod = self.mult_dicts(coeffs, {b: self.field.one})
            for i, c in prod.items():
                mat[pos[i]][col] = c
        rhs = [self.field.zero] * k
        rhs[pos[self.idempotent_index[v]]] = self.field.one
        x = solve(Matrix(self.field, mat, k), Matrix.column(self.field, rhs))
        if x is None:
            raise AlgebraError("element is not invertible in its corner")
        return {piece[i]: x.rows[i][0] for i in range(k) if x.rows[i][0]}

    def is_central(self, elem: AlgebraElement) -> bool:
        one = self.field.one
        return all(
            self.mult_dicts(elem.coeffs, {i: one}) == self.mult_dicts({i: one}, elem.coeffs)
            for i in range(self.dim)
        )

    # -- serialization ----------------------------------------------------

    def to_json(self):
        fmt = self.field.fmt
        products = []
        for i in range(self.dim):
            for j in sorted(self.mult[i]):
                prod = self.mult[i][j]
                if prod:
                    products.append([i, j, {str(k): fmt(c) for k, c in sorted(prod.items())}])
        return {
            "name": self.name,
            "field": self.field.to_json(),
            "quiver": self.quiver.to_json(),
            "basis": [
                {"label": self.basis_labels[i], "source": self.basis_source[i], "target": self.basis_target[i]}
                for i in range(self.dim)
            ],
            "products": products,
        }

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim})"


def _check_associativity(algebra: Algebra, sample_seed=1801):
    dim = algebra.dim
    if dim <= 32:
        triples = ((i, j, k) for i in range(dim) for j in range(dim) for k in range(dim))
    else:
        import random

        rng = random.Random(sample_seed)
        triples = ((rng.randrange(dim), rng.randrange(dim), rng.randrange(dim)) for _ in range(2000))
    one = algebra.field.one
    for i, j, k in triples:
        left = algebra.mult_dicts(algebra.mult_dicts({i: one}, {j: one}), {k: one})
        right = algebra.mult_dicts({i: one}, algebra.mult_dicts({j: one}, {k: one}))
        if left != right:
            raise AlgebraError(f"multiplication table not associative at ({i},{j},{k})")


def build_bound_quiver_algebra(quiver: Quiver, relations, field=QQ, name="A") -> Algebra:
    """Quotient of the path algebra by homogeneous length-2 relations.

    `relations` is a list of lists [(coeff, (arrow_i, arrow_j)), ...]; each
    monomial traverses arrow_i first.  All monomials of one relation must be
    parallel paths of length two.
    """
    arrows = quiver.arrows
    nv = quiver.num_vertices
    one = field.one

    rel_data = []
    for rel in relations:
        src = tgt = None
        parsed = []
        for coeff, trav in rel:
            if len(trav) != 2:
                raise AlgebraError("relations must be homogeneous of path length two")
            f1, f2 = trav
            if arrows[f1].target != arrows[f2].source:
                raise AlgebraError("relation monomial is not a composable path")
            s, t = arrows[f1].source, arrows[f2].target
            if src is None:
                src, tgt = s, t
            elif (s, t) != (src, tgt):
                raise AlgebraError("relation monomials are not parallel")
            parsed.append((field.of_int(coeff) if isinstance(coeff, int) else coeff, f1, f2))
        rel_data.append((src, parsed))

    traversals = [() for _ in range(nv)]
    sources = list(range(1, nv + 1))
    targets = list(range(1, nv + 1))
    # reduce_tab[(arrow, basis_idx)] = expansion of (arrow o basis path) in the basis
    reduce_tab = {}
    out_arrows = {v: [i for i, a in enumerate(arrows) if a.source == v] for v in range(1, nv + 1)}

    layer_prev = list(range(nv))
    layer_prev2 = None
    while layer_prev:
        pairs = []
        for x in layer_prev:
            for ai in out_arrows[targets[x]]:
                pairs.append((ai, x))
        pairs.sort()
        if not pairs:
            break
        pair_pos = {p: k for k, p in enumerate(pairs)}

        # the ideal in this degree is spanned by relations composed onto the
        # basis two layers down (lower occurrences died in earlier layers)
        rows = []
        if layer_prev2 is not None:
            for src, parsed in rel_data:
                for y in layer_prev2:
                    if targets[y] != src:
                        continue
                    vec = {}
                    for coeff, f1, f2 in parsed:
                        mid = reduce_tab.get((f1, y))
                        if not mid:
                            continue
                        for x, cx in mid.items():
                            k = pair_pos.get((f2, x))
                            if k is None:
                                continue
                            vec[k] = vec.get(k, field.zero) + coeff * cx
                    if any(vec.values()):
                        row = [field.zero] * len(pairs)
                        for k, c in vec.items():
                            row[k] = c
                        rows.append(row)
        pivots = _rref_rows(field, rows, len(pairs)) if rows else []
        pivot_set = set(pivots)

        new_indices = {}
        for k, (ai, x) in enumerate(pairs):
            if k in pivot_set:
                continue
            idx = len(traversals)
            traversals.append(tuple(traversals[x]) + (ai,))
            sources.append(sources[x])
            targets.append(arrows[ai].target)
            new_indices[k] = idx

        for row_i, pc in enumerate(pivots):
            expansion = {}
            row = rows[row_i]
            for k in range(len(pairs)):
                if k != pc and row[k]:
                    expansion[new_indices[k]] = -row[k]
            reduce_tab[pairs[pc]] = expansion
        for k, idx in new_indices.items():
            reduce_tab[pairs[k]] = {idx: one}

        layer_prev2 = layer_prev
        layer_prev = sorted(new_indices.values())
        if len(traversals) > 100000:
            raise AlgebraError("path-basis sweep did not terminate")

    dim = len(traversals)
    # products via iterated arrow reduction: b_i * b_j folds b_i's arrows onto b_j
    mult = [dict() for _ in range(dim)]
    for i in range(dim):
        trav_i = traversals[i]
        for j in range(dim):
            if sources[i] != targets[j]:
                continue
            acc = {j: one}
            for ai in trav_i:
                nxt = {}
                for x, cx in acc.items():
                    red = reduce_tab.get((ai, x))
                    if not red:
                        continue
                    for z, cz in red.items():
                        s = nxt.get(z)
                        nxt[z] = cx * cz if s is None else s + cx * cz
                acc = {k: c for k, c in nxt.items() if c}
                if not acc:
                    break
            if acc:
                mult[i][j] = acc

    algebra = Algebra(field, quiver, name, traversals, sources, targets, mult)
    _check_associativity(algebra)
    return algebra


def mesh_relations(n: int, truncate_last: bool):
    """Length-2 relations of the doubled line quiver.

    Arrow indices follow doubled_line_quiver: a_i = i-1, b_i = (n-1) + (i-1).
    truncate_last=True omits the loop relation at the top vertex (the
    Auslander family); False keeps it (the self-injective family).
    """
    def a(i):
        return i - 1

    def b(i):
        return (n - 1) + (i - 1)

    rels = []
    if n >= 2:
        rels.append([(1, (a(1), b(1)))])  # loop at vertex 1: first a1, then b1
    for i in range(1, n - 1):
        # downward loop at vertex i+1 equals the upward loop there
        rels.append([(1, (b(i), a(i))), (-1, (a(i + 1), b(i + 1)))])
    if not truncate_last and n >= 2:
        rels.append([(1, (b(n - 1), a(n - 1)))])
    return rels


def build_preprojective(m: int, field=QQ) -> Algebra:
    """Preprojective algebra of the line quiver with m vertices; m = 1 gives K."""
    if m < 1:
        raise AlgebraError("need at least one vertex")
    quiver = doubled_line_quiver(m)
    return build_bound_quiver_algebra(quiver, mesh_relations(m, truncate_last=False), field, name=f"Pi{m}")


def build_auslander(n: int, field=QQ) -> Algebra:
    """Auslander algebra of K[T]/(T^n) as a bound-quiver algebra; n = 1 gives K."""
    if n < 1:
        raise AlgebraError("need at least one vertex")
    quiver = doubled_line_quiver(n)
    return build_bound_quiver_algebra(quiver, mesh_relations(n, truncate_last=True), field, name=f"Lambda{n}")


def corner_algebra(algebra: Algebra, vertices) -> Algebra:
    """Corner eAe for e the sum of the chosen vertex idempotents.

    The basis is the set of basis paths with both endpoints in the subset;
    structure constants restrict because basis paths are (source, target)-
    homogeneous.  Vertices are renumbered 1..k in increasing original order.
    """
    chosen = sorted(set(vertices))
    if not chosen:
        raise AlgebraError("corner needs a nonempty vertex subset")
    for v in chosen:
        if not (1 <= v <= algebra.quiver.num_vertices):
            raise AlgebraError(f"vertex {v} out of range")
    renum = {v: k + 1 for k, v in enumerate(chosen)}
    keep = [i for i in range(algebra.dim)
            if algebra.basis_source[i] in renum and algebra.basis_target[i] in renum]
    pos = {b: k for k, b in enumerate(keep)}
    sub_arrows = [Arrow(a.name, renum[a.source], renum[a.target])
                  for a in algebra.quiver.arrows if a.source in renum and a.target in renum]
    quiver = Quiver(len(chosen), sub_arrows)
    mult = [dict() for _ in keep]
    for ii, bi in enumerate(keep):
        row = algebra.mult[bi]
        for bj, prod in row.items():
            jj = pos.get(bj)
            if jj is not None and prod:
                mult[ii][jj] = {pos[k]: c for k, c in prod.items()}
    traversals = [algebra.basis_traversals[b] for b in keep]
    sources = [renum[algebra.basis_source[b]] for b in keep]
    targets = [renum[algebra.basis_target[b]] for b in keep]
    labels = [algebra.basis_labels[b] if algebra.basis_traversals[b] else f"e{renum[algebra.basis_source[b]]}"
              for b in keep]
    corner = Algebra(
        algebra.field, quiver,
        f"{algebra.name}.corner{''.join(str(v) for v in chosen)}",
        traversals, sources, targets, mult, labels=labels,
        parent=algebra, parent_vertices=tuple(chosen),
    )
    corner.parent_basis = tuple(keep)
    _check_associativity(corner)
    return corner


def gamma_element(algebra: Algebra) -> AlgebraElement:
    """The loop-class sum over all a_i*b_i loops (central in the Auslander family)."""
    total = algebra.zero()
    n = algebra.quiver.num_vertices
    for i in range(1, n):
        total = total + algebra.generator(f"a{i}") * algebra.generator(f"b{i}")
    return total


def dickson_radical(algebra: Algebra):
    """Jacobson radical via the trace form of the regular representation.

    Valid in characteristic zero (and in prime characteristic exceeding the
    dimension); used as an independent cross-check of the path-grading radical.
    """
    p = algebra.field.characteristic
    if p and p <= algebra.dim:
        raise AlgebraError("trace-form radical needs characteristic 0 or > dim")
    dim = algebra.dim
    field = algebra.field
    one = field.one
    traces = []
    for k in range(dim):
        tr = field.zero
        row = algebra.mult[k]
        for j, prod in row.items():
            c = prod.get(j)
            if c:
                tr = tr + c
        traces.append(tr)
    gram = [[field.zero] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            prod = algebra.mult_dicts({i: one}, {j: one})
            tr = field.zero
            for k, c in prod.items():
                tr = tr + c * traces[k]
            gram[i][j] = tr
    return nullspace(Matrix(field, gram, dim))
