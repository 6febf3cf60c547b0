"""Exact dense linear algebra over the rationals or a prime field.

Scalars are `fractions.Fraction` in the default mode; a prime-field mode
(residues mod a fixed prime >= 46337) exists as a faster drop-in.  All
arithmetic is exact -- no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class LinAlgError(ValueError):
    """Malformed dimensions or non-conforming operands."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin, valid far beyond the primes used here
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Fp:
    """Residue in Z/p, with operator arithmetic so generic code can mix fields."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def __add__(self, other):
        if isinstance(other, Fp):
            return Fp(self.val + other.val, self.p)
        if isinstance(other, int):
            return Fp(self.val + other, self.p)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Fp):
            return Fp(self.val - other.val, self.p)
        if isinstance(other, int):
            return Fp(self.val - other, self.p)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return Fp(other - self.val, self.p)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Fp):
            return Fp(self.val * other.val, self.p)
        if isinstance(other, int):
            return Fp(self.val * other, self.p)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fp(other, self.p)
        if isinstance(other, Fp):
            return Fp(self.val * pow(other.val, -1, self.p), self.p)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return Fp(other * pow(self.val, -1, self.p), self.p)
        return NotImplemented

    def __neg__(self):
        return Fp(-self.val, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}#(mod {self.p})"


class RationalField:
    """The field of exact rationals; elements are `Fraction` values."""

    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of_int(self, n: int):
        return Fraction(n)

    def of_fraction(self, fr: Fraction):
        return Fraction(fr)

    def parse(self, s: str):
        return Fraction(s)

    def fmt(self, x) -> str:
        return str(Fraction(x))

    def to_json(self):
        return {"mode": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Z/p for a fixed prime p >= 46337 (the speed-mode floor); elements are Fp."""

    MIN_PRIME = 46337

    def __init__(self, p: int):
        if p < self.MIN_PRIME or not _is_prime(p):
            raise ValueError(f"prime-field mode needs a prime >= {self.MIN_PRIME}, got {p}")
        self.p = p
        self.characteristic = p

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def of_int(self, n: int):
        return Fp(n, self.p)

    def of_fraction(self, fr: Fraction):
        return Fp(fr.numerator * pow(fr.denominator, -1, self.p), self.p)

    def parse(self, s: str):
        return self.of_fraction(Fraction(s))

    def fmt(self, x) -> str:
        return str(x.val)

    def to_json(self):
        return {"mode": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_json(data) -> RationalField | PrimeField:
    if data["mode"] == "rational":
        return QQ
    return PrimeField(data["p"])


class Matrix:
    """Dense matrix over a fixed field.  Empty (0 x k, k x 0) shapes are legal."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise LinAlgError("ragged rows")
        else:
            if ncols is None:
                raise LinAlgError("0-row matrix needs an explicit column count")
            self.ncols = ncols

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def column(cls, field, entries):
        return cls(field, [[e] for e in entries], 1)

    def copy(self):
        return Matrix(self.field, [list(r) for r in self.rows], self.ncols)

    def transpose(self):
        t = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix(self.field, t, self.nrows)

    def column_entries(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in addition")
        return Matrix(
            self.field,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in subtraction")
        return Matrix(
            self.field,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise LinAlgError("shape mismatch in product")
            ot = other.transpose()
            out = []
            z = self.field.zero
            for r in self.rows:
                row = []
                for c in ot.rows:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(self.field, out, other.ncols)
        return Matrix(self.field, [[a * other for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return id(self)

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def __repr__(self):
        if self.nrows == 0 or self.ncols == 0:
            return f"Matrix({self.nrows}x{self.ncols})"
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix[{body}]"


def _rref_rows(field, rows, ncols):
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one / rows[r][c]
        if inv != field.one:
            rows[r] = [a * inv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m: Matrix):
    """Reduced row echelon form of `m`; returns (rref matrix, pivot columns)."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(m.field, rows, m.ncols)
    return Matrix(m.field, rows, m.ncols), pivots


def rank(m: Matrix) -> int:
    rows = [list(r) for r in m.rows]
    return len(_rref_rows(m.field, rows, m.ncols))


def nullspace(m: Matrix):
    """Basis of the kernel of `m`, as a list of column matrices.

    The returned columns are linearly independent, each satisfies m*v = 0,
    and their count equals ncols - rank.
    """
    field = m.field
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(field, rows, m.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * m.ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(Matrix.column(field, v))
    return basis


def solve(m: Matrix, b: Matrix):
    """Some x with m*x = b, or None when the system is inconsistent.

    `b` must be a column matrix with rows(b) = rows(m); anything else is a
    contract violation and raises LinAlgError.
    """
    if b.ncols != 1 or b.nrows != m.nrows:
        raise LinAlgError(f"solve needs a {m.nrows}x1 right-hand side, got {b.nrows}x{b.ncols}")
    field = m.field
    rows = [list(r) + [b.rows[i][0]] for i, r in enumerate(m.rows)]
    pivots = _rref_rows(field, rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.ncols]
    return Matrix.column(field, x)


def inverse(m: Matrix):
    """Inverse of a square matrix, or None when singular."""
    if m.nrows != m.ncols:
        raise LinAlgError("inverse of a non-square matrix")
    n = m.nrows
    field = m.field
    ident = Matrix.identity(field, n)
    rows = [list(r) + list(ident.rows[i]) for i, r in enumerate(m.rows)]
    pivots = _rref_rows(field, rows, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        return None
    return Matrix(field, [r[n:] for r in rows], n)




# -- polynomial helpers (dense, low-degree-first coefficient lists) ----------

def poly_trim(field, p):
    while p and not p[-1]:
        p = p[:-1]
    return p


def poly_mul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return poly_trim(field, out)


def poly_divmod(field, p, q):
    q = poly_trim(field, list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [field.zero] * max(0, len(r) - len(q) + 1)
    inv_lead = field.one / q[-1]
    while len(poly_trim(field, r)) >= len(q):
        r = poly_trim(field, r)
        shift = len(r) - len(q)
        f = r[-1] * inv_lead
        quo[shift] = quo[shift] + f
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - f * b
    return poly_trim(field, quo), poly_trim(field, r)



def poly_xgcd(field, p, q):
    """(g, u, v) monic with u*p + v*q = g = gcd(p, q)."""
    a, b = poly_trim(field, list(p)), poly_trim(field, list(q))
    ua, va = [field.one], []
    ub, vb = [], [field.one]
    while b:
        quo, r = poly_divmod(field, a, b)
        a, b = b, r
        ua, ub = ub, poly_trim(field, [x - y for x, y in _zipline(field, ua, poly_mul(field, quo, ub))])
        va, vb = vb, poly_trim(field, [x - y for x, y in _zipline(field, va, poly_mul(field, quo, vb))])
    if a:
        inv = field.one / a[-1]
        a = [c * inv for c in a]
        ua = [c * inv for c in ua]
        va = [c * inv for c in va]
    return a, ua, va


def _zipline(field, p, q):
    n = max(len(p), len(q))
    p = list(p) + [field.zero] * (n - len(p))
    q = list(q) + [field.zero] * (n - len(q))
    return zip(p, q)
