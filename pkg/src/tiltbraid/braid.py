"""Artin braid groups: words, left-greedy Garside normal form, divisibility.

A braid on n strands is normalized as D^k b_1 ... b_m where D is the half
twist, k is the infimum, and the b_i are permutation braids forming a
left-weighted sequence: every generator starting b_{i+1} finishes b_i, no
factor is trivial or D.  Permutation braids are stored as permutations in
one-line form (0-indexed images), composed diagram-style: (p then q)[i] =
q[p[i]].  Words equal in the group have identical normal forms, which is the
word problem and hence also right divisibility: y >=_L x iff the normal form
of y x^{-1} has infimum >= 0.
"""

from __future__ import annotations


class BraidError(ValueError):
    pass


# -- permutations (one-line tuples, diagram composition) -----------------------


def perm_identity(n):
    return tuple(range(n))


def perm_compose(p, q):
    """First p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_of_generator(n, i):
    """The crossing of strands i and i+1 (1-based generator index)."""
    img = list(range(n))
    img[i - 1], img[i] = img[i], img[i - 1]
    return tuple(img)


def half_twist(n):
    return tuple(n - 1 - i for i in range(n))


def starting_set(p):
    """Generators i with p = s_i * (shorter positive braid)."""
    return {i for i in range(1, len(p)) if p[i - 1] > p[i]}


def finishing_set(p):
    """Generators i with p = (shorter positive braid) * s_i."""
    q = perm_inverse(p)
    return {i for i in range(1, len(q)) if q[i - 1] > q[i]}


def permutation_braid_word(p):
    """A reduced positive word realizing p, by stripping starting generators."""
    n = len(p)
    ident = perm_identity(n)
    word = []
    while p != ident:
        i = min(starting_set(p))
        word.append(i)
        p = perm_compose(perm_of_generator(n, i), p)
    return tuple(word)


# -- braid words ----------------------------------------------------------------


class BraidWord:
    """Word in the generators s_1..s_{n-1} and their inverses.

    Letters are nonzero signed 1-based generator indices; "1 2 -1" denotes
    s_1 s_2 s_1^{-1}.
    """

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters=()):
        if n < 1:
            raise BraidError("need at least one strand")
        letters = tuple(letters)
        for l in letters:
            if l == 0 or abs(l) > n - 1:
                raise BraidError(f"letter {l} out of range for {n} strands")
        self.n = n
        self.letters = letters

    @classmethod
    def parse(cls, n: int, text: str) -> "BraidWord":
        text = text.strip()
        return cls(n, tuple(int(t) for t in text.split()) if text else ())

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("strand count mismatch")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-l for l in reversed(self.letters)))

    def __eq__(self, other):
        return isinstance(other, BraidWord) and self.n == other.n and self.letters == other.letters

    def __hash__(self):
        return hash((self.n, self.letters))

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"BraidWord(n={self.n}, '{' '.join(str(l) for l in self.letters)}')"


class GarsideNF:
    """Left-greedy normal form: infimum power of the half twist plus factors."""

    __slots__ = ("n", "inf", "factors")

    def __init__(self, n: int, inf: int, factors):
        self.n = n
        self.inf = inf
        self.factors = tuple(factors)
        ident = perm_identity(n)
        delta = half_twist(n)
        for f in self.factors:
            if f == ident or f == delta:
                raise BraidError("normal form factors must be proper permutation braids")
        for a, b in zip(self.factors, self.factors[1:]):
            if not starting_set(b) <= finishing_set(a):
                raise BraidError("factor sequence is not left-weighted")

    @property
    def canonical_length(self):
        return len(self.factors)

    def __eq__(self, other):
        return (
            isinstance(other, GarsideNF)
            and self.n == other.n
            and self.inf == other.inf
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.n, self.inf, self.factors))

    def is_trivial(self):
        return self.inf == 0 and not self.factors

    def to_word(self) -> BraidWord:
        letters = []
        delta_word = permutation_braid_word(half_twist(self.n))
        if self.inf >= 0:
            letters.extend(delta_word * self.inf)
        else:
            inv = tuple(-l for l in reversed(delta_word))
            letters.extend(inv * (-self.inf))
        for f in self.factors:
            letters.extend(permutation_braid_word(f))
        return BraidWord(self.n, letters)

    def __str__(self):
        parts = [f"D^{self.inf}"]
        for f in self.factors:
            parts.append(" ".join(str(v + 1) for v in f))
        return " | ".join(parts)

    def __repr__(self):
        return f"GarsideNF({self})"


def _tau(n, p):
    """Conjugation by the half twist: D^-1 (p-braid) D at the permutation level."""
    w0 = half_twist(n)
    return perm_compose(w0, perm_compose(p, w0))


def _left_weight_pair(a, b):
    """Slide generators from the head of b to the tail of a until left-weighted."""
    moved = False
    while True:
        gap = starting_set(b) - finishing_set(a)
        if not gap:
            return a, b, moved
        i = min(gap)
        n = len(a)
        s = perm_of_generator(n, i)
        a = perm_compose(a, s)
        b = perm_compose(s, b)
        moved = True


def garside_nf(w: BraidWord) -> GarsideNF:
    """Left-greedy normal form; two words are equal in the braid group iff
    their normal forms coincide."""
    n = w.n
    if n == 1:
        return GarsideNF(1, 0, ())
    w0 = half_twist(n)
    ident = perm_identity(n)
    inf = 0
    factors = []
    for letter in w.letters:
        if letter > 0:
            factors.append(perm_of_generator(n, letter))
        else:
            # s_i^{-1} = D^{-1} (D s_i^{-1}); commute D^{-1} to the front
            inf -= 1
            factors = [_tau(n, f) for f in factors]
            factors.append(perm_compose(w0, perm_of_generator(n, -letter)))

    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(factors) - 1:
            a, b, moved = _left_weight_pair(factors[k], factors[k + 1])
            if moved:
                factors[k], factors[k + 1] = a, b
                changed = True
            k += 1
        factors = [f for f in factors if f != ident]
    while factors and factors[0] == w0:
        inf += 1
        factors = factors[1:]
    return GarsideNF(n, inf, factors)


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.n != v.n:
        raise BraidError("strand count mismatch")
    return garside_nf(u) == garside_nf(v)


def is_positive(w: BraidWord) -> bool:
    """Membership in the positive braid monoid."""
    return garside_nf(w).inf >= 0


def geq_L(y: BraidWord, x: BraidWord) -> bool:
    """Right divisibility: y >=_L x iff y x^{-1} is a positive braid."""
    if y.n != x.n:
        raise BraidError("strand count mismatch")
    return is_positive(y * x.inverse())


def folded_embed(w: BraidWord) -> BraidWord:
    """The embedding into the doubled braid group: s_i -> s_i s_{2n-i}.

    The two substituted letters commute, so this is a group homomorphism from
    the n-strand group into the 2n-strand group.
    """
    n2 = 2 * w.n
    letters = []
    for l in w.letters:
        i = abs(l)
        if l > 0:
            letters.extend((i, n2 - i))
        else:
            letters.extend((-i, -(n2 - i)))
    return BraidWord(n2, letters)


def all_words(n: int, length: int):
    """Every word over the 2(n-1) signed letters with exactly `length` letters."""
    alphabet = [i for i in range(1, n)] + [-i for i in range(1, n)]
    if length == 0:
        yield BraidWord(n, ())
        return
    from itertools import product

    for combo in product(alphabet, repeat=length):
        yield BraidWord(n, combo)


def words_up_to(n: int, bound: int):
    for k in range(bound + 1):
        yield from all_words(n, k)
