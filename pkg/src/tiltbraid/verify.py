"""Acceptance suites: every enumerative and structural claim this artifact
reproduces at desk scale, run with pinned sizes and exact tolerances.

The suites are shared by the CLI (`verify --suite ...`) and the test module;
each criterion returns a result record with a pass flag and a detail line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import build_auslander, build_preprojective, corner_algebra
from .automorphisms import (
    build_out_automorphism,
    coefficients_of,
    compose_series,
    twist_complex,
)
from .braid import BraidWord, garside_nf, geq_L, words_up_to
from .complexes import ProjComplex, hom_dim, is_isomorphic
from .doubling import DoublingContext, nu_stable, verify_corner_isomorphism
from .exact_linalg import QQ
from .mutation import (
    SiltingObject,
    enumerate_interval,
    mutate,
    regular_silting,
    silting_leq,
)
from .rho import RhoContext, check_braid_action, endo_cartan, top_projective_shift


@dataclass
class CriterionResult:
    key: str
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.key} {self.name}: {self.detail}"


class AcceptanceContext:
    """Caches the expensive shared computations across criteria."""

    def __init__(self, field=QQ):
        self.field = field
        self._two_term = {}
        self._rho = {}
        self._braid_report = None
        self._doubling = {}

    def rho_context(self, n: int) -> RhoContext:
        if n not in self._rho:
            self._rho[n] = RhoContext(n, field=self.field)
        return self._rho[n]

    def two_term(self, n: int):
        if n not in self._two_term:
            algebra = self.rho_context(n).algebra
            interval = enumerate_interval(regular_silting(algebra))
            tilting = [obj for obj in interval if obj.is_tilting()]
            self._two_term[n] = (interval, tilting)
        return self._two_term[n]

    def braid_report(self):
        if self._braid_report is None:
            self._braid_report = check_braid_action(3, 5, order_samples=200)
        return self._braid_report

    def doubling(self, n: int) -> DoublingContext:
        if n not in self._doubling:
            self._doubling[n] = DoublingContext(n, field=self.field)
        return self._doubling[n]

    def sample_words(self, n: int, bound: int, count: int, seed: int):
        rng = random.Random(seed)
        alphabet = [i for i in range(1, n)] + [-i for i in range(1, n)]
        out = []
        for _ in range(count):
            k = rng.randint(0, bound)
            out.append(BraidWord(n, tuple(rng.choice(alphabet) for _ in range(k))))
        return out


# -- reference complexes over the rank-2 algebra -------------------------------


def staircase_up(algebra, k: int) -> ProjComplex:
    """k copies of the big projective mapping down onto the small one, with the
    small one in degree zero."""
    beta = algebra.generator("a1") * algebra.generator("b1")  # loop on the big projective
    down = algebra.generator("b1")
    terms = {0: (1,)}
    diffs = {}
    for j in range(1, k + 1):
        terms[-j] = (2,)
    if k >= 1:
        diffs[-1] = [[down]]
    for j in range(2, k + 1):
        diffs[-j] = [[beta]]
    return ProjComplex(algebra, terms, diffs)


def staircase_down(algebra, k: int) -> ProjComplex:
    """The small projective in degree zero mapping up into k copies of the big one."""
    beta = algebra.generator("a1") * algebra.generator("b1")
    up = algebra.generator("a1")
    terms = {0: (1,)}
    diffs = {}
    for j in range(1, k + 1):
        terms[j] = (2,)
    if k >= 1:
        diffs[0] = [[up]]
    for j in range(1, k):
        diffs[j] = [[beta]]
    return ProjComplex(algebra, terms, diffs)


def grid_fixtures(algebra):
    """The eight objects of the depth-3 mutation neighborhood of the regular
    object over the rank-2 algebra, hand-encoded from the closed formulas."""
    from .complexes import stalk

    q1 = stalk(algebra, 1)
    q = stalk(algebra, 2)
    x1 = staircase_up(algebra, 1)
    x2 = staircase_up(algebra, 2)
    y1 = staircase_down(algebra, 1)
    y2 = staircase_down(algebra, 2)
    return {
        "X0+Q": (q1, q),
        "X0+X1": (q1, x1),
        "Y1[1]+Q": (y1.shift(1), q),
        "X1[-1]+Q": (x1.shift(-1), q),
        "Y2[2]+Q": (y2.shift(2), q),
        "X2[-2]+Q": (x2.shift(-2), q),
        "X0+X1[1]": (q1, x1.shift(1)),
        "Y1[1]+X0[1]": (y1.shift(1), q1.shift(1)),
    }


def mutation_ball(T: SiltingObject, depth: int):
    """All objects reachable from T by at most `depth` single mutations."""
    seen = {T.object_key(): T}
    frontier = [T]
    for _ in range(depth):
        nxt = []
        for obj in frontier:
            for label in range(1, obj.rank + 1):
                for direction in ("left", "right"):
                    child = mutate(obj, label, direction)
                    key = child.object_key()
                    if key not in seen:
                        seen[key] = child
                        nxt.append(child)
        frontier = nxt
    return list(seen.values())


# -- the ten criteria -----------------------------------------------------------


def criterion_two_term_counts(ctx: AcceptanceContext) -> CriterionResult:
    expected = {2: 4, 3: 12, 4: 48}
    details = []
    ok = True
    for n, want in expected.items():
        interval, tilting = ctx.two_term(n)
        details.append(f"n={n}: total={len(interval)} tilting={len(tilting)} (want {want})")
        if len(tilting) != want:
            ok = False
    return CriterionResult("C1", "two-term tilting counts", ok, "; ".join(details))


def criterion_grid(ctx: AcceptanceContext) -> CriterionResult:
    rctx = ctx.rho_context(2)
    algebra = rctx.algebra
    ball = mutation_ball(regular_silting(algebra), 3)
    fixtures = grid_fixtures(algebra)
    matched = []
    missing = []
    for name, summands in fixtures.items():
        target = SiltingObject(algebra, summands)
        if any(obj.same_object(target) for obj in ball):
            matched.append(name)
        else:
            missing.append(name)
    ok = not missing
    detail = f"matched {len(matched)}/8 fixtures in a ball of {len(ball)} objects"
    if missing:
        detail += f"; missing: {', '.join(missing)}"
    return CriterionResult("C2", "depth-3 mutation grid", ok, detail)


def criterion_braid_action(ctx: AcceptanceContext) -> CriterionResult:
    try:
        rep = ctx.braid_report()
    except Exception as exc:  # counterexamples abort with a payload
        return CriterionResult("C3", "braid-action validity", False, str(exc))
    detail = (
        f"{rep['words']} words, {rep['relation_checks']} relation checks, "
        f"{rep['nf_classes']} normal-form classes, zero counterexamples"
    )
    return CriterionResult("C3", "braid-action validity", True, detail)


def criterion_poset(ctx: AcceptanceContext) -> CriterionResult:
    rctx = ctx.rho_context(3)
    rng = random.Random(555331)
    alphabet = [1, 2, -1, -2]
    checked = 0
    for _ in range(200):
        x = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        y = BraidWord(3, tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))))
        if geq_L(x, y) != silting_leq(rctx.evaluate(x), rctx.evaluate(y)):
            return CriterionResult(
                "C4", "poset compatibility", False,
                f"counterexample x='{x.letters}' y='{y.letters}'",
            )
        checked += 1
    return CriterionResult("C4", "poset compatibility", True, f"{checked} random pairs agree")


def criterion_top_summand(ctx: AcceptanceContext) -> CriterionResult:
    ctx.braid_report()
    total = 0
    for n in (2, 3, 4):
        _, tilting = ctx.two_term(n)
        for obj in tilting:
            if top_projective_shift(obj) is None:
                return CriterionResult(
                    "C5", "top-projective summand law", False,
                    f"two-term tilting object over rank {n} without the summand",
                )
            total += 1
    for n in (2, 3):
        rctx = ctx.rho_context(n)
        for letters, obj in rctx._cache.items():
            if top_projective_shift(obj) is None:
                return CriterionResult(
                    "C5", "top-projective summand law", False,
                    f"rho image of '{letters}' lacks the summand",
                )
            total += 1
    return CriterionResult("C5", "top-projective summand law", True, f"{total} tilting objects checked")


def criterion_rigidity(ctx: AcceptanceContext) -> CriterionResult:
    checked = 0
    for n, seed in ((2, 9001), (3, 9002)):
        rctx = ctx.rho_context(n)
        algebra = rctx.algebra
        cartan = algebra.cartan_matrix()
        for w in ctx.sample_words(n, 5, 10, seed):
            T = rctx.evaluate(w)
            mat = endo_cartan(T)
            dim = sum(sum(row) for row in mat)
            if dim != algebra.dim or mat != cartan:
                return CriterionResult(
                    "C6", "endomorphism rigidity", False,
                    f"n={n} word '{w.letters}': endo Cartan {mat} vs {cartan}",
                )
            checked += 1
    return CriterionResult("C6", "endomorphism rigidity", True, f"{checked} sampled images match")


def criterion_interval_invariance(ctx: AcceptanceContext) -> CriterionResult:
    expected = {2: 6, 3: 24}
    details = []
    for n, want in expected.items():
        rctx = ctx.rho_context(n)
        base = len(ctx.two_term(n)[0])
        if base != want:
            return CriterionResult(
                "C7", "interval invariance", False, f"n={n}: base interval has {base} objects, want {want}"
            )
        for w in ctx.sample_words(n, 4, 5, seed=7100 + n):
            T = rctx.evaluate(w)
            size = len(enumerate_interval(T))
            if size != want:
                return CriterionResult(
                    "C7", "interval invariance", False,
                    f"n={n} word '{w.letters}': interval size {size} != {want}",
                )
        details.append(f"n={n}: 5 sampled intervals of size {want}")
    return CriterionResult("C7", "interval invariance", True, "; ".join(details))


def criterion_doubling(ctx: AcceptanceContext) -> CriterionResult:
    checked_objects = 0
    checked_mutations = 0
    for n in (2, 3):
        dctx = ctx.doubling(n)
        rctx = RhoContext(n, algebra=dctx.small)
        seen_nf = set()
        for w in words_up_to(n, 3):
            nf = garside_nf(w)
            if nf in seen_nf:
                continue
            seen_nf.add(nf)
            T = rctx.evaluate(w)
            summands = dctx.phi_summands(T)  # raises on count or Hom failure
            if not nu_stable(dctx, summands):
                return CriterionResult(
                    "C8", "symmetric doubling", False,
                    f"n={n} word '{w.letters}': doubled object is not functor-stable",
                )
            checked_objects += 1
            phi_T = dctx.phi_object(T)
            for label in range(1, n):
                T2 = mutate(T, label, "left")
                expected = dctx.phi_object(T2)
                got = _mutate_pair(dctx, phi_T, T.summand(label))
                if not got.same_object(expected):
                    return CriterionResult(
                        "C8", "symmetric doubling", False,
                        f"n={n} word '{w.letters}' label {label}: pair mutation mismatch",
                    )
                checked_mutations += 1
    return CriterionResult(
        "C8", "symmetric doubling", True,
        f"{checked_objects} doubled objects, {checked_mutations} pair mutations compatible",
    )


def _interned(dctx: DoublingContext, U: ProjComplex) -> ProjComplex:
    from .complexes import intern_summand, minimize

    return intern_summand(minimize(dctx.ell(U)))


def _mutate_pair(dctx: DoublingContext, phi_T: SiltingObject, U: ProjComplex) -> SiltingObject:
    """Mutate the image summand and its mirror, in both orders (they must agree)."""
    from .complexes import intern_summand, minimize

    first = _interned(dctx, U)
    second = intern_summand(minimize(dctx.nu(first)))
    pos1 = next(i + 1 for i, s in enumerate(phi_T.summands) if s is first)
    step1 = mutate(phi_T, pos1, "left")
    pos2 = next(i + 1 for i, s in enumerate(step1.summands) if s is second)
    out = mutate(step1, pos2, "left")
    # the two mutations commute
    alt1 = mutate(phi_T, next(i + 1 for i, s in enumerate(phi_T.summands) if s is second), "left")
    alt = mutate(alt1, next(i + 1 for i, s in enumerate(alt1.summands) if s is first), "left")
    if not alt.same_object(out):
        raise RuntimeError("pair mutations failed to commute")
    return out


def criterion_algebra_crosscheck(ctx: AcceptanceContext) -> CriterionResult:
    for n in (2, 3, 4):
        if not verify_corner_isomorphism(n, ctx.field):
            return CriterionResult("C9", "corner identification", False, f"rank {n} corner mismatch")
    for m in range(1, 8):
        dim = build_preprojective(m, ctx.field).dim
        want = m * (m + 1) * (m + 2) // 6
        if dim != want:
            return CriterionResult(
                "C9", "corner identification", False, f"dim at {m} vertices is {dim}, want {want}"
            )
    return CriterionResult(
        "C9", "corner identification", True,
        "corners match through rank 4; dimension formula holds through 7 vertices",
    )


def criterion_automorphisms(ctx: AcceptanceContext) -> CriterionResult:
    rng = random.Random(424243)
    field = ctx.field
    pairs = 0
    for _ in range(50):
        n = rng.choice((2, 3, 4, 5))
        algebra = build_auslander(n, field)
        s = [field.of_int(rng.randint(1, 6))] + [field.of_int(rng.randint(-5, 5)) for _ in range(n - 2)]
        t = [field.of_int(rng.randint(1, 6))] + [field.of_int(rng.randint(-5, 5)) for _ in range(n - 2)]
        composite = build_out_automorphism(algebra, s).compose(build_out_automorphism(algebra, t))
        got = coefficients_of(composite)
        want = compose_series(t, s, n, field)
        if got != want:
            return CriterionResult(
                "C10", "automorphism group law", False,
                f"n={n}: composite series {got} != substituted series {want}",
            )
        pairs += 1
    twists = 0
    for n, seed in ((2, 31337), (3, 31338)):
        rctx = ctx.rho_context(n)
        algebra = rctx.algebra
        for w in ctx.sample_words(n, 4, 5, seed):
            s = [field.of_int(rng.randint(1, 6))] + [field.of_int(rng.randint(-5, 5)) for _ in range(n - 2)]
            g = build_out_automorphism(algebra, s)
            T = rctx.evaluate(w)
            if not twist_complex(T, g).same_object(T):
                return CriterionResult(
                    "C10", "automorphism group law", False,
                    f"twist of rho('{w.letters}') is not isomorphic to itself (n={n})",
                )
            twists += 1
    return CriterionResult(
        "C10", "automorphism group law", True,
        f"{pairs} composition pairs and {twists} twist invariances verified",
    )


CRITERIA = {
    "C1": criterion_two_term_counts,
    "C2": criterion_grid,
    "C3": criterion_braid_action,
    "C4": criterion_poset,
    "C5": criterion_top_summand,
    "C6": criterion_rigidity,
    "C7": criterion_interval_invariance,
    "C8": criterion_doubling,
    "C9": criterion_algebra_crosscheck,
    "C10": criterion_automorphisms,
}

SUITES = {
    "counts": ("C1", "C2", "C7"),
    "braid": ("C3", "C4"),
    "sym": ("C8", "C9"),
    "rigidity": ("C5", "C6", "C10"),
    "all": tuple(CRITERIA),
}


def run_suite(name: str, ctx: AcceptanceContext | None = None, emit=print):
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}'; choose from {sorted(SUITES)}")
    ctx = ctx or AcceptanceContext()
    results = []
    for key in SUITES[name]:
        result = CRITERIA[key](ctx)
        results.append(result)
        if emit:
            emit(result.line())
    return results
