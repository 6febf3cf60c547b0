"""Exact computation of silting and tilting complexes over Auslander algebras
of truncated polynomial rings: bound-quiver algebra construction, the bounded
homotopy category of projectives, irreducible silting mutation, the braid
parametrization of the tilting component, symmetric doubling into the
preprojective algebra, and vertex-fixing outer automorphisms.

All arithmetic is exact (rationals by default, a prime field as a speed mode);
every advertised identity is an on-the-nose equality or an isomorphism decided
by exact linear algebra.
"""

from .algebra import (
    Algebra,
    AlgebraElement,
    AlgebraError,
    Arrow,
    Quiver,
    build_auslander,
    build_preprojective,
    corner_algebra,
    dickson_radical,
    gamma_element,
)
from .automorphisms import (
    AlgebraMorphism,
    AutomorphismError,
    build_out_automorphism,
    coefficients_of,
    compose_series,
    twist_complex,
)
from .braid import (
    BraidError,
    BraidWord,
    GarsideNF,
    braids_equal,
    folded_embed,
    garside_nf,
    geq_L,
    is_positive,
)
from .complexes import (
    ChainMap,
    ComplexError,
    HomSpace,
    ProjComplex,
    complex_from_json,
    complex_to_json,
    cone,
    decompose,
    direct_sum,
    hom_dim,
    hom_space,
    is_isomorphic,
    minimize,
    stalk,
)
from .doubling import (
    CornerEmbedding,
    DoublingContext,
    DoublingError,
    NakayamaData,
    verify_corner_isomorphism,
)
from .exact_linalg import (
    LinAlgError,
    Matrix,
    PrimeField,
    QQ,
    RationalField,
    nullspace,
    solve,
)
from .mutation import (
    MutationError,
    SiltingObject,
    enumerate_interval,
    h0,
    hasse_dot,
    minimal_left_approximation,
    minimal_right_approximation,
    mutate,
    regular_silting,
    silting_leq,
    two_term_tilting_count,
)
from .rho import RhoContext, check_braid_action, endo_cartan, rho

__version__ = "0.1.0"
