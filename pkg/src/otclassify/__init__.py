"""Classification of conjugate complex structures on Oeljeklaus-Toma manifolds.

Given a number field K = Q[x]/(f) and a subgroup U of totally positive units,
the library computes the automorphism stabilizer A_U, its action on the 2^t
choices of complex embeddings, the orbit count, and a certified decision of
biholomorphism between any two conjugate manifolds, together with the
flat-bundle cohomology non-vanishing tests that drive the criterion.
"""

from .classify import (
    BiholomorphismVerdict,
    EmbeddingChoice,
    LatticeData,
    OrbitReport,
    OrderedChoice,
    act,
    are_biholomorphic,
    enumerate_choices,
    export_lattice,
    orbit_report,
    witness_between,
)
from .cohomology import (
    Character,
    HpqResult,
    characters_equal_on_U,
    h10_nonvanishing,
    hpq_nonvanishing,
)
from .embeddings import (
    EmbeddingLabel,
    LogVector,
    canonical_labeling,
    evaluate,
    isolate_roots,
    log_vector,
    match_embedding,
)
from .galois import Automorphism, AutGroup, automorphisms, induced_permutation, stabilizer_A_U
from .numberfield import (
    FieldElement,
    NumberField,
    minimal_polynomial,
    norm,
    parse_field,
    subfield_degree,
    trace,
)
from .polynomials import RationalPoly
from .units import (
    UnitSubgroup,
    exponent_solve,
    is_admissible,
    is_simple_type,
    is_totally_positive,
    is_unit,
    make_subgroup,
    unit_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
