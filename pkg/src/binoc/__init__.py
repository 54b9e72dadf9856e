"""binoc: exact decompositions of binomial ideals.

Coprincipal, soccular, binoccular and irreducible decompositions of
binomial ideals in ``k[x_1, ..., x_n]`` over the rationals or a prime
field, each returned with a certificate that the components intersect to
the input.

>>> from binoc import parse_ideal, irreducible_decomposition
>>> I = parse_ideal("ring x y; char 0; ideal x^2*y - x*y^2, x^3, y^3")
>>> dec = irreducible_decomposition(I, prune=True)
>>> dec.certified, len(dec.components)
(True, 2)
"""

__version__ = "0.1.0"

from .errors import (
    BadCharacteristic,
    BinocError,
    BoundExceeded,
    CrossCheckMismatch,
    DimensionUnsupported,
    FieldExtensionRequired,
    NilClass,
    NotCoprincipal,
    NotPCofinite,
    ParseError,
    ResourceLimitExceeded,
    UnsupportedUnitRank,
)
from .field import GF, PrimeField, QQ, RationalField
from .poly import DEGREVLEX, LEX, Poly, PolyRing, TermOrder
from .ideal import (
    Ideal,
    colon,
    eliminate,
    groebner,
    ideal_equal,
    intersect,
    intersect_all,
    normal_form,
    saturate,
)
from .lattice import Lattice, smith_normal_form
from .congruence import (
    FiniteCongruence,
    LocalView,
    class_of,
    congruence_predicates,
    coprincipal_component_congruence,
    greens_compare,
    localize,
    prime_congruence,
    witnesses,
)
from .soccular import (
    colon_set,
    iterated_collapses,
    protected_pairs,
    protected_witnesses,
    soccular_closure,
    soccular_collapse,
    soccular_component,
    soccular_decomposition,
)
from .mesoprimary import (
    Component,
    Decomposition,
    StabilizerCharacter,
    coprincipal_component,
    coprincipal_decomposition,
    essential_witnesses,
    mesoprime,
    mesoprime_minimal_primes,
    stabilizer_character,
)
from .fiber import FiberAlgebra
from .binoccular import (
    binoccular_closure,
    binoccular_collapse,
    binoccular_component,
    binoccular_decomposition,
    is_binoccular,
    socle,
)
from .irreducible import (
    essential_submodule_check,
    fiber_algebra,
    irr_primary_components,
    irreducible_closure,
    irreducible_decomposition,
    largest_submodule_in,
    perp_subspace,
)
from .verify import (
    Certificate,
    binomial_irreducibility_report,
    check_intersection,
    check_mesoprimary_decomposition,
    irredundancy_prune,
    socle_dimension,
)
from .io import IdealFile, parse_ideal, parse_ideal_file, parse_polynomial
from .render import render_congruence
