"""Exact verification of isomorphisms between G_m-cylinders over the hypersurfaces
``t^l f = 1``, and certificates that the underlying hypersurfaces differ."""

from .actions import TorusAction, act_by_monomial, semi_invariant_weight
from .arith import (
    BezoutWitness,
    SquarePair,
    UnimodularMatrix,
    bezout_with_unit_constraint,
    normalize_mod,
    square_pair_solve,
    unimodular_complete,
    xgcd,
)
from .catalog import FamilySpec, danielewski, fermat, genus, make_family
from .certificates import (
    NonIsoCertificate,
    UnitsDescription,
    certify_danielewski_noniso,
    certify_fermat_noniso,
    certify_fiber_distinct,
    units_description,
)
from .constructions import (
    IsoRecipe,
    build_congruent_iso,
    build_cylinder_iso,
    build_product_iso,
    build_square_iso,
    generic_fiber_targets,
)
from .fibrations import FiberReport, FibrationSpec, compare_fiber_multisets, degenerate_fibers
from .poly import LaurentPolynomial, RingSignature, embed, evaluate, exact_divide, substitute
from .varieties import (
    Hypersurface,
    MonomialRingMap,
    ProductVariety,
    VerificationReport,
    compose,
    cylinder,
    inverse,
    pullback,
    verify_map,
)

__version__ = "0.1.0"
