"""Finite inductively generated covers: saturation, operations and their laws,
cover maps, tensor products, presentation styles and free constructions."""

from .core import (Base, Subset, contains, enumerate_all_subsets, intersect, is_subset,
                   list_base, make_base, powerset_base, product_base, rectangle, union)
from .errors import (BaseMismatchError, CovertopError, InputError, InvariantError,
                     SizeCapError)
from .generation import (Axiom, AxiomSet, DeltaOp, OpCover, SubsetOp, add_frame_axioms,
                         add_unit_axioms, circ_basic_cover, extend_semigroup_axioms,
                         generate_basic, generate_convergent, generate_formal, localize,
                         make_axiom_set, make_delta, tensor_axioms)
from .morphisms import (Relation, compose, identity, is_basic_cover_map, is_convergent_map,
                        is_formal_map, is_unital_map, maps_equal, unital_conditions)
from .operations import (LawReport, all_laws, convergent_law_suite, down_arrow,
                         down_arrow_leq, formal_law_suite, implication, lift)
from .saturation import (Cover, FunctionCover, GeneratedCover, covers, covers_subset,
                         eq_mod_A, oracle_saturate, sat_lattice, saturate,
                         semantic_closure_oracle)
from .tensor import check_coherence, tensor_cover, tensor_map

__version__ = "0.1.0"
