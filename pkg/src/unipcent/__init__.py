"""Component groups of unipotent centralizers in simple adjoint groups.

Exact root-system combinatorics: closed subsystems of the extended Dynkin
diagram, distinguished labelings, induced labeled diagrams, and the resulting
conjugacy-class and group-structure tables, all over rational arithmetic.
"""

__version__ = "0.1.0"

from .balacarter import (
    DistinguishedClass,
    LabeledSubDiagram,
    distinguished_classes,
    distinguished_classes_product,
    distinguished_labelings_for_base,
    is_distinguished,
)
from .compgroup import (
    AuReport,
    TripleRecord,
    build_triple_record,
    component_group_report,
    count_pair_orbits,
    enumerate_triples,
    pairs_conjugate,
    recognize_group,
    recognize_group_from_torsion,
)
from .errors import (
    BudgetExceeded,
    FingerprintError,
    InputError,
    InvariantViolation,
    WitnessSearchExhausted,
)
from .induce import LabeledDiagram, cochar_for_labeled_base, cochar_from_labels, induced_diagram
from .pseudolevi import (
    ExtendedDiagram,
    PseudoLevi,
    canonical_subsystem,
    classify_factors,
    enumerate_pseudolevis,
    extended_diagram,
    good_inheritance_check,
    lattice_root_closure,
    point_order,
    subsystem_base,
    subsystem_closure,
    torsion_order,
    witness_element,
)
from .rootsys import (
    CartanType,
    CocharVec,
    RootSystem,
    RootVec,
    WeylWord,
    affine_node,
    alcove_reduce,
    alcove_reduce_map,
    all_roots,
    apply_word,
    bad_primes,
    build_root_system,
    canonical_labeled_set,
    coroot,
    is_good_prime,
    pairing,
    to_dominant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
