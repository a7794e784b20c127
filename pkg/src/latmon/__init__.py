"""Finite-carrier toolkit for the downset and ideal monads and their algebra towers."""

from .corpus import CorpusEntry, default_corpus, enumerate_lattices, enumerate_posets, filter_kind, named_instances
from .diagrams import LawCheck, SplitDiagram, apply_functor
from .dot import emit_dot
from .errors import (
    BudgetExceeded,
    CycleDetected,
    DuplicateLabel,
    IdentityViolated,
    KindMismatch,
    LatmonError,
    NoStructure,
    NotALattice,
    NotClosed,
    NotFactorable,
    NotFree,
    ParseError,
    SourceTargetMismatch,
    UnknownLabel,
)
from .fakir import (
    FakirAssembly,
    check_Tunit_iso,
    check_unit_iso,
    fakir_object,
    fixes_algebras,
    phi_functor,
    stone_roundtrip,
    supercoherent_generators,
)
from .latfile import LatFile, emit_lat, load_lat, parse_lat
from .monads import (
    DOWNSET,
    IDEAL,
    MonadAssembly,
    MonadInstance,
    apply_hom,
    apply_object,
    check_lax_idempotent,
    check_lemma_adjoint_chain,
    check_monad_laws,
    monad_named,
)
from .order import (
    BoundedLattice,
    Category,
    FinitePoset,
    Hom,
    MeetSemilattice,
    are_isomorphic,
    check_adjoint,
    is_distributive,
    is_frame,
    lattice_from_poset,
    left_adjoint,
    poset_from_covers,
    right_adjoint,
    semilattice_from_poset,
    validate_hom,
)
from .projectives import RetractionWitness, find_retraction, has_coalgebra_structure, lifting_property
from .tower import (
    AlgebraWitness,
    CoalgebraWitness,
    T1AlgebraWitness,
    build_algebra,
    build_coalgebra,
    build_t1_algebra,
    factor_through_unit,
    main_equivalence_pipeline,
    present_algebra,
    present_coalgebra,
    present_t1,
    totally_below,
    way_below,
)

__version__ = "0.1.0"
