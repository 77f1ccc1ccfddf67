"""Finite negative tomonoids built by one-element Rees coextension."""

from .chain import (
    TRIVIAL,
    TWO_ELEMENT,
    Chain,
    IdempotentPair,
    TomonoidTable,
    VerifyReport,
    Violation,
    atom_char_idempotents,
    atom_quotient,
    idempotents,
    is_archimedean,
    is_commutative,
    quotient_chain,
    rees_quotient,
    verify_table,
)
from .coextend import (
    CoextensionChoice,
    Filter,
    Flags,
    GenRecord,
    coextensions,
    coextensions_for_pair,
    enumerate_choices,
    materialise,
)
from .errors import (
    AxiomError,
    InternalSoundnessError,
    ObstructedError,
    OracleCapError,
    PartitionStructureError,
    PreconditionError,
    TableShapeError,
    TomonoidError,
)
from .formats import ParseError, format_table, parse_table, record_from_json, record_to_json
from .generator import CountReport, SizeCounts, brute_force, count, generate
from .partition import LevelPartition, from_partition, to_partition, verify_partition
from .ramification import ClassDag, ExtendedChain, Ramification, audit, class_poset, compute_support, ramify
from .render import render

__version__ = "0.1.0"
