"""Belief change with latent attributive beliefs.

External information carries attributive beliefs that are accepted
unconsciously and surface later, when their triggers become believed.
This package provides the propositional kernel, the association machinery,
belief-set closure, the expansion/contraction/revision operators, a
postulate conformance suite and a scenario runner.
"""

from .association import (
    ALL_PAIRS,
    AssociationContext,
    AssociationTuple,
    BeliefTriplet,
    InterpretationMap,
    in_exc,
    validate_interpretation,
)
from .beliefs import (
    BeliefBase,
    BeliefSet,
    ExternalInfo,
    Package,
    adequacy_check,
    close,
    close_models,
    visible,
    visible_neg,
)
from .logic import (
    And,
    Atom,
    Bot,
    Formula,
    Not,
    Or,
    ParseError,
    Top,
    UnknownAtomError,
    Universe,
    canonical,
    negate,
    nnf,
)
from .operators import (
    SELECT_ALL,
    ExplicitSelection,
    PreferenceOrder,
    SelectAll,
    SelectionFunction,
    WorkLimitExceeded,
    contract,
    expand,
    meet,
    remainders,
    revise,
    select,
    substitute_conjunct,
)
from .scenario import Scenario, ScenarioError, load_scenario, parse_scenario, run, run_report, snapshot

__version__ = "0.1.0"

__all__ = [
    "ALL_PAIRS", "And", "AssociationContext", "AssociationTuple", "Atom",
    "BeliefBase", "BeliefSet", "BeliefTriplet", "Bot", "ExplicitSelection",
    "ExternalInfo", "Formula", "InterpretationMap", "Not", "Or", "Package",
    "ParseError", "PreferenceOrder", "Scenario", "ScenarioError", "SelectAll",
    "SelectionFunction", "SELECT_ALL", "Top", "UnknownAtomError", "Universe",
    "WorkLimitExceeded", "adequacy_check", "canonical", "close", "close_models",
    "contract", "expand", "in_exc", "load_scenario", "meet", "negate", "nnf",
    "parse_scenario", "remainders", "revise", "run", "run_report", "select",
    "snapshot", "substitute_conjunct", "validate_interpretation", "visible",
    "visible_neg",
]
