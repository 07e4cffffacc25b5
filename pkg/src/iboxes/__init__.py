"""Combinatorics of i-boxes and their exchange matrices."""

from .arrows import HorizontalContext, classify_vertical, horizontal_context, vertical_sets
from .cartan import CartanMatrix, preset
from .chains import AdmissibleChain, ChainSpec, MoveKind, box_move, build_chain, enumerate_chains
from .core import NEG_INF, POS_INF, ColorSequence, IBox, extend_hat_w0
from .exchange import ExchangeMatrix, exchange_matrix, mutate
from .families import Family, enumerate_maximal_families, family_from_chain
from .relations import mutation_monomials, sweep_verify, t_system, verify_boxmove_mutation

__all__ = [
    "NEG_INF",
    "POS_INF",
    "AdmissibleChain",
    "CartanMatrix",
    "ChainSpec",
    "ColorSequence",
    "ExchangeMatrix",
    "Family",
    "HorizontalContext",
    "IBox",
    "MoveKind",
    "box_move",
    "build_chain",
    "classify_vertical",
    "enumerate_chains",
    "enumerate_maximal_families",
    "exchange_matrix",
    "extend_hat_w0",
    "family_from_chain",
    "horizontal_context",
    "mutate",
    "mutation_monomials",
    "preset",
    "sweep_verify",
    "t_system",
    "verify_boxmove_mutation",
    "vertical_sets",
]
