"""Exact joint distributions of rises, falls, levels and runs in multiset permutations."""

from runstat.algebra import Polynomial, VarContext, coeff_extract, poly_inv_unit, to_text
from runstat.closedform import count_rises_falls, eulerian, newcomb
from runstat.genfun import GfPath, build_g, coefficient, gf_explicit, gf_explicit_check, gf_matrix, gf_recursive
from runstat.model import DistributionTable, Mode, Specification, StatProfile
from runstat.oracle import enumerate_stats, stats_of_sequence

__all__ = [
    "DistributionTable",
    "GfPath",
    "Mode",
    "Polynomial",
    "Specification",
    "StatProfile",
    "VarContext",
    "build_g",
    "coeff_extract",
    "coefficient",
    "count_rises_falls",
    "enumerate_stats",
    "eulerian",
    "gf_explicit",
    "gf_explicit_check",
    "gf_matrix",
    "gf_recursive",
    "newcomb",
    "poly_inv_unit",
    "stats_of_sequence",
    "to_text",
]
