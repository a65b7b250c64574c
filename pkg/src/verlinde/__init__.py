"""Parabolic Verlinde numbers: exact residue formulas, the trigonometric sum, and their cross-checks."""

from .diagonal_bases import hamiltonian_basis, is_diagonal, nbc_basis, partition_sequence
from .exact_series import FactorExpr, IteratedLaurentSeries, LinearForm, expand_factor, iterated_residue
from .residue_engine import VerlindeInput, iber, p_c, ver_residue, wallcross_full, wallcross_reduced
from .symmetry import AffineWeylElement, LineBundleLabel, affine_act, hecke_shift, stabilizer_generators
from .verlinde_sum import PrecisionError, enumerate_lattice, ver_sum
from .weight_space import (
    IntegralWeight,
    OrderedBasis,
    Partition,
    Root,
    Wall,
    WeightVector,
    admissible_weights,
    resolve_chamber,
    wall_set,
)

__version__ = "0.1.0"

__all__ = [
    "AffineWeylElement",
    "FactorExpr",
    "IntegralWeight",
    "IteratedLaurentSeries",
    "LineBundleLabel",
    "LinearForm",
    "OrderedBasis",
    "Partition",
    "PrecisionError",
    "Root",
    "VerlindeInput",
    "Wall",
    "WeightVector",
    "admissible_weights",
    "affine_act",
    "enumerate_lattice",
    "expand_factor",
    "hamiltonian_basis",
    "hecke_shift",
    "iber",
    "is_diagonal",
    "iterated_residue",
    "nbc_basis",
    "p_c",
    "partition_sequence",
    "resolve_chamber",
    "stabilizer_generators",
    "ver_residue",
    "ver_sum",
    "wall_set",
    "wallcross_full",
    "wallcross_reduced",
]
