"""Exact localized multiple harmonic sums, shuffle algebras, KZ fixed points and
adjoint p-adic multiple zeta values at roots of unity."""
from __future__ import annotations

from .action import (
    HarmonicEnv,
    TruncationCertificateError,
    UnsupportedDepthError,
    action_expansion,
    adjoint_pmzv,
    depth_one_series_zeta,
    totally_negative_closed,
)
from .bernoulli import bernoulli
from .cyclo import CycloNum, cyclo_embed_root, root_of_unity
from .faulhaber import PolyExp, PolyExp2, bcoeff, faulhaber_poly, twisted_power_sum
from .harmonic import mhs, mhs_tilde, sign_data, whar
from .indices import AdjointIndex, SeriesIndex, parse_index, quasi_shuffle
from .kz import NCSeries, ZLogPoly, int_kz, int_kz_loc, solve_kz
from .localization import loc_sigma, partition_tree, tree_paths
from .padic import PadicNum, teichmuller
from .words import Word, antipode, deconcat, loc_deconcat, parse_word, shuffle

__all__ = [
    "AdjointIndex", "CycloNum", "HarmonicEnv", "NCSeries", "PadicNum", "PolyExp", "PolyExp2",
    "SeriesIndex", "TruncationCertificateError", "UnsupportedDepthError", "Word", "ZLogPoly",
    "action_expansion", "adjoint_pmzv", "antipode", "bcoeff", "bernoulli", "cyclo_embed_root",
    "deconcat", "depth_one_series_zeta", "faulhaber_poly", "int_kz", "int_kz_loc", "loc_deconcat",
    "loc_sigma", "mhs", "mhs_tilde", "parse_index", "parse_word", "partition_tree", "quasi_shuffle",
    "root_of_unity", "shuffle", "sign_data", "solve_kz", "teichmuller", "tree_paths",
    "totally_negative_closed", "twisted_power_sum", "whar",
]
