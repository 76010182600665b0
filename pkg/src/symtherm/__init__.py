"""Symmetry-resolved thermodynamics of permutation-invariant spin ensembles.

The package has three layers:

* exact S_N representation combinatorics (`combinatorics`) and the block
  decomposition of the von Neumann entropy (`entropy`),
* a banded symmetric eigensolver and stable log-domain reductions
  (`spectral`),
* the transverse-field Curie-Weiss application (`curie_weiss`) with a
  brute-force small-system validator (`oracle`) and a CLI (`cli`).
"""

from symtherm.combinatorics import Partition, RescaledShape
from symtherm.curie_weiss import ModelParams, PhasePoint, ThermoCurve
from symtherm.entropy import BlockSpectrum, EntropyBreakdown

__version__ = "0.1.0"

__all__ = [
    "Partition",
    "RescaledShape",
    "ModelParams",
    "ThermoCurve",
    "PhasePoint",
    "BlockSpectrum",
    "EntropyBreakdown",
    "__version__",
]
