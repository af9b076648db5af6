"""
Local operator bases, random Hamiltonian ensembles and their n-site embeddings
"""

from .bases import BasisFactory, LocalBasis, gellmann_basis, pauli_basis, spin_basis, spin_matrices
from .embedding import (
    EmbeddedHamiltonian,
    EmbeddingMode,
    collective_generators,
    collective_sum,
    embed_collective,
    embed_noncollective,
    embed_site,
    single_site_generator,
    single_site_generators,
)
from .ensembles import EnsembleKind, HamiltonianEnsemble, ensemble_from_config, second_moment_mc

__all__ = [
    "BasisFactory",
    "LocalBasis",
    "gellmann_basis",
    "pauli_basis",
    "spin_basis",
    "spin_matrices",
    "EmbeddedHamiltonian",
    "EmbeddingMode",
    "collective_generators",
    "collective_sum",
    "embed_collective",
    "embed_noncollective",
    "embed_site",
    "single_site_generator",
    "single_site_generators",
    "EnsembleKind",
    "HamiltonianEnsemble",
    "ensemble_from_config",
    "second_moment_mc",
]
