"""Laplacian dynamics on weighted directed graphs."""

from .graph import (
    AdjacencyBundle,
    Digraph,
    ParseError,
    build_adjacency,
    parse_digraph,
    read_digraph,
    reverse,
)
from .taxonomy import (
    Condensation,
    NotWeaklyConnected,
    ReachDecomposition,
    connectivity_class,
    reach_decomposition,
    strongly_connected_components,
)
from .laplacian import (
    LaplacianMatrix,
    ViolatesDominance,
    block_triangularize,
    comb_laplacian,
    generalized_laplacian,
    rw_laplacian,
)
from .kernels import KernelBasis, gamma_matrix, kernel_basis, left_kernel, right_kernel
from .spectrum import Spectrum, eigenvalues, gersgorin_check, zero_multiplicity
from .dynamics import (
    TrajectoryRecord,
    absorption_probabilities,
    cesaro_matrix,
    hitting_times,
    matrix_exponential,
    simulate_continuous,
    simulate_discrete,
    time_one_map,
)

__version__ = "0.1.0"
