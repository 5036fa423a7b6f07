"""Normalized Laplacian spectra of subdivision vertex-edge neighbourhood
vertex- and edge-coronas (SVEV / SVEE), with closed forms cross-checked
against direct eigendecomposition."""

from .closed_form import (RealPolynomial, SpectrumRecipe, evaluate_charpoly, operand_spectra,
                          quartic_coefficients, real_roots, spectrum_closed, spectrum_recipe,
                          svee_spectrum_closed, svev_spectrum_closed)
from .corona_ops import (CoronaKind, CoronaOperands, build_corona, predicted_counts, predicted_degrees,
                         random_regular_operands, svee_corona, svev_corona)
from .errors import *  # noqa: F401,F403
from .graph_core import (DegreeProfile, Graph, connected_component_count, degree_profile, incidence_matrix,
                         line_graph, make_named_graph, parse_edge_list, format_edge_list, read_graph,
                         subdivision, validate_graph, write_graph)
from .graph_invariants import (InvariantReport, invariant_report, is_cospectral, kemeny, kemeny_closed,
                               kemeny_spectral, kf_star_closed, kf_star_resistance_oracle, kf_star_spectral,
                               spanning_trees_closed, spanning_trees_exact, spanning_trees_spectral)
from .matrix_engine import (Spectrum, assemble_block_normalized_laplacian, coronal_constant_row_sum,
                            line_graph_charpoly_identity_check, matrix_of, normalized_laplacian_spectrum,
                            symmetric_eigenvalues)

__version__ = "0.1.0"
