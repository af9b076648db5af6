"""
Noisy channels, fidelities, the averaged bound and the GHZ5 example
"""

from .channel import (
    LocalPropagator,
    apply_channel,
    channel_average,
    evolve_density,
    evolve_pure,
    local_hamiltonians,
    local_unitaries,
    overlap_fidelity_mc,
)
from .curves import (
    CSV_COLUMNS,
    bound_accuracy_fraction,
    bound_dominance_violations,
    curve_header,
    curve_to_frame,
    fidelity_curve,
    grid_overshoots,
    read_curve_csv,
    t_star_marker,
    time_grid,
    write_curve_csv,
)
from .fidelity import affinity, bound_is_valid, bures_fidelity, t_star, tm_bound
from .ghz5 import (
    POPULATION_LABELS,
    ghz5_basis_states,
    ghz5_coefficient_grid,
    ghz5_coefficients,
    ghz5_populations_mc,
    max_population_deviation,
    never_equal_spread,
    population_table,
    twirl_populations_mc,
)
from .models import ChannelMode, ChannelSpec, FidelityCurve, Ghz5Coefficients, PopulationEstimate
from .quadrature import exact_fidelity_pure_collective, quadrature_fidelity, sphere_grid

__all__ = [
    "LocalPropagator",
    "apply_channel",
    "channel_average",
    "evolve_density",
    "evolve_pure",
    "local_hamiltonians",
    "local_unitaries",
    "overlap_fidelity_mc",
    "CSV_COLUMNS",
    "bound_accuracy_fraction",
    "bound_dominance_violations",
    "curve_header",
    "curve_to_frame",
    "fidelity_curve",
    "grid_overshoots",
    "read_curve_csv",
    "t_star_marker",
    "time_grid",
    "write_curve_csv",
    "affinity",
    "bound_is_valid",
    "bures_fidelity",
    "t_star",
    "tm_bound",
    "POPULATION_LABELS",
    "ghz5_basis_states",
    "ghz5_coefficient_grid",
    "ghz5_coefficients",
    "ghz5_populations_mc",
    "max_population_deviation",
    "never_equal_spread",
    "population_table",
    "twirl_populations_mc",
    "ChannelMode",
    "ChannelSpec",
    "FidelityCurve",
    "Ghz5Coefficients",
    "PopulationEstimate",
    "exact_fidelity_pure_collective",
    "quadrature_fidelity",
    "sphere_grid",
]
