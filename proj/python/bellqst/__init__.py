"""Polarization tomography of Bell states under analyzer noise."""

from ._core import (
    FamilyTag,
    MleReport,
    RunResult,
    ScanPoint,
    ScanSpec,
    Scenario,
    SigmaAggregate,
    StateResult,
    ComparisonTable,
    bell_state,
    chsh_violation_region,
    compare_scenarios,
    concurrence,
    concurrence_via_r_matrix,
    default_sigma_grid,
    default_theta_grid,
    expected_counts,
    fidelity_pure,
    likelihood,
    linear_inversion,
    load_scenarios,
    load_scan_specs,
    measurement_labels,
    measurement_operators,
    parse_scenarios,
    phase_sample,
    pure_density,
    random_unitary,
    reconstruct,
    rho_from_params,
    run_scan,
    run_sweep,
    sample_stats,
    scan_operator,
    simulate_counts,
    spin_flip,
    with_dark_counts,
    write_per_sigma_csv,
    write_per_state_csv,
    write_scan_csv,
)

__version__ = "0.1.0"
