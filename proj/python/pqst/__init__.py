"""Parallel pCN Bayesian quantum state tomography."""

from ._core import (
    PqstError,
    acf,
    adapt_beta,
    all_pauli_settings,
    default_shots,
    expectation,
    fidelity,
    frobenius_sq_distance,
    hermitian_sqrt,
    iact,
    load_samples,
    log_likelihood,
    log_prior,
    outcome_probabilities,
    pauli_povm,
    pooled_mean,
    pooled_observable,
    qr_haar_correct,
    read_counts,
    read_density_matrix,
    rho_from_params,
    run_chain,
    run_parallel,
    sample_bures,
    simulate_counts,
    split_seed,
    w_state,
    write_counts,
    write_density_matrix,
)

__version__ = "1.0.0"
