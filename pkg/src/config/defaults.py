"""Default configuration values."""

import os

# Dense resolvent solves
LINALG_CONFIG = {
    "singular_threshold": 1e-12,
    "refinement_steps": 1,
    "condition_limit": 1e8,
    "norm_probes": 64,
}

# Region sampling for class checks
REGION_CONFIG = {
    "points_per_decade": 32,
    "decade_low": -2,
    "decade_high": 4,
    "samples_per_arc": 33,
    "real_samples": 17,
    "decay_rungs": 12,
    "decay_threshold": 0.9,
    "bip_delta": 1.0,
    "bip_samples": 41,
}

# Rademacher averages
RBOUND_CONFIG = {
    "trials": 4096,
    "probes": 16,
    "subset_size": 4,
    "exhaustive_limit": 2**16,
    "sampled_signs": 64,
    "batch": 256,
    "family_cap": 256,
}

# Ray quadrature for fractional powers
RAY_QUADRATURE_CONFIG = {
    "nodes": 400,
    "s_min": 1e-8,
    "s_max": 1e8,
    "tolerance": 1e-6,
    "max_doublings": 6,
}

# Vertical-line contours
CONTOUR_CONFIG = {
    "offset_factor": 1.5,
    "offset_margin": 0.5,
    "radius_factor": 50.0,
    "radius_floor_factor": 10.0,
    "resolution_fraction": 0.25,
    "octave_tolerance": 1e-6,
    "failure_tolerance": 1e-3,
    "max_doublings": 4,
    "chunk_size": int(os.getenv("OPCONTOUR_CHUNK_SIZE", "256")),
    "outer_factor": 2.5,
    "split_tolerance": 1e-6,
}

# Time grids
TIME_CONFIG = {
    "default_N": int(os.getenv("OPCONTOUR_DEFAULT_N", "512")),
    "default_T": 1.0,
    "default_p": 2.0,
    "min_N": 8,
}

# Cauchy solvers
SOLVER_CONFIG = {
    "residual_tolerance": 1e-3,
    "k_max": 1e6,
    "trace_factor": 10.0,
    "fourier_decay_margin": 40.0,
}

# Semilinear iteration
FIXED_POINT_CONFIG = {
    "tolerance": 1e-10,
    "max_iterations": 50,
    "ball_radius": 10.0,
    "window": 2,
    "divergence_ratio": 1.5,
    "max_halvings": 6,
    "substeps": 16,
    "overflow_limit": 1e12,
}

# Process-level settings
RUNTIME_CONFIG = {
    "threads": int(os.getenv("OPCONTOUR_THREADS", "1")),
    "seed": int(os.getenv("OPCONTOUR_SEED", "0")),
    "log_level": os.getenv("OPCONTOUR_LOG_LEVEL", "WARNING"),
}

# Consolidated default configuration
DEFAULT_CONFIG = {
    "linalg": LINALG_CONFIG,
    "region": REGION_CONFIG,
    "rbound": RBOUND_CONFIG,
    "ray_quadrature": RAY_QUADRATURE_CONFIG,
    "contour": CONTOUR_CONFIG,
    "time": TIME_CONFIG,
    "solver": SOLVER_CONFIG,
    "fixed_point": FIXED_POINT_CONFIG,
    "runtime": RUNTIME_CONFIG,
}
