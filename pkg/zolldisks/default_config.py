import os


def _env_workers(default: int = 1) -> int:
    raw = os.getenv("ZOLLDISKS_WORKERS", "").strip()
    return int(raw) if raw.isdigit() and int(raw) > 0 else default


DEFAULT_CONFIG = {
    "results_dir": "./results",
    "workers": _env_workers(),
    # Projective geometry
    "conic_tol": 1e-6,  # eps_q, proximity to the conic Q
    "equality_tol": 1e-10,  # chordal equality of projective points
    # Surface representation and docility
    "flow_steps": 64,
    "max_field_degree": 4,
    "fd_step": 1e-5,  # central differences in chart coordinates
    "n_dock": 2000,  # Fibonacci samples for check_docility
    "fixed_point_gap": 0.05,
    "orientation_margin": 1e-6,
    "involution_tol": 1e-7,
    "totally_real_tol": 1e-6,  # eps_tr
    "transversality_tol": 1e-6,  # eps_t
    "kahler_quadrature_order": 48,
    "quadrature_rel_tol": 1e-5,
    # Riemann-Hilbert solver
    "K": 64,
    "max_K": 512,
    "nodes_per_coefficient": 4,
    "newton_tol": 1e-9,
    "max_newton_iter": 50,
    "initial_damping": 1e-6,
    "holomorphy_tol": 1e-8,
    "tail_tol": 1e-8,
    "rechart_threshold": 0.2,
    "chart_overflow": 0.05,
    "homotopy_step": 1 / 16,
    "min_homotopy_step": 1e-4,
    "max_winding_nodes_factor": 16,
    "disk_radial_order": 32,
    # Moduli sweep and geodesics
    "sweep_chunk": 16,
    "geodesic_step": 0.02,
    "geodesic_max_steps": 10_000,
    "closure_tol": 1e-4,
    "min_closed_arclength": 0.1,
    "membership_tol": 1e-6,
    "kappa_tol": 1e-8,  # centre of each stored disk vs its moduli point
    "geodesic_mode": "exact",  # Options: exact, interpolated
    # Lagrangian verdicts
    "lagrangian_tol": 1e-7,
    "not_lagrangian_tol": 1e-4,
}
