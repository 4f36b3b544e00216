"""Co-evolving opinions and strategic peer networks (C++ core)."""

from ._opnet import (
    Classification,
    ModelParams,
    Trajectory,
    UpdateRule,
    best_window,
    bimodal,
    enumerate_equilibria,
    esteban_ray,
    form_network,
    hk_run,
    piecewise_normal,
    run,
    run_sweep,
    solve_given_network,
    threshold_phi,
    threshold_xi,
    uniform_grid,
    uniform_radii,
)

__all__ = [
    "Classification",
    "ModelParams",
    "Trajectory",
    "UpdateRule",
    "best_window",
    "bimodal",
    "enumerate_equilibria",
    "esteban_ray",
    "form_network",
    "hk_run",
    "piecewise_normal",
    "run",
    "run_sweep",
    "solve_given_network",
    "threshold_phi",
    "threshold_xi",
    "uniform_grid",
    "uniform_radii",
]
