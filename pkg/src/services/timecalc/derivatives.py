"""Finite-difference time derivatives and initial traces."""

import numpy as np

from .grid import GridFunction


def fd_first(values: np.ndarray, h: float) -> np.ndarray:
    """Central differences inside, one-sided second order at the ends."""
    return np.gradient(values, h, axis=0, edge_order=2)


def fd_second(values: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h**2
    out[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) / h**2
    out[-1] = (2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3] - values[-4]) / h**2
    return out


def finite_diff_derivative(u: GridFunction, order: int = 1) -> GridFunction:
    if order == 0:
        return u
    if order == 1:
        return u.with_values(fd_first(u.values, u.grid.h))
    if order == 2:
        return u.with_values(fd_second(u.values, u.grid.h))
    raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")


def derivative_values(u: GridFunction, order: int) -> np.ndarray:
    """∂^order u on the nodes; orders above 2 compose second and first differences."""
    values = u.values
    h = u.grid.h
    while order >= 2:
        values = fd_second(values, h)
        order -= 2
    if order == 1:
        values = fd_first(values, h)
    return values


def initial_traces(u: GridFunction, orders: int) -> list:
    """|∂^m u(0)| for m = 0, ..., orders-1 (Euclidean norm on ℂ^dim)."""
    return [float(np.linalg.norm(derivative_values(u, m)[0])) for m in range(orders)]


def trace_tolerance(u: GridFunction, factor: float = 10.0) -> float:
    """factor·N⁻²·scale with scale = max(1, sup ‖u‖)."""
    return factor * u.grid.N ** -2 * max(1.0, u.sup_norm())
