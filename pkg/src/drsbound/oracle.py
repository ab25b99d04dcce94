"""Independent finite-difference oracles for the separated equations.

These never touch the closed-form spectra: the radial solver diagonalizes
the symmetric tridiagonal discretization of -d^2/dr^2 + V_eff(r) with
Dirichlet walls, and the angular solver diagonalizes the theta equation in
its Sturm-Liouville form.  A self-consistent loop couples the two through
the energy dependence of gamma and validates relativistic class-A roots
without evaluating any spectral condition.

The angular equation is singular at both ends (limit-circle at theta -> 0
whenever gamma b + m^2 < 1/4, always at the -1/(4 sin^2) term), where a
naive second-order scheme for the printed H(theta) operator stalls at
percent-level errors.  We therefore remove the sin^(1/2) factor -- an exact
transformation that leaves every eigenvalue unchanged -- and discretize the
resulting flux form (sin(theta) P')' on midpoint cells of (0, pi/2) with a
natural boundary at 0 and a Dirichlet wall at pi/2; the wall selects exactly
the solution family of the quantization rule (the printed family always
vanishes at pi/2).  Three-grid Aitken extrapolation absorbs the remaining
endpoint-driven convergence order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .model import (
    Kratzer,
    ProblemSpec,
    RingParams,
    SpecError,
    gamma_of,
    radial_equation_beta_sq,
)


class OracleError(RuntimeError):
    pass


class DivergenceError(OracleError):
    """Self-consistent iteration failed to settle."""


@dataclass(frozen=True)
class FdGrid:
    """Uniform Dirichlet grid: interior nodes only, walls at both ends."""

    r_min: float
    r_max: float
    nodes: int

    def __post_init__(self):
        if not self.r_max > self.r_min:
            raise SpecError("grid endpoints must be strictly ordered")
        if self.nodes < 50:
            raise SpecError("grid too coarse: need at least 50 nodes")

    @property
    def spacing(self):
        return (self.r_max - self.r_min) / (self.nodes + 1)

    def points(self):
        h = self.spacing
        return self.r_min + h * np.arange(1, self.nodes + 1)


def _tridiag_eigs(v_values, h, count):
    n = len(v_values)
    diag = 2.0 / h**2 + v_values
    off = np.full(n - 1, -1.0 / h**2)
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))[0]


def fd_radial_eigs(v_eff, grid: FdGrid, count: int, mass_factor=1.0, refine=False):
    """Lowest eigenvalues of -(1/mass_factor) d^2/dr^2 + V_eff with Dirichlet walls.

    mass_factor rescales the kinetic term so Schroedinger conventions
    (-hbar^2/2mu d^2 + V) fit without rewrapping the potential; second-order
    convergent in the spacing, optionally Richardson-refined on (h, h/2).
    """
    if grid.nodes < 10 * count:
        raise OracleError("grid too coarse for the requested eigenvalue count")
    r = grid.points()
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.asarray(v_eff(r), dtype=float)
    if not np.all(np.isfinite(v)):
        raise OracleError("potential not finite on the open grid interior")
    lam = _tridiag_eigs(mass_factor * v, grid.spacing, count) / mass_factor
    if not refine:
        return lam
    fine = FdGrid(grid.r_min, grid.r_max, 2 * grid.nodes + 1)
    lam2 = _tridiag_eigs(mass_factor * np.asarray(v_eff(fine.points()), float), fine.spacing, count)
    return (4.0 * lam2 / mass_factor - lam) / 3.0


def _angular_fd_once(gamma, ring: RingParams, m: int, count: int, cells: int):
    h = (math.pi / 2.0) / cells
    centers = (np.arange(cells) + 0.5) * h
    faces = np.arange(cells + 1) * h
    sin_f = np.sin(faces)
    sin_c = np.sin(centers)
    q = (
        0.25
        + (m * m + gamma * ring.b) / np.sin(centers) ** 2
        + gamma * ring.a / np.cos(centers) ** 2
    )
    diag = (sin_f[:cells] + sin_f[1:]) / h**2 + q * sin_c
    off = -sin_f[1:cells] / h**2
    d = diag / sin_c
    e = off / np.sqrt(sin_c[:-1] * sin_c[1:])
    return eigh_tridiagonal(d, e, select="i", select_range=(0, count - 1))[0]


def fd_angular_eigs(gamma, ring: RingParams, m: int, count: int, cells=2000):
    """Eigenvalues (ell + 1/2)^2 of the polar equation, real sector only.

    Returns the levels of the quantization family (bounded at theta = 0,
    vanishing at pi/2), Aitken-extrapolated over three dyadic grids.
    """
    if gamma * ring.a + 0.25 < 0 or gamma * ring.b + m * m < 0:
        raise OracleError("complex angular sector: radicals not real")
    l1 = _angular_fd_once(gamma, ring, m, count, cells)
    l2 = _angular_fd_once(gamma, ring, m, count, 2 * cells)
    l3 = _angular_fd_once(gamma, ring, m, count, 4 * cells)
    d1, d2 = l2 - l1, l3 - l2
    out = l3.copy()
    mask = np.abs(d2 - d1) > 1e-300
    out[mask] = l3[mask] - d2[mask] ** 2 / (d2[mask] - d1[mask])
    return out


def _radial_beta_sq_fd(spec: ProblemSpec, gamma, ell_eff_sq, index, r_max, nodes=4000):
    def v_eff(r):
        return (ell_eff_sq - 0.25) / r**2 + gamma * spec.potential.radial(r)

    grid = FdGrid(0.0, r_max, nodes)
    return fd_radial_eigs(v_eff, grid, index + 1, refine=True)[index]


def _invert_beta_sq(spec: ProblemSpec, lam, near):
    """Energies with radial_equation_beta_sq(spec, E) = lam; nearest to `near`."""
    m_, c = spec.mass, spec.symmetry.constant
    if spec.is_spin:
        # (M - E)(C_s - E - M) = lam  =>  E^2 - C_s E + (M C_s - M^2 - lam) = 0
        disc = c * c - 4.0 * (m_ * c - m_ * m_ - lam)
    else:
        # (M + E)(E - M - C_ps) = lam =>  E^2 - C_ps E - (M^2 + M C_ps + lam) = 0
        disc = c * c + 4.0 * (m_ * m_ + m_ * c + lam)
    if disc < 0:
        raise DivergenceError("beta^2 inversion has no real energy")
    root = math.sqrt(disc)
    cands = [(c + root) / 2.0, (c - root) / 2.0]
    return min(cands, key=lambda e: abs(e - near))


def _consistency_map(spec: ProblemSpec, e: float, nodes: int) -> float:
    """One sweep of E -> invert(beta^2 of the FD radial problem at gamma(E))."""
    g = gamma_of(spec, e)
    if abs(g.imag) > 1e-12:
        raise DivergenceError("gamma left the real axis")
    g = g.real
    try:
        lam_ang = fd_angular_eigs(g, spec.ring, spec.qn.m, spec.qn.n_prime + 1, cells=1500)[
            spec.qn.n_prime
        ]
    except OracleError as exc:
        raise DivergenceError(str(exc)) from exc
    # relativistic radial domain from the current decay estimate, doubled
    # until the eigenvalue stops shifting
    bsq_guess = radial_equation_beta_sq(spec, e).real
    decay = math.sqrt(abs(bsq_guess)) if abs(bsq_guess) > 1e-3 else 1.0
    if isinstance(spec.potential, Kratzer):
        r_max = 25.0 / decay
    else:
        r_max = max(6.0, 3.0 * (abs(g) * spec.potential.k / 8.0) ** -0.25)
    lam_rad = _radial_beta_sq_fd(spec, g, lam_ang, spec.qn.n, r_max, nodes)
    prev = lam_rad
    for _ in range(4):
        r_max *= 2.0
        lam_rad = _radial_beta_sq_fd(spec, g, lam_ang, spec.qn.n, r_max, nodes)
        if abs(lam_rad - prev) < 1e-8 * (1.0 + abs(lam_rad)):
            break
        prev = lam_rad
    return _invert_beta_sq(spec, lam_rad, e)


def self_consistent_energy(
    spec: ProblemSpec,
    initial_energy: float,
    *,
    tol=1e-6,
    max_iter=200,
    scan_step=0.1,
    scan_span=4.0,
    nodes=3000,
):
    """Energy solving E = invert(beta^2 of the FD radial problem at gamma(E)).

    Each evaluation of the consistency gap solves the polar equation at
    gamma(E) for the quantized (ell + 1/2)^2, feeds it into the radial
    solver, and maps the resulting beta^2 eigenvalue back to an energy.  The
    gap changes sign at a genuine bound root (the bare sweep map is locally
    repelling there, so the gap is bracketed around the initial energy and
    bisected).  max_iter caps the total number of sweeps; real-sector specs
    only.  DivergenceError is the documented outcome whenever no bound root
    exists in reach of the scan.
    """
    budget = [max_iter]

    def gap(e):
        if budget[0] <= 0:
            raise DivergenceError("sweep budget exhausted")
        budget[0] -= 1
        try:
            return _consistency_map(spec, e, nodes) - e
        except DivergenceError:
            return None

    e0 = float(initial_energy)
    lo_limit, hi_limit = e0 - scan_span, e0 + scan_span
    # march outward from the initial energy looking for a sign change
    known = {}

    def gval(e):
        if e not in known:
            known[e] = gap(e)
        return known[e]

    bracket = None
    steps = int(round(scan_span / scan_step))
    for i in range(steps):
        for sign in (1, -1):
            a = e0 + sign * i * scan_step
            b = e0 + sign * (i + 1) * scan_step
            lo, hi = (a, b) if a < b else (b, a)
            if lo < lo_limit or hi > hi_limit:
                continue
            ga, gb = gval(lo), gval(hi)
            if ga is None or gb is None:
                continue
            if np.sign(ga) != np.sign(gb):
                bracket = (lo, hi, ga, gb)
                break
        if bracket:
            break
    if bracket is None:
        raise DivergenceError("no self-consistent bracket near the initial energy")
    lo, hi, glo, ghi = bracket
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        gm = gap(mid)
        if gm is None:
            # contract toward the endpoint with the smaller gap magnitude
            if abs(glo) <= abs(ghi):
                hi = 0.5 * (mid + hi)
            else:
                lo = 0.5 * (lo + mid)
            continue
        if np.sign(gm) == np.sign(glo):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
        if hi - lo < tol:
            break
    e_star = 0.5 * (lo + hi)
    g_star = gap(e_star)
    if g_star is None or abs(g_star) > 1e-3 * (1.0 + abs(e_star)):
        raise DivergenceError("bracketed point is not a consistent energy")
    return e_star


def nonrel_energy_fd(params, qn, index=None, nodes=6000, r_max=None):
    """FD eigenvalue of the nonrelativistic separated radial problem.

    Solves -hbar^2/(2 mu) u'' + [V(r) + hbar^2 (L^2 - 1/4)/(2 mu r^2)] u = E u
    with the ring-quantized L = ell_eff; the independent check for the
    closed-form nonrelativistic spectra.
    """
    from .nonrel import _angular_root_sum

    mu, hbar = params.mu, params.hbar
    ell_eff = _angular_root_sum(params, qn.m) + 2 * qn.n_prime + 1
    n = qn.n if index is None else index
    if r_max is None:
        if isinstance(params.potential, Kratzer):
            r_max = 6.0 * (n + 1)
        else:
            r_max = 3.0 * math.sqrt(2.0 * n + ell_eff + 10.0)

    def v_eff(r):
        return params.potential.radial(r) + hbar**2 * (ell_eff**2 - 0.25) / (2.0 * mu * r**2)

    grid = FdGrid(0.0, float(r_max), nodes)
    return fd_radial_eigs(v_eff, grid, n + 1, mass_factor=2.0 * mu / hbar**2, refine=True)[n]
