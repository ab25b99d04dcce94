"""Physical symbols, parameter records and quantum-number relations.

Everything downstream (spectral conditions, wavefunctions, oracles) is a
function of a ProblemSpec: which relativistic symmetry limit is imposed
(spin, with Delta = V - S frozen to a constant C_s; pseudospin, with
Sigma = V + S frozen to C_ps), which central potential dresses the double
ring-shaped angular term, the ring strengths (a, b), the particle mass and
the quantum numbers (n, n', m, optionally kappa).

Units: hbar = 1, energies and masses in fm^-1, lengths in fm.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace


SQRT_PRINCIPAL = "principal"
SQRT_MODULUS = "modulus"


class SpecError(ValueError):
    """Invalid parameter record."""


def branch_sqrt(z, mode=SQRT_PRINCIPAL):
    """Complex square root under the configured convention.

    ``principal`` is the standard complex principal branch (cut along the
    negative real axis, nonnegative imaginary part on the cut).  ``modulus``
    maps real arguments to sqrt(|x|), a real number; it exists only to probe
    the tables' possible generation conventions and falls back to the
    principal branch off the real axis.
    """
    z = complex(z)
    if mode == SQRT_MODULUS and z.imag == 0.0:
        return complex(abs(z.real) ** 0.5)
    return cmath.sqrt(z)


@dataclass(frozen=True)
class Spin:
    """Spin symmetry limit: V - S = C_s. Real positive bound energies."""

    constant: float  # C_s, fm^-1


@dataclass(frozen=True)
class Pseudospin:
    """Pseudospin symmetry limit: V + S = C_ps. Real negative bound energies."""

    constant: float  # C_ps, fm^-1


SymmetryKind = Spin | Pseudospin


@dataclass(frozen=True)
class Kratzer:
    """Molecular Kratzer core: V1(r) = -2 De (re/r - re^2/(2 r^2))."""

    d_e: float  # dissociation energy, fm^-1
    r_e: float  # equilibrium distance, fm

    def __post_init__(self):
        if self.d_e <= 0 or self.r_e <= 0:
            raise SpecError("Kratzer requires d_e > 0 and r_e > 0")

    def radial(self, r):
        return -2.0 * self.d_e * (self.r_e / r - 0.5 * self.r_e**2 / r**2)


@dataclass(frozen=True)
class Oscillator:
    """Harmonic core: V2(r) = k r^2 / 2, k the elastic coefficient (fm^-3)."""

    k: float

    def __post_init__(self):
        if self.k <= 0:
            raise SpecError("Oscillator requires k > 0")

    def radial(self, r):
        return 0.5 * self.k * r**2


PotentialKind = Kratzer | Oscillator


@dataclass(frozen=True)
class RingParams:
    """Strengths of the angular a/cos^2(theta) and b/sin^2(theta) terms.

    Both are positive real parameters; a = b = 0 recovers the pure central
    potential.
    """

    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise SpecError("ring strengths must be nonnegative")

    def angular(self, theta):
        import numpy as np

        s2 = np.sin(theta) ** 2
        c2 = np.cos(theta) ** 2
        return self.b / s2 + self.a / c2


@dataclass(frozen=True)
class PhysicalParams:
    """Mass of the Dirac particle (fm^-1); hbar = 1 throughout."""

    mass: float

    def __post_init__(self):
        if self.mass <= 0:
            raise SpecError("mass must be positive")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial n, polar n' (the tables' n-tilde column), azimuthal m.

    kappa is the optional spin-orbit quantum number; m is stored signed but
    enters every formula through m^2 or |m|.
    """

    n: int = 0
    n_prime: int = 0
    m: int = 0
    kappa: int | None = None

    def __post_init__(self):
        if self.n < 0 or self.n_prime < 0:
            raise SpecError("n and n_prime must be nonnegative")
        if self.kappa == 0:
            raise SpecError("kappa = 0 is not a valid spin-orbit quantum number")


@dataclass(frozen=True)
class ProblemSpec:
    """Complete input for any computation in this package."""

    symmetry: SymmetryKind
    potential: PotentialKind
    ring: RingParams
    params: PhysicalParams
    qn: QuantumNumbers

    @property
    def mass(self):
        return self.params.mass

    @property
    def is_spin(self):
        return isinstance(self.symmetry, Spin)

    def with_qn(self, **kwargs):
        return replace(self, qn=replace(self.qn, **kwargs))

    def potential_value(self, r, theta):
        """V(r, theta) = [b/sin^2 + a/cos^2]/r^2 + V_{1,2}(r)."""
        return self.ring.angular(theta) / r**2 + self.potential.radial(r)


@dataclass(frozen=True)
class CoefficientSet:
    """Derived symbols of the separated equations at a candidate energy.

    gamma    : E - M - C_ps (pseudospin) or E + M - C_s (spin)
    beta_sq  : (E+M)(E-M-C_ps) resp. (E-M)(C_s-E-M)
    omega    : sqrt(a*gamma + 1/4) + sqrt(b*gamma + m^2)
    ell_eff  : omega + 2 n' + 1, the quantized ell + 1/2
    zeta     : 1/2 + sqrt(ell_eff^2 + gamma*De*re^2) (Kratzer; None otherwise)
    eta, p   : angular exponents of sin^2(theta) resp. cos^2(theta)
    decay    : rate of the normalizable radial envelope: exp(-decay*r) for
               Kratzer, exp(-decay*r^2) for the oscillator.  This is the
               branch that makes the printed wavefunctions square-integrable
               at genuine bound roots (see wavefun).
    """

    gamma: complex
    beta_sq: complex
    omega: complex
    ell_eff: complex
    eta: complex
    p: complex
    zeta: complex | None
    decay: complex


def gamma_of(spec: ProblemSpec, energy) -> complex:
    e = complex(energy)
    m = spec.mass
    c = spec.symmetry.constant
    if spec.is_spin:
        return e + m - c
    return e - m - c


def beta_sq_of(spec: ProblemSpec, energy) -> complex:
    """The beta^2 combination exactly as the separated equations define it."""
    e = complex(energy)
    m = spec.mass
    c = spec.symmetry.constant
    if spec.is_spin:
        return (e - m) * (c - e - m)
    return (e + m) * (e - m - c)


def radial_equation_beta_sq(spec: ProblemSpec, energy) -> complex:
    """Coefficient of the constant term in the second-order radial equation.

    For pseudospin this coincides with beta_sq_of; for spin the squared
    Dirac reduction carries (M-E)(C_s-E-M), the sign-flipped partner of the
    beta_sq convention above.  The finite-difference oracle and the
    wavefunction decay rates must use this one.
    """
    if spec.is_spin:
        return -beta_sq_of(spec, energy)
    return beta_sq_of(spec, energy)


def derive_coefficients(spec: ProblemSpec, energy, sqrt_mode=SQRT_PRINCIPAL) -> CoefficientSet:
    """All derived symbols for a candidate energy; complex arithmetic is total."""
    g = gamma_of(spec, energy)
    bsq = beta_sq_of(spec, energy)
    a, b = spec.ring.a, spec.ring.b
    m = spec.qn.m
    sq = lambda z: branch_sqrt(z, sqrt_mode)
    omega = sq(a * g + 0.25) + sq(b * g + m * m)
    ell_eff = omega + 2 * spec.qn.n_prime + 1
    eta = 0.25 * (1 + 2 * sq(m * m + g * b))
    p = 0.25 * (1 + 2 * sq(0.25 + g * a))
    if isinstance(spec.potential, Kratzer):
        dr2 = spec.potential.d_e * spec.potential.r_e**2
        zeta = 0.5 + sq(ell_eff**2 + g * dr2)
        decay = sq(-radial_equation_beta_sq(spec, energy))
    else:
        zeta = None
        decay = sq(-g * spec.potential.k / 8.0)
    return CoefficientSet(
        gamma=g,
        beta_sq=bsq,
        omega=omega,
        ell_eff=ell_eff,
        eta=eta,
        p=p,
        zeta=zeta,
        decay=decay,
    )


def kappa_ell_map(kappa: int):
    """Orbital momentum, total momentum and alignment encoded by kappa.

    kappa < 0: ell = -kappa - 1, j = ell + 1/2 (aligned spin, s1/2, p3/2, ...)
    kappa > 0: ell = kappa,      j = ell - 1/2 (unaligned spin, p1/2, d3/2, ...)
    """
    if kappa == 0:
        raise SpecError("kappa = 0 is not a valid spin-orbit quantum number")
    if kappa < 0:
        ell = -kappa - 1
        return ell, ell + 0.5, "aligned"
    ell = kappa
    return ell, ell - 0.5, "unaligned"
