"""Closed-form mode spinors and the brute-force oracle layer.

Conventions (natural units, lengths in units of the cylinder radius,
so R = 1 everywhere below):

* standard Dirac representation, diagonal gamma^0 -- the concrete
  matrices live in STANDARD_GAMMAS and nowhere else;
* a finite cylinder has length L = pi/nu and standing-wave momenta
  k_n = nu * n; an infinite cylinder has plane-wave momenta k = kR;
* four-component values are ordered (c1, c2, c3, c4) with (c1, c2) the
  upper (large) and (c3, c4) the lower (small) components.

The oracles here (quadrature inner products, reduced-system residuals,
angular-operator application, current densities) apply all derivatives
analytically to the known functional forms, so their only error source
is quadrature/roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .params import DimensionlessParams
from .spectrum import ModeSpec, mode_energy

__all__ = [
    "SpinorValue",
    "GammaSet",
    "STANDARD_GAMMAS",
    "QuadratureRule",
    "eval_mode",
    "mode_components",
    "mode_profiles",
    "inner_product",
    "dirac_residual",
    "k_operator_apply",
    "current_density",
    "FourierSpinorField",
    "apply_restricted_dirac",
]


@dataclass(frozen=True)
class SpinorValue:
    """The four complex components of psi at one spacetime point."""

    c1: complex
    c2: complex
    c3: complex
    c4: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4], dtype=complex)

    @classmethod
    def from_array(cls, a) -> "SpinorValue":
        a = np.asarray(a, dtype=complex)
        return cls(a[0], a[1], a[2], a[3])


_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_ZERO2 = np.zeros((2, 2), dtype=complex)


def _block(upper_left, upper_right, lower_left, lower_right):
    return np.block([[upper_left, upper_right], [lower_left, lower_right]])


@dataclass(frozen=True)
class GammaSet:
    """The fixed 4x4 matrices of the standard representation."""

    g0: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray

    def gamma_phi(self, phi: float) -> np.ndarray:
        """Azimuthal matrix (-g1 sin(phi) + g2 cos(phi)) / R, R = 1."""
        return -self.g1 * math.sin(phi) + self.g2 * math.cos(phi)

    def spin3(self) -> np.ndarray:
        """S3 = diag(sigma3, sigma3) / 2."""
        return 0.5 * _block(_SIGMA3, _ZERO2, _ZERO2, _SIGMA3)


STANDARD_GAMMAS = GammaSet(
    g0=_block(np.eye(2, dtype=complex), _ZERO2, _ZERO2, -np.eye(2, dtype=complex)),
    g1=_block(_ZERO2, _SIGMA1, -_SIGMA1, _ZERO2),
    g2=_block(_ZERO2, _SIGMA2, -_SIGMA2, _ZERO2),
    g3=_block(_ZERO2, _SIGMA3, -_SIGMA3, _ZERO2),
)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes in z, uniform periodic nodes in phi."""

    z_nodes: np.ndarray
    z_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weight: float

    def __post_init__(self):
        if np.any(self.z_weights <= 0.0):
            raise ValueError("quadrature weights must be positive")

    @classmethod
    def finite(cls, d: DimensionlessParams, z_order: int = 64,
               phi_points: int = 256) -> "QuadratureRule":
        return cls.window(0.0, d.length, z_order, phi_points)

    @classmethod
    def window(cls, zmin: float, zmax: float, z_order: int = 64,
               phi_points: int = 256) -> "QuadratureRule":
        if not zmax > zmin:
            raise ValueError("empty z window")
        x, w = np.polynomial.legendre.leggauss(z_order)
        half = 0.5 * (zmax - zmin)
        return cls(
            z_nodes=zmin + half * (x + 1.0),
            z_weights=half * w,
            phi_nodes=np.arange(phi_points) * (2.0 * math.pi / phi_points),
            phi_weight=2.0 * math.pi / phi_points,
        )


def mode_profiles(mode: ModeSpec, d: DimensionlessParams, z):
    """Reduced z-profiles (f1, f2, g1, g2) and their analytic derivatives.

    Returns ((f1, f2, g1, g2), (f1', f2', g1', g2'), N) where N is the
    normalization constant; the phi phases and e^{-iEt} are not included.
    """
    z = np.asarray(z, dtype=float)
    E = mode_energy(mode, d)
    q = mode.lam + d.beta
    zero = np.zeros_like(z, dtype=complex)
    if mode.geometry == "infinite":
        k = mode.k
        N = math.sqrt((E + d.mu) / (2.0 * E)) / math.sqrt(2.0 * math.pi)
        wave = np.exp(1j * k * z) / math.sqrt(2.0 * math.pi)
        up = wave
        dup = 1j * k * wave
        low_k = k / (E + d.mu) * wave
        dlow_k = 1j * k * low_k
        low_q = 1j * q / (E + d.mu) * wave
        dlow_q = 1j * k * low_q
        if mode.sigma > 0:
            f = (up, zero, low_k, low_q)
            df = (dup, zero, dlow_k, dlow_q)
        else:
            f = (zero, up, -low_q, -low_k)
            df = (zero, dup, -dlow_q, -dlow_k)
        return f, df, N
    kn = d.nu * mode.n
    L = d.length
    N = math.sqrt((E + d.mu) / (2.0 * E)) / math.sqrt(math.pi * L)
    s = np.sin(kn * z).astype(complex)
    c = np.cos(kn * z).astype(complex)
    ds = kn * c
    dc = -kn * s
    if mode.sigma > 0:
        f = (s, zero, -1j * kn / (E + d.mu) * c, 1j * q / (E + d.mu) * s)
        df = (ds, zero, -1j * kn / (E + d.mu) * dc, 1j * q / (E + d.mu) * ds)
    else:
        f = (zero, s, -1j * q / (E + d.mu) * s, 1j * kn / (E + d.mu) * c)
        df = (zero, ds, -1j * q / (E + d.mu) * ds, 1j * kn / (E + d.mu) * dc)
    return f, df, N


def _phase_powers(mode: ModeSpec):
    """Azimuthal phase integer+half exponents per component."""
    lo, hi = mode.lam - 0.5, mode.lam + 0.5
    if mode.sigma > 0:
        return (lo, lo, lo, hi)
    return (hi, hi, lo, hi)  # second entry is the only upper one in use


def mode_components(mode: ModeSpec, d: DimensionlessParams, t, phi, z) -> np.ndarray:
    """All four components, vectorized; shape (4,) + broadcast(t, phi, z)."""
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    z = np.asarray(z, dtype=float)
    if mode.geometry == "finite":
        L = d.length
        if np.any(z < -1e-12) or np.any(z > L + 1e-12):
            raise ValueError(f"z outside [0, L={L:.6g}] for finite geometry")
    E = mode_energy(mode, d)
    (f1, f2, g1, g2), _, N = mode_profiles(mode, d, z)
    p = _phase_powers(mode)
    tp = np.exp(-1j * E * t)
    comps = [
        N * tp * f1 * np.exp(1j * p[0] * phi),
        N * tp * f2 * np.exp(1j * p[1] * phi),
        N * tp * g1 * np.exp(1j * p[2] * phi),
        N * tp * g2 * np.exp(1j * p[3] * phi),
    ]
    return np.stack(np.broadcast_arrays(*comps))


def eval_mode(mode: ModeSpec, d: DimensionlessParams, t: float, phi: float,
              z: float) -> SpinorValue:
    """Normalized fundamental spinor U^sigma at one spacetime point."""
    return SpinorValue.from_array(mode_components(mode, d, t, phi, z))


def inner_product(a: ModeSpec, b: ModeSpec, d: DimensionlessParams,
                  rule: QuadratureRule | None = None) -> complex:
    """Relativistic scalar product R * int dphi int dz psi^dag psi'.

    Finite geometry integrates over the whole cylinder.  For the
    infinite geometry the z-integrand carries a delta(k - k') factor
    that quadrature cannot represent, so only equal-k mode pairs are
    accepted and the phi-integrated norm density is returned (1 for a
    normalized mode).
    """
    if a.geometry != b.geometry:
        raise ValueError("inner_product needs modes of the same geometry")
    if a.geometry == "infinite":
        if a.k != b.k:
            raise ValueError("infinite-geometry inner product is defined "
                             "at equal k only (norm density check)")
        rule = rule or QuadratureRule.window(0.0, 1.0, 8, 256)
        pa = mode_components(a, d, 0.0, rule.phi_nodes, 0.0)
        pb = mode_components(b, d, 0.0, rule.phi_nodes, 0.0)
        dens = np.einsum("cp,cp->p", pa.conj(), pb)
        return complex(2.0 * math.pi * rule.phi_weight * np.sum(dens))
    rule = rule or QuadratureRule.finite(d)
    pa = mode_components(a, d, 0.0, rule.phi_nodes[:, None], rule.z_nodes[None, :])
    pb = mode_components(b, d, 0.0, rule.phi_nodes[:, None], rule.z_nodes[None, :])
    dens = np.einsum("cpz,cpz->pz", pa.conj(), pb)
    return complex(rule.phi_weight * np.sum(dens @ rule.z_weights))


def dirac_residual(mode: ModeSpec, d: DimensionlessParams, z_samples,
                   energy_scale: float = 1.0) -> float:
    """Max-norm residual of the reduced 4x4 first-order system.

    The system matrix entries are (E -/+ mu), +/- i d/dz and
    +/- i(lambda+beta); derivatives are applied analytically to the
    known profiles.  energy_scale != 1 perturbs E in the matrix (only),
    which is the sensitivity knob used by the verification suite.
    """
    z = np.asarray(z_samples, dtype=float)
    E = mode_energy(mode, d) * energy_scale
    q = mode.lam + d.beta
    (f1, f2, g1, g2), (df1, df2, dg1, dg2), _ = mode_profiles(mode, d, z)
    r1 = (E - d.mu) * f1 + 1j * dg1 + 1j * q * g2
    r2 = (E - d.mu) * f2 - 1j * q * g1 - 1j * dg2
    r3 = -1j * df1 - 1j * q * f2 - (E + d.mu) * g1
    r4 = 1j * q * f1 + 1j * df2 - (E + d.mu) * g2
    return float(max(np.max(np.abs(r)) for r in (r1, r2, r3, r4)))


def k_operator_apply(mode: ModeSpec, d: DimensionlessParams, t: float,
                     phi: float, z: float) -> SpinorValue:
    """Apply K = gamma^0 (2 S3 L3 + 1/2) with L3 = -i d/dphi taken
    analytically on the known azimuthal phases."""
    comps = mode_components(mode, d, t, phi, z)
    p = _phase_powers(mode)
    spin = (0.5, -0.5, 0.5, -0.5)
    g0 = (1.0, 1.0, -1.0, -1.0)
    out = [g0[j] * (2.0 * spin[j] * p[j] + 0.5) * comps[j] for j in range(4)]
    return SpinorValue.from_array(out)


_IM_TOL = 1e-10


def current_density(psi: SpinorValue, phi: float,
                    gammas: GammaSet = STANDARD_GAMMAS):
    """Current-density triple (j0, j_phi, j3) of a spinor value.

    j0 = psi^dag psi, j_phi = psi^dag g0 g_phi psi, j3 = psi^dag g0 g3 psi.
    The bilinears are computed as full complex sandwiches; a residual
    imaginary part above 1e-10 signals a spinor construction bug and
    raises instead of being discarded.
    """
    v = psi.as_array()
    j0 = complex(v.conj() @ v)
    jphi = complex(v.conj() @ (gammas.g0 @ gammas.gamma_phi(phi)) @ v)
    j3 = complex(v.conj() @ (gammas.g0 @ gammas.g3) @ v)
    for name, val in (("j0", j0), ("jphi", jphi), ("j3", j3)):
        if abs(val.imag) > _IM_TOL:
            raise ArithmeticError(
                f"non-real current bilinear {name}: Im = {val.imag:.3e}")
    return j0.real, jphi.real, j3.real


# --- analytic test-spinor fields for operator-level checks ---------------

@dataclass(frozen=True)
class FourierSpinorField:
    """Smooth test spinor on the finite cylinder, represented term-wise.

    Each component is a finite sum of amp * e^{i p phi} * h(m nu z) with
    h in {sin, cos, one}; the restricted Dirac operator maps this class
    into itself, so derivatives stay analytic.  terms[j] is the list for
    component j.
    """

    terms: tuple[tuple[tuple[complex, float, str, int], ...], ...]

    def evaluate(self, phi, z, nu: float) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        z = np.asarray(z, dtype=float)
        shape = np.broadcast_shapes(phi.shape, z.shape)
        out = np.zeros((4,) + shape, dtype=complex)
        for j, comp in enumerate(self.terms):
            for amp, p, kind, m in comp:
                if kind == "sin":
                    h = np.sin(m * nu * z)
                elif kind == "cos":
                    h = np.cos(m * nu * z)
                else:
                    h = np.ones_like(z)
                out[j] += amp * np.exp(1j * p * phi) * h
        return out


def _d_z(term):
    amp, p, kind, m = term
    if kind == "sin":
        return (amp * m, p, "cos", m)       # times nu, applied by caller
    if kind == "cos":
        return (-amp * m, p, "sin", m)
    return (0.0 + 0.0j, p, "one", 0)


def apply_restricted_dirac(field: FourierSpinorField, d: DimensionlessParams
                           ) -> FourierSpinorField:
    """Spatial part of the restricted Dirac operator applied analytically.

    Implements gamma^phi (i d_phi - beta) + (i/2)(d_phi gamma^phi)
    + i gamma^3 d_z on a FourierSpinorField (the i gamma^0 d_t term acts
    trivially on static fields and is dropped)."""
    nu = d.nu
    beta = d.beta

    def dphi_shift(comp, shift, extra):
        # extra * e^{i shift phi} * (i d_phi - beta) applied to each term
        return [(extra * amp * (-p - beta), p + shift, kind, m)
                for amp, p, kind, m in comp]

    def mul(comp, shift, factor):
        return [(factor * amp, p + shift, kind, m) for amp, p, kind, m in comp]

    def dz(comp, factor):
        out = []
        for term in comp:
            amp, p, kind, m = _d_z(term)
            if amp != 0.0:
                out.append((factor * amp * nu, p, kind, m))
        return out

    c1, c2, c3, c4 = field.terms
    row1 = dphi_shift(c4, -1.0, -1j) + mul(c4, -1.0, -0.5j) + dz(c3, 1j)
    row2 = dphi_shift(c3, +1.0, +1j) + mul(c3, +1.0, -0.5j) + dz(c4, -1j)
    row3 = dphi_shift(c2, -1.0, +1j) + mul(c2, -1.0, +0.5j) + dz(c1, -1j)
    row4 = dphi_shift(c1, +1.0, -1j) + mul(c1, +1.0, +0.5j) + dz(c2, 1j)
    return FourierSpinorField(terms=tuple(
        tuple(row) for row in (row1, row2, row3, row4)))


def field_inner_product(a: FourierSpinorField, b: FourierSpinorField,
                        d: DimensionlessParams, rule: QuadratureRule,
                        dirac: bool = False) -> complex:
    """Quadrature scalar product of two test fields, R = 1.

    With dirac=True the integrand is the Lorentz-invariant bilinear
    a-bar b = a^dag g0 b, the product under which the restricted Dirac
    operator is self-adjoint; the plain a^dag b product (dirac=False)
    is the one mode norms use.
    """
    pa = a.evaluate(rule.phi_nodes[:, None], rule.z_nodes[None, :], d.nu)
    pb = b.evaluate(rule.phi_nodes[:, None], rule.z_nodes[None, :], d.nu)
    if dirac:
        pb = pb * np.array([1.0, 1.0, -1.0, -1.0])[:, None, None]
    dens = np.einsum("cpz,cpz->pz", pa.conj(), pb)
    return complex(rule.phi_weight * np.sum(dens @ rule.z_weights))
