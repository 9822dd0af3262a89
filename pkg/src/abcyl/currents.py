"""Circular and longitudinal currents of modes, mixed states and packets.

Currents are reported as the dimensionless product R*I; divide by
radius_natural for the physical value.  The closed forms are

    mode:    R*I^c = chi(n, lambda) / (2 pi),
             chi = (beta+lambda)/sqrt(mu^2 + nu^2 n^2 + (beta+lambda)^2)
    packet:  R*I^c = (lambda+beta)/(2 pi) * int dk (|a+|^2+|a-|^2)/(R E_k)

and every closed form here has a spinor-bilinear quadrature oracle next
to it.  The longitudinal packet current exists twice on purpose: the
direct bilinear evaluation is authoritative, the printed double-integral
formula is kept for comparison (see longitudinal_current_packet_formula).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DimensionlessParams
from .spectrum import ModeSpec, energy_infinite, energy_finite
from .spinors import QuadratureRule, mode_components

__all__ = [
    "MixedState",
    "GaussianPacket",
    "TabulatedPacket",
    "MomentumRule",
    "ResolutionError",
    "chi",
    "circular_current_mode",
    "circular_current_mode_quadrature",
    "packet_grid",
    "circular_current_packet",
    "packet_energy",
    "packet_polarization",
    "packet_zprofile",
    "longitudinal_current_packet_direct",
    "longitudinal_current_packet_formula",
    "packet_norm",
    "packet_total_flux",
    "packet_velocity_expectation",
]

_NORM_TOL = 1e-10


@dataclass(frozen=True)
class MixedState:
    """Normalized combination c+ U^+ + c- U^- of one finite (n, lambda)."""

    n: int
    lam: float
    c_plus: complex
    c_minus: complex

    def __post_init__(self):
        norm = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(norm - 1.0) > 1e-13:
            raise ValueError(f"|c+|^2 + |c-|^2 = {norm!r}, must be 1")


@dataclass(frozen=True)
class GaussianPacket:
    """Gaussian momentum-space amplitudes of one angular momentum lambda.

    a+(k) = weight_plus * g(k), a-(k) = weight_minus * g(k) with
    g(k) = exp(-(k-k0)^2 / (2 w^2)); k and w are the dimensionless
    products kR and wR.  The overall scale is fixed by normalization.
    """

    lam: float
    k0: float
    width: float
    weight_plus: complex = 1.0
    weight_minus: complex = 0.0
    normalize: bool = True

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")
        if abs(self.weight_plus) + abs(self.weight_minus) == 0:
            raise ValueError("empty packet")

    def raw_amplitudes(self, k: np.ndarray):
        g = np.exp(-((k - self.k0) ** 2) / (2.0 * self.width**2))
        return self.weight_plus * g, self.weight_minus * g


@dataclass(frozen=True)
class TabulatedPacket:
    """Amplitudes sampled on a fixed momentum grid (trapezoid weights)."""

    lam: float
    k_grid: tuple[float, ...]
    a_plus: tuple[complex, ...]
    a_minus: tuple[complex, ...]
    normalize: bool = True


PacketSpec = GaussianPacket | TabulatedPacket


@dataclass(frozen=True)
class MomentumRule:
    """Gauss-Legendre momentum quadrature; window is +/- window_sigmas
    packet widths around the center (Gaussian packets only)."""

    order: int = 400
    window_sigmas: float = 8.0


class ResolutionError(ValueError):
    """Momentum grid too coarse to resolve the phase at (t, z)."""

    def __init__(self, spacing: float, required: float, min_points: int):
        self.spacing = spacing
        self.required = required
        self.min_points = min_points
        super().__init__(
            f"momentum grid spacing {spacing:.3e} exceeds the resolution "
            f"bound {required:.3e}; use at least {min_points} points")


def chi(n: int, lam: float, d: DimensionlessParams) -> float:
    """Shape function of the circular currents, in (-1, 1)."""
    if d.nu <= 0.0:
        raise ValueError("chi is defined for the finite geometry (nu > 0)")
    q = d.beta + lam
    return q / math.sqrt(d.mu**2 + (d.nu * n) ** 2 + q**2)


def circular_current_mode(state: MixedState, d: DimensionlessParams) -> float:
    """R*I^c of a mixed state; independent of the mixing by construction,
    and the API takes the full state deliberately so tests can assert
    that the output is bitwise identical across mixings."""
    return chi(state.n, state.lam, d) / (2.0 * math.pi)


def _mixed_components(state: MixedState, d: DimensionlessParams, t, phi, z):
    up = ModeSpec(geometry="finite", n=state.n, lam=state.lam, sigma=0.5)
    dn = ModeSpec(geometry="finite", n=state.n, lam=state.lam, sigma=-0.5)
    return (state.c_plus * mode_components(up, d, t, phi, z)
            + state.c_minus * mode_components(dn, d, t, phi, z))


def circular_current_mode_quadrature(state: MixedState, d: DimensionlessParams,
                                     rule: QuadratureRule | None = None,
                                     t: float = 0.0) -> float:
    """Brute-force oracle: (1/2pi) int dphi int dz j^phi over the
    mixed-state spinor, j^phi = psi^dag g0 g_phi psi."""
    rule = rule or QuadratureRule.finite(d)
    phi = rule.phi_nodes[:, None]
    psi = _mixed_components(state, d, t, phi, rule.z_nodes[None, :])
    c1, c2, c3, c4 = psi
    # psi^dag g0 gamma_phi psi with the phi dependence written out
    jphi = 2.0 * np.real(-1j * np.exp(-1j * phi) * np.conj(c1) * c4
                         + 1j * np.exp(1j * phi) * np.conj(c2) * c3)
    val = rule.phi_weight * np.sum(jphi @ rule.z_weights)
    return float(val / (2.0 * math.pi))


# --- packets on the infinite cylinder ------------------------------------

def packet_grid(p: PacketSpec, rule: MomentumRule | None = None):
    """Momentum nodes, weights and normalized amplitudes (k, w, a+, a-)."""
    rule = rule or MomentumRule()
    if isinstance(p, GaussianPacket):
        x, w = np.polynomial.legendre.leggauss(rule.order)
        half = rule.window_sigmas * p.width
        k = p.k0 + half * x
        wk = half * w
        ap, am = p.raw_amplitudes(k)
    else:
        k = np.asarray(p.k_grid, dtype=float)
        ap = np.asarray(p.a_plus, dtype=complex)
        am = np.asarray(p.a_minus, dtype=complex)
        wk = np.gradient(k)  # trapezoid-style weights on the given grid
    norm = np.sum(wk * (np.abs(ap) ** 2 + np.abs(am) ** 2))
    if p.normalize:
        scale = 1.0 / math.sqrt(norm)
        ap, am = ap * scale, am * scale
    elif abs(norm - 1.0) > _NORM_TOL:
        raise ValueError(f"packet is not normalized: int |a|^2 dk = {norm!r}")
    return k, wk, ap, am


def _packet_energies(p: PacketSpec, k: np.ndarray, d: DimensionlessParams):
    q = p.lam + d.beta
    return np.sqrt(d.mu**2 + k**2 + q**2)


def circular_current_packet(p: PacketSpec, d: DimensionlessParams,
                            rule: MomentumRule | None = None) -> float:
    """Closed-form R*I^c of a packet state."""
    k, wk, ap, am = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    dens = np.abs(ap) ** 2 + np.abs(am) ** 2
    return float((p.lam + d.beta) / (2.0 * math.pi) * np.sum(wk * dens / E))


def packet_energy(p: PacketSpec, d: DimensionlessParams,
                  rule: MomentumRule | None = None) -> float:
    """Expectation value R*E of the packet energy."""
    k, wk, ap, am = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    return float(np.sum(wk * E * (np.abs(ap) ** 2 + np.abs(am) ** 2)))


def packet_polarization(p: PacketSpec,
                        rule: MomentumRule | None = None) -> float:
    """Polarization degree lambda * int dk (|a+|^2 - |a-|^2)."""
    k, wk, ap, am = packet_grid(p, rule)
    return float(p.lam * np.sum(wk * (np.abs(ap) ** 2 - np.abs(am) ** 2)))


def packet_velocity_expectation(p: PacketSpec, d: DimensionlessParams,
                                rule: MomentumRule | None = None) -> float:
    """Mode-wise longitudinal velocity expectation int dk |a|^2 k/E."""
    k, wk, ap, am = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    return float(np.sum(wk * (np.abs(ap) ** 2 + np.abs(am) ** 2) * k / E))


def check_resolution(p: PacketSpec, rule: MomentumRule | None, d, t, z) -> None:
    """Reject grids that cannot resolve the e^{i(kz - Et)} phase."""
    k, wk, _, _ = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    vmax = float(np.max(np.abs(k) / E))
    reach = abs(t) * vmax + float(np.max(np.abs(z)))
    if reach == 0.0:
        return
    spacing = float(np.max(np.diff(np.sort(k))))
    required = math.pi / (4.0 * reach)
    if spacing > required:
        min_points = math.ceil(len(k) * spacing / required)
        raise ResolutionError(spacing, required, min_points)


def packet_zprofile(p: PacketSpec, d: DimensionlessParams, t, z,
                    rule: MomentumRule | None = None) -> np.ndarray:
    """Reduced z-profiles h_j(t, z) of the packet spinor, shape (4, len(z)).

    The full spinor is psi_j = e^{i p_j phi} h_j with azimuthal phases
    p = (lambda-1/2, lambda+1/2, lambda-1/2, lambda+1/2).
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    k, wk, ap, am = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    q = p.lam + d.beta
    C = np.sqrt((E + d.mu) / (2.0 * E)) / (2.0 * math.pi)
    phase = np.exp(1j * (np.outer(z, k) - t * E[None, :]))  # (Nz, Nk)
    low = C / (E + d.mu)
    h1 = phase @ (wk * ap * C)
    h2 = phase @ (wk * am * C)
    h3 = phase @ (wk * low * (ap * k - 1j * q * am))
    h4 = phase @ (wk * low * (1j * q * ap - am * k))
    return np.stack([h1, h2, h3, h4])


def longitudinal_current_packet_direct(p: PacketSpec, d: DimensionlessParams,
                                       t: float, z,
                                       rule: MomentumRule | None = None,
                                       phi_points: int = 64) -> np.ndarray:
    """Authoritative longitudinal current R int dphi j^3 at (t, z).

    Builds the packet spinor by momentum quadrature and integrates the
    bilinear psi^dag g0 g3 psi over phi.  Raises ResolutionError when
    the momentum grid cannot resolve the phase at the requested point.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    check_resolution(p, rule, d, t, z)
    h = packet_zprofile(p, d, t, z, rule)
    phi = np.arange(phi_points) * (2.0 * math.pi / phi_points)
    lamm, lamp = p.lam - 0.5, p.lam + 0.5
    psi = np.stack([
        np.exp(1j * lamm * phi)[:, None] * h[0][None, :],
        np.exp(1j * lamp * phi)[:, None] * h[1][None, :],
        np.exp(1j * lamm * phi)[:, None] * h[2][None, :],
        np.exp(1j * lamp * phi)[:, None] * h[3][None, :],
    ])
    # psi^dag g0 g3 psi = c1* c3 + c3* c1 - c2* c4 - c4* c2
    j3 = (np.conj(psi[0]) * psi[2] + np.conj(psi[2]) * psi[0]
          - np.conj(psi[1]) * psi[3] - np.conj(psi[3]) * psi[1])
    integ = (2.0 * math.pi / phi_points) * np.sum(j3, axis=0)
    if np.max(np.abs(integ.imag)) > _NORM_TOL:
        raise ArithmeticError(
            f"non-real longitudinal bilinear: Im = {np.max(np.abs(integ.imag)):.3e}")
    return integ.real


def longitudinal_current_packet_formula(p: PacketSpec, d: DimensionlessParams,
                                        t: float, z,
                                        rule: MomentumRule | None = None
                                        ) -> np.ndarray:
    """The printed double-integral form of the packet longitudinal current.

    Evaluated verbatim on the tensor momentum grid: prefactor 1/(4 pi),
    bracket [k E' + k' E + mu (E + E')] on the like-polarization terms
    and the cross term -i (lambda+beta)(E - E') on the mixed ones.  On
    the diagonal k = k' the bracket does not reduce to the single-mode
    flux k/E of the bilinear, so this routine is for comparison against
    longitudinal_current_packet_direct, never an oracle in itself.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    check_resolution(p, rule, d, t, z)
    k, wk, ap, am = packet_grid(p, rule)
    E = _packet_energies(p, k, d)
    q = p.lam + d.beta
    Ek, Ekp = E[:, None], E[None, :]
    kk, kkp = k[:, None], k[None, :]
    denom = np.sqrt(Ek * Ekp * (Ek + d.mu) * (Ekp + d.mu))
    bracket = kk * Ekp + kkp * Ek + d.mu * (Ek + Ekp)
    like = np.conj(ap)[:, None] * ap[None, :] + np.conj(am)[:, None] * am[None, :]
    cross = np.conj(ap)[:, None] * am[None, :] + np.conj(am)[:, None] * ap[None, :]
    core = (bracket * like - 1j * q * (Ek - Ekp) * cross) / denom
    wmat = wk[:, None] * wk[None, :]
    out = np.empty(z.shape, dtype=complex)
    for i, zi in enumerate(z):
        phase = np.exp(1j * (t * (Ek - Ekp) - zi * (kk - kkp)))
        out[i] = np.sum(wmat * phase * core) / (4.0 * math.pi)
    if np.max(np.abs(out.imag)) > 1e-8 * (1.0 + np.max(np.abs(out.real))):
        raise ArithmeticError("double-integral current came out non-real")
    return out.real


def packet_norm(p: PacketSpec, d: DimensionlessParams, t: float,
                z_window: float, rule: MomentumRule | None = None,
                z_order: int = 1200, phi_points: int = 64) -> float:
    """Packet norm by direct (phi, z) quadrature of j^0 = psi^dag psi."""
    zr = QuadratureRule.window(-z_window, z_window, z_order, phi_points)
    h = packet_zprofile(p, d, t, zr.z_nodes, rule)
    dens = np.sum(np.abs(h) ** 2, axis=0)          # phi-independent
    per_phi = dens @ zr.z_weights
    return float(zr.phi_weight * len(zr.phi_nodes) * per_phi)


def packet_total_flux(p: PacketSpec, d: DimensionlessParams, t: float,
                      z_window: float, rule: MomentumRule | None = None,
                      z_order: int = 1200, phi_points: int = 64) -> float:
    """z-integral of the direct longitudinal current over a wide window."""
    zr = QuadratureRule.window(-z_window, z_window, z_order, phi_points)
    i3 = longitudinal_current_packet_direct(p, d, t, zr.z_nodes, rule,
                                            phi_points=phi_points)
    return float(i3 @ zr.z_weights)
