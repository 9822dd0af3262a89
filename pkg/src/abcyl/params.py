"""Conversion of physical device parameters to the dimensionless groups.

Everything downstream works in natural units (hbar = c = 1) with all
lengths measured in units of the cylinder radius R.  The four groups are

    mu    = M R               (rest energy x radius)
    nu    = pi R / L          (0 encodes the infinite cylinder)
    beta  = e B R^2 / 2       (flux parameter)
    alpha = R sqrt(E_F (E_F + 2M))   (Fermi-condition radius)

Only this module and the CLI ever see eV, nm or tesla.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "HBARC_EV_NM",
    "E_OVER_2HBAR_PER_NM2_T",
    "PhysicalParams",
    "DimensionlessParams",
    "RegimeThresholds",
    "RegimeReport",
    "to_dimensionless",
    "validate_regime",
    "parse_config_text",
    "resolve_params",
]

# CODATA 2018.  hbar*c in eV nm; e/(2 hbar) in 1/(nm^2 T), computed from
# e = 1.602176634e-19 C and hbar = 1.054571817e-34 J s.
HBARC_EV_NM = 197.3269804
_E_CHARGE_C = 1.602176634e-19
_HBAR_J_S = 1.054571817e-34
E_OVER_2HBAR_PER_NM2_T = _E_CHARGE_C / (2.0 * _HBAR_J_S) * 1e-18


@dataclass(frozen=True)
class PhysicalParams:
    """Device parameters in laboratory units.

    length_nm is None for the infinite cylinder.
    """

    mass_eV: float
    radius_nm: float
    fermi_eV: float = 0.0
    length_nm: float | None = None
    b_field_T: float = 0.0

    def __post_init__(self):
        if not self.mass_eV > 0:
            raise ValueError(f"mass_eV must be positive, got {self.mass_eV}")
        if not self.radius_nm > 0:
            raise ValueError(f"radius_nm must be positive, got {self.radius_nm}")
        if self.fermi_eV < 0:
            raise ValueError(f"fermi_eV must be non-negative, got {self.fermi_eV}")
        if self.length_nm is not None and not self.length_nm > 0:
            raise ValueError(f"length_nm must be positive, got {self.length_nm}")


@dataclass(frozen=True)
class DimensionlessParams:
    """The parameter bundle every formula consumes.

    radius_natural is R in natural-unit length (1/eV); it only matters
    when converting dimensionless currents R*I back to physical ones.
    """

    mu: float
    nu: float = 0.0
    beta: float = 0.0
    alpha: float = 0.0
    radius_natural: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.nu < 0:
            raise ValueError(f"nu must be non-negative, got {self.nu}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")

    @property
    def infinite(self) -> bool:
        return self.nu == 0.0

    @property
    def length(self) -> float:
        """Cylinder length L in units of R (requires nu > 0)."""
        if self.nu == 0.0:
            raise ValueError("infinite cylinder has no length")
        return math.pi / self.nu


def to_dimensionless(p: PhysicalParams) -> DimensionlessParams:
    """Form mu, nu, beta, alpha from lab-unit device parameters."""
    mu = p.mass_eV * p.radius_nm / HBARC_EV_NM
    nu = 0.0 if p.length_nm is None else math.pi * p.radius_nm / p.length_nm
    beta = p.b_field_T * p.radius_nm**2 * E_OVER_2HBAR_PER_NM2_T
    alpha = p.radius_nm * math.sqrt(p.fermi_eV * (p.fermi_eV + 2.0 * p.mass_eV)) / HBARC_EV_NM
    return DimensionlessParams(
        mu=mu, nu=nu, beta=beta, alpha=alpha,
        radius_natural=p.radius_nm / HBARC_EV_NM,
    )


@dataclass(frozen=True)
class RegimeThresholds:
    """Engineering thresholds; the source formulas only say "very short"
    (1 << nu) and "non-relativistic" (alpha << mu), so these are
    configurable choices, not derived numbers."""

    short_nu_min: float = 10.0
    nonrel_alpha_over_mu: float = 0.1


@dataclass(frozen=True)
class RegimeReport:
    flags: frozenset[str]
    thresholds: RegimeThresholds = field(default_factory=RegimeThresholds)

    def __contains__(self, flag: str) -> bool:
        return flag in self.flags


def validate_regime(d: DimensionlessParams,
                    thresholds: RegimeThresholds | None = None) -> RegimeReport:
    """Classify the parameter point.

    short:      nu >= short_nu_min and nu < alpha < 2 nu (single n column)
    ring-like:  nu > alpha (no longitudinal state fits below the Fermi level)
    non-relativistic: alpha <= nonrel_alpha_over_mu * mu
    """
    th = thresholds or RegimeThresholds()
    flags = set()
    if d.nu >= th.short_nu_min and d.nu < d.alpha < 2.0 * d.nu:
        flags.add("short")
    if d.nu > d.alpha:
        flags.add("ring-like")
    if d.alpha <= th.nonrel_alpha_over_mu * d.mu:
        flags.add("non-relativistic")
    return RegimeReport(flags=frozenset(flags), thresholds=th)


# --- plain-text key=value configuration ---------------------------------

_PHYSICAL_KEYS = ("mass_eV", "radius_nm", "length_nm", "b_field_T", "fermi_eV")
_DIMLESS_KEYS = ("mu", "nu", "beta", "alpha")

# each dimensionless quantity conflicts with the physical key that drives it
_CONFLICTS = {
    "mu": "mass_eV",
    "nu": "length_nm",
    "beta": "b_field_T",
    "alpha": "fermi_eV",
}


class ConfigError(ValueError):
    """Malformed or contradictory configuration."""


def parse_config_text(text: str) -> dict[str, float]:
    """Parse UTF-8 key=value lines; '#' starts a comment."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _PHYSICAL_KEYS and key not in _DIMLESS_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = float(value.strip())
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad number for {key}: {value.strip()!r}") from exc
    return out


def resolve_params(values: dict[str, float]) -> DimensionlessParams:
    """Build DimensionlessParams from a mixed key=value mapping.

    Direct dimensionless keys take precedence; giving both a
    dimensionless key and the physical key that determines it is an
    error.  Physical keys require radius_nm and mass_eV to convert.
    """
    unknown = set(values) - set(_PHYSICAL_KEYS) - set(_DIMLESS_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    for dkey, pkey in _CONFLICTS.items():
        if dkey in values and pkey in values:
            raise ConfigError(f"give either {dkey} or {pkey}, not both")

    def _radius_nm() -> float:
        if "radius_nm" not in values:
            raise ConfigError("physical keys require radius_nm")
        return values["radius_nm"]

    if "mu" in values:
        mu = values["mu"]
    elif "mass_eV" in values:
        mu = values["mass_eV"] * _radius_nm() / HBARC_EV_NM
    else:
        raise ConfigError("need mu, or mass_eV with radius_nm")

    if "nu" in values:
        nu = values["nu"]
    elif "length_nm" in values:
        nu = math.pi * _radius_nm() / values["length_nm"]
    else:
        nu = 0.0

    if "beta" in values:
        beta = values["beta"]
    elif "b_field_T" in values:
        beta = values["b_field_T"] * _radius_nm() ** 2 * E_OVER_2HBAR_PER_NM2_T
    else:
        beta = 0.0

    if "alpha" in values:
        alpha = values["alpha"]
    elif "fermi_eV" in values:
        ef = values["fermi_eV"]
        if "mass_eV" not in values:
            raise ConfigError("fermi_eV requires mass_eV")
        alpha = _radius_nm() * math.sqrt(ef * (ef + 2.0 * values["mass_eV"])) / HBARC_EV_NM
    else:
        alpha = 0.0

    radius_natural = (values["radius_nm"] / HBARC_EV_NM
                      if "radius_nm" in values else 1.0)
    return DimensionlessParams(mu=mu, nu=nu, beta=beta, alpha=alpha,
                               radius_natural=radius_natural)
