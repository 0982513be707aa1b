"""Nonlinear BGK relaxation (nu/eps) * (M_f - f).

The local Maxwellian is rebuilt from the discrete moments of f each
evaluation; no conservation-enforcing correction is applied. Collision
frequency is either a constant nu0 or the local density.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, StepRejectionError
from .phase_space import maxwellian, moments

log = logging.getLogger(__name__)

FREQUENCY_MODES = ("constant", "proportional")


@dataclass
class BgkConfig:
    frequency_mode: str = "constant"
    nu0: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self):
        if self.frequency_mode not in FREQUENCY_MODES:
            raise ConfigurationError(
                f"frequency_mode must be one of {FREQUENCY_MODES}, got {self.frequency_mode!r}"
            )
        if not self.nu0 > 0:
            raise ConfigurationError(f"nu0 must be positive, got {self.nu0}")
        if not self.epsilon > 0:  # math.inf is a valid collisionless sentinel
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")


def collision_frequency(cfg, core):
    """nu per cell: the constant nu0, or the local density."""
    if cfg.frequency_mode == "constant":
        return cfg.nu0
    return core.rho


def bgk_rhs(field, cfg, mom=None):
    """(nu/eps)(maxwellian(moments(f)) - f); vacuum cells contribute zero."""
    vg = field.vgrid
    f = field.values
    if mom is None:
        mom = moments(vg, f)
    bad = ~mom.degenerate & ~(mom.T > 0)
    if np.any(bad):
        idx = int(np.argwhere(bad.ravel())[0][0])
        raise StepRejectionError(
            f"non-positive temperature in cell {idx}", index=idx
        )
    rho = np.where(mom.degenerate, 0.0, mom.rho)
    M = maxwellian(vg, rho, mom.u, mom.T)
    nu = collision_frequency(cfg, mom)
    pad = (1,) * vg.dv
    if np.ndim(nu) > 0:
        nu = np.asarray(nu).reshape(mom.rho.shape + pad)
    out = (nu / cfg.epsilon) * (M - f)
    n_deg = int(np.count_nonzero(mom.degenerate))
    if n_deg:
        out[mom.degenerate] = 0.0
        log.debug("bgk_rhs: %d vacuum cell(s) skipped", n_deg)
    return out
