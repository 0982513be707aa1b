"""Upwind finite-difference WENO discretization of the transport term -v.grad_x f.

Each velocity node advects with its constant speed component, so upwinding is
a sign split per node: positive speeds take the left-biased interface value,
negative speeds the right-biased (mirrored) one. The conservative interface
difference telescopes, so periodic transport conserves mass to roundoff.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# ideal (smooth-data) stencil weights d_l; stencil l reaches l cells left of center
IDEAL_WEIGHTS = {
    1: (1.0,),
    2: (2.0 / 3.0, 1.0 / 3.0),
    3: (3.0 / 10.0, 6.0 / 10.0, 1.0 / 10.0),
}

_K1312 = 13.0 / 12.0


@dataclass
class WenoConfig:
    k: int = 2
    delta: float = 1e-6

    def __post_init__(self):
        if self.k not in IDEAL_WEIGHTS:
            raise ConfigurationError(f"unsupported reconstruction order k={self.k}")
        if not (1e-7 <= self.delta <= 1e-5):
            raise ConfigurationError(
                f"delta={self.delta} outside the robust range [1e-7, 1e-5]"
            )


def ideal_weights(k):
    if k not in IDEAL_WEIGHTS:
        raise ConfigurationError(f"unsupported reconstruction order k={k}")
    return IDEAL_WEIGHTS[k]


def _betas(k, w):
    """Smoothness indicators from a left-biased window w[0..2k-2] (center at k-1)."""
    if k == 1:
        return (np.zeros_like(np.asanyarray(w[0], dtype=float)),)
    if k == 2:
        return ((w[1] - w[2]) ** 2, (w[0] - w[1]) ** 2)
    b0 = _K1312 * (w[2] - 2 * w[3] + w[4]) ** 2 + 0.25 * (3 * w[2] - 4 * w[3] + w[4]) ** 2
    b1 = _K1312 * (w[1] - 2 * w[2] + w[3]) ** 2 + 0.25 * (w[1] - w[3]) ** 2
    b2 = _K1312 * (w[0] - 2 * w[1] + w[2]) ** 2 + 0.25 * (w[0] - 4 * w[1] + 3 * w[2]) ** 2
    return (b0, b1, b2)


def _candidates(k, w):
    """Per-stencil interface values at the right edge of the center cell."""
    if k == 1:
        return (w[0],)
    if k == 2:
        return (0.5 * w[1] + 0.5 * w[2], 1.5 * w[1] - 0.5 * w[0])
    p0 = (2 * w[2] + 5 * w[3] - w[4]) / 6.0
    p1 = (-w[1] + 5 * w[2] + 2 * w[3]) / 6.0
    p2 = (2 * w[0] - 7 * w[1] + 11 * w[2]) / 6.0
    return (p0, p1, p2)


def _reconstruct_left(k, delta, w):
    d = IDEAL_WEIGHTS[k]
    betas = _betas(k, w)
    alphas = [d[l] / (delta + betas[l]) ** 2 for l in range(k)]
    total = sum(alphas)
    ps = _candidates(k, w)
    return sum(a * p for a, p in zip(alphas, ps)) / total


def smoothness_indicators(k, window):
    """Smoothness indicators beta_l of a 2k-1 window of cell values."""
    window = [np.asarray(x, dtype=float) for x in window]
    if len(window) != 2 * k - 1:
        raise ConfigurationError(f"window length {len(window)} != {2 * k - 1}")
    return tuple(np.asarray(b, dtype=float) for b in _betas(k, window))


def weno_reconstruct(cfg, window, side):
    """WENO point value at the interface from a window centered on one cell.

    side="left": window centers on the cell left of the interface (value
    biased from the left); side="right": window centers on the cell right of
    the interface, realized as the mirrored left reconstruction.
    """
    window = [np.asarray(x, dtype=float) for x in window]
    if len(window) != 2 * cfg.k - 1:
        raise ConfigurationError(f"window length {len(window)} != {2 * cfg.k - 1}")
    if side == "right":
        window = window[::-1]
    elif side != "left":
        raise ConfigurationError(f"side must be 'left' or 'right', got {side!r}")
    return _reconstruct_left(cfg.k, cfg.delta, window)


def nonlinear_weights(cfg, window, side="left"):
    """The convex weights omega_l actually used for this window."""
    window = [np.asarray(x, dtype=float) for x in window]
    if side == "right":
        window = window[::-1]
    d = IDEAL_WEIGHTS[cfg.k]
    betas = _betas(cfg.k, window)
    alphas = np.array([d[l] / (cfg.delta + betas[l]) ** 2 for l in range(cfg.k)])
    return alphas / alphas.sum(axis=0)


def _pad(sub, k, boundary):
    if boundary == "periodic":
        return np.concatenate([sub[-k:], sub, sub[:k]], axis=0)
    lo = np.repeat(sub[:1], k, axis=0)
    hi = np.repeat(sub[-1:], k, axis=0)
    return np.concatenate([lo, sub, hi], axis=0)


def _interface_values(P, k, delta, biased_left):
    """All I+1 interface values from a padded array (spatial axis 0, length I+2k)."""
    n = P.shape[0] - 2 * k
    C = [P[r : r + n + 1] for r in range(2 * k)]
    win = C[: 2 * k - 1] if biased_left else C[2 * k - 1 : 0 : -1]
    return _reconstruct_left(k, delta, win)


def transport_rhs(field, cfg):
    """-v.grad_x f with upwind WENO interface fluxes, all spatial axes."""
    sg, vg = field.sgrid, field.vgrid
    if vg.dv < sg.dx_dims:
        raise ConfigurationError("velocity dimension must cover every transported axis")
    f = field.values
    out = np.zeros_like(f)
    for a in range(sg.dx_dims):
        if sg.counts[a] < 2 * cfg.k - 1:
            raise ConfigurationError(
                f"axis {a}: {sg.counts[a]} cells < stencil width {2 * cfg.k - 1}"
            )
        va = sg.dx_dims + a  # array axis of the matching velocity component
        speeds = vg.axes[a]
        n_neg = int(np.searchsorted(speeds, 0.0))
        h = sg.spacings[a]
        fa = np.moveaxis(f, a, 0)
        oa = np.moveaxis(out, a, 0)
        for sl, biased_left in ((slice(0, n_neg), False), (slice(n_neg, None), True)):
            v_part = speeds[sl]
            if v_part.size == 0:
                continue
            key = [slice(None)] * fa.ndim
            key[va] = sl
            key = tuple(key)
            P = _pad(fa[key], cfg.k, sg.boundaries[a])
            fhat = _interface_values(P, cfg.k, cfg.delta, biased_left)
            vb = v_part.reshape([-1 if i == va else 1 for i in range(fa.ndim)])
            oa[key] -= vb * (fhat[1:] - fhat[:-1]) / h
    return out
