# models/radio.py
"""
One-slope indoor link budget.

    PL(d)  = PL0 + 10 n log10(max(d, 1)) + OL
    P_ij   = P_j + G - M - PL(d_ij)
    d_max  = 10 ** ((P_j + G - M - THLD - PL0) / (10 n))

The Gaussian deviation of the one-slope model is not sampled; planning
relies on the shadowing margin inside M instead. Distances are 3D (AP and
receiver heights included) and clamped to 1 m, the PL0 reference distance.
"""
import math
from dataclasses import dataclass

import numpy as np

from utils.errors import ConfigError

# Levels are 0 (off) .. n_levels; level l >= 1 transmits at p_min + (l-1)*delta_p dBm.
OFF = 0


@dataclass(frozen=True)
class RadioModel:
    pl0: float = 39.87
    n: float = 1.78
    gain_total: float = 5.15
    margin_total: float = 12.0
    thld: float = -68.0
    p_min: float = -5.0
    p_max: float = 7.0
    delta_p: float = 1.0
    ap_height: float = 2.0
    rx_height: float = 1.4

    def __post_init__(self):
        if not self.n > 0:
            raise ConfigError(f"path loss exponent must be > 0, got {self.n}", "radio.n")
        if self.p_max < self.p_min:
            raise ConfigError(f"pMax ({self.p_max}) is below pMin ({self.p_min})", "radio.pMax")
        if not self.delta_p > 0:
            raise ConfigError(f"power step must be > 0, got {self.delta_p}", "radio.deltaP")
        steps = (self.p_max - self.p_min) / self.delta_p
        if abs(steps - round(steps)) > 1e-9:
            raise ConfigError("(pMax - pMin) must be a whole number of deltaP steps", "radio.deltaP")

    @classmethod
    def from_components(cls, gain_ap: float, gain_rx: float, margin_shadowing: float,
                        margin_fading: float, margin_interference: float, **kwargs) -> "RadioModel":
        return cls(gain_total=gain_ap + gain_rx,
                   margin_total=margin_shadowing + margin_fading + margin_interference, **kwargs)

    @property
    def n_levels(self) -> int:
        """N_p, the number of powered-on levels."""
        return 1 + int(round((self.p_max - self.p_min) / self.delta_p))

    def tx_dbm(self, level):
        return self.p_min + (level - 1) * self.delta_p

    def eirp_dbm(self, level):
        """P_j + G - M, the part of P_ij that does not depend on the receiver."""
        return self.tx_dbm(level) + self.gain_total - self.margin_total

    def eirp_table(self) -> np.ndarray:
        """eirp_dbm for every level; entry 0 (off) is -inf."""
        levels = np.arange(self.n_levels + 1)
        table = self.eirp_dbm(levels).astype(float)
        table[OFF] = -np.inf
        return table


def check_power_vector(levels, ap_count: int, model: RadioModel) -> np.ndarray:
    levels = np.asarray(levels, dtype=np.int64)
    if levels.shape != (ap_count,):
        raise ValueError(f"power vector must have {ap_count} entries, got shape {levels.shape}")
    if levels.size and (levels.min() < OFF or levels.max() > model.n_levels):
        raise ValueError(f"power levels must lie in 0..{model.n_levels}")
    return levels


def full_power(ap_count: int, model: RadioModel) -> np.ndarray:
    return np.full(ap_count, model.n_levels, dtype=np.int64)


def path_loss(d, ol, model: RadioModel):
    """Path loss in dB. Works element-wise on arrays; returns float for scalars."""
    pl = model.pl0 + 10.0 * model.n * np.log10(np.maximum(d, 1.0)) + ol
    return float(pl) if np.ndim(pl) == 0 else pl


def distances_3d(ap_xyz, xs: np.ndarray, ys: np.ndarray, rx_height: float) -> np.ndarray:
    ax, ay, az = ap_xyz
    return np.sqrt((xs - ax) ** 2 + (ys - ay) ** 2 + (rx_height - az) ** 2)


def received_power(gp: int, ap: int, level: int, tables, model: RadioModel) -> float:
    """P_ij in dBm for grid position ``gp`` (0-based) and AP ``ap``."""
    if level < 1:
        raise ValueError("received power is undefined for a powered-off AP")
    return float(model.eirp_dbm(level) - tables.loss_at(gp, ap))


def d_max(level: int, model: RadioModel) -> float:
    if level == OFF:
        return 0.0
    budget = model.eirp_dbm(level) - model.thld - model.pl0
    return math.pow(10.0, budget / (10.0 * model.n))
