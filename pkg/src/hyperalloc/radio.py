"""Link budgets: log-distance pathloss, SINR and Shannon rate."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

__all__ = [
    "RadioParams",
    "dbm_to_mw",
    "mw_to_dbm",
    "pathloss_db",
    "received_mw",
    "sinr",
    "rate_bps",
]


@dataclass(frozen=True)
class RadioParams:
    """Propagation and admission parameters shared by every scenario.

    Powers and thresholds are in dBm, losses in dB, distances in metres.
    """

    pathloss_exponent: float = 3.5
    reference_loss_db: float = 38.0
    macro_power_dbm: float = 43.0
    rrh_power_dbm: float = 24.0  # RRHs and SAPs
    d2d_power_dbm: float = 20.0
    noise_dbm: float = -104.0
    bandwidth_hz: float = 10e6
    min_rate_bps: float = 50e6
    interference_threshold_dbm: float = -80.0
    d2d_threshold_dbm: float = -90.0
    max_set_size: int = 3

    def __post_init__(self):
        if not self.pathloss_exponent > 0:
            raise ValueError(f"pathloss_exponent must be > 0, got {self.pathloss_exponent}")
        if not self.bandwidth_hz > 0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        for f in fields(self):
            x = getattr(self, f.name)
            if not np.isfinite(x):
                raise ValueError(f"{f.name} must be finite, got {x}")
        if self.max_set_size < 2:
            raise ValueError(f"max_set_size must be >= 2, got {self.max_set_size}")

    @property
    def noise_mw(self) -> float:
        return dbm_to_mw(self.noise_dbm)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RadioParams":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown radio parameters: {sorted(unknown)}")
        return cls(**d)


def dbm_to_mw(x):
    return np.power(10.0, np.asarray(x, dtype=np.float64) / 10.0)


def mw_to_dbm(x):
    return 10.0 * np.log10(np.asarray(x, dtype=np.float64))


def pathloss_db(d, params: RadioParams = RadioParams()):
    """``reference_loss_db + 10 * alpha * log10(max(d, 1 m))``."""
    d = np.maximum(np.asarray(d, dtype=np.float64), 1.0)
    out = params.reference_loss_db + 10.0 * params.pathloss_exponent * np.log10(d)
    return float(out) if out.ndim == 0 else out


def received_mw(tx_power_dbm, d, params: RadioParams = RadioParams()):
    """Received power in mW at distance ``d`` (array-friendly)."""
    return dbm_to_mw(np.asarray(tx_power_dbm) - pathloss_db(d, params))


def sinr(
    rx,
    tx,
    co_channel_txs=(),
    params: RadioParams = RadioParams(),
    tx_power_dbm: float | None = None,
    interferer_power_dbm=None,
    extra_interference_mw: float = 0.0,
) -> float:
    """Linear SINR at ``rx`` for a transmission from ``tx``.

    ``co_channel_txs`` lists the positions of simultaneous transmitters on the
    same channel. Powers default to ``params.rrh_power_dbm``;
    ``interferer_power_dbm`` may be a scalar or one value per interferer.
    """
    rx = np.asarray(rx, dtype=np.float64)
    p_sig = params.rrh_power_dbm if tx_power_dbm is None else tx_power_dbm
    signal = received_mw(p_sig, np.linalg.norm(rx - np.asarray(tx, dtype=np.float64)), params)
    txs = np.asarray(co_channel_txs, dtype=np.float64).reshape(-1, 2)
    p_int = params.rrh_power_dbm if interferer_power_dbm is None else interferer_power_dbm
    interf = received_mw(np.broadcast_to(p_int, (txs.shape[0],)), np.linalg.norm(txs - rx, axis=1), params)
    return float(signal / (params.noise_mw + extra_interference_mw + float(np.sum(interf))))


def rate_bps(sinr_linear, bandwidth_hz: float):
    """Shannon rate ``B log2(1 + SINR)``."""
    s = np.asarray(sinr_linear, dtype=np.float64)
    if np.any(s < 0):
        raise ValueError("SINR must be non-negative")
    out = bandwidth_hz * np.log2(1.0 + s)
    return float(out) if out.ndim == 0 else out
