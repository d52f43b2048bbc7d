import numpy as np


def dbm_to_mw(dbm):
    return np.power(10.0, np.asarray(dbm, dtype=float) / 10.0)


def mw_to_dbm(mw):
    """Milliwatts to dBm; zero power maps to -inf instead of warning."""
    mw = np.asarray(mw, dtype=float)
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(mw)


def round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def mean_dbm(dbm) -> float:
    """Mean power in dBm, averaged in milliwatts so -inf entries count as zero power."""
    mw = dbm_to_mw(dbm)
    if mw.size == 0:
        return float("nan")
    return float(mw_to_dbm(mw.mean()))
