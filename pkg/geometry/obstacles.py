"""
Line-of-sight blockage between an AP and a receiver, and the accumulated
obstacle loss along that line.

An obstacle blocks the link when any part of its box touches the straight
segment from the top of the AP to the top of the receiver. The test is the
slab (parametric clipping) method with inclusive boundaries.
"""
from typing import Sequence, Tuple

import numpy as np

from geometry.environment import Environment, GridPoint, Obstacle

Point3 = Tuple[float, float, float]


def segment_hits_box(p0: Point3, p1: Point3, lo: Point3, hi: Point3) -> bool:
    t_enter, t_exit = 0.0, 1.0
    for a in range(3):
        d = p1[a] - p0[a]
        if d == 0.0:
            if p0[a] < lo[a] or p0[a] > hi[a]:
                return False
            continue
        ta = (lo[a] - p0[a]) / d
        tb = (hi[a] - p0[a]) / d
        if ta > tb:
            ta, tb = tb, ta
        t_enter = max(t_enter, ta)
        t_exit = min(t_exit, tb)
        if t_enter > t_exit:
            return False
    return True


def los_blocked(gp: GridPoint, rx_height: float, ap: int, env: Environment, obstacle: Obstacle) -> bool:
    """beta_ij^k: does ``obstacle`` cut the AP-j to GP-i segment?"""
    lo, hi = obstacle.box
    return segment_hits_box(env.ap_xyz(ap), (gp.x, gp.y, rx_height), lo, hi)


def obstacle_loss(gp: GridPoint, ap: int, env: Environment) -> float:
    """OL_ij in dB, summed over obstacles in their list order."""
    total = 0.0
    for ob in env.obstacles:
        if los_blocked(gp, env.rx_height, ap, env, ob):
            total += ob.loss_db
    return total


def segments_hit_box(p0: Point3, xs: np.ndarray, ys: np.ndarray, z1: float,
                     lo: Point3, hi: Point3) -> np.ndarray:
    """Vectorised :func:`segment_hits_box` from one AP to many receivers.

    Uses the same arithmetic as the scalar version so both agree bit for bit.
    """
    n = xs.shape[0]
    t_enter = np.zeros(n)
    t_exit = np.ones(n)
    hit = np.ones(n, dtype=bool)
    ends = (xs, ys, np.full(n, z1))
    with np.errstate(divide="ignore", invalid="ignore"):
        for a in range(3):
            d = ends[a] - p0[a]
            flat = d == 0.0
            outside = (p0[a] < lo[a]) | (p0[a] > hi[a])
            hit &= ~(flat & outside)
            ta = (lo[a] - p0[a]) / d
            tb = (hi[a] - p0[a]) / d
            swap = ta > tb
            ta, tb = np.where(swap, tb, ta), np.where(swap, ta, tb)
            t_enter = np.where(flat, t_enter, np.maximum(t_enter, ta))
            t_exit = np.where(flat, t_exit, np.minimum(t_exit, tb))
    return hit & (t_enter <= t_exit)


def obstacle_loss_column(env: Environment, ap: int, xs: np.ndarray, ys: np.ndarray,
                         obstacles: Sequence[Obstacle] = None) -> np.ndarray:
    """OL_ij for one AP against every receiver position in (xs, ys)."""
    obstacles = env.obstacles if obstacles is None else obstacles
    ol = np.zeros(xs.shape[0])
    p0 = env.ap_xyz(ap)
    for ob in obstacles:
        lo, hi = ob.box
        ol = ol + np.where(segments_hit_box(p0, xs, ys, env.rx_height, lo, hi), ob.loss_db, 0.0)
    return ol
