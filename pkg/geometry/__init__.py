from geometry.environment import (
    HORIZONTAL,
    VERTICAL,
    Environment,
    GridArrays,
    GridPoint,
    Obstacle,
    build_grid,
    grid_arrays,
    lex_less,
)
from geometry.obstacles import los_blocked, obstacle_loss, obstacle_loss_column

__all__ = [
    "HORIZONTAL",
    "VERTICAL",
    "Environment",
    "GridArrays",
    "GridPoint",
    "Obstacle",
    "build_grid",
    "grid_arrays",
    "lex_less",
    "los_blocked",
    "obstacle_loss",
    "obstacle_loss_column",
]
