# utils/config.py
"""
Scenario configuration files.

A scenario file is YAML with the sections environment, radio, aps,
obstacles, ga, mu and seed. Every section is validated before anything is
computed and unknown keys are rejected. Radio and GA defaults are the
small-hall values (one-slope PL0 39.87 dB, n 1.78, -5..7 dBm in 1 dB steps,
-68 dBm sensitivity, population 60, 50 generations).
"""
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from utils.errors import ConfigError


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EnvironmentSpec(_Strict):
    xMin: float = 0.0
    yMin: float = 0.0
    xMax: float
    yMax: float
    gs: float = Field(1.0, gt=0)


class RadioSpec(_Strict):
    pl0: float = 39.87
    n: float = Field(1.78, gt=0)
    gainAp: float = 3.0
    gainRx: float = 2.15
    marginShadowing: float = 7.0
    marginFading: float = 5.0
    marginInterference: float = 0.0
    thld: float = -68.0
    pMin: float = -5.0
    pMax: float = 7.0
    deltaP: float = Field(1.0, gt=0)
    apHeight: float = 2.0
    rxHeight: float = 1.4


class ApSpec(_Strict):
    x: float
    y: float


class ApGridSpec(_Strict):
    """Regular AP grid: cells no larger than ``spacing``, or an explicit columns x rows layout."""
    spacing: Optional[float] = Field(None, gt=0)
    columns: Optional[int] = Field(None, ge=1)
    rows: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _one_layout(self):
        by_count = self.columns is not None and self.rows is not None
        if (self.spacing is None) == (not by_count):
            raise ValueError("give either spacing or both columns and rows")
        return self


class ObstacleSpec(_Strict):
    x: float
    y: float
    length: float = Field(gt=0)
    width: float = Field(gt=0)
    height: float = Field(gt=0)
    lossDb: float = Field(7.37, ge=0)
    orientation: Literal["horizontal", "vertical"] = "horizontal"


class RackGeneratorSpec(_Strict):
    count: int = Field(ge=0)
    dims: Tuple[float, float, float] = (20.0, 3.0, 9.0)
    lossDb: float = Field(7.37, ge=0)
    seed: int = 0
    requireFeasible: bool = False


class GaSpec(_Strict):
    populationSize: int = Field(60, ge=2)
    elitismRate: float = Field(0.04, ge=0, le=1)
    crossoverRate: float = Field(0.7, ge=0, le=1)
    mutationRate: float = Field(0.4, ge=0, le=1)
    stopIterations: int = Field(50, ge=1)


class ScenarioConfig(_Strict):
    name: str = "scenario"
    environment: EnvironmentSpec
    radio: RadioSpec = RadioSpec()
    aps: Union[List[ApSpec], ApGridSpec]
    obstacles: Union[List[ObstacleSpec], RackGeneratorSpec] = []
    ga: GaSpec = GaSpec()
    mu: float = Field(1.0, gt=0, le=1)
    seed: int = 0


def _field_path(err: ValidationError) -> str:
    first = err.errors()[0]
    # drop pydantic's union-branch labels ("list[ApSpec]", "ApGridSpec") from the path
    parts = [str(p) for p in first["loc"] if not (isinstance(p, str) and ("[" in p or p[:1].isupper()))]
    return ".".join(parts) or "<root>"


def parse_config(data: dict) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("scenario file must contain a mapping", "<root>")
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as err:
        raise ConfigError(err.errors()[0]["msg"], _field_path(err)) from err


def load_config(path) -> ScenarioConfig:
    """Read and validate a scenario file; unreadable or malformed files raise ConfigError."""
    try:
        with open(Path(path), "r") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror or e}", "config") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed YAML in {path}: {e}", "config") from e
    return parse_config(data)
