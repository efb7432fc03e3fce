"""Scenario configuration: defaults, validation, and the YAML file format.

The defaults reproduce the base simulation setup: 50 nodes on a 750x750 m
terrain, 100 m transmission range, random waypoint motion up to 10 m/s with
30 s pauses, 100 J initial energy, 1 s broadcast interval, 500 s run.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Any, Mapping, Optional

import yaml

from .phy import PhyModel
from .weighting import WeightParams


class ConfigError(ValueError):
    """Invalid scenario configuration; `field` names the offending key."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass
class EnergyParams:
    tx_cost: float = 0.02
    rx_cost: float = 0.01
    # Heads resign below this absolute residual; the default is 20% of the
    # default initial energy.
    resign_threshold: float = 20.0


@dataclass
class ScenarioConfig:
    n: int = 50
    terrain: tuple[float, float] = (750.0, 750.0)
    vmax: float = 10.0
    range_m: float = 100.0
    pause: float = 30.0
    initial_energy: float = 100.0
    bi: int = 1
    sim_time: int = 500
    seed: int = 1
    vmin: float = 0.1
    warmup_intervals: int = 3
    weight_params: WeightParams = field(default_factory=WeightParams)
    phy: PhyModel = field(default_factory=PhyModel)
    energy: EnergyParams = field(default_factory=EnergyParams)
    diameter_cap: Optional[int] = None
    # Scripted events and test fixtures. Rounds are 1-based simulation rounds.
    node_arrivals: list[tuple[int, float, float]] = field(default_factory=list)
    link_failures: list[tuple[int, int, int]] = field(default_factory=list)
    scripted_moves: list[tuple[int, int, float, float]] = field(default_factory=list)
    positions: Optional[list[tuple[float, float]]] = None
    weight_override: Optional[dict[int, float]] = None
    initial_energy_overrides: dict[int, float] = field(default_factory=dict)

    @property
    def formation_end(self) -> int:
        """Last round of the formation message schedule (see engine)."""
        return 3 * self.bi + 4

    def validate(self) -> "ScenarioConfig":
        if self.n < 1:
            raise ConfigError("n", f"need at least one node, got {self.n}")
        if self.terrain[0] <= 0 or self.terrain[1] <= 0:
            raise ConfigError("terrain", f"sides must be positive, got {self.terrain}")
        if self.range_m <= 0:
            raise ConfigError("range_m", f"must be positive, got {self.range_m}")
        if self.vmax < 0:
            raise ConfigError("vmax", f"must be non-negative, got {self.vmax}")
        if self.vmin < 0:
            raise ConfigError("vmin", f"must be non-negative, got {self.vmin}")
        if self.pause < 0:
            raise ConfigError("pause", f"must be non-negative, got {self.pause}")
        if self.initial_energy <= 0:
            raise ConfigError("initial_energy", f"must be positive, got {self.initial_energy}")
        if self.bi < 1:
            raise ConfigError("bi", f"must be a positive whole number of rounds, got {self.bi}")
        if self.sim_time < 1:
            raise ConfigError("sim_time", f"must be at least one round, got {self.sim_time}")
        if self.warmup_intervals < 2:
            raise ConfigError(
                "warmup_intervals",
                "need at least two broadcast intervals to form rss pairs",
            )
        if self.diameter_cap is not None and self.diameter_cap < 1:
            raise ConfigError("diameter_cap", f"must be positive, got {self.diameter_cap}")
        if self.positions is not None and len(self.positions) != self.n:
            raise ConfigError(
                "positions", f"expected {self.n} entries, got {len(self.positions)}"
            )
        for idx, (rnd, x, y) in enumerate(self.node_arrivals):
            if rnd <= self.formation_end:
                raise ConfigError(
                    "node_arrivals",
                    f"entry {idx}: arrivals must land after formation "
                    f"(round > {self.formation_end}), got round {rnd}",
                )
            if not (0 <= x <= self.terrain[0] and 0 <= y <= self.terrain[1]):
                raise ConfigError("node_arrivals", f"entry {idx}: position off terrain")
        for idx, (rnd, _u, _v) in enumerate(self.link_failures):
            if rnd <= self.formation_end:
                raise ConfigError(
                    "link_failures",
                    f"entry {idx}: events must land after formation "
                    f"(round > {self.formation_end}), got round {rnd}",
                )
        for idx, (rnd, _nid, x, y) in enumerate(self.scripted_moves):
            if not (0 <= x <= self.terrain[0] and 0 <= y <= self.terrain[1]):
                raise ConfigError("scripted_moves", f"entry {idx}: position off terrain")
        try:
            WeightParams(**asdict(self.weight_params))
        except ValueError as exc:
            raise ConfigError("weight_params", str(exc)) from exc
        try:
            PhyModel(
                self.phy.reference_power, self.phy.path_loss_exponent, self.phy.noise_sigma
            )
        except ValueError as exc:
            raise ConfigError("phy", str(exc)) from exc
        if self.energy.tx_cost < 0 or self.energy.rx_cost < 0:
            raise ConfigError("energy", "message costs must be non-negative")
        if self.energy.resign_threshold < 0:
            raise ConfigError("energy", "resign_threshold must be non-negative")
        return self


_SCALAR_KEYS = {
    "n": int,
    "vmax": float,
    "range_m": float,
    "pause": float,
    "initial_energy": float,
    "bi": int,
    "sim_time": int,
    "seed": int,
    "vmin": float,
    "warmup_intervals": int,
    "diameter_cap": int,
}


def config_from_mapping(data: Mapping[str, Any]) -> ScenarioConfig:
    """Build a config from a plain mapping, e.g. a parsed YAML document."""
    cfg = ScenarioConfig()
    unknown = set(data) - set(_SCALAR_KEYS) - {
        "terrain",
        "weight_params",
        "phy",
        "energy",
        "node_arrivals",
        "link_failures",
        "scripted_moves",
        "positions",
        "weight_override",
        "initial_energy_overrides",
    }
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown configuration key")
    for key, cast in _SCALAR_KEYS.items():
        if key in data and data[key] is not None:
            try:
                setattr(cfg, key, cast(data[key]))
            except (TypeError, ValueError) as exc:
                raise ConfigError(key, f"expected {cast.__name__}, got {data[key]!r}") from exc
    if "terrain" in data:
        t = data["terrain"]
        if not isinstance(t, (list, tuple)) or len(t) != 2:
            raise ConfigError("terrain", f"expected [width, height], got {t!r}")
        cfg.terrain = (float(t[0]), float(t[1]))
    if "weight_params" in data:
        try:
            cfg.weight_params = WeightParams(**dict(data["weight_params"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError("weight_params", str(exc)) from exc
    if "phy" in data:
        try:
            cfg.phy = PhyModel(**dict(data["phy"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError("phy", str(exc)) from exc
    if "energy" in data:
        try:
            cfg.energy = EnergyParams(**dict(data["energy"]))
        except TypeError as exc:
            raise ConfigError("energy", str(exc)) from exc
    if "node_arrivals" in data:
        cfg.node_arrivals = [
            (int(r), float(x), float(y)) for r, x, y in data["node_arrivals"]
        ]
    if "link_failures" in data:
        cfg.link_failures = [(int(r), int(u), int(v)) for r, u, v in data["link_failures"]]
    if "scripted_moves" in data:
        cfg.scripted_moves = [
            (int(r), int(nid), float(x), float(y)) for r, nid, x, y in data["scripted_moves"]
        ]
    if "positions" in data and data["positions"] is not None:
        cfg.positions = [(float(x), float(y)) for x, y in data["positions"]]
    if "weight_override" in data and data["weight_override"] is not None:
        cfg.weight_override = {int(k): float(v) for k, v in data["weight_override"].items()}
    if "initial_energy_overrides" in data:
        cfg.initial_energy_overrides = {
            int(k): float(v) for k, v in data["initial_energy_overrides"].items()
        }
    return cfg.validate()


def load_config(path: str) -> ScenarioConfig:
    """Load a scenario file (YAML mapping, keys as in ScenarioConfig)."""
    with open(path) as handle:
        data = yaml.safe_load(handle)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("file", f"expected a mapping at top level, got {type(data).__name__}")
    return config_from_mapping(data)


def config_to_mapping(cfg: ScenarioConfig) -> dict[str, Any]:
    """Inverse of config_from_mapping, for echoing configs into outputs."""
    out: dict[str, Any] = {
        "n": cfg.n,
        "terrain": list(cfg.terrain),
        "vmax": cfg.vmax,
        "range_m": cfg.range_m,
        "pause": cfg.pause,
        "initial_energy": cfg.initial_energy,
        "bi": cfg.bi,
        "sim_time": cfg.sim_time,
        "seed": cfg.seed,
        "vmin": cfg.vmin,
        "warmup_intervals": cfg.warmup_intervals,
        "weight_params": asdict(cfg.weight_params),
        "phy": asdict(cfg.phy),
        "energy": asdict(cfg.energy),
    }
    if cfg.diameter_cap is not None:
        out["diameter_cap"] = cfg.diameter_cap
    if cfg.node_arrivals:
        out["node_arrivals"] = [list(e) for e in cfg.node_arrivals]
    if cfg.link_failures:
        out["link_failures"] = [list(e) for e in cfg.link_failures]
    if cfg.scripted_moves:
        out["scripted_moves"] = [list(e) for e in cfg.scripted_moves]
    if cfg.positions is not None:
        out["positions"] = [list(p) for p in cfg.positions]
    if cfg.weight_override is not None:
        out["weight_override"] = dict(cfg.weight_override)
    if cfg.initial_energy_overrides:
        out["initial_energy_overrides"] = dict(cfg.initial_energy_overrides)
    return out
