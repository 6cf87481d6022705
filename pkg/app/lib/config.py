from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .exact_search import SearchBudget

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class SearchConfig:
    max_clauses: int = 24
    max_nodes: int = 200_000
    time_cap_seconds: float = 60.0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchConfig":
        config = cls(
            max_clauses=int(data.get("max_clauses", 24)),
            max_nodes=int(data.get("max_nodes", 200_000)),
            time_cap_seconds=float(data.get("time_cap_seconds", 60.0)),
        )
        if config.max_clauses < 0 or config.max_nodes <= 0:
            raise ValueError("search.max_clauses must be >= 0 and search.max_nodes > 0")
        if config.time_cap_seconds <= 0:
            raise ValueError("search.time_cap_seconds must be positive")
        return config

    def budget(self) -> SearchBudget:
        return SearchBudget(
            max_clauses=self.max_clauses,
            max_nodes=self.max_nodes,
            time_cap=self.time_cap_seconds,
        )


@dataclass
class GeneratorConfig:
    """Defaults for random source instances; sizes stay inside the exact search budget."""

    seed: int = 0
    nodes: int = 5
    edge_probability: float = 0.4
    sat_vars: int = 3
    sat_clauses: int = 3
    attempts: int = 200

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GeneratorConfig":
        config = cls(
            seed=int(data.get("seed", 0)),
            nodes=int(data.get("nodes", 5)),
            edge_probability=float(data.get("edge_probability", 0.4)),
            sat_vars=int(data.get("sat_vars", 3)),
            sat_clauses=int(data.get("sat_clauses", 3)),
            attempts=int(data.get("attempts", 200)),
        )
        if not 0.0 <= config.edge_probability <= 1.0:
            raise ValueError("generator.edge_probability must be within [0, 1]")
        if config.attempts <= 0:
            raise ValueError("generator.attempts must be positive")
        return config


@dataclass
class LoggingConfig:
    level: str = "WARNING"
    debug_dir: Optional[Path] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LoggingConfig":
        level = str(data.get("level") or "WARNING").upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"logging.level must be one of {', '.join(LOG_LEVELS)}")
        debug_dir = data.get("debug_dir")
        return cls(
            level=level,
            debug_dir=None if debug_dir in (None, "", "null") else Path(str(debug_dir)),
        )


@dataclass
class AnalysisSettings:
    search: SearchConfig = field(default_factory=SearchConfig)
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "AnalysisSettings":
        data = data or {}
        return cls(
            search=SearchConfig.from_dict(data.get("search") or {}),
            generator=GeneratorConfig.from_dict(data.get("generator") or {}),
            logging=LoggingConfig.from_dict(data.get("logging") or {}),
        )


def load_settings(file_path: Union[str, Path, None]) -> AnalysisSettings:
    """Read a YAML settings file; a missing file gives the defaults."""
    if file_path is None:
        return AnalysisSettings()
    path = Path(file_path)
    if not path.exists():
        return AnalysisSettings()
    with open(path, "r", encoding="utf-8") as file:
        data = yaml.safe_load(file)
    return AnalysisSettings.from_dict(data)
