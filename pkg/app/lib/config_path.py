from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import List

ENV_OVERRIDE = "CLAUSETRIM_CONFIG"
SYSTEM_CONFIG = Path("/etc/clausetrim/config.yaml")
PROJECT_CONFIG_NAME = "config.yaml"


@dataclass(frozen=True)
class ConfigSource:
    path: Path
    origin: str

    @property
    def exists(self) -> bool:
        return self.path.is_file()


def config_candidates(project_root: Path) -> List[ConfigSource]:
    """Every place a settings file may come from, highest precedence first."""
    candidates = []
    override = os.getenv(ENV_OVERRIDE)
    if override:
        candidates.append(ConfigSource(Path(override).expanduser(), "env"))
    candidates.append(ConfigSource(SYSTEM_CONFIG, "system"))
    candidates.append(ConfigSource(Path(project_root) / PROJECT_CONFIG_NAME, "project"))
    return candidates


def resolve_config_source(project_root: Path) -> ConfigSource:
    """
    The env override wins even when its file is missing (load_settings then gives defaults).
    Otherwise the system file if present, else the project file.
    """
    candidates = config_candidates(project_root)
    if candidates[0].origin == "env":
        return candidates[0]
    for candidate in candidates[:-1]:
        if candidate.exists:
            return candidate
    return candidates[-1]


def resolve_config_path(project_root: Path) -> Path:
    return resolve_config_source(project_root).path
