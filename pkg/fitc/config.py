"""Configuration management for the feature term compiler."""

import hashlib
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings, read from FITC_* environment variables and .env."""

    # Compilation
    sort_check: bool = True
    feature_search: bool = True
    cyclic_print: bool = True

    # Output
    pretty: bool = False
    indent: int = 2
    truncate_depth: int = 3

    # Query execution
    unknown_predicate: Literal["fail", "error"] = "fail"
    max_solutions: int = 100
    max_steps: int = 1_000_000

    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="FITC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class CompileOptions(BaseModel):
    """The switches the compiler and the answer printer look at."""
    sort_check: bool = True
    feature_search: bool = True
    cyclic_print: bool = True
    pretty: bool = False
    indent: int = 2
    truncate_depth: int = 3

    def fingerprint(self) -> str:
        """Short stable hash of the options that change compiled output."""
        relevant = f"sort_check={self.sort_check};feature_search={self.feature_search}"
        return hashlib.sha256(relevant.encode("utf-8")).hexdigest()[:12]


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a YAML file of setting overrides."""
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping of settings")
    return data


def get_settings(config_file: Optional[str] = None, **overrides: Any) -> Settings:
    """Get application settings; file values beat the environment, overrides beat both."""
    values: Dict[str, Any] = {}
    if config_file:
        values.update(load_config_file(config_file))
    elif Path("fitc.yaml").is_file():
        values.update(load_config_file("fitc.yaml"))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)


def options_from_settings(settings: Settings) -> CompileOptions:
    return CompileOptions(
        sort_check=settings.sort_check,
        feature_search=settings.feature_search,
        cyclic_print=settings.cyclic_print,
        pretty=settings.pretty,
        indent=settings.indent,
        truncate_depth=settings.truncate_depth,
    )
