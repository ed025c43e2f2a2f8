"""Workbench configuration, loaded from YAML and validated with pydantic."""
import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from nicholsbench.core.errors import ConfigurationError

logger = logging.getLogger(__name__)


class EngineConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cutoff: int = Field(default=8, ge=1)
    root_cap: int = Field(default=500, ge=1)
    workers: int = Field(default=1, ge=1)
    # bound on the m_ij scan when q_ii is a constant that is not a root of unity
    constant_order_scan: int = Field(default=64, ge=1)


class FieldConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    transcendental: str = Field(default="t", pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")

    @field_validator("transcendental")
    @classmethod
    def _not_reserved(cls, value: str) -> str:
        if value in ("x", "ad", "z"):
            raise ValueError(f"'{value}' is reserved by the relation syntax")
        return value


class CatalogConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    M: int = Field(default=3, ge=3)
    L: int = Field(default=2, ge=2)


class LoggingConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    log_file: Optional[str] = None

    @field_validator("level", mode="before")
    @classmethod
    def _upper(cls, value: Any) -> Any:
        return value.upper() if isinstance(value, str) else value


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    save_results: bool = False
    output_dir: str = "results"


class WorkbenchConfig(BaseModel):
    """All configuration sections; every key has a default."""

    model_config = ConfigDict(extra="forbid")

    engine: EngineConfig = Field(default_factory=EngineConfig)
    field: FieldConfig = Field(default_factory=FieldConfig)
    catalog: CatalogConfig = Field(default_factory=CatalogConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


def parse_config(data: Optional[Dict[str, Any]]) -> WorkbenchConfig:
    """Validate a configuration mapping.

    Raises:
        ConfigurationError: With the pydantic message
    """
    try:
        return WorkbenchConfig.model_validate(data or {})
    except ValidationError as exc:
        raise ConfigurationError(f"invalid configuration: {exc}") from None


def load_config(path: Union[str, Path]) -> WorkbenchConfig:
    """Load and validate a YAML configuration file.

    Raises:
        ConfigurationError: If the file cannot be read or does not validate
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"invalid YAML in {path}: {exc}") from None
    if data is not None and not isinstance(data, dict):
        raise ConfigurationError(f"{path} must contain a mapping at the top level")
    config = parse_config(data)
    logger.debug("Loaded configuration from %s", path)
    return config
