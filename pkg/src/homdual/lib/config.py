"""Singleton configuration object"""

from __future__ import annotations

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = 'HOMDUAL_'


class Settings(BaseModel):
    """Budgets and runtime switches.

    Every field can be overridden through an environment variable named
    ``HOMDUAL_<FIELD>`` (upper case), optionally placed in a ``.env`` file.
    """

    model_config = ConfigDict(frozen=True)

    exponential_budget: int = Field(default=2_000_000, gt=0)
    power_set_max_elements: int = Field(default=16, ge=1)
    power_set_tuple_budget: int = Field(default=5_000_000, gt=0)
    nuf_max_arity: int = Field(default=4, ge=3)
    nuf_table_budget: int = Field(default=4_000_000, gt=0)
    nuf_search_budget: int = Field(default=10_000_000, gt=0)
    enumeration_max_vertices: int = Field(default=5, ge=1)
    dismantle_exhaustive_limit: int = Field(default=12, ge=0)
    recheck_family_vertices: int = Field(default=8, ge=0)
    crushed_cylinder_max_n: int = Field(default=8, ge=1)
    default_seed: int = 0
    workers: int = Field(default=1, ge=1)
    progress: bool = False
    log_level: str = 'WARNING'

    def with_overrides(self, **changes) -> Settings:
        """Returns a copy with the non-None keyword arguments applied."""
        changes = {key: value for key, value in changes.items() if value is not None}
        if not changes:
            return self
        return self.model_validate({**self.model_dump(), **changes})


def settings_from_env(environ=None) -> Settings:
    """Builds settings from ``HOMDUAL_*`` variables.

    Args:
        environ (Mapping[str, str], optional): Defaults to ``os.environ``.

    Returns:
        Settings: Validated settings; pydantic coerces the string values.
    """
    environ = os.environ if environ is None else environ
    values = {}
    for name in Settings.model_fields:
        key = ENV_PREFIX + name.upper()
        if key in environ:
            values[name] = environ[key]
    return Settings.model_validate(values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    return settings_from_env()


def resolve(settings: Settings | None) -> Settings:
    return get_settings() if settings is None else settings
