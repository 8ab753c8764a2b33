# app/config.py
from dataclasses import dataclass, replace
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.utils.errors import ConfigError


@dataclass(frozen=True)
class Caps:
    """Largest graph orders accepted by the exhaustive searches."""

    brute_force: int = 16
    path_cover: int = 12
    enumeration: int = 7
    enumeration_big: int = 8
    labeled_enumeration: int = 6
    trees: int = 16
    t_plus_e: int = 10


_CAP_KEYS = {
    "brute": "brute_force",
    "brute_force": "brute_force",
    "path_cover": "path_cover",
    "enumeration": "enumeration",
    "enumerate": "enumeration",
    "trees": "trees",
    "t_plus_e": "t_plus_e",
}


def parse_caps(raw: Optional[str], base: Caps) -> Caps:
    """
    Apply a DIMFORCE_CAPS override string to `base`.

    Accepted forms: "14" (brute force and path cover) or
    "brute=14,path_cover=10,enumeration=6".
    """
    if raw is None or not raw.strip():
        return base
    raw = raw.strip()
    if raw.isdigit():
        value = int(raw)
        return replace(base, brute_force=value, path_cover=value)
    updates = {}
    for token in raw.split(","):
        key, sep, value = token.partition("=")
        key = key.strip().lower()
        if not sep or key not in _CAP_KEYS or not value.strip().isdigit():
            raise ConfigError(
                f"bad DIMFORCE_CAPS token {token!r}; expected N or "
                "brute=N,path_cover=N,enumeration=N,trees=N,t_plus_e=N"
            )
        updates[_CAP_KEYS[key]] = int(value)
    return replace(base, **updates)


class Settings(BaseSettings):
    # App
    ENV: str = Field("dev", description="Environment (dev|prod)")
    LOG_LEVEL: str = Field("info", description="Logging level")
    API_HOST: str = Field("127.0.0.1", description="Host for the HTTP surface")
    API_PORT: int = Field(8000, description="Port for the HTTP surface")

    # Search caps
    BRUTE_FORCE_CAP: int = Field(16, description="Largest n for brute-force dim and Z")
    PATH_COVER_CAP: int = Field(12, description="Largest n for brute-force path cover")
    ENUMERATION_CAP: int = Field(7, description="Largest n for all-connected-graph enumeration")
    ENUMERATION_BIG_CAP: int = Field(8, description="Enumeration limit unlocked by --big")
    LABELED_ENUMERATION_CAP: int = Field(6, description="Largest n for labeled graph enumeration")
    TREE_ENUMERATION_CAP: int = Field(16, description="Largest n for all_trees enumeration")
    T_PLUS_E_CAP: int = Field(10, description="Largest tree order for t_plus_e enumeration")
    CAPS: Optional[str] = Field(None, description="Override string, e.g. '14' or 'brute=14,path_cover=10'")

    # Sweeps
    WORKERS: int = Field(1, description="Process workers for sweeps and sharded searches")
    REPORTS_DIR: str = Field("reports", description="Default directory for sweep reports")

    model_config = SettingsConfigDict(
        env_prefix="DIMFORCE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def caps(self) -> Caps:
        base = Caps(
            brute_force=self.BRUTE_FORCE_CAP,
            path_cover=self.PATH_COVER_CAP,
            enumeration=self.ENUMERATION_CAP,
            enumeration_big=self.ENUMERATION_BIG_CAP,
            labeled_enumeration=self.LABELED_ENUMERATION_CAP,
            trees=self.TREE_ENUMERATION_CAP,
            t_plus_e=self.T_PLUS_E_CAP,
        )
        return parse_caps(self.CAPS, base)


# Singleton settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Return a singleton Settings instance (loads from the environment / .env).
    Use `get_settings()` instead of importing Settings() directly so other modules
    share the same instance.
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance; the next get_settings() re-reads the environment."""
    global _settings
    _settings = None
