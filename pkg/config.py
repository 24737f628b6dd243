"""
Configuration management for the Morse group engine
"""

import os
from dataclasses import dataclass, replace, fields
from typing import List

from dotenv import load_dotenv

# Optional .env next to the working directory
load_dotenv()

ENV_PREFIX = "MORSE_"


def get_env_str(name: str, default: str = "") -> str:
    """Get environment variable as string"""
    value = os.getenv(ENV_PREFIX + name)
    return str(value).strip() if value is not None else default


def get_env_int(name: str, default: int = 0) -> int:
    """Get environment variable as integer"""
    try:
        value = os.getenv(ENV_PREFIX + name)
        return int(str(value).strip()) if value is not None else default
    except (ValueError, TypeError):
        return default


def get_env_float(name: str, default: float = 0.0) -> float:
    """Get environment variable as float"""
    try:
        value = os.getenv(ENV_PREFIX + name)
        return float(str(value).strip()) if value is not None else default
    except (ValueError, TypeError):
        return default


def get_env_bool(name: str, default: bool = False) -> bool:
    """Get environment variable as boolean"""
    value = os.getenv(ENV_PREFIX + name, "").lower().strip()
    if value in ("true", "yes", "1", "on", "y"):
        return True
    elif value in ("false", "no", "0", "off", "n"):
        return False
    return default


@dataclass
class EngineConfig:
    # Application
    app_name: str = "morse-groups"
    schema_version: str = "morse-groups/1"
    debug_mode: bool = False

    # Randomized sampling
    seed: int = 0
    sample_attempts: int = 50

    # Size guard (largest n any module is built for)
    max_letters: int = 12

    # Residual tolerances
    exact_tol: float = 1e-9
    newton_tol: float = 1e-12
    newton_max_iter: int = 100
    hessian_rel_tol: float = 1e-6

    # Slice / tracker defaults
    slice_tau: float = 0.1
    tracker_tau: float = 1.0
    tracker_steps: int = 24
    tracker_max_refine: int = 12
    tracker_safety: float = 3.0
    min_separation: float = 1e-8
    start_separation: float = 1e-3

    def validate(self) -> List[str]:
        """Validate configuration and return errors"""
        errors = []

        for name in ("exact_tol", "newton_tol", "hessian_rel_tol", "min_separation", "start_separation"):
            if getattr(self, name) <= 0:
                errors.append(f"{name} must be positive")

        if self.newton_max_iter < 1:
            errors.append("newton_max_iter must be at least 1")

        if self.tracker_steps < 1:
            errors.append("tracker_steps must be at least 1")

        if self.tracker_max_refine < 0:
            errors.append("tracker_max_refine must be non-negative")

        if self.tracker_safety <= 1.0:
            errors.append("tracker_safety must exceed 1")

        if self.slice_tau == 0 or self.tracker_tau == 0:
            errors.append("tau must be nonzero")

        if not 1 <= self.max_letters <= 12:
            errors.append("max_letters must lie in 1..12")

        if self.sample_attempts < 1:
            errors.append("sample_attempts must be at least 1")

        return errors

    def override(self, **changes) -> "EngineConfig":
        """Return a copy with the non-None changes applied (CLI flags)"""
        known = {f.name for f in fields(self)}
        applied = {k: v for k, v in changes.items() if v is not None and k in known}
        return replace(self, **applied)

    def apply(self, other: "EngineConfig") -> "EngineConfig":
        """Copy every field of other onto this instance; modules holding CFG see the change"""
        for f in fields(self):
            setattr(self, f.name, getattr(other, f.name))
        return self


# Initialize configuration
CFG = EngineConfig(
    app_name=get_env_str("APP_NAME", "morse-groups"),
    debug_mode=get_env_bool("DEBUG_MODE", False),
    seed=get_env_int("SEED", 0),
    sample_attempts=get_env_int("SAMPLE_ATTEMPTS", 50),
    max_letters=get_env_int("MAX_LETTERS", 12),
    exact_tol=get_env_float("EXACT_TOL", 1e-9),
    newton_tol=get_env_float("NEWTON_TOL", 1e-12),
    newton_max_iter=get_env_int("NEWTON_MAX_ITER", 100),
    hessian_rel_tol=get_env_float("HESSIAN_REL_TOL", 1e-6),
    slice_tau=get_env_float("SLICE_TAU", 0.1),
    tracker_tau=get_env_float("TRACKER_TAU", 1.0),
    tracker_steps=get_env_int("TRACKER_STEPS", 24),
    tracker_max_refine=get_env_int("TRACKER_MAX_REFINE", 12),
    tracker_safety=get_env_float("TRACKER_SAFETY", 3.0),
    min_separation=get_env_float("MIN_SEPARATION", 1e-8),
    start_separation=get_env_float("START_SEPARATION", 1e-3),
)

# Export config
__all__ = [
    'CFG', 'EngineConfig', 'ENV_PREFIX',
    'get_env_str', 'get_env_int', 'get_env_float', 'get_env_bool',
]
