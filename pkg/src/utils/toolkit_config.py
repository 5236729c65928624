"""Configuration for caps, tolerances and parallelism of the toolkit engines."""

from typing import Any, Dict, Optional
import json
import multiprocessing
import os
from dataclasses import dataclass, asdict, fields
from src.utils.logger import get_logger
from src.utils.error_handler import safe_operation

logger = get_logger()

@dataclass
class ToolkitConfig:
    """Caps and tolerances shared by the engines.

    Attributes:
        ball_cap: Maximum number of elements in a Cayley ball
        enumeration_bound: Largest 2g + n accepted by stable-graph enumeration
        survey_bound: Default 2g + n bound for the curves survey
        isolation_pool_limit: Largest candidate pool searched exactly for an isolating collection
        delta_vertex_cap: Largest graph handed to the exact four-point δ kernel
        net_epsilon: Separation used for the nets of cusped-space horoballs
        horoball_depth_limit: Horoball depth guard (depths at or above it are rejected)
        audit_cap: Largest comparison constant accepted by the horoball audit
        chain_length_bound: Longest witness chain searched by the chain evidence
        chain_type_budget: Largest number of witness types the chain search will handle
        float_tolerance: Comparison tolerance for double-precision distances
        exact_rational: Whether metric graphs carry Fraction weights instead of floats
        parallel_survey: Whether survey rows are evaluated in a worker pool
        num_workers: Worker count for the survey pool
        sample_size: Quadruples drawn by sampled δ
        detailed_logging: Whether the command line logs at debug level unless --quiet is given
    """
    ball_cap: int = 200000
    enumeration_bound: int = 10
    survey_bound: int = 8
    isolation_pool_limit: int = 24
    delta_vertex_cap: int = 2000
    net_epsilon: float = 1.0
    horoball_depth_limit: int = 40
    audit_cap: float = 3.0
    chain_length_bound: int = 6
    chain_type_budget: int = 5000
    float_tolerance: float = 1e-9
    exact_rational: bool = False
    parallel_survey: bool = False
    num_workers: int = 4
    sample_size: int = 20000
    detailed_logging: bool = False

    def __post_init__(self):
        """Clamp settings into supported ranges."""
        if self.ball_cap < 1:
            logger.warning(f"ball_cap set to {self.ball_cap} is invalid, setting to 1")
            self.ball_cap = 1

        if self.enumeration_bound > 12:
            logger.warning(f"enumeration_bound set to {self.enumeration_bound} is too high, setting to 12")
            self.enumeration_bound = 12
        if self.survey_bound > self.enumeration_bound:
            logger.warning(f"survey_bound {self.survey_bound} exceeds enumeration_bound, limiting to {self.enumeration_bound}")
            self.survey_bound = self.enumeration_bound

        if self.isolation_pool_limit > 24:
            logger.warning(f"isolation_pool_limit set to {self.isolation_pool_limit} is too high for exact search, setting to 24")
            self.isolation_pool_limit = 24

        if self.horoball_depth_limit > 40:
            logger.warning(f"horoball_depth_limit set to {self.horoball_depth_limit} risks underflow, setting to 40")
            self.horoball_depth_limit = 40

        if self.net_epsilon <= 0:
            logger.warning(f"net_epsilon set to {self.net_epsilon} is invalid, setting to 1.0")
            self.net_epsilon = 1.0

        if self.audit_cap < 1:
            logger.warning(f"audit_cap set to {self.audit_cap} is below 1, setting to 1.0")
            self.audit_cap = 1.0

        max_cpu = multiprocessing.cpu_count()
        if self.parallel_survey:
            if self.num_workers < 1:
                logger.warning(f"num_workers set to {self.num_workers} is invalid, setting to 1")
                self.num_workers = 1
            elif self.num_workers > max_cpu:
                logger.warning(f"num_workers set to {self.num_workers} exceeds available CPUs ({max_cpu}), limiting to {max_cpu}")
                self.num_workers = max_cpu

    def with_overrides(self, **kwargs: Any) -> "ToolkitConfig":
        """Return a copy with the given non-None fields replaced."""
        known = {f.name for f in fields(self)}
        updates = {k: v for k, v in kwargs.items() if v is not None and k in known}
        return ToolkitConfig(**{**asdict(self), **updates})

class ConfigManager:
    """Loads and saves the toolkit configuration file."""

    DEFAULT_CONFIG_PATH = "config/toolkit.json"

    def __init__(self, config_path: Optional[str] = None):
        """Initialize the configuration manager.

        Args:
            config_path: Path to the configuration file. If None, uses the
                        default path.
        """
        self.config_path = config_path or self.DEFAULT_CONFIG_PATH
        self.config = self._load_config() or ToolkitConfig()

    @safe_operation(log_level='error')
    def _load_config(self) -> ToolkitConfig:
        """Load configuration from file, writing defaults when it is missing."""
        default_config = ToolkitConfig()

        if not os.path.exists(self.config_path):
            logger.info(f"Creating default toolkit configuration at {self.config_path}")
            self._save_config(default_config)
            return default_config

        try:
            with open(self.config_path, 'r') as f:
                config_data: Dict[str, Any] = json.load(f)
        except Exception as e:
            logger.error(f"Error loading toolkit configuration: {e}. Using defaults.")
            return default_config

        unknown = sorted(set(config_data) - {f.name for f in fields(ToolkitConfig)})
        if unknown:
            logger.warning(f"Ignoring unknown configuration keys: {', '.join(unknown)}")
        return ToolkitConfig(**{
            f.name: config_data.get(f.name, getattr(default_config, f.name))
            for f in fields(ToolkitConfig)
        })

    @safe_operation(default_return=False, log_level='error')
    def _save_config(self, config: ToolkitConfig) -> bool:
        """Save configuration to file.

        Args:
            config: The configuration to save

        Returns:
            True if saved successfully, False otherwise
        """
        directory = os.path.dirname(self.config_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        with open(self.config_path, 'w') as f:
            json.dump(asdict(config), f, indent=4)

        logger.info(f"Saved toolkit configuration to {self.config_path}")
        return True

    def update_config(self, **kwargs) -> bool:
        """Update the stored configuration with new values.

        Args:
            **kwargs: Keyword arguments with new configuration values

        Returns:
            True if updated successfully, False otherwise
        """
        updated_config = ToolkitConfig(**{**asdict(self.config), **kwargs})
        if self._save_config(updated_config):
            self.config = updated_config
            return True
        return False

    def get_config(self) -> ToolkitConfig:
        """Get the current configuration."""
        return self.config
