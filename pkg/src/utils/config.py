import os
from typing import Dict, Any, List
import yaml
from dataclasses import dataclass, field

from ..heights.nonarch_global import PsiFiniteOptions


@dataclass
class PrecisionConfig:
    """Precision and guard-bit settings."""
    default_digits: int = 30
    guard_bits: int = 8
    self_check: bool = False  # recompute Psi_inf at +64 bits and warn on mismatch


@dataclass
class PsiFiniteConfig:
    """Switches of the factorization-free finite part."""
    trial_division_bound: int = 1  # 1 = no trial division
    use_2b4_variant: bool = False
    incremental_basis: bool = False
    shrinking_modulus: bool = False

    def to_options(self) -> PsiFiniteOptions:
        return PsiFiniteOptions(
            trial_division_bound=self.trial_division_bound,
            use_2b4_variant=self.use_2b4_variant,
            incremental_basis=self.incremental_basis,
            shrinking_modulus=self.shrinking_modulus,
        )


@dataclass
class ArchimedeanConfig:
    """Archimedean method settings."""
    method: str = "agm"  # 'agm' or 'series'
    series_terms: int = 40


@dataclass
class BenchmarkConfig:
    """Benchmark family settings (y^2 = x^3 - ax + a, P = (1, 1))."""
    digit_sizes: List[int] = field(default_factory=lambda: [100, 500, 5000])
    repetitions: int = 3
    seed: int = 0
    precision_digits: int = 30
    multiple: int = 1


@dataclass
class LoggingConfig:
    """Logging settings."""
    level: str = "INFO"
    format: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


DEFAULT_CONFIG: Dict[str, Any] = {
    'precision': {
        'default_digits': 30,
        'guard_bits': 8,
        'self_check': False
    },
    'psi_finite': {
        'trial_division_bound': 1,
        'use_2b4_variant': False,
        'incremental_basis': False,
        'shrinking_modulus': False
    },
    'archimedean': {
        'method': 'agm',
        'series_terms': 40
    },
    'benchmark': {
        'digit_sizes': [100, 500, 5000],
        'repetitions': 3,
        'seed': 0,
        'precision_digits': 30,
        'multiple': 1
    },
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    }
}


class Config:
    """Configuration manager for the height calculator."""

    def __init__(self, config_path: str = "config.yaml", create_if_missing: bool = False):
        """
        Initialize configuration from YAML file.

        Args:
            config_path: Path to configuration file
            create_if_missing: Write the defaults to ``config_path`` when it does not exist
        """
        self.config_path = config_path
        self.create_if_missing = create_if_missing
        self.config_data = self._load_config()

        # Initialize configuration objects
        self.precision_config = self._init_precision_config()
        self.psi_finite_config = self._init_psi_finite_config()
        self.archimedean_config = self._init_archimedean_config()
        self.benchmark_config = self._init_benchmark_config()
        self.logging_config = self._init_logging_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        if not os.path.exists(self.config_path):
            if not self.create_if_missing:
                return DEFAULT_CONFIG
            self._create_default_config()

        with open(self.config_path, 'r') as f:
            return yaml.safe_load(f) or {}

    def _create_default_config(self) -> None:
        """Create default configuration file."""
        with open(self.config_path, 'w') as f:
            yaml.dump(DEFAULT_CONFIG, f, default_flow_style=False)

    def _init_precision_config(self) -> PrecisionConfig:
        """Initialize precision configuration."""
        precision_config = self.config_data.get('precision', {})
        return PrecisionConfig(
            default_digits=precision_config.get('default_digits', 30),
            guard_bits=precision_config.get('guard_bits', 8),
            self_check=precision_config.get('self_check', False)
        )

    def _init_psi_finite_config(self) -> PsiFiniteConfig:
        """Initialize the finite-part configuration."""
        psi_config = self.config_data.get('psi_finite', {})
        return PsiFiniteConfig(
            trial_division_bound=psi_config.get('trial_division_bound', 1),
            use_2b4_variant=psi_config.get('use_2b4_variant', False),
            incremental_basis=psi_config.get('incremental_basis', False),
            shrinking_modulus=psi_config.get('shrinking_modulus', False)
        )

    def _init_archimedean_config(self) -> ArchimedeanConfig:
        """Initialize archimedean configuration."""
        arch_config = self.config_data.get('archimedean', {})
        method = arch_config.get('method', 'agm')
        if method not in ('agm', 'series'):
            raise ValueError(f"Unknown archimedean method in config: {method}")
        return ArchimedeanConfig(
            method=method,
            series_terms=arch_config.get('series_terms', 40)
        )

    def _init_benchmark_config(self) -> BenchmarkConfig:
        """Initialize benchmark configuration."""
        bench_config = self.config_data.get('benchmark', {})
        return BenchmarkConfig(
            digit_sizes=list(bench_config.get('digit_sizes', [100, 500, 5000])),
            repetitions=bench_config.get('repetitions', 3),
            seed=bench_config.get('seed', 0),
            precision_digits=bench_config.get('precision_digits', 30),
            multiple=bench_config.get('multiple', 1)
        )

    def _init_logging_config(self) -> LoggingConfig:
        """Initialize logging configuration."""
        logging_config = self.config_data.get('logging', {})
        return LoggingConfig(
            level=str(logging_config.get('level', 'INFO')).upper(),
            format=logging_config.get(
                'format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
        )
