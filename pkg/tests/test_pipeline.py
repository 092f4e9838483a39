import sys
import os
from fractions import Fraction

import pytest
import yaml

# Add src directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.utils.config import Config, DEFAULT_CONFIG
from src.heights.height import canonical_height
from src.heights.nonarch_global import PsiFiniteOptions
from src.heights.pipeline import HeightPipeline
from src.model.points import RationalPoint
from tests.curve_fixtures import HEIGHT_37A, curve, point, within


@pytest.fixture
def config(tmp_path):
    """Defaults, read from a path that does not exist."""
    return Config(str(tmp_path / "missing.yaml"))


@pytest.fixture
def pipeline(config):
    return HeightPipeline(config)


def write_config(tmp_path, data) -> str:
    path = tmp_path / "config.yaml"
    with open(path, 'w') as f:
        yaml.dump(data, f)
    return str(path)


def test_config_defaults(config, tmp_path):
    assert config.precision_config.default_digits == 30
    assert config.precision_config.guard_bits == 8
    assert config.precision_config.self_check is False
    assert config.archimedean_config.method == "agm"
    assert config.archimedean_config.series_terms == 40
    assert config.benchmark_config.digit_sizes == [100, 500, 5000]
    assert config.logging_config.level == "INFO"
    assert not (tmp_path / "missing.yaml").exists()


def test_config_create_if_missing(tmp_path):
    path = tmp_path / "fresh.yaml"
    config = Config(str(path), create_if_missing=True)
    assert path.exists()
    with open(path) as f:
        assert yaml.safe_load(f) == DEFAULT_CONFIG
    assert config.psi_finite_config.trial_division_bound == 1


def test_config_partial_file(tmp_path):
    """Missing keys fall back to their defaults."""
    path = write_config(tmp_path, {
        'psi_finite': {'trial_division_bound': 7, 'shrinking_modulus': True},
        'logging': {'level': 'debug'},
    })
    config = Config(path)
    assert config.psi_finite_config.trial_division_bound == 7
    assert config.psi_finite_config.use_2b4_variant is False
    assert config.logging_config.level == "DEBUG"
    assert config.archimedean_config.method == "agm"

    options = config.psi_finite_config.to_options()
    assert options == PsiFiniteOptions(trial_division_bound=7, shrinking_modulus=True)


def test_config_rejects_unknown_method(tmp_path):
    path = write_config(tmp_path, {'archimedean': {'method': 'theta'}})
    with pytest.raises(ValueError):
        Config(path)


def test_config_rejects_bad_options(tmp_path):
    path = write_config(tmp_path, {'psi_finite': {'trial_division_bound': 0}})
    with pytest.raises(ValueError):
        Config(path).psi_finite_config.to_options()


@pytest.mark.asyncio
async def test_pipeline_torsion_point(pipeline):
    """(2, 3) on y^2 = x^3 + 1 has order 6 and ĥ = 0."""
    result = await pipeline.compute(curve("36a1"), point(2, 3), 64)
    assert result is not None
    assert result.torsion_order == 6
    assert result.h_canonical.is_zero()
    assert result.psi_finite.as_dict() == {4: Fraction(1, 3), 9: Fraction(1, 4)}
    assert result.psi_infinity is not None


@pytest.mark.asyncio
async def test_pipeline_matches_direct_computation(pipeline):
    model = curve("37a1")
    result = await pipeline.compute(model, point(0, 0), 64)
    direct = canonical_height(model, point(0, 0), 64)
    assert abs(float(result.h_canonical) - HEIGHT_37A) < 1e-15
    assert within(result.h_canonical, direct.h_canonical, 62)


@pytest.mark.asyncio
async def test_pipeline_series_method(config):
    pipeline = HeightPipeline(config, method_name="series")
    assert pipeline.method.name == "SeriesMethod"
    result = await pipeline.compute(curve("37a1"), point(0, 0), 64)
    assert abs(float(result.h_canonical) - HEIGHT_37A) < 1e-10


@pytest.mark.asyncio
async def test_pipeline_options_override(config):
    options = PsiFiniteOptions(trial_division_bound=5)
    pipeline = HeightPipeline(config, options=options)
    result = await pipeline.compute(curve("36a1"), point(2, 3), 64)
    assert result.psi_finite.as_dict() == {2: Fraction(2, 3), 3: Fraction(1, 2)}


@pytest.mark.asyncio
async def test_pipeline_two_torsion_and_infinity(pipeline):
    two_torsion = await pipeline.compute(curve("36a1"), point(-1, 0), 64)
    assert two_torsion.torsion_order == 2
    assert two_torsion.psi_infinity is None

    origin = await pipeline.compute(curve("36a1"), RationalPoint.infinity(), 64)
    assert origin.torsion_order == 1
    assert origin.psi_infinity.is_zero()


@pytest.mark.asyncio
async def test_pipeline_self_check(config):
    config.precision_config.self_check = True
    pipeline = HeightPipeline(config)
    model = curve("37a1")
    result = await pipeline.compute(model, point(0, 0), 64)
    assert result is not None
    assert await pipeline._self_check(model, point(0, 0), 72, result.psi_infinity)


@pytest.mark.asyncio
async def test_pipeline_returns_none_on_failure(pipeline):
    assert await pipeline.compute(curve("36a1"), point(7, 0), 64) is None


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
