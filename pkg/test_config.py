import pytest
import yaml

from src.analyzers.reservoirs import rabi_unit
from src.config import RunConfig, dump_effective, from_mapping, load_config, resolve_rabi, to_params
from src.models.params import EngineVariant
from src.validation import ValidationError


def test_defaults_resolve_against_variant_gamma41():
    config = resolve_rabi(RunConfig())
    unit = rabi_unit(EngineVariant.HE_PUC)
    assert config.rabi_pu == pytest.approx(unit)
    assert config.rabi_c == pytest.approx(unit)
    assert config.rabi_pr == pytest.approx(0.05 * unit)


def test_explicit_rabi_kept():
    params = to_params(RunConfig(rabi_pu=3.0, rabi_pr=0.2))
    assert params.omega_pu == 3.0
    assert params.omega_pr == 0.2


def test_load_flat_yaml(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("# pump engine\nvariant: HE_pu\nt41: 4000\ngrid_points: 11\n")
    config = load_config(path)
    assert config.variant == "HE_pu"
    assert config.t41 == 4000.0
    assert config.grid().points == 11


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(path) == RunConfig()


@pytest.mark.parametrize("data, message", [
    ({"t41": 0}, "t41 must be positive"),
    ({"temperature": 10}, "Unknown configuration key 'temperature'"),
    ({"variant": "HE_x"}, "variant must be one of"),
    ({"grid_min": 5, "grid_max": 1}, "grid_min must be below grid_max"),
    ({"grid_points": 2}, "grid_points must be at least 3"),
    ({"method": "exact"}, "method must be one of"),
])
def test_invalid_values_name_the_field(data, message):
    with pytest.raises(ValidationError, match=message):
        from_mapping(data)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ValidationError):
        load_config(tmp_path / "absent.yaml")


def test_dumped_config_round_trips(tmp_path):
    path = dump_effective(RunConfig(variant="HE_c", epsilon=0.02), tmp_path / "effective.yaml")
    data = yaml.safe_load(path.read_text())
    assert data["rabi_c"] == pytest.approx(rabi_unit(EngineVariant.HE_C))
    assert list(data) == [field for field in RunConfig.__dataclass_fields__]
    assert load_config(path) == resolve_rabi(RunConfig(variant="HE_c", epsilon=0.02))
