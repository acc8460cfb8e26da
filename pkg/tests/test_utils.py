import pytest

from utils.basic_utils import SEED_ENV, digest_of, make_rng, resolve_seed
from utils.config import Config
from utils.distributed import map_ordered
from utils.errors import InputError


def _square(x):
    return x * x


def test_defaults_load():
    config = Config.load()
    assert config.solver.mode == "exact_bb"
    assert config.caps.vertices == 10 ** 6
    assert config.gap_demo.c is None


def test_layers_apply_in_order(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("solver:\n  mode: greedy\n  max_nodes: 10\nseed: 4\n")
    config = Config.load(str(path))
    assert config.solver.mode == "greedy" and config.solver.time_cap == 120.0 and config.seed == 4

    config = Config.load(str(path), flags={"solver": {"mode": "exact_enum", "max_nodes": None}})
    assert config.solver.mode == "exact_enum" and config.solver.max_nodes == 10

    config = Config.load(str(path), flags={"solver": {"mode": "exact_enum"}}, opts=["solver.mode", "exact_bb"])
    assert config.solver.mode == "exact_bb"


def test_override_values_are_literals():
    config = Config.load(opts=["solver.max_nodes", "200000", "log.color", "False", "gap_demo.c", "2"])
    assert config.solver.max_nodes == 200000
    assert config.log.color is False
    assert config.gap_demo.c == 2


def test_bad_overrides():
    with pytest.raises(InputError, match="not exist"):
        Config.load(opts=["solver.nope", "1"])
    with pytest.raises(InputError, match="pairs"):
        Config.load(opts=["solver.mode"])
    with pytest.raises(InputError):
        Config.load("/nonexistent/config.py")


def test_resolve_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert resolve_seed(None, default=5) == 5
    monkeypatch.setenv(SEED_ENV, "11")
    assert resolve_seed(None, default=5) == 11
    assert resolve_seed(3, default=5) == 3


def test_make_rng_is_reproducible():
    a = make_rng(1, 2).integers(0, 100, size=5)
    b = make_rng(1, 2).integers(0, 100, size=5)
    assert a.tolist() == b.tolist()


def test_digest_ignores_key_order():
    assert digest_of({"a": 1, "b": [1, 2]}) == digest_of({"b": [1, 2], "a": 1})
    assert digest_of({"a": 1}) != digest_of({"a": 2})


def test_map_ordered_keeps_order():
    assert map_ordered(_square, range(6), jobs=1) == [0, 1, 4, 9, 16, 25]
    assert map_ordered(_square, range(6), jobs=2) == [0, 1, 4, 9, 16, 25]
