"""Run configuration and enumeration caps."""

import pytest

from sandnara.config import DEFAULT_MAX_OBJECTS, RunConfig, guard_count, object_cap
from sandnara.errors import ResourceLimit


class TestObjectCap:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("SANDPILE_MAX_OBJECTS", raising=False)
        assert object_cap() == DEFAULT_MAX_OBJECTS

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("SANDPILE_MAX_OBJECTS", "123")
        assert object_cap() == 123

    def test_explicit_beats_env(self, monkeypatch):
        monkeypatch.setenv("SANDPILE_MAX_OBJECTS", "123")
        assert object_cap(7) == 7

    def test_guard(self):
        assert guard_count(5, 10, "x") == 5
        with pytest.raises(ResourceLimit):
            guard_count(11, 10, "x")


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.output_format == "json"
        assert cfg.jobs == 1

    def test_bad_format(self):
        with pytest.raises(ValueError):
            RunConfig(output_format="yaml")

    def test_bad_jobs(self):
        with pytest.raises(ValueError):
            RunConfig(jobs=0)

    def test_cap_env(self, monkeypatch):
        monkeypatch.setenv("SANDPILE_MAX_OBJECTS", "55")
        assert RunConfig().cap == 55
        assert RunConfig(max_objects=9).cap == 9


def test_env_cap_reaches_enumerations(monkeypatch):
    from sandnara.polyomino import enumerate_para

    monkeypatch.setenv("SANDPILE_MAX_OBJECTS", "2")
    with pytest.raises(ResourceLimit):
        list(enumerate_para(2, 2))
    monkeypatch.delenv("SANDPILE_MAX_OBJECTS")
    assert len(list(enumerate_para(2, 2))) == 3
