"""Tests for environment-driven settings."""

import pytest

import config
from errors import ConfigError


def test_int_setting_default(monkeypatch):
    monkeypatch.delenv('BMATCH_TEST_CAP', raising=False)
    assert config._int_setting('BMATCH_TEST_CAP', 7) == 7
    monkeypatch.setenv('BMATCH_TEST_CAP', '  ')
    assert config._int_setting('BMATCH_TEST_CAP', 7) == 7


def test_int_setting_reads_env(monkeypatch):
    monkeypatch.setenv('BMATCH_TEST_CAP', '25')
    assert config._int_setting('BMATCH_TEST_CAP', 7) == 25


@pytest.mark.parametrize('raw', ['many', '2.5', '-1'])
def test_int_setting_rejects_bad_values(monkeypatch, raw):
    monkeypatch.setenv('BMATCH_TEST_CAP', raw)
    with pytest.raises(ConfigError, match="BMATCH_TEST_CAP"):
        config._int_setting('BMATCH_TEST_CAP', 7)


@pytest.mark.parametrize('raw, expected', [('1', True), ('yes', True), ('on', True), ('0', False), ('', False)])
def test_flag_setting(monkeypatch, raw, expected):
    monkeypatch.setenv('BMATCH_TEST_FLAG', raw)
    assert config._flag_setting('BMATCH_TEST_FLAG') is expected


def test_resolve_cap():
    assert config.resolve_cap(None, 12) == 12
    assert config.resolve_cap(3, 12) == 3
