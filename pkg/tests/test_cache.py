import logging
from fractions import Fraction

import pytest

from aperycheck import cache as bcache
from aperycheck.sequences import bernoulli_table


def test_build_persists(tmp_path):
    path = tmp_path / "b.txt"
    table = bcache.load_or_build_cache(path, 12)
    assert table[12] == Fraction(-691, 2730)
    lines = path.read_text().splitlines()
    assert lines[0] == "BERNOULLI-CACHE v1"
    assert lines[13] == "12 -691/2730"
    assert [p.name for p in tmp_path.iterdir()] == ["b.txt"]


def test_round_trip(tmp_path):
    table = bernoulli_table(500)
    bcache.save(table, tmp_path / "b.txt")
    assert bcache.load(tmp_path / "b.txt").values == table.values


def test_cached_table_reused_without_computation(tmp_path, monkeypatch):
    path = tmp_path / "b.txt"
    bcache.save(bernoulli_table(400), path)

    def boom(*a, **k):
        raise AssertionError("should not recompute")

    monkeypatch.setattr(bcache, "bernoulli_table", boom)
    monkeypatch.setattr(bcache, "extend_bernoulli_table", boom)
    assert bcache.load_or_build_cache(path, 100).max_index == 400


def test_extension(tmp_path):
    path = tmp_path / "b.txt"
    bcache.load_or_build_cache(path, 20)
    table = bcache.load_or_build_cache(path, 60)
    assert table.values == bernoulli_table(60).values
    assert bcache.load(path).max_index == 60


@pytest.mark.parametrize(
    "mutate",
    [
        lambda ls: ls.__setitem__(13, "12 -691/2731"),  # wrong value, caught by recurrence row
        lambda ls: ls.__setitem__(4, "3 1/7"),  # odd index nonzero
        lambda ls: ls.__setitem__(0, "BERNOULLI-CACHE v0"),
        lambda ls: ls.__delitem__(6),  # gap
        lambda ls: ls.__setitem__(3, "2 2/12"),  # not reduced
        lambda ls: ls.__setitem__(5, "4 garbage"),
    ],
)
def test_tampered_cache_is_rebuilt(tmp_path, caplog, mutate):
    path = tmp_path / "b.txt"
    bcache.save(bernoulli_table(12), path)
    lines = path.read_text().splitlines()
    mutate(lines)
    path.write_text("\n".join(lines) + "\n")
    with caplog.at_level(logging.WARNING):
        table = bcache.load_or_build_cache(path, 12)
    assert "corrupt" in caplog.text
    assert table.values == bernoulli_table(12).values
    assert bcache.load(path).values == table.values


def test_tampered_middle_value_detected():
    # corrupt a value that no spot row reads directly: B_6 enters every later row
    text = bcache.dumps(bernoulli_table(30)).replace("6 1/42", "6 1/43")
    with pytest.raises(bcache.CacheError):
        bcache.loads(text)


def test_default_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv("APERY_CACHE", str(tmp_path / "x.txt"))
    assert bcache.default_cache_path() == tmp_path / "x.txt"
    monkeypatch.delenv("APERY_CACHE")
    assert bcache.default_cache_path().name == "bernoulli.txt"
