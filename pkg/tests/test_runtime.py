import pytest

from prospecies_entry import init_runtime
from prospecies_entry.core import globals as app_globals
from prospecies_entry.core.dependencies import get_cache, get_rng, get_seed
from prospecies_entry.core.errors import RuntimeUnavailable


def test_accessors_need_init(monkeypatch):
    monkeypatch.setattr(app_globals, "cache", None)
    monkeypatch.setattr(app_globals, "rng", None)
    monkeypatch.setattr(app_globals, "seed", None)
    with pytest.raises(RuntimeUnavailable):
        get_cache()
    with pytest.raises(RuntimeUnavailable):
        get_rng()
    with pytest.raises(RuntimeUnavailable):
        get_seed()


def test_seed_makes_sampling_reproducible():
    init_runtime(seed=11)
    first = [get_rng().randint(0, 1000) for _ in range(5)]
    init_runtime(seed=11)
    assert [get_rng().randint(0, 1000) for _ in range(5)] == first
    assert get_seed() == 11


def test_cache_counts_hits():
    cache = get_cache()
    assert set(cache.stats()) == {"enveloping", "duals", "tensor_spaces", "dual_bases", "hits", "misses"}
    left, right = object(), object()
    before = cache.stats()
    built = []
    first = cache.get_enveloping(left, right, lambda: built.append(1) or "env")
    second = cache.get_enveloping(left, right, lambda: built.append(1) or "env")
    assert first == second == "env"
    assert built == [1]
    after = cache.stats()
    assert after["enveloping"] == before["enveloping"] + 1
    assert after["hits"] == before["hits"] + 1


def test_init_clears_the_cache(kA2):
    get_cache().get_dual(kA2, "right", lambda: "dual")
    init_runtime(seed=0)
    assert get_cache().stats()["duals"] == 0
