import os

import pytest

from skein.reproduce import FACTS, Options, reproduce

slow = pytest.mark.skipif(os.environ.get("SKEIN_SLOW") != "1",
                          reason="takes several minutes; set SKEIN_SLOW=1")


@pytest.mark.parametrize("fact_id", ["twisted-rank-mod-3", "q-omega", "twisted-7-1"])
def test_supplementary_facts(fact_id):
    (o,) = reproduce(fact_id)
    assert o.passed, o.as_dict()


def test_too_few_trials_do_not_pass():
    (o,) = reproduce("twisted-7-1", Options(trials=3))
    assert not o.passed


def test_unknown_fact():
    with pytest.raises(KeyError):
        reproduce("delta-9-9")
    with pytest.raises(KeyError):
        reproduce("criterion-99")


def test_registry_titles():
    assert all(f.title for f in FACTS.values())


@slow
def test_delta_6_1_exact():
    (o,) = reproduce("delta-6-1-exact")
    assert o.passed, o.as_dict()
