"""One test per acceptance criterion, each going through ``reproduce``."""

import pytest

from skein.reproduce import Options, criteria, reproduce

CRITERIA = list(range(1, 14))


def test_every_criterion_has_a_script():
    assert sorted(criteria()) == CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA)
def test_criterion(criterion, capsys):
    outcomes = reproduce(f"criterion-{criterion}", Options(seed=0, trials=20))
    passed = all(o.passed for o in outcomes)
    with capsys.disabled():
        print(f"\ncriterion {criterion}: {'PASS' if passed else 'FAIL'}")
        for o in outcomes:
            print(f"  {o.fact}: {'PASS' if o.passed else 'FAIL'} ({o.runtime:.1f}s) {o.summary}")
    assert passed, [o.as_dict() for o in outcomes if not o.passed]
