import pytest

import properties


@pytest.mark.parametrize("name", list(properties.PROPERTIES))
def test_property(name):
    cases, examples, failures = properties.run(name)
    assert cases >= 10_000
    assert failures == 0, examples
