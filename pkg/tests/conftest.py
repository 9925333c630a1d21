import numpy as np
import pytest

from miml import MIMLDataset

TOY_ARFF = """% two bags, two features, two labels
@relation toy

@attribute id {b1,b2}
@attribute bag relational
  @attribute f1 numeric
  @attribute f2 numeric
@end bag
@attribute red {0,1}
@attribute blue {0,1}

@data
b1,"0.5,1.0\\n0.25,2.0",1,0
b2,"3.0,1.5",0,1
"""

TOY_XML = """<?xml version="1.0" encoding="utf-8"?>
<labels xmlns="http://mulan.sourceforge.net/labels">
  <label name="red"></label>
  <label name="blue"></label>
</labels>
"""


@pytest.fixture
def toy_files(tmp_path):
    arff = tmp_path / "toy.arff"
    xml = tmp_path / "toy.xml"
    arff.write_text(TOY_ARFF)
    xml.write_text(TOY_XML)
    return arff, xml


@pytest.fixture
def four_bags():
    """Two well separated pairs of bags."""
    return MIMLDataset.from_arrays(
        [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 1.0]], [[4.0, 4.0], [5.0, 5.0]], [[5.0, 4.0]]],
        [[1, 0], [1, 0], [0, 1], [1, 1]],
        label_names=["a", "b"],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# filled by test_acceptance.py; one (criterion, passed, detail) tuple per criterion
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number, passed, detail in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {detail}")
