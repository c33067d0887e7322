import math
import re

import pytest

from graphph.fixtures import fixture_catalog, get_fixture
from graphph.metric import normalize
from graphph.oracles import naive_diagrams
from graphph.persistence import diagram_from_records, diagrams
from graphph.rips import build_flag_filtration

INF = math.inf
NAMES = [fx.name for fx in fixture_catalog()]


def test_catalog_contents():
    assert {"p3", "k3", "c4", "two_edges", "edgeless3", "weighted_hole", "random12"} <= set(NAMES)
    with pytest.raises(KeyError):
        get_fixture("nope")


@pytest.mark.parametrize("name", NAMES)
def test_fixture_matches_fast_path(name):
    fx = get_fixture(name)
    dm = fx.distance_matrix()
    pds = diagrams(build_flag_filtration(dm, threshold=INF))
    assert pds[0].points == fx.expected_diagram(0).points
    assert pds[1].points == fx.expected_diagram(1).points
    if "h1_normalized" in fx.expected:
        norm = diagrams(build_flag_filtration(normalize(dm), threshold=1.0))[1]
        assert norm.points == diagram_from_records(fx.expected["h1_normalized"], dim=1).points


@pytest.mark.parametrize("name", NAMES)
def test_fixture_provenance(name):
    fx = get_fixture(name)
    for key in fx.expected:
        assert re.split("[:;]", fx.provenance[key])[0] in ("published example", "oracle", "by inspection")


@pytest.mark.parametrize("name", NAMES)
def test_fixture_reproduced_by_oracle(name):
    fx = get_fixture(name)
    ref = naive_diagrams(fx.distance_matrix().entries, INF)
    assert ref[1] == list(fx.expected_diagram(1).points)


def test_known_values():
    assert get_fixture("c4").expected_diagram(1).points == ((1, 2),)
    assert get_fixture("p3").expected_diagram(0).points == ((0, 1), (0, 1), (0, INF))
    assert get_fixture("weighted_hole").expected_diagram(1).points == ((3, 4),)
    assert get_fixture("k3").expected_diagram(1).points == ()
    assert get_fixture("edgeless3").expected_diagram(0).points == ((0, INF),) * 3
