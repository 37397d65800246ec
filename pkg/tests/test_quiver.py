import pytest
from pydantic import ValidationError

from prospecies_entry.core.errors import LabelCollision, NotSinkOrSource
from prospecies_entry.engine.quiver import (
    compose, double_quiver, enumerate_paths, is_acyclic, is_bipartite, is_sink, is_source, longest_path_length,
    paths_of_length, reflected_quiver, separated_quiver, star_label,
)
from prospecies_entry.schemas.quiver import Arrow, Path, Quiver


def a3():
    return Quiver(vertices=("1", "2", "3"), arrows=(
        Arrow(label="a", source="1", target="2"),
        Arrow(label="b", source="2", target="3"),
    ))


def test_quiver_rejects_undeclared_vertex():
    with pytest.raises(ValidationError):
        Quiver(vertices=("1",), arrows=(Arrow(label="a", source="1", target="2"),))


def test_quiver_rejects_duplicate_labels():
    with pytest.raises(ValidationError):
        Quiver(vertices=("1", "2"), arrows=(
            Arrow(label="a", source="1", target="2"),
            Arrow(label="a", source="2", target="1"),
        ))


def test_paths_render_right_to_left():
    p = Path(source="1", target="3", arrows=("a", "b"))
    assert p.render() == "b.a"
    assert Path(source="2", target="2").render() == "e[2]"


def test_compose_order():
    a = Path(source="1", target="2", arrows=("a",))
    b = Path(source="2", target="3", arrows=("b",))
    assert compose(b, a).arrows == ("a", "b")
    assert compose(a, b) is None


def test_enumerate_paths_of_a3():
    Q = a3()
    assert len(paths_of_length(Q, 0)) == 3
    assert len(paths_of_length(Q, 2)) == 1
    assert len(enumerate_paths(Q, 5)) == 6
    assert longest_path_length(Q) == 2


def test_weighted_truncation():
    Q = a3()
    assert paths_of_length(Q, 2, weights={"a": 0, "b": 1}, max_weight=1)
    assert not paths_of_length(Q, 2, weights={"a": 1, "b": 1}, max_weight=1)


def test_acyclicity():
    assert is_acyclic(a3())
    loop = Quiver(vertices=("1",), arrows=(Arrow(label="x", source="1", target="1"),))
    assert not is_acyclic(loop)


def test_sinks_sources_bipartite():
    Q = a3()
    assert is_source(Q, "1") and is_sink(Q, "3")
    assert not is_bipartite(Q)
    assert is_bipartite(separated_quiver(Q))


def test_double_quiver():
    D = double_quiver(a3())
    assert len(D.arrows) == 4
    assert D.arrow("a_star").source == "2"
    assert star_label("a_star") == "a"


def test_double_quiver_label_collision():
    Q = Quiver(vertices=("1", "2"), arrows=(Arrow(label="a_star", source="1", target="2"),))
    with pytest.raises(LabelCollision):
        double_quiver(Q)


def test_separated_quiver():
    S = separated_quiver(a3())
    assert S.vertices == ("1", "2", "3", "1_bar", "2_bar", "3_bar")
    assert S.arrow("a_bar").target == "2_bar"


def test_reflection_at_sink_and_source():
    Q = a3()
    R = reflected_quiver(Q, "3", "sink")
    assert R.arrow("b_star").source == "3"
    with pytest.raises(NotSinkOrSource):
        reflected_quiver(Q, "2", "sink")
    assert reflected_quiver(Q, "1", "source").arrow("a_star").target == "1"
