import hypothesis
import pytest

from orientcover.corpus import corpus_names, named_graph

hypothesis.settings.register_profile(
    "default", deadline=None, max_examples=60, derandomize=True)
hypothesis.settings.load_profile("default")


CUBIC_3EC = ("petersen", "k4", "k33", "prism3", "cube", "theta", "moebius_kantor", "bipetersen")
ALL_3EC = CUBIC_3EC + ("k5", "wheel4", "wheel5", "double_k4", "hub_triangles")


@pytest.fixture(params=corpus_names())
def corpus_graph(request):
    return named_graph(request.param)


@pytest.fixture(params=CUBIC_3EC)
def cubic_graph(request):
    return named_graph(request.param)
