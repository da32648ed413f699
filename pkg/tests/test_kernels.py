import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cpa_by_search
from nilgraph import _kernels_py, kernels
from nilgraph.graph import EdgeColoredGraph, build_gn

try:
    from nilgraph import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")


@st.composite
def colored_graphs(draw, max_colors=15):
    n = draw(st.integers(2, 6))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    k = draw(st.integers(1, min(len(chosen), max_colors)))
    colors = list(range(k)) + draw(st.lists(st.integers(0, k - 1), min_size=len(chosen) - k, max_size=len(chosen) - k))
    colors = draw(st.permutations(colors))
    return EdgeColoredGraph.from_edges(n, k, [(u, v, c) for (u, v), c in zip(chosen, colors)])


def _scan(mod, G):
    return mod.scan_cpa(G.color_matrix(), G.n_vertices, G.n_colors)


# the oracle walks all of Sym(colors), so keep the palette small
@settings(max_examples=150, deadline=None)
@given(colored_graphs(max_colors=5))
def test_python_kernel_matches_oracle(G):
    assert _scan(_kernels_py, G) == cpa_by_search(G.n_vertices, G.n_colors, dict(G.coloring))


@needs_ext
@settings(max_examples=300, deadline=None)
@given(colored_graphs())
def test_backends_agree_on_scan(G):
    assert _scan(_kernels_c, G) == _scan(_kernels_py, G)


@needs_ext
@pytest.mark.parametrize("n", [3, 5, 7])
def test_backends_agree_on_gn(n):
    G = build_gn(n)
    assert _scan(_kernels_c, G) == _scan(_kernels_py, G)


@needs_ext
@settings(max_examples=300, deadline=None)
@given(st.integers(1, 11).flatmap(lambda n: st.permutations(range(n))))
def test_backends_agree_on_special_violations(images):
    n = len(images)
    assert _kernels_c.count_special_violations(list(images), n) == _kernels_py.count_special_violations(list(images), n)


def test_special_violations_examples():
    for mod in filter(None, (_kernels_py, _kernels_c)):
        assert mod.count_special_violations([1, 3, 0, 2, 4], 5) == 0
        assert mod.count_special_violations([1, 0, 2, 3, 4], 5) > 0
        assert mod.count_special_violations(list(range(7)), 7) == 0


def test_scan_is_lexicographic():
    found = kernels.scan_cpa(build_gn(5).color_matrix(), 5, 5)
    assert found == sorted(found)
    assert len(found) == 20


@needs_ext
@pytest.mark.skipif(bool(os.environ.get("NILGRAPH_PURE_PYTHON")), reason="fallback forced")
def test_default_backend_is_compiled():
    assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, NILGRAPH_PURE_PYTHON="1")
    code = "from nilgraph import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
