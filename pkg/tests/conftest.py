from __future__ import annotations

import pytest

from amalgamkit.amalgamlab import Setting


@pytest.fixture(scope="session")
def setting() -> Setting:
    return Setting()


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("ctb")


@pytest.fixture(scope="session")
def m24_graph(cache_dir):
    from amalgamkit.cosetgraph import build_graph

    return build_graph("m24", cache_dir)
