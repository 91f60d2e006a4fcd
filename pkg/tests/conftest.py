import pytest

from fusionseq import corpus
from fusionseq.groups import group_catalog


@pytest.fixture(scope="session")
def catalog():
    return group_catalog()


@pytest.fixture(scope="session")
def rings():
    data = corpus.bundled_rings()
    assert data, "bundled ring files missing"
    return data


@pytest.fixture(scope="session")
def modules():
    data = corpus.bundled_modules()
    assert data, "bundled module files missing"
    return data


@pytest.fixture(scope="session")
def groups():
    data = corpus.bundled_groups()
    assert data, "bundled group files missing"
    return data
