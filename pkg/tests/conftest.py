import pytest

from helpers import fixture_genomes, fixture_tree
from phylokmer import build_index


@pytest.fixture(scope="session")
def worked_setup():
    """The worked five-genome example used throughout the tests."""
    tree = fixture_tree()
    genomes = fixture_genomes()
    return tree, genomes


@pytest.fixture(scope="session")
def worked_index(worked_setup):
    tree, genomes = worked_setup
    return build_index(tree, genomes)
