import hypothesis
import pytest

hypothesis.settings.register_profile(
    "kpodlab", deadline=None, max_examples=50, derandomize=True)
hypothesis.settings.load_profile("kpodlab")


@pytest.fixture(scope="session")
def oracle_cache(tmp_path_factory):
    """Shared reference-center cache so slow fits run once per session."""
    return tmp_path_factory.mktemp("oracle_cache")
