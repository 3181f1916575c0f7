import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.algebra import coeff  # noqa: E402

settings.register_profile(
    "skein", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("skein")


@pytest.fixture(autouse=True)
def exact_equality():
    """Every test starts from canonical-form equality."""
    coeff.configure()
    yield
    coeff.configure()
