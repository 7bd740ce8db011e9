import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quadchroma._backend import available_backends  # noqa: E402

BACKENDS = available_backends()
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    return BACKENDS[request.param]


@pytest.fixture
def compiled():
    if "cython" not in BACKENDS:
        pytest.skip("compiled extension not built")
    return BACKENDS["cython"]
