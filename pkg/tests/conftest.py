import pytest

from cremona.exactnum import GF, QQ


@pytest.fixture(params=["q", "fp"])
def field(request):
    return QQ if request.param == "q" else GF()
