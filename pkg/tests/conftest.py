import pathlib
import sys

import pytest

SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


@pytest.fixture(scope="session")
def figure1_rows_fallback():
    """Figure-1 preset evaluated once with numeric fallback enabled."""
    from horizon_teleport import figure_preset, run_sweep

    return run_sweep(figure_preset(1), numeric_fallback=True)


@pytest.fixture(scope="session")
def figure1_rows_strict():
    """Figure-1 preset with the default strict condition handling."""
    from horizon_teleport import figure_preset, run_sweep

    return run_sweep(figure_preset(1), numeric_fallback=False)
