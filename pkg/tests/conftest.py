import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parent.parent
for extra in (ROOT / "src", ROOT / "tests"):
    if str(extra) not in sys.path:
        sys.path.insert(0, str(extra))

# Shared-CPU boxes make wall-clock deadlines flaky; correctness only here.
settings.register_profile(
    "combword", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("combword")
