"""Run the acceptance suite and show its per-criterion lines.

    python3 scripts/run_acceptance.py
"""
import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    tests = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    sys.exit(pytest.main([str(tests), "-q", "-s", "-p", "no:cacheprovider"]))
