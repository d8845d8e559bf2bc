#!/usr/bin/env python3
"""Run every golden-fixture suite at full depth (k up to 3, all slice
families three regular-representation steps in).

    python scripts/verify_all.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mackey.cli import main as cli_main


def main() -> int:
    t0 = time.time()
    code = cli_main(["verify", "--max-k", "3", "--max-j", "3"])
    print(f"total {time.time() - t0:.1f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
