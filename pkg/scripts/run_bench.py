#!/usr/bin/env python3
"""Run the bundled benchmark corpus against the bundled merge tool.

Equivalent to:
    summer-bench run corpus/manifest.json --tool "python3 -m summer merge"
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from summer.bench import main  # noqa: E402

if __name__ == "__main__":
    manifest = os.path.join(os.path.dirname(__file__), "..", "corpus", "manifest.json")
    sys.exit(
        main(["run", manifest, "--tool", f"{sys.executable} -m summer merge"])
    )
