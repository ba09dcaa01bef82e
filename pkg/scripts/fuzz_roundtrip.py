#!/usr/bin/env python3
"""Standalone round-trip fuzzer: decompose then replay must be byte-exact.

Usage: python3 scripts/fuzz_roundtrip.py [CASES] [SEED]
Prints a failure reproduction (base and target repr) and exits 1 on the
first divergence; exits 0 after all cases pass.
"""

from __future__ import annotations

import os
import random
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from summer.engine import apply_steps, decompose  # noqa: E402

ALPHABET = [
    "alpha", "beta", "gamma", "x", "y", "z", "0", "17", "+", "-", "=", ";",
    ",", "(", ")", "{", "}", " ", "  ", "\n", "\t", "\r\n", "_", '"',
]


def mutate(rng: random.Random, tokens: list[str]) -> list[str]:
    t = list(tokens)
    for _ in range(rng.randrange(0, 8)):
        op = rng.choice(["sub", "ins", "del", "move", "block_ins"])
        if not t:
            op = "ins"
        if op == "sub":
            t[rng.randrange(len(t))] = rng.choice(ALPHABET)
        elif op == "ins":
            t.insert(rng.randrange(len(t) + 1), rng.choice(ALPHABET))
        elif op == "del":
            del t[rng.randrange(len(t))]
        elif op == "block_ins":
            k = rng.randrange(len(t) + 1)
            t[k:k] = [rng.choice(ALPHABET) for _ in range(rng.randrange(1, 6))]
        else:
            i = rng.randrange(len(t))
            j = min(len(t), i + rng.randrange(1, 10))
            block = t[i:j]
            del t[i:j]
            k = rng.randrange(len(t) + 1)
            t[k:k] = block
    return t


def main() -> int:
    cases = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    seed = int(sys.argv[2], 0) if len(sys.argv) > 2 else 0x5EED
    rng = random.Random(seed)
    started = time.perf_counter()
    for case in range(cases):
        toks = [rng.choice(ALPHABET) for _ in range(rng.randrange(0, 200))]
        base = {"": "".join(toks)}
        target = {"": "".join(mutate(rng, toks))}
        steps = decompose(base, target)
        outcome = apply_steps(base, steps)
        if not outcome.ok or outcome.result != target:
            print(f"FAIL at case {case}")
            print("base   =", repr(base[""]))
            print("target =", repr(target[""]))
            return 1
        if case and case % 500 == 0:
            print(f"...{case} cases ok")
    elapsed = time.perf_counter() - started
    print(f"{cases} cases round-tripped byte-exactly in {elapsed:.1f}s (seed {seed:#x})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
