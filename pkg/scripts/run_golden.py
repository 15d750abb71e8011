#!/usr/bin/env python3
"""Run the golden epsilon-neighbourhood proof and print each step."""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from waterproof_lite.kernel import EMPTY_ENV, goal_display, initial_state
from waterproof_lite.lang import parse_script, print_sentence
from waterproof_lite.tactics import TacticError, step

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from helpers import GOLDEN_SCRIPT  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="only print the final status")
    args = parser.parse_args()

    sentences = parse_script(GOLDEN_SCRIPT)
    state = initial_state(sentences[0].payload[1])
    started = time.monotonic()
    for sentence in sentences[1:]:
        try:
            state = step(state, sentence, EMPTY_ENV).state
        except TacticError as e:
            print(f"FAILED at `{print_sentence(sentence)}`: {e.message}")
            return 1
        if not args.quiet:
            goals = " | ".join(goal_display(g).replace("\n", " ")
                               for g in state.goals) or "(none)"
            print(f"{print_sentence(sentence):<55} goals: {goals}")
    elapsed = time.monotonic() - started
    print(f"status: {state.status} ({len(sentences)} sentences, "
          f"{elapsed:.3f}s)")
    return 0 if state.status == "complete" else 1


if __name__ == "__main__":
    sys.exit(main())
