#!/usr/bin/env python3
"""Cross-check solve_linear against the brute-force oracle on random
linear systems.  Exits nonzero on the first disagreement."""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from fm_oracle import satisfiable  # noqa: E402
from waterproof_lite.auto import solve_linear  # noqa: E402
from waterproof_lite.kernel import Add, Atom, Mul, Var, rat  # noqa: E402

FALSE = Atom("<", rat(0), rat(0))


def random_system(rng, max_vars=4, max_constraints=6):
    nvars = rng.randint(1, max_vars)
    constraints = []
    for _ in range(rng.randint(1, max_constraints)):
        coeffs = tuple(rng.randint(-3, 3) for _ in range(nvars))
        const = rng.randint(-5, 5)
        strict = rng.random() < 0.5
        constraints.append((coeffs, const, strict))
    return nvars, constraints


def constraint_atom(coeffs, const, strict):
    """sum(c*x) + const >= 0 (or > 0) as a relation atom."""
    term = rat(const)
    for k, c in enumerate(coeffs):
        term = Add(term, Mul(rat(c), Var(f"x{k}")))
    return Atom(">" if strict else "≥", term, rat(0))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for case in range(args.cases):
        nvars, constraints = random_system(rng)
        hyps = [constraint_atom(*c) for c in constraints]
        solver_unsat = solve_linear(hyps, FALSE) == "valid"
        oracle_unsat = not satisfiable(constraints, nvars)
        if solver_unsat != oracle_unsat:
            print(f"case {case}: solver says "
                  f"{'unsat' if solver_unsat else 'sat?'}, oracle says "
                  f"{'unsat' if oracle_unsat else 'sat'}")
            print(f"  system: {constraints}")
            return 1
    print(f"{args.cases} cases, no disagreements")
    return 0


if __name__ == "__main__":
    sys.exit(main())
