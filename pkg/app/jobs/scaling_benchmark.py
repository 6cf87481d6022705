from __future__ import annotations

import argparse
import logging
import statistics
import sys
import time
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

# Ensure the app directory is discoverable when invoked via `python -m` or as a script
CURRENT_DIR = Path(__file__).resolve().parent
APP_DIR = CURRENT_DIR.parent
if str(APP_DIR) not in sys.path:
    sys.path.insert(0, str(APP_DIR))

from lib.cnf import Formula
from lib.implication_graph import build_for
from lib.redundancy import check_no_implied


logger = logging.getLogger("clausetrim.jobs.bench")

MAX_RATIO = 3.0


def chain_formula(num_vars: int, num_clauses: int, *, block: int, seed: int) -> Formula:
    """Random ``-x_i | x_j`` clauses with ``i < j`` inside blocks of ``block`` variables.

    Every clause points forward, so the formula is acyclic and both constant assignments
    satisfy it: consistent and implying no literal.
    """
    if block < 2:
        raise ValueError("block must hold at least two variables")
    blocks = max(1, num_vars // block)
    per_block = -(-num_clauses // blocks)
    capacity = block * (block - 1) // 2
    if per_block > capacity:
        raise ValueError(f"{per_block} clauses do not fit in a block of {block} variables")
    rng = np.random.default_rng(seed)
    pairs = np.array([(i, j) for i in range(block) for j in range(i + 1, block)], dtype=np.int64)
    rows: List[Tuple[int, int]] = []
    for index in range(blocks):
        offset = index * block + 1
        chosen = rng.choice(len(pairs), size=per_block, replace=False)
        rows.extend((-(int(pairs[k, 0]) + offset), int(pairs[k, 1]) + offset) for k in chosen)
    return Formula.from_ints(rows[:num_clauses], num_vars=num_vars)


def time_check(formula: Formula, runs: int) -> float:
    samples = []
    for _ in range(runs):
        graph = build_for(formula)
        started = time.perf_counter()
        check_no_implied(formula, graph=graph)
        samples.append(time.perf_counter() - started)
    return statistics.median(samples)


def run_benchmark(
    *,
    num_vars: int,
    clause_counts: Sequence[int],
    runs: int = 5,
    block: int = 20,
    seed: int = 0,
) -> List[Tuple[int, float]]:
    results = []
    for count in clause_counts:
        formula = chain_formula(num_vars, count, block=block, seed=seed)
        elapsed = time_check(formula, runs)
        logger.info("bench.measure", extra={"vars": num_vars, "clauses": formula.m, "median_s": elapsed})
        results.append((formula.m, elapsed))
    return results


def _parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Time the marked-BFS redundancy check on random acyclic chains at doubling clause counts."
    )
    parser.add_argument("--vars", type=int, default=10_000, help="Variables (default: 10000)")
    parser.add_argument(
        "--clauses",
        type=int,
        nargs="+",
        default=[12_500, 25_000, 50_000],
        help="Clause counts to time, ascending (default: 12500 25000 50000)",
    )
    parser.add_argument("--runs", type=int, default=5, help="Runs per size; the median is reported")
    parser.add_argument("--block", type=int, default=20, help="Variables per independent block")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--log-level", default="INFO", help="Logging level (default: INFO)")
    return parser.parse_args()


def main() -> None:
    args = _parse_args()
    logging.basicConfig(level=getattr(logging, args.log_level.upper(), logging.INFO))

    try:
        results = run_benchmark(
            num_vars=args.vars,
            clause_counts=args.clauses,
            runs=args.runs,
            block=args.block,
            seed=args.seed,
        )
    except ValueError as exc:
        raise SystemExit(f"Invalid benchmark sizes: {exc}") from exc

    failed = False
    previous = None
    for clauses, elapsed in results:
        line = f"m={clauses:>8} median={elapsed:.3f}s"
        if previous is not None and previous[1] > 0:
            ratio = elapsed / previous[1]
            line += f" ratio={ratio:.2f}"
            failed = failed or ratio > MAX_RATIO
        print(line)
        previous = (clauses, elapsed)
    if failed:
        raise SystemExit(f"scaling ratio above {MAX_RATIO}")


if __name__ == "__main__":
    main()
