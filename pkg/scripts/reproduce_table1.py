"""Feed the published per-session counts through the report writer and print the means."""

import argparse
import json
from pathlib import Path

from snipforge.evaluation import JudgeabilityReport, emit_report

SIMPLE = [2, 3, 4, 5, 1, 7, 3, 5, 6, 0, 6, 1, 5, 2, 1]
SEMANTIC = [8, 7, 9, 8, 10, 8, 9, 9, 10, 7, 9, 6, 8, 7, 8]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/table1"))
    args = parser.parse_args()
    report = JudgeabilityReport.from_counts(SIMPLE, SEMANTIC)
    emit_report(report, args.out)
    print((args.out / "table1.csv").read_text(), end="")
    print(json.dumps(report.summary(), indent=2))


if __name__ == "__main__":
    main()
