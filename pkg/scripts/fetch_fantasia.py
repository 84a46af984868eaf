#!/usr/bin/env python3
"""Fetch Fantasia beat annotations and convert them to plain-text beat files.

Downloads ten 120-minute records (five young, five elderly) from PhysioNet
and writes one beat-times file per subject (decimal seconds, one per line),
the format read by ``rppglab window-matrix`` and the acceptance suite:

    python scripts/fetch_fantasia.py --out data/fantasia
    FANTASIA_BEATS_DIR=data/fantasia pytest -s tests/test_acceptance.py

Requires network access and the ``wfdb`` package (``pip install wfdb``) to
decode PhysioNet's binary annotation format; this toolkit itself only reads
the converted text files.
"""

import argparse
from pathlib import Path

YOUNG = ["f1y01", "f1y02", "f1y03", "f1y04", "f1y05"]
ELDERLY = ["f1o01", "f1o02", "f1o03", "f1o04", "f1o05"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/fantasia")
    parser.add_argument(
        "--records",
        nargs="*",
        default=YOUNG + ELDERLY,
        help="record names; the default is one unambiguous five+five subset "
        "(the reference ten-subject selection is not uniquely documented)",
    )
    args = parser.parse_args()

    try:
        import wfdb
    except ImportError:
        raise SystemExit(
            "wfdb is required to decode PhysioNet annotations: pip install wfdb"
        )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for record in args.records:
        ann = wfdb.rdann(record, "ecg", pn_dir="fantasia")
        seconds = ann.sample / ann.fs
        path = out_dir / f"{record}.txt"
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for t in seconds:
                handle.write(f"{float(t)!r}\n")
        print(f"{record}: {len(seconds)} beats over {seconds[-1] / 60:.1f} min -> {path}")


if __name__ == "__main__":
    main()
