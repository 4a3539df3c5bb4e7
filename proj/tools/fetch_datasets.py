#!/usr/bin/env python3
"""Download the classic UCI benchmark datasets (ARFF) from OpenML.

Fetches the datasets used by the benchmark suite into data/uci/ so that
`ctest -R acceptance_uci_suite` and `miniboost bench --suite data/uci` can
run. Needs network access; uses only the Python standard library.

Usage:
    python3 tools/fetch_datasets.py [--out data/uci] [--names a,b,c]
"""

import argparse
import json
import sys
import urllib.request
from pathlib import Path

API = "https://www.openml.org/api/v1/json"

DEFAULT_NAMES = [
    "anneal",
    "audiology",
    "autos",
    "balance-scale",
    "breast-cancer",
    "colic",
    "credit-a",
    "diabetes",
    "glass",
    "heart-c",
    "hepatitis",
    "ionosphere",
    "labor",
    "lymph",
    "sonar",
    "soybean",
    "vehicle",
    "vote",
    "vowel",
    "zoo",
]


def fetch_json(url: str):
    with urllib.request.urlopen(url, timeout=60) as response:
        return json.loads(response.read().decode("utf-8"))


def dataset_url(name: str) -> str:
    """Resolve a dataset name to the ARFF download URL of its first version."""
    listing = fetch_json(f"{API}/data/list/data_name/{name}/limit/50")
    candidates = [
        d
        for d in listing["data"]["dataset"]
        if d["name"] == name and d.get("format", "").lower() == "arff"
    ]
    if not candidates:
        raise LookupError(f"no ARFF dataset named '{name}' on OpenML")
    first = min(candidates, key=lambda d: int(d["version"]))
    description = fetch_json(f"{API}/data/{first['did']}")
    return description["data_set_description"]["url"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/uci", help="output directory")
    parser.add_argument(
        "--names", default=",".join(DEFAULT_NAMES), help="comma-separated dataset names"
    )
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = [n.strip() for n in args.names.split(",") if n.strip()]

    failures = []
    for name in names:
        target = out_dir / f"{name}.arff"
        if target.exists():
            print(f"{name}: already present")
            continue
        try:
            url = dataset_url(name)
            print(f"{name}: downloading {url}")
            with urllib.request.urlopen(url, timeout=120) as response:
                target.write_bytes(response.read())
        except Exception as error:  # noqa: BLE001 - report and continue
            failures.append(name)
            print(f"{name}: FAILED ({error})", file=sys.stderr)

    print(f"done: {len(names) - len(failures)}/{len(names)} datasets in {out_dir}")
    if failures:
        print("failed: " + ", ".join(failures), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
