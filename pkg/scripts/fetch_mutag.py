"""Fetch MUTAG in TUDataset format into data/MUTAG.

The files are taken from the grakel wheel on PyPI, which ships MUTAG as a
test dataset; this works wherever pip can reach an index. Pass --source to
copy from an existing directory instead.
"""
import argparse
import shutil
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

FILES = ["MUTAG_A.txt", "MUTAG_graph_indicator.txt", "MUTAG_graph_labels.txt", "README.txt"]
DEFAULT_OUT = Path(__file__).resolve().parents[1] / "data" / "MUTAG"


def from_wheel(out: Path) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "--only-binary", ":all:", "-d", tmp, "grakel"],
            check=True,
        )
        wheel = next(Path(tmp).glob("grakel-*.whl"))
        with zipfile.ZipFile(wheel) as zf:
            for name in FILES:
                member = f"grakel/tests/data/MUTAG/{name}"
                if member in zf.namelist():
                    (out / name).write_bytes(zf.read(member))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--source", type=Path, help="directory that already holds the MUTAG_*.txt files")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    if args.source:
        for name in FILES:
            if (args.source / name).is_file():
                shutil.copy(args.source / name, args.out / name)
    else:
        from_wheel(args.out)

    from graphph.graph import parse_tu_dataset

    ds = parse_tu_dataset(args.out, "MUTAG")
    print(f"{args.out}: {len(ds)} graphs, {ds.class_count} classes")


if __name__ == "__main__":
    main()
