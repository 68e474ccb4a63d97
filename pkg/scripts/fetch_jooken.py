"""Fetch the published hard knapsack instances and pin their checksums.

    python scripts/fetch_jooken.py                 # clone into data/jooken
    python scripts/fetch_jooken.py --verify-only   # re-check an existing copy

The dataset is not vendored. On the first fetch a SHA-256 manifest of every
instance and solution file is written to data/jooken/MANIFEST.sha256;
later runs verify against it, and a committed copy can be passed with
--manifest to pin a known-good snapshot.
"""

import argparse
import hashlib
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DEFAULT_URL = "https://github.com/JorikJooken/knapsackProblemInstances.git"
DEFAULT_DEST = ROOT / "data" / "jooken"
PATTERNS = ("*.in", "outp.out", "*.opt")


def tracked_files(dest):
    files = set()
    for pat in PATTERNS:
        files.update(p for p in dest.rglob(pat) if p.is_file())
    return sorted(files)


def sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(dest, manifest):
    lines = [f"{sha256(p)}  {p.relative_to(dest).as_posix()}" for p in tracked_files(dest)]
    manifest.write_text("\n".join(lines) + "\n")
    return len(lines)


def verify_manifest(dest, manifest):
    bad = 0
    entries = [ln.split(None, 1) for ln in manifest.read_text().splitlines() if ln.strip()]
    for digest, rel in entries:
        path = dest / rel
        if not path.is_file():
            print(f"missing: {rel}", file=sys.stderr)
            bad += 1
        elif sha256(path) != digest:
            print(f"checksum mismatch: {rel}", file=sys.stderr)
            bad += 1
    return len(entries), bad


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--url", default=DEFAULT_URL)
    ap.add_argument("--dest", type=Path, default=DEFAULT_DEST)
    ap.add_argument("--manifest", type=Path, default=None, help="checksum manifest to verify against")
    ap.add_argument("--verify-only", action="store_true")
    args = ap.parse_args(argv)

    dest = args.dest
    manifest = args.manifest or dest / "MANIFEST.sha256"
    if not args.verify_only and not dest.exists():
        dest.parent.mkdir(parents=True, exist_ok=True)
        subprocess.run(["git", "clone", "--depth", "1", args.url, str(dest)], check=True)
    if not dest.is_dir():
        sys.exit(f"{dest} does not exist")
    if manifest.is_file():
        total, bad = verify_manifest(dest, manifest)
        print(f"verified {total - bad}/{total} files against {manifest}")
        sys.exit(1 if bad else 0)
    count = write_manifest(dest, manifest)
    print(f"wrote {manifest} ({count} files)")


if __name__ == "__main__":
    main()
