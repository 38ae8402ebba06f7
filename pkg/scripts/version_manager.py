#!/usr/bin/env python3
"""
pseudopoly Version Manager
==========================
Bump the release version in pseudopoly/__init__.py and setup.py together.
"""

import argparse
import re
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_FILES = [PROJECT_ROOT / "pseudopoly" / "__init__.py", PROJECT_ROOT / "setup.py"]

VERSION_PATTERNS = [
    r'(__version__\s*=\s*["\'])([0-9]+\.[0-9]+\.[0-9]+)(["\'])',
    r'(\bversion\s*=\s*["\'])([0-9]+\.[0-9]+\.[0-9]+)(["\'])',
]


def read_version(path: Path):
    """First x.y.z version assignment in ``path``, or None."""
    content = path.read_text(encoding="utf-8")
    for pattern in VERSION_PATTERNS:
        match = re.search(pattern, content)
        if match:
            return match.group(2)
    return None


def bump(version: str, part: str) -> str:
    major, minor, patch = (int(x) for x in version.split("."))
    if part == "major":
        return f"{major + 1}.0.0"
    if part == "minor":
        return f"{major}.{minor + 1}.0"
    return f"{major}.{minor}.{patch + 1}"


def write_version(path: Path, old: str, new: str) -> bool:
    content = path.read_text(encoding="utf-8")
    updated = content
    for pattern in VERSION_PATTERNS:
        updated = re.sub(pattern, lambda m: m.group(1) + new + m.group(3) if m.group(2) == old else m.group(0),
                         updated)
    if updated == content:
        return False
    path.write_text(updated, encoding="utf-8")
    return True


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Bump the pseudopoly release version")
    parser.add_argument("part", choices=["patch", "minor", "major"])
    parser.add_argument("files", nargs="*", type=Path,
                        help="Files to update (default: pseudopoly/__init__.py and setup.py)")
    args = parser.parse_args(argv)

    files = args.files or [f for f in DEFAULT_FILES if f.exists()]
    if not files:
        print("❌ No files to update found")
        return 1

    current = read_version(files[0])
    if not current:
        print(f"❌ Could not find a version in {files[0]}")
        return 1
    new = bump(current, args.part)
    print(f"📦 Current version: {current}")
    print(f"🚀 New version: {new}")

    updated = 0
    for path in files:
        if write_version(path, current, new):
            print(f"✅ Updated {path}")
            updated += 1
        else:
            print(f"❌ No version {current} found in {path}")

    print(f"\n📊 Updated {updated}/{len(files)} files")
    if not updated:
        return 1
    print(f"NEW_VERSION={new}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
