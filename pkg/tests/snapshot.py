"""Tiny JSON snapshot helper; set LATTICELAB_UPDATE_SNAPSHOTS=1 to rewrite files."""
import json
import os
from pathlib import Path

DIR = Path(__file__).parent / "snapshots"


def check(name, data):
    path = DIR / f"{name}.json"
    text = json.dumps(data, indent=1, sort_keys=True) + "\n"
    if os.environ.get("LATTICELAB_UPDATE_SNAPSHOTS") == "1" or not path.exists():
        if os.environ.get("LATTICELAB_UPDATE_SNAPSHOTS") != "1":
            raise AssertionError(f"missing snapshot {path}; rerun with LATTICELAB_UPDATE_SNAPSHOTS=1")
        DIR.mkdir(exist_ok=True)
        path.write_text(text)
        return
    assert json.loads(path.read_text()) == json.loads(text), f"snapshot {name} changed"
