"""Regenerate the recorded service exchanges used by the frontend tests.

Run from the repository root after installing the Python package:

    python3 frontend/tests/fixtures/generate.py

Each flow fixture is an ordered list of {method, path, body, response}
entries exactly as the live service produced them, so the tests replay
real payloads without a running server.
"""

from __future__ import annotations

import json
import pathlib
import sys

from fastapi.testclient import TestClient

from polycap.cli import main as cli_main
from polycap.service import create_app
from polycap.staircase import MAIN_BETA, inner_corners

HERE = pathlib.Path(__file__).parent


class Recorder:
    def __init__(self) -> None:
        self.client = TestClient(create_app())
        self.log: list[dict] = []

    def call(self, method: str, path: str, body=None):
        if method == "GET":
            res = self.client.get(path)
        else:
            res = self.client.post(path, json=body)
        assert res.status_code == 200, (path, res.status_code, res.text)
        self.log.append({"method": method, "path": path, "body": body,
                         "response": res.json()})
        return res.json()


def record_flow(letters: str, with_embedding: bool = False,
                with_undo: bool = False) -> list[dict]:
    rec = Recorder()
    created = rec.call("POST", "/sessions", {"preset": "main"})
    sid = created["id"]
    for letter in letters:
        rec.call("POST", f"/sessions/{sid}/mutate", {"vertex": letter})
    if with_undo:
        rec.call("POST", f"/sessions/{sid}/undo")
    if with_embedding:
        rec.call("GET", f"/sessions/{sid}/embedding")
    # session ids vary per run; pin them for deterministic replay
    for entry in rec.log:
        entry["path"] = entry["path"].replace(sid, "SID")
        if "id" in entry["response"]:
            entry["response"]["id"] = "SID"
    return rec.log


def main() -> int:
    (HERE / "flow_v2yx.json").write_text(
        json.dumps(record_flow("vvyx"), indent=1))
    (HERE / "flow_undo.json").write_text(
        json.dumps(record_flow("v", with_undo=True), indent=1))
    (HERE / "flow_i1.json").write_text(
        json.dumps(record_flow("vvyxxy", with_embedding=True), indent=1))

    rec = Recorder()
    created = rec.call("POST", "/sessions", {"preset": "main"})
    sid = created["id"]
    for letter in "vvyxxy":
        rec.call("POST", f"/sessions/{sid}/mutate", {"vertex": letter})
    bounds = rec.call("GET", f"/sessions/{sid}/bounds?kmax=150&samples=10&hi=9")
    (HERE / "bounds_small.json").write_text(json.dumps(bounds, indent=1))

    # CLI output for the same word: the polygon must be byte-identical
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert cli_main(["mutate", "--word", "v2yx"]) == 0
    (HERE / "cli_v2yx.json").write_text(buf.getvalue())

    # independently derived first inner corner, for the marker agreement
    corner = inner_corners(0, MAIN_BETA)[0]
    (HERE / "i1_exact.json").write_text(json.dumps({
        "z": corner.z.to_json(),
        "lambda": corner.lam.to_json(),
        "z_decimal": corner.z.decimal(40, "down"),
        "lambda_decimal": corner.lam.decimal(40, "down"),
    }, indent=1))
    print(f"fixtures written to {HERE}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
