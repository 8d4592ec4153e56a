"""Run artifacts: fixed-layout CSV files and a JSON manifest per command.

CSV columns and their order are a contract with downstream plotting; floats
are written with 17 significant digits so reruns diff byte-identically.
"""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path

SCAN_COLUMNS = ["s_re", "s_im", "det_re", "det_im"]
ZEROS_COLUMNS = ["s_re", "s_im", "mult", "residual"]
EXPERIMENT_COLUMNS = [
    "n", "trial", "seed", "certified", "ell", "max_norm", "new_zero_count",
]
BOUNDS_COLUMNS = ["ell", "s_re", "s_im", "bound", "lhs_compressed", "fallback_flag"]
NORM_DECAY_COLUMNS = ["ell", "s_re", "s_im", "norm", "bound"]


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_csv(path, columns: list[str], rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(columns)]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row width {len(row)} != {len(columns)} columns")
        lines.append(",".join(fmt_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def file_sha256(path) -> str:
    h = hashlib.sha256()
    h.update(Path(path).read_bytes())
    return h.hexdigest()


class RunWriter:
    """Collects artifacts of one command run under a single output directory."""

    def __init__(self, out_dir, command: str, params: dict, inputs: list[str]):
        from . import __version__

        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.command = command
        self.params = params
        self.inputs = inputs
        self.version = __version__
        self.artifacts: list[str] = []
        self._t0 = time.monotonic()

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def csv(self, name: str, columns: list[str], rows) -> Path:
        p = self.path(name)
        write_csv(p, columns, rows)
        self.artifacts.append(name)
        return p

    def json(self, name: str, payload: dict) -> Path:
        p = self.path(name)
        p.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        self.artifacts.append(name)
        return p

    def finish(self) -> Path:
        manifest = {
            "command": self.command,
            "params": self.params,
            "inputs": {
                str(p): file_sha256(p) for p in self.inputs if Path(p).is_file()
            },
            "version": self.version,
            "artifacts": sorted(self.artifacts),
            "wall_time_s": round(time.monotonic() - self._t0, 3),
        }
        p = self.out_dir / "manifest.json"
        p.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return p
