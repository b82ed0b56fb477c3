"""断点续跑 (line-delimited JSON census checkpoint)

Line 1 is the run header; every further line records one finished chunk::

    {"group_id": ..., "mode": ..., "reduce_by_aut": ..., "seed": ..., "r": ..., "chunk_size": ...}
    {"range_start": 0, "range_end": 2048, "tallies": {"DRR": ..., ...}}

A truncated final line (an interrupted write) is dropped on load.
"""
from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path
from typing import Any, Dict, Tuple, Union

from src.core.census.records import Tallies
from src.core.errors import CheckpointMismatchError

logger = logging.getLogger(__name__)


class CensusCheckpoint:
    """Append-only record of finished chunks for one census run."""

    def __init__(self, path: Union[str, Path], header: Dict[str, Any]):
        self.path = Path(path)
        self.header = dict(header)
        self._lock = threading.Lock()

    def load(self) -> Dict[int, Tuple[int, Tallies]]:
        """Finished chunks keyed by range_start; creates the file when missing.

        Rewrites the file without any truncated tail so later appends stay
        line-aligned.
        """
        if not self.path.exists() or self.path.stat().st_size == 0:
            self._rewrite([])
            return {}
        lines = self.path.read_text(encoding="utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        try:
            header = json.loads(lines[0])
        except (IndexError, json.JSONDecodeError) as e:
            raise CheckpointMismatchError(f"checkpoint {self.path} has no readable header") from e
        if header != self.header:
            raise CheckpointMismatchError(f"checkpoint {self.path} was written for {header}, this run is {self.header}")

        done: Dict[int, Tuple[int, Tallies]] = {}
        kept = []
        for i, line in enumerate(lines[1:], start=1):
            try:
                entry = json.loads(line)
                start, end = int(entry["range_start"]), int(entry["range_end"])
                tallies = Tallies.from_json(entry["tallies"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                if i == len(lines) - 1:
                    logger.warning(f"Dropping truncated last line of checkpoint {self.path}")
                    break
                raise CheckpointMismatchError(f"corrupt checkpoint line {i + 1} in {self.path}") from e
            done[start] = (end, tallies)
            kept.append(line)
        self._rewrite(kept)
        if done:
            logger.info(f"Resuming from checkpoint {self.path}: {len(done)} chunks already done")
        return done

    def append(self, start: int, end: int, tallies: Tallies) -> None:
        line = json.dumps({"range_start": start, "range_end": end, "tallies": tallies.to_json()}, sort_keys=True)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line + "\n")
                f.flush()

    def _rewrite(self, lines) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_name(self.path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(json.dumps(self.header, sort_keys=True) + "\n")
            for line in lines:
                f.write(line + "\n")
        os.replace(tmp, self.path)
