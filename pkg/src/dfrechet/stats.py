from __future__ import annotations

from dataclasses import dataclass


@dataclass
class ProbeStats:
    """Counters gathered across the decision calls of one run."""

    probes: int = 0
    max_white: int = 0
    max_switching: int = 0
    last_white: int = 0

    def record(self, white: int = 0, switching: int = 0) -> None:
        self.probes += 1
        self.last_white = white
        self.max_white = max(self.max_white, white)
        self.max_switching = max(self.max_switching, switching)
