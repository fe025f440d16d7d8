from __future__ import annotations

import time
from collections.abc import Iterator
from contextlib import contextmanager
from typing import TextIO

from ideal_quasi.debug_logger import timed_step


class StatusTimerMixin:
    err: TextIO
    show_timings: bool

    # Method: _format_timer_duration - Formate une durée pour l'affichage compact sur stderr.
    def _format_timer_duration(self, seconds: float | None) -> str:
        if seconds is None:
            return "-"
        safe_value = max(0.0, float(seconds))
        if safe_value < 60.0:
            return f"{safe_value:.1f}s"
        minutes = int(safe_value // 60.0)
        remainder = safe_value - (minutes * 60.0)
        return f"{minutes}m{remainder:04.1f}s"

    # Method: _status_timer - Mesure une commande (journal, et stderr si demandé).
    @contextmanager
    def _status_timer(self, label: str) -> Iterator[None]:
        started = time.monotonic()
        try:
            with timed_step(label):
                yield
        finally:
            if self.show_timings:
                elapsed = time.monotonic() - started
                print(f"{label}: {self._format_timer_duration(elapsed)}", file=self.err)
