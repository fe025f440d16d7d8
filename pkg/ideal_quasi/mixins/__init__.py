from .layout_tables_mixin import LayoutTablesMixin
from .parsing_mixin import ParsingMixin
from .report_mixin import ReportMixin
from .status_timer_mixin import StatusTimerMixin

__all__ = [
    "LayoutTablesMixin",
    "ParsingMixin",
    "ReportMixin",
    "StatusTimerMixin",
]
