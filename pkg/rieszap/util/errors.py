from __future__ import annotations

from typing import Optional


class RieszapError(Exception):
    pass


class InvalidInputError(RieszapError, ValueError):
    pass


class ResourceLimitError(RieszapError):
    def __init__(self, cap: str, value: int, requested: int) -> None:
        super().__init__(
            "%s exceeded: requested %s, limit is %s" % (cap, requested, value)
        )
        self.cap = cap
        self.value = value
        self.requested = requested


class SearchExhaustedError(RieszapError):
    def __init__(self, m_max: int, step: Optional[int] = None) -> None:
        where = "" if step is None else " at block %s" % step
        super().__init__("No translation M <= %s qualifies%s" % (m_max, where))
        self.m_max = m_max
        self.step = step
