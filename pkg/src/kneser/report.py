from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from .surd import Surd, format_decimal

UNCONDITIONAL = "unconditional evaluation, no theorem guarantee"


@dataclass(frozen=True)
class BoundReport:
    """A named bound, its hypothesis gate and an optional verdict.

    ``kind`` says which side the bound sits on: a ``lower`` bound holds when
    the measured quantity is at least ``value``, an ``upper`` bound when it
    is at most ``value`` (strictly, if ``strict``). ``value`` is ``None``
    for a vacuous bound.
    """

    name: str
    value: Optional[Surd]
    kind: str
    hypothesis: str
    hypothesis_ok: bool
    forced: bool = False
    measured: Optional[Fraction] = None
    verdict: Optional[str] = None
    strict: bool = False

    def compare(self, measured: Union[int, Fraction, Surd], force: bool = False) -> "BoundReport":
        if not (self.hypothesis_ok or force or self.forced):
            raise ValueError(f"{self.name}: hypothesis {self.hypothesis!r} fails; pass force=True")
        m = Surd.of(measured)
        if self.value is None:
            verdict = "vacuous"
        elif self.kind == "lower":
            ok = m > self.value if self.strict else m >= self.value
            verdict = "holds" if ok else "violated"
        else:
            ok = m < self.value if self.strict else m <= self.value
            verdict = "holds" if ok else "violated"
        shown = m.as_fraction() if m.is_rational else Fraction(m.floor_value())
        return replace(self, measured=shown, verdict=verdict, forced=self.forced or (force and not self.hypothesis_ok))

    @property
    def holds(self) -> bool:
        return self.verdict in ("holds", "vacuous")

    @property
    def rounding(self) -> str:
        return "down" if self.kind == "lower" else "up"

    def interval(self) -> tuple[Fraction, Fraction]:
        if self.value is None:
            raise ValueError("vacuous bound has no value")
        return self.value.bracket()

    def display(self, digits: int = 12) -> str:
        if self.value is None:
            return "vacuous"
        return format_decimal(self.value, self.rounding, digits)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "value": self.display(),
            "kind": self.kind,
            "rounding": self.rounding,
            "exact": None if self.value is None else str(self.value),
            "hypothesis": self.hypothesis,
            "hypothesis_ok": self.hypothesis_ok,
        }
        if self.forced and not self.hypothesis_ok:
            out["note"] = UNCONDITIONAL
        if self.verdict is not None:
            out["measured"] = str(self.measured)
            out["verdict"] = self.verdict
        return out
