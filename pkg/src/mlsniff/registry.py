"""Detector registry.

Detector modules register their rules at import time through
:meth:`Registry.rule`.  The registry is treated as immutable once
:mod:`mlsniff.detectors` has been imported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterable, Iterator

from mlsniff.astcore import Node, Span
from mlsniff.model import DetectorDescriptor, Finding, Framework

if TYPE_CHECKING:
    from mlsniff.detectors.base import RuleMatchContext

Match = tuple["Node | Span", str]
CheckFn = Callable[["RuleMatchContext"], Iterable[Match]]


@dataclass(frozen=True)
class Detector:
    descriptor: DetectorDescriptor
    check: CheckFn

    @property
    def id(self) -> str:
        return self.descriptor.id

    @property
    def framework(self) -> Framework:
        return self.descriptor.framework

    def run(self, ctx: "RuleMatchContext") -> list[Finding]:
        d = self.descriptor
        path = ctx.tree.source.path
        out = []
        for where, message in self.check(ctx):
            span = where.span if isinstance(where, Node) else where
            out.append(Finding(d.id, d.name, d.framework, path, span, message, d.advice))
        return out


class Registry:
    def __init__(self) -> None:
        self._detectors: dict[str, Detector] = {}

    def rule(self, id: str, name: str, description: str, advice: str,
             smell: str = "") -> Callable[[CheckFn], CheckFn]:
        def register(fn: CheckFn) -> CheckFn:
            if id in self._detectors:
                raise ValueError(f"duplicate detector id {id}")
            descriptor = DetectorDescriptor(id, name, Framework.from_prefix(id), description, advice,
                                            smell)
            self._detectors[id] = Detector(descriptor, fn)
            return fn

        return register

    def __iter__(self) -> Iterator[Detector]:
        return iter(sorted(self._detectors.values(), key=lambda d: d.id))

    def __len__(self) -> int:
        return len(self._detectors)

    def __contains__(self, detector_id: object) -> bool:
        return detector_id in self._detectors

    def get(self, detector_id: str) -> Detector:
        return self._detectors[detector_id]

    def ids(self) -> frozenset[str]:
        return frozenset(self._detectors)

    def for_framework(self, framework: Framework) -> list[Detector]:
        return [d for d in self if d.framework is framework]


REGISTRY = Registry()
rule = REGISTRY.rule
