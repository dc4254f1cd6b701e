"""Verdict algebra shared by all checkers.

A verdict is either total ("decided", backed by an exact theorem or a finite
counterexample) or bounded ("verified up to level N", meaning no violation was
found below that level).  Negative verdicts always carry a finite,
independently re-checkable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class VerdictKind(Enum):
    DECIDED_ERGODIC = "decided-ergodic"
    DECIDED_NOT_ERGODIC = "decided-not-ergodic"
    VERIFIED_UP_TO_LEVEL = "verified-up-to-level"
    INCONCLUSIVE = "inconclusive"
    NOT_INVARIANT = "not-invariant"
    NOT_ONE_LIPSCHITZ = "not-one-lipschitz"
    DECIDED_NOT_MEASURE_PRESERVING = "decided-not-measure-preserving"


class Method(Enum):
    CRITERION = "criterion"
    ORACLE = "oracle"
    LARIN = "larin"
    MONOMIAL = "perturbed-monomial"
    AFFINE_RULE = "affine-rule"


_POSITIVE = {VerdictKind.DECIDED_ERGODIC, VerdictKind.VERIFIED_UP_TO_LEVEL}


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    method: Method
    level: Optional[int] = None
    witness: Optional[dict] = field(default=None)
    reason: Optional[str] = None

    @property
    def is_positive(self) -> bool:
        """True for verdicts compatible with ergodicity (decided or bounded)."""
        return self.kind in _POSITIVE

    @property
    def is_decided(self) -> bool:
        return self.kind is not VerdictKind.VERIFIED_UP_TO_LEVEL and \
            self.kind is not VerdictKind.INCONCLUSIVE

    @property
    def exit_code(self) -> int:
        if self.is_positive:
            return 0
        if self.kind is VerdictKind.INCONCLUSIVE:
            return 2
        return 1

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "method": self.method.value,
            "level": self.level,
            "witness": self.witness,
            "reason": self.reason,
        }

    def describe(self) -> str:
        parts = [self.kind.value]
        if self.level is not None:
            parts.append(f"level={self.level}")
        parts.append(f"method={self.method.value}")
        if self.witness:
            parts.append(f"witness={self.witness}")
        if self.reason:
            parts.append(f"reason={self.reason}")
        return " ".join(parts)
