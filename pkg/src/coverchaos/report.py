"""Machine-checkable evidence records for verified claims.

Reports serialize to a line-oriented text format: one header line, then
one ``WITNESS <key>=<decimal>`` line per recorded quantity.  Values are
exact integers printed in full; keys may embed vertex names.  Replaying
a passing report re-validates its witnesses without any search.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class WitnessReport:
    claim: str
    level: int
    mode: str
    verdict: bool
    params: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    notes: tuple = ()
    cost_nodes: int = 0

    def add(self, key: str, value: int) -> None:
        self.witnesses[key] = int(value)

    def serialize(self) -> str:
        head = (f"CLAIM {self.claim} LEVEL {self.level} "
                f"VERDICT {'pass' if self.verdict else 'fail'} MODE {self.mode}")
        lines = [head]
        for k in sorted(self.params):
            lines.append(f"WITNESS {k}={int(self.params[k])}")
        for k, v in self.witnesses.items():
            lines.append(f"WITNESS {k}={int(v)}")
        return "\n".join(lines)


def parse_report(text: str) -> WitnessReport:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "CLAIM":
        raise ValueError("missing CLAIM header")
    claim, level, verdict, mode = head[1], int(head[3]), head[5], head[7]
    witnesses = {}
    for ln in lines[1:]:
        if not ln.startswith("WITNESS "):
            raise ValueError(f"bad line {ln!r}")
        key, _, value = ln[len("WITNESS "):].partition("=")
        witnesses[key] = int(value)
    return WitnessReport(claim=claim, level=level, mode=mode,
                         verdict=(verdict == "pass"), witnesses=witnesses)
