"""Per-axiom pass/fail records."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: str | None = None
    counted: bool = True  # False for certification lines that are not axioms


@dataclass
class AxiomReport:
    title: str = ""
    results: list = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str | None = None, counted: bool = True):
        self.results.append(AxiomResult(name, bool(passed), None if passed else witness, counted))
        return self

    def extend(self, other: "AxiomReport", prefix: str = "", counted: bool | None = None):
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.witness,
                                            r.counted if counted is None else counted))
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.results]

    @property
    def n_axioms(self) -> int:
        return sum(1 for r in self.results if r.counted)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            s = f"{r.name}: {'PASS' if r.passed else 'FAIL'}"
            if r.witness:
                s += f" [{r.witness}]"
            out.append(s)
        return out

    def summary(self) -> str:
        if self.passed:
            return f"ALL PASS ({self.n_axioms} axioms)"
        return f"{len(self.failures())} FAILED of {len(self.results)}"

    def __str__(self):
        return "\n".join(self.lines() + [self.summary()])

    def __bool__(self):
        return self.passed
