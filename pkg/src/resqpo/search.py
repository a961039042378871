"""Exhaustive depth-first enumeration over finite domains.

A problem supplies an ordered variable list, a per-variable domain that may
depend on the assignment so far, and ``push``/``pop`` hooks.  ``push`` is
called on every tentative extension and returns whether the extended partial
assignment can still lead to a solution; ``pop`` is always called afterwards
so problems can keep incremental state (for example a partially built
quotient graph).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence

Assignment = Dict[Hashable, Any]


class SearchProblem:
    def variables(self) -> Sequence[Hashable]:
        raise NotImplementedError

    def domain(self, var: Hashable, assignment: Assignment) -> Iterable[Any]:
        raise NotImplementedError

    def push(self, var: Hashable, value: Any, assignment: Assignment) -> bool:
        return True

    def pop(self, var: Hashable, value: Any, assignment: Assignment) -> None:
        pass


@dataclass
class TableProblem(SearchProblem):
    """Fixed domains plus pruning callbacks ``check(assignment) -> bool`` run on partial assignments."""

    domains: Mapping[Hashable, Sequence[Any]]
    checks: List[Callable[[Assignment], bool]] = field(default_factory=list)

    def variables(self) -> Sequence[Hashable]:
        return list(self.domains)

    def domain(self, var, assignment):
        return self.domains[var]

    def push(self, var, value, assignment) -> bool:
        return all(chk(assignment) for chk in self.checks)


def solve_all(problem: SearchProblem) -> Iterator[Assignment]:
    """Yield every complete assignment accepted by ``problem`` exactly once."""
    order = list(problem.variables())
    assignment: Assignment = {}
    n = len(order)
    if n == 0:
        yield {}
        return
    # explicit stack of domain iterators keeps deep problems off the recursion limit
    stack: List[Iterator[Any]] = [iter(problem.domain(order[0], assignment))]
    while stack:
        depth = len(stack) - 1
        var = order[depth]
        if var in assignment:
            problem.pop(var, assignment.pop(var), assignment)
        advanced = False
        for value in stack[-1]:
            assignment[var] = value
            if problem.push(var, value, assignment):
                advanced = True
                break
            problem.pop(var, value, assignment)
            del assignment[var]
        if not advanced:
            stack.pop()
            continue
        if depth + 1 == n:
            yield dict(assignment)
            continue
        stack.append(iter(problem.domain(order[depth + 1], assignment)))
