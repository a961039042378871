from itertools import permutations

from resqpo.search import SearchProblem, TableProblem, solve_all


def _queens(n):
    def ok(asg):
        items = list(asg.items())
        col, row = items[-1]
        return all(r != row and abs(r - row) != col - c for c, r in items[:-1])

    return TableProblem({c: list(range(n)) for c in range(n)}, [ok])


def test_queens_counts():
    assert [sum(1 for _ in solve_all(_queens(n))) for n in (1, 4, 6, 8)] == [1, 2, 4, 92]


def test_empty_problem_has_one_solution():
    assert list(solve_all(TableProblem({}))) == [{}]


def test_unconstrained_product():
    sols = list(solve_all(TableProblem({"x": [0, 1, 2], "y": "ab"})))
    assert len(sols) == 6
    assert len({tuple(s.items()) for s in sols}) == 6


class _Perms(SearchProblem):
    """Permutations with a live set of used values kept by push/pop."""

    def __init__(self, n):
        self.n = n
        self.used = set()
        self.balance = 0

    def variables(self):
        return list(range(self.n))

    def domain(self, var, assignment):
        return [v for v in range(self.n) if v not in self.used]

    def push(self, var, value, assignment):
        self.balance += 1
        self.used.add(value)
        return True

    def pop(self, var, value, assignment):
        self.balance -= 1
        self.used.discard(value)


def test_push_pop_balance_and_completeness():
    prob = _Perms(4)
    sols = [tuple(s[i] for i in range(4)) for s in solve_all(prob)]
    assert sorted(sols) == sorted(permutations(range(4)))
    assert prob.balance == 0 and not prob.used


class _NoOneFirst(_Perms):
    def push(self, var, value, assignment):
        super().push(var, value, assignment)
        return not (var == 0 and value == 1)


def test_rejected_push_is_still_popped():
    prob = _NoOneFirst(3)
    sols = list(solve_all(prob))
    assert len(sols) == 4
    assert all(s[0] != 1 for s in sols)
    assert prob.balance == 0 and not prob.used


def test_empty_domain_has_no_solutions():
    assert list(solve_all(TableProblem({"x": [0, 1], "y": []}))) == []


def test_two_binary_variables():
    assert len(list(solve_all(TableProblem({"x": [0, 1], "y": [0, 1]})))) == 4


def test_unconstrained_overlap_problem():
    from resqpo.graph import path
    from resqpo.overlaps import OverlapProblem

    assert len(list(solve_all(OverlapProblem(path(1), path(1))))) == 8
