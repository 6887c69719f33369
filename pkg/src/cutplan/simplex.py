"""Exact two-phase simplex for small dense linear programs.

Solves   minimize c.x   subject to   A.x >= b,  x >= 0
entirely in rational arithmetic: no tolerances exist anywhere in this module,
so optima, tight constraints, and dual certificates are exact.  Pivoting uses
Bland's smallest-index rule, which guarantees termination and makes the
returned basic optimum a deterministic function of the input.

Every row gets a surplus and an artificial variable; phase 1 drives the
artificials to zero (or proves infeasibility), phase 2 optimizes the true
cost.  The artificial columns are kept in the tableau, barred from entering,
so the optimal dual multipliers can be read off their reduced costs.  Each
optimal solve is self-checked: primal feasibility, the dual certificate
(y >= 0, A'y <= c), and strong duality (b.y == c.x) are asserted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, InternalInvariantError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _as_fraction_vector(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class LpProblem:
    """minimize cost.x  subject to  constraint_matrix.x >= rhs,  x >= 0."""

    cost: tuple[Fraction, ...]
    constraint_matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        cost = _as_fraction_vector(self.cost)
        matrix = tuple(_as_fraction_vector(row) for row in self.constraint_matrix)
        rhs = _as_fraction_vector(self.rhs)
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "constraint_matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        if not cost:
            raise InputError("problem needs at least one variable")
        if not matrix:
            raise InputError("problem needs at least one constraint row")
        if len(rhs) != len(matrix):
            raise InputError("rhs length must match the number of constraint rows")
        if any(len(row) != len(cost) for row in matrix):
            raise InputError("every constraint row must have one entry per variable")

    @property
    def num_rows(self) -> int:
        return len(self.constraint_matrix)

    @property
    def num_vars(self) -> int:
        return len(self.cost)


@dataclass(frozen=True)
class LpSolution:
    """Outcome of a solve.

    ``objective``/``variables`` are exact rationals when ``status`` is
    ``optimal`` and None otherwise.  ``dual`` holds one multiplier per
    constraint row; it certifies optimality via strong duality.
    ``multiple_optima`` flags a zero reduced cost on a nonbasic column at the
    optimum, meaning other optimal vertices may exist.
    """

    status: str
    objective: Fraction | None = None
    variables: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    multiple_optima: bool = False


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve the program exactly; deterministic for identical input."""
    a = problem.constraint_matrix
    b = problem.rhs
    c = problem.cost
    s = problem.num_rows
    m = problem.num_vars

    # Column layout: x_0..x_{m-1} | surplus per row | artificial per row | rhs.
    n_struct = m + s
    rhs_col = n_struct + s
    zero = Fraction(0)
    one = Fraction(1)

    negated = [bi < 0 for bi in b]
    rows: list[list[Fraction]] = []
    for i in range(s):
        sign = -1 if negated[i] else 1
        row = [zero] * (rhs_col + 1)
        for j in range(m):
            row[j] = sign * a[i][j]
        row[m + i] = Fraction(-sign)
        row[n_struct + i] = one
        row[rhs_col] = sign * b[i]
        rows.append(row)
    basis = [n_struct + i for i in range(s)]

    def pivot(obj: list[Fraction], pr: int, pc: int):
        piv = rows[pr][pc]
        rows[pr] = [v / piv for v in rows[pr]]
        for r in range(s):
            if r != pr and rows[r][pc] != 0:
                f = rows[r][pc]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[pr])]
        if obj[pc] != 0:
            f = obj[pc]
            obj[:] = [v - f * w for v, w in zip(obj, rows[pr])]
        basis[pr] = pc

    def run_phase(obj: list[Fraction]) -> str:
        while True:
            # Bland: entering column is the smallest eligible index.  The
            # artificial columns never re-enter once driven out.
            enter = next((j for j in range(n_struct) if obj[j] < 0), None)
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for r in range(s):
                coef = rows[r][enter]
                if coef > 0:
                    ratio = rows[r][rhs_col] / coef
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and basis[r] < basis[leave])
                    ):
                        best = ratio
                        leave = r
            if leave is None:
                return UNBOUNDED
            pivot(obj, leave, enter)

    # Phase 1: minimize the artificial total, starting from reduced costs
    # consistent with the all-artificial basis.
    obj1 = [zero] * (rhs_col + 1)
    for i in range(s):
        obj1[n_struct + i] = one
    for row in rows:
        obj1 = [v - w for v, w in zip(obj1, row)]
    if run_phase(obj1) != OPTIMAL:
        raise InternalInvariantError("phase 1 objective is bounded below by zero")
    if -obj1[rhs_col] != 0:
        return LpSolution(status=INFEASIBLE)

    # Drive any leftover artificials (at value zero) out of the basis.  Rows
    # here always admit a structural pivot because each carries its own
    # surplus column, keeping the equality system full row rank.
    for r in range(s):
        if basis[r] >= n_struct:
            pc = next((j for j in range(n_struct) if rows[r][j] != 0), None)
            if pc is None:
                raise InternalInvariantError("constraint rows became linearly dependent")
            pivot(obj1, r, pc)

    # Phase 2: true cost.
    obj2 = [zero] * (rhs_col + 1)
    for j in range(m):
        obj2[j] = c[j]
    for r in range(s):
        f = obj2[basis[r]]
        if f != 0:
            obj2 = [v - f * w for v, w in zip(obj2, rows[r])]
    if run_phase(obj2) == UNBOUNDED:
        return LpSolution(status=UNBOUNDED)

    x = [zero] * m
    for r in range(s):
        if basis[r] < m:
            x[basis[r]] = rows[r][rhs_col]
    objective = sum((cj * xj for cj, xj in zip(c, x)), zero)

    # Reduced cost of artificial i is -pi_i; rows negated on entry flip the
    # sign of their original multiplier.
    dual = []
    for i in range(s):
        pi = -obj2[n_struct + i]
        dual.append(-pi if negated[i] else pi)

    basic = set(basis)
    multiple = any(
        obj2[j] == 0 and j not in basic for j in range(n_struct)
    )

    solution = LpSolution(
        status=OPTIMAL,
        objective=objective,
        variables=tuple(x),
        dual=tuple(dual),
        multiple_optima=multiple,
    )
    _check_certificate(problem, solution)
    return solution


def _check_certificate(problem: LpProblem, solution: LpSolution):
    """Exact self-check of primal feasibility and the strong-duality certificate."""
    a = problem.constraint_matrix
    b = problem.rhs
    c = problem.cost
    x = solution.variables
    y = solution.dual
    if any(xj < 0 for xj in x):
        raise InternalInvariantError("optimal point has a negative variable")
    for i, row in enumerate(a):
        if sum(v * xj for v, xj in zip(row, x)) < b[i]:
            raise InternalInvariantError("optimal point violates constraint %d" % i)
    if sum(cj * xj for cj, xj in zip(c, x)) != solution.objective:
        raise InternalInvariantError("objective does not match cost.variables")
    if any(yi < 0 for yi in y):
        raise InternalInvariantError("dual certificate has a negative multiplier")
    for j in range(len(c)):
        if sum(y[i] * a[i][j] for i in range(len(a))) > c[j]:
            raise InternalInvariantError("dual certificate is infeasible on column %d" % j)
    if sum(yi * bi for yi, bi in zip(y, b)) != solution.objective:
        raise InternalInvariantError("dual objective does not match the primal optimum")
