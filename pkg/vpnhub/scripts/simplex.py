"""
exact rational simplex for max c.x subject to A x <= b, x >= 0, b >= 0
"""

# BUILT-INS
from dataclasses import dataclass
from fractions import Fraction

# vpnhub
from vpnhub.scripts.logging import UnboundedError, ValidationError


@dataclass(frozen=True)
class LinearProgram:
    """
    variables: names of the variables. objective: name -> coefficient.
    constraints: sequence of (name -> coefficient, bound) rows meaning
    sum <= bound.
    """
    variables: tuple
    objective: dict
    constraints: tuple


class SimplexTableau:
    """
    dictionary form: basic_i = b_i - sum_j A_ij nonbasic_j,
    z = z0 + sum_j c_j nonbasic_j. variables are labeled by
    integers, slacks come after the structural variables.
    """

    def __init__(self, lp):
        n = len(lp.variables)
        m = len(lp.constraints)
        index = {var: j for j, var in enumerate(lp.variables)}
        self.n = n
        self.m = m
        self.A = [[Fraction(0)]*n for _ in range(m)]
        self.b = [Fraction(0)]*m
        self.c = [Fraction(lp.objective.get(var, 0)) for var in lp.variables]
        self.z = Fraction(0)
        for i, (row, bound) in enumerate(lp.constraints):
            for var, coefficient in row.items():
                if var not in index:
                    raise ValidationError("constraints use declared variables", f"{var}")
                self.A[i][index[var]] = Fraction(coefficient)
            self.b[i] = Fraction(bound)
            if self.b[i] < 0:
                raise ValidationError("0 is feasible", f"row {i} has bound {bound}")
        self.nb_vars = list(range(n))
        self.b_vars = list(range(n, n+m))

    def pivot(self, i, j):
        piv = self.A[i][j]
        # modify row i
        for l in range(self.n):
            self.A[i][l] = 1/piv if l == j else self.A[i][l]/piv
        self.b[i] /= piv
        # modify other rows
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f == 0:
                continue
            for l in range(self.n):
                self.A[k][l] = -f*self.A[i][j] if l == j else self.A[k][l] - f*self.A[i][l]
            self.b[k] -= f*self.b[i]
        # modify c
        f = self.c[j]
        for l in range(self.n):
            self.c[l] = -f*self.A[i][j] if l == j else self.c[l] - f*self.A[i][l]
        self.z += f*self.b[i]

        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]

    def bland_primal_step(self):
        """
        smallest index rule: never cycles
        """
        try:
            _, j = min((self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0)
        except ValueError:
            return 'optimal'
        try:
            _, _, i = min(
                (self.b[i]/self.A[i][j], self.b_vars[i], i)
                for i in range(self.m)
                if self.A[i][j] > 0
            )
        except ValueError:
            return 'unbounded'
        self.pivot(i, j)
        return 'go_on'

    def bland_primal(self):
        while True:
            ret = self.bland_primal_step()
            if ret in ['optimal', 'unbounded']:
                return ret

    def solution(self):
        values = [Fraction(0)]*self.n
        for i, var in enumerate(self.b_vars):
            if var < self.n:
                values[var] = self.b[i]
        return values


def simplex_solve(lp):
    """
    exact optimum and an optimal solution
    """
    tableau = SimplexTableau(lp)
    if tableau.bland_primal() == 'unbounded':
        raise UnboundedError("the linear program is unbounded")
    values = tableau.solution()
    return tableau.z, {var: values[j] for j, var in enumerate(lp.variables)}
