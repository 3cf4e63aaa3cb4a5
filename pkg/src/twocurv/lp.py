"""Exact linear programming over the rationals.

Dense tableau simplex with Bland's rule, two phases, and dual simplex
re-optimisation when constraints are appended after a solve. Problems here
have tens of variables, so clarity wins over speed.
"""
from __future__ import annotations

from fractions import Fraction


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


ZERO = Fraction(0)


class LinearProgram:
    """minimize c.x subject to rows, with x >= 0."""

    def __init__(self, n_vars: int, objective):
        self.n = n_vars
        self.c = [Fraction(v) for v in objective]
        self.pending: list[tuple[dict, Fraction]] = []  # a.x <= b
        self.T: list[list[Fraction]] | None = None
        self.basis: list[int] = []
        self.ncols = n_vars
        self.pivots = 0

    def add_le(self, coeffs: dict, rhs) -> None:
        self.pending.append(({j: Fraction(v) for j, v in coeffs.items() if v}, Fraction(rhs)))

    def add_ge(self, coeffs: dict, rhs) -> None:
        self.add_le({j: -Fraction(v) for j, v in coeffs.items()}, -Fraction(rhs))

    # -------------------------------------------------------------- pivoting

    def _pivot(self, r: int, col: int) -> None:
        T = self.T
        prow = T[r]
        p = prow[col]
        if p != 1:
            inv = 1 / p
            for j in range(len(prow)):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = col
        self.pivots += 1

    def _primal(self, cost_row: int, allowed: int) -> None:
        """Primal simplex on the tableau; row ``cost_row`` holds reduced costs."""
        T = self.T
        while True:
            z = T[cost_row]
            col = next((j for j in range(allowed) if z[j] < 0), None)
            if col is None:
                return
            best = None
            for i, row in enumerate(T):
                if i >= self.m or row[col] <= 0:
                    continue
                ratio = row[-1] / row[col]
                key = (ratio, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
            if best is None:
                raise Unbounded("objective is unbounded")
            self._pivot(best[1], col)

    def _dual(self) -> None:
        T = self.T
        while True:
            r = None
            for i in range(self.m):
                if T[i][-1] < 0 and (r is None or self.basis[i] < self.basis[r]):
                    r = i
            if r is None:
                return
            row, z = T[r], T[self.m]
            best = None
            for j in range(self.ncols):
                if row[j] < 0:
                    key = (z[j] / -row[j], j)
                    if best is None or key < best:
                        best = key
            if best is None:
                raise Infeasible("constraints admit no solution")
            self._pivot(r, best[1])

    # -------------------------------------------------------------- solving

    def _build(self) -> None:
        rows = self.pending
        self.pending = []
        m = len(rows)
        n = self.n
        neg = [i for i, (_, b) in enumerate(rows) if b < 0]
        art = {i: n + m + k for k, i in enumerate(neg)}
        width = n + m + len(neg)
        T = []
        basis = []
        for i, (a, b) in enumerate(rows):
            row = [ZERO] * (width + 1)
            for j, v in a.items():
                row[j] = v
            row[n + i] = Fraction(1)
            row[-1] = b
            if i in art:
                row = [-v for v in row]
                row[art[i]] = Fraction(1)
                basis.append(art[i])
            else:
                basis.append(n + i)
            T.append(row)
        self.T, self.basis, self.m = T, basis, m
        # phase one: minimise the sum of artificials
        z = [ZERO] * (width + 1)
        for i in neg:
            for j in range(width + 1):
                z[j] -= T[i][j]
        for j in art.values():
            z[j] = ZERO
        T.append(z)
        self.ncols = width
        self._primal(m, n + m)
        if T[m][-1] != 0:
            raise Infeasible("constraints admit no solution")
        T.pop()
        # drive artificials out of the basis, dropping redundant rows
        artificial = set(art.values())
        i = 0
        while i < len(T):
            if self.basis[i] in artificial:
                col = next((j for j in range(n + m) if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del self.basis[i]
                    self.m -= 1
                    continue
                self._pivot(i, col)
            i += 1
        for row in T:
            del row[n + m:width]
        self.ncols = n + m
        self._set_costs()
        self._primal(self.m, self.ncols)

    def _set_costs(self) -> None:
        T = self.T
        z = [ZERO] * (self.ncols + 1)
        for j in range(self.n):
            z[j] = self.c[j]
        for i, b in enumerate(self.basis):
            cb = self.c[b] if b < self.n else ZERO
            if cb:
                for j in range(self.ncols + 1):
                    z[j] -= cb * T[i][j]
        if len(T) > self.m:
            T[self.m] = z
        else:
            T.append(z)

    def _append_rows(self) -> None:
        rows = self.pending
        self.pending = []
        T = self.T
        for a, b in rows:
            col = self.ncols
            for row in T:
                row.insert(col, ZERO)
            self.ncols += 1
            new = [ZERO] * (self.ncols + 1)
            for j, v in a.items():
                new[j] = v
            new[col] = Fraction(1)
            new[-1] = b
            # express in terms of the current nonbasic variables
            for i in range(self.m):
                f = new[self.basis[i]]
                if f:
                    src = T[i]
                    for j in range(self.ncols + 1):
                        if src[j]:
                            new[j] -= f * src[j]
            T.insert(self.m, new)
            self.basis.append(col)
            self.m += 1

    def solve(self):
        """Return ``(value, x)``; re-optimises after appended constraints."""
        if self.T is None:
            self._build()
        elif self.pending:
            self._append_rows()
            self._dual()
            self._primal(self.m, self.ncols)
        x = [ZERO] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                x[b] = self.T[i][-1]
        value = sum((self.c[j] * x[j] for j in range(self.n)), ZERO)
        return value, x
