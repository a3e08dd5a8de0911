"""Exact LP feasibility over the rationals.

A single phase-1 simplex with Bland's rule decides feasibility of systems

    A x (<= | == | >=) b,    x >= 0

and produces a feasible point when one exists.  All pivoting is done in
Fraction arithmetic; there are no tolerances anywhere, and Bland's rule
guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction

LE, GE, EQ = "<=", ">=", "=="


def feasible_point(nvars, rows):
    """Return a nonnegative rational point satisfying every row, or None.

    ``rows`` is an iterable of (coeffs, rel, rhs) with rel one of "<=", ">=",
    "==".  Variables are implicitly nonnegative.
    """
    norm = []
    for coeffs, rel, rhs in rows:
        coeffs = [Fraction(c) for c in coeffs]
        rhs = Fraction(rhs)
        if len(coeffs) != nvars:
            raise ValueError("constraint row has wrong length")
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        norm.append((coeffs, rel, rhs))

    nslack = sum(1 for _, rel, _ in norm if rel != EQ)
    nart = sum(1 for _, rel, _ in norm if rel != LE)
    width = nvars + nslack + nart + 1  # final column is the rhs

    tableau = []
    basis = []
    si = nvars
    ai = nvars + nslack
    for coeffs, rel, rhs in norm:
        row = [Fraction(0)] * width
        row[:nvars] = coeffs
        row[-1] = rhs
        if rel == LE:
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        elif rel == GE:
            row[si] = Fraction(-1)
            si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            ai += 1
        else:
            row[ai] = Fraction(1)
            basis.append(ai)
            ai += 1
        tableau.append(row)

    # Phase-1 objective: minimize the sum of artificial variables.  Reduced
    # costs: c_j - sum over artificial-basic rows; artificial columns start
    # with reduced cost zero.
    art_lo = nvars + nslack
    cost = [Fraction(0)] * width
    for j in range(art_lo, art_lo + nart):
        cost[j] = Fraction(1)
    for row, b in zip(tableau, basis):
        if b >= art_lo:
            for j in range(width):
                cost[j] -= row[j]

    while True:
        enter = next((j for j in range(width - 1) if cost[j] < 0), None)
        if enter is None:
            break
        # Ratio test; Bland: break ties on the smallest basis index.
        leave = None
        best = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:  # phase-1 objective is bounded below, cannot happen
            raise ArithmeticError("phase-1 simplex lost boundedness")
        _pivot(tableau, cost, basis, leave, enter)

    # Feasible iff all artificials were driven to zero.
    if any(tableau[i][-1] != 0 for i in range(len(tableau)) if basis[i] >= art_lo):
        return None
    point = [Fraction(0)] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            point[b] = tableau[i][-1]
    return point


def _pivot(tableau, cost, basis, row, col):
    piv = tableau[row][col]
    prow = tableau[row]
    inv = 1 / piv
    for j in range(len(prow)):
        prow[j] *= inv
    for i, r in enumerate(tableau):
        if i != row and r[col]:
            f = r[col]
            for j in range(len(r)):
                r[j] -= f * prow[j]
    if cost[col]:
        f = cost[col]
        for j in range(len(cost)):
            cost[j] -= f * prow[j]
    basis[row] = col
