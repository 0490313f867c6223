"""Exact rational linear algebra.

Matrices are tuples of row tuples of ``Fraction``.  Rank and reduced row
echelon forms are delegated to FLINT (``python-flint``), which works over
arbitrary-precision rationals; a slow pure-``Fraction`` elimination is kept
as an independent cross-check for the tests.
"""

from __future__ import annotations

from fractions import Fraction

import flint

Matrix = tuple[tuple[Fraction, ...], ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def matrix(rows, ncols: int | None = None) -> Matrix:
    rows = [tuple(frac(x) for x in r) for r in rows]
    if rows and ncols is not None and any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    return tuple(rows)


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((Fraction(0),) * ncols for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(r == c)) for c in range(n)) for r in range(n))


def shape(m: Matrix, ncols: int) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else ncols)


def mul(a: Matrix, b: Matrix, inner: int, ncols: int) -> Matrix:
    """a (r x inner) times b (inner x ncols); explicit sizes handle empty shapes."""
    if not a:
        return ()
    if inner == 0:
        return zeros(len(a), ncols)
    cols = list(zip(*b)) if b else [()] * ncols
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in cols) for row in a)


def transpose(m: Matrix, ncols: int) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols))
    return tuple(zip(*m))


def _to_flint(rows, ncols: int) -> flint.fmpq_mat:
    flat = []
    for r in rows:
        for x in r:
            x = frac(x)
            flat.append(flint.fmpq(x.numerator, x.denominator))
    return flint.fmpq_mat(len(rows), ncols, flat)


def _from_flint(m: flint.fmpq_mat) -> Matrix:
    return tuple(tuple(frac(m[r, c]) for c in range(m.ncols())) for r in range(m.nrows()))


def rank(rows, ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return int(_to_flint(rows, ncols).rank())


def rref(rows, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not rows or ncols == 0:
        return (), []
    red, rk = _to_flint(rows, ncols).rref()
    out = _from_flint(red)[: int(rk)]
    pivots = [next(c for c in range(ncols) if row[c] != 0) for row in out]
    return out, pivots


def nullspace(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0} as column vectors."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def column_basis(m: Matrix, ncols: int) -> list[tuple[Fraction, ...]]:
    """A basis of the column space, as columns of m itself."""
    if not m:
        return []
    _, pivots = rref(m, ncols)
    return [tuple(row[p] for row in m) for p in pivots]


def solve_columns(basis_cols, targets, nrows: int) -> list[tuple[Fraction, ...]]:
    """Express each target vector in the given independent columns."""
    k = len(basis_cols)
    if k == 0:
        return [() for _ in targets]
    aug = [tuple(basis_cols[j][r] for j in range(k)) + tuple(t[r] for t in targets) for r in range(nrows)]
    red, pivots = rref(aug, k + len(targets))
    if any(p >= k for p in pivots):
        raise ValueError("target outside the span")
    out = []
    for t in range(len(targets)):
        coeff = [Fraction(0)] * k
        for row, p in zip(red, pivots):
            coeff[p] = row[k + t]
        out.append(tuple(coeff))
    return out


def complement_basis(cols, dim: int) -> list[tuple[Fraction, ...]]:
    """Standard basis vectors extending the span of ``cols`` to the whole space."""
    chosen = list(cols)
    base = rank(transpose(tuple(chosen), dim), len(chosen)) if chosen else 0
    extra = []
    for i in range(dim):
        e = tuple(Fraction(int(r == i)) for r in range(dim))
        trial = chosen + [e]
        r = rank(transpose(tuple(trial), dim), len(trial))
        if r > base:
            chosen, base = trial, r
            extra.append(e)
    return extra


def rank_fraction(rows, ncols: int) -> int:
    """Plain Gaussian elimination over Fraction; independent of FLINT."""
    work = [list(map(frac, r)) for r in rows]
    rk, col = 0, 0
    while rk < len(work) and col < ncols:
        piv = next((r for r in range(rk, len(work)) if work[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rk], work[piv] = work[piv], work[rk]
        p = work[rk][col]
        for r in range(rk + 1, len(work)):
            if work[r][col]:
                f = work[r][col] / p
                work[r] = [a - f * b for a, b in zip(work[r], work[rk])]
        rk += 1
        col += 1
    return rk
