"""Exact arbitrary-precision integer matrices.

Everything inside a matrix operation is exact (Python ints); floating point
enters only at the very end, in the polynomial root solver that turns an
exact characteristic polynomial into a spectral radius.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd


class DimensionError(ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class RootConvergenceError(RuntimeError):
    """The simultaneous root iteration failed to reach its tolerance."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise DimensionError("ragged rows")
        return IntMatrix(m, n, tuple(int(x) for r in rows for x in r))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(m: int, n: int) -> "IntMatrix":
        return IntMatrix(m, n, (0,) * (m * n))

    def get(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.get(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch in addition")
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __pow__(self, n: int) -> "IntMatrix":
        return mat_pow(self, n)

    def apply_col(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(
            sum(self.get(i, j) * vec[j] for j in range(self.cols)) for i in range(self.rows)
        )

    def apply_row(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Row vector times matrix (images-in-rows convention)."""
        if len(vec) != self.rows:
            raise DimensionError("vector length mismatch")
        return tuple(
            sum(vec[i] * self.get(i, j) for i in range(self.rows)) for j in range(self.cols)
        )

    def trace(self) -> int:
        if not self.is_square:
            raise DimensionError("trace of non-square matrix")
        return sum(self.get(i, i) for i in range(self.rows))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise DimensionError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    bt = b.transpose()
    for i in range(a.rows):
        ra = a.row(i)
        for j in range(b.cols):
            rb = bt.row(j)
            out.append(sum(x * y for x, y in zip(ra, rb)))
    return IntMatrix(a.rows, b.cols, tuple(out))


def mat_pow(a: IntMatrix, n: int) -> IntMatrix:
    """Exact n-th power by binary exponentiation; a**0 is the identity."""
    if not a.is_square:
        raise DimensionError("power of non-square matrix")
    if n < 0:
        raise ValueError("negative power (use inverse_unimodular for unimodular matrices)")
    result = IntMatrix.identity(a.rows)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return result


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial; coefficients ascending, so
    coefficients[k] multiplies x**k and coefficients[-1] == 1."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate_matrix(self, a: IntMatrix) -> IntMatrix:
        """p(a) by Horner's rule -- zero matrix iff Cayley-Hamilton holds."""
        n = a.rows
        acc = IntMatrix.zero(n, n)
        for c in reversed(self.coefficients):
            acc = mat_mul(acc, a) + IntMatrix.identity(n).scale(c)
        return acc


def char_poly(a: IntMatrix) -> CharPoly:
    """Characteristic polynomial via the Faddeev-LeVerrier recurrence.

    All divisions in the recurrence are exact over the integers, so the
    coefficients come out exact at any size.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial of non-square matrix")
    n = a.rows
    if n == 0:
        return CharPoly((1,))
    coeffs_desc = [1]
    m = IntMatrix.identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        t = am.trace()
        q, r = divmod(-t, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs_desc.append(q)
        m = am + IntMatrix.identity(n).scale(q)
    # m is now a*N_{n-1} + c_0*I which must vanish identically
    if any(m.entries):
        raise ArithmeticError("Faddeev-LeVerrier closure check failed")
    return CharPoly(tuple(reversed(coeffs_desc)))


# -- integer polynomial helpers (ascending coefficient tuples) --------------


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_content(c) -> int:
    g = 0
    for x in c:
        g = gcd(g, abs(x))
    return g or 1


def _poly_primitive(c):
    c = _poly_trim(c)
    if not c:
        return c
    g = _poly_content(c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _poly_derivative(c):
    return [k * c[k] for k in range(1, len(c))]


def _poly_pseudo_rem(a, b):
    """Pseudo-remainder of a by b; scales a by lead(b) as needed."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while True:
        a = _poly_trim(a)
        if len(a) - 1 < db or not a:
            return a
        coef = a[-1]
        da = len(a) - 1
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[da - db + i] -= coef * bc


def _poly_gcd(a, b):
    """Primitive gcd of integer polynomials (primitive PRS)."""
    a = _poly_primitive(a)
    b = _poly_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _poly_primitive(_poly_pseudo_rem(a, b))
        a, b = b, r
    return _poly_primitive(a)


def _poly_exact_div(num, den):
    """Exact division of integer polynomials; raises if not exact."""
    num = _poly_trim(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        if not num:
            return []
        raise ArithmeticError("inexact polynomial division")
    out = [0] * (len(num) - len(den) + 1)
    work = list(num)
    ld = den[-1]
    for k in reversed(range(len(out))):
        c = work[k + len(den) - 1]
        q, r = divmod(c, ld)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for i, dc in enumerate(den):
            work[k + i] -= q * dc
    if any(work):
        raise ArithmeticError("inexact polynomial division")
    return out


def _poly_square_free(c):
    """Square-free part: same roots, all simple. Exact integer computation."""
    c = _poly_trim(c)
    if len(c) <= 2:
        return c
    g = _poly_gcd(c, _poly_derivative(c))
    if len(g) <= 1:
        return c
    return _poly_exact_div(c, g)


def _scaled_float_coeffs(c):
    """Convert huge integer coefficients to floats after a common power-of-two
    rescaling (which leaves the roots unchanged)."""
    bits = max(x.bit_length() for x in c if x) if any(c) else 0
    shift = max(0, bits - 512)
    out = []
    for x in c:
        out.append(float(x >> shift) if shift else float(x))
    return out


def aberth_roots(coeffs, tol: float = 1e-12, max_iter: int = 10000) -> tuple[complex, ...]:
    """All roots of an integer polynomial by Aberth-Ehrlich simultaneous
    iteration.

    Convergence is declared when every root has backward error
    |p(z)| <= tol * sum_k |c_k||z|^k.  Feed square-free input for fast
    convergence; on failure raises RootConvergenceError rather than
    returning an unreliable value.
    """
    c = _poly_trim(coeffs)
    n = len(c) - 1
    if n <= 0:
        return ()
    fc = _scaled_float_coeffs(c)
    if n == 1:
        return (complex(-fc[0] / fc[1]),)
    dfc = [k * fc[k] for k in range(1, n + 1)]
    radius = 1.0 + max(abs(fc[i] / fc[-1]) for i in range(n))
    roots = [
        radius * cmath.exp(2j * math.pi * k / n + 0.4j) for k in range(n)
    ]

    def horner(cs, z):
        acc = 0j
        for a in reversed(cs):
            acc = acc * z + a
        return acc

    def backward_error_ok(z):
        p = horner(fc, z)
        scale = 0.0
        az = abs(z)
        pw = 1.0
        for a in fc:
            scale += abs(a) * pw
            pw *= az
        return abs(p) <= tol * max(scale, 1e-300)

    for _ in range(max_iter):
        converged = True
        for i in range(n):
            z = roots[i]
            p = horner(fc, z)
            if p == 0:
                continue
            dp = horner(dfc, z)
            if dp == 0:
                roots[i] = z + (1e-8 + 1e-8j)
                converged = False
                continue
            newton = p / dp
            repulsion = sum(1.0 / (z - roots[j]) for j in range(n) if j != i)
            denom = 1.0 - newton * repulsion
            if denom == 0:
                roots[i] = z + (1e-8 + 1e-8j)
                converged = False
                continue
            step = newton / denom
            roots[i] = z - step
            if abs(step) > tol * max(1.0, abs(z)):
                converged = False
        if converged and all(backward_error_ok(z) for z in roots):
            return tuple(roots)
    raise RootConvergenceError(
        f"root iteration did not reach tolerance {tol} within {max_iter} iterations"
    )


def spectral_radius(a: IntMatrix, tol: float = 1e-12, max_iter: int = 10000) -> float:
    """Largest root modulus of the characteristic polynomial.

    Zero roots are factored out exactly and the remaining polynomial is
    reduced to its square-free part before the Aberth iteration, so repeated
    eigenvalues cost nothing in accuracy.  Nilpotent matrices give 0.0.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    p = list(char_poly(a).coefficients)
    n_zero = 0
    while p and p[0] == 0:
        p.pop(0)
        n_zero += 1
    if len(p) <= 1:
        return 0.0
    sf = _poly_square_free(p)
    roots = aberth_roots(sf, tol=tol, max_iter=max_iter)
    top = max(abs(z) for z in roots)
    return max(top, 0.0)


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1} >= 0."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.d.rows, self.d.cols)
        return tuple(self.d.get(i, i) for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a*x + b*y == g > 0 (for a, b not both zero)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _divides(a: int, b: int) -> bool:
    if a == 0:
        return b == 0
    return b % a == 0


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms, fully exact.

    Works on any integer matrix (rectangular included).  The returned
    transforms satisfy U*A*V == D identically; the diagonal is nonnegative
    with each entry dividing the next.
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, k):
        # column dst += k * column src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def sub_row(i, t, q):
        # row i -= q * row t
        d[i] = [a - q * b for a, b in zip(d[i], d[t])]
        u[i] = [a - q * b for a, b in zip(u[i], u[t])]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def row_gcd_transform(t, i):
        # replace rows t, i by unimodular combinations making d[i][t] == 0
        at, ai = d[t][t], d[i][t]
        g, x, y = _ext_gcd(at, ai)
        p, q = at // g, ai // g
        d[t], d[i] = (
            [x * rt + y * ri for rt, ri in zip(d[t], d[i])],
            [-q * rt + p * ri for rt, ri in zip(d[t], d[i])],
        )
        u[t], u[i] = (
            [x * rt + y * ri for rt, ri in zip(u[t], u[i])],
            [-q * rt + p * ri for rt, ri in zip(u[t], u[i])],
        )

    def col_gcd_transform(t, j):
        at, aj = d[t][t], d[t][j]
        g, x, y = _ext_gcd(at, aj)
        p, q = at // g, aj // g
        for row in d:
            ct, cj = row[t], row[j]
            row[t], row[j] = x * ct + y * cj, -q * ct + p * cj
        for row in v:
            ct, cj = row[t], row[j]
            row[t], row[j] = x * ct + y * cj, -q * ct + p * cj

    def diagonalize_from(start):
        t = start
        while t < min(m, n):
            # smallest-magnitude nonzero pivot in the trailing submatrix
            pivot = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    val = d[i][j]
                    if val and (best is None or abs(val) < best):
                        best, pivot = abs(val), (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            # clear column t with row subtractions (gcd steps strictly shrink
            # the pivot, so this terminates), then row t with column ops
            while True:
                for i in range(t + 1, m):
                    if d[i][t]:
                        q, r = divmod(d[i][t], d[t][t])
                        if r == 0:
                            sub_row(i, t, q)
                        else:
                            row_gcd_transform(t, i)
                for j in range(t + 1, n):
                    if d[t][j]:
                        q, r = divmod(d[t][j], d[t][t])
                        if r == 0:
                            add_col(j, t, -q)
                        else:
                            col_gcd_transform(t, j)
                if not any(d[i][t] for i in range(t + 1, m)) and not any(
                    d[t][j] for j in range(t + 1, n)
                ):
                    break
            t += 1

    diagonalize_from(0)
    # enforce the divisibility chain, re-diagonalizing after each disturbance
    r = min(m, n)
    while True:
        broken = None
        for i in range(r - 1):
            if not _divides(d[i][i], d[i + 1][i + 1]):
                broken = i
                break
        if broken is None:
            break
        add_col(broken, broken + 1, 1)
        diagonalize_from(broken)
    for i in range(r):
        if d[i][i] < 0:
            negate_row(i)

    dm = IntMatrix.from_rows(d) if m else IntMatrix.zero(0, n)
    um = IntMatrix.from_rows(u) if m else IntMatrix.identity(0)
    vm = IntMatrix.from_rows(v) if n else IntMatrix.identity(0)
    if mat_mul(mat_mul(um, a), vm).entries != dm.entries:
        raise ArithmeticError("Smith normal form transform check failed")
    return SmithForm(dm, um, vm)


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (via U*A*V = I)."""
    if not a.is_square:
        raise DimensionError("inverse of non-square matrix")
    snf = smith_normal_form(a)
    if snf.diagonal != (1,) * a.rows:
        raise ValueError("matrix is not unimodular")
    return mat_mul(snf.v, snf.u)


def solve_int(a: IntMatrix, b: tuple[int, ...], snf: SmithForm | None = None):
    """Solve a*x == b over the integers; returns the solution tuple or None.

    A precomputed Smith form of `a` may be passed to amortize repeated solves.
    """
    if len(b) != a.rows:
        raise DimensionError("right-hand side length mismatch")
    if snf is None:
        snf = smith_normal_form(a)
    y = snf.u.apply_col(tuple(b))
    k = min(a.rows, a.cols)
    z = [0] * a.cols
    for i in range(a.rows):
        di = snf.d.get(i, i) if i < k else 0
        if di == 0:
            if y[i] != 0:
                return None
        else:
            q, r = divmod(y[i], di)
            if r:
                return None
            z[i] = q
    return snf.v.apply_col(tuple(z))
