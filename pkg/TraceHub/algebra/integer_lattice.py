"""
Exact integer linear algebra for the 2x2 matrices that govern semiconjugacy:
Smith normal form with unimodular bookkeeping, affine Diophantine solving,
kernels, Hermite echelon bases of images and cokernel representatives.

solve_sparse_system is the general-size exact solver used by the
brute-force oracle.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from sympy import gcdex

INFINITE = "infinite"


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major 2x2 integer matrix [[a, b], [c, d]]."""
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        return self.a * self.d - self.b * self.c

    def is_unimodular(self):
        return abs(self.det()) == 1

    def apply(self, vec):
        x, y = vec
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other):
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def unimodular_inverse(self):
        det = self.det()
        if abs(det) != 1:
            raise ValueError(f"matrix {self.rows()} is not unimodular")
        # 1/det == det when det is +-1
        return IntMatrix2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def columns(self):
        return ((self.a, self.c), (self.b, self.d))


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^2 given by rank and a canonical basis."""
    rank: int
    basis: tuple = ()

    def generator(self):
        return self.basis[0] if self.rank == 1 else None

    def contains(self, vec):
        return reduce_mod_basis(vec, self.basis) == (0, 0)


@dataclass(frozen=True)
class AffineSolution:
    z0: tuple
    kernel: Lattice


@dataclass(frozen=True)
class Cokernel:
    """Z^2 / M Z^2: finite representatives or the infinite descriptor."""
    invariant_factors: tuple
    reps: tuple = None
    image_basis: tuple = field(default=())

    @property
    def is_infinite(self):
        return self.reps is None

    @property
    def count(self):
        return INFINITE if self.reps is None else len(self.reps)


class _SmithReducer:
    """Working copy A with M = U * A * V kept invariant by every operation."""

    def __init__(self, matrix):
        self.A = [[matrix.a, matrix.b], [matrix.c, matrix.d]]
        self.U = [[1, 0], [0, 1]]
        self.V = [[1, 0], [0, 1]]

    def swap_rows(self):
        self.A.reverse()
        for row in self.U:
            row.reverse()

    def swap_columns(self):
        for row in self.A:
            row.reverse()
        self.V.reverse()

    def add_row(self, i, j, k):
        """row_i += k * row_j."""
        for col in range(2):
            self.A[i][col] += k * self.A[j][col]
        for row in self.U:
            row[j] -= k * row[i]

    def add_column(self, j, i, k):
        """col_j += k * col_i."""
        for row in self.A:
            row[j] += k * row[i]
        for col in range(2):
            self.V[i][col] -= k * self.V[j][col]

    def negate_row(self, i):
        self.A[i] = [-x for x in self.A[i]]
        for row in self.U:
            row[i] = -row[i]

    def move_smallest_to_corner(self):
        _, i, j = min((abs(self.A[i][j]), i, j) for i in range(2) for j in range(2) if self.A[i][j])
        if i == 1:
            self.swap_rows()
        if j == 1:
            self.swap_columns()

    def run(self):
        A = self.A
        while any(A[0] + A[1]):
            self.move_smallest_to_corner()
            pivot = A[0][0]
            if A[1][0]:
                self.add_row(1, 0, -(A[1][0] // pivot))
            if A[0][1]:
                self.add_column(1, 0, -(A[0][1] // pivot))
            if A[1][0] or A[0][1]:
                continue
            if A[1][1] % pivot:
                # enforce d1 | d2
                self.add_row(0, 1, 1)
                continue
            break
        for i in range(2):
            if A[i][i] < 0:
                self.negate_row(i)
        return (IntMatrix2.from_rows(self.U), IntMatrix2.from_rows(A), IntMatrix2.from_rows(self.V))


@lru_cache(maxsize=1024)
def smith_normal_form(M):
    """Return (U, S, V) with M = U * S * V, U and V unimodular, S = diag(d1, d2), d1 | d2."""
    return _SmithReducer(M).run()


def invariant_factors(M):
    _, S, _ = smith_normal_form(M)
    return (S.a, S.d)


def canonical_primitive(vec):
    """Divide by the gcd and make the first nonzero entry positive."""
    x, y = vec
    g = gcd(x, y)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return (x, y)


@lru_cache(maxsize=1024)
def kernel_lattice(M):
    U, S, V = smith_normal_form(M)
    V_inv = V.unimodular_inverse()
    columns = V_inv.columns()
    free = [columns[i] for i, s in enumerate((S.a, S.d)) if s == 0]
    if not free:
        return Lattice(0, ())
    if len(free) == 1:
        return Lattice(1, (canonical_primitive(free[0]),))
    return Lattice(2, ((1, 0), (0, 1)))


def extended_gcd(a, b):
    """(x, y, g) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, y, g = (int(t) for t in gcdex(a, b))
    if g < 0:
        return -x, -y, -g
    return x, y, g


@lru_cache(maxsize=1024)
def image_echelon(M):
    """
    Hermite-style echelon basis of the column lattice M Z^2:
    () for rank 0, ((g, e),) or ((0, h),) for rank 1, ((g, e), (0, h)) with
    g, h > 0 and 0 <= e < h for rank 2.
    """
    a, b, c, d = M.a, M.b, M.c, M.d
    if a == 0 and b == 0:
        h = gcd(c, d)
        return ((0, h),) if h else ()
    x, y, g = extended_gcd(a, b)
    top = (g, x * c + y * d)
    h = abs(M.det()) // g
    if h == 0:
        return (top,)
    return ((g, top[1] % h), (0, h))


def reduce_mod_basis(vec, basis):
    """Canonical representative of vec modulo the lattice spanned by an echelon basis."""
    x, y = vec
    if not basis:
        return (x, y)
    g0, g1 = basis[0]
    if g0:
        t = x // g0
        x, y = x - t * g0, y - t * g1
    else:
        y %= g1
    if len(basis) == 2:
        y %= basis[1][1]
    return (x, y)


def solve_affine(M, w):
    """
    Solve M z = w over Z. Returns AffineSolution(z0, kernel) with z0 reduced
    canonically modulo the kernel, or None when there is no integer solution.
    """
    U, S, V = smith_normal_form(M)
    target = U.unimodular_inverse().apply(w)
    y = []
    for s, t in zip((S.a, S.d), target):
        if s == 0:
            if t != 0:
                return None
            y.append(0)
        else:
            if t % s:
                return None
            y.append(t // s)
    z0 = V.unimodular_inverse().apply(tuple(y))
    kernel = kernel_lattice(M)
    if kernel.rank == 2:
        z0 = (0, 0)
    else:
        z0 = reduce_mod_basis(z0, kernel.basis)
    return AffineSolution(z0, kernel)


def cokernel_reps(M):
    """Representatives of Z^2 / M Z^2 when det(M) != 0, else the infinite descriptor."""
    basis = image_echelon(M)
    factors = invariant_factors(M)
    if len(basis) < 2:
        return Cokernel(factors, None, basis)
    (g, _), (_, h) = basis
    reps = tuple((i, j) for i in range(g) for j in range(h))
    return Cokernel(factors, reps, basis)


def _combine(x, a, y, b):
    """a*x + b*y for sparse dict vectors, zeros dropped."""
    out = {}
    if a:
        for key, value in x.items():
            out[key] = a * value
    if b:
        for key, value in y.items():
            out[key] = out.get(key, 0) + b * value
    return {key: value for key, value in out.items() if value}


def _insert_column(pivots, vec, combo):
    while vec:
        p = min(vec)
        if p not in pivots:
            pivots[p] = (vec, combo)
            return
        row, row_combo = pivots[p]
        a, b = row[p], vec[p]
        if b % a == 0:
            q = b // a
            vec, combo = _combine(vec, 1, row, -q), _combine(combo, 1, row_combo, -q)
        elif a % b == 0:
            pivots[p] = (vec, combo)
            q = a // b
            vec, combo = _combine(row, 1, vec, -q), _combine(row_combo, 1, combo, -q)
        else:
            x, y, g = extended_gcd(a, b)
            pivots[p] = (_combine(row, x, vec, y), _combine(row_combo, x, combo, y))
            vec, combo = _combine(row, -b // g, vec, a // g), _combine(row_combo, -b // g, combo, a // g)


def solve_sparse_system(columns, target):
    """
    Integer solution x of sum_j x[j] * columns[j] == target, or None.

    columns and target are sparse dicts key -> int with orderable keys. The
    columns are brought to echelon form over Z (extended gcd on pivots,
    combinations tracked), then the target is reduced greedily.
    """
    keys = sorted({key for col in columns for key in col} | set(target))
    position = {key: i for i, key in enumerate(keys)}
    pivots = {}
    for j, col in enumerate(columns):
        vec = {position[key]: value for key, value in col.items() if value}
        _insert_column(pivots, vec, {j: 1})

    residual = {position[key]: value for key, value in target.items() if value}
    combo = {}
    while residual:
        p = min(residual)
        if p not in pivots:
            return None
        row, row_combo = pivots[p]
        q, r = divmod(residual[p], row[p])
        if r:
            return None
        residual = _combine(residual, 1, row, -q)
        combo = _combine(combo, 1, row_combo, q)
    return combo
