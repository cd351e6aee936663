"""Exact dense matrices over Q(i), the Laurent ring Q(i)[t, 1/t] or a
quadratic extension of Q(i), plus the row-reduction machinery behind rank,
kernels and the span closure of a generating set.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .arith import (
    ONE,
    ZERO,
    GaussianRational,
    LaurentPoly,
    QuadExt,
    as_gaussian,
    laurent_eval,
    ring_of,
    scalar_from_json,
    sqrt_quad,
)
from .errors import (
    NonUnitDeterminant,
    PositionOutOfRange,
    RingMismatch,
    RingNotField,
    SingularMatrix,
    SizeMismatch,
)

FIELD_RINGS = frozenset({"gaussian", "quad"})


def _convert(x, ring, radicand):
    if ring == "gaussian":
        return as_gaussian(x)
    if ring == "laurent":
        if type(x) is LaurentPoly:
            return x
        return LaurentPoly.constant(as_gaussian(x))
    if type(x) is QuadExt:
        return x if x.coeff else QuadExt._raw(x.base, ZERO, radicand)
    return QuadExt._raw(as_gaussian(x), ZERO, radicand)


def _detect_ring(entries):
    ring, radicand = "gaussian", None
    for x in entries:
        if type(x) is LaurentPoly:
            if ring == "quad":
                raise RingMismatch("cannot mix Laurent and quadratic-extension entries")
            ring = "laurent"
        elif type(x) is QuadExt:
            if ring == "laurent":
                raise RingMismatch("cannot mix Laurent and quadratic-extension entries")
            ring = "quad"
            if x.coeff:
                if radicand is not None and radicand != x.radicand:
                    raise RingMismatch("entries use different radicands")
                radicand = x.radicand
    if ring == "quad" and radicand is None:
        radicand = next(x.radicand for x in entries if type(x) is QuadExt)
    return ring, radicand


class Matrix:
    """Immutable square matrix; every entry lives in the same scalar ring."""

    __slots__ = ("rows", "size", "ring", "_hash")

    def __init__(self, rows, ring: str | None = None):
        rows = [list(r) for r in rows]
        m = len(rows)
        if m == 0:
            raise SizeMismatch("matrices must have size >= 1")
        if any(len(r) != m for r in rows):
            raise SizeMismatch("matrix must be square")
        flat = [x for r in rows for x in r]
        detected, radicand = _detect_ring(flat)
        if ring is None:
            ring = detected
        elif ring == "gaussian" and detected != "gaussian":
            raise RingMismatch(f"entries live in {detected}, not gaussian")
        if ring == "quad" and radicand is None:
            radicand = ZERO
        self.rows = tuple(tuple(_convert(x, ring, radicand) for x in r) for r in rows)
        self.size = m
        self.ring = ring
        self._hash = None

    @classmethod
    def _wrap(cls, rows, ring):
        obj = object.__new__(cls)
        obj.rows = rows
        obj.size = len(rows)
        obj.ring = ring
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------------
    @classmethod
    def identity(cls, m: int, ring: str = "gaussian", like=None) -> "Matrix":
        zero, one = _zero_one(ring, like)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(m))
                               for i in range(m)), ring)

    @classmethod
    def zeros(cls, m: int, ring: str = "gaussian", like=None) -> "Matrix":
        zero, _ = _zero_one(ring, like)
        return cls._wrap(tuple(tuple(zero for _ in range(m)) for _ in range(m)), ring)

    @classmethod
    def diag(cls, values, ring: str | None = None) -> "Matrix":
        values = list(values)
        m = len(values)
        return cls([[values[i] if i == j else 0 for j in range(m)] for i in range(m)], ring)

    @classmethod
    def from_columns(cls, columns) -> "Matrix":
        columns = [list(c) for c in columns]
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(len(columns))])

    # basic protocol -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.size == other.size and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    @property
    def zero(self):
        return self.rows[0][0].zero()

    @property
    def one(self):
        return self.rows[0][0].one()

    def entries(self):
        return [x for r in self.rows for x in r]

    def flatten(self):
        return [x for r in self.rows for x in r]

    # arithmetic -----------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.size != self.size:
            raise SizeMismatch(f"size {self.size} vs {other.size}")
        if other.ring != self.ring:
            raise RingMismatch(f"ring {self.ring} vs {other.ring}")

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        m = self.size
        B = other.rows
        zero = self.zero
        out = []
        for row in self.rows:
            acc = [zero] * m
            for k in range(m):
                a = row[k]
                if a:
                    bk = B[k]
                    for j in range(m):
                        b = bk[j]
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._wrap(tuple(out), self.ring)

    def __add__(self, other):
        self._check(other)
        return Matrix._wrap(tuple(tuple(a + b for a, b in zip(r, s))
                                  for r, s in zip(self.rows, other.rows)), self.ring)

    def __sub__(self, other):
        self._check(other)
        return Matrix._wrap(tuple(tuple(a - b for a, b in zip(r, s))
                                  for r, s in zip(self.rows, other.rows)), self.ring)

    def __neg__(self):
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self.rows), self.ring)

    def scale(self, c) -> "Matrix":
        c = _convert(c, self.ring, _radicand_of(self)) if self.ring != "quad" else c
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self.rows), self.ring)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.size, self.ring, like=self.zero)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product ``self @ vec`` on plain sequences."""
        if len(vec) != self.size:
            raise SizeMismatch("vector length does not match matrix size")
        out = []
        for row in self.rows:
            acc = None
            for a, v in zip(row, vec):
                if a and v:
                    term = a * v
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else _zero_like(vec, self.zero))
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        m = self.size
        return Matrix._wrap(tuple(tuple(self.rows[j][i] for j in range(m)) for i in range(m)),
                            self.ring)

    def trace(self):
        total = self.zero
        for i in range(self.size):
            total = total + self.rows[i][i]
        return total

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        m = self.size
        return all((self.rows[i][j] == d) if i == j else not self.rows[i][j]
                   for i in range(m) for j in range(m))

    def is_identity(self) -> bool:
        return self.is_scalar() and self.rows[0][0] == 1

    def is_field(self) -> bool:
        return self.ring in FIELD_RINGS

    def evaluate(self, t0) -> "Matrix":
        """Substitute ``t = t0`` into a Laurent matrix."""
        if self.ring != "laurent":
            return self
        return Matrix._wrap(tuple(tuple(laurent_eval(x, t0) for x in r) for r in self.rows),
                            "gaussian")

    def to_quad(self, radicand) -> "Matrix":
        """Promote a Gaussian matrix into Q(i)(sqrt(radicand))."""
        if self.ring == "quad":
            return self
        if self.ring != "gaussian":
            raise RingMismatch("only Gaussian matrices can be promoted")
        radicand = as_gaussian(radicand)
        return Matrix._wrap(tuple(tuple(QuadExt._raw(x, ZERO, radicand) for x in r)
                                  for r in self.rows), "quad")

    # determinant, characteristic polynomial, inverse ------------------------------
    def charpoly(self) -> list:
        """Coefficients ``[c0, c1, ..., 1]`` of ``det(x*I - A)``."""
        return _faddeev_leverrier(self)[0]

    def det(self):
        if self.is_field():
            return _field_det(self)
        coeffs = self.charpoly()
        c0 = coeffs[0]
        return c0 if self.size % 2 == 0 else -c0

    def inverse(self) -> "Matrix":
        return mat_inverse(self)

    def conjugate_by(self, P: "Matrix") -> "Matrix":
        """Return ``P^-1 @ self @ P``."""
        return mat_inverse(P) @ self @ P

    def to_json(self):
        return {"ring": self.ring, "size": self.size,
                "entries": [[x.to_json() for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if isinstance(obj, list):
            obj = {"entries": obj}
        ring = obj.get("ring", "gaussian")
        entries = obj["entries"]
        size = obj.get("size", len(entries))
        if len(entries) != size or any(len(r) != size for r in entries):
            raise SizeMismatch("declared size does not match entries")
        return cls([[scalar_from_json(x, ring) for x in r] for r in entries], ring)


def _radicand_of(M):
    for x in M.entries():
        if type(x) is QuadExt:
            return x.radicand
    return None


def _zero_like(vec, fallback):
    for v in vec:
        return v.zero() if hasattr(v, "zero") else fallback
    return fallback


def _zero_one(ring, like):
    if like is not None:
        return like.zero(), like.one()
    if ring == "gaussian":
        return ZERO, ONE
    if ring == "laurent":
        z = LaurentPoly()
        return z, z.one()
    q = QuadExt()
    return q.zero(), q.one()


def _faddeev_leverrier(A: Matrix):
    m = A.size
    zero, one = A.zero, A.one
    coeffs = [zero] * (m + 1)
    coeffs[m] = one
    M = Matrix.zeros(m, A.ring, like=zero)
    ident = Matrix.identity(m, A.ring, like=zero)
    for k in range(1, m + 1):
        M = A @ M + ident.scale(coeffs[m - k + 1])
        coeffs[m - k] = -((A @ M).trace() / k)
    return coeffs, M


def _field_det(A: Matrix):
    rows = [list(r) for r in A.rows]
    m = A.size
    det = A.one
    for c in range(m):
        p = next((r for r in range(c, m) if rows[r][c]), None)
        if p is None:
            return A.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det = det * piv
        inv = piv.inverse()
        for r in range(c + 1, m):
            f = rows[r][c]
            if f:
                f = f * inv
                rr, rc = rows[r], rows[c]
                for j in range(c, m):
                    if rc[j]:
                        rr[j] = rr[j] - f * rc[j]
    return det


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """Exact product; sizes and rings must agree."""
    if not isinstance(A, Matrix) or not isinstance(B, Matrix):
        raise TypeError("mat_mul expects two matrices")
    return A @ B


def det(A: Matrix):
    return A.det()


def mat_inverse(A: Matrix) -> Matrix:
    """Exact inverse.

    Over the Laurent ring the determinant has to be a unit (a nonzero
    monomial); otherwise ``NonUnitDeterminant`` is raised.
    """
    m = A.size
    if A.is_field():
        rows = [list(r) + [A.one if i == j else A.zero for j in range(m)]
                for i, r in enumerate(A.rows)]
        for c in range(m):
            p = next((r for r in range(c, m) if rows[r][c]), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            rows[c], rows[p] = rows[p], rows[c]
            inv = rows[c][c].inverse()
            rows[c] = [x * inv for x in rows[c]]
            rc = rows[c]
            for r in range(m):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y if y else x for x, y in zip(rows[r], rc)]
        return Matrix._wrap(tuple(tuple(r[m:]) for r in rows), A.ring)
    coeffs, M = _faddeev_leverrier(A)
    c0 = coeffs[0]
    if not c0:
        raise SingularMatrix("matrix is singular")
    if not c0.is_unit():
        raise NonUnitDeterminant(f"determinant {c0 if m % 2 == 0 else -c0} is not a unit")
    return (-M).scale(c0.inverse())


def is_invertible(A: Matrix) -> bool:
    """Nonzero determinant (over the fraction field for Laurent matrices)."""
    return bool(A.det())


def block_embed(block: Matrix, position: int, ambient: int) -> Matrix:
    """Identity of size ``ambient`` with ``block`` placed at rows/cols
    ``position .. position+k-1`` (1-based)."""
    k = block.size
    if position < 1 or position > ambient - k + 1:
        raise PositionOutOfRange(f"block of size {k} cannot start at {position} in {ambient}")
    zero, one = block.zero, block.one
    off = position - 1
    rows = []
    for i in range(ambient):
        row = []
        for j in range(ambient):
            if off <= i < off + k and off <= j < off + k:
                row.append(block.rows[i - off][j - off])
            else:
                row.append(one if i == j else zero)
        rows.append(tuple(row))
    return Matrix._wrap(tuple(rows), block.ring)


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a subspace."""

    def __init__(self, length: int):
        self.length = length
        self._rows: dict[int, tuple[list, list]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vec) -> list:
        v = list(vec)
        for p, (row, nz) in self._rows.items():
            c = v[p]
            if c:
                for j in nz:
                    v[j] = v[j] - c * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        if len(vec) != self.length:
            raise SizeMismatch("vector length does not match ambient dimension")
        v = self.reduce(vec)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv if x else x for x in v]
        nz = [j for j, x in enumerate(v) if x]
        for q, (row, rnz) in list(self._rows.items()):
            c = row[p]
            if c:
                for j in nz:
                    row[j] = row[j] - c * v[j]
                self._rows[q] = (row, [j for j, x in enumerate(row) if x])
        self._rows[p] = (v, nz)
        return True

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def basis(self) -> list[tuple]:
        return [tuple(self._rows[p][0]) for p in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)


def _scalars(vectors):
    """Lift plain numbers to Q(i); leave ring elements alone."""
    return [[x if hasattr(x, "zero") else as_gaussian(x) for x in v] for v in vectors]


def _require_field(vectors):
    for v in vectors:
        for x in v:
            if type(x) is LaurentPoly:
                raise RingNotField("Laurent entries must be evaluated at a sample point first")
            return


def rank(vectors: Iterable[Sequence]) -> tuple[int, list[tuple]]:
    """Exact rank and canonical (leftmost-pivot, leading-one) echelon basis."""
    vectors = _scalars(vectors)
    if not vectors:
        return 0, []
    _require_field(vectors)
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        raise SizeMismatch("vectors must share an ambient dimension")
    eb = EchelonBasis(length)
    for v in vectors:
        eb.add(v)
    return eb.dim, eb.basis()


class Subspace:
    """Subspace of F^n stored by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [list(v) for v in vectors]
        self.ambient_dim = ambient_dim
        if vectors:
            _, basis = rank(vectors)
        else:
            basis = []
        if any(len(v) != ambient_dim for v in basis):
            raise SizeMismatch("vector length does not match ambient dimension")
        self.basis = tuple(basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __contains__(self, vec) -> bool:
        eb = EchelonBasis(self.ambient_dim)
        for b in self.basis:
            eb.add(b)
        return eb.contains(_scalars([vec])[0])

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}, basis=[{vecs}])"


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : rows @ x = 0}`` over the field of the entries."""
    rows = [r for r in _scalars(rows) if any(r)]
    if not rows:
        return [tuple(ONE if i == j else ZERO for j in range(ncols)) for i in range(ncols)]
    _require_field(rows)
    zero, one = rows[0][0].zero(), rows[0][0].one()
    eb = EchelonBasis(ncols)
    for r in rows:
        eb.add(r)
    pivots = eb.pivots()
    reduced = {p: r for p, r in zip(pivots, eb.basis())}
    free = [j for j in range(ncols) if j not in reduced]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for p, r in reduced.items():
            if r[f]:
                v[p] = -r[f]
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------------------
# span closure
# ---------------------------------------------------------------------------


def span_closure(gens: Sequence[Matrix], return_basis: bool = False):
    """Dimension of the unital associative algebra generated by ``gens``.

    Seeds the span with the identity, the generators and their inverses, then
    left-multiplies every new basis element by every generator until no new
    direction appears.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("span_closure needs at least one generator")
    m = gens[0].size
    for g in gens:
        if g.size != m:
            raise SizeMismatch("generators must share a size")
        if not g.is_field():
            raise RingNotField("evaluate Laurent matrices at a sample point first")
        if g.ring != gens[0].ring:
            raise RingMismatch("generators must share a ring")
    full = m * m
    eb = EchelonBasis(full)
    frontier = []
    seeds = [Matrix.identity(m, gens[0].ring, like=gens[0].zero)] + gens
    for g in gens:
        try:
            seeds.append(mat_inverse(g))
        except SingularMatrix:
            pass
    for X in seeds:
        if eb.add(X.flatten()):
            frontier.append(X)
    rounds = 0
    while frontier and eb.dim < full:
        rounds += 1
        if rounds > full:
            raise RuntimeError("span closure failed to stabilise within m^2 rounds")
        nxt = []
        for X in frontier:
            for g in gens:
                Y = g @ X
                if eb.add(Y.flatten()):
                    nxt.append(Y)
                    if eb.dim == full:
                        break
            if eb.dim == full:
                break
        frontier = nxt
    if return_basis:
        return eb.dim, eb.basis()
    return eb.dim


# ---------------------------------------------------------------------------
# 2x2 eigenvectors
# ---------------------------------------------------------------------------


class Eigen(enum.Enum):
    ALL_VECTORS = "AllVectorsEigen"


AllVectorsEigen = Eigen.ALL_VECTORS


def eigen_2x2(M: Matrix):
    """Eigenpairs of a Gaussian 2x2 matrix inside Q(i)(sqrt(disc)).

    Returns ``AllVectorsEigen`` for scalar matrices, otherwise a list of one
    or two ``(eigenvalue, eigenvector)`` pairs with ``QuadExt`` entries.
    Eigenvectors are scaled so the second coordinate is 1 whenever the lower
    left entry is nonzero.
    """
    if M.size != 2 or M.ring != "gaussian":
        raise SizeMismatch("eigen_2x2 expects a Gaussian 2x2 matrix")
    (p, q), (r, s) = M.rows
    if not q and not r and p == s:
        return AllVectorsEigen
    disc = (p - s) * (p - s) + 4 * q * r
    root = sqrt_quad(disc)
    delta = root.radicand
    half = GaussianRational(1, 0) / 2
    tr = QuadExt._raw(p + s, ZERO, delta)
    lams = [(tr + root) * half]
    if root:
        lams.append((tr - root) * half)
    one = QuadExt._raw(ONE, ZERO, delta)
    zero = one.zero()
    pairs = []
    for lam in lams:
        if r:
            v = ((lam - s) / r, one)
        elif q:
            v = (one, (lam - p) / q)
        else:
            v = (one, zero) if lam == p else (zero, one)
        pairs.append((lam, v))
    return pairs


def is_parallel(u: Sequence, v: Sequence) -> bool:
    """True when ``u`` and ``v`` span at most a line (both assumed nonzero)."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] - u[j] * v[i]:
                return False
    return True


def fixes_line(M: Matrix, v: Sequence) -> bool:
    """True when ``M v`` lies in the span of the nonzero vector ``v``."""
    return is_parallel(M.apply(v), v)
