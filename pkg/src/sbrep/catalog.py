"""Constructors for every representation family in the catalog.

Each constructor validates its parameter record, builds the generator images
and checks them against the defining relations before returning.  A
``Representation`` that exists has passed ``verify_rep``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Callable, Mapping, NamedTuple

from .arith import ONE, ZERO, T, GaussianRational, LaurentPoly, as_gaussian, scalar_from_json
from .errors import (
    BadStrandCount,
    ConstraintViolation,
    FormulaInconsistent,
    NotCommuting,
    NotInvertible,
    RelationViolation,
    SingularGeneratorImage,
    SingularMatrix,
    SingularTau,
    SizeMismatch,
    ZeroC,
    ZeroEigenvalue,
    ZeroExponent,
)
from .linalg import EchelonBasis, Matrix, block_embed, is_invertible, mat_inverse
from .presentations import (
    SIGMA,
    TAU,
    Gen,
    Presentation,
    check_assignment,
    presentation,
    sigma,
    tau,
    verify_rep,
)


@dataclass(frozen=True, eq=False)
class Representation:
    """Generator images of a B_n or SB_n representation plus provenance."""

    family: str
    n: int
    group: str
    images: Mapping[Gen, Matrix]
    params: Mapping[str, object] = field(default_factory=dict)
    notes: tuple = ()
    base: "Representation | None" = None

    @property
    def dim(self) -> int:
        return next(iter(self.images.values())).size

    @property
    def ring(self) -> str:
        return next(iter(self.images.values())).ring

    def presentation(self) -> Presentation:
        return presentation(self.group, self.n)

    @property
    def generators(self) -> tuple:
        return self.presentation().generators

    def matrices(self) -> list[Matrix]:
        return [self.images[g] for g in self.generators]

    def sigma_images(self) -> list[Matrix]:
        return [self.images[g] for g in self.generators if g.kind == SIGMA]

    def tau_images(self) -> list[Matrix]:
        return [self.images[g] for g in self.generators if g.kind == TAU]

    @cached_property
    def _inverses(self) -> dict:
        return {}

    def image(self, g: Gen) -> Matrix:
        if g.sign == 1:
            return self.images[g]
        pos = g.positive()
        if pos not in self._inverses:
            self._inverses[pos] = mat_inverse(self.images[pos])
        return self._inverses[pos]

    def evaluate(self, t0) -> "Representation":
        """Specialise a Laurent representation at ``t = t0``."""
        if self.ring != "laurent":
            return self
        t0 = as_gaussian(t0)
        images = {g: M.evaluate(t0) for g, M in self.images.items()}
        for g, M in images.items():
            if not is_invertible(M):
                raise SingularGeneratorImage(f"image of {g.name} is singular at t = {t0}")
        base = self.base.evaluate(t0) if self.base is not None else None
        return replace(self, images=images, notes=self.notes + (f"evaluated at t = {t0}",),
                       base=base)

    def conjugate(self, P: Matrix) -> "Representation":
        """The equivalent representation ``g -> P^-1 rho(g) P``."""
        Pinv = mat_inverse(P)
        images = {g: Pinv @ M @ P for g, M in self.images.items()}
        return replace(self, images=images, base=None)

    def to_json(self):
        return {
            "family": self.family,
            "n": self.n,
            "group": self.group,
            "dim": self.dim,
            "ring": self.ring,
            "params": {k: _param_to_json(v) for k, v in self.params.items()},
            "images": {g.name: self.images[g].to_json() for g in self.generators},
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj, validate: bool = True) -> "Representation":
        images = {Gen.parse(name): Matrix.from_json(m) for name, m in obj["images"].items()}
        group = obj.get("group") or ("sbn" if any(g.kind == TAU for g in images) else "bn")
        n = obj.get("n") or (max(g.index for g in images) + 1)
        params = {k: _param_from_json(v) for k, v in obj.get("params", {}).items()}
        rep = cls(obj.get("family", "custom"), n, group, images, params,
                  tuple(obj.get("notes", ())))
        if validate:
            _validate(rep)
        return rep


def _param_to_json(v):
    if isinstance(v, int) or isinstance(v, str):
        return v
    return v.to_json()


def _param_from_json(v):
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return v
    return scalar_from_json(v, "gaussian")


def _validate(rep: Representation) -> Representation:
    pres = rep.presentation()
    check_assignment(rep.images, pres)
    extra = [g.name for g in rep.images if g not in pres.generators]
    if extra:
        raise SizeMismatch(f"generators {', '.join(extra)} do not belong to {rep.group}({rep.n})")
    violations = verify_rep(rep.images, pres)
    if violations:
        raise RelationViolation(violations)
    return rep


def custom(images: Mapping, group: str, n: int, family: str = "custom", **params) -> Representation:
    """Wrap an arbitrary assignment after checking it against the presentation."""
    images = {(Gen.parse(g) if isinstance(g, str) else g): (M if isinstance(M, Matrix) else Matrix(M))
              for g, M in images.items()}
    return _validate(Representation(family, n, group, images, params))


def _require(condition: bool, text: str, exc=ConstraintViolation):
    if not condition:
        raise exc(text)


def _g(params, name):
    if name not in params:
        raise ConstraintViolation(f"{name} given", f"missing parameter {name!r}")
    return as_gaussian(params[name])


def _check_n(n, minimum=2):
    if not isinstance(n, int) or n < minimum:
        raise BadStrandCount(f"strand count must be an integer >= {minimum}, got {n!r}")


def _local(block: Matrix, n: int) -> dict:
    return {i: block_embed(block, i, n + block.size - 2) for i in range(1, n)}


def _window(k: int) -> int:
    """Smallest strand count whose relations cover every overlap pattern of
    k x k blocks; blocks further apart act on disjoint coordinates."""
    return max(3, k + 1)


@lru_cache(maxsize=64)
def _local_images(sblock: Matrix, tblock: Matrix | None, n: int) -> dict:
    images = {sigma(i): M for i, M in _local(sblock, n).items()}
    if tblock is not None:
        images.update({tau(i): M for i, M in _local(tblock, n).items()})
    return MappingProxyType(images)


@lru_cache(maxsize=1 << 16)
def _local_violations(group: str, sblock: Matrix, tblock: Matrix | None, n0: int):
    images = _local_images(sblock, tblock, n0)
    return tuple(verify_rep(images, presentation(group, n0)))


def _local_rep(family, n, group, sblock, tblock, params, notes=()):
    """Assemble a local representation; relations are checked on the
    smallest window, which decides them for every n by translation."""
    _check_n(n)
    n0 = min(n, _window(sblock.size))
    violations = _local_violations(group, sblock, tblock, n0)
    if violations:
        raise RelationViolation(violations)
    images = _local_images(sblock, tblock, n)
    return Representation(family, n, group, images, params, tuple(notes))


def _bn_local(family, n, block, params, notes=()):
    return _local_rep(family, n, "bn", block, None, params, notes)


def _sbn_local(family, n, sblock, tblock, params, notes=()):
    return _local_rep(family, n, "sbn", sblock, tblock, params, notes)


# ---------------------------------------------------------------------------
# classical local representations of B_n over the Laurent ring
# ---------------------------------------------------------------------------


def burau(n: int) -> Representation:
    """Burau representation: ``sigma_i`` block ``[[1-t, t], [1, 0]]``."""
    _check_n(n)
    return _bn_local("burau", n, Matrix([[1 - T, T], [1, 0]]), {})


def wada(n: int, k: int) -> Representation:
    """Wada representation of type 1: block ``[[1-t^k, t^k], [1, 0]]``."""
    _check_n(n)
    if not isinstance(k, int) or k == 0:
        raise ZeroExponent("k != 0", f"Wada exponent must be a nonzero integer, got {k!r}")
    tk = T ** k
    return _bn_local("wada", n, Matrix([[1 - tk, tk], [1, 0]]), {"k": k})


def standard(n: int) -> Representation:
    """Standard representation: block ``[[0, t], [1, 0]]``."""
    _check_n(n)
    return _bn_local("standard", n, Matrix([[0, T], [1, 0]]), {})


def f_rep(n: int) -> Representation:
    """F-representation of dimension ``n + 1`` with a 3x3 local block."""
    _check_n(n)
    block = Matrix([[1, 1, 0], [0, -T, 0], [0, T, 1]])
    return _bn_local("f_rep", n, block, {})


# ---------------------------------------------------------------------------
# Phi-type extension
# ---------------------------------------------------------------------------


def phi_extension(mu: Representation, a, b, c) -> Representation:
    """Extend a B_n representation by ``tau_i = a mu(s_i) + b mu(s_i)^-1 + c I``."""
    if mu.group != "bn":
        raise ValueError("phi_extension needs a representation of B_n")
    a, b, c = as_gaussian(a), as_gaussian(b), as_gaussian(c)
    m, ring = mu.dim, mu.ring
    ident = Matrix.identity(m, ring, like=mu.images[sigma(1)].zero)
    images = dict(mu.images)
    for i in range(1, mu.n):
        S = mu.images[sigma(i)]
        Tm = S.scale(a) + mat_inverse(S).scale(b) + ident.scale(c)
        if not is_invertible(Tm):
            raise SingularTau(i)
        images[tau(i)] = Tm
    params = {"a": a, "b": b, "c": c, "base": mu.family}
    params.update({f"base_{k}": v for k, v in mu.params.items()})
    rep = Representation("phi", mu.n, "sbn", images, params, (f"extends {mu.family}",), base=mu)
    return _validate(rep)


# ---------------------------------------------------------------------------
# SB_2 in dimension 2
# ---------------------------------------------------------------------------

SB2_PARAMS = {
    "rho1": ("w", "x", "y", "z", "a", "b"),
    "rho2": ("w", "y", "z", "a", "c"),
    "rho3": ("w", "a", "b", "c", "d"),
    "rho4": ("w", "z", "a", "d"),
}


def _sb2_tag(tag: str) -> str:
    tag = tag.removeprefix("sb2_")
    if tag not in SB2_PARAMS:
        raise ValueError(f"unknown SB_2 family {tag!r}")
    return tag


def sb2_family(tag: str, params: Mapping) -> Representation:
    """One of the four commuting-pair families of SB_2 in GL_2."""
    tag = _sb2_tag(tag)
    p = {k: _g(params, k) for k in SB2_PARAMS[tag]}
    if tag == "rho1":
        w, x, y, z, a, b = (p[k] for k in SB2_PARAMS[tag])
        _require(x != 0, "x != 0")
        _require(w * z != x * y, "wz != xy")
        _require(a * a * x - a * b * w + a * b * z != b * b * y, "a^2x - abw + abz != b^2y")
        S = Matrix([[w, x], [y, z]])
        Tm = Matrix([[a, b], [b * y / x, (a * x - b * w + b * z) / x]])
    elif tag == "rho2":
        w, y, z, a, c = (p[k] for k in SB2_PARAMS[tag])
        for name in ("a", "w", "y", "z"):
            _require(p[name] != 0, f"{name} != 0")
        _require(a * y - c * w + c * z != 0, "ay - cw + cz != 0")
        S = Matrix([[w, 0], [y, z]])
        Tm = Matrix([[a, 0], [c, (a * y - c * w + c * z) / y]])
    elif tag == "rho3":
        w, a, b, c, d = (p[k] for k in SB2_PARAMS[tag])
        _require(a * d != b * c, "ad != bc")
        _require(w != 0, "w != 0")
        S = Matrix([[w, 0], [0, w]])
        Tm = Matrix([[a, b], [c, d]])
    else:
        w, z, a, d = (p[k] for k in SB2_PARAMS[tag])
        for name in ("a", "d", "w", "z"):
            _require(p[name] != 0, f"{name} != 0")
        S = Matrix([[w, 0], [0, z]])
        Tm = Matrix([[a, 0], [0, d]])
    images = {sigma(1): S, tau(1): Tm}
    return _validate(Representation(f"sb2_{tag}", 2, "sbn", images, p))


class SB2Classification(NamedTuple):
    family: str
    params: dict
    conjugator: Matrix

    def template(self) -> Representation:
        return sb2_family(self.family, self.params)


def sb2_classify(S: Matrix, Tm: Matrix) -> SB2Classification:
    """Place a commuting invertible pair ``(S, T)`` into one of rho1..rho4.

    Follows the case split on ``(x, b, y, c)``; the returned conjugator ``P``
    satisfies ``P^-1 S P`` and ``P^-1 T P`` equal to the template images.
    """
    if S.size != 2 or Tm.size != 2 or S.ring != "gaussian" or Tm.ring != "gaussian":
        raise SizeMismatch("sb2_classify expects two Gaussian 2x2 matrices")
    (w, x), (y, z) = S.rows
    (a, b), (c, d) = Tm.rows
    if not S.det() or not Tm.det():
        raise NotInvertible("both images must be invertible")
    eqs = {
        "-cx+by=0": -c * x + b * y,
        "-bw+ax-dx+bz=0": -b * w + a * x - d * x + b * z,
        "cw-ay+dy-cz=0": c * w - a * y + d * y - c * z,
    }
    failed = [k for k, v in eqs.items() if v]
    if failed:
        raise NotCommuting(f"commutation equations fail: {', '.join(failed)}")
    P = Matrix.identity(2)
    if x:
        return SB2Classification("rho1", dict(w=w, x=x, y=y, z=z, a=a, b=b), P)
    if not b and y:
        return SB2Classification("rho2", dict(w=w, y=y, z=z, a=a, c=c), P)
    if b and not y:
        return SB2Classification("rho3", dict(w=w, a=a, b=b, c=c, d=d), P)
    if not b and not y:
        if c:
            return SB2Classification("rho3", dict(w=w, a=a, b=b, c=c, d=d), P)
        return SB2Classification("rho4", dict(w=w, z=z, a=a, d=d), P)
    raise NotCommuting("x = 0 with b, y both nonzero cannot commute")


# ---------------------------------------------------------------------------
# B_3 and SB_3 in dimensions 2 and 3
# ---------------------------------------------------------------------------


def _nonzero_lambdas(**lams):
    for name, v in lams.items():
        _require(v != 0, f"{name} != 0", ZeroEigenvalue)


def tuba_wenzl_dim2(l1, l2) -> Representation:
    """Upper/lower triangular 2-dimensional form of B_3."""
    l1, l2 = as_gaussian(l1), as_gaussian(l2)
    _nonzero_lambdas(l1=l1, l2=l2)
    notes = []
    if l1 * l1 + l2 * l2 - l1 * l2 == 0:
        notes.append("advisory: l1^2 + l2^2 - l1*l2 = 0, irreducibility condition fails")
    images = {
        sigma(1): Matrix([[l1, l1], [0, l2]]),
        sigma(2): Matrix([[l2, 0], [-l2, l1]]),
    }
    return _validate(Representation("tw2", 3, "bn", images, {"l1": l1, "l2": l2}, tuple(notes)))


def sb3_ext_dim2(l1, l2, a1, b1) -> Representation:
    """Extension of the 2-dimensional B_3 form to SB_3."""
    mu = tuba_wenzl_dim2(l1, l2)
    l1, l2, a1, b1 = (as_gaussian(v) for v in (l1, l2, a1, b1))
    d1 = a1 - b1 * (l1 - l2) / l1
    a2, c2, d2 = d1, -b1 * l2 / l1, a1
    _require(a1 != 0, "a1 != 0")
    _require(d1 != 0, "d1 = a1 - b1(l1 - l2)/l1 != 0")
    images = dict(mu.images)
    images[tau(1)] = Matrix([[a1, b1], [0, d1]])
    images[tau(2)] = Matrix([[a2, 0], [c2, d2]])
    params = {"l1": l1, "l2": l2, "a1": a1, "b1": b1}
    return _validate(Representation("sb3_ext2", 3, "sbn", images, params, mu.notes, base=mu))


def tw3_condition(l1, l2, l3):
    return (l1 * l1 + l2 * l3) * (l2 * l2 + l1 * l3) * (l3 * l3 + l1 * l2)


def tuba_wenzl_dim3(l1, l2, l3) -> Representation:
    """Upper/lower triangular 3-dimensional form of B_3."""
    l1, l2, l3 = as_gaussian(l1), as_gaussian(l2), as_gaussian(l3)
    _nonzero_lambdas(l1=l1, l2=l2, l3=l3)
    notes = []
    if tw3_condition(l1, l2, l3) == 0:
        notes.append("advisory: (l1^2+l2l3)(l2^2+l1l3)(l3^2+l1l2) = 0, "
                     "irreducibility condition fails")
    u = l1 * l3 / l2 + l2
    images = {
        sigma(1): Matrix([[l1, u, l2], [0, l2, l2], [0, 0, l3]]),
        sigma(2): Matrix([[l3, 0, 0], [-l2, l2, 0], [l2, -u, l1]]),
    }
    params = {"l1": l1, "l2": l2, "l3": l3}
    return _validate(Representation("tw3", 3, "bn", images, params, tuple(notes)))


def _published_tau_entries(l1, l2, l3, c1, e1, f1) -> dict:
    """Closed-form tau entries for the 3-dimensional SB_3 extension."""
    den = l1 * l2 * (l2 + l3)
    a1 = (c1 * l2 * (l1 - l2) * (l1 - l3) + e1 * l1 * l2 * (l2 + l3)
          + f1 * l3 * (l1 - l2) * (l1 + l2)) / den
    b1 = ((l1 * l3 + l2 * l2) * (c1 * l2 * (l1 - l3) + f1 * l3 * (l1 + l2))
          / (l1 * l2 * l2 * (l2 + l3)))
    i1 = e1 + f1 * (l3 / l2 - 1)
    return {"a1": a1, "b1": b1, "c1": c1, "e1": e1, "f1": f1, "i1": i1,
            "a2": i1, "d2": -f1, "e2": e1, "g2": c1, "h2": -b1, "i2": a1}


# (tau index, row, col) of each named entry; everything else is zero
_TAU3_LAYOUT = {
    "a1": (1, 0, 0), "b1": (1, 0, 1), "c1": (1, 0, 2), "e1": (1, 1, 1),
    "f1": (1, 1, 2), "i1": (1, 2, 2),
    "a2": (2, 0, 0), "d2": (2, 1, 0), "e2": (2, 1, 1), "g2": (2, 2, 0),
    "h2": (2, 2, 1), "i2": (2, 2, 2),
}


def _entry_name(k, r, c):
    for name, pos in _TAU3_LAYOUT.items():
        if pos == (k, r, c):
            return name
    return f"tau{k}[{r + 1},{c + 1}]"


def _taus_from_entries(entries: Mapping) -> tuple[Matrix, Matrix]:
    grids = {1: [[ZERO] * 3 for _ in range(3)], 2: [[ZERO] * 3 for _ in range(3)]}
    for name, (k, r, c) in _TAU3_LAYOUT.items():
        grids[k][r][c] = entries[name]
    return Matrix(grids[1]), Matrix(grids[2])


def _commutator_rows(A: Matrix, B: Matrix, offset_x: int):
    """Coefficient rows (in 18 unknowns) of ``A X - X B`` for X at ``offset_x``."""
    rows = []
    for r in range(3):
        for c in range(3):
            row = [ZERO] * 18
            for k in range(3):
                if A[r, k]:
                    idx = offset_x + 3 * k + c
                    row[idx] = row[idx] + A[r, k]
                if B[k, c]:
                    idx = offset_x + 3 * r + k
                    row[idx] = row[idx] - B[k, c]
            rows.append(row)
    return rows


def _mixed_rows(A: Matrix, B: Matrix, left_x: int, right_x: int):
    """Rows of ``A X - Y B`` with X at ``left_x`` and Y at ``right_x``."""
    rows = []
    for r in range(3):
        for c in range(3):
            row = [ZERO] * 18
            for k in range(3):
                if A[r, k]:
                    idx = left_x + 3 * k + c
                    row[idx] = row[idx] + A[r, k]
                if B[k, c]:
                    idx = right_x + 3 * r + k
                    row[idx] = row[idx] - B[k, c]
            rows.append(row)
    return rows


def solve_sb3_dim3_taus(s1: Matrix, s2: Matrix, c1, e1, f1) -> tuple[Matrix, Matrix]:
    """Solve the SB_3 relations for both tau images given the sigma images
    and the pinned entries ``tau1[1,3] = c1``, ``tau1[2,2] = e1``,
    ``tau1[2,3] = f1``."""
    s12, s21 = s1 @ s2, s2 @ s1
    eqs = []
    eqs += [r + [ZERO] for r in _commutator_rows(s1, s1, 0)]          # t1 s1 = s1 t1
    eqs += [r + [ZERO] for r in _commutator_rows(s2, s2, 9)]          # t2 s2 = s2 t2
    eqs += [r + [ZERO] for r in _mixed_rows(s12, s12, 0, 9)]          # s1 s2 t1 = t2 s1 s2
    eqs += [r + [ZERO] for r in _mixed_rows(s21, s21, 9, 0)]          # s2 s1 t2 = t1 s2 s1
    for idx, val in ((2, c1), (4, e1), (5, f1)):
        row = [ZERO] * 19
        row[idx] = ONE
        row[18] = as_gaussian(val)
        eqs.append(row)
    eb = EchelonBasis(19)
    for row in eqs:
        eb.add(row)
    pivots = eb.pivots()
    if 18 in pivots:
        raise ConstraintViolation("relation system consistent",
                                  "no tau images satisfy the SB_3 relations with these pins")
    if pivots != list(range(18)):
        raise ConstraintViolation("relation system determined",
                                  "tau images are not determined by (c1, e1, f1)")
    x = [row[18] for row in eb.basis()]
    return Matrix([x[0:3], x[3:6], x[6:9]]), Matrix([x[9:12], x[12:15], x[15:18]])


def sb3_ext_dim3(l1, l2, l3, c1, e1, f1, strict: bool = False) -> Representation:
    """Extension of the 3-dimensional B_3 form to SB_3.

    The closed-form entries are checked against the relations.  If they fail,
    the relation system is solved directly; the result carries a note naming
    each deviating coefficient, or ``FormulaInconsistent`` is raised when
    ``strict`` is set.
    """
    mu = tuba_wenzl_dim3(l1, l2, l3)
    l1, l2, l3, c1, e1, f1 = (as_gaussian(v) for v in (l1, l2, l3, c1, e1, f1))
    _require(l2 != -l3, "l2 != -l3 (λ_2 ≠ −λ_3)")
    entries = _published_tau_entries(l1, l2, l3, c1, e1, f1)
    for name in ("a1", "e1", "i1", "a2", "e2", "i2"):
        _require(entries[name] != 0, f"{name} != 0")
    t1, t2 = _taus_from_entries(entries)
    images = dict(mu.images)
    images[tau(1)], images[tau(2)] = t1, t2
    params = {"l1": l1, "l2": l2, "l3": l3, "c1": c1, "e1": e1, "f1": f1}
    rep = Representation("sb3_ext3", 3, "sbn", images, params, mu.notes, base=mu)
    if not verify_rep(images, rep.presentation()):
        return _validate(rep)
    s1, s2 = mu.images[sigma(1)], mu.images[sigma(2)]
    st1, st2 = solve_sb3_dim3_taus(s1, s2, c1, e1, f1)
    deviations = {}
    for k, (pub, sol) in enumerate(((t1, st1), (t2, st2)), start=1):
        for r in range(3):
            for c in range(3):
                if pub[r, c] != sol[r, c]:
                    deviations[_entry_name(k, r, c)] = (pub[r, c], sol[r, c])
    images[tau(1)], images[tau(2)] = st1, st2
    for g in (tau(1), tau(2)):
        if not is_invertible(images[g]):
            raise SingularTau(g.index)
    note = "published coefficients corrected by relation solve: " + ", ".join(
        f"{name} (published {p}, solved {s})" for name, (p, s) in sorted(deviations.items()))
    solved = _validate(replace(rep, images=images, notes=rep.notes + (note,)))
    if strict:
        raise FormulaInconsistent(deviations, solved)
    return solved


# ---------------------------------------------------------------------------
# homogeneous local representations with 2x2 blocks
# ---------------------------------------------------------------------------

MU_PARAMS = {"mu1": ("a", "c"), "mu2": ("c", "d"), "mu3": ("b", "c")}
RHO_PARAMS = {"rho1": ("a", "c", "t"), "rho2": ("c", "d", "x"), "rho3": ("b", "c", "x", "y")}


def _mu_block(tag: str, p: Mapping) -> Matrix:
    if tag == "mu1":
        a, c = p["a"], p["c"]
        _require(c != 0, "c != 0")
        _require(a != 1, "a != 1")
        return Matrix([[a, (1 - a) / c], [c, 0]])
    if tag == "mu2":
        c, d = p["c"], p["d"]
        _require(c != 0, "c != 0")
        _require(d != 1, "d != 1")
        return Matrix([[0, (1 - d) / c], [c, d]])
    if tag == "mu3":
        b, c = p["b"], p["c"]
        _require(b * c != 0, "bc != 0")
        return Matrix([[0, b], [c, 0]])
    raise ValueError(f"unknown homogeneous B_n family {tag!r}")


def homog_mu(tag: str, params: Mapping, n: int) -> Representation:
    """Homogeneous local representation mu1, mu2 or mu3 of B_n."""
    tag = tag.removeprefix("local_")
    if tag not in MU_PARAMS:
        raise ValueError(f"unknown homogeneous B_n family {tag!r}")
    p = {k: _g(params, k) for k in MU_PARAMS[tag]}
    return _bn_local(tag, n, _mu_block(tag, p), p)


def homog_rho(tag: str, params: Mapping, n: int) -> Representation:
    """Homogeneous local representation rho1, rho2 or rho3 of SB_n."""
    tag = tag.removeprefix("local_")
    if tag not in RHO_PARAMS:
        raise ValueError(f"unknown homogeneous SB_n family {tag!r}")
    p = {k: _g(params, k) for k in RHO_PARAMS[tag]}
    notes = []
    if tag == "rho1":
        a, c, t = p["a"], p["c"], p["t"]
        _require(a != 0, "a != 0")
        _require(c != 0, "c != 0")
        _require(a != 1, "a != 1 (sigma block [[a,(1-a)/c],[c,0]] is singular at a = 1)")
        sblock = _mu_block("mu1", {"a": a, "c": c})
        tblock = Matrix([[1 - (1 - a) * (1 - t), (1 - a) / c * (1 - t)], [c * (1 - t), t]])
    elif tag == "rho2":
        c, d, x = p["c"], p["d"], p["x"]
        _require(c != 0, "c != 0")
        _require(d != 0, "d != 0")
        _require(d != 1, "d != 1 (sigma block [[0,(1-d)/c],[c,d]] is singular at d = 1)")
        sblock = _mu_block("mu2", {"c": c, "d": d})
        tblock = Matrix([[x, (1 - d) / c * (1 - x)], [c * (1 - x), 1 - (1 - d) * (1 - x)]])
    else:
        b, c, x, y = p["b"], p["c"], p["x"], p["y"]
        _require(b != 0, "b != 0")
        _require(c != 0, "c != 0")
        sblock = _mu_block("mu3", {"b": b, "c": c})
        tblock = Matrix([[x, y], [c * y / b, x]])
    if not tblock.det():
        raise SingularTau(1, f"tau block {tblock.rows} of local_{tag} is singular")
    return _sbn_local(f"local_{tag}", n, sblock, tblock, p, notes)


def normalize_homog(rep: Representation) -> Representation:
    """Conjugate by ``P = diag(k^(1-n), ..., k, 1)``.

    ``k = c`` except for mu2 and rho2, where ``k = c/(1-d)``.  Every 2x2
    block with off-diagonal pair ``(u, c)`` becomes ``(u*k, c/k)``, so the
    first choice gives ``(u*c, 1)`` and the second puts the invariant line
    of the family on the all-ones vector.
    """
    if rep.family not in ("mu1", "mu2", "mu3", "local_rho1", "local_rho2", "local_rho3"):
        raise ValueError(f"{rep.family} is not a homogeneous local family with parameter c")
    c = as_gaussian(rep.params["c"])
    if not c:
        raise ZeroC("c != 0")
    k, label = c, "c"
    if rep.family in ("mu2", "local_rho2"):
        d = as_gaussian(rep.params["d"])
        if d != 1:
            k, label = c / (1 - d), "c/(1-d)"
    m = rep.dim
    P = Matrix.diag([k ** (j - m) for j in range(1, m + 1)])
    out = rep.conjugate(P)
    return replace(out, notes=rep.notes + (f"normalized by diag(k^(1-n), ..., k, 1), k = {label}",))


# ---------------------------------------------------------------------------
# family registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyInfo:
    tag: str
    group: str
    params: tuple
    constraints: str
    build: Callable
    uses_n: bool = True
    fixed_n: int | None = None
    summary: str = ""


def _need_n(n):
    if n is None:
        raise BadStrandCount("this family needs --n")
    return n


def _phi_builder(n, p):
    base = p.get("base", "burau")
    base_params = {k: v for k, v in p.items() if k not in ("a", "b", "c", "base")}
    mu = build(base, n, base_params)
    return phi_extension(mu, p["a"], p["b"], p["c"])


FAMILIES: dict[str, FamilyInfo] = {
    info.tag: info
    for info in [
        FamilyInfo("burau", "bn", (), "n >= 2", lambda n, p: burau(_need_n(n)),
                   summary="Burau, block [[1-t, t], [1, 0]] over Z[t, 1/t]"),
        FamilyInfo("wada", "bn", ("k",), "n >= 2, k nonzero integer",
                   lambda n, p: wada(_need_n(n), int(p["k"])),
                   summary="Wada type 1, block [[1-t^k, t^k], [1, 0]]"),
        FamilyInfo("standard", "bn", (), "n >= 2", lambda n, p: standard(_need_n(n)),
                   summary="standard, block [[0, t], [1, 0]]"),
        FamilyInfo("f_rep", "bn", (), "n >= 2", lambda n, p: f_rep(_need_n(n)),
                   summary="F-representation, 3x3 block, dimension n+1"),
        FamilyInfo("phi", "sbn", ("a", "b", "c", "base"),
                   "tau_i = a*mu(s_i) + b*mu(s_i)^-1 + c*I invertible",
                   _phi_builder,
                   summary="Phi_{a,b,c} extension of a B_n family (base defaults to burau)"),
        *[
            FamilyInfo(f"sb2_{tag}", "sbn", SB2_PARAMS[tag], cons,
                       (lambda tag: lambda n, p: sb2_family(tag, p))(tag),
                       uses_n=False, fixed_n=2, summary=f"SB_2 commuting pair family {tag}")
            for tag, cons in [
                ("rho1", "x != 0, wz != xy, a^2x - abw + abz != b^2y"),
                ("rho2", "a, w, y, z != 0, ay - cw + cz != 0"),
                ("rho3", "ad != bc, w != 0"),
                ("rho4", "a, d, w, z != 0"),
            ]
        ],
        FamilyInfo("tw2", "bn", ("l1", "l2"), "l1, l2 != 0 (advisory: l1^2+l2^2-l1l2 != 0)",
                   lambda n, p: tuba_wenzl_dim2(p["l1"], p["l2"]), uses_n=False, fixed_n=3,
                   summary="2-dimensional triangular form of B_3"),
        FamilyInfo("sb3_ext2", "sbn", ("l1", "l2", "a1", "b1"),
                   "l1, l2 != 0, a1 != 0, d1 = a1 - b1(l1-l2)/l1 != 0",
                   lambda n, p: sb3_ext_dim2(p["l1"], p["l2"], p["a1"], p["b1"]),
                   uses_n=False, fixed_n=3, summary="SB_3 extension of tw2"),
        FamilyInfo("tw3", "bn", ("l1", "l2", "l3"),
                   "l1, l2, l3 != 0 (advisory: (l1^2+l2l3)(l2^2+l1l3)(l3^2+l1l2) != 0)",
                   lambda n, p: tuba_wenzl_dim3(p["l1"], p["l2"], p["l3"]), uses_n=False,
                   fixed_n=3, summary="3-dimensional triangular form of B_3"),
        FamilyInfo("sb3_ext3", "sbn", ("l1", "l2", "l3", "c1", "e1", "f1"),
                   "l's != 0, l2 != -l3, a1, e1, i1, a2, e2, i2 != 0",
                   lambda n, p: sb3_ext_dim3(p["l1"], p["l2"], p["l3"], p["c1"], p["e1"], p["f1"]),
                   uses_n=False, fixed_n=3, summary="SB_3 extension of tw3"),
        FamilyInfo("mu1", "bn", ("a", "c"), "c != 0, a != 1",
                   lambda n, p: homog_mu("mu1", p, _need_n(n)),
                   summary="homogeneous local B_n, block [[a, (1-a)/c], [c, 0]]"),
        FamilyInfo("mu2", "bn", ("c", "d"), "c != 0, d != 1",
                   lambda n, p: homog_mu("mu2", p, _need_n(n)),
                   summary="homogeneous local B_n, block [[0, (1-d)/c], [c, d]]"),
        FamilyInfo("mu3", "bn", ("b", "c"), "bc != 0",
                   lambda n, p: homog_mu("mu3", p, _need_n(n)),
                   summary="homogeneous local B_n, block [[0, b], [c, 0]]"),
        FamilyInfo("local_rho1", "sbn", ("a", "c", "t"),
                   "a != 0, c != 0, a != 1, tau block invertible",
                   lambda n, p: homog_rho("rho1", p, _need_n(n)),
                   summary="homogeneous local SB_n over mu1"),
        FamilyInfo("local_rho2", "sbn", ("c", "d", "x"),
                   "c != 0, d != 0, d != 1, tau block invertible",
                   lambda n, p: homog_rho("rho2", p, _need_n(n)),
                   summary="homogeneous local SB_n over mu2"),
        FamilyInfo("local_rho3", "sbn", ("b", "c", "x", "y"),
                   "b != 0, c != 0, x^2 != c y^2 / b",
                   lambda n, p: homog_rho("rho3", p, _need_n(n)),
                   summary="homogeneous local SB_n over mu3"),
    ]
}


def build(family: str, n: int | None = None, params: Mapping | None = None) -> Representation:
    """Construct any catalog family by tag."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    info = FAMILIES[family]
    params = dict(params or {})
    if info.fixed_n is not None and n is not None and n != info.fixed_n:
        raise BadStrandCount(f"{family} is defined only for n = {info.fixed_n}")
    return info.build(n, params)
