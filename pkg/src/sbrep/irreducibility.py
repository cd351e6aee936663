"""Irreducibility over C: the Burnside span-closure decision procedure,
invariant-line witnesses, an exhaustive small-dimension search used to
cross-check Burnside, closed-form predicates, and the audit that compares
predicates with the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import (
    ONE,
    ZERO,
    GaussianRational,
    QuadExt,
    as_gaussian,
    scalar_to_json,
    sqrt_quad,
)
from .catalog import Representation, SB2_PARAMS, sb2_family, tw3_condition
from .errors import ConstraintViolation, SingularGeneratorImage, SingularTau, SizeMismatch
from .linalg import (
    AllVectorsEigen,
    EchelonBasis,
    Matrix,
    eigen_2x2,
    fixes_line,
    nullspace,
    span_closure,
)
from .presentations import SIGMA, TAU
from ._modp import modular_span_dim

IRREDUCIBLE, REDUCIBLE = "Irreducible", "Reducible"
DEFAULT_SAMPLE_POINTS = (GaussianRational(2), GaussianRational(3), GaussianRational(1, 1))


@dataclass
class Verdict:
    status: str
    witness: tuple | None = None
    oracle: str = "burnside"
    notes: list = field(default_factory=list)
    algebra_dim: int | None = None

    @property
    def irreducible(self) -> bool:
        return self.status == IRREDUCIBLE

    def to_json(self):
        out = {
            "status": self.status,
            "witness": None if self.witness is None else [scalar_to_json(_plain(x))
                                                          for x in self.witness],
            "oracle": self.oracle,
            "notes": [n.to_json() if isinstance(n, DiscrepancyRecord) else n for n in self.notes],
        }
        if self.algebra_dim is not None:
            out["algebra_dim"] = self.algebra_dim
        return out


@dataclass
class DiscrepancyRecord:
    predicate_name: str
    predicate_verdict: str
    oracle_verdict: str
    params: dict
    family: str = ""
    n: int | None = None
    note: str = ""

    def to_json(self):
        return {
            "predicate_name": self.predicate_name,
            "predicate_verdict": self.predicate_verdict,
            "oracle_verdict": self.oracle_verdict,
            "family": self.family,
            "n": self.n,
            "params": {k: _param_json(v) for k, v in self.params.items()},
            "note": self.note,
        }


def _param_json(v):
    return v if isinstance(v, (int, str)) else scalar_to_json(v)


def _plain(x):
    if isinstance(x, QuadExt) and not x.coeff:
        return x.base
    return x


def verify_witness(mats: Sequence[Matrix], v) -> bool:
    """True when ``v`` is nonzero and spans a line fixed by every matrix."""
    return any(v) and all(fixes_line(M, v) for M in mats)


def _field_images(rep_or_mats, at=None):
    """Generator matrices over a field; Laurent reps need ``at``."""
    if isinstance(rep_or_mats, Representation):
        rep = rep_or_mats
        if rep.ring == "laurent":
            rep = rep.evaluate(at)
        return rep.matrices()
    mats = list(rep_or_mats)
    if mats and mats[0].ring == "laurent":
        mats = [M.evaluate(as_gaussian(at)) for M in mats]
    return mats


# ---------------------------------------------------------------------------
# Burnside oracle
# ---------------------------------------------------------------------------


def algebra_verdict(mats: Sequence[Matrix], witness: bool = True) -> Verdict:
    """Burnside verdict for a list of matrices over a field.

    A full algebra dimension modulo a large prime is accepted as proof of
    irreducibility; everything else is decided by exact span closure.
    """
    m = mats[0].size
    if mats[0].ring == "gaussian" and modular_span_dim(mats) == m * m:
        return Verdict(IRREDUCIBLE, oracle="burnside", algebra_dim=m * m)
    dim = span_closure(mats)
    if dim == m * m:
        return Verdict(IRREDUCIBLE, oracle="burnside", algebra_dim=dim)
    v = _search_line(mats) if witness else None
    return Verdict(REDUCIBLE, witness=v, oracle="burnside", algebra_dim=dim)


def burnside_verdict(rep, at=None, sample_points=DEFAULT_SAMPLE_POINTS,
                     witness: bool = True) -> Verdict:
    """Irreducible iff the images generate the full matrix algebra.

    Laurent representations are specialised at ``at`` when given, otherwise
    at each sample point in turn.  Irreducibility at one point implies
    generic irreducibility; reducibility at every point is reported only as
    reducibility at the tested points.
    """
    ring = rep.ring if isinstance(rep, Representation) else rep[0].ring
    if ring != "laurent":
        return algebra_verdict(_field_images(rep), witness)
    points = [as_gaussian(at)] if at is not None else [as_gaussian(p) for p in sample_points]
    tested, skipped = [], []
    last = None
    for t0 in points:
        try:
            mats = _field_images(rep, t0)
        except (SingularGeneratorImage, ZeroDivisionError):
            skipped.append(str(t0))
            continue
        last = algebra_verdict(mats, witness)
        tested.append(str(t0))
        if last.irreducible:
            note = f"irreducible at t = {t0}"
            if at is None:
                note += ", hence irreducible for generic t"
            last.notes.append(note)
            break
    if last is None:
        raise SingularGeneratorImage("no sample point gives invertible images")
    if not last.irreducible:
        last.notes.append("reducible at tested points t = " + ", ".join(tested))
    if skipped:
        last.notes.append("skipped singular points t = " + ", ".join(skipped))
    return last


def restriction_verdict(rep: Representation, subset: str, at=None) -> Verdict:
    """Burnside verdict on the sigma images or on the tau images alone."""
    kinds = {"sigma_only": SIGMA, "tau_only": TAU}
    if subset not in kinds:
        raise ValueError(f"subset must be one of {sorted(kinds)}")
    mats = [M for g, M in zip(rep.generators, _field_images(rep, at or DEFAULT_SAMPLE_POINTS[0]))
            if g.kind == kinds[subset]]
    if not mats:
        raise ValueError(f"{rep.family} has no {kinds[subset]} generators")
    v = algebra_verdict(mats)
    v.notes.append(f"restricted to {subset}")
    return v


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def common_eigenvector_2x2(S: Matrix, Tm: Matrix):
    """A shared eigen-direction of two 2x2 matrices, or None."""
    return _common_line_2x2([S, Tm])


def _common_line_2x2(mats):
    g = next((M for M in mats if not M.is_scalar()), None)
    if g is None:
        return (ONE, ZERO)
    pairs = eigen_2x2(g)
    if pairs is AllVectorsEigen:
        return (ONE, ZERO)
    for _, v in pairs:
        if all(fixes_line(M, v) for M in mats if M is not g):
            return tuple(_plain(x) for x in v)
    return None


def _special_candidates(m):
    yield tuple(ONE for _ in range(m))
    for i in range(m):
        yield tuple(ONE if j == i else ZERO for j in range(m))


def invariant_line_witness(rep, at=None, max_dim: int = 4):
    """A vector spanning a line fixed by every generator image, or None.

    Tries the all-ones vector, then the standard basis, then a search over
    eigen-directions of one generator (dimension at most ``max_dim``).  A
    ``None`` result is not a proof of irreducibility.
    """
    if isinstance(rep, Representation):
        mats = rep.matrices()
    else:
        mats = list(rep)
    m = mats[0].size
    if mats[0].ring == "laurent":
        one = mats[0].one
        for v in _special_candidates(m):
            v = tuple(one if x else one.zero() for x in v)
            if verify_witness(mats, v):
                return v
        if at is None:
            return None
        mats = _field_images(mats, at)
    if m > max_dim:
        for v in _special_candidates(m):
            if verify_witness(mats, v):
                return v
        return None
    return _search_line(mats)


def _search_line(mats):
    m = mats[0].size
    for v in _special_candidates(m):
        if verify_witness(mats, v):
            return v
    if m > 4 or mats[0].ring != "gaussian":
        return None
    return _common_line(mats)


def _common_line(mats):
    """Common eigenvector of Gaussian matrices; complete for m <= 2 and for
    eigenvalues in Q(i) otherwise."""
    m = mats[0].size
    if m == 1:
        return (ONE,)
    if m == 2:
        return _common_line_2x2(mats)
    g = next((M for M in mats if not M.is_scalar()), None)
    if g is None:
        return tuple(ONE if j == 0 else ZERO for j in range(m))
    roots, rest = _rational_roots(g.charpoly())
    linear = [[-r, ONE] for r in roots]
    for f in _chain(linear, lambda: gaussian_factors(rest) if len(rest) > 1 else []):
        if len(f) != 2:
            continue
        basis = max_invariant_subspace(mats, nullspace(poly_at(f, g).rows, m))
        if not basis:
            continue
        if len(basis) == 1:
            return basis[0]
        sub = _restrict(mats, basis)
        w = _common_line(sub)
        if w is not None:
            out = []
            for i in range(m):
                acc = w[0] * basis[0][i]
                for c, b in zip(w[1:], basis[1:]):
                    acc = acc + c * b[i]
                out.append(_plain(acc))
            return tuple(out)
    return None


def _chain(first, later):
    yield from first
    yield from later()


def _rational_roots(coeffs, max_den: int = 10**4):
    """Distinct roots in Q(i) found numerically and confirmed exactly.

    Returns the roots and the exact quotient left after deflating them.
    Roots with large denominators may be missed; the quotient still holds them.
    """
    import numpy as np

    coeffs = [as_gaussian(c) for c in coeffs]
    approx = np.roots([complex(float(c.re), float(c.im)) for c in reversed(coeffs)])
    found = []
    for z in approx:
        r = GaussianRational(Fraction(z.real).limit_denominator(max_den),
                             Fraction(z.imag).limit_denominator(max_den))
        if r in found:
            continue
        quotient, rem = _deflate(coeffs, r)
        if not rem:
            found.append(r)
            coeffs = quotient
            while len(coeffs) > 1:
                quotient, rem = _deflate(coeffs, r)
                if rem:
                    break
                coeffs = quotient
    return found, coeffs


def _deflate(coeffs, r):
    """Divide ``sum coeffs[k] x^k`` by ``x - r``; return quotient and remainder."""
    acc, out = ZERO, []
    for c in reversed(coeffs):
        acc = acc * r + c
        out.append(acc)
    rem = out.pop()
    return list(reversed(out)), rem


def _restrict(mats, basis):
    """Matrices of the action on the span of an invariant RREF ``basis``."""
    pivots = [next(j for j, x in enumerate(b) if x) for b in basis]
    out = []
    for M in mats:
        images = [M.apply(b) for b in basis]
        out.append(Matrix([[images[j][p] for j in range(len(basis))] for p in pivots]))
    return out


# ---------------------------------------------------------------------------
# exhaustive invariant-subspace search for dimension <= 3
# ---------------------------------------------------------------------------


def _to_sympy(x):
    import sympy

    x = as_gaussian(x)
    return (sympy.Rational(int(x.re.numerator), int(x.re.denominator))
            + sympy.I * sympy.Rational(int(x.im.numerator), int(x.im.denominator)))


def _from_sympy(c):
    import sympy

    re, im = sympy.Rational(sympy.re(c)), sympy.Rational(sympy.im(c))
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def gaussian_factors(coeffs) -> list[list]:
    """Monic irreducible factors over Q(i) of ``sum coeffs[k] x^k``,
    each as a coefficient list (constant term first)."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([_to_sympy(c) for c in reversed(coeffs)], x, extension=sympy.I)
    _, factors = poly.factor_list()
    out = []
    for f, _ in factors:
        f = f.monic()
        out.append([_from_sympy(c) for c in reversed(f.all_coeffs())])
    return out


def poly_at(coeffs, g: Matrix) -> Matrix:
    """Evaluate a polynomial at a matrix by Horner's rule."""
    ident = Matrix.identity(g.size)
    acc = ident.scale(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc @ g + ident.scale(c)
    return acc


def max_invariant_subspace(mats, vectors) -> list:
    """Largest subspace of ``span(vectors)`` mapped into itself by all ``mats``,
    as an RREF basis."""
    m = mats[0].size
    if not vectors:
        return []
    ann = EchelonBasis(m)
    for r in nullspace(vectors, m):
        ann.add(r)
    while True:
        rows = ann.basis()
        grew = False
        for M in mats:
            for r in rows:
                rM = tuple(sum((r[k] * M[k, j] for k in range(m) if r[k] and M[k, j]), ZERO)
                           for j in range(m))
                if ann.add(rM):
                    grew = True
        if not grew or ann.dim == m:
            break
    if ann.dim == m:
        return []
    sol = nullspace(ann.basis(), m) if ann.dim else [
        tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m)]
    _, basis = _rref(sol, m)
    return basis


def _rref(vectors, m):
    eb = EchelonBasis(m)
    for v in vectors:
        eb.add(v)
    return eb.dim, eb.basis()


def _proper_invariant(mats):
    """A proper nonzero invariant subspace (RREF basis) containing an
    eigenvector of one generator, ``"commuting"`` when none exists but all
    generators commute with it, or None."""
    m = mats[0].size
    g = next((M for M in mats if not M.is_scalar()), None)
    if g is None:
        return [tuple(ONE if j == 0 else ZERO for j in range(m))]
    for f in gaussian_factors(g.charpoly()):
        basis = max_invariant_subspace(mats, nullspace(poly_at(f, g).rows, m))
        if 0 < len(basis) < m:
            return basis
        if len(basis) == m:
            # g satisfies an irreducible polynomial of degree m: every
            # invariant line is an eigenline of g, and Galois conjugation
            # carries one to all, so a line exists iff everything commutes with g
            if all(M @ g == g @ M for M in mats):
                return "commuting"
            return None
    return None


def exhaustive_verdict(mats: Sequence[Matrix]) -> Verdict:
    """Independent invariant-subspace search for Gaussian matrices of size <= 3."""
    mats = list(mats)
    m = mats[0].size
    if m > 3:
        raise SizeMismatch("exhaustive search is limited to dimension 3")
    if mats[0].ring != "gaussian":
        raise SizeMismatch("exhaustive search expects Gaussian matrices")
    if m == 1:
        return Verdict(IRREDUCIBLE, oracle="exhaustive")
    found = _proper_invariant(mats)
    if found is not None:
        w = found[0] if isinstance(found, list) and len(found) == 1 else None
        note = "generators commute with a generator with irreducible characteristic polynomial" \
            if found == "commuting" else f"invariant subspace of dimension {len(found)}"
        return Verdict(REDUCIBLE, witness=w, oracle="exhaustive", notes=[note])
    if m == 3:
        found = _proper_invariant([M.T for M in mats])
        if found is not None:
            return Verdict(REDUCIBLE, oracle="exhaustive",
                           notes=["invariant plane found through the transposed generators"])
    return Verdict(IRREDUCIBLE, oracle="exhaustive")


# ---------------------------------------------------------------------------
# closed-form predicates
# ---------------------------------------------------------------------------


def _with_witness(status, mats, v, notes=()):
    w = v if v is not None and verify_witness(mats, v) else None
    return Verdict(status, witness=w, oracle="paper_predicate", notes=list(notes))


def sb2_proof_witness(tag: str, params) -> tuple | None:
    """The explicit common eigenvector used for each reducible SB_2 family."""
    tag = tag.removeprefix("sb2_")
    p = {k: as_gaussian(v) for k, v in params.items() if k in SB2_PARAMS.get(tag, ())}
    if tag == "rho4":
        return (ONE, ZERO)
    if tag == "rho2":
        return (ZERO, ONE)
    if tag == "rho1":
        w, x, y, z = p["w"], p["x"], p["y"], p["z"]
        if not y:
            return (ONE, ZERO)
        root = sqrt_quad(w * w + 4 * x * y - 2 * w * z + z * z)
        first = (QuadExt._raw(w - z, ZERO, root.radicand) - root) / (2 * y)
        return (first, QuadExt._raw(ONE, ZERO, root.radicand))
    if tag == "rho3":
        return (ONE, ZERO) if not p["c"] else (ZERO, ONE)
    raise ValueError(f"unknown SB_2 family {tag!r}")


def sb2_paper_predicate(tag: str, params) -> Verdict:
    """The published SB_2 criterion, with the rho3 square root read over both branches."""
    rep = sb2_family(tag, params)
    tag = tag.removeprefix("sb2_")
    mats = rep.matrices()
    if tag != "rho3":
        return _with_witness(REDUCIBLE, mats, sb2_proof_witness(tag, rep.params))
    a, b, c, d = (rep.params[k] for k in "abcd")
    if not c:
        return _with_witness(REDUCIBLE, mats, (ONE, ZERO), ["c = 0"])
    root = sqrt_quad(a * a + 4 * b * c - 2 * a * d + d * d)
    lhs = QuadExt._raw(a - d, ZERO, root.radicand)
    note = "a - d = ±sqrt(a^2 + 4bc - 2ad + d^2) checked on both branches; equivalent to bc = 0"
    if lhs == root or lhs == -root:
        return _with_witness(REDUCIBLE, mats, (ZERO, ONE), [note])
    return Verdict(IRREDUCIBLE, oracle="paper_predicate", notes=[note])


def mu3_predicate(b, c) -> Verdict:
    """Homogeneous mu3 is irreducible iff ``bc != 1`` (n >= 3)."""
    b, c = as_gaussian(b), as_gaussian(c)
    if not b * c:
        raise ConstraintViolation("bc != 0")
    status = IRREDUCIBLE if b * c != 1 else REDUCIBLE
    return Verdict(status, oracle="paper_predicate")


def rho3_local_predicate(b, c, x, y) -> Verdict:
    """Homogeneous local rho3 is irreducible iff ``bc != 1`` or ``x + y/b != 1``."""
    b, c, x, y = (as_gaussian(v) for v in (b, c, x, y))
    if not b:
        raise ConstraintViolation("b != 0")
    if not c:
        raise ConstraintViolation("c != 0")
    if x * x - c * y * y / b == 0:
        raise SingularTau(1, f"tau block [[{x}, {y}], [{c * y / b}, {x}]] is singular")
    status = IRREDUCIBLE if (b * c != 1 or x + y / b != 1) else REDUCIBLE
    return Verdict(status, oracle="paper_predicate")


def tw2_predicate(l1, l2) -> Verdict:
    l1, l2 = as_gaussian(l1), as_gaussian(l2)
    ok = l1 * l1 + l2 * l2 - l1 * l2 != 0
    return Verdict(IRREDUCIBLE if ok else REDUCIBLE, oracle="paper_predicate")


def tw3_predicate(l1, l2, l3) -> Verdict:
    ok = tw3_condition(*(as_gaussian(v) for v in (l1, l2, l3))) != 0
    return Verdict(IRREDUCIBLE if ok else REDUCIBLE, oracle="paper_predicate")


def _always_reducible(rep: Representation) -> Verdict:
    return _with_witness(REDUCIBLE, rep.matrices() if rep.ring != "laurent" else [],
                         tuple(ONE for _ in range(rep.dim)))


def _phi_equivalence(rep: Representation, at=None) -> Verdict:
    if rep.base is None:
        raise ValueError("phi predicate needs the base representation")
    v = burnside_verdict(rep.base, at=at, witness=False)
    return Verdict(v.status, oracle="paper_predicate",
                   notes=[f"verdict of the base {rep.base.family} representation"])


@dataclass(frozen=True)
class Predicate:
    name: str
    families: tuple
    evaluate: Callable


def _p(rep, *names):
    return [rep.params[k] for k in names]


PREDICATES: dict[str, Predicate] = {
    p.name: p
    for p in [
        Predicate("sb2_predicate", ("sb2_rho1", "sb2_rho2", "sb2_rho3", "sb2_rho4"),
                  lambda rep, at=None: sb2_paper_predicate(rep.family, rep.params)),
        Predicate("mu3_predicate", ("mu3",),
                  lambda rep, at=None: mu3_predicate(*_p(rep, "b", "c"))),
        Predicate("rho3_local_predicate", ("local_rho3",),
                  lambda rep, at=None: rho3_local_predicate(*_p(rep, "b", "c", "x", "y"))),
        Predicate("homog_reducible", ("mu1", "mu2", "local_rho1", "local_rho2"),
                  lambda rep, at=None: _always_reducible(rep)),
        Predicate("tw2_predicate", ("tw2", "sb3_ext2"),
                  lambda rep, at=None: tw2_predicate(*_p(rep, "l1", "l2"))),
        Predicate("tw3_predicate", ("tw3", "sb3_ext3"),
                  lambda rep, at=None: tw3_predicate(*_p(rep, "l1", "l2", "l3"))),
        Predicate("phi_equivalence", ("phi",), _phi_equivalence),
    ]
}


def predicates_for(family: str) -> list[str]:
    return [name for name, p in PREDICATES.items() if family in p.families]


def predicate_verdict(rep: Representation, at=None) -> Verdict:
    names = predicates_for(rep.family)
    if not names:
        raise ValueError(f"no closed-form predicate applies to {rep.family}")
    return PREDICATES[names[0]].evaluate(rep, at=at)


def audit(rep: Representation, predicates: Sequence[str] | None = None, at=None,
          oracle: Verdict | None = None) -> list[DiscrepancyRecord]:
    """Compare each predicate with the Burnside oracle; one record per disagreement."""
    names = list(predicates) if predicates is not None else predicates_for(rep.family)
    for name in names:
        if name not in PREDICATES:
            raise ValueError(f"unknown predicate {name!r}")
        if rep.family not in PREDICATES[name].families:
            raise ValueError(f"predicate {name} does not apply to {rep.family}")
    if oracle is None:
        oracle = burnside_verdict(rep, at=at, witness=False)
    records = []
    for name in sorted(names):
        pv = PREDICATES[name].evaluate(rep, at=at)
        if pv.status != oracle.status:
            records.append(DiscrepancyRecord(name, pv.status, oracle.status, dict(rep.params),
                                             rep.family, rep.n, "; ".join(pv.notes)))
    return records
