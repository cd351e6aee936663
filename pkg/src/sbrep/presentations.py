"""Presentations of the braid group B_n and the singular braid group SB_n,
and exact checking of generator assignments against them.

Relation families are numbered as in the standard presentation:

1. ``s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}``
2. ``s_i s_j = s_j s_i`` for ``|i - j| >= 2``
3. ``t_i t_j = t_j t_i`` for ``|i - j| >= 2``
4. ``t_i s_j = s_j t_i`` for ``|i - j| >= 2``
5. ``t_i s_i = s_i t_i``
6. ``s_i s_{i+1} t_i = t_{i+1} s_i s_{i+1}``
7. ``s_{i+1} s_i t_{i+1} = t_i s_{i+1} s_i``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import (
    BadStrandCount,
    MissingGenerator,
    SingularGeneratorImage,
    SizeMismatch,
)
from .linalg import Matrix, is_invertible, mat_inverse

SIGMA, TAU = "sigma", "tau"


@dataclass(frozen=True, order=True)
class Gen:
    """A generator letter ``sigma_i^{+-1}`` or ``tau_i^{+-1}``."""

    kind: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in (SIGMA, TAU):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.index < 1:
            raise ValueError("generator indices start at 1")

    def inverse(self) -> "Gen":
        return Gen(self.kind, self.index, -self.sign)

    def positive(self) -> "Gen":
        return Gen(self.kind, self.index, 1)

    @property
    def name(self) -> str:
        base = ("s" if self.kind == SIGMA else "t") + str(self.index)
        return base if self.sign == 1 else base + "^-1"

    @classmethod
    def parse(cls, name: str) -> "Gen":
        name = name.strip()
        sign = 1
        if name.endswith("^-1"):
            sign, name = -1, name[:-3]
        kinds = {"s": SIGMA, "sigma": SIGMA, "t": TAU, "tau": TAU}
        head = name.rstrip("0123456789").rstrip("_")
        digits = name[len(name.rstrip("0123456789")):]
        if head not in kinds or not digits:
            raise ValueError(f"cannot parse generator name {name!r}")
        return cls(kinds[head], int(digits), sign)

    def __str__(self):
        return self.name


def sigma(i: int, sign: int = 1) -> Gen:
    return Gen(SIGMA, i, sign)


def tau(i: int, sign: int = 1) -> Gen:
    return Gen(TAU, i, sign)


Word = tuple  # tuple[Gen, ...]; the empty word is the identity


@dataclass(frozen=True)
class Relation:
    left: Word
    right: Word
    family: int
    indices: tuple

    @property
    def label(self) -> str:
        idx = ",".join(str(i) for i in self.indices)
        return f"({self.family})[{idx}]"

    def __str__(self):
        lhs = " ".join(g.name for g in self.left) or "1"
        rhs = " ".join(g.name for g in self.right) or "1"
        return f"{lhs} = {rhs}"


@dataclass(frozen=True)
class Presentation:
    n: int
    group: str
    generators: tuple
    relations: tuple = field(default_factory=tuple)

    def count_by_family(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for r in self.relations:
            counts[r.family] = counts.get(r.family, 0) + 1
        return counts


def _check_n(n):
    if not isinstance(n, int) or n < 2:
        raise BadStrandCount(f"strand count must be an integer >= 2, got {n!r}")


def _braid_relations(n):
    rels = []
    for i in range(1, n - 1):
        s, s1 = sigma(i), sigma(i + 1)
        rels.append(Relation((s, s1, s), (s1, s, s1), 1, (i,)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(Relation((sigma(i), sigma(j)), (sigma(j), sigma(i)), 2, (i, j)))
    return rels


@lru_cache(maxsize=None)
def bn_presentation(n: int) -> Presentation:
    """Artin presentation of B_n."""
    _check_n(n)
    gens = tuple(sigma(i) for i in range(1, n))
    return Presentation(n, "bn", gens, tuple(_braid_relations(n)))


@lru_cache(maxsize=None)
def sbn_presentation(n: int) -> Presentation:
    """Presentation of SB_n: the B_n relations plus families (3)-(7)."""
    _check_n(n)
    rels = _braid_relations(n)
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(Relation((tau(i), tau(j)), (tau(j), tau(i)), 3, (i, j)))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) >= 2:
                rels.append(Relation((tau(i), sigma(j)), (sigma(j), tau(i)), 4, (i, j)))
    for i in range(1, n):
        rels.append(Relation((tau(i), sigma(i)), (sigma(i), tau(i)), 5, (i,)))
    for i in range(1, n - 1):
        rels.append(Relation((sigma(i), sigma(i + 1), tau(i)),
                             (tau(i + 1), sigma(i), sigma(i + 1)), 6, (i,)))
    for i in range(1, n - 1):
        rels.append(Relation((sigma(i + 1), sigma(i), tau(i + 1)),
                             (tau(i), sigma(i + 1), sigma(i)), 7, (i,)))
    rels.sort(key=lambda r: (r.family, r.indices))
    gens = tuple(sigma(i) for i in range(1, n)) + tuple(tau(i) for i in range(1, n))
    return Presentation(n, "sbn", gens, tuple(rels))


def presentation(group: str, n: int) -> Presentation:
    if group == "bn":
        return bn_presentation(n)
    if group == "sbn":
        return sbn_presentation(n)
    raise ValueError(f"unknown group {group!r}; expected 'bn' or 'sbn'")


@dataclass(frozen=True)
class Violation:
    relation: Relation
    residual: Matrix

    @property
    def family(self) -> int:
        return self.relation.family

    @property
    def label(self) -> str:
        return self.relation.label

    def to_json(self):
        out = {"family": self.family, "i": self.relation.indices[0]}
        if len(self.relation.indices) > 1:
            out["j"] = self.relation.indices[1]
        out["relation"] = str(self.relation)
        out["residual"] = self.residual.to_json()
        return out


def evaluate_word(word: Word, images: Mapping[Gen, Matrix], inverses=None) -> Matrix:
    """Product of the images of the letters of ``word``, left to right."""
    if inverses is None:
        inverses = {}
    mats = []
    for g in word:
        if g.sign == 1:
            if g not in images:
                raise MissingGenerator(g.name)
            mats.append(images[g])
        else:
            pos = g.positive()
            if pos not in images:
                raise MissingGenerator(pos.name)
            if pos not in inverses:
                inverses[pos] = mat_inverse(images[pos])
            mats.append(inverses[pos])
    if not mats:
        some = next(iter(images.values()))
        return Matrix.identity(some.size, some.ring, like=some.zero)
    out = mats[0]
    for M in mats[1:]:
        out = out @ M
    return out


def check_assignment(assignment: Mapping[Gen, Matrix], pres: Presentation) -> None:
    """Raise if generators are missing, sizes disagree or an image is singular."""
    missing = [g.name for g in pres.generators if g not in assignment]
    if missing:
        raise MissingGenerator(", ".join(missing))
    mats = [assignment[g] for g in pres.generators]
    size, ring = mats[0].size, mats[0].ring
    for g in pres.generators:
        M = assignment[g]
        if M.size != size or M.ring != ring:
            raise SizeMismatch(f"image of {g.name} does not match the others in size or ring")
        if not is_invertible(M):
            raise SingularGeneratorImage(f"image of {g.name} is not invertible")


def verify_rep(assignment: Mapping[Gen, Matrix], pres: Presentation) -> list[Violation]:
    """Check every relation of ``pres`` exactly; return the failures in order."""
    check_assignment(assignment, pres)
    out = []
    for rel in pres.relations:
        left = evaluate_word(rel.left, assignment)
        right = evaluate_word(rel.right, assignment)
        if left != right:
            out.append(Violation(rel, left - right))
    return out
