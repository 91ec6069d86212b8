"""Compact homogeneous spaces described by isotropy-summand data.

A space is a list of summand dimensions d_k, Casimir coefficients b_k and a
table of structural constants [ijk] indexed by unordered multisets {i,j,k}.
From these the invariant scalar curvature of a diagonal metric
(x_1, ..., x_r) is assembled exactly as a signomial:

    scal = 1/2 * sum_k b_k d_k / x_k  -  1/4 * sum_{i,j,k} [ijk] x_k/(x_i x_j)

where the triple sum runs over ordered index triples.  The table stores one
value per unordered multiset, so each entry enters with its orbit size (6
when i, j, k are distinct, 3 when exactly two coincide, 1 when all three
coincide).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .signomial import Monomial, Rat, Signomial

TripleKey = tuple[int, int, int]


def _as_fraction(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"{where}: floats are not exact, pass 'p/q' or an int")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{where}: bad rational {value!r} ({exc})") from None


@dataclass(frozen=True)
class HomogeneousSpace:
    """Summand data (d_k, b_k, [ijk]) for a compact homogeneous space."""

    name: str
    dims: tuple[int, ...]
    b: tuple[Fraction, ...] = ()
    triples: Mapping[TripleKey, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        b = self.b or tuple(Fraction(1) for _ in self.dims)
        object.__setattr__(self, "b", tuple(Fraction(v) for v in b))
        object.__setattr__(
            self,
            "triples",
            {
                tuple(int(i) for i in key): Fraction(v)
                for key, v in self.triples.items()
            },
        )

    @property
    def r(self) -> int:
        return len(self.dims)

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    def validate(self) -> list[str]:
        """Check all type invariants; return a list of violations (empty = ok)."""
        issues: list[str] = []
        if self.r < 1:
            issues.append("space needs at least one summand")
        for k, d in enumerate(self.dims):
            if d <= 0:
                issues.append(f"dims[{k}] = {d} is not a positive integer")
        if len(self.b) != self.r:
            issues.append(f"b has {len(self.b)} entries for {self.r} summands")
        for k, v in enumerate(self.b):
            if v <= 0:
                issues.append(f"b[{k}] = {v} is not positive")
        seen: dict[TripleKey, tuple[TripleKey, Fraction]] = {}
        for key, v in self.triples.items():
            if len(key) != 3:
                issues.append(f"triple key {key} is not an index triple")
                continue
            if any(not 0 <= i < self.r for i in key):
                issues.append(f"triple {key} has an index outside [0, {self.r})")
                continue
            if v < 0:
                issues.append(f"[{key}] = {v} is negative")
            canon = tuple(sorted(key))
            if canon in seen and seen[canon][1] != v:
                other = seen[canon][0]
                issues.append(
                    f"triples {other} and {key} are permutations with different "
                    f"values {seen[canon][1]} != {v}"
                )
            else:
                seen.setdefault(canon, (key, v))
        return issues

    def canonical_triples(self) -> dict[TripleKey, Fraction]:
        """Triple table keyed by sorted multisets; requires a valid space."""
        issues = self.validate()
        if issues:
            raise ValueError("invalid space: " + "; ".join(issues))
        out: dict[TripleKey, Fraction] = {}
        for key, v in self.triples.items():
            if v != 0:
                out[tuple(sorted(key))] = v
        return out

    def scalar_curvature(self) -> Signomial:
        """The invariant scalar curvature as an exact signomial in r variables."""
        r = self.r
        pairs: list[tuple[Fraction, dict[int, Rat]]] = []
        for k in range(r):
            pairs.append((Fraction(self.b[k]) * self.dims[k] / 2, {k: -1}))
        for key, v in self.canonical_triples().items():
            for i, j, k in set(itertools.permutations(key)):
                exps: dict[int, Fraction] = {}
                for idx, delta in ((k, Fraction(1)), (i, Fraction(-1)), (j, Fraction(-1))):
                    exps[idx] = exps.get(idx, Fraction(0)) + delta
                pairs.append((-v / 4, exps))
        return Signomial.from_terms(r, pairs)

    def volume_monomial(self) -> Monomial:
        """prod x_k^{d_k}; the unit-volume slice is where this equals 1."""
        issues = self.validate()
        if issues:
            raise ValueError("invalid space: " + "; ".join(issues))
        return Monomial({k: d for k, d in enumerate(self.dims)})


@dataclass(frozen=True)
class MetricPoint:
    """A diagonal invariant metric: one positive coefficient per summand."""

    x: tuple

    def __post_init__(self):
        coords = tuple(self.x)
        if not coords or any(float(c) <= 0 for c in coords):
            raise ValueError(f"metric coefficients must be positive, got {coords}")
        object.__setattr__(self, "x", coords)


def gradient(f: Signomial) -> list[Signomial]:
    return [f.partial(i) for i in range(f.arity)]


def hessian(f: Signomial) -> list[list[Signomial]]:
    """Symmetric matrix of exact second partials (shared entries across the diagonal)."""
    grads = gradient(f)
    h: list[list[Signomial]] = [[None] * f.arity for _ in range(f.arity)]  # type: ignore[list-item]
    for i in range(f.arity):
        for j in range(i, f.arity):
            h[i][j] = grads[i].partial(j)
            h[j][i] = h[i][j]
    return h


# -- structured-text space files ------------------------------------------------


def space_from_dict(data: Mapping, where: str = "space") -> HomogeneousSpace:
    if not isinstance(data, Mapping):
        raise ValueError(f"{where}: expected an object, got {type(data).__name__}")
    unknown = set(data) - {"name", "dims", "b", "triples"}
    if unknown:
        raise ValueError(f"{where}: unknown keys {sorted(unknown)}")
    name = data.get("name", "custom")
    dims = data.get("dims")
    if not isinstance(dims, Sequence) or not dims:
        raise ValueError(f"{where}.dims: expected a nonempty list of integers")
    dims = tuple(int(d) for d in dims)
    b_raw = data.get("b")
    if b_raw is None:
        b = tuple(Fraction(1) for _ in dims)
    else:
        b = tuple(_as_fraction(v, f"{where}.b[{i}]") for i, v in enumerate(b_raw))
    triples: dict[TripleKey, Fraction] = {}
    for t, entry in enumerate(data.get("triples", [])):
        loc = f"{where}.triples[{t}]"
        if not isinstance(entry, Mapping) or not {"i", "j", "k", "value"} <= set(entry):
            raise ValueError(f"{loc}: expected an object with keys i, j, k, value")
        key = (int(entry["i"]), int(entry["j"]), int(entry["k"]))
        triples[key] = _as_fraction(entry["value"], f"{loc}.value")
    return HomogeneousSpace(name=str(name), dims=dims, b=b, triples=triples)


def space_to_dict(space: HomogeneousSpace) -> dict:
    return {
        "name": space.name,
        "dims": list(space.dims),
        "b": [str(v) for v in space.b],
        "triples": [
            {"i": i, "j": j, "k": k, "value": str(v)}
            for (i, j, k), v in sorted(space.triples.items())
        ],
    }


def load_space(path) -> HomogeneousSpace:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return space_from_dict(data, where=str(path))
