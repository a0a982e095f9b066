"""Plain-text ring descriptions for the command line tools.

A ring spec is a line-oriented file, one ``key: value`` pair per line,
with ``#`` comments and blank lines ignored:

    kind: group-ring | truncated-polynomial | integers
    name: R(Z/3)            # optional display name
    free: 1                 # group-ring: free rank (default 0)
    torsion: 2, 4           # group-ring: cyclic orders (default none)
    variable: h             # truncated-polynomial: generator name
    power: 2                # truncated-polynomial: variable^power = 0
    sample: 1 + s1          # extra verification sample (repeatable)
    lambda 2 of s1: 0       # declared operation value (repeatable)

Relations travel with the kind: each torsion order d says the matching
generator satisfies s^d = 1, and the power line says variable^power = 0,
so the parser never has to understand free-form relations.  Elements are
written in the usual polynomial text (free generators t1, t2, ...,
torsion generators s1, s2, ...).

Declared lambda values replace the structural operation on the exact
element they name.  A declaration at odds with the ring's own operation
is precisely how a corrupted spec is written down; verification then
fails and reports a witness.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gamma import (
    FilteredAlgebra,
    rational_group_algebra,
    truncated_polynomial_algebra,
)
from .lambdaring import LambdaRingSpec, TruncatedPolynomialRing, integers_spec
from .poly import LaurentPoly, parse_poly
from .reprings import AbelianGroup, GroupRing

__all__ = [
    "RingSpecError",
    "RingDescription",
    "parse_ring_spec",
    "load_ring_spec",
    "description_algebra",
    "seeded_samples",
]

KINDS = ("integers", "group-ring", "truncated-polynomial")


class RingSpecError(ValueError):
    """Parse failure with a 1-based position in the spec text."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class RingDescription:
    """A parsed ring spec: the verification contract plus its carrier."""

    kind: str
    name: str
    spec: LambdaRingSpec
    samples: list
    ring: object | None


# ---------------------------------------------------------------------------
# reading the text


def _split_line(line_no: int, raw: str) -> tuple[int, int, str, str] | None:
    body = raw.split("#", 1)[0].rstrip()
    if not body.strip():
        return None
    if ":" not in body:
        raise RingSpecError(line_no, 1, f"expected 'key: value', got {body.strip()!r}")
    key, value = body.split(":", 1)
    key_col = 1 + len(key) - len(key.lstrip())
    value_col = len(key) + 2 + (len(value) - len(value.lstrip()))
    stripped = value.strip()
    if not stripped:
        raise RingSpecError(line_no, value_col, f"empty value for {key.strip()!r}")
    return key_col, value_col, key.strip(), stripped


def _int_value(line_no: int, col: int, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise RingSpecError(line_no, col, f"{key} needs an integer, got {value!r}") from None


def parse_ring_spec(text: str) -> RingDescription:
    kind = None
    kind_line = 0
    name = None
    free = 0
    torsion: tuple[int, ...] = ()
    variable = "h"
    power = None
    sample_rows: list[tuple[int, int, str]] = []
    override_rows: list[tuple[int, int, int, str, str]] = []
    kind_bound: dict[str, tuple[int, int]] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        parsed = _split_line(line_no, raw)
        if parsed is None:
            continue
        key_col, value_col, key, value = parsed
        if key == "kind":
            if kind is not None:
                raise RingSpecError(line_no, key_col, "kind declared twice")
            if value not in KINDS:
                raise RingSpecError(
                    line_no, value_col,
                    f"unknown kind {value!r}; expected one of {', '.join(KINDS)}")
            kind, kind_line = value, line_no
        elif key == "name":
            name = value
        elif key == "free":
            free = _int_value(line_no, value_col, "free", value)
            if free < 0:
                raise RingSpecError(line_no, value_col, "free rank cannot be negative")
            kind_bound[key] = (line_no, key_col)
        elif key == "torsion":
            parts = [p.strip() for p in value.split(",") if p.strip()]
            orders = tuple(_int_value(line_no, value_col, "torsion", p) for p in parts)
            if any(d < 2 for d in orders):
                raise RingSpecError(line_no, value_col, "torsion orders must be at least 2")
            torsion = orders
            kind_bound[key] = (line_no, key_col)
        elif key == "variable":
            if not value.isidentifier():
                raise RingSpecError(line_no, value_col, f"bad variable name {value!r}")
            variable = value
            kind_bound[key] = (line_no, key_col)
        elif key == "power":
            power = _int_value(line_no, value_col, "power", value)
            if power < 1:
                raise RingSpecError(line_no, value_col, "power must be at least 1")
            kind_bound[key] = (line_no, key_col)
        elif key == "sample":
            sample_rows.append((line_no, value_col, value))
        elif key.startswith("lambda"):
            words = key.split()
            if len(words) < 4 or words[0] != "lambda" or words[2] != "of":
                raise RingSpecError(
                    line_no, key_col,
                    f"expected 'lambda K of ELEMENT', got {key!r}")
            k = _int_value(line_no, key_col, "lambda index", words[1])
            if k < 0:
                raise RingSpecError(line_no, key_col, "lambda index cannot be negative")
            override_rows.append((line_no, key_col, k, " ".join(words[3:]), value))
        else:
            raise RingSpecError(line_no, key_col, f"unknown key {key!r}")

    if kind is None:
        raise RingSpecError(1, 1, "ring spec never declares its kind")
    allowed = {"integers": (), "group-ring": ("free", "torsion"),
               "truncated-polynomial": ("variable", "power")}[kind]
    for key, (line_no, key_col) in kind_bound.items():
        if key not in allowed:
            raise RingSpecError(line_no, key_col,
                                f"{key!r} does not apply to kind {kind!r}")
    if kind == "truncated-polynomial" and power is None:
        raise RingSpecError(kind_line, 1, "truncated-polynomial needs a power line")

    return _build(kind, name, free, torsion, variable, power,
                  sample_rows, override_rows)


def load_ring_spec(path) -> RingDescription:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_ring_spec(handle.read())


# ---------------------------------------------------------------------------
# building the carrier


def _build(kind, name, free, torsion, variable, power,
           sample_rows, override_rows) -> RingDescription:
    if kind == "integers":
        ring = None
        base = integers_spec()
        variables: tuple[str, ...] = ()
        default_samples: list = [-2, -1, 0, 1, 2, 3]
    elif kind == "group-ring":
        group = AbelianGroup(free, torsion)
        ring = GroupRing(group, name=name or f"Z[{group!r}]")
        base = ring.spec()
        variables = tuple(group.generator_name(i)
                          for i in range(free + len(torsion)))
        default_samples = _group_default_samples(ring)
    else:
        ring = TruncatedPolynomialRing(variable, power)
        base = ring.spec()
        variables = (variable,)
        h = ring.generator()
        default_samples = [ring.const(0), ring.one, h, ring.one + h]

    def element(line_no: int, col: int, text: str):
        if kind == "integers":
            try:
                return int(text)
            except ValueError:
                raise RingSpecError(
                    line_no, col, f"integer sample expected, got {text!r}") from None
        try:
            poly = parse_poly(text, variables)
        except ValueError as exc:
            raise RingSpecError(line_no, col, str(exc)) from None
        return _realize(kind, ring, poly)

    samples = [element(*row) for row in sample_rows]
    overrides = [(k, element(line_no, col, etext), element(line_no, col, vtext))
                 for line_no, col, k, etext, vtext in override_rows]

    spec = base
    if overrides:
        structural = base.lam

        def lam(k, x):
            for ok, oelem, oval in overrides:
                if ok == k and x == oelem:
                    return oval
            return structural(k, x)

        spec = dataclasses.replace(base, lam=lam)
    if name is not None:
        spec = dataclasses.replace(spec, name=name)

    return RingDescription(kind=kind, name=name or spec.name, spec=spec,
                           samples=samples or default_samples, ring=ring)


def _realize(kind: str, ring, poly: LaurentPoly):
    if kind == "group-ring":
        out = ring.const(0)
        for exps, coeff in poly.sorted_terms():
            out = out + ring.monomial(exps, coeff)
        return out
    out = ring.const(0)
    h = ring.generator()
    for exps, coeff in poly.sorted_terms():
        (e,) = exps
        if e < 0:
            raise ValueError(f"negative power of the nilpotent variable {ring.var!r}")
        out = out + coeff * h ** e
    return out


def _group_default_samples(ring: GroupRing) -> list:
    group = ring.group
    out = [ring.const(0), ring.one]
    if group.free_rank == 0 and len(group.elements()) <= 16:
        basis = ring.basis_elements()
        out.extend(b for b in basis if b != ring.one)
        out.append(sum(basis, ring.const(0)))
        return out
    gens = [ring.generator(i) for i in range(group.free_rank + len(group.torsion))]
    out.extend(gens)
    out.extend(g ** -1 for g in gens[:group.free_rank])
    out.append(sum(gens, ring.const(0)))
    return out


# ---------------------------------------------------------------------------
# derived carriers and seeded sampling


def description_algebra(desc: RingDescription) -> FilteredAlgebra:
    """Finite-dimensional rational carrier of the description, for
    filtration and cohomology commands."""
    if desc.kind == "group-ring":
        if desc.ring.group.free_rank:
            raise ValueError(
                "no finite-dimensional rational carrier: the character "
                "lattice has positive free rank")
        return rational_group_algebra(desc.ring, name=desc.name)
    if desc.kind == "truncated-polynomial":
        return truncated_polynomial_algebra(desc.ring)
    return rational_group_algebra(GroupRing(AbelianGroup(0, ()), name="Z"))


def seeded_samples(desc: RingDescription, rng: random.Random, count: int) -> list:
    """Reproducible pseudo-random elements of the described ring."""
    out = []
    for _ in range(count):
        if desc.kind == "integers":
            out.append(rng.randint(-6, 6))
        elif desc.kind == "group-ring":
            group = desc.ring.group
            acc = desc.ring.const(0)
            for _ in range(rng.randint(1, 3)):
                exps = tuple(rng.randint(-2, 2) for _ in range(group.free_rank)) \
                    + tuple(rng.randint(0, d - 1) for d in group.torsion)
                acc = acc + desc.ring.monomial(exps, rng.randint(-3, 3))
            out.append(acc)
        else:
            h = desc.ring.generator()
            acc = desc.ring.const(rng.randint(-3, 3))
            for e in range(1, desc.ring.power):
                acc = acc + rng.randint(-3, 3) * h ** e
            out.append(acc)
    return out
