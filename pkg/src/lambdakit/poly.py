"""Sparse multivariate Laurent polynomials with exact coefficients.

A polynomial carries an ordered tuple of variable names and a dictionary
mapping exponent vectors (tuples of ints, one slot per variable, negative
exponents allowed) to nonzero coefficients.  Coefficients are Python ints,
promoted to Fraction only when a rational actually appears, so arithmetic is
exact at every scale.  The zero polynomial is the empty dictionary.

The canonical text form lists terms in descending graded-lex order: higher
total degree first, ties broken by lexicographic comparison of exponent
vectors under the declared variable order.  Terms are joined by " + " or
" - ", unit coefficients and unit exponents are elided, and variables with
exponent zero are dropped, e.g. "e1^2*f2 + e2*f1^2 - 2*e2*f2".
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _normalize_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Immutable-by-convention sparse Laurent polynomial."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Coeff] | None = None):
        vs = tuple(variables)
        seen = set()
        for v in vs:
            if not _VAR_RE.fullmatch(v):
                raise ValueError(f"invalid variable name {v!r}")
            if v in seen:
                raise ValueError(f"duplicate variable name {v!r}")
            seen.add(v)
        self.variables = vs
        clean: dict[tuple, Coeff] = {}
        if terms:
            for exps, c in terms.items():
                e = tuple(exps)
                if len(e) != len(vs):
                    raise ValueError(
                        f"exponent vector {e} has length {len(e)}, expected {len(vs)}"
                    )
                c = _normalize_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    clean[e] = _normalize_coeff(clean.get(e, 0) + c) if e in clean else c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "LaurentPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Iterable[str], c: Coeff) -> "LaurentPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): c} if c else {})

    @classmethod
    def var(cls, variables: Iterable[str], name: str, exp: int = 1) -> "LaurentPoly":
        vs = tuple(variables)
        if name not in vs:
            raise ValueError(f"unknown variable {name!r}; declared variables are {vs}")
        e = [0] * len(vs)
        e[vs.index(name)] = exp
        return cls(vs, {tuple(e): 1})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Coeff:
        """Coefficient of the constant monomial (0 if absent)."""
        return self.terms.get((0,) * len(self.variables), 0)

    def total_degree(self) -> int:
        """Max over terms of the exponent sum; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def weight(self, weights: Mapping[str, int]) -> int:
        """Max over terms of the weighted exponent sum."""
        if not self.terms:
            return 0
        idx = [weights.get(v, 0) for v in self.variables]
        return max(sum(w * x for w, x in zip(idx, e)) for e in self.terms)

    def is_isobaric(self, weights: Mapping[str, int], w: int) -> bool:
        idx = [weights.get(v, 0) for v in self.variables]
        return all(sum(a * x for a, x in zip(idx, e)) == w for e in self.terms)

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = _normalize_coeff(terms.get(e, 0) + c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero(self.variables)
            out = LaurentPoly.__new__(LaurentPoly)
            out.variables = self.variables
            out.terms = {e: _normalize_coeff(c * other) for e, c in self.terms.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_compatible(other)
        terms: dict[tuple, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = _normalize_coeff(terms.get(e, 0) + c1 * c2)
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError(f"exponent must be an int, got {type(n).__name__}")
        if n < 0:
            if not self.is_monomial():
                raise ValueError(f"not a unit: cannot invert {self}")
            (e, c) = next(iter(self.terms.items()))
            return LaurentPoly(
                self.variables, {tuple(n * x for x in e): Fraction(c) ** n}
            )
        result = LaurentPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- substitution -------------------------------------------------

    def substitute(self, values: Mapping[str, "LaurentPoly | Coeff"],
                   variables: Iterable[str] | None = None) -> "LaurentPoly":
        """Ring-map substitution: every variable of self must have a value.

        Values may be polynomials (all over one shared variable tuple) or
        scalars.  Negative exponents require the substituted value to be an
        invertible monomial.
        """
        if variables is None:
            tv = None
            for v in values.values():
                if isinstance(v, LaurentPoly):
                    tv = v.variables
                    break
            if tv is None:
                tv = ()
        else:
            tv = tuple(variables)
        lifted: dict[str, LaurentPoly] = {}
        for name in self.variables:
            if name not in values:
                raise ValueError(f"no substitution value for variable {name!r}")
            v = values[name]
            lifted[name] = v if isinstance(v, LaurentPoly) else LaurentPoly.const(tv, v)
            if lifted[name].variables != tv:
                raise ValueError(
                    f"substitution value for {name!r} is over {lifted[name].variables}, "
                    f"expected {tv}"
                )
        acc = LaurentPoly.zero(tv)
        for exps, c in self.terms.items():
            term = LaurentPoly.const(tv, c)
            for name, e in zip(self.variables, exps):
                if e:
                    term = term * (lifted[name] ** e)
            acc = acc + term
        return acc

    def rename(self, variables: Iterable[str]) -> "LaurentPoly":
        """Same terms over a new variable tuple of equal length."""
        vs = tuple(variables)
        if len(vs) != len(self.variables):
            raise ValueError(
                f"cannot rename {len(self.variables)} variables to {len(vs)}"
            )
        return LaurentPoly(vs, self.terms)

    def extend(self, variables: Iterable[str]) -> "LaurentPoly":
        """Re-express over a larger variable tuple containing the current one."""
        vs = tuple(variables)
        pos = []
        for v in self.variables:
            if v not in vs:
                raise ValueError(f"target variables {vs} do not contain {v!r}")
            pos.append(vs.index(v))
        terms = {}
        for exps, c in self.terms.items():
            e = [0] * len(vs)
            for p, x in zip(pos, exps):
                e[p] = x
            terms[tuple(e)] = c
        return LaurentPoly(vs, terms)

    def eval_at(self, assignment: Mapping[str, object], one: object):
        """Evaluate with arbitrary ring elements supporting +, *, ** and
        integer scalar multiples.  `one` is the target ring's unit, used for
        constant terms."""
        total = None
        for exps, c in self.terms.items():
            term = None
            for name, e in zip(self.variables, exps):
                if not e:
                    continue
                base = assignment[name]
                factor = base ** e
                term = factor if term is None else term * factor
            if term is None:
                if one is None:
                    raise ValueError(
                        "constant term requires a unit in the target ring"
                    )
                term = c * one
            else:
                term = c * term if c != 1 else term
            total = term if total is None else total + term
        if total is None:
            raise ValueError("cannot evaluate the zero polynomial without a zero element; use eval_at_with_zero")
        return total

    def eval_at_with_zero(self, assignment: Mapping[str, object], one: object, zero: object):
        if not self.terms:
            return zero
        return self.eval_at(assignment, one)

    # -- canonical text -----------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form; parse_poly inverts this exactly."""
    if not p.terms:
        return "0"
    chunks: list[str] = []
    for i, (exps, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        mag = -c if neg else c
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(p.variables, exps)
            if e != 0
        ]
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if i == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def parse_poly(text: str, variables: Iterable[str]) -> LaurentPoly:
    """Parse the canonical text form (plus benign whitespace variations)."""
    vs = tuple(variables)
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            remainder = text[pos:].strip()
            if not remainder:
                break
            raise ValueError(f"cannot tokenize polynomial text at {remainder[:20]!r}")
        tokens.append(m.group().strip())
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial text")

    result = LaurentPoly.zero(vs)
    i = 0
    n = len(tokens)

    def parse_signed_int(j: int) -> tuple[int, int]:
        sign = 1
        while j < n and tokens[j] in ("+", "-"):
            if tokens[j] == "-":
                sign = -sign
            j += 1
        if j >= n or not re.fullmatch(r"\d+", tokens[j]):
            raise ValueError("expected an integer exponent")
        return sign * int(tokens[j]), j + 1

    while i < n:
        sign = 1
        if tokens[i] in ("+", "-"):
            if tokens[i] == "-":
                sign = -1
            i += 1
        coeff: Coeff = 1
        exps = [0] * len(vs)
        expect_factor = True
        while i < n and (expect_factor or (i < n and tokens[i] == "*")):
            if tokens[i] == "*":
                i += 1
                continue
            tok = tokens[i]
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff = coeff * (Fraction(tok) if "/" in tok else int(tok))
                i += 1
            elif _VAR_RE.fullmatch(tok):
                if tok not in vs:
                    raise ValueError(
                        f"unknown variable {tok!r}; declared variables are {vs}"
                    )
                e = 1
                if i + 1 < n and tokens[i + 1] == "^":
                    e, i2 = parse_signed_int(i + 2)
                    i = i2 - 1
                exps[vs.index(tok)] += e
                i += 1
            else:
                break
            expect_factor = False
            if i < n and tokens[i] == "*":
                i += 1
                expect_factor = True
        if expect_factor:
            raise ValueError(f"dangling operator near token {i} in {text!r}")
        result = result + LaurentPoly(vs, {tuple(exps): sign * coeff})
    return result


def elementary_symmetric(items: list[LaurentPoly], k: int) -> LaurentPoly:
    """e_k of a list of polynomials, by the column DP of the product
    prod_i (1 + items[i] t).  e_0 = 1, e_k = 0 for k > len(items)."""
    if not items:
        raise ValueError("need at least one item to fix the variable tuple")
    vs = items[0].variables
    if k < 0:
        raise ValueError(f"negative index {k}")
    cols = [LaurentPoly.const(vs, 1)] + [LaurentPoly.zero(vs) for _ in range(k)]
    for it in items:
        for j in range(min(k, len(cols) - 1), 0, -1):
            cols[j] = cols[j] + cols[j - 1] * it
    return cols[k]
