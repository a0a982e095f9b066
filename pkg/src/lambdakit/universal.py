"""Universal polynomials for products, plethysms, and their γ counterparts.

Four families, all integer polynomials produced by symmetric-function
calculus:

* mult(k): expresses the k-th operation of a product x·y through the
  operations of the factors; variables e1..ek (for x) and f1..fk (for y).
* comp(k, l): expresses the k-th operation of the l-th operation of x;
  variables e1..e_{k·l}.
* gamma_mult(k) and gamma_comp(k, l): the same laws rewritten for the
  γ-operations, in variables g1..gk / h1..hk and g1..g_{k·l}.

Construction goes through power sums rather than brute-force expansion
over formal roots.  For mult(k): the j-th power sum of the product
multiset {ξ_a·η_b} factors as p_j(ξ)·p_j(η); Newton's identities convert
e's to p's and back.  For comp(k, l): the j-th power sum of the multiset
of l-fold subset products equals e_l evaluated at the j-th powers of the
roots, whose power sums are p_{j·m}.  The back-conversion divides by
integers; results are asserted integral, which is the statement that
exterior-power laws have integer coefficients.

Computed polynomials are persisted in a per-key file cache (canonical
text plus a content hash) so expensive instances are paid for once.
"""

from __future__ import annotations

import hashlib
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

from .poly import LaurentPoly, format_poly, parse_poly
from .series import TruncSeries

COMPOSITION_CAP = 9

_KINDS = ("P", "PKL", "Q", "QKL")

ENV_CACHE_DIR = "LAMBDAKIT_CACHE_DIR"


@dataclass(frozen=True)
class UniversalPoly:
    """A universal operation law: its family tag, indices, and polynomial."""

    kind: str
    indices: tuple[int, ...]
    polynomial: LaurentPoly


def power_sums_from_elementary(es, count: int, zero):
    """Newton's identities, e's to p's: returns [p_1, ..., p_count].

    es lists e_1, e_2, ...; indices past the end are treated as zero.
    Elements need +, -, *, and integer scalar multiplication.
    """
    ps: list = []
    for m in range(1, count + 1):
        acc = zero
        for i in range(1, m):
            if i <= len(es):
                term = es[i - 1] * ps[m - i - 1]
                acc = acc + term if i % 2 == 1 else acc - term
        if m <= len(es):
            tail = m * es[m - 1]
            acc = acc + tail if m % 2 == 1 else acc - tail
        ps.append(acc)
    return ps


def elementary_from_power_sums(ps, count: int, zero):
    """Newton's identities, p's to e's: returns [e_1, ..., e_count].

    Divides by m at step m, so elements must support multiplication by
    Fraction; callers working over the integers check integrality after.
    """
    es: list = []
    for m in range(1, count + 1):
        acc = zero
        for i in range(1, m + 1):
            term = ps[i - 1] if i == m else es[m - i - 1] * ps[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        es.append(Fraction(1, m) * acc)
    return es


def _require_integer_coeffs(p: LaurentPoly, what: str) -> LaurentPoly:
    for exps, c in p.terms.items():
        if not isinstance(c, int):
            raise RuntimeError(f"{what} produced non-integer coefficient {c}")
    return p


def universal_mult(k: int) -> UniversalPoly:
    """Product law P for index k: e_k of the pairwise products of two
    groups of k formal roots, written in the elementary symmetric
    functions e1..ek and f1..fk of the groups."""
    if k < 1:
        raise ValueError(f"product law needs index k >= 1, got {k}")
    variables = tuple(f"e{i}" for i in range(1, k + 1)) + tuple(
        f"f{i}" for i in range(1, k + 1)
    )
    zero = LaurentPoly.zero(variables)
    es = [LaurentPoly.var(variables, f"e{i}") for i in range(1, k + 1)]
    fs = [LaurentPoly.var(variables, f"f{i}") for i in range(1, k + 1)]
    pe = power_sums_from_elementary(es, k, zero)
    pf = power_sums_from_elementary(fs, k, zero)
    prod_ps = [pe[j] * pf[j] for j in range(k)]
    poly = elementary_from_power_sums(prod_ps, k, zero)[k - 1]
    _require_integer_coeffs(poly, f"product law {k}")
    e_weights = {f"e{i}": i for i in range(1, k + 1)}
    e_weights.update({f"f{i}": 0 for i in range(1, k + 1)})
    f_weights = {f"e{i}": 0 for i in range(1, k + 1)}
    f_weights.update({f"f{i}": i for i in range(1, k + 1)})
    if not (poly.is_isobaric(e_weights, k) and poly.is_isobaric(f_weights, k)):
        raise RuntimeError(f"product law {k} is not bihomogeneous of weight {k}")
    return UniversalPoly("P", (k,), poly)


def universal_comp(k: int, l: int) -> UniversalPoly:
    """Composition law P for indices (k, l): e_k of the products over
    l-element subsets of k·l formal roots, in e1..e_{k·l}."""
    _check_comp_indices(k, l)
    n = k * l
    variables = tuple(f"e{i}" for i in range(1, n + 1))
    zero = LaurentPoly.zero(variables)
    es = [LaurentPoly.var(variables, f"e{i}") for i in range(1, n + 1)]
    ps = power_sums_from_elementary(es, n, zero)
    # p_j of the subset products is e_l at the j-th powers of the roots
    qs = []
    for j in range(1, k + 1):
        powered = [ps[j * m - 1] for m in range(1, l + 1)]
        qs.append(elementary_from_power_sums(powered, l, zero)[l - 1])
    poly = elementary_from_power_sums(qs, k, zero)[k - 1]
    _require_integer_coeffs(poly, f"composition law ({k},{l})")
    weights = {f"e{i}": i for i in range(1, n + 1)}
    if not poly.is_isobaric(weights, n):
        raise RuntimeError(f"composition law ({k},{l}) is not isobaric of weight {n}")
    return UniversalPoly("PKL", (k, l), poly)


def _check_comp_indices(k: int, l: int) -> None:
    if k < 1 or l < 1:
        raise ValueError(f"composition law needs k, l >= 1, got ({k}, {l})")
    if k * l > COMPOSITION_CAP:
        raise ValueError(
            f"composition law ({k}, {l}) has index product {k * l}, "
            f"above the supported cap {COMPOSITION_CAP}"
        )


def _lambda_in_gamma(i: int, variables: tuple[str, ...], prefix: str) -> LaurentPoly:
    # inverse of gamma^i = sum_j C(i-1, i-j) lambda^j
    acc = LaurentPoly.zero(variables)
    for m in range(1, i + 1):
        c = comb(i - 1, i - m)
        if c:
            sign = 1 if (i - m) % 2 == 0 else -1
            acc = acc + sign * c * LaurentPoly.var(variables, f"{prefix}{m}")
    return acc


def universal_gamma_mult(k: int) -> UniversalPoly:
    """Product law for the γ-operations, in g1..gk and h1..hk."""
    if k < 1:
        raise ValueError(f"product law needs index k >= 1, got {k}")
    evars = tuple(f"e{i}" for i in range(1, k + 1)) + tuple(
        f"f{i}" for i in range(1, k + 1)
    )
    acc = LaurentPoly.zero(evars)
    for j in range(1, k + 1):
        c = comb(k - 1, k - j)
        if c:
            acc = acc + c * universal_mult(j).polynomial.extend(evars)
    gvars = tuple(f"g{i}" for i in range(1, k + 1)) + tuple(
        f"h{i}" for i in range(1, k + 1)
    )
    values: dict[str, LaurentPoly] = {}
    for i in range(1, k + 1):
        values[f"e{i}"] = _lambda_in_gamma(i, gvars, "g")
        values[f"f{i}"] = _lambda_in_gamma(i, gvars, "h")
    poly = acc.substitute(values, gvars)
    _require_integer_coeffs(poly, f"gamma product law {k}")
    return UniversalPoly("Q", (k,), poly)


def universal_gamma_comp(k: int, l: int) -> UniversalPoly:
    """Composition law for the γ-operations, in g1..g_{k·l}.

    Works in the free setting on one generator, where e_i stands for the
    i-th λ-operation of the generator: the l-th γ-operation is the
    positive combination u = Σ C(l-1, l-i)·e_i, its λ-series is the
    product of the λ-series of the e_i (each given by composition laws),
    and the k-th γ of u is again a binomial combination.  Finally λ's
    are rewritten in γ's.
    """
    _check_comp_indices(k, l)
    n = k * l
    evars = tuple(f"e{i}" for i in range(1, n + 1))
    zero = LaurentPoly.zero(evars)
    one = LaurentPoly.const(evars, 1)
    lambda_series = TruncSeries(k, [one] + [zero] * k, ring="upoly")
    for i in range(1, l + 1):
        c = comb(l - 1, l - i)
        if not c:
            continue
        coeffs = [one]
        for a in range(1, k + 1):
            coeffs.append(universal_comp(a, i).polynomial.extend(evars))
        factor = TruncSeries(k, coeffs, ring="upoly")
        lambda_series = lambda_series * factor.pow_int(c)
    acc = zero
    for j in range(1, k + 1):
        c = comb(k - 1, k - j)
        if c:
            acc = acc + c * lambda_series.coeffs[j]
    gvars = tuple(f"g{i}" for i in range(1, n + 1))
    values = {f"e{i}": _lambda_in_gamma(i, gvars, "g") for i in range(1, n + 1)}
    poly = acc.substitute(values, gvars)
    _require_integer_coeffs(poly, f"gamma composition law ({k},{l})")
    return UniversalPoly("QKL", (k, l), poly)


_BUILDERS = {
    "P": lambda idx: universal_mult(*idx),
    "PKL": lambda idx: universal_comp(*idx),
    "Q": lambda idx: universal_gamma_mult(*idx),
    "QKL": lambda idx: universal_gamma_comp(*idx),
}

_ARITY = {"P": 1, "PKL": 2, "Q": 1, "QKL": 2}

_MEMO: dict[tuple, UniversalPoly] = {}


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lambdakit"


def _cache_file(cache_dir: Path, kind: str, indices: tuple[int, ...]) -> Path:
    return cache_dir / ("_".join([kind] + [str(i) for i in indices]) + ".poly")


def _render_cache_entry(up: UniversalPoly) -> str:
    body = format_poly(up.polynomial)
    digest = hashlib.sha256(body.encode("ascii")).hexdigest()
    lines = [
        "lambdakit universal polynomial v1",
        f"kind: {up.kind}",
        "indices: " + " ".join(str(i) for i in up.indices),
        "variables: " + " ".join(up.polynomial.variables),
        f"sha256: {digest}",
        body,
    ]
    return "\n".join(lines) + "\n"


def _parse_cache_entry(text: str, kind: str, indices: tuple[int, ...]) -> UniversalPoly | None:
    lines = text.splitlines()
    if len(lines) != 6 or lines[0] != "lambdakit universal polynomial v1":
        return None
    if lines[1] != f"kind: {kind}":
        return None
    if lines[2] != "indices: " + " ".join(str(i) for i in indices):
        return None
    if not lines[3].startswith("variables: "):
        return None
    variables = tuple(lines[3][len("variables: "):].split())
    if not lines[4].startswith("sha256: "):
        return None
    body = lines[5]
    if hashlib.sha256(body.encode("ascii")).hexdigest() != lines[4][len("sha256: "):]:
        return None
    try:
        poly = parse_poly(body, variables)
    except ValueError:
        return None
    if format_poly(poly) != body:
        return None
    return UniversalPoly(kind, indices, poly)


def universal_poly(kind: str, *indices: int, cache_dir: Path | str | None = None) -> UniversalPoly:
    """Cached front end for the four families.

    kind is one of P, PKL, Q, QKL with 1, 2, 1, 2 indices respectively.
    Results are memoized in-process and persisted under the cache
    directory (argument, then the LAMBDAKIT_CACHE_DIR environment
    variable, then ~/.cache/lambdakit).  A stale or corrupted cache file
    is recomputed and rewritten, never trusted.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown universal polynomial kind {kind!r}; expected one of {_KINDS}")
    if len(indices) != _ARITY[kind]:
        raise ValueError(f"kind {kind} takes {_ARITY[kind]} indices, got {len(indices)}")
    if kind in ("PKL", "QKL"):
        _check_comp_indices(*indices)
    elif indices[0] < 1:
        raise ValueError(f"product law needs index k >= 1, got {indices[0]}")

    memo_key = (kind, indices)
    hit = _MEMO.get(memo_key)
    if hit is not None:
        return hit

    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    path = _cache_file(directory, kind, indices)

    if path.exists():
        entry = _parse_cache_entry(path.read_text(encoding="ascii"), kind, indices)
        if entry is not None:
            _MEMO[memo_key] = entry
            return entry

    up = _compute_once(path, kind, indices)
    _MEMO[memo_key] = up
    return up


def _compute_once(path: Path, kind: str, indices: tuple[int, ...]) -> UniversalPoly:
    # one process computes, the rest wait for the file to appear
    lock = path.with_suffix(".lock")
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        os.close(fd)
    except FileExistsError:
        for _ in range(600):
            time.sleep(0.05)
            if path.exists():
                entry = _parse_cache_entry(path.read_text(encoding="ascii"), kind, indices)
                if entry is not None:
                    return entry
            if not lock.exists():
                break
        # stale lock or corrupted result: fall through and compute here
    try:
        up = _BUILDERS[kind](indices)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(_render_cache_entry(up), encoding="ascii")
        os.replace(tmp, path)
        return up
    finally:
        try:
            os.unlink(lock)
        except FileNotFoundError:
            pass
