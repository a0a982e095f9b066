"""Rewriting block-symmetric polynomials in elementary symmetric functions.

decompose_symmetric takes a Laurent polynomial symmetric within each named
block of variables and returns its unique expression in the elementary
symmetric polynomials of each block, written in fresh variables: block "e"
with 3 variables yields e1, e2, e3.  Symmetry is checked up front (adjacent
transpositions generate the full symmetric group) and a violation reports
the offending swap.

The classical leading-term algorithm handles polynomial inputs.  Laurent
inputs are shifted first: multiply by the full block product to a high
enough power, decompose, then divide by the matching power of the top
elementary symmetric function, which is the only output variable that ever
carries a negative exponent.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .poly import LaurentPoly, elementary_symmetric

_MAX_REDUCTION_STEPS = 200000


def _swapped(p: LaurentPoly, i: int, j: int) -> LaurentPoly:
    terms = {}
    for exps, c in p.terms.items():
        e = list(exps)
        e[i], e[j] = e[j], e[i]
        terms[tuple(e)] = c
    return LaurentPoly(p.variables, terms)


def check_block_symmetry(p: LaurentPoly, blocks: Mapping[str, Sequence[str]]) -> None:
    pos = {v: i for i, v in enumerate(p.variables)}
    for name, vars_ in blocks.items():
        ordered = sorted(vars_, key=pos.__getitem__)
        for a, b in zip(ordered, ordered[1:]):
            if _swapped(p, pos[a], pos[b]) != p:
                raise ValueError(f"not symmetric under swapping {a} and {b}")


def decompose_symmetric(p: LaurentPoly, blocks: Mapping[str, Sequence[str]]) -> LaurentPoly:
    """Express p in elementary symmetric functions of each block.

    blocks maps a block name to the variables it contains; together the
    blocks must partition p's variables.  The result is a LaurentPoly in
    variables name1..nameN per block, in block order.
    """
    pos = {v: i for i, v in enumerate(p.variables)}
    covered: list[str] = []
    for vars_ in blocks.values():
        covered.extend(vars_)
    if sorted(covered) != sorted(p.variables) or len(covered) != len(p.variables):
        raise ValueError(
            f"blocks {sorted(covered)} do not partition the variables {sorted(p.variables)}"
        )
    check_block_symmetry(p, blocks)

    block_list = [
        (name, sorted(vars_, key=pos.__getitem__)) for name, vars_ in blocks.items()
    ]
    evars: list[str] = []
    for name, vars_ in block_list:
        evars.extend(f"{name}{i}" for i in range(1, len(vars_) + 1))
    evars_t = tuple(evars)

    # shift away negative exponents blockwise
    shifts: list[int] = []
    work = p
    for name, vars_ in block_list:
        idxs = [pos[v] for v in vars_]
        m = 0
        for exps in p.terms:
            for i in idxs:
                if exps[i] < 0:
                    m = max(m, -exps[i])
        shifts.append(m)
        if m:
            shift_mono = LaurentPoly(
                p.variables,
                {tuple(m if i in idxs else 0 for i in range(len(p.variables))): 1},
            )
            work = work * shift_mono

    # elementary symmetric polynomials of each block, as root polynomials
    esym: list[list[LaurentPoly]] = []
    for name, vars_ in block_list:
        roots = [LaurentPoly.var(p.variables, v) for v in vars_]
        esym.append([elementary_symmetric(roots, i) for i in range(len(vars_) + 1)])

    result = LaurentPoly.zero(evars_t)
    steps = 0
    while not work.is_zero():
        steps += 1
        if steps > _MAX_REDUCTION_STEPS:
            raise RuntimeError("symmetric reduction did not terminate")
        exps, c = work.sorted_terms()[0]
        e_exps = [0] * len(evars_t)
        subtrahend = LaurentPoly.const(p.variables, c)
        offset = 0
        for bi, (name, vars_) in enumerate(block_list):
            lam = [exps[pos[v]] for v in vars_]
            if any(a < b for a, b in zip(lam, lam[1:])):
                raise RuntimeError(
                    f"leading term not dominant in block {name}; symmetry check missed a case"
                )
            lam.append(0)
            for i in range(len(vars_)):
                a = lam[i] - lam[i + 1]
                if a < 0:
                    raise RuntimeError(f"negative multiplicity in block {name}")
                e_exps[offset + i] = a
                if a:
                    subtrahend = subtrahend * (esym[bi][i + 1] ** a)
            offset += len(vars_)
        work = work - subtrahend
        result = result + LaurentPoly(evars_t, {tuple(e_exps): c})

    # undo the Laurent shift on the top symmetric function of each block
    offset = 0
    for (name, vars_), m in zip(block_list, shifts):
        offset += len(vars_)
        if m:
            top = LaurentPoly.var(evars_t, f"{name}{len(vars_)}", -m)
            result = result * top
    return result


def expand_elementary(q: LaurentPoly, blocks: Mapping[str, Sequence[str]],
                      root_variables: Sequence[str]) -> LaurentPoly:
    """Inverse substitution for round-trip checks: replace each block
    variable nameI by the i-th elementary symmetric polynomial of the
    block's root variables."""
    rv = tuple(root_variables)
    values: dict[str, LaurentPoly] = {}
    for name, vars_ in blocks.items():
        roots = [LaurentPoly.var(rv, v) for v in vars_]
        for i in range(1, len(vars_) + 1):
            values[f"{name}{i}"] = elementary_symmetric(roots, i)
    return q.substitute(values, rv)
