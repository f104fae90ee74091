"""Built-in fixture structures.

Five families, each an oracle-backed countable structure at desk scale:

- ``vec_p:<p>``   direct sum of countably many Z/p lines, addition only.
- ``f3t``         periodic part plus a rational-function line over GF(3),
                  with the shift generator; ``f3t-corr`` swaps the shift for
                  a 3-valued correspondence and adds the ternary same-offset
                  double-step relation.
- ``lines``       disjoint copies of the integer line under adjacency;
                  ``lines:tri`` marks one finite triangle component.
- ``hub-lines``   lines plus one vertex adjacent to everything (also with
                  ``:tri``).
- ``finab:<m1xm2x...>``  finite abelian groups, addition only.

The rational-function and periodic-sequence engines double as the package's
independent ground truth; they are deliberately free of any dependence on
the word algebra or the pp machinery.
"""

from __future__ import annotations

import functools
from typing import Optional

from .encoding import cantor_pair, cantor_unpair, unzigzag, zigzag
from .errors import ConfigurationError, ContractViolation
from .periodic import Periodic, PeriodicCoder
from .ppeval import eval_pp
from .ratfunc import RatCoder, RatFunc
from .structures import (
    GroupOps,
    MorleyMeta,
    PPFormula,
    Signature,
    StructureOracle,
    SymbolDecl,
    TriBool,
    canonical_tuples,
)

# ---------------------------------------------------------------------------
# vec_p: countable direct sum of Z/p, elements as little-endian base-p codes


def _vec_digits(code: int, p: int) -> list[int]:
    out = []
    while code:
        out.append(code % p)
        code //= p
    return out


def _vec_code(digits: list[int], p: int) -> int:
    acc = 0
    for d in reversed(digits):
        acc = acc * p + (d % p)
    return acc


def _vec_add(a: int, b: int, p: int) -> int:
    da, db = _vec_digits(a, p), _vec_digits(b, p)
    n = max(len(da), len(db))
    da += [0] * (n - len(da))
    db += [0] * (n - len(db))
    return _vec_code([(x + y) % p for x, y in zip(da, db)], p)


def _vec_neg(a: int, p: int) -> int:
    return _vec_code([(-d) % p for d in _vec_digits(a, p)], p)


def _gauss_gf(rows: list[tuple[list[int], int]], nvars: int, p: int
              ) -> Optional[list[int]]:
    """Solve a linear system over GF(p); free coordinates pinned to zero.
    Returns None when inconsistent."""
    mat = [[c % p for c in coeffs] + [rhs % p] for coeffs, rhs in rows]
    piv_cols = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][nvars] % p:
            return None
    sol = [0] * nvars
    for i, col in enumerate(piv_cols):
        sol[col] = mat[i][nvars] % p
    return sol


def _vec_linear_rows(pp: PPFormula, p: int) -> Optional[list[tuple[dict, Optional[int]]]]:
    """Each block of a vec_p formula as one linear form (var->coeff, offset)."""
    eqs: list[tuple[dict, Optional[int]]] = []
    for sym, rows in pp.blocks:
        forms = [({v: c for v, c in enumerate(coeffs) if c % p}, off)
                 for coeffs, off in rows]
        if sym is None:
            eqs.extend(forms)
        elif sym == "add":
            (f1, o1), (f2, o2), (f3, o3) = forms
            if o1 is not None or o2 is not None or o3 is not None:
                return None  # offsets inside a relation block: leave to the engine
            combo = dict(f1)
            for v, c in f2.items():
                combo[v] = combo.get(v, 0) + c
            for v, c in f3.items():
                combo[v] = combo.get(v, 0) - c
            eqs.append((combo, None))
        else:
            return None
    return eqs


def _vec_witness_hints(p: int):
    def solve(pp: PPFormula, params: tuple[int, ...]) -> Optional[list[tuple[int, ...]]]:
        eqs = _vec_linear_rows(pp, p)
        if eqs is None:
            return None
        support = set()
        for _, off in eqs:
            if off is not None:
                support.update(range(len(_vec_digits(off, p))))
        for a in params:
            support.update(range(len(_vec_digits(a, p))))
        digits = sorted(support)
        q = pp.n_quant
        per_var = {v: [0] * len(digits) for v in range(pp.n_free, pp.n_vars)}
        for pos, d in enumerate(digits):
            rows = []
            for form, off in eqs:
                coeffs = [0] * q
                rhs = 0
                for v, c in form.items():
                    if v < pp.n_free:
                        dv = _vec_digits(params[v], p)
                        rhs -= c * (dv[d] if d < len(dv) else 0)
                    else:
                        coeffs[v - pp.n_free] += c
                if off is not None:
                    dv = _vec_digits(off, p)
                    rhs -= dv[d] if d < len(dv) else 0
                rows.append((coeffs, rhs))
            sol = _gauss_gf(rows, q, p)
            if sol is None:
                return []
            for i, v in enumerate(range(pp.n_free, pp.n_vars)):
                per_var[v][pos] = sol[i]
        witness = []
        for v in range(pp.n_free, pp.n_vars):
            full = [0] * (max(digits) + 1 if digits else 0)
            for pos, d in enumerate(digits):
                full[d] = per_var[v][pos]
            witness.append(_vec_code(full, p))
        return [tuple(witness)]

    def witness_bound(pp: PPFormula, params: tuple[int, ...]) -> Optional[int]:
        got = solve(pp, params)
        if got is None:
            return None
        if not got:
            return 0
        return max(got[0], default=0) + 1

    def suggest(pp: PPFormula, params: tuple[int, ...]) -> list[tuple[int, ...]]:
        got = solve(pp, params)
        return got or []

    return witness_bound, suggest


def make_vec_p(p: int) -> StructureOracle:
    if p < 2 or any(p % k == 0 for k in range(2, p)):
        raise ConfigurationError(f"vec_p needs a prime modulus, got {p}")
    sig = Signature(
        symbols=(SymbolDecl("add", 3, "group"),),
        morley={"add": MorleyMeta(rank=2, degree=1, connected=True)},
    )
    ops = GroupOps(zero=0,
                   add=lambda a, b: _vec_add(a, b, p),
                   neg=lambda a: _vec_neg(a, p))

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym != "add":
            raise ContractViolation(f"unknown symbol {sym!r}")
        return _vec_add(args[0], args[1], p) == args[2]

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        if sym != "add":
            return None
        holes = [i for i, v in enumerate(partial) if v is None]
        if len(holes) != 1:
            return None if holes else ([tuple(partial)] if holds(sym, tuple(partial)) else [])
        a, b, c = partial
        if holes[0] == 2:
            return [(a, b, _vec_add(a, b, p))]
        if holes[0] == 1:
            return [(a, _vec_add(c, _vec_neg(a, p), p), c)]
        return [(_vec_add(c, _vec_neg(b, p), p), b, c)]

    wb, sw = _vec_witness_hints(p)
    return StructureOracle(
        signature=sig,
        holds=holds,
        group=ops,
        generic_hint=1,
        complete_block=complete,
        witness_bound=wb,
        suggest_witnesses=sw,
        word_generators=(),
        is_algebraic=lambda x: x == 0,
        name=f"vec_p:{p}",
    )


# ---------------------------------------------------------------------------
# f3t: periodic part + GF(3)(t) line under the shift generator


_PCODER = PeriodicCoder(3)
_RCODER = RatCoder(3)
_T = RatFunc.gen(3)
_RF0 = RatFunc.zero(3)


@functools.lru_cache(maxsize=65536)
def f3t_decode(code: int) -> tuple[Periodic, RatFunc]:
    pcode, vcode = cantor_unpair(code)
    return _PCODER.decode(pcode), _RCODER.decode(vcode)


def f3t_encode(per: Periodic, vec: RatFunc) -> int:
    return cantor_pair(_PCODER.encode(per), _RCODER.encode(vec))


@functools.lru_cache(maxsize=262144)
def _f3t_add(a: int, b: int) -> int:
    pa, va = f3t_decode(a)
    pb, vb = f3t_decode(b)
    return f3t_encode(pa + pb, va + vb)


@functools.lru_cache(maxsize=65536)
def _f3t_neg(a: int) -> int:
    pa, va = f3t_decode(a)
    return f3t_encode(-pa, -va)


@functools.lru_cache(maxsize=65536)
def _f3t_tstep(a: int, c: int = 0) -> int:
    """One application of the generator: shift the periodic part (plus the
    constant offset c in the correspondence variant), multiply the vector
    part by the indeterminate."""
    pa, va = f3t_decode(a)
    q = pa.shift(1)
    if c:
        q = q + Periodic.const(c, 3)
    return f3t_encode(q, va * _T)


@functools.lru_cache(maxsize=65536)
def _f3t_tback(b: int, c: int = 0) -> int:
    pb, vb = f3t_decode(b)
    q = pb
    if c:
        q = q - Periodic.const(c, 3)
    return f3t_encode(q.shift(-1), vb / _T)


def _is_const_offset(delta: Periodic) -> Optional[int]:
    return delta.pattern[0] if delta.period == 1 else None


def _gauss_ratfunc(rows: list[tuple[list[RatFunc], RatFunc]], nvars: int
                   ) -> Optional[list[RatFunc]]:
    """Solve over GF(3)(t); free coordinates pinned to zero; None = no solution."""
    mat = [list(coeffs) + [rhs] for coeffs, rhs in rows]
    piv_cols = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(mat)):
        if not mat[i][nvars].is_zero():
            return None
    sol = [_RF0] * nvars
    for i, col in enumerate(piv_cols):
        sol[col] = mat[i][nvars]
    return sol


def _f3t_vector_equations(pp: PPFormula, corr: bool
                          ) -> Optional[list[tuple[dict, RatFunc, bool]]]:
    """Vector-part linear equations of a pp formula over the f3t fixtures.

    Each equation is (var->GF(3) coeff dict scaled by a power of t, const,
    pure) ... practically: returns list of (form, const) where form maps
    var -> RatFunc coefficient.  None when an offset has a periodic part
    (the pure-vector slice does not apply)."""
    def row_form(coeffs, off):
        form: dict[int, RatFunc] = {}
        for v, c in enumerate(coeffs):
            if c % 3:
                form[v] = RatFunc.const(c, 3)
        const = _RF0
        if off is not None:
            per, vec = f3t_decode(off)
            if not per.is_zero():
                return None
            const = vec
        return form, const

    def scale(fc, k: RatFunc):
        form, const = fc
        return {v: c * k for v, c in form.items()}, const * k

    def minus(fa, fb):
        form = dict(fa[0])
        for v, c in fb[0].items():
            form[v] = form.get(v, _RF0) - c if v in form else -c
        return form, fa[1] - fb[1]

    eqs = []
    for sym, rows in pp.blocks:
        forms = []
        for coeffs, off in rows:
            fc = row_form(coeffs, off)
            if fc is None:
                return None
            forms.append(fc)
        if sym is None:
            eqs.extend(forms)
        elif sym == "add":
            eqs.append(minus(minus(forms[0], scale(forms[1], -RatFunc.one(3))), forms[2]))
        elif sym == "1":
            eqs.append(minus(forms[0], forms[1]))
        elif sym == "0":
            eqs.append(forms[1])
        elif sym == "t":
            eqs.append(minus(scale(forms[0], _T), forms[1]))
        elif sym == "e":
            eqs.append(minus(scale(forms[0], _T), forms[1]))
            eqs.append(minus(scale(forms[1], _T), forms[2]))
        else:
            return None
    return eqs


def _f3t_witness_hints(corr: bool):
    def solve(pp: PPFormula, params: tuple[int, ...]) -> Optional[list[tuple[int, ...]]]:
        for a in params:
            per, _ = f3t_decode(a)
            if not per.is_zero():
                return None  # mixed parameter: outside the exact slice
        eqs = _f3t_vector_equations(pp, corr)
        if eqs is None:
            return None
        q = pp.n_quant
        rows = []
        for form, const in eqs:
            coeffs = [_RF0] * q
            rhs = -const
            for v, c in form.items():
                if v < pp.n_free:
                    rhs = rhs - c * f3t_decode(params[v])[1]
                else:
                    coeffs[v - pp.n_free] = coeffs[v - pp.n_free] + c
            rows.append((coeffs, rhs))
        sol = _gauss_ratfunc(rows, q)
        if sol is None:
            return []
        return [tuple(f3t_encode(Periodic.zero(3), v) for v in sol)]

    def witness_bound(pp: PPFormula, params: tuple[int, ...]) -> Optional[int]:
        got = solve(pp, params)
        if got is None:
            return None
        if not got:
            return 0
        return max(got[0], default=0) + 1

    def suggest(pp: PPFormula, params: tuple[int, ...]) -> list[tuple[int, ...]]:
        got = solve(pp, params)
        return got or []

    return witness_bound, suggest


def _f3t_signature(corr: bool) -> Signature:
    symbols = [
        SymbolDecl("add", 3, "group"),
        SymbolDecl("1", 2, "group"),
        SymbolDecl("0", 2, "group"),
        SymbolDecl("t", 2, "group"),
    ]
    morley = {
        "add": MorleyMeta(rank=2, degree=1, connected=True),
        "1": MorleyMeta(rank=1, degree=1, connected=True),
        "0": MorleyMeta(rank=1, degree=1, connected=True),
        "t": MorleyMeta(rank=1, degree=1, connected=True),
    }
    if corr:
        symbols.append(SymbolDecl("e", 3, "group"))
        morley["e"] = MorleyMeta(rank=1, degree=1, connected=True)
    return Signature(symbols=tuple(symbols), morley=morley)


def make_f3t(corr: bool = False) -> StructureOracle:
    sig = _f3t_signature(corr)
    ops = GroupOps(zero=0, add=_f3t_add, neg=_f3t_neg)
    offsets = (0, 1, 2) if corr else (0,)

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym == "add":
            return _f3t_add(args[0], args[1]) == args[2]
        if sym == "1":
            return args[0] == args[1]
        if sym == "0":
            return args[1] == 0
        if sym == "t":
            return any(_f3t_tstep(args[0], c) == args[1] for c in offsets)
        if sym == "e" and corr:
            a, b, z = args
            for c in offsets:
                if _f3t_tstep(a, c) == b and _f3t_tstep(b, c) == z:
                    return True
            return False
        raise ContractViolation(f"unknown symbol {sym!r}")

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        holes = [i for i, v in enumerate(partial) if v is None]
        if not holes:
            return [tuple(partial)] if holds(sym, tuple(partial)) else []
        if sym == "add" and len(holes) == 1:
            a, b, c = partial
            if holes[0] == 2:
                return [(a, b, _f3t_add(a, b))]
            if holes[0] == 1:
                return [(a, _f3t_add(c, _f3t_neg(a)), c)]
            return [(_f3t_add(c, _f3t_neg(b)), b, c)]
        if sym == "1" and len(holes) == 1:
            v = partial[0] if partial[0] is not None else partial[1]
            return [(v, v)]
        if sym == "0" and holes == [1]:
            return [(partial[0], 0)]
        if sym == "t" and len(holes) == 1:
            if holes[0] == 1:
                return [(partial[0], _f3t_tstep(partial[0], c)) for c in offsets]
            return [(_f3t_tback(partial[1], c), partial[1]) for c in offsets]
        if sym == "e" and corr and len(holes) <= 2:
            a, b, z = partial
            out = []
            for c in offsets:
                if a is not None:
                    bb = _f3t_tstep(a, c) if b is None else b
                    zz = _f3t_tstep(bb, c) if z is None else z
                    cand = (a, bb, zz)
                elif b is not None:
                    cand = (_f3t_tback(b, c), b, _f3t_tstep(b, c) if z is None else z)
                elif z is not None:
                    bb = _f3t_tback(z, c)
                    cand = (_f3t_tback(bb, c), bb, z)
                else:
                    return None
                if holds("e", cand) and cand not in out:
                    out.append(cand)
            return out
        return None

    wb, sw = _f3t_witness_hints(corr)
    name = "f3t-corr" if corr else "f3t"
    fiber = {"1": 1, "0": 1, "t": len(offsets)}
    if corr:
        fiber["e"] = len(offsets)
    oracle = StructureOracle(
        signature=sig,
        holds=holds,
        group=ops,
        generic_hint=f3t_encode(Periodic.zero(3), RatFunc.one(3)),
        complete_block=complete,
        witness_bound=wb,
        suggest_witnesses=sw,
        word_generators=("1", "0", "t"),
        fiber_bounds=fiber,
        is_algebraic=lambda x: f3t_decode(x)[1].is_zero(),
        name=name,
    )
    oracle.prime_part = lambda: make_f3t_prime(corr)
    return oracle


def make_f3t_prime(corr: bool = False) -> StructureOracle:
    """The algebraic (periodic) part alone, elements coded by the periodic
    coder directly."""
    sig = _f3t_signature(corr)
    coder = _PCODER
    offsets = (0, 1, 2) if corr else (0,)

    def add(a: int, b: int) -> int:
        return coder.encode(coder.decode(a) + coder.decode(b))

    def neg(a: int) -> int:
        return coder.encode(-coder.decode(a))

    def step(a: int, c: int = 0) -> int:
        q = coder.decode(a).shift(1)
        if c:
            q = q + Periodic.const(c, 3)
        return coder.encode(q)

    def back(b: int, c: int = 0) -> int:
        q = coder.decode(b)
        if c:
            q = q - Periodic.const(c, 3)
        return coder.encode(q.shift(-1))

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym == "add":
            return add(args[0], args[1]) == args[2]
        if sym == "1":
            return args[0] == args[1]
        if sym == "0":
            return args[1] == 0
        if sym == "t":
            return any(step(args[0], c) == args[1] for c in offsets)
        if sym == "e" and corr:
            a, b, z = args
            return any(step(a, c) == b and step(b, c) == z for c in offsets)
        raise ContractViolation(f"unknown symbol {sym!r}")

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        holes = [i for i, v in enumerate(partial) if v is None]
        if not holes:
            return [tuple(partial)] if holds(sym, tuple(partial)) else []
        if sym == "add" and len(holes) == 1:
            a, b, c = partial
            if holes[0] == 2:
                return [(a, b, add(a, b))]
            if holes[0] == 1:
                return [(a, add(c, neg(a)), c)]
            return [(add(c, neg(b)), b, c)]
        if sym == "1" and len(holes) == 1:
            v = partial[0] if partial[0] is not None else partial[1]
            return [(v, v)]
        if sym == "0" and holes == [1]:
            return [(partial[0], 0)]
        if sym == "t" and len(holes) == 1:
            if holes[0] == 1:
                return [(partial[0], step(partial[0], c)) for c in offsets]
            return [(back(partial[1], c), partial[1]) for c in offsets]
        return None

    return StructureOracle(
        signature=sig,
        holds=holds,
        group=GroupOps(zero=0, add=add, neg=neg),
        generic_hint=None,
        complete_block=complete,
        word_generators=("1", "0", "t"),
        is_algebraic=lambda x: True,
        name="f3t-prime" + ("-corr" if corr else ""),
    )


# ---------------------------------------------------------------------------
# lines family: disjoint integer lines, optional triangle, optional hub


def make_lines(tri: bool = False, hub: bool = False) -> StructureOracle:
    hub_code = 0 if hub else None
    tri_base = (1 if hub else 0) if tri else None
    line_base = (1 if hub else 0) + (3 if tri else 0)
    tri_set = set(range(tri_base, tri_base + 3)) if tri else set()

    def line_of(code: int) -> tuple[int, int]:
        k = code - line_base
        line, zpos = cantor_unpair(k)
        return line, unzigzag(zpos)

    def line_code(line: int, pos: int) -> int:
        return line_base + cantor_pair(line, zigzag(pos))

    def adjacent(a: int, b: int) -> bool:
        if a == b:
            return False
        if hub_code is not None and (a == hub_code or b == hub_code):
            return True
        if a in tri_set and b in tri_set:
            return True
        if a in tri_set or b in tri_set:
            return False
        la, pa = line_of(a)
        lb, pb = line_of(b)
        return la == lb and abs(pa - pb) == 1

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym != "R":
            raise ContractViolation(f"unknown symbol {sym!r}")
        return adjacent(args[0], args[1])

    def neighbors(a: int) -> Optional[list[int]]:
        if a == hub_code:
            return None  # infinite valence
        out = []
        if a in tri_set:
            out = sorted(tri_set - {a})
        else:
            line, pos = line_of(a)
            out = sorted((line_code(line, pos - 1), line_code(line, pos + 1)))
        if hub_code is not None:
            out = [hub_code] + out
        return out

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        if sym != "R":
            return None
        a, b = partial
        if a is not None and b is not None:
            return [(a, b)] if adjacent(a, b) else []
        if a is not None:
            ns = neighbors(a)
            return None if ns is None else [(a, x) for x in ns]
        if b is not None:
            ns = neighbors(b)
            return None if ns is None else [(x, b) for x in ns]
        return None

    def complement(sym: str, partial: tuple) -> Optional[list[int]]:
        # finite only at the hub: everything except the hub itself is adjacent
        if sym != "R" or hub_code is None:
            return None
        a, b = partial
        if a == hub_code and b is None:
            return [hub_code]
        if b == hub_code and a is None:
            return [hub_code]
        return None

    sig = Signature(symbols=(SymbolDecl("R", 2, "plain"),),
                    morley={"R": MorleyMeta(rank=1, degree=1, connected=None)})
    name = "hub-lines" if hub else "lines"
    if tri:
        name += ":tri"
    return StructureOracle(
        signature=sig,
        holds=holds,
        generic_hint=line_code(0, 0),
        complete_block=complete,
        complement_block=complement,
        valence_bound=3 if hub else 2,
        edge_candidates=(("R", 0, 1),),
        name=name,
    )


# ---------------------------------------------------------------------------
# finab: finite abelian groups as mixed-radix codes


def parse_moduli(arg: str) -> tuple[int, ...]:
    try:
        moduli = tuple(int(tok) for tok in arg.lower().split("x"))
    except ValueError:
        raise ConfigurationError(f"bad moduli spec {arg!r}") from None
    if not moduli or any(m < 2 for m in moduli):
        raise ConfigurationError(f"bad moduli spec {arg!r}")
    return moduli


def mixed_radix_decode(code: int, moduli: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for m in moduli:
        out.append(code % m)
        code //= m
    return tuple(out)


def mixed_radix_encode(tup: tuple[int, ...], moduli: tuple[int, ...]) -> int:
    acc = 0
    for r, m in zip(reversed(tup), reversed(moduli)):
        acc = acc * m + (r % m)
    return acc


def make_finab(moduli: tuple[int, ...]) -> StructureOracle:
    size = 1
    for m in moduli:
        size *= m

    def add(a: int, b: int) -> int:
        ta = mixed_radix_decode(a, moduli)
        tb = mixed_radix_decode(b, moduli)
        return mixed_radix_encode(tuple((x + y) % m for x, y, m in zip(ta, tb, moduli)), moduli)

    def neg(a: int) -> int:
        ta = mixed_radix_decode(a, moduli)
        return mixed_radix_encode(tuple((-x) % m for x, m in zip(ta, moduli)), moduli)

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym != "add":
            raise ContractViolation(f"unknown symbol {sym!r}")
        return add(args[0], args[1]) == args[2]

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        if sym != "add":
            return None
        holes = [i for i, v in enumerate(partial) if v is None]
        if not holes:
            return [tuple(partial)] if holds(sym, tuple(partial)) else []
        if len(holes) != 1:
            return None
        a, b, c = partial
        if holes[0] == 2:
            return [(a, b, add(a, b))]
        if holes[0] == 1:
            return [(a, add(c, neg(a)), c)]
        return [(add(c, neg(b)), b, c)]

    return StructureOracle(
        signature=Signature(symbols=(SymbolDecl("add", 3, "group"),),
                            morley={"add": MorleyMeta(rank=2, degree=1, connected=None)}),
        holds=holds,
        universe_size=size,
        group=GroupOps(zero=0, add=add, neg=neg),
        complete_block=complete,
        name="finab:" + "x".join(str(m) for m in moduli),
    )


# ---------------------------------------------------------------------------
# registry


FIXTURE_FAMILIES = (
    ("vec_p", "countable Z/p vector space, addition only (vec_p:<prime>, default 5)"),
    ("f3t", "periodic part + GF(3)(t) line with the shift generator (variant f3t-corr)"),
    ("lines", "disjoint integer lines under adjacency (variant lines:tri)"),
    ("hub-lines", "lines plus a vertex adjacent to everything (variant hub-lines:tri)"),
    ("finab", "finite abelian group (finab:<m1xm2x...>)"),
)


def make_fixture(spec: str) -> StructureOracle:
    """Build a named fixture; the name grammar is family[:argument]."""
    name, _, arg = spec.partition(":")
    if name == "vec_p":
        return make_vec_p(int(arg) if arg else 5)
    if name == "f3t" and not arg:
        return make_f3t(corr=False)
    if name in ("f3t-corr", "f3t") and (arg == "corr" or name == "f3t-corr"):
        if name == "f3t-corr" and arg:
            raise ConfigurationError(f"unknown fixture {spec!r}")
        return make_f3t(corr=True)
    if name == "lines":
        if arg not in ("", "tri"):
            raise ConfigurationError(f"unknown fixture {spec!r}")
        return make_lines(tri=arg == "tri", hub=False)
    if name == "hub-lines":
        if arg not in ("", "tri"):
            raise ConfigurationError(f"unknown fixture {spec!r}")
        return make_lines(tri=arg == "tri", hub=True)
    if name == "finab":
        if not arg:
            raise ConfigurationError("finab needs moduli, e.g. finab:2x8")
        return make_finab(parse_moduli(arg))
    raise ConfigurationError(f"unknown fixture {spec!r}")


def selfcheck(oracle: StructureOracle, fuel: int = 512) -> list[str]:
    """Cheap post-load fixture checks; raises ContractViolation on failure."""
    report = []
    # holds total and stable on a small prefix
    for decl in oracle.signature.symbols:
        count = 0
        for tup in canonical_tuples(oracle, decl.arity):
            if count >= 32:
                break
            count += 1
            first = oracle.holds(decl.name, tup)
            if oracle.holds(decl.name, tup) != first:
                raise ContractViolation(f"holds({decl.name}) unstable at {tup}")
    report.append("holds total and stable on sampled prefix")
    if oracle.group is not None:
        g = oracle.group
        for a in oracle.element_prefix(16):
            if g.add(a, g.zero) != a or g.add(a, g.neg(a)) != g.zero:
                raise ContractViolation(f"group laws fail at {a}")
        report.append("group identity and inverse laws on sampled prefix")
    for cname, val in oracle.named_constants.items():
        oracle.element_at(val)
    if oracle.complete_block is not None:
        checked = 0
        for decl in oracle.signature.symbols:
            for a in oracle.element_prefix(8):
                partial = (a,) + (None,) * (decl.arity - 1)
                got = oracle.complete_block(decl.name, partial)
                if got is None:
                    continue
                for tup in got:
                    if not oracle.holds(decl.name, tup):
                        raise ContractViolation(
                            f"complete_block({decl.name}, {partial}) suggested a non-fact {tup}")
                checked += len(got)
        report.append(f"complete_block suggestions verified ({checked} tuples)")
    if oracle.witness_bound is not None and oracle.group is not None:
        # witness bound honored on a sampled prefix of a trivially-true pp
        from .structures import PPBuilder

        b = PPBuilder(1)
        z = b.fresh()
        b.zero_row({0: 1, z: -1})
        pp = b.build(out_var=0)
        for a in oracle.element_prefix(8):
            if eval_pp(oracle, pp, (a,), fuel) is not TriBool.TRUE:
                raise ContractViolation("witnessable identity failed under hints")
        report.append("witness hints honored on identity formula prefix")
    return report
