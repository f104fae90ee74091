"""Command-line front end.

Subcommands cover the library surface: fixture registry and self-checks,
structure inspection, derived-edge neighborhoods, acl(empty) enumeration,
model building with atomic-diagram dumps, coset stripping on finite abelian
groups, word-ring enumeration/classification with a persistent cache, pp
correspondence reduction to words, and the axiom-list enumerator.

Formats are line-oriented and versioned: structure specs start with
``smstruct-spec 1``, atomic-diagram dumps with ``smstruct-dump 1``, coset
specs with ``smstruct-coset 1``, and classification caches with
``smstruct-cache 1``.  All outputs are deterministic for fixed arguments,
fuel, and seed.  Exit codes: 2 usage, 3 contract violation, 4 fuel
exhausted.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from itertools import islice
from typing import Iterator, Optional, Sequence

from .coset_reduction import FinAbGroup, group_strip
from .disintegrated import (
    build_model,
    derive_edges,
    enumerate_acl0,
    generic_template,
    neighborhood,
)
from .errors import (
    ConfigurationError,
    ContractViolation,
    FuelExhausted,
    TableExhausted,
    EXIT_CONTRACT,
    EXIT_FUEL,
    EXIT_USAGE,
)
from .fixtures import FIXTURE_FAMILIES, make_fixture, parse_moduli, selfcheck
from .models import (
    _embed,
    acl0_enum,
    build_ring_table,
    build_vector_model,
    direct_sum,
)
from .ppeval import DEFAULT_FUEL
from .qring import WordCache, parse_word, render_word, word_census, word_pp, words_up_to
from .rowreduce import reduce_to_word
from .structures import (
    MorleyMeta,
    PPBuilder,
    Signature,
    StructureOracle,
    SymbolDecl,
)

SPEC_HEADER = "smstruct-spec 1"
DUMP_HEADER = "smstruct-dump 1"
COSET_HEADER = "smstruct-coset 1"


# ---------------------------------------------------------------------------
# structure loading


def _table_oracle(name: str, universe: int, decls: Sequence[SymbolDecl],
                  trues: dict[str, set[tuple[int, ...]]],
                  constants: dict[str, int], generic: Optional[int],
                  morley: dict[str, MorleyMeta],
                  valence: Optional[int] = None) -> StructureOracle:
    by_name = {d.name: d for d in decls}

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym not in by_name:
            raise ContractViolation(f"unknown symbol {sym!r}")
        return tuple(args) in trues[sym]

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        out = []
        for tup in sorted(trues[sym]):
            if all(p is None or p == v for p, v in zip(partial, tup)):
                out.append(tup)
        return out

    return StructureOracle(
        signature=Signature(symbols=tuple(decls), morley=dict(morley)),
        holds=holds,
        universe_size=universe,
        named_constants=dict(constants),
        generic_hint=generic,
        complete_block=complete,
        valence_bound=valence,
        name=name,
    )


def _parse_spec_lines(name: str, lines: list[str]) -> StructureOracle:
    body = [ln.rstrip("\n") for ln in lines]
    body = [ln for ln in body if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ConfigurationError("empty structure spec")
    header, body = body[0].strip(), body[1:]
    if header == DUMP_HEADER:
        return _parse_dump_body(name, body)
    if header != SPEC_HEADER:
        raise ConfigurationError(
            f"unrecognized header {header!r}: expected {SPEC_HEADER!r} or {DUMP_HEADER!r}")

    universe: Optional[int] = None
    decls: list[SymbolDecl] = []
    trues: dict[str, set[tuple[int, ...]]] = {}
    constants: dict[str, int] = {}
    generic: Optional[int] = None
    valence: Optional[int] = None
    morley: dict[str, MorleyMeta] = {}
    i = 0
    while i < len(body):
        parts = body[i].split()
        i += 1
        key = parts[0]
        if key == "fixture":
            if len(parts) != 2:
                raise ConfigurationError("fixture line wants exactly one name")
            return make_fixture(parts[1])
        if key == "universe":
            universe = int(parts[1])
        elif key == "symbol":
            if len(parts) != 4:
                raise ConfigurationError(f"bad symbol line: {' '.join(parts)!r}")
            decls.append(SymbolDecl(parts[1], int(parts[2]), parts[3]))
            trues.setdefault(parts[1], set())
        elif key == "morley":
            connected = None
            if len(parts) == 5:
                connected = {"connected": True, "disconnected": False}[parts[4]]
            morley[parts[1]] = MorleyMeta(rank=int(parts[2]), degree=int(parts[3]),
                                          connected=connected)
        elif key == "constant":
            constants[parts[1]] = int(parts[2])
        elif key == "generic":
            generic = int(parts[1])
        elif key == "valence":
            valence = int(parts[1])
        elif key == "table":
            sym = parts[1]
            if sym not in trues:
                raise ConfigurationError(f"table for undeclared symbol {sym!r}")
            arity = next(d.arity for d in decls if d.name == sym)
            while i < len(body) and body[i].split() != ["end"]:
                tup = tuple(int(x) for x in body[i].split())
                if len(tup) != arity:
                    raise ConfigurationError(f"tuple {tup} has wrong arity for {sym!r}")
                trues[sym].add(tup)
                i += 1
            if i == len(body):
                raise ConfigurationError(f"table {sym!r} missing its end line")
            i += 1
        else:
            raise ConfigurationError(f"unknown spec key {key!r}")
    if universe is None or not decls:
        raise ConfigurationError("table-driven spec needs a universe and symbols")
    return _table_oracle(name, universe, decls, trues, constants, generic, morley,
                         valence)


def _parse_dump_body(name: str, body: list[str]) -> StructureOracle:
    universe: Optional[int] = None
    decls: list[SymbolDecl] = []
    trues: dict[str, set[tuple[int, ...]]] = {}
    for ln in body:
        parts = ln.split()
        if parts[0] == "universe":
            universe = int(parts[1])
        elif parts[0] == "symbol":
            decls.append(SymbolDecl(parts[1], int(parts[2]), parts[3]))
            trues.setdefault(parts[1], set())
        else:
            if len(parts) < 3 or parts[-2] != "=":
                raise ConfigurationError(f"bad dump line {ln!r}")
            sym = parts[0]
            if sym not in trues:
                raise ConfigurationError(f"dump line for undeclared symbol {sym!r}")
            tup = tuple(int(x) for x in parts[1:-2])
            if parts[-1] == "1":
                trues[sym].add(tup)
            elif parts[-1] != "0":
                raise ConfigurationError(f"bad dump verdict in {ln!r}")
    if universe is None or not decls:
        raise ConfigurationError("dump needs a universe and symbol declarations")
    return _table_oracle(name, universe, decls, trues, {}, None, {})


def load_structure(spec: str) -> StructureOracle:
    """A fixture name, or a path to a spec/dump file."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return _parse_spec_lines(os.path.basename(spec), fh.readlines())
    return make_fixture(spec)


# ---------------------------------------------------------------------------
# atomic-diagram dumps


def _dump_lines(oracle: StructureOracle, prefix: int) -> Iterator[str]:
    size = prefix
    if oracle.universe_size is not None:
        size = min(size, oracle.universe_size)
    yield DUMP_HEADER
    yield f"universe {size}"
    for decl in oracle.signature.symbols:
        yield f"symbol {decl.name} {decl.arity} {decl.kind}"
    for decl in oracle.signature.symbols:
        for tup in _lex_tuples(size, decl.arity):
            bit = 1 if oracle.holds(decl.name, tup) else 0
            yield f"{decl.name} {' '.join(str(x) for x in tup)} = {bit}"


def _lex_tuples(size: int, arity: int) -> Iterator[tuple[int, ...]]:
    if arity == 0:
        yield ()
        return
    tup = [0] * arity
    while True:
        yield tuple(tup)
        i = arity - 1
        while i >= 0:
            tup[i] += 1
            if tup[i] < size:
                break
            tup[i] = 0
            i -= 1
        if i < 0:
            return


def _clamped_dump(oracle: StructureOracle, prefix: int) -> tuple[list[str], int]:
    """Largest initial segment at or below ``prefix`` whose full diagram the
    oracle can certify.  Frozen-table models refuse atoms outside their
    window; the dump shrinks rather than guess."""
    size = prefix
    if oracle.universe_size is not None:
        size = min(size, oracle.universe_size)
    while size > 0:
        try:
            return list(_dump_lines(oracle, size)), size
        except TableExhausted:
            size -= 1
    raise ContractViolation("no dumpable prefix: even the empty diagram failed")


# ---------------------------------------------------------------------------
# option plumbing


def _fuel(args: argparse.Namespace) -> int:
    return DEFAULT_FUEL if args.fuel is None else args.fuel


def _radius(args: argparse.Namespace, default: int = 6) -> int:
    # disintegrated enumerators read --fuel as the ball-radius bound
    return default if args.fuel is None else args.fuel


def _abelian(oracle: StructureOracle) -> bool:
    return oracle.group is not None


def _load_cache(oracle: StructureOracle, path: Optional[str]) -> WordCache:
    cache = WordCache(oracle)
    if path and os.path.exists(path):
        cache.load(path)
    return cache


def _save_cache(cache: Optional[WordCache], path: Optional[str]) -> None:
    if cache is not None and path:
        cache.save(path)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_fixture(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name, desc in FIXTURE_FAMILIES:
            print(f"{name}\t{desc}")
        return 0
    oracle = load_structure(args.spec)
    for line in selfcheck(oracle, fuel=512 if args.fuel is None else args.fuel):
        print(line)
    print("ok")
    return 0


def _cmd_inspect(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    print(f"name: {oracle.name}")
    size = oracle.universe_size
    print(f"universe: {'countable' if size is None else size}")
    for decl in oracle.signature.symbols:
        meta = oracle.signature.morley.get(decl.name)
        extra = ""
        if meta is not None:
            flag = {True: " connected", False: " disconnected", None: ""}[meta.connected]
            extra = f" morley {meta.rank} {meta.degree}{flag}"
        print(f"symbol: {decl.name} {decl.arity} {decl.kind}{extra}")
    for cname in sorted(oracle.named_constants):
        print(f"constant: {cname} = {oracle.named_constants[cname]}")
    if oracle.generic_hint is not None:
        print(f"generic: {oracle.generic_hint}")
    if oracle.word_generators:
        print(f"word-generators: {' '.join(oracle.word_generators)}")
    return 0


def _cmd_nbh(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    edges = derive_edges(oracle)
    ball = neighborhood(oracle, edges, args.element, args.radius, _fuel(args))
    print(f"center {ball.center}")
    print(f"radius {ball.radius}")
    print("vertices " + " ".join(str(v) for v in ball.order))
    print("depths " + " ".join(str(d) for d in ball.depths))
    for color, src, dst in sorted(ball.edges):
        print(f"edge {color} {src} {dst}")
    for v in sorted(ball.pinned):
        print(f"pin {v} {ball.pinned[v]}")
    return 0


def _zero_items(oracle: StructureOracle, cache: Optional[WordCache],
                max_len: int, fuel: int) -> list:
    """Constant-class image sources for acl(empty) enumeration."""
    if oracle.word_generators:
        if cache is None:
            cache = WordCache(oracle)
        census = word_census(oracle, max_len, fuel, cache=cache)
        return list(census.zero)
    b = PPBuilder(1)
    b.zero_row({0: 1})
    return [b.build(out_var=0)]


def _cmd_acl0(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    if _abelian(oracle):
        # term classification only applies when generators are declared
        cache = _load_cache(oracle, args.cache) if oracle.word_generators else None
        items = _zero_items(oracle, cache, args.max_len, _fuel(args))
        stream = acl0_enum(oracle, items, _fuel(args), cache=cache)
        for code in islice(stream, args.prefix):
            print(code)
        _save_cache(cache, args.cache)
        return 0
    edges = derive_edges(oracle)
    for code in enumerate_acl0(oracle, edges, _radius(args), limit=args.prefix):
        print(code)
    return 0


def _parse_dimension(text: str) -> Optional[int]:
    if text in ("omega", "w"):
        return None
    d = int(text)
    if d < 0:
        raise ConfigurationError("dimension must be a natural or omega")
    return d


def _cmd_build_model(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    d = _parse_dimension(args.dimension)
    if _abelian(oracle):
        if not oracle.word_generators:
            raise ConfigurationError(
                "abelian model synthesis needs declared word generators")
        cache = _load_cache(oracle, args.cache)
        table = build_ring_table(oracle, args.max_len, _fuel(args), cache=cache)
        vector = build_vector_model(table, d)
        prime = oracle.prime_part() if oracle.prime_part is not None else None
        if prime is not None:
            present = direct_sum(prime, vector)
            model = present.oracle
            print(f"model: {model.name}")
            print(f"encoder: {present.encoder}")
        else:
            model = vector
            print(f"model: {model.name}")
        print(f"ring-classes: {table.size}")
        _save_cache(cache, args.cache)
    else:
        edges = derive_edges(oracle)
        radius = _radius(args)
        acl0 = list(enumerate_acl0(oracle, edges, radius, limit=args.prefix))
        template = generic_template(oracle, edges)
        model = build_model(oracle, acl0, template, d)
        print(f"model: {model.name}")
        print(f"acl0-size: {len(acl0)}")
    dim_text = "omega" if d is None else str(d)
    print(f"dimension: {dim_text}")
    if args.dump:
        lines, size = _clamped_dump(model, args.prefix)
        if size < args.prefix and (model.universe_size is None
                                   or size < model.universe_size):
            print(f"dump-clamped: {size}", file=sys.stderr)
        for ln in lines:
            print(ln)
    return 0


def _parse_coset_spec(text: str) -> tuple[FinAbGroup, list, tuple, Optional[list]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != COSET_HEADER:
        raise ConfigurationError(f"coset spec must start with {COSET_HEADER!r}")

    def elt(tok: str) -> tuple[int, ...]:
        return tuple(int(x) for x in tok.split(","))

    moduli = None
    b_set: list = []
    b1 = None
    a_gens: Optional[list] = None
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "moduli":
            moduli = parse_moduli(parts[1])
        elif parts[0] == "b":
            b_set.extend(elt(tok) for tok in parts[1:])
        elif parts[0] == "b1":
            b1 = elt(parts[1])
        elif parts[0] == "a":
            a_gens = [elt(tok) for tok in parts[1:]]
        else:
            raise ConfigurationError(f"unknown coset spec key {parts[0]!r}")
    if moduli is None or not b_set or b1 is None:
        raise ConfigurationError("coset spec needs moduli, b, and b1 lines")
    return FinAbGroup(moduli), b_set, b1, a_gens


def _cmd_strip_group(args: argparse.Namespace) -> int:
    if os.path.exists(args.spec):
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = args.spec.replace(";", "\n")
    group, b_set, b1, a_gens = _parse_coset_spec(text)
    a_sub = group.subgroup(a_gens) if a_gens is not None else None
    g_sub, x_coset = group_strip(group, b_set, b1, a_sub)

    def fmt(e: tuple[int, ...]) -> str:
        return ",".join(str(x) for x in e)

    gens = sorted(g_sub.generators)
    print("G generators: " + (" ".join(fmt(g) for g in gens) if gens else "0"))
    print(f"G size: {len(g_sub)}")
    print(f"X representative: {fmt(group.min_element(x_coset))}")
    print(f"X size: {len(x_coset)}")
    return 0


def _cmd_qring(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    cache = _load_cache(oracle, args.cache)
    fuel = _fuel(args)
    status = 0
    if args.action == "enumerate":
        unknown = 0
        for word in words_up_to(cache.generators, args.max_len):
            try:
                label = cache.classify(word, fuel).kind.value
            except FuelExhausted:
                label = "Unknown"
                unknown += 1
            print(f"{render_word(word)}\t{label}")
        if unknown:
            print(f"partial: {unknown} words unclassified", file=sys.stderr)
            status = EXIT_FUEL
    else:
        word = parse_word(args.expr, cache.generators)
        print(cache.classify(word, fuel).kind.value)
    _save_cache(cache, args.cache)
    return status


_ATOM_RE = re.compile(r"(.+)\(\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*\)\s*$")


def parse_theta(oracle: StructureOracle, text: str):
    """A two-variable pp correspondence: the word grammar applied to variable
    pairs, with conjunction and an optional quantifier prefix.

    Grammar: ``[exists z1 z2 . ] w1(u, v) & w2(u, v) & ...`` where each w is
    a word expression, the free variables are named x and y, and every other
    variable must be declared in the exists prefix.
    """
    body = text.strip()
    var_ids: dict[str, int] = {"x": 0, "y": 1}
    builder = PPBuilder(2)
    m = re.match(r"exists\s+((?:[A-Za-z_]\w*\s+)*[A-Za-z_]\w*)\s*\.", body)
    if m:
        for name in m.group(1).split():
            if name in var_ids:
                raise ConfigurationError(f"variable {name!r} declared twice")
            var_ids[name] = builder.fresh()
        body = body[m.end():]
    atoms = [a.strip() for a in body.split("&")]
    if not any(atoms):
        raise ConfigurationError("empty correspondence expression")
    for atom in atoms:
        am = _ATOM_RE.match(atom)
        if am is None:
            raise ConfigurationError(f"bad atom {atom!r}: expected word(u, v)")
        wtext, uname, vname = am.group(1), am.group(2), am.group(3)
        if uname not in var_ids or vname not in var_ids:
            missing = uname if uname not in var_ids else vname
            raise ConfigurationError(f"undeclared variable {missing!r}")
        word = parse_word(wtext, oracle.word_generators or None)
        _embed(builder, word_pp(oracle.signature, word),
               [var_ids[uname], var_ids[vname]])
    return builder.build(out_var=1)


def _cmd_reduce(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    cache = _load_cache(oracle, args.cache)
    theta = parse_theta(oracle, args.theta)
    word = reduce_to_word(theta, oracle, _fuel(args), cache=cache)
    print(f"word: {render_word(word)}")
    print(f"canonical: {render_word(cache.canonical_rep(word, _fuel(args)))}")
    _save_cache(cache, args.cache)
    return 0


def _cmd_dump(args: argparse.Namespace) -> int:
    oracle = load_structure(args.spec)
    lines, size = _clamped_dump(oracle, args.prefix)
    if size < args.prefix and (oracle.universe_size is None
                               or size < oracle.universe_size):
        print(f"dump-clamped: {size}", file=sys.stderr)
    for ln in lines:
        print(ln)
    return 0


def _cmd_axioms(args: argparse.Namespace) -> int:
    from .pptools import enumerate_axioms

    oracle = load_structure(args.spec)
    for sentence in islice(enumerate_axioms(oracle, _fuel(args)), args.prefix):
        print(sentence)
    return 0


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="smstruct",
        description="effective constructions on recursive strongly minimal theories")
    top.add_argument("--fuel", type=int, default=None,
                     help="search budget (disintegrated enumerators read it as "
                          "the ball-radius bound)")
    top.add_argument("--seed", type=int, default=0,
                     help="seed for sampled checks (outputs are deterministic per seed)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixture", help="list built-in fixtures or self-check one")
    p.add_argument("action", choices=["list", "selfcheck"])
    p.add_argument("spec", nargs="?", default=None)
    p.set_defaults(func=_cmd_fixture)

    p = sub.add_parser("inspect", help="print a structure's declared metadata")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("nbh", help="radius-n ball in the derived edge graph")
    p.add_argument("spec")
    p.add_argument("element", type=int)
    p.add_argument("radius", type=int)
    p.set_defaults(func=_cmd_nbh)

    p = sub.add_parser("acl0", help="enumerate the algebraic closure of the empty set")
    p.add_argument("spec")
    p.add_argument("--prefix", type=int, default=100)
    p.add_argument("--max-len", type=int, default=3,
                   help="word length bound for constant-class terms (abelian path)")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_acl0)

    p = sub.add_parser("build-model", help="build a model of the given dimension")
    p.add_argument("spec")
    p.add_argument("-d", "--dimension", required=True,
                   help="a natural number, or omega")
    p.add_argument("--prefix", type=int, default=20)
    p.add_argument("--max-len", type=int, default=4,
                   help="ring-table word length bound (abelian path)")
    p.add_argument("--cache", default=None)
    p.add_argument("--dump", action="store_true",
                   help="emit the atomic-diagram dump after the summary")
    p.set_defaults(func=_cmd_build_model)

    p = sub.add_parser("strip-group", help="strip a coset union down to a group")
    p.add_argument("spec", help="coset spec file, or inline text with ';' breaks")
    p.set_defaults(func=_cmd_strip_group)

    p = sub.add_parser("qring", help="word-ring enumeration and classification")
    p.add_argument("action", choices=["enumerate", "classify"])
    p.add_argument("spec")
    p.add_argument("expr", nargs="?", default=None)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_qring)

    p = sub.add_parser("reduce", help="reduce a pp correspondence to a ring word")
    p.add_argument("spec")
    p.add_argument("--theta", required=True,
                   help="e.g. \"exists z . t(x, z) & t(z, y)\"")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("dump", help="emit a structure's atomic-diagram prefix")
    p.add_argument("spec")
    p.add_argument("--prefix", type=int, default=20)
    p.set_defaults(func=_cmd_dump)

    p = sub.add_parser("axioms", help="enumerate the theory's axiom list prefix")
    p.add_argument("spec")
    p.add_argument("--prefix", type=int, default=20)
    p.set_defaults(func=_cmd_axioms)

    return top


def _validate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if args.command == "fixture" and args.action == "selfcheck" and not args.spec:
        parser.error("fixture selfcheck needs a spec")
    if args.command == "qring" and args.action == "classify" and not args.expr:
        parser.error("qring classify needs a word expression")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        return args.func(args)
    except ConfigurationError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONTRACT
    except FuelExhausted as err:
        print(f"fuel exhausted: {err}", file=sys.stderr)
        return EXIT_FUEL
    except ContractViolation as err:
        print(f"contract violation: {err}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
