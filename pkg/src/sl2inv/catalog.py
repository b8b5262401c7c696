"""Loaders for the bundled tables: generator lists, hsops, covariant bases, reference values."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import permutations

from .expr import Expr, multidegree, order, parse_aliases, parse_expr, print_expr, rename
from .forms import ModuleSpec

TABLE_PACKAGE = "sl2inv.tables"


class CatalogError(ValueError):
    pass


def _read(name: str) -> str:
    try:
        return resources.files(TABLE_PACKAGE).joinpath(name).read_text()
    except FileNotFoundError as exc:
        raise CatalogError(f"no bundled table {name!r}") from exc


@lru_cache(maxsize=1)
def reference_values() -> dict:
    """Expected values transcribed from the literature (versioned JSON)."""
    data = json.loads(_read("reference_values.json"))
    if data.get("version") != 1:
        raise CatalogError("unsupported reference-values version")
    return data


def theorem2_row(spec_key: str) -> dict:
    for row in reference_values()["theorem2"]:
        if row["spec"] == spec_key:
            return row
    raise KeyError(spec_key)


@dataclass
class CatalogEntry:
    expr: Expr
    degree: int
    multidegree: tuple
    text: str


@dataclass
class GeneratorTable:
    spec: ModuleSpec
    entries: list
    bound: int | None = None
    aliases: dict = field(default_factory=dict)
    listed: int = 0

    @property
    def r(self) -> int:
        return len(self.entries)

    def census(self) -> dict:
        out: dict = {}
        for e in self.entries:
            out[e.degree] = out.get(e.degree, 0) + 1
        return dict(sorted(out.items()))


def _digits(md: str) -> tuple:
    return tuple(int(ch) for ch in md)


def _split_blocks(text: str):
    block = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("=="):
            if block is not None:
                yield block
            block = {"spec": line[2:].strip(), "lines": []}
        elif block is not None:
            block["lines"].append(line)
    if block is not None:
        yield block


def _header(lines, keys):
    meta = {"alias": []}
    body = []
    for line in lines:
        head, sep, rest = line.partition(":")
        if sep and head.strip() in keys and "(" not in head:
            k = head.strip()
            if k == "alias":
                meta["alias"].append(rest.strip())
            else:
                meta[k] = rest.strip()
        else:
            body.append(line)
    return meta, body


def _aliases(defs, orders):
    table = {}
    for d in defs:
        name, _, rhs = d.partition("=")
        table[name.strip()] = rhs.strip()
    return parse_aliases(table, orders)


def parse_generator_table(text: str) -> GeneratorTable:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    meta, body = _header([ln for ln in lines if ln], ("spec", "names", "bound", "alias", "symmetric"))
    if "spec" not in meta:
        raise CatalogError("table lacks a spec line")
    names = tuple(n.strip() for n in meta["names"].split(",")) if "names" in meta else None
    spec = ModuleSpec.parse(meta["spec"], names=names)
    orders = spec.symbol_degrees()
    aliases = _aliases(meta["alias"], orders)
    sym = [s.strip() for s in meta.get("symmetric", "").split(",") if s.strip()]
    entries = []
    listed = 0
    for line in body:
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise CatalogError(f"bad table line {line!r}")
        deg, md, etext = int(parts[0]), _digits(parts[1]), parts[2]
        e = parse_expr(etext, aliases=aliases, orders=orders)
        listed += 1
        got = multidegree(e, spec.names, orders)
        if got != md or sum(md) != deg:
            raise CatalogError(f"{etext}: grading {got} disagrees with annotation {parts[0]} {parts[1]}")
        if order(e, orders) != 0:
            raise CatalogError(f"{etext}: not of order 0")
        images = [(e, md)]
        if sym:
            images = []
            for perm in permutations(sym):
                mapping = dict(zip(sym, perm))
                img = rename(e, mapping)
                new_md = list(md)
                for src, dst in zip(sym, perm):
                    new_md[spec.names.index(dst)] = md[spec.names.index(src)]
                images.append((img, tuple(new_md)))
        seen = set()
        for img, imd in images:
            if imd in seen:
                continue
            seen.add(imd)
            entries.append(CatalogEntry(img, deg, imd, print_expr(img)))
    bound = int(meta["bound"]) if "bound" in meta else None
    entries.sort(key=lambda c: (c.degree, tuple(-x for x in c.multidegree)))
    return GeneratorTable(spec, entries, bound, aliases, listed)


GENERATOR_TABLES = ("1,2,3", "1,2,4", "2,2,3", "2,2,4", "4,4,4", "3,4")


def generator_table(spec_key: str) -> GeneratorTable:
    return parse_generator_table(_read(f"generators_{spec_key.replace(',', '_')}.txt"))


@dataclass
class HsopEntry:
    spec: ModuleSpec
    exprs: list
    degrees: list
    texts: list


def parse_block_catalog(text: str, with_orders: bool = False):
    out = []
    for blk in _split_blocks(text):
        meta, body = _header(blk["lines"], ("names", "degrees", "alias"))
        names = tuple(n.strip() for n in meta["names"].split(",")) if "names" in meta else None
        spec = ModuleSpec.parse(blk["spec"], names=names)
        orders = spec.symbol_degrees()
        aliases = _aliases(meta["alias"], orders)
        exprs, texts, ords = [], [], []
        for line in body:
            if with_orders:
                etext, _, o = line.rpartition(" ")
                ords.append(int(o))
            else:
                etext = line
            exprs.append(parse_expr(etext, aliases=aliases, orders=orders))
            texts.append(etext)
        degs = [int(x) for x in meta["degrees"].split(",")] if "degrees" in meta else None
        out.append((spec, exprs, texts, degs, ords))
    return out


@lru_cache(maxsize=1)
def hsop_catalog() -> dict:
    """{spec key: HsopEntry}."""
    return {spec.key(): HsopEntry(spec, exprs, degs, texts)
            for spec, exprs, texts, degs, _ in parse_block_catalog(_read("hsops.txt"))}


@lru_cache(maxsize=1)
def covariant_bases() -> dict:
    """{spec key: (spec, [(expr, order)])}."""
    out = {}
    for spec, exprs, _, _, ords in parse_block_catalog(_read("covariants.txt"), with_orders=True):
        orders = spec.symbol_degrees()
        for e, o in zip(exprs, ords):
            if order(e, orders) != o:
                raise CatalogError(f"{print_expr(e)} has order {order(e, orders)}, listed {o}")
        out[spec.key()] = (spec, list(zip(exprs, ords)))
    return out
