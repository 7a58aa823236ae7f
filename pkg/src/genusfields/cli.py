"""Command-line front door: `genusctl`.

Subcommands `number`, `function`, and `oracle` read a field descriptor
document and print a genus report; `selftest` runs the nine verification
suites.  Reports are deterministic: identical inputs produce byte
identical output, both in the fixed-width human form and with `--json`.

Exit codes: 0 success, 1 selftest failure, 2 schema violation, 3 bound
exceeded, 4 insufficient precision (level too small).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import reduce

from . import (abelian, characters, fqpoly, genus_function, genus_number,
               oracle, selftest)
from .errors import (BoundExceededError, GenusError, PrecisionError,
                     SchemaError)


# ---------------------------------------------------------------------------
# Minimal line-oriented parser for the TOML-style document format.
# Supports: comments, [table] and [[array-of-tables]] headers, and
# key = value with integers, booleans, quoted strings, and (nested)
# arrays of those.

def parse_document(text):
    root = {}
    current = root
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[["):
            if not line.endswith("]]"):
                raise SchemaError(f"line {lineno}: malformed table header")
            path = line[2:-2].strip()
            parent, leaf = _descend(root, path, lineno)
            entry = {}
            parent.setdefault(leaf, [])
            if not isinstance(parent[leaf], list):
                raise SchemaError(
                    f"line {lineno}: {path} is not an array of tables")
            parent[leaf].append(entry)
            current = entry
        elif line.startswith("["):
            if not line.endswith("]"):
                raise SchemaError(f"line {lineno}: malformed table header")
            path = line[1:-1].strip()
            parent, leaf = _descend(root, path, lineno)
            entry = parent.setdefault(leaf, {})
            if not isinstance(entry, dict):
                raise SchemaError(f"line {lineno}: {path} is not a table")
            current = entry
        else:
            if "=" not in line:
                raise SchemaError(f"line {lineno}: expected key = value")
            key, _, rest = line.partition("=")
            key = key.strip()
            if not key:
                raise SchemaError(f"line {lineno}: empty key")
            value, tail = _parse_value(rest.strip(), lineno)
            if tail.strip():
                raise SchemaError(f"line {lineno}: trailing garbage {tail!r}")
            if key in current:
                raise SchemaError(f"line {lineno}: duplicate key {key!r}")
            current[key] = value
    return root


def _descend(root, path, lineno):
    if not path:
        raise SchemaError(f"line {lineno}: empty table name")
    parts = [p.strip() for p in path.split(".")]
    node = root
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise SchemaError(f"line {lineno}: {part} is not a table")
    return node, parts[-1]


def _parse_value(s, lineno):
    if not s:
        raise SchemaError(f"line {lineno}: missing value")
    if s[0] == '"':
        end = s.find('"', 1)
        if end < 0:
            raise SchemaError(f"line {lineno}: unterminated string")
        return s[1:end], s[end + 1:]
    if s[0] == "[":
        out = []
        rest = s[1:].lstrip()
        while True:
            if not rest:
                raise SchemaError(f"line {lineno}: unterminated array")
            if rest[0] == "]":
                return out, rest[1:]
            item, rest = _parse_value(rest, lineno)
            out.append(item)
            rest = rest.lstrip()
            if rest.startswith(","):
                rest = rest[1:].lstrip()
            elif not rest.startswith("]"):
                raise SchemaError(f"line {lineno}: expected , or ] in array")
    for word, val in (("true", True), ("false", False)):
        if s.startswith(word) and (len(s) == len(word)
                                   or not s[len(word)].isalnum()):
            return val, s[len(word):]
    i = 0
    if s[0] in "+-":
        i = 1
    while i < len(s) and s[i].isdigit():
        i += 1
    if i == 0 or (i == 1 and s[0] in "+-"):
        raise SchemaError(f"line {lineno}: cannot parse value {s!r}")
    return int(s[:i]), s[i:]


def load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read spec file: {exc}") from exc
    doc = parse_document(text)
    if "kind" not in doc:
        raise SchemaError("document is missing the 'kind' field")
    return doc


# ---------------------------------------------------------------------------
# Document interpretation

def _need(doc, key, types, where="document"):
    if key not in doc:
        raise SchemaError(f"{where} is missing the {key!r} field")
    value = doc[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"{where}: field {key!r} has the wrong type")
    return value


def _field_from_doc(doc):
    q = _need(doc, "q", int)
    s = 1
    p = q
    for cand in (2, 3, 5, 7, 11, 13):
        k = 0
        n = q
        while n % cand == 0:
            n //= cand
            k += 1
        if n == 1 and k >= 1:
            p, s = cand, k
            break
    try:
        return fqpoly.fq_field(p, s)
    except (SchemaError, ValueError) as exc:
        raise SchemaError(f"invalid field size q={q}: {exc}") from exc


def _poly_from_doc(fld, coeffs, where):
    if not isinstance(coeffs, list) or not all(
            isinstance(c, int) for c in coeffs):
        raise SchemaError(f"{where}: expected an integer coefficient array")
    if any(c < 0 or c >= fld.q for c in coeffs):
        raise SchemaError(f"{where}: coefficients must lie in 0..{fld.q - 1}")
    return fqpoly.poly(fld, tuple(coeffs))


def _character_group_from_doc(amb, doc):
    vectors = doc.get("characters", [])
    if vectors == "full":
        return characters.full_dual(amb)
    if not isinstance(vectors, list):
        raise SchemaError("'characters' must be an array of exponent vectors")
    chars = []
    for vec in vectors:
        if not isinstance(vec, list) or not all(
                isinstance(e, int) for e in vec):
            raise SchemaError("character exponent vectors must be integer "
                              "arrays")
        if len(vec) != amb.group.rank:
            raise SchemaError(
                f"character vector {vec} has length {len(vec)}, expected "
                f"{amb.group.rank} (one exponent per canonical generator)")
        chars.append(characters.Character(amb, tuple(vec)))
    return characters.character_group(amb, chars)


def _numeric_ambient_from_doc(doc, bound):
    kind = doc["kind"]
    if kind == "number-quadratic":
        d = _need(doc, "discriminant", int)
        chi = characters.kronecker_character(d)
        _check_bound(chi.ambient.group.order, bound)
        return chi.ambient, characters.character_group(chi.ambient, [chi])
    n = _need(doc, "modulus", int)
    if n < 1:
        raise SchemaError("modulus must be positive")
    if n in (1, 2):
        raise SchemaError("modulus must be at least 3 (use modulus 3 with "
                          "no characters for the rational field)")
    amb = characters.numeric_ambient(n)
    _check_bound(amb.group.order, bound)
    return amb, _character_group_from_doc(amb, doc)


def _ff_ambient_from_doc(doc, bound):
    fld = _field_from_doc(doc)
    n = _poly_from_doc(fld, _need(doc, "modulus", list), "modulus")
    if n.degree < 1:
        raise SchemaError("modulus must have degree at least 1")
    factored = fqpoly.factor_modulus(n)
    amb = characters.ff_ambient(factored)
    _check_bound(amb.group.order, bound)
    return amb, _character_group_from_doc(amb, doc)


def _check_bound(size, bound):
    if bound is not None and size > bound:
        raise BoundExceededError(
            f"structure of size {size} exceeds the bound {bound}")


# ---------------------------------------------------------------------------
# Report payloads

def _generator_header(amb):
    gens = []
    for g, d in zip(amb.generators, amb.group.invariant_factors):
        gens.append({"residue": str(g), "order": d})
    return gens


def _abelian_number_payload(doc, bound):
    amb, x = _numeric_ambient_from_doc(doc, bound)
    report = genus_number.build_report(x)
    return {
        "kind": doc["kind"],
        "modulus": report.modulus,
        "unit_group": str(amb.group),
        "generators": _generator_header(amb),
        "characters": [list(chi.exponents) for chi in x.generators()],
        "field_degree": report.field_degree,
        "genus_degree_over_field": report.genus_degree_over_k,
        "extended_degree_over_field": report.extended_degree_over_k,
        "gap": report.gap,
        "conductor": report.conductor,
        "primes": [
            {"prime": label, "e": e, "tame": tame, "wild": wild,
             "component_degree": comp}
            for label, e, tame, wild, comp in report.prime_table],
    }


def _abelian_function_payload(doc, bound):
    amb, x = _ff_ambient_from_doc(doc, bound)
    extended = genus_function.extended_genus_characters_ff(x)
    genus = genus_function.genus_characters_ff(x)
    comps = genus_function.component_fields(x)
    ram = characters.ramification_exponents(x)
    primes = []
    for key in sorted(comps, key=lambda k: (k.degree, k.code())):
        deg, cond_exp = comps[key]
        info = ram.get(key, {"e": 1, "tame": 1, "wild": 1})
        primes.append({"prime": str(key), "e": info["e"],
                       "tame": info["tame"], "wild": info["wild"],
                       "component_degree": deg,
                       "conductor_exponent": cond_exp})
    return {
        "kind": doc["kind"],
        "q": amb.field.q,
        "modulus": amb.modulus_label(),
        "unit_group": str(amb.group),
        "generators": _generator_header(amb),
        "characters": [list(chi.exponents) for chi in x.generators()],
        "field_degree": x.order,
        "genus_degree_over_field": genus.order // x.order,
        "extended_degree_over_field": extended.order // x.order,
        "gap": extended.order // genus.order,
        "conductor": str(characters.conductor_of_group(extended)),
        "primes": primes,
    }


def _subgroup_from_residues(units, residues, where):
    vecs = []
    for r in residues:
        if not isinstance(r, int):
            raise SchemaError(f"{where}: residues must be integers")
        try:
            vecs.append(units.dlog(r))
        except (ValueError, KeyError) as exc:
            raise SchemaError(f"{where}: {r} is not a unit") from exc
    return abelian.subgroup_from_generators(units.group, vecs)


def _local_number_payload(doc, bound, level_flag):
    p = _need(doc, "p", int)
    level = _need(doc, "level", int)
    if level_flag is not None and level_flag != level:
        raise SchemaError(
            f"--level {level_flag} does not match the document level {level}")
    modulus = p ** level
    _check_bound(modulus, bound)
    units = abelian.unit_group(modulus)
    primes = doc.get("primes")
    if not isinstance(primes, list) or not primes:
        raise SchemaError("number-local document needs [[primes]] entries")
    records = []
    subs = []
    for i, entry in enumerate(primes):
        where = f"primes[{i}]"
        e = _need(entry, "e", int, where)
        f = _need(entry, "f", int, where)
        residues = _need(entry, "norm_residues", list, where)
        h = _subgroup_from_residues(units, residues, where)
        subs.append(h)
        records.append(genus_number.PrimeAboveData(e, f, h))
    data = genus_number.LocalPrimeData(p, level, tuple(records))
    degree = genus_number.lp_degree_from_local(data)
    stable = genus_number.lp_degree_is_stable(data)
    payload = {
        "kind": doc["kind"],
        "p": p,
        "level": level,
        "unit_group": str(units.group),
        "local_degree": degree,
        "level_stable": stable,
        "norm_indices": [h.index for h in subs],
    }
    if p == 2:
        h = reduce(abelian.intersect, subs)
        out = genus_number.classify_l2(h, modulus)
        payload["two_adic"] = {"tag": out.tag, "m": out.m,
                               "field": out.field_label}
    elif p > 2:
        payload["tame_degree"] = genus_number.tame_degree(
            p, [rec.e for rec in records])
    return payload


def _local_function_payload(doc, bound, level_flag):
    fld = _field_from_doc(doc)
    n_max = _need(doc, "n_max", int)
    if level_flag is not None and level_flag != n_max:
        raise SchemaError(
            f"--level {level_flag} does not match the document n_max {n_max}")
    _check_bound((fld.q - 1) * fld.q ** max(n_max - 1, 0), bound)
    infinity = genus_function.InfinityUnits(fld, n_max)
    entries = doc.get("primes")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("function-local document needs [[primes]] entries")
    records = []
    for i, entry in enumerate(entries):
        where = f"primes[{i}]"
        e = _need(entry, "e", int, where)
        t = _need(entry, "t", int, where)
        h = None
        if "norm_generators" in entry:
            gens = entry["norm_generators"]
            if gens == "full":
                h = infinity.full_subgroup()
            else:
                if not isinstance(gens, list):
                    raise SchemaError(f"{where}: norm_generators must be an "
                                      "array or \"full\"")
                elements = []
                for vec in gens:
                    if not isinstance(vec, list) \
                            or len(vec) != max(n_max, 1) \
                            or not all(isinstance(c, int) for c in vec):
                        raise SchemaError(
                            f"{where}: each norm generator is "
                            f"[c, a_1, ..., a_{n_max - 1}]")
                    c, tail = vec[0], tuple(vec[1:])
                    if not 1 <= c < fld.q \
                            or any(a < 0 or a >= fld.q for a in tail):
                        raise SchemaError(
                            f"{where}: generator entries must be field "
                            "elements with a nonzero constant part")
                    elements.append((c, tail))
                h = infinity.subgroup(elements)
        records.append(genus_function.InfinitePrimeRecord(e, t, h))
    data = genus_function.InfinitePrimeData(tuple(records))
    inv = genus_function.s_field_invariants(data, infinity)
    return {
        "kind": doc["kind"],
        "q": fld.q,
        "n_max": n_max,
        "infinity_unit_group": str(infinity.group),
        "t0": inv.t0,
        "n0": inv.n0,
        "m0": inv.m0,
        "alpha": inv.alpha,
        "f_infinity": inv.f_infinity,
    }


def _oracle_payload(doc, bound):
    kind = doc["kind"]
    if kind in ("number-abelian", "number-quadratic"):
        amb, x = _numeric_ambient_from_doc(doc, bound)
        closed_extended = genus_number.extended_genus_characters(x)
        closed_genus = genus_number.genus_characters(x)
    elif kind == "function-abelian":
        amb, x = _ff_ambient_from_doc(doc, bound)
        closed_extended = genus_function.extended_genus_characters_ff(x)
        closed_genus = genus_function.genus_characters_ff(x)
    else:
        raise SchemaError(f"the oracle subcommand does not apply to {kind!r}")
    _check_bound(amb.group.order, bound)
    lattice = oracle.enumerate_subfields(amb)
    extended = oracle.maximal_extended_search(x)
    payload = {
        "kind": kind,
        "modulus": amb.modulus_label(),
        "subgroup_count": len(lattice.subgroups),
        "field_degree": x.order,
        "extended_degree": extended.order,
        "extended_matches_closed_form": extended == closed_extended,
    }
    if amb.kind == "number":
        genus = oracle.maximal_genus_search(x)
        payload["genus_degree"] = genus.order
        payload["genus_matches_closed_form"] = genus == closed_genus
    return payload


# ---------------------------------------------------------------------------
# Rendering

def _human_lines(payload):
    lines = []
    title = payload.get("kind", "report")
    lines.append(f"genusctl report ({title})")
    lines.append("-" * 60)
    primes = payload.get("primes")
    for key in sorted(payload):
        if key in ("kind", "primes", "generators", "characters", "two_adic"):
            continue
        lines.append(f"  {key:<28} {payload[key]}")
    for key in ("generators", "characters"):
        if key in payload:
            lines.append(f"  {key:<28} "
                         + json.dumps(payload[key], sort_keys=True))
    if "two_adic" in payload:
        lines.append(f"  {'two_adic':<28} "
                     + json.dumps(payload["two_adic"], sort_keys=True))
    if primes:
        lines.append("")
        header = list(primes[0].keys())
        lines.append("  " + "  ".join(f"{h:>18}" for h in header))
        for row in primes:
            lines.append("  " + "  ".join(f"{str(row[h]):>18}"
                                          for h in header))
    return lines


def _emit(payload, as_json, stream):
    if as_json:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        stream.write("\n".join(_human_lines(payload)) + "\n")


# ---------------------------------------------------------------------------
# Entry point

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="genusctl",
        description="Genus fields of abelian extensions of Q and F_q(T).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
            ("number", "genus report for a number-field descriptor"),
            ("function", "genus report for a function-field descriptor"),
            ("oracle", "exhaustive-search cross-check of a descriptor"),
            ("selftest", "run the nine verification suites")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--spec", metavar="PATH",
                       help="field descriptor document")
        p.add_argument("--level", type=int, metavar="M",
                       help="working level; must match the document")
        p.add_argument("--bound", type=int, metavar="B",
                       help="enumeration bound (overrides GENUSCTL_BOUND)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
    return parser


def _effective_bound(args):
    if args.bound is not None:
        if args.bound < 1:
            raise SchemaError("--bound must be positive")
        return args.bound
    env = os.environ.get("GENUSCTL_BOUND")
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise SchemaError(
                f"GENUSCTL_BOUND is not an integer: {env!r}") from exc
        if value < 1:
            raise SchemaError("GENUSCTL_BOUND must be positive")
        return value
    return None


def _run_selftest(args, bound, stream):
    results = selftest.run_all(bound)
    if args.json:
        payload = {
            "ok": all(r.ok for r in results),
            "criteria": [
                {"number": r.number, "name": r.name, "ok": r.ok,
                 "detail": r.detail} for r in results],
        }
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for r in results:
            stream.write(r.line() + "\n")
    return 0 if all(r.ok for r in results) else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    stream = sys.stdout
    try:
        bound = _effective_bound(args)
        if args.command == "selftest":
            if args.spec is not None:
                raise SchemaError("selftest does not take a spec document")
            return _run_selftest(args, bound, stream)
        if args.spec is None:
            raise SchemaError(f"the {args.command} subcommand needs --spec")
        doc = load_document(args.spec)
        kind = doc["kind"]
        if args.command == "number":
            if kind in ("number-abelian", "number-quadratic"):
                if args.level is not None:
                    raise SchemaError(
                        "--level applies only to local descriptors")
                payload = _abelian_number_payload(doc, bound)
            elif kind == "number-local":
                payload = _local_number_payload(doc, bound, args.level)
            else:
                raise SchemaError(
                    f"kind {kind!r} is not a number-field descriptor")
        elif args.command == "function":
            if kind == "function-abelian":
                if args.level is not None:
                    raise SchemaError(
                        "--level applies only to local descriptors")
                payload = _abelian_function_payload(doc, bound)
            elif kind == "function-local":
                payload = _local_function_payload(doc, bound, args.level)
            else:
                raise SchemaError(
                    f"kind {kind!r} is not a function-field descriptor")
        else:
            payload = _oracle_payload(doc, bound)
        _emit(payload, args.json, stream)
        return 0
    except SchemaError as exc:
        print(f"genusctl: schema error: {exc}", file=sys.stderr)
        return 2
    except BoundExceededError as exc:
        print(f"genusctl: bound exceeded: {exc}", file=sys.stderr)
        return 3
    except PrecisionError as exc:
        print(f"genusctl: insufficient precision: {exc}", file=sys.stderr)
        return 4
    except GenusError as exc:
        print(f"genusctl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
