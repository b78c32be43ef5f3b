# -*- coding: utf-8 -*-
import argparse
import sys

import mpmath as mp

from src import config
from src.algebra import finite_dbsf, make_relation, shuffle_indices, stuffle
from src.constants import parse_form
from src.core import IndexSyntaxError, InadmissibleError, LinComb, parse_index, parse_symbol
from src.db import export_jsonl, init_db
from src.numerics import BudgetExceeded, PrecReal, PrecisionError, check_budget, eval_form, eval_index, eval_word
from src.orchestrator import log_event, run_suite, write_report
from src.regularization import RegularizationError, reg_dbsf
from src.relations import (SOURCES, RelationRejected, RelationStore, check_weight, harvest, pslq,
                           rank_and_dims, validate_relation)
from src.utils import setup_logger
from src.words import DualityDomainError, WordError, dual_word, p_map, parse_word, q_image, word_to_cmzv

logger = setup_logger()

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _print_value(label: str, v, digits: int):
    print(f"{label} = {mp.nstr(v.value, digits)}")
    print(f"   err ≤ {mp.nstr(v.err, 3)}  ({digits} digits)")


def _emit(relations, out: str = None):
    for rel in relations:
        print(f"   {rel}   [{rel.provenance}, residual {rel.residual or '-'}]")
    if out and relations:
        export_jsonl([rel.to_record() for rel in relations], out)
        print(f"📝 Appended {len(relations)} relation(s) to {out}")


def cmd_eval(args) -> int:
    text = args.symbol.strip()
    check_budget(args.digits, args.allow_high_precision)
    if text.startswith("w"):
        w = parse_word(text)
        v = eval_word(w, args.digits, args.allow_high_precision)
    else:
        c, idx = parse_symbol(text)
        v = eval_index(idx, args.digits, args.allow_high_precision)
        if c != 1:
            print(f"🔎 {text} = {c} * {idx}")
            with mp.workdps(args.digits + 15):
                q = mp.mpf(c.numerator) / c.denominator
                v = PrecReal(q * v.value, abs(q) * v.err, v.digits)
        w = p_map(idx)[1] if idx.comps else None
    _print_value(text, v, args.digits)

    if args.show_word and w is not None:
        comb = word_to_cmzv(w)
        print(f"🧵 word: {w}")
        print(f"   level-4 real part: {comb.real!r}")
        print(f"   level-4 imaginary part: {comb.imag!r}")
    return EXIT_OK if v.ok else EXIT_BUDGET


def cmd_product(args) -> int:
    i, j = parse_index(args.left), parse_index(args.right)
    result = shuffle_indices(i, j) if args.kind == "shuffle" else stuffle(i, j)
    print(f"{i} {'sh' if args.kind == 'shuffle' else '*'} {j} =")
    print(f"   {result!r}")
    return EXIT_OK


def cmd_dbsf(args) -> int:
    rel = finite_dbsf(parse_index(args.left), parse_index(args.right))
    if not rel.terms:
        print("ℹ️ Shuffle and stuffle agree term by term; no relation.")
        return EXIT_OK
    try:
        rel = validate_relation(rel, args.digits)
    except RelationRejected as e:
        print(f"❌ {e}")
        return EXIT_FAILED
    _emit([rel], args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    i = parse_index(args.index)
    sign, w = p_map(i)
    image = q_image(dual_word(w)) * sign
    print(f"{i} = {image!r}")
    terms = LinComb.of(i) - image
    if not terms:
        print("ℹ️ Self-dual; no relation.")
        return EXIT_OK
    rel = validate_relation(make_relation(terms, "duality", note=f"dual of {i}"), args.digits)
    _emit([rel], args.out)
    return EXIT_OK


def cmd_reg(args) -> int:
    i = parse_index(args.left)
    j = parse_index(args.right) if args.right else parse_index("M()")
    rels = reg_dbsf(i, j)
    if not rels:
        print("ℹ️ No relation from this pair.")
        return EXIT_OK
    checked, failed = [], 0
    for rel in rels:
        try:
            checked.append(validate_relation(rel, args.digits))
        except RelationRejected as e:
            print(f"❌ {e}")
            failed += 1
    _emit(checked, args.out)
    return EXIT_FAILED if failed else EXIT_OK


def _harvest(args, weight: int, store: RelationStore):
    added = harvest(weight, store, args.sources, args.digits, args.jobs, args.cache,
                    args.allow_large_weight)
    print(f"🌾 Weight {weight}: {len(added)} new relation(s), {len(store.by_weight(weight))} stored")
    log_event("HARVEST", f"weight {weight}: {len(added)} added", args.store)
    if args.out:
        export_jsonl([rel.to_record() for rel in added], args.out)
    return added


def cmd_harvest(args) -> int:
    check_weight(args.weight, args.allow_large_weight)
    store = RelationStore(args.store)
    _harvest(args, args.weight, store)
    return EXIT_OK


def cmd_dims(args) -> int:
    check_weight(args.weight, args.allow_large_weight)
    store = RelationStore(args.store)
    if not args.no_harvest:
        _harvest(args, args.weight, store)
    report = rank_and_dims(args.weight, store, args.allow_large_weight)
    print(f"📐 Weight {args.weight}: {report.symbols} symbols, rank {report.rank}")
    print(f"{'space':<6} {'bound':>6} {'conj':>6} {'gap':>5}")
    for space, bound, conj, gap in report.rows():
        print(f"{space:<6} {bound:>6} {conj if conj is not None else '-':>6} {gap if gap is not None else '-':>5}")
    if not report.sound:
        print("❌ A bound fell below its conjectured value; some stored relation is wrong.")
        return EXIT_FAILED
    return EXIT_OK


def cmd_pslq(args) -> int:
    forms = [parse_form(text) for text in args.values]
    values = [eval_form(f, args.digits + 5) for f in forms]
    vec = pslq(values, args.digits, args.bits)
    if vec is None:
        print("ℹ️ No integer relation within the coefficient bound.")
        return EXIT_OK
    print("🔗 " + " + ".join(f"({c})*{t}" for c, t in zip(vec, args.values)) + " = 0")
    if args.out:
        try:
            symbols = [parse_symbol(t) for t in args.values]
        except (IndexSyntaxError, ValueError):
            print("⚠️ Only M and family values can be stored; relation not written.")
            return EXIT_OK
        terms = LinComb()
        for c, (scale, idx) in zip(vec, symbols):
            terms += LinComb.of(idx, c * scale)
        rel = validate_relation(make_relation(terms, "pslq", note="integer relation search"), args.digits)
        _emit([rel], args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    init_db(args.store)
    runs = run_suite(args.suite, args.digits, args.jobs, args.store)
    path = write_report(runs, args.report)
    failed = [r for r in runs if not r.result.passed]
    print(f"📄 Report written to {path}")
    if failed:
        print(f"❌ {len(failed)} of {len(runs)} checks failed: {', '.join(r.result.check_id for r in failed)}")
        return EXIT_FAILED
    print(f"✅ All {len(runs)} checks passed")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "product": cmd_product,
    "dbsf": cmd_dbsf,
    "dual": cmd_dual,
    "reg": cmd_reg,
    "harvest": cmd_harvest,
    "dims": cmd_dims,
    "pslq": cmd_pslq,
    "verify-paper": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(description="Alternating multiple mixed values toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def precise(p, default=config.DEFAULT_DIGITS):
        p.add_argument("--digits", type=int, default=default)
        p.add_argument("--allow-high-precision", action="store_true")

    def stored(p):
        p.add_argument("--out", help="append relations as JSON lines")

    # --- eval command ---
    p_eval = subparsers.add_parser("eval", help="value of M(...), Z/t/T/S(...) or a word")
    p_eval.add_argument("symbol")
    p_eval.add_argument("--show-word", action="store_true")
    precise(p_eval)

    # --- product command ---
    p_prod = subparsers.add_parser("product", help="shuffle or stuffle product of two indices")
    p_prod.add_argument("--kind", choices=["shuffle", "stuffle"], required=True)
    p_prod.add_argument("left")
    p_prod.add_argument("right")

    # --- dbsf / dual / reg commands ---
    p_dbsf = subparsers.add_parser("dbsf", help="finite double shuffle relation")
    p_dbsf.add_argument("left")
    p_dbsf.add_argument("right")
    precise(p_dbsf)
    stored(p_dbsf)

    p_dual = subparsers.add_parser("dual", help="duality image of an index")
    p_dual.add_argument("index")
    precise(p_dual)
    stored(p_dual)

    p_reg = subparsers.add_parser("reg", help="regularized double shuffle relations")
    p_reg.add_argument("left")
    p_reg.add_argument("right", nargs="?")
    precise(p_reg)
    stored(p_reg)

    # --- harvest / dims commands ---
    for name, help_text in (("harvest", "fill the relation store"), ("dims", "dimension bounds")):
        p = subparsers.add_parser(name, help=help_text)
        p.add_argument("--weight", type=int, required=True)
        p.add_argument("--sources", nargs="+", choices=SOURCES, default=list(SOURCES))
        p.add_argument("--jobs", type=int, default=config.JOBS)
        p.add_argument("--store", default=config.STORE_URL)
        p.add_argument("--cache", default=config.CACHE_URL)
        p.add_argument("--allow-large-weight", action="store_true")
        precise(p)
        stored(p)
        if name == "dims":
            p.add_argument("--no-harvest", action="store_true")

    # --- pslq command ---
    p_pslq = subparsers.add_parser("pslq", help="integer relation among values")
    p_pslq.add_argument("values", nargs="+", help="closed forms such as 'zeta(2)' or 'M(b2,c1)'")
    p_pslq.add_argument("--bits", type=int, default=20)
    precise(p_pslq)
    stored(p_pslq)

    # --- verify-paper command ---
    p_verify = subparsers.add_parser("verify-paper", help="run the identity catalogue")
    p_verify.add_argument("--suite", default="all",
                          choices=["products", "regularization", "duality", "arctan", "parity", "values",
                                   "relations", "all"])
    p_verify.add_argument("--digits", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=config.JOBS)
    p_verify.add_argument("--report", default=config.REPORT_FILE)
    p_verify.add_argument("--store", default=config.STORE_URL)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return COMMANDS[args.command](args)
    except IndexSyntaxError as e:
        print(f"❌ Parse error: {e}")
        print(f"   {e.text}\n   {' ' * e.position}^")
        return EXIT_USAGE
    except (BudgetExceeded, PrecisionError) as e:
        print(f"⛔ {e}")
        return EXIT_BUDGET
    except (WordError, InadmissibleError, DualityDomainError, RegularizationError) as e:
        print(f"❌ {e}")
        return EXIT_USAGE
    except RelationRejected as e:
        print(f"❌ {e}")
        return EXIT_FAILED
    except ValueError as e:
        print(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
