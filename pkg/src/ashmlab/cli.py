"""Command-line workbench: validation, squares, decompositions, enumeration.

Exit codes: 0 success, 1 validation/check failure, 2 usage errors.  Data
goes to stdout, diagnostics to stderr, so output can be piped.  ``--json``
switches machine-readable output on where it applies.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import acceptance, construct, enumerate as enumeration
from .core import AshmlabError, ParseError, SignTensor, dumps_ashm_json, dumps_ashm_txt, loads_ashm_txt, validate_ashm
from .latinlike import ashl_of, decompose_latin, dumps_ashl_txt, entry_histogram, loads_ashl_txt, max_multiplicity
from .tblocks import decompose_difference, decompose_paired, depth_ledger, same_ashl_certificate


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise AshmlabError(f"cannot read {path}: {e.strerror}") from None


def _load_tensor(path: str) -> SignTensor:
    text = _read_text(path)
    try:
        return loads_ashm_txt(text)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from None


def _blocks_payload(blocks) -> dict:
    ledger = depth_ledger(blocks)
    return {
        "blocks": [str(b) for b in blocks],
        "depth_ledger": {f"{i},{j}": ds for (i, j), ds in sorted(ledger.items())},
    }


def _cmd_validate(args) -> int:
    t = _load_tensor(args.file)
    report = validate_ashm(t)
    if args.json:
        print(json.dumps({
            "n": t.n,
            "valid": report.valid,
            "nonzeros": t.nonzero_count(),
            "failing_lines": [list(x) for x in report.failing_lines],
        }))
    elif report.valid:
        print(f"valid ASHM, {t.nonzero_count()} non-zero entries")
    else:
        print(f"invalid: {len(report.failing_lines)} bad lines", file=sys.stderr)
        for kind, f1, f2 in report.failing_lines:
            print(f"  {kind} line at ({f1},{f2})", file=sys.stderr)
    return 0 if report.valid else 1


def _cmd_ashl(args) -> int:
    t = _load_tensor(args.file)
    l = ashl_of(t)
    if args.json:
        payload = {"n": t.n, "ashl": l.tolist()}
        if args.histogram:
            payload["histogram"] = entry_histogram(l)
        print(json.dumps(payload))
    else:
        sys.stdout.write(dumps_ashl_txt(l))
        if args.histogram:
            hist = entry_histogram(l)
            for v in sorted(hist):
                print(f"# {v}: {hist[v]}")
    return 0


def _cmd_decompose_latin(args) -> int:
    l = loads_ashl_txt(_read_text(args.file))
    seq = decompose_latin(l)
    sys.stdout.write(dumps_ashm_txt(seq.stack(), comment=f"latin square decomposition, n={seq.n}"))
    return 0


def _cmd_construct(args) -> int:
    if args.what == "diamond":
        variant = "flipped" if args.flipped else "canonical"
        m = construct.diamond_asm(args.n, variant)
        t = None
        lines = [str(m.n)] + [" ".join(str(m.entry(i, j)) for j in range(1, m.n + 1)) for i in range(1, m.n + 1)]
        print("\n".join(lines))
        return 0
    t = construct.max_entry_ashm(args.n)
    sys.stdout.write(dumps_ashm_txt(t, comment=f"max-entry construction, n={args.n}"))
    return 0


def _cmd_fixture(args) -> int:
    got = construct.fixture(args.name)
    tensors = got if isinstance(got, tuple) else (got,)
    if args.member is not None:
        tensors = (tensors[args.member],)
    for idx, t in enumerate(tensors):
        sys.stdout.write(dumps_ashm_txt(t, comment=f"fixture {args.name}[{idx}]"))
    return 0


def _cmd_diff_decompose(args) -> int:
    a, b = _load_tensor(args.file_a), _load_tensor(args.file_b)
    blocks = decompose_difference(a, b)
    print(json.dumps(_blocks_payload(blocks)))
    return 0


def _cmd_pair_decompose(args) -> int:
    a, b = _load_tensor(args.file_a), _load_tensor(args.file_b)
    pairs = decompose_paired(a, b)
    payload = _blocks_payload([x for pr in pairs for x in pr])
    payload["pairs"] = [[str(x), str(y)] for x, y in pairs]
    print(json.dumps(payload))
    return 0


def _cmd_certify(args) -> int:
    a, b = _load_tensor(args.file_a), _load_tensor(args.file_b)
    cert = same_ashl_certificate(a, b)
    payload = {
        "equal_ashl": cert.equal_ashl,
        "depth_sums_all_zero": cert.depth_sums_all_zero,
        "theorem_consistent": cert.theorem_consistent,
        "blocks": [str(x) for x in cert.blocks],
        "depth_sums": {f"{i},{j}": s for (i, j), s in sorted(cert.depth_sums().items())},
    }
    print(json.dumps(payload))
    if not cert.theorem_consistent:
        print("counterexample: direct comparison and depth criterion disagree", file=sys.stderr)
        return 1
    return 0 if cert.equal_ashl else 1


def _shard_members(task) -> list:
    n, cap, which, count = task
    return list(enumeration.enumerate_ashms(n, cap=cap, allow_huge=True, shard=(which, count)))


def _cmd_enumerate(args) -> int:
    if args.kind == "asm":
        stream = enumeration.enumerate_asms(args.n, cap=args.cap)
        if args.count_only:
            print(sum(1 for _ in stream))
            return 0
        for m in stream:
            print(m.n)
            for i in range(1, m.n + 1):
                print(" ".join(str(m.entry(i, j)) for j in range(1, m.n + 1)))
            print()
        return 0
    stream = enumeration.enumerate_ashms(args.n, cap=args.cap, allow_huge=args.i_know_this_is_huge)
    if args.count_only:
        print(sum(1 for _ in stream))
        return 0
    for t in stream:
        sys.stdout.write(dumps_ashm_txt(t))
    return 0


def _cmd_collide(args) -> int:
    if args.jobs > 1:
        # sharding is by first-plane index; regrouping happens globally
        enumeration.enumerate_ashms(args.n, cap=args.cap, allow_huge=args.i_know_this_is_huge, shard=(0, args.jobs))
        tasks = [(args.n, args.cap, w, args.jobs) for w in range(args.jobs)]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            shards = list(pool.map(_shard_members, tasks))
        groups = enumeration.merge_collision_shards(shards)
    else:
        groups = enumeration.find_ashl_collisions(args.n, cap=args.cap, allow_huge=args.i_know_this_is_huge)
    payload = [
        {"ashl": g.ashl.tolist(), "size": len(g), "members_nonzeros": [t.nonzero_count() for t in g.members]}
        for g in groups
    ]
    print(json.dumps({"n": args.n, "groups": payload}))
    return 0


def _cmd_search(args) -> int:
    if args.source.startswith("construct:"):
        t = construct.max_entry_ashm(int(args.source.split(":", 1)[1]))
    else:
        t = _load_tensor(args.source)
    found = enumeration.perturbation_search(t, budget=args.budget, seed=args.seed)
    base = max_multiplicity(ashl_of(t))
    payload = {
        "baseline": list(base),
        "improvements": [{"value": v, "count": c} for _, (v, c) in found],
    }
    print(json.dumps(payload))
    if found and args.emit_best:
        sys.stderr.write(dumps_ashm_txt(found[-1][0], comment="best tensor found"))
    return 0


def _cmd_reproduce(args) -> int:
    results = acceptance.run_all(only=args.only)
    if args.json:
        print(json.dumps([
            {"name": r.name, "ok": r.ok, "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results
        ]))
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status}  {r.name:<{width}}  [{r.seconds:7.2f}s]  {r.detail}")
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ashmlab", description=__doc__)
    ap.add_argument("--json", action="store_true", help="machine-readable output where supported")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a tensor file for the ASHM property")
    p.add_argument("file", help="ASHM-TXT file, or - for stdin")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("ashl", help="print the Latin-like square of a tensor")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--histogram", action="store_true", help="append the entry histogram")
    p.set_defaults(func=_cmd_ashl)

    p = sub.add_parser("decompose-latin", help="split a Latin square into permutation planes")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_decompose_latin)

    p = sub.add_parser("construct", help="emit a constructed object")
    p.add_argument("what", choices=["diamond", "max-entry"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flipped", action="store_true", help="even-order mirrored diamond")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("fixture", help="emit a stored worked-example tensor")
    p.add_argument("--name", required=True, choices=list(construct.fixture_names()))
    p.add_argument("--member", type=int, choices=[0, 1], default=None, help="pair fixtures: which side")
    p.set_defaults(func=_cmd_fixture)

    p = sub.add_parser("diff-decompose", help="express A - B as a block list")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_diff_decompose)

    p = sub.add_parser("pair-decompose", help="express A - B as opposite-depth block pairs")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_pair_decompose)

    p = sub.add_parser("certify", help="equal-square certificate for two tensors")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("enumerate", help="stream every small ASM or ASHM")
    p.add_argument("--kind", choices=["asm", "ashm"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--i-know-this-is-huge", action="store_true", dest="i_know_this_is_huge")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("collide", help="group enumerated ASHMs by shared square")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--i-know-this-is-huge", action="store_true", dest="i_know_this_is_huge")
    p.set_defaults(func=_cmd_collide)

    p = sub.add_parser("search", help="randomized improvement search from a tensor")
    p.add_argument("--from", dest="source", required=True, help="ASHM-TXT file or construct:N")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-best", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("reproduce", help="run the acceptance checks")
    p.add_argument("--all", action="store_true", help="run every check (default)")
    p.add_argument("--only", default=None, help="substring filter on check names")
    p.set_defaults(func=_cmd_reproduce)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except AshmlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
