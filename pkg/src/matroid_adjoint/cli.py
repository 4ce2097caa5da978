"""Command-line front end: ``matroid-adjoint <command> <matroid> [options]``.

Exit codes: 0 success, 1 a guaranteed property failed (refutation) or a
requested check came out negative, 2 usage, input or resource errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import __version__
from .adjoint import (check_fundamental_basis, recognize_projective, sigma, sigma_sequence,
                      verify_adjoint)
from .derived import (check_cocircuit_basis, circuit_vector, conjecture_record, delta_comb, delta_ow,
                      verify_duality)
from .errors import MatroidError, Refutation
from .extension import enumerate_linear_subclasses, lambda_map
from .fileformat import load_matroid
from .iso import matroid_iso
from .lattice import build_lattice, is_modular, modular_pair_violation, to_dot
from .matroid import LinearMatroid, Matroid, bits, components, fmt_mask, is_connected, simplify

CONJECTURE_FIXTURES = ["u:2,4:p=5", "u:2,3:p=2", "u:3,5:p=5", "u:2,5:p=7", "u:1,2:p=3",
                       "u:2,3:p=3+u:2,3:p=3", "fano"]


class Report:
    def __init__(self, command, source):
        self.command = command
        self.input = source
        self.lines: list[str] = []
        self.result: dict = {}
        self.witnesses: list = []
        self.exit = 0

    def say(self, line=""):
        self.lines.append(line)


def _simple(M: Matroid, rep: Report) -> Matroid:
    if M.is_simple:
        return M
    print("warning: input is not simple; removing loops and parallel elements "
          "(adjoints ignore them)", file=sys.stderr)
    return simplify(M)[0]


def _linear(M: Matroid) -> LinearMatroid:
    if not isinstance(M, LinearMatroid):
        raise MatroidError("this command needs a represented (linear) matroid")
    return M


def cmd_info(M, args, rep):
    backend = f"linear over GF({M.p})" if isinstance(M, LinearMatroid) else "bases"
    sizes = [len(layer) for layer in M.flats_by_rank]
    rep.say(f"m={M.m} r={M.r} backend={backend}")
    rep.say(f"simple={str(M.is_simple).lower()} connected={str(is_connected(M)).lower()} "
            f"components={len(components(M))}")
    rep.say("flats per rank: " + " ".join(map(str, sizes)))
    rep.say(f"hyperplanes: {len(M.hyperplanes)} circuits: {len(M.circuits)}")
    rep.result = {"m": M.m, "r": M.r, "flats_per_rank": sizes, "hyperplanes": len(M.hyperplanes),
                  "circuits": len(M.circuits), "simple": M.is_simple, "connected": is_connected(M)}


def cmd_flats(M, args, rep):
    out = []
    for k, layer in enumerate(M.flats_by_rank):
        for F in layer:
            rep.say(f"{k} {fmt_mask(F.mask)}")
            out.append({"rank": k, "elements": bits(F.mask)})
    rep.result = {"flats": out}


def cmd_hyperplanes(M, args, rep):
    for H in M.hyperplanes:
        rep.say(fmt_mask(H.mask))
    rep.result = {"hyperplanes": [bits(H.mask) for H in M.hyperplanes]}


def cmd_circuits(M, args, rep):
    for C in M.circuits:
        rep.say(fmt_mask(C))
    rep.result = {"circuits": [bits(C) for C in M.circuits]}


def cmd_sigma(M, args, rep):
    M = _simple(_linear(M), rep)
    N, labeling = sigma(M)
    rep.say(f"sigma: m={N.m} r={N.r} p={N.p}")
    for j, (col, H) in enumerate(zip(N.matrix.columns, labeling)):
        rep.say(f"{j} {list(col)} <- {fmt_mask(H)}")
    rep.result = {"m": N.m, "r": N.r, "p": N.p, "columns": [list(c) for c in N.matrix.columns],
                  "labels": [bits(H) for H in labeling]}


def cmd_sigma_seq(M, args, rep):
    M = _simple(_linear(M), rep)
    report = sigma_sequence(M, max_iter=args.max_iter, size_cap=args.size_cap)
    its = []
    for k, it in enumerate(report.iterates):
        proj = str(it.projective) if it.projective else "-"
        mod = "?" if it.modular is None else str(it.modular).lower()
        rep.say(f"{k}: |E|={it.size} r={it.rank} modular={mod} projective={proj}")
        its.append({"size": it.size, "rank": it.rank, "modular": it.modular, "projective": proj})
    if report.verdict == "cap-exceeded":
        rep.say(f"verdict: cap-exceeded ({report.note})")
    else:
        rep.say(f"verdict: {report.verdict} at {report.index}")
        last = report.iterates[-1]
        rep.say(f"final: {last.projective or 'not projective'}, {last.size} elements")
    rep.result = {"iterates": its, "verdict": report.verdict, "index": report.index}
    if not report.check_growth():
        rep.witnesses.append({"sizes": report.sizes})
        rep.say("REFUTATION: an iterate is smaller than the one two steps before")
        rep.exit = 1


def cmd_check_adjoint(M, args, rep):
    M = _simple(M, rep)
    if args.candidate in (None, "sigma"):
        N, labeling = sigma(_linear(M))
    else:
        N = load_matroid(args.candidate)
        labeling = [H.mask for H in M.hyperplanes]
    cert = verify_adjoint(M, N, labeling)
    if not cert.ok:
        why = "rank mismatch" if not cert.rank_ok else f"H[{cert.failure}] is not a hyperplane"
        rep.say(f"certificate FAILED: {why}")
        rep.witnesses.append({"element": cert.failure, "rank_ok": cert.rank_ok})
        rep.result = {"certificate": False}
        rep.exit = 1
        return
    bases = M.bases
    hyp = sum(check_fundamental_basis(cert, B) for B in bases)
    coc = sum(check_cocircuit_basis(cert, B) for B in bases)
    rep.say(f"certificate OK; fundamental-hyperplane basis checks: {hyp}/{len(bases)}; "
            f"fundamental-cocircuit basis checks: {coc}/{len(bases)}")
    rep.result = {"certificate": True, "hyperplane_basis_checks": [hyp, len(bases)],
                  "cocircuit_basis_checks": [coc, len(bases)]}
    if hyp != len(bases) or coc != len(bases):
        rep.witnesses.extend(bits(B) for B in bases if not check_fundamental_basis(cert, B))
        rep.exit = 1


def cmd_derived_ow(M, args, rep):
    M = _linear(M)
    OW, labels = delta_ow(M)
    rep.say(f"delta_OW: {OW.m} circuit labels, rank {OW.r} (m - r = {M.m - M.r})")
    for C in labels:
        rep.say(f"{fmt_mask(C)} {list(circuit_vector(M, C).vector)}")
    duality = None
    if len(labels) <= 14:
        d = verify_duality(M)
        duality = d.ok
        rep.say(f"duality with sigma of the dual: {'OK' if d.ok else 'FAILED'} "
                f"({d.subsets_checked} subsets, matrix identity {'holds' if d.identity_ok else 'fails'})")
        if not d.ok:
            rep.witnesses.append({"subset": d.counterexample})
            rep.exit = 1
    rep.result = {"labels": len(labels), "rank": OW.r, "m_minus_r": M.m - M.r, "duality": duality}


def cmd_derived_comb(M, args, rep):
    res = delta_comb(M, all_witnesses=not args.one_witness, literal_seed=args.literal_seed)
    D = res.matroid
    rep.say(f"delta: {D.m} circuit labels, rank {D.r} (m - r = {M.m - M.r}), "
            f"{len(res.family.minimal)} minimal dependent sets")
    for C in D.circuits:
        rep.say(" ".join(fmt_mask(res.labeling[i]) for i in bits(C)))
    rep.result = {"labels": D.m, "rank": D.r, "m_minus_r": M.m - M.r,
                  "circuits": [[bits(res.labeling[i]) for i in bits(C)] for C in D.circuits]}


def cmd_ext_lattice(M, args, rep):
    M = _simple(M, rep)
    lam = lambda_map(M, require_modular=False)
    ext = lam.extension
    rep.say(f"linear subclasses: {len(ext)}; flats: {len(lam.images)}")
    rep.say(f"lambda: injective={str(lam.injective).lower()} surjective={str(lam.surjective).lower()} "
            f"order-isomorphism={str(lam.order_iso).lower()}")
    for S in lam.missing:
        rep.say("not of the form H_X: " + fmt_mask(S))
    rep.result = {"subclasses": len(ext), "flats": len(lam.images), "isomorphism": lam.is_isomorphism,
                  "missing": [bits(S) for S in lam.missing]}


def cmd_modular(M, args, rep):
    M = _simple(M, rep)
    mod = is_modular(M)
    rep.say(f"modular: {str(mod).lower()}; |E|={M.m} |H|={len(M.hyperplanes)} (Greene agrees)")
    proj = recognize_projective(M)
    if proj is not None:
        rep.say(f"recognized: {proj}")
    if not mod:
        X, Y = modular_pair_violation(M)
        rep.say(f"non-modular pair: {fmt_mask(X)} {fmt_mask(Y)}")
        rep.witnesses.append({"pair": [bits(X), bits(Y)]})
    rep.result = {"modular": mod, "E": M.m, "H": len(M.hyperplanes),
                  "projective": str(proj) if proj else None}


def cmd_iso(M, args, rep):
    if not args.other:
        raise MatroidError("iso needs a second matroid")
    N = load_matroid(args.other)
    f = matroid_iso(M, N)
    rep.say(f"isomorphic: {str(f is not None).lower()}")
    if f is not None:
        rep.say(" ".join(f"{e}->{y}" for e, y in enumerate(f)))
    rep.result = {"isomorphic": f is not None, "map": f}


def cmd_dot(M, args, rep):
    M = _simple(M, rep)
    if args.lattice == "extension":
        ext = enumerate_linear_subclasses(M)
        text = to_dot(ext.as_lattice(), "extension", label=ext.label)
    else:
        L = build_lattice(M)

        def label(i):
            F = L.flats[i]
            return f"{F.rank}:" + "".join(str(F.mask >> k & 1) for k in range(M.m))
        if args.lattice == "opposite":
            text = to_dot(L.opposite(), "opposite", label=label)
        else:
            text = to_dot(L, "flats", label=label)
    rep.lines = text.rstrip("\n").split("\n")
    rep.result = {"dot": text}


def cmd_conjecture71(M, args, rep):
    names = [args.matroid] if args.matroid else CONJECTURE_FIXTURES
    records = []
    for name in names:
        r = conjecture_record(name, load_matroid(name))
        records.append(r)
        rep.say(" ".join(f"{k}={_fmt(v)}" for k, v in r.items() if k != "note")
                + (f" note={r['note']}" if r["note"] else ""))
    rep.result = {"records": records}


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


COMMANDS = {
    "info": cmd_info, "flats": cmd_flats, "hyperplanes": cmd_hyperplanes, "circuits": cmd_circuits,
    "sigma": cmd_sigma, "sigma-seq": cmd_sigma_seq, "check-adjoint": cmd_check_adjoint,
    "derived-ow": cmd_derived_ow, "derived-comb": cmd_derived_comb, "ext-lattice": cmd_ext_lattice,
    "modular": cmd_modular, "iso": cmd_iso, "dot": cmd_dot, "conjecture71": cmd_conjecture71,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matroid-adjoint", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("matroid", nargs="?", help="fixture name, matroid file, or inline JSON")
    ap.add_argument("other", nargs="?", help="second matroid (iso)")
    ap.add_argument("--candidate", help="'sigma' or a matroid file labelled by hyperplanes in canonical order")
    ap.add_argument("--max-iter", type=int, default=8)
    ap.add_argument("--size-cap", type=int, default=2000)
    ap.add_argument("--lattice", choices=["flats", "opposite", "extension"], default="flats")
    ap.add_argument("--one-witness", action="store_true", help="eliminate only the least circuit")
    ap.add_argument("--literal-seed", action="store_true", help="do not up-close the seed family")
    ap.add_argument("--format", choices=["text", "json"], default="text")
    ap.add_argument("--out", help="write output to this file")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report(args.command, args.matroid)
    t0 = time.perf_counter()
    try:
        if args.command != "conjecture71" and not args.matroid:
            raise MatroidError(f"{args.command} needs a matroid")
        M = load_matroid(args.matroid) if args.command != "conjecture71" else None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            COMMANDS[args.command](M, args, rep)
    except Refutation as exc:
        rep.say(f"REFUTATION: {exc}")
        rep.witnesses.append(repr(exc.witness))
        rep.exit = 1
    except (MatroidError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.format == "json":
        doc = {"command": rep.command, "input": rep.input, "result": rep.result,
               "witnesses": rep.witnesses,
               "timings": {"seconds": round(elapsed, 3)} if args.timings else {}}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = "\n".join(rep.lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
