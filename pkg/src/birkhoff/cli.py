"""Command-line interface.

Exit codes: 0 positive verdict, 1 negative verdict (a witness is printed),
2 malformed input. Every verb accepts ``--format json``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from birkhoff.certify import (
    BoundInstance,
    Certificate,
    IrregularPairError,
    certify_regular,
    refute_identity,
    verify_certificate,
)
from birkhoff.comb import (
    InterpolationMatrix,
    atkinson_sharma,
    odd_supported_sequences,
    odd_sequences_start_in_first_column,
    polya,
    tail_condition_failures,
    tail_counts,
    upper_polya,
)
from birkhoff.duality import (
    dependence_relation,
    family_from_json,
    family_to_json,
    independence_condition_failures,
    independence_counts,
    independent_via_duality,
    independent_via_oracle,
    to_dual,
)
from birkhoff.linalg import (
    OverdeterminedError,
    PairEX,
    build_system,
    rank,
    rank_and_nullspace,
    split_pair,
    verify_block_form,
)
from birkhoff.poly import derivative, format_rational, parse_coefficients, parse_polynomial, parse_rational
from birkhoff.represent import greedy_decompose, roots_of_unity_identity, verify_complex_identity

APPENDIX_PAIR = "100100;100010;100100 @ 0,1,3"
APPENDIX_BAD_KNOTS = "-1,0,1"


class InputError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load_json(arg: str):
    try:
        if os.path.exists(arg):
            with open(arg, encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError("cannot read JSON input: %s" % err) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_check_matrix(args) -> int:
    E = InterpolationMatrix.parse(args.matrix)
    N = tail_counts(E)
    full = E.count == E.ncols
    odd = odd_supported_sequences(E)
    report = {
        "matrix": E.text(),
        "ones": E.count,
        "d": E.d,
        "tail_counts": N,
        "polya": polya(E) if full else None,
        "upper_polya": upper_polya(E),
        "odd_supported": [s._asdict() for s in odd],
        "tail_condition": not tail_condition_failures(E),
        "atkinson_sharma": atkinson_sharma(E) if full else None,
        "odd_sequences_in_first_column": odd_sequences_start_in_first_column(E),
    }
    lines = [
        "matrix: %s  (m=%d, d=%d, |E|=%d)" % (E.text(), E.m, E.d, E.count),
        "tail counts: %s" % N,
        "polya: %s" % (_yes(report["polya"]) if full else "n/a (|E| != d+1)"),
        "upper-polya: %s" % _yes(report["upper_polya"]),
        "odd-supported: %s" % (
            "yes (%s)" % ", ".join("row %d, col %d, len %d" % tuple(s) for s in odd) if odd else "no"
        ),
        "tail-condition: %s" % _yes(report["tail_condition"]),
        "atkinson-sharma: %s" % (_yes(report["atkinson_sharma"]) if full else "n/a (|E| != d+1)"),
    ]
    _emit(args, report, "\n".join(lines))
    return 0


def cmd_regular(args) -> int:
    pair = PairEX.parse(args.pair, args.knots)
    if pair.E.count > pair.d + 1:
        raise OverdeterminedError("|E| = %d exceeds d+1 = %d" % (pair.E.count, pair.d + 1))
    report = rank_and_nullspace(build_system(pair))
    regular = report.rank == pair.E.count
    payload = {"pair": pair.text(), "rank": report.rank, "ones": pair.E.count, "regular": regular}
    lines = ["pair: %s" % pair.text(), "rank: %d of %d" % (report.rank, pair.E.count)]
    if regular:
        lines.append("regular")
    else:
        witness = report.nullspace_basis[0]
        payload["witness"] = str(witness)
        lines += ["not regular", "witness: %s" % witness]
    _emit(args, payload, "\n".join(lines))
    return 0 if regular else 1


def cmd_independence(args) -> int:
    fam = family_from_json(_load_json(args.family))
    if args.degree is not None:
        fam = fam.with_degree(args.degree)
    oracle = independent_via_oracle(fam)
    try:
        dual = independent_via_duality(fam)
    except OverdeterminedError:
        dual = False
    failures = independence_condition_failures(fam)
    payload = {
        "family": family_to_json(fam),
        "dual_pair": to_dual(fam).pair.text(),
        "independent_via_duality": dual,
        "independent_via_oracle": oracle,
        "n": independence_counts(fam),
        "theorem_condition": not failures,
        "condition_failures": failures,
    }
    lines = [
        "family: %s  (d=%d)" % (", ".join(str(t) for t in fam), fam.d),
        "dual pair: %s" % payload["dual_pair"],
        "n_j: %s" % payload["n"][1:],
        "sufficient condition: %s" % ("holds" if not failures else "fails at j=%s" % failures),
        "duality: %s" % ("independent" if dual else "dependent"),
        "oracle: %s" % ("independent" if oracle else "dependent"),
    ]
    if not oracle:
        rel = dependence_relation(fam)
        payload["relation"] = [format_rational(c) for c in rel]
        lines.append(
            "relation: %s = 0"
            % " + ".join("(%s)*%s" % (format_rational(c), t) for c, t in zip(rel, fam) if c)
        )
    _emit(args, payload, "\n".join(lines))
    return 0 if oracle and dual else 1


def _irregular_output(args, err: IrregularPairError, extra: dict) -> int:
    payload = dict(extra, regular=False, rank=err.rank, witness=str(err.witness))
    lines = [str(err), "witness: %s" % err.witness]
    if err.relation is not None:
        payload["relation"] = [format_rational(c) for c in err.relation]
        lines.append("dependence relation coefficients: %s" % payload["relation"])
    _emit(args, payload, "\n".join(lines))
    return 1


def cmd_certify(args) -> int:
    if "@" in args.subject:
        pair = PairEX.parse(args.subject)
    else:
        pair = to_dual(family_from_json(_load_json(args.subject))).pair
    try:
        cert = certify_regular(pair)
    except IrregularPairError as err:
        return _irregular_output(args, err, {"pair": pair.text()})
    ok = verify_certificate(cert)
    payload = {"pair": pair.text(), "regular": True, "verified": ok, "certificate": cert.to_json()}
    _emit(args, payload, "%s\nregular (certificate %s)" % (cert.render(), "verified" if ok else "FAILED"))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cert = Certificate.from_json(_load_json(args.certificate))
    ok = verify_certificate(cert)
    _emit(args, {"verified": ok}, "verified" if ok else "rejected")
    return 0 if ok else 1


def cmd_refute(args) -> int:
    try:
        inst = BoundInstance.from_json(_load_json(args.instance))
    except (KeyError, TypeError) as err:
        raise InputError("malformed instance: %s" % err) from None
    try:
        cert = refute_identity(inst)
    except IrregularPairError as err:
        return _irregular_output(args, err, {"identity_exists": True})
    ok = verify_certificate(cert)
    payload = {"identity_exists": False, "verified": ok, "certificate": cert.to_json()}
    _emit(args, payload, "%s\nno identity of this form exists (certificate %s)"
          % (cert.render(), "verified" if ok else "FAILED"))
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    if args.coeffs:
        f = parse_coefficients([parse_rational(c) for c in args.poly.split(",")])
    else:
        f = parse_polynomial(args.poly)
    dec = greedy_decompose(f)
    bound = (max(f.degree, 0) + 2) // 2
    payload = {"polynomial": str(f), "terms": dec.to_json(), "count": len(dec), "bound": bound}
    _emit(args, payload, "%s = %s\n%d terms (bound %d)" % (f, dec, len(dec), bound))
    return 0


def cmd_identity_complex(args) -> int:
    ident = roots_of_unity_identity(args.k, args.d, parse_rational(args.mu))
    ok = verify_complex_identity(ident, args.tol)
    payload = {
        "k": ident.k,
        "d": ident.d,
        "mu": format_rational(ident.mu),
        "lhs": ident.format_lhs(),
        "rhs": ident.format_rhs(),
        "verified": ok,
    }
    _emit(args, payload, "%s\nlhs: %s\nrhs: %s\n%s" % (
        ident, ident.format_lhs(), ident.format_rhs(), "verified" if ok else "FAILED"))
    return 0 if ok else 1


def _labelled(A) -> list[str]:
    return ["g^(%d)(x%d): %s" % (k, i + 1, row) for (i, k), row in zip(A.row_labels, A.format_rows())]


def appendix_report() -> tuple[dict, str]:
    pair = PairEX.parse(APPENDIX_PAIR)
    r = 2
    left, right = split_pair(pair, r)
    A = build_system(pair)
    cert = certify_regular(pair)
    block = verify_block_form(pair, r)
    bad = PairEX.parse(APPENDIX_PAIR.split("@")[0], APPENDIX_BAD_KNOTS)
    bad_report = rank_and_nullspace(build_system(bad))
    witness = bad_report.nullspace_basis[0]
    block_witness = derivative(witness, r + 1).monic().with_degree(pair.d - r - 1)
    right_bad = rank_and_nullspace(build_system(split_pair(bad, r)[1]))
    lines = [
        "E = %s, X = {%s}" % (pair.E.text(), ",".join(format_rational(x) for x in pair.knots)),
        "split at r=%d: E1 = %s, E2 = %s" % (r, left.E.text(), right.E.text()),
        "A(E,X) in the x^j/j! basis:",
        *("  " + s for s in _labelled(A)),
        "A(E1,X):",
        *("  " + s for s in build_system(left).format_rows()),
        "A(E2,X):",
        *("  " + s for s in build_system(right).format_rows()),
        "block form [[A(E1,X), *], [0, A(E2,X)]]: %s" % _yes(block),
        "rank A(E1,X) = %d, rank A(E2,X) = %d, rank A(E,X) = %d"
        % (rank(build_system(left).entries), rank(build_system(right).entries), rank(A.entries)),
        "certificate:",
        cert.render(1),
        "certificate verified: %s" % _yes(verify_certificate(cert)),
        "(E,X): regular",
        "",
        "E with Y = {%s}: rank %d < 6, not regular" % (APPENDIX_BAD_KNOTS, bad_report.rank),
        "witness g = %s" % witness,
        "g''' normalized = %s" % block_witness,
        "(E2,Y) witness = %s" % right_bad.nullspace_basis[0],
    ]
    payload = {
        "pair": pair.text(),
        "split": r,
        "E1": left.E.text(),
        "E2": right.E.text(),
        "system": A.format_rows(),
        "block_form": block,
        "certificate": cert.to_json(),
        "verified": verify_certificate(cert),
        "regular": True,
        "irregular_knots": APPENDIX_BAD_KNOTS,
        "irregular_rank": bad_report.rank,
        "witness": str(witness),
        "block_witness": str(block_witness),
        "right_block_witness": str(right_bad.nullspace_basis[0]),
    }
    return payload, "\n".join(lines)


def cmd_demo_appendix(args) -> int:
    payload, text = appendix_report()
    _emit(args, payload, text)
    return 0 if payload["verified"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="birkhoff", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check-matrix", parents=[fmt], help="Polya, supported sequences, tail counts")
    p.add_argument("matrix", help='rows joined by ";", e.g. 100;010;100')
    p.set_defaults(func=cmd_check_matrix)

    p = sub.add_parser("regular", parents=[fmt], help="decide regularity of a pair (E, X)")
    p.add_argument("pair", help='"<matrix> @ <knots>" or the matrix alone with --knots')
    p.add_argument("--knots", help="comma-separated rational knots (use --knots=-1,0,1)")
    p.set_defaults(func=cmd_regular)

    p = sub.add_parser("independence", parents=[fmt], help="independence of a shifted-power family")
    p.add_argument("family", help="family JSON text or path")
    p.add_argument("--degree", type=int, help="ambient degree (default: largest exponent)")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("certify", parents=[fmt], help="regularity certificate for a family or pair")
    p.add_argument("subject", help="family JSON text/path, or pair text containing '@'")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[fmt], help="re-check a certificate JSON")
    p.add_argument("certificate", help="certificate JSON text or path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("refute", parents=[fmt], help="refute an identity sum a(x+x_i)^D = sum b(x+y_i)^e")
    p.add_argument("instance", help='JSON {"degree": D, "lhs": [{"coeff","shift"}], "rhs": [{"shift","exp"}]}')
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("decompose", parents=[fmt], help="greedy sum of at most ceil((d+1)/2) powers")
    p.add_argument("poly", help='expression such as "x^2+2x+3"')
    p.add_argument("--coeffs", action="store_true", help="read POLY as comma-separated coefficients, lowest first")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("identity-complex", parents=[fmt], help="roots-of-unity identity")
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("mu")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_identity_complex)

    p = sub.add_parser("demo-appendix", parents=[fmt], help="the worked 3x6 example end to end")
    p.set_defaults(func=cmd_demo_appendix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # exact greedy shifts can run to thousands of digits
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, TypeError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
