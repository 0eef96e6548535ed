"""Command-line surface: one subcommand per public operation.

Human-readable lines by default; --format json emits one JSON object per
result with stable key names.  Exit codes: 0 success, 1 domain or
precondition error, 2 usage error, 3 bounded-search exhaustion.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import arith, expansion, jenkins, midy, progression
from .arith import Factorization
from .errors import BoundedSearchError, MidylabError
from .midy import GcdCertificate, OracleCertificate, PrimeCertificate
from .order import order_mod

CACHE_ENV_VAR = "MIDYLAB_CACHE"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_SEARCH = 3


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _format_digits(digits, base: int) -> str:
    if base <= 10:
        return "".join(str(d) for d in digits)
    return "[" + ",".join(str(d) for d in digits) + "]"


def _certificate_json(cert):
    if cert is None:
        return None
    if isinstance(cert, PrimeCertificate):
        return {"p": cert.p, "nu_n": cert.nu_n, "nu_d": cert.nu_d}
    if isinstance(cert, OracleCertificate):
        return {"x": cert.x}
    if isinstance(cert, GcdCertificate):
        return {"g": cert.g}
    raise TypeError(f"unknown certificate {cert!r}")


def _certificate_text(cert) -> str:
    if cert is None:
        return ""
    if isinstance(cert, PrimeCertificate):
        return f" (p={cert.p}, nu_p(n)={cert.nu_n}, nu_p(d)={cert.nu_d})"
    if isinstance(cert, OracleCertificate):
        return f" (x={cert.x})"
    if isinstance(cert, GcdCertificate):
        return f" (g={cert.g})"
    raise TypeError(f"unknown certificate {cert!r}")


# ---------------------------------------------------------------------------
# Factorization cache
# ---------------------------------------------------------------------------


class FactorCache:
    """Append-only text cache of factorizations, one line n=p^e*p^e*...

    Entries are revalidated on load: the product must reconstruct n and
    every base must be prime; lines failing either check are ignored.
    """

    def __init__(self, path: str | None):
        self.path = path
        self.entries: dict[int, tuple[tuple[int, int], ...]] = {}
        self._loaded: set[int] = set()
        if path and os.path.exists(path):
            with open(path, "r", encoding="ascii") as fh:
                for line in fh:
                    parsed = self._parse_line(line.strip())
                    if parsed is not None:
                        n, factors = parsed
                        self.entries[n] = factors
                        self._loaded.add(n)

    @staticmethod
    def _parse_line(line: str):
        if not line or "=" not in line:
            return None
        left, _, right = line.partition("=")
        try:
            n = int(left)
            factors = []
            if right != "":
                for term in right.split("*"):
                    p_text, _, e_text = term.partition("^")
                    factors.append((int(p_text), int(e_text)))
        except ValueError:
            return None
        product = 1
        for p, e in factors:
            if e < 1 or not arith.is_prime(p):
                return None
            product *= p**e
        primes = [p for p, _ in factors]
        if product != n or any(a >= b for a, b in zip(primes, primes[1:])):
            return None
        return n, tuple(factors)

    def factor(self, n: int) -> Factorization:
        cached = self.entries.get(n)
        if cached is not None:
            return Factorization(cached)
        result = arith.factor(n)
        self.entries[n] = result.factors
        return result

    def flush(self) -> None:
        """Append entries not yet present in the file, ascending by n."""
        if not self.path:
            return
        new = sorted(n for n in self.entries if n not in self._loaded)
        if not new:
            return
        with open(self.path, "a", encoding="ascii") as fh:
            for n in new:
                fh.write(self.format_line(n, self.entries[n]) + "\n")
        self._loaded.update(new)

    @staticmethod
    def format_line(n: int, factors) -> str:
        return f"{n}=" + "*".join(f"{p}^{e}" for p, e in factors)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_order(args, out) -> int:
    L = order_mod(args.base, args.n)
    if args.format == "json":
        out.write(_json({"base": args.base, "n": args.n, "order": L}) + "\n")
    else:
        out.write(f"{L}\n")
    return EXIT_OK


def _cmd_expand(args, out) -> int:
    e = expansion.period_digits(args.x, args.n, args.base)
    blocks = (
        expansion.blocks_and_sum(e, args.blocks) if args.blocks is not None else None
    )
    if args.format == "json":
        payload = {
            "base": args.base,
            "n": args.n,
            "x": args.x,
            "order": len(e.digits),
            "digits": list(e.digits),
        }
        if blocks is not None:
            payload["d"] = blocks.count
            payload["blocks"] = list(blocks.blocks)
            payload["sum"] = blocks.block_sum
        out.write(_json(payload) + "\n")
    else:
        out.write(_format_digits(e.digits, args.base) + "\n")
        if blocks is not None:
            k = blocks.length
            parts = [
                _format_digits(e.digits[j * k : (j + 1) * k], args.base)
                for j in range(blocks.count)
            ]
            out.write(" + ".join(parts) + f" = {blocks.block_sum}\n")
    return EXIT_OK


_METHODS = {
    "ppl2": midy.midy_check_ppl2,
    "ppl3": midy.midy_check_ppl3,
    "direct": midy.midy_check_direct,
}


def _cmd_midy_check(args, out) -> int:
    methods = list(_METHODS) if args.method == "all" else [args.method]
    for name in methods:
        verdict = _METHODS[name](args.base, args.n, args.d)
        if args.format == "json":
            out.write(
                _json(
                    {
                        "base": args.base,
                        "n": args.n,
                        "d": args.d,
                        "holds": verdict.holds,
                        "method": verdict.method,
                        "certificate": _certificate_json(verdict.certificate),
                    }
                )
                + "\n"
            )
        else:
            state = "holds" if verdict.holds else "fails"
            out.write(
                f"{name}: {state}{_certificate_text(verdict.certificate)}\n"
            )
    return EXIT_OK


def _cmd_midy_set(args, out) -> int:
    result = midy.midy_set(args.base, args.n)
    if args.format == "json":
        out.write(
            _json(
                {
                    "base": result.base,
                    "n": result.modulus,
                    "order": result.order,
                    "midy_set": list(result.members),
                }
            )
            + "\n"
        )
    else:
        out.write(f"order: {result.order}\n")
        out.write("members: " + " ".join(str(d) for d in result.members) + "\n")
    return EXIT_OK


def _cmd_jenkins(args, out) -> int:
    inst = jenkins.jenkins_instance(args.base, args.d, args.prime)
    routes = ["formula", "gcd"] if args.route == "both" else [args.route]
    for route in routes:
        if route == "formula":
            holds = jenkins.jenkins_check(inst)
            cert = None
        else:
            holds = jenkins.jenkins_check_gcd(inst)
            cert = None
            if not holds:
                N = inst.modulus
                k = order_mod(inst.base, N) // inst.d
                cert = GcdCertificate(g=arith.gcd_pow_minus_one(inst.base, k, N))
        if args.format == "json":
            out.write(
                _json(
                    {
                        "base": inst.base,
                        "n": inst.modulus,
                        "d": inst.d,
                        "holds": holds,
                        "method": route,
                        "certificate": _certificate_json(cert),
                    }
                )
                + "\n"
            )
        else:
            state = "holds" if holds else "fails"
            out.write(f"{route}: {state}{_certificate_text(cert)}\n")
    return EXIT_OK


def _cmd_primes(args, out) -> int:
    trace = progression.prime_progression(
        args.base, args.q, args.v, args.count, bound=args.bound
    )
    if args.format == "json":
        out.write(
            _json(
                {
                    "base": trace.base,
                    "q": trace.q,
                    "v": trace.v,
                    "primes": list(trace.primes),
                    "moduli": list(trace.moduli),
                }
            )
            + "\n"
        )
    else:
        for modulus, prime in trace.steps:
            out.write(f"{prime} (1 mod {modulus})\n")
    return EXIT_OK


def _scan_row(b: int, n: int, factors: tuple[tuple[int, int], ...]):
    nf = Factorization(factors)
    L = order_mod(b, n, n_factors=nf)
    members = []
    excluded = []
    for d in arith.factor(L).divisors():
        if d <= 1:
            continue
        verdict = midy.midy_check_ppl2(b, n, d, n_factors=nf)
        if verdict.holds:
            members.append(d)
        else:
            excluded.append((d, verdict.certificate))
    return n, L, members, excluded


def _scan_chunk(task):
    b, lo, hi, cache_entries = task
    rows = []
    for n in range(lo, hi):
        if math.gcd(n, b) != 1:
            continue
        factors = cache_entries.get(n) or arith.factor(n).factors
        rows.append((_scan_row(b, n, factors), factors))
    return rows


def _cmd_scan(args, out) -> int:
    if args.start < 1 or args.stop < args.start:
        raise MidylabError(f"bad scan range [{args.start}, {args.stop}]")
    cache = FactorCache(args.cache or os.environ.get(CACHE_ENV_VAR))
    lo, hi = args.start, args.stop + 1
    if args.jobs > 1:
        chunk = max(1, math.ceil((hi - lo) / args.jobs))
        tasks = [
            (args.base, a, min(a + chunk, hi), cache.entries)
            for a in range(lo, hi, chunk)
        ]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_scan_chunk, tasks))
        results = [row for rows in chunks for row in rows]
    else:
        results = _scan_chunk((args.base, lo, hi, cache.entries))

    if args.format == "csv":
        out.write("n,base,order,midy_set\n")
    for (n, L, members, excluded), factors in results:
        cache.entries.setdefault(n, factors)
        if args.format == "json":
            out.write(
                _json(
                    {
                        "n": n,
                        "base": args.base,
                        "order": L,
                        "midy_set": members,
                        "excluded": [
                            {"d": d, "certificate": _certificate_json(cert)}
                            for d, cert in excluded
                        ],
                    }
                )
                + "\n"
            )
        else:
            out.write(
                f"{n},{args.base},{L}," + ";".join(str(d) for d in members) + "\n"
            )
    cache.flush()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _base_arg(text: str) -> int:
    value = int(text)
    if not 2 <= value <= 62:
        raise argparse.ArgumentTypeError("base must be between 2 and 62")
    return value


def _prime_power_arg(text: str) -> tuple[int, int]:
    p_text, sep, h_text = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected P:H")
    try:
        return int(p_text), int(h_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected P:H with integers") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="midylab",
        description="Block-sum periodicity of radix expansions: "
        "deciders, scans, and prime progressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("human", "json"), default="human"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("order", help="multiplicative order of the base mod N")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("n", type=int)
    add_format(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("expand", help="period digits of X/N, optionally in blocks")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("x", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--blocks", type=int, default=None)
    add_format(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("midy-check", help="decide the property for N and d")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument(
        "--method", choices=["ppl2", "ppl3", "direct", "all"], default="ppl2"
    )
    add_format(p)
    p.set_defaults(func=_cmd_midy_check)

    p = sub.add_parser("midy-set", help="all block counts with the property")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("n", type=int)
    add_format(p)
    p.set_defaults(func=_cmd_midy_set)

    p = sub.add_parser("jenkins", help="product criterion over prime powers")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument(
        "--prime",
        type=_prime_power_arg,
        action="append",
        required=True,
        metavar="P:H",
    )
    p.add_argument("--route", choices=["formula", "gcd", "both"], default="both")
    add_format(p)
    p.set_defaults(func=_cmd_jenkins)

    p = sub.add_parser("primes", help="progression of primes 1 mod q^v")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--bound", type=int, default=progression.DEFAULT_SEARCH_BOUND)
    add_format(p)
    p.set_defaults(func=_cmd_primes)

    p = sub.add_parser("scan", help="per-N order and property set over a range")
    p.add_argument("--base", type=_base_arg, required=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", default=None)
    add_format(p, choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except BoundedSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except MidylabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
