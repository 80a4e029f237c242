"""Command-line surface: JSON-lines output on stdout, diagnostics on
stderr.

Exit codes: 0 success, 1 refusal (budget, missing primes, regime), 2 usage
error, 3 internal invariant violation.  The enumeration budget can be
overridden with the BPLINKS_TAU_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Optional

from . import __version__
from .arith import bp_order
from .errors import InvariantViolation, RefusalError
from .families import brieskorn_reference, fit_exotic_tau, gen_exotic, gen_odd_dim, gen_standard
from .lattice import SignatureResult, tau_brute, tau_kernel
from .moduli import mean_euler, moduli_dimension
from .report import classify_link, report_to_dict
from .topology import diffeo_class_even, exponent_vector

CACHE_VERSION = 1


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _diag(msg: str) -> None:
    sys.stderr.write(msg + "\n")


class ScanCache:
    """Append-only signature cache: a version header line followed by one
    JSON record per vector."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.entries: dict[tuple, dict] = {}
        if self.path.exists():
            self._load()
        else:
            with open(self.path, "w") as fh:
                fh.write(json.dumps({"version": CACHE_VERSION}) + "\n")

    def _load(self) -> None:
        with open(self.path) as fh:
            lines = fh.read().splitlines()
        if not lines:
            raise RefusalError(f"cache {self.path} is empty (missing version header)")
        try:
            header = json.loads(lines[0])
            version = header["version"]
        except (json.JSONDecodeError, KeyError, TypeError):
            raise RefusalError(f"cache {self.path} line 1: bad version header")
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                vec = tuple(rec["vector"])
                rec["tau"], rec["method"]
            except (json.JSONDecodeError, KeyError, TypeError):
                raise RefusalError(f"cache {self.path} line {lineno}: corrupt record")
            if version == CACHE_VERSION:
                self.entries[vec] = rec

    def get(self, vector: tuple) -> Optional[dict]:
        return self.entries.get(vector)

    def put(self, vector: tuple, sig: SignatureResult) -> None:
        rec = {
            "vector": list(vector),
            "tau": sig.tau,
            "plus": sig.plus_count,
            "minus": sig.minus_count,
            "boundary": sig.boundary_skipped,
            "method": sig.method,
            "version": CACHE_VERSION,
            "tool": __version__,
        }
        self.entries[vector] = rec
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec) + "\n")


def _cached_signature(rec: dict) -> SignatureResult:
    return SignatureResult(
        tau=rec["tau"],
        plus_count=rec.get("plus", 0),
        minus_count=rec.get("minus", 0),
        boundary_skipped=rec.get("boundary", 0),
        method=rec["method"],
    )


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_classify(args) -> int:
    rep = classify_link(args.exponents, tau_method=args.method, budget=args.budget)
    _emit(report_to_dict(rep))
    return 0


def _cmd_tau(args) -> int:
    a = exponent_vector(args.exponents)
    sig = tau_brute(a, budget=args.budget) if args.method == "brute" else tau_kernel(a)
    out = {
        "vector": list(a),
        "tau": sig.tau,
        "plus": sig.plus_count,
        "minus": sig.minus_count,
        "boundary_skipped": sig.boundary_skipped,
        "method": sig.method,
    }
    n = len(a) - 1
    if n % 2 == 0 and sig.tau % 8 == 0:
        cls = diffeo_class_even(n, sig.tau)
        out["class"] = f"{cls.class_mod_bp} mod {cls.bp.order}"
    _emit(out)
    return 0


def _cmd_qpfit(args) -> int:
    if args.family != "exotic":
        raise RefusalError(f"unsupported family for qpfit: {args.family}")
    fit = fit_exotic_tau(
        m=args.m, k=args.k, l=args.l, samples=args.samples, verify=args.verify
    )
    _emit(fit.to_json_dict())
    if fit.verify is not None:
        bad = [v for v in fit.verify if v[1] != v[2]]
        if bad:
            _diag(f"qpfit: {len(bad)} verification mismatches")
            return 3
    return 0


def _cmd_family(args) -> int:
    if args.kind == "odd":
        spec = gen_odd_dim(args.m, args.pn)
    elif args.kind == "standard":
        spec = gen_standard(args.m, args.k)
    elif args.kind == "exotic":
        spec = gen_exotic(args.m, args.k, args.l, args.q)
    else:
        spec = brieskorn_reference(args.m, args.k, args.sign)
    _emit(spec.to_json_dict())
    return 0


def _cmd_bp_order(args) -> int:
    order = bp_order(args.m)
    _emit({"m": order.m, "order": str(order.order)})
    return 0


def _cmd_moduli(args) -> int:
    dim = moduli_dimension(args.n, args.p, args.l)
    _emit(
        {
            "n": dim.n,
            "p": dim.p,
            "l": dim.l,
            "h0_d": dim.h0_d,
            "h0_weights_sum": dim.h0_weights_sum,
            "dimension": dim.dimension,
            "closed_form": dim.closed_form,
            "agree": dim.agree,
        }
    )
    if not dim.agree:
        _diag("moduli: DP and closed form disagree")
        return 3
    return 0


def _cmd_euler(args) -> int:
    chi = None
    if args.chi_poly:
        chi = [Fraction(c) for c in args.chi_poly.split(",")]
    rep = mean_euler(args.n, args.p, args.l, chi_p=chi)
    _emit(
        {
            "n": rep.n,
            "p": rep.p,
            "l": rep.l,
            "mu_p": rep.mu_p,
            "phi_2": rep.phi_2,
            "chi_m": f"{rep.chi_m.numerator}/{rep.chi_m.denominator}",
            "chi_p_model": rep.chi_p_model,
            "strata": [
                {
                    "orbit_space": s.label,
                    "period": s.period,
                    "chi_s1": f"{s.chi_s1.numerator}/{s.chi_s1.denominator}",
                    "frequency": s.frequency,
                }
                for s in rep.strata
            ],
        }
    )
    return 0


def _cmd_scan(args) -> int:
    cache = ScanCache(Path(args.cache)) if args.cache else None
    count = 0
    for combo in combinations_with_replacement(range(2, args.amax + 1), args.n + 1):
        vector = tuple(combo)
        pre = None
        if cache is not None and args.n % 2 == 0:
            rec = cache.get(vector)
            if rec is not None:
                pre = _cached_signature(rec)
                if args.paranoid:
                    fresh = tau_kernel(vector)
                    if fresh.tau != pre.tau:
                        raise InvariantViolation(
                            f"cache disagrees with recomputation on {vector}: "
                            f"{pre.tau} != {fresh.tau}"
                        )
                    pre = fresh
        rep = classify_link(vector, tau_method="kernel", precomputed_tau=pre)
        if cache is not None and rep.signature is not None and pre is None:
            cache.put(vector, rep.signature)
        if args.filter == "sphere" and not rep.sphere.is_homotopy_sphere:
            continue
        if args.filter == "se-sphere" and not (
            rep.sphere.is_homotopy_sphere and rep.stability.se_metric_exists
        ):
            continue
        _emit(report_to_dict(rep))
        count += 1
    _diag(f"scan: {count} links matched")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bplinks",
        description="Classify Brieskorn-Pham links: homotopy-sphere status, "
        "Sasaki-Einstein existence, and the bP class of the Milnor-fiber "
        "signature.  Output is JSON lines.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full classification of one link")
    p.add_argument("exponents", type=int, nargs="+")
    p.add_argument("--method", choices=["brute", "kernel"], default="kernel")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("tau", help="Milnor-fiber signature only")
    p.add_argument("exponents", type=int, nargs="+")
    p.add_argument("--method", choices=["brute", "kernel"], default="kernel")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("qpfit", help="fit the signature quasi-polynomial of a family")
    p.add_argument("--family", default="exotic", choices=["exotic"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--samples", type=int, default=7)
    p.add_argument("--verify", type=int, default=3)
    p.set_defaults(func=_cmd_qpfit)

    p = sub.add_parser("family", help="generate one infinite-family member")
    p.add_argument("kind", choices=["odd", "standard", "exotic", "ref"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--pn", type=int, default=None, help="prime p_n for the odd family")
    p.add_argument("--sign", type=int, choices=[1, -1], default=-1)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("bp-order", help="order of bP_{4m}")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_bp_order)

    p = sub.add_parser("moduli", help="moduli dimension for the exotic family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=_cmd_moduli)

    p = sub.add_parser("euler", help="mean Euler characteristic table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--chi-poly", default=None, help="ascending coefficients c0,c1,...")
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("scan", help="enumerate and classify sorted vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--filter", choices=["all", "sphere", "se-sphere"], default="all")
    p.add_argument("--cache", default=None)
    p.add_argument("--paranoid", action="store_true")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "family" and args.kind == "odd" and args.pn is None:
            parser.error("family odd requires --pn")
        return args.func(args)
    except RefusalError as err:
        _diag(f"refused: {err}")
        return err.exit_code
    except InvariantViolation as err:
        _diag(f"invariant violation: {err}")
        return err.exit_code
    except ValueError as err:
        _diag(f"error: {err}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
