"""Command-line interface: ``envalg <command> [options]``.

Exit codes: 0 success, 1 computation failure (identity fails, result not
certified, reproduction mismatch), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .algebra import StructureAlgebra, abelian, builtin, check_identity, load_structure_file
from .errors import EnvalgError, NotCertified
from .extension import dorofeev_witness, solvability_check
from .freealg import MonomialOrder
from .groebner import GroebnerState, complete
from .relations import RelationSet, generate_relations
from .scalars import Q, FieldSpec
from .varieties import load_equations, variety

log = logging.getLogger("envalg")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class SessionConfig:
    field: FieldSpec
    variety: str
    algebra: StructureAlgebra
    algebra_name: str
    equations: list
    max_weight: int | None = None
    threads: int = 1
    fmt: str = "text"
    seed: int = 0
    order: str = "standard"

    def monomial_order(self) -> MonomialOrder:
        n = self.algebra.rank
        return MonomialOrder.reversed_indices(n) if self.order == "reversed" else MonomialOrder(n)


def build_config(args) -> SessionConfig:
    explicit = FieldSpec.parse(args.field) if args.field else None
    if args.algebra_file:
        alg = load_structure_file(args.algebra_file, explicit)
        alg_name = f"file:{args.algebra_file}"
    else:
        alg = builtin(args.algebra, explicit or Q)
        alg_name = args.algebra
    field = alg.field
    if args.equation_file:
        eqs = load_equations(args.equation_file, field)
        var_name = f"file:{args.equation_file}"
    else:
        eqs = variety(args.variety, field)
        var_name = args.variety
    return SessionConfig(field, var_name, alg, alg_name, eqs, args.max_weight,
                         args.threads, args.format, args.seed, args.order)


def _relations(cfg: SessionConfig) -> RelationSet:
    return generate_relations(cfg.equations, cfg.algebra, order=cfg.monomial_order())


def _complete(cfg: SessionConfig) -> tuple[RelationSet, GroebnerState]:
    rs = _relations(cfg)
    for w in rs.warnings:
        log.warning(w)
    st = complete(rs, max_weight=cfg.max_weight, threads=cfg.threads)
    return rs, st


def _header(cfg: SessionConfig) -> dict:
    return {"variety": cfg.variety, "algebra": cfg.algebra_name, "field": str(cfg.field),
            "order": [cfg.monomial_order().name(c) for c in cfg.monomial_order().letters]}


def _emit(cfg: SessionConfig, payload: dict, text: str):
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def poincare_payload(st: GroebnerState) -> dict:
    ps = st.poincare()
    return {"counts": ps.counts, "total": ps.total, "series": str(ps),
            "certificate": ps.certificate_line(), "finite": ps.finite_certificate is not None}


def cmd_relations(cfg: SessionConfig, args) -> int:
    rs = _relations(cfg)
    payload = dict(_header(cfg), warnings=rs.warnings,
                   relations=[{"poly": r.poly.format(rs.order), "provenance": r.provenance} for r in rs])
    _emit(cfg, payload, rs.format(provenance=not args.no_provenance, q_form=args.q_form))
    return EXIT_OK


def cmd_groebner(cfg: SessionConfig, args) -> int:
    rs, st = _complete(cfg)
    basis = [g.format(st.order) for g in st.basis]
    if args.export:
        Path(args.export).write_text("\n".join(basis) + "\n")
    try:
        pp = poincare_payload(st)
    except NotCertified as e:
        pp = None
        log.error("%s", e)
    payload = dict(_header(cfg), relations=len(rs), basis=basis, poincare=pp,
                   complete_below=st.complete_below, discarded=st.discarded)
    lines = [f"# {len(rs)} relations, {len(basis)} basis elements"]
    if not args.quiet:
        lines += basis
    if pp:
        lines += [f"Poincare: {pp['series']}", f"total: {pp['total']}", pp["certificate"]]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if pp else EXIT_FAIL


def cmd_normal(cfg: SessionConfig, args) -> int:
    _, st = _complete(cfg)
    words = st.normal_monomials(args.weight)
    names = [st.order.format_word(w) for w in words]
    payload = dict(_header(cfg), weight=args.weight, count=len(names), words=names)
    _emit(cfg, payload, "\n".join([f"# weight {args.weight}: {len(names)} normal words"] + names))
    return EXIT_OK


def cmd_poincare(cfg: SessionConfig, args) -> int:
    _, st = _complete(cfg)
    pp = poincare_payload(st)
    _emit(cfg, dict(_header(cfg), **pp), f"{pp['series']}\ntotal: {pp['total']}\n{pp['certificate']}")
    return EXIT_OK


def cmd_check(cfg: SessionConfig, args) -> int:
    reports = [check_identity(cfg.algebra, eq) for eq in cfg.equations]
    payload = dict(_header(cfg), reports=[r.to_json() for r in reports],
                   holds=all(r.holds for r in reports))
    _emit(cfg, payload, "\n".join(str(r) for r in reports) or "no equations")
    return EXIT_OK if payload["holds"] else EXIT_FAIL


def cmd_dorofeev(cfg: SessionConfig, args) -> int:
    n = args.n
    F = cfg.field
    order = MonomialOrder(n) if cfg.order == "standard" else MonomialOrder.reversed_indices(n)
    A = abelian(n, F)
    rs = generate_relations(variety("alt", F), A, order=order)
    st = complete(rs, max_weight=cfg.max_weight, threads=cfg.threads)
    x = dorofeev_witness(n, st, A)
    rep = solvability_check(st, args.trials, cfg.seed, A)
    payload = {"n": n, "field": str(F), "witness": str(x), "nonzero": bool(x),
               "solvability": rep.to_json()}
    _emit(cfg, payload, f"witness: {x}\n{rep}")
    return EXIT_OK if x and rep.passed else EXIT_FAIL


# -- reproduction table ---------------------------------------------------------

REPRO_CASES = (
    [(f"alt-abelian{n}-{f}", "alt", f"abelian:{n}", f) for n in range(1, 6) for f in ("Q", "Fp:2", "Fp:3")]
    + [("alt-complex-Q", "alt", "complex", "Q"), ("alt-complex-Fp:3", "alt", "complex", "Fp:3"),
       ("alt-quaternion-Q", "alt", "quaternion", "Q"),
       ("alt-octonion-Q", "alt", "octonion", "Q"), ("alt-octonion-Fp:3", "alt", "octonion", "Fp:3"),
       ("alt-octonion-Fp:2", "alt", "octonion", "Fp:2"),
       ("triv-abelian3-Q", "triv", "abelian:3", "Q"), ("ass-abelian3-Q", "ass", "abelian:3", "Q")]
)


def repro_table(threads: int = 1) -> dict:
    out = {}
    for name, var, alg, fld in REPRO_CASES:
        F = FieldSpec.parse(fld)
        A = builtin(alg, F)
        st = complete(generate_relations(variety(var, F), A), threads=threads)
        pp = poincare_payload(st)
        out[name] = {"counts": pp["counts"], "total": pp["total"], "basis_size": len(st.basis)}
        log.info("%s: %s", name, pp["series"])
    return out


def _expected_path() -> Path:
    return Path(str(resources.files("envalg") / "data" / "expected.json"))


def cmd_repro(cfg: SessionConfig | None, args) -> int:
    t0 = time.time()
    got = repro_table(args.threads)
    if args.update:
        _expected_path().write_text(json.dumps(got, indent=2, sort_keys=True) + "\n")
        print(f"wrote {_expected_path()}")
        return EXIT_OK
    want = json.loads(_expected_path().read_text())
    bad = 0
    for name in sorted(set(want) | set(got)):
        ok = want.get(name) == got.get(name)
        bad += not ok
        print(f"{'ok  ' if ok else 'DIFF'} {name}: {got.get(name, {}).get('total')}"
              + ("" if ok else f" (expected {want.get(name)})"))
    print(f"{len(got) - bad}/{len(got)} cases match ({time.time() - t0:.1f}s)")
    return EXIT_OK if bad == 0 else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="Q or Fp:p (default Q, or the algebra file's field)")
    common.add_argument("--variety", default="alt", help="built-in variety name (default alt)")
    common.add_argument("--algebra", default="abelian:2",
                        help="abelian:n, complex, quaternion, octonion, file:PATH or magma:PATH")
    common.add_argument("--equation-file", help="equations, one per line")
    common.add_argument("--algebra-file", help="JSON structure-constant file")
    common.add_argument("--max-weight", type=int, default=None, help="weight cap (default 2*rank+2)")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=20240229)
    common.add_argument("--order", choices=("standard", "reversed"), default=None,
                        help="letter order: l1 > r1 > l2 > ... (standard) or ln > rn > ... (reversed); "
                             "dorofeev defaults to reversed, everything else to standard")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="envalg", description="Universal enveloping algebras of varieties of algebras")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("relations", parents=[common], help="list the defining relations")
    s.add_argument("--q-form", action="store_true", help="write l_i as q_i - r_i")
    s.add_argument("--no-provenance", action="store_true")
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("groebner", parents=[common], help="complete to a Groebner basis")
    s.add_argument("--export", help="write the basis to this file")
    s.add_argument("-q", "--quiet", action="store_true", help="do not print the basis")
    s.set_defaults(func=cmd_groebner)

    s = sub.add_parser("normal", parents=[common], help="normal words of one weight")
    s.add_argument("--weight", type=int, required=True)
    s.set_defaults(func=cmd_normal)

    s = sub.add_parser("poincare", parents=[common], help="per-weight dimensions")
    s.set_defaults(func=cmd_poincare)

    s = sub.add_parser("check", parents=[common], help="does the algebra satisfy the equations?")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dorofeev", parents=[common], help="nonzero long product in a solvable extension")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--trials", type=int, default=1000)
    s.set_defaults(func=cmd_dorofeev)

    s = sub.add_parser("repro", parents=[common], help="rerun the reference table and compare")
    s.add_argument("--update", action="store_true", help="overwrite the stored expected values")
    s.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.order is None:
        args.order = "reversed" if args.func is cmd_dorofeev else "standard"
    try:
        if args.max_weight is not None and args.max_weight < 2:
            raise ValueError("--max-weight must be at least 2")
        cfg = None if args.func is cmd_repro else build_config(args)
        if args.func is cmd_dorofeev and args.n < 2:
            raise ValueError("--n must be at least 2")
        return args.func(cfg, args)
    except NotCertified as e:
        print(f"error: not certified: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (EnvalgError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
