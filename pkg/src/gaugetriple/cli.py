"""
Command-line front end.

Exit codes: 0 when every check passes or the candidate is on-shell, 1 on a
mathematical failure or an off-shell candidate, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import config as cfgmod
from .checks import FAIL, run_checks
from .errors import AlgebraError, ConfigError, PolyParseError, ShapeError
from .forms import ALGEBRA, GForm
from .gauge import curvature
from .jets import curvature_matrix, jet_of, split_jet
from .triple import dynamics_residuals, legendre, legendre_regularity
from .ym import YMProblem, maxwell_check, triple_consistency, ym_lagrangian, ym_residual

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Report:
    def __init__(self, command: str, cfg):
        self.lines: List[str] = []
        self.data = {"command": command, "config": cfg.source, "dim": cfg.dim,
                     "metric": str(cfg.metric), "algebra": cfg.algebra.name}
        self.code = EXIT_OK

    def line(self, text=""):
        self.lines.append(text)


def _label(g: GForm, name: str, a: int, idx) -> str:
    tag = "e" if g.valence == ALGEBRA else "e*"
    return f"{name}[{tag}{a + 1}][{''.join(map(str, idx))}]"


def _form_block(rep: Report, name: str, g: GForm):
    items = g.serialize()
    for a, idx, s in items:
        rep.line(f"{_label(g, name, a, idx)} = {s}")
    if not items:
        rep.line(f"{name} = 0")
    return [[a + 1, list(idx), s] for a, idx, s in items]


def _q(v: Fraction) -> str:
    return str(v)


def _arr(x):
    if isinstance(x, (tuple, list)):
        return [_arr(v) for v in x]
    return _q(x)


def cmd_check(cfg, args, rep: Report):
    results = run_checks(cfg)
    rep.line(f"seed {cfg.seed}, trials {cfg.trials}")
    rep.data["seed"], rep.data["trials"] = cfg.seed, cfg.trials
    for r in results:
        text = f"{r.status:<7} {r.name}: {r.detail}"
        if r.witness and r.status == FAIL:
            text += f" | witness {r.witness}"
        elif r.witness:
            text += f" | {r.witness}"
        rep.line(text)
    rep.data["checks"] = [r.to_json() for r in results]
    if any(r.status == FAIL for r in results):
        rep.code = EXIT_FAIL


def cmd_curvature(cfg, args, rep: Report):
    rep.data["curvature"] = _form_block(rep, "F", curvature(cfg.connection))


def cmd_dynamics(cfg, args, rep: Report):
    F = curvature(cfg.connection)
    if args.on_shell:
        p = legendre(cfg.lagrangian, cfg.connection, F)
        rep.line("momentum: p = legendre(L)")
    elif cfg.momentum is not None:
        p = cfg.momentum
        rep.line("momentum: from config")
    else:
        raise ConfigError("no [momentum] section; pass --on-shell to use the Legendre map")
    rep.line(f"lagrangian: {cfg.lagrangian_kind}; Legendre map {legendre_regularity(cfg.lagrangian)}")
    rep.data["lagrangian"] = cfg.lagrangian_kind
    rep.data["regularity"] = legendre_regularity(cfg.lagrangian)
    rep.data["momentum"] = _form_block(rep, "p", p)
    res = dynamics_residuals(cfg.lagrangian, cfg.connection, p)
    rep.data["res_momentum"] = _form_block(rep, "res_momentum", res.momentum)
    rep.data["res_field"] = _form_block(rep, "res_field", res.field)
    on = res.is_zero()
    rep.data["on_shell"] = on
    rep.line("ON-SHELL" if on else "OFF-SHELL")
    rep.code = EXIT_OK if on else EXIT_FAIL


def cmd_jet(cfg, args, rep: Report):
    if args.point is not None:
        x = cfgmod.parse_point(args.point, cfg.dim)
    elif cfg.point is not None:
        x = cfg.point
    else:
        raise ConfigError("no point given; pass --point or set [jet] point")
    j = jet_of(cfg.connection, x)
    s = split_jet(j, cfg.algebra)
    expected = curvature_matrix(cfg.connection, x)
    rep.line(f"x = ({', '.join(map(str, x))})")
    rep.line("convention: K[a][mu][lam] = d_lam A^a_mu; F = K'_(lam mu) - K'_(mu lam) after gamma")
    for a in range(cfg.algebra.dim):
        rep.line(f"e{a + 1}: A = {_arr(j.A[a])}")
        rep.line(f"e{a + 1}: K = {_arr(j.K[a])}")
        rep.line(f"e{a + 1}: S = {_arr(s.S[a])}")
        rep.line(f"e{a + 1}: F = {_arr(s.F[a])}")
    ok = s.F == expected
    rep.line(f"cross-check against curvature at x: {'CONSISTENT' if ok else 'INCONSISTENT'}")
    rep.data.update(point=_arr(x), A=_arr(j.A), K=_arr(j.K), S=_arr(s.S), F=_arr(s.F),
                    curvature=_arr(expected), consistent=ok)
    rep.code = EXIT_OK if ok else EXIT_FAIL


def cmd_ym(cfg, args, rep: Report):
    prob = YMProblem(cfg.algebra, cfg.metric, cfg.connection)
    rep.line(f"metric signature ({cfg.metric})")
    lag = ym_lagrangian(prob)
    items = lag.serialize()
    for idx, s in items:
        rep.line(f"L[{''.join(map(str, idx))}] = {s}")
    if not items:
        rep.line("L = 0")
    rep.data["lagrangian"] = [[list(i), s] for i, s in items]
    rep.data["residual"] = _form_block(rep, "residual", ym_residual(prob))
    cons = triple_consistency(prob)
    rep.line(f"triple route: {'AGREES' if cons.consistent else 'DISAGREES'} "
             f"(field residual = {cons.sign:+d} * YM residual)")
    rep.data["consistent"] = cons.consistent
    if cfg.algebra.is_abelian():
        mx = maxwell_check(prob)
        rep.line(f"maxwell d*F: {'EQUAL' if mx.equal else 'DIFFERENT'}")
        rep.data["maxwell_equal"] = mx.equal
    on = cons.on_shell()
    rep.line("ON-SHELL" if on else "OFF-SHELL")
    rep.data["on_shell"] = on
    rep.code = EXIT_OK if on and cons.consistent else EXIT_FAIL


COMMANDS = {
    "check": (cmd_check, "run the identity suite"),
    "curvature": (cmd_curvature, "print curvature components"),
    "dynamics": (cmd_dynamics, "print reduced dynamics residuals"),
    "jet": (cmd_jet, "split the first jet of the connection at a point"),
    "ym": (cmd_ym, "Yang-Mills Lagrangian, residual and route comparison"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaugetriple", description="Exact gauge-field calculations.")
    parser.add_argument("--list-bundled", action="store_true", help="list bundled configs and exit")
    sub = parser.add_subparsers(dest="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help=f"path or bundled:<name>; defaults to ${cfgmod.ENV_VAR}")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, help="override [check] seed")
        p.add_argument("--trials", type=int, help="override [check] trials")
        p.add_argument("--point", help="comma-separated rationals, e.g. 1,1/2")
        p.add_argument("--on-shell", action="store_true", help="use the Legendre map for the momentum")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_bundled:
        print("\n".join(cfgmod.bundled_names()))
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        cfg = cfgmod.load(args.config)
        if args.trials is not None:
            if args.trials < 0:
                raise ConfigError("--trials must be nonnegative")
            cfg.trials = args.trials
        if args.seed is not None:
            cfg.seed = args.seed
        rep = Report(args.command, cfg)
        COMMANDS[args.command][0](cfg, args, rep)
    except (ConfigError, PolyParseError, ShapeError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.data["exit"] = rep.code
    if args.json:
        sys.stdout.write(json.dumps(rep.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(rep.lines) + "\n")
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
