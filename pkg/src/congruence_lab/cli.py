"""Command line front end.

Options may come from flags or from a flat key=value config file
(--config); flags win.  Thread count falls back to the
CONGRUENCE_LAB_THREADS environment variable.  Exit codes: 0 success,
2 validation failure (the message names the violated precondition),
1 internal error.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from fractions import Fraction

import numpy as np

from . import averaged, congruence, dp6, gausssum, reports, sawtooth


def load_config(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line is not key=value: {line!r}")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def _convert(text: str, kind):
    if kind is bool:
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {text!r}")
    return kind(text)


class Options:
    """Flag values overlaid on config values overlaid on defaults."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cfg = load_config(args.config) if args.config else {}

    def get(self, name: str, kind, default=None, required: bool = False):
        value = getattr(self.args, name.replace("-", "_"), None)
        if value is None and name in self.cfg:
            value = _convert(self.cfg[name], kind)
        if value is None:
            if required:
                raise ValueError(f"missing required option --{name}")
            value = default
        return value

    @property
    def threads(self) -> int:
        v = self.get("threads", int)
        if v is None:
            v = int(os.environ.get("CONGRUENCE_LAB_THREADS", "1"))
        if v < 1:
            raise ValueError("threads must be >= 1")
        return v

    @property
    def timings(self) -> bool:
        return bool(self.get("timings", bool, False))

    def emit(self, description: str, fields, rows) -> None:
        out = self.get("out", str)
        if out:
            fmt_name = self.get("format", str, "csv")
            reports.write_report(out, fmt_name, description, fields, rows)
            print(f"wrote {len(rows)} rows to {out}")


def _cmd_gauss(opt: Options) -> int:
    s = opt.get("s", int, required=True)
    t = opt.get("t", int, required=True)
    u = opt.get("u", int, required=True)
    closed = gausssum.gauss_closed(s, t, u)
    brute = gausssum.gauss_brute(s, t, u)
    err = abs(closed.value - brute)
    tol = 1e-6 * math.sqrt(u)
    print(f"G({s},{t};{u})")
    print(
        f"  closed = {closed.value!r}  [coefficient={closed.coefficient!r},"
        f" unit={closed.unit!r}, jacobi={closed.jacobi},"
        f" radicand={closed.radicand}, phase={closed.phase}]"
    )
    print(f"  brute  = {brute!r}")
    print(f"  |closed-brute| = {err:.3e}  tolerance = {tol:.3e}  match = {err <= tol}")
    return 0 if err <= tol else 1


def _cmd_count(opt: Options) -> int:
    inst = congruence.CongruenceInstance(
        opt.get("a", int, required=True),
        opt.get("b", int, required=True),
        opt.get("q", int, required=True),
        opt.get("X", Fraction, required=True),
        opt.get("Y", Fraction, required=True),
        opt.get("e", int, 1),
        opt.get("f", int, 2),
    )
    if (inst.e, inst.f) == (1, 2):
        rep = congruence.box_report(inst)
        print(f"exact     = {rep.exact}")
        print(f"main_term = {rep.main_term!r}")
        print(f"envelope  = {rep.envelope!r}")
        print(f"ratio     = {rep.ratio!r}")
        opt.emit(
            "congruence box counts: exact vs main term and error envelope",
            reports.BOX_FIELDS,
            [reports.box_row(rep, opt.timings)],
        )
    else:
        exact = congruence.count_exact(inst)
        print(f"exact     = {exact}")
        print("main_term = (defined only for e=1, f=2)")
    return 0


def _parse_rule(text: str):
    if text == "q":
        return lambda q: q
    return Fraction(text)


def _cmd_count_scan(opt: Options) -> int:
    limit = opt.get("primes-up-to", int, 100)
    q_list = opt.get("q-list", str)
    if q_list:
        qs = [int(part) for part in q_list.split(",") if part.strip()]
    else:
        qs = dp6.sieve_primes(limit)
    reps = congruence.scan_boxes(
        qs,
        opt.get("a", int, 1),
        opt.get("b", int, 1),
        _parse_rule(opt.get("x", str, "q")),
        _parse_rule(opt.get("y", str, "q")),
        threads=opt.threads,
    )
    rows = [reports.box_row(r, opt.timings) for r in reps]
    worst = max((r.ratio for r in reps), default=0.0)
    print(f"instances = {len(reps)}   max |exact - main|/envelope = {worst!r}")
    opt.emit(
        "congruence box counts: exact vs main term and error envelope",
        reports.BOX_FIELDS,
        rows,
    )
    return 0


def _cmd_vaaler(opt: Options) -> int:
    H = opt.get("H", int, required=True)
    samples = opt.get("samples", int, 100000)
    seed = opt.get("seed", int, 0)
    rng = random.Random(seed)
    xs = np.array([rng.random() for _ in range(samples)])
    poly = sawtooth.vaaler_polynomial(H)
    approx = poly.evaluate_many(xs)
    target = np.array([sawtooth.psi(float(x)) for x in xs])
    slack = np.abs(target - approx) - sawtooth.fejer_majorant_many(xs, H)
    violations = int((slack > 0).sum())
    worst = float(slack.max())
    print(f"H = {H}: {violations} violations in {samples} samples;"
          f" worst slack = {worst!r}")
    opt.emit(
        "sawtooth approximation: majorant violations at random points",
        reports.VAALER_FIELDS,
        [{
            "H": reports.fmt(H),
            "samples": reports.fmt(samples),
            "seed": reports.fmt(seed),
            "violations": reports.fmt(violations),
            "worst_slack": reports.fmt(worst),
        }],
    )
    return 0


def _cmd_avg_scan(opt: Options) -> int:
    X = opt.get("X", Fraction, Fraction(2))
    family_args = dict(
        l=opt.get("l", int, 1),
        m=opt.get("m", int, 1),
        r=opt.get("r", int, 1),
        s=opt.get("s", int, 1),
        t=opt.get("t", int, 3),
        U=opt.get("U", Fraction, Fraction(1)),
        V=opt.get("V", Fraction, Fraction(1)),
        W=opt.get("W", Fraction, Fraction(1)),
        J=congruence.Interval(
            opt.get("y0", Fraction, Fraction(0)),
            opt.get("Y", Fraction, Fraction(8)),
        ),
        bounds=averaged.constant_bounds(X),
        scheme=opt.get("scheme", str, "joint"),
    )
    epsilon = opt.get("epsilon", float, 0.05)
    seed0 = opt.get("seed", int, 0)
    n_seeds = opt.get("seeds", int, 1)
    rows = []
    for seed in range(seed0, seed0 + n_seeds):
        fam = averaged.AveragedFamily(seed=seed, **family_args)
        H = opt.get("H", float)
        if H is None:
            H = averaged.suggest_H(fam, epsilon)
        rep = averaged.avg_report(fam, H, epsilon)
        rows.append(reports.averaged_row(rep))
        print(
            f"seed {seed}: |S - M| = {abs(rep.S - rep.M)!r}  "
            f"budget = {rep.first_O + rep.T_envelope!r}  ratio = {rep.ratio!r}"
        )
    opt.emit(
        "averaged congruence sums: exact weighted sum vs main term vs budget",
        reports.AVERAGED_FIELDS,
        rows,
    )
    return 0


def _cmd_dp6_enumerate(opt: Options) -> int:
    B = opt.get("B", int, required=True)
    t = opt.get("t", int, 12)
    count, recs = dp6.enumerate_lower_bound_points(B, t)
    print(f"B = {B}, t = {t}: {count} points")
    opt.emit(
        "almost-prime surface points from the q-window torsor family",
        reports.POINT_FIELDS,
        [reports.point_row(r) for r in recs],
    )
    return 0


def _cmd_dp6_growth(opt: Options) -> int:
    b_list = opt.get("B-list", str, "10000,100000,1000000")
    t = opt.get("t", int, 12)
    Bs = [int(part) for part in b_list.split(",") if part.strip()]
    rows = dp6.m_t_growth(Bs, t, threads=opt.threads)
    for row in rows:
        print(f"B = {row.B:>12}  count = {row.count:>10}  "
              f"count*log(B)^5/B = {row.normalized!r}")
    opt.emit(
        "almost-prime point counts by budget with log-power normalization",
        reports.GROWTH_FIELDS,
        [reports.growth_row(r) for r in rows],
    )
    return 0


def _cmd_dp6_sieve(opt: Options) -> int:
    report = dp6.sieve_condition_report(
        opt.get("B", int, 1000),
        opt.get("q", int, 7),
        opt.get("tau", float, 0.4),
        opt.get("c2", float, 1.0),
        opt.get("z-max", int, 1000),
        opt.get("rho-max", int, 30),
        opt.get("t", int, 12),
        opt.get("mu", float, 4.0),
    )
    import json

    text = json.dumps(report, indent=2) + "\n"
    out = opt.get("out", str)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote sieve report to {out}")
    else:
        print(text, end="")
    return 0


def _cmd_bilinear(opt: Options) -> int:
    M = opt.get("M", int, 128)
    N = opt.get("N", int, 128)
    epsilon = opt.get("epsilon", float, 0.05)
    seed0 = opt.get("seed", int, 0)
    n_seeds = opt.get("seeds", int, 1)
    if M < 1 or N < 1:
        raise ValueError("M and N must be >= 1")
    rows = []
    for seed in range(seed0, seed0 + n_seeds):
        rng = random.Random(seed)
        a = [rng.choice((-1, 1)) for _ in range((M + 1) // 2)]
        b = [rng.choice((-1, 1)) for _ in range(N)]
        res = congruence.bilinear_jacobi(a, b, epsilon)
        ratio = abs(res.value) / res.bound
        print(f"seed {seed}: |sum| = {abs(res.value)!r}  "
              f"bound = {res.bound!r}  ratio = {ratio!r}")
        rows.append({
            "M": reports.fmt(res.M),
            "N": reports.fmt(res.N),
            "seed": reports.fmt(seed),
            "epsilon": reports.fmt(epsilon),
            "abs_sum": reports.fmt(abs(res.value)),
            "bound": reports.fmt(res.bound),
            "ratio": reports.fmt(ratio),
        })
    opt.emit(
        "bilinear Jacobi-symbol sums vs cancellation benchmark",
        reports.BILINEAR_FIELDS,
        rows,
    )
    return 0


_COMMANDS = {
    "gauss": (_cmd_gauss, "closed form vs direct quadratic Gauss sum"),
    "count": (_cmd_count, "one exact box count with main term and envelope"),
    "count-scan": (_cmd_count_scan, "box counts over a family of moduli"),
    "vaaler": (_cmd_vaaler, "sawtooth approximation majorant check"),
    "avg-scan": (_cmd_avg_scan, "averaged sums over dyadic coefficient families"),
    "dp6-enumerate": (_cmd_dp6_enumerate, "almost-prime surface points"),
    "dp6-growth": (_cmd_dp6_growth, "almost-prime counts by budget"),
    "dp6-sieve": (_cmd_dp6_sieve, "sieve condition report (JSON)"),
    "bilinear": (_cmd_bilinear, "bilinear Jacobi-symbol sum benchmark"),
}

_INT_OPTS = ("s", "t", "u", "a", "b", "q", "e", "f", "H", "samples", "seed",
             "seeds", "threads", "primes-up-to", "B", "M", "N", "l", "m", "r",
             "z-max", "rho-max")
_FRACTION_OPTS = ("X", "Y", "U", "V", "W", "y0")
_FLOAT_OPTS = ("epsilon", "tau", "c2", "mu")
_STR_OPTS = ("config", "out", "format", "x", "y", "q-list", "B-list", "scheme")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congruence-lab",
        description="exact congruence counting, Gauss sums, and almost-prime points",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        for o in _INT_OPTS:
            p.add_argument(f"--{o}", type=int, default=None)
        for o in _FRACTION_OPTS:
            p.add_argument(f"--{o}", type=Fraction, default=None)
        for o in _FLOAT_OPTS:
            p.add_argument(f"--{o}", type=float, default=None)
        for o in _STR_OPTS:
            p.add_argument(f"--{o}", type=str, default=None)
        p.add_argument("--timings", action="store_const", const=True, default=None)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler, _ = _COMMANDS[args.command]
        return handler(Options(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
