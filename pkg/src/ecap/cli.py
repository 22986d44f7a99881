"""Command-line front door: every module surfaced as a subcommand.

All output is a single JSON report on stdout (or a flat text rendering with
--output text): {"command", "inputs", "result", "citations"} where citations
list the formulas the command evaluated.  Exit codes: 0 on success, 2 when an
inequality check ran but its preconditions failed (the verdict is still
printed), 1 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from ecap import bounds as bounds_mod
from ecap import gaps, heights, progressions
from ecap.curves import (invariants, parse_general_curve, parse_short_curve,
                         rescale, to_short_form, x_prime_bound)
from ecap.points import (add, enumerate_points, format_point, mul, on_curve,
                         parse_point, scan_points, torsion_order)
from ecap.rationals import as_fraction, parse_rational
from ecap.heights import HeightBudgetError

HEIGHT_CONVENTION = "doubling-limit lim h(2^n P)/4^n (not halved)"

CITE_CURVE = [
    "delta = -16*(4*A^3 + 27*B^2)",
    "j = 1728*4*A^3 / (4*A^3 + 27*B^2)",
    "X = max(|A|^3, B^2)",
    "h(delta) <= log(X) + 6.21",
    "h(j) <= log(X) + 8.85",
]
CITE_REDUCE = [
    "x -> (x - 3*b2)/36, y-shift matching, with b2 = a1^2 + 4*a2",
    "A = -27*c4, B = -54*c6",
    "delta_short = 6^12 * delta_general",
]
CITE_RESCALE = [
    "(x, y) -> (x*k^2, y*k^3) lands on y^2 = x^3 + k^4*A*x + k^6*B",
    "log X' = 12*log(k) + log(X)",
]
CITE_CANONICAL = [
    "hhat(P) = lim h(2^n P) / 4^n",
    "|hhat(P) - h(2^n P)/4^n| <= C/4^n, "
    "C = max((5/12)log X + 5.2, (1/3)log X + 4.65)",
]
CITE_ANGLE = [
    "cos(P,Q) = (hhat(P+Q) - hhat(P) - hhat(Q)) / (2*sqrt(hhat(P)*hhat(Q)))",
    "cos(P,Q) = (hhat(P) + hhat(Q) - hhat(P-Q)) / (2*sqrt(hhat(P)*hhat(Q)))",
]
CITE_LEMMA = [
    "good term: gcd(x_i, s) <= s^delta",
    "count >= floor(N / (2*m)) once s >= prod_{j=1}^{2m-1} j!, m = ceil(1/delta)",
    "gcd(g_i, g_j) divides (j - i)",
    "g_1*...*g_j divides (1!*2!*...*(j-1)!) * lcm(g_1, ..., g_j)",
]
CITE_RATE = [
    "rate = t*log(t) - u*log(u), t = (1+sin)/(2 sin), u = (1-sin)/(2 sin)",
]
CITE_OBTUSE = [
    "0 <= |v_1 + ... + v_k|^2 <= k + k*(k-1)*max_cos",
]
CITE_COUNTING = ["A = floor(sqrt(9*M / c_L)) + 1"]


import re

_VALUE_WITH_DASH = re.compile(r"^-\d+([,/.;].*)?$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # values like "-1,0", "-383/1000" or "-1,0;0,0" are data, not flags
        self._negative_number_matcher = _VALUE_WITH_DASH

    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _render_text(data, indent=0):
    lines = []
    pad = "  " * indent
    if isinstance(data, dict):
        for key, val in data.items():
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(data, list):
        for val in data:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def _emit(args, command, inputs, result, citations):
    report = {"command": command, "inputs": inputs, "result": result,
              "citations": citations}
    if args.output == "text":
        print("\n".join(_render_text(report)))
    else:
        print(json.dumps(report, indent=2))


def _config(args) -> bounds_mod.LangConfig:
    data = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            data = json.load(fh)
    if getattr(args, "c_l", None) is not None:
        data["c_L"] = args.c_l
    if getattr(args, "kl_slack", None) is not None:
        data["kl_slack"] = args.kl_slack
    return bounds_mod.LangConfig.from_json_dict(data)


def _gap_params(args) -> gaps.GapParams:
    return gaps.GapParams(delta=as_fraction(args.delta), gamma=args.gamma,
                          height_multiple=args.height_multiple,
                          ratio_cap=getattr(args, "ratio_cap", None) or 2.0)


# --------------------------------------------------------------- handlers


def _cmd_curve(args):
    if args.action == "info":
        sw = parse_short_curve(args.curve)
        _emit(args, "curve info", {"curve": args.curve},
              invariants(sw).as_json_dict(), CITE_CURVE)
        return 0
    if args.action == "reduce":
        gw = parse_general_curve(args.general)
        sw = to_short_form(gw)
        result = {
            "short": f"{sw.A},{sw.B}",
            "A": str(sw.A),
            "B": str(sw.B),
            "delta_general": str(gw.discriminant()),
            "delta_short": str(sw.discriminant()),
            "note": "size bounds downstream assume the input model is minimal",
        }
        _emit(args, "curve reduce", {"general": args.general}, result,
              CITE_REDUCE)
        return 0
    sw = parse_short_curve(args.curve)
    scaled = rescale(sw, args.k)
    b = x_prime_bound(sw, args.k)
    result = {
        "short": f"{scaled.A},{scaled.B}",
        "log_x_prime": b.log_x_prime,
        "m_lower": b.m_lower,
        "m_upper": b.m_upper,
    }
    _emit(args, "curve rescale", {"curve": args.curve, "k": args.k}, result,
          CITE_RESCALE)
    return 0


def _cmd_point(args):
    sw = parse_short_curve(args.curve)
    if args.action == "add":
        p, q = parse_point(args.p), parse_point(args.q)
        result = {"point": format_point(add(sw, p, q))}
        _emit(args, "point add", {"curve": args.curve, "p": args.p, "q": args.q},
              result, ["chord-tangent group law on y^2 = x^3 + A*x + B"])
        return 0
    if args.action == "mul":
        p = parse_point(args.p)
        result = {"point": format_point(mul(sw, args.n, p))}
        _emit(args, "point mul", {"curve": args.curve, "n": args.n, "p": args.p},
              result, ["double-and-add over the chord-tangent law"])
        return 0
    if args.action == "torsion":
        p = parse_point(args.p)
        order = torsion_order(sw, p)
        result = {"is_torsion": order is not None, "order": order}
        _emit(args, "point torsion", {"curve": args.curve, "p": args.p},
              result, ["torsion orders over Q lie in {1..10, 12}"])
        return 0
    scan = scan_points(sw, args.log_height, budget=args.budget)
    result = {
        "points": [format_point(p) for p in scan.points],
        "count": len(scan.points),
        "truncated": scan.truncated,
        "candidates": scan.candidates,
    }
    _emit(args, "point enumerate",
          {"curve": args.curve, "log_height": args.log_height,
           "budget": args.budget},
          result, ["x = m/e^2, y = n/e^3 with m^3 + A*m*e^4 + B*e^6 = n^2"])
    return 0


def _cmd_height(args):
    sw = parse_short_curve(args.curve)
    p = parse_point(args.p)
    if args.action == "weil":
        result = {"value": heights.weil_height(sw, p)}
        _emit(args, "height weil", {"curve": args.curve, "p": args.p}, result,
              ["h(P) = log max(|num x(P)|, den x(P))"])
        return 0
    est = heights.canonical_height(sw, p, tol=args.tol,
                                   bit_budget=args.bit_budget)
    result = {
        "value": est.value,
        "error_bound": est.error_bound,
        "doublings": est.doublings,
        "convention": HEIGHT_CONVENTION,
    }
    _emit(args, "height canonical",
          {"curve": args.curve, "p": args.p, "tol": args.tol}, result,
          CITE_CANONICAL)
    return 0


def _cmd_angle(args):
    sw = parse_short_curve(args.curve)
    p, q = parse_point(args.p), parse_point(args.q)
    forms = heights.cos_angle_forms(sw, p, q, tol=args.tol)
    result = dict(forms)
    result["cos"] = heights.cos_angle(sw, p, q, tol=args.tol)
    result["convention"] = HEIGHT_CONVENTION
    _emit(args, "angle",
          {"curve": args.curve, "p": args.p, "q": args.q, "tol": args.tol},
          result, CITE_ANGLE)
    return 0


def _cmd_gap(args):
    sw = parse_short_curve(args.curve)
    p, q = parse_point(args.p), parse_point(args.q)
    if args.action == "sum":
        verdict = gaps.check_sum_height(sw, p, q, args.s,
                                        as_fraction(args.delta))
    elif args.action == "small-x":
        verdict = gaps.check_sum_height_small_x(sw, p, q, args.s)
    elif args.action == "small-s":
        verdict = gaps.check_gap_small_s(sw, p, q, args.s, _gap_params(args),
                                         tol=args.tol)
    elif args.action == "large-s":
        verdict = gaps.check_gap_large_s(sw, p, q, args.s, _gap_params(args),
                                         tol=args.tol)
    else:
        verdict = gaps.check_gap2_large_s(sw, p, q, args.s, _gap_params(args),
                                          tol=args.tol)
    inputs = {"curve": args.curve, "p": args.p, "q": args.q, "s": args.s}
    for key in ("delta", "gamma", "height_multiple", "ratio_cap", "tol"):
        if getattr(args, key, None) is not None:
            inputs[key] = getattr(args, key)
    _emit(args, f"gap {args.action}", inputs, verdict.as_json_dict(),
          [verdict.citation])
    return 0 if verdict.preconditions_met else 2


def _cmd_ap(args):
    if args.action == "check":
        sw = parse_short_curve(args.curve)
        ap = progressions.from_params(parse_rational(args.start),
                                      parse_rational(args.diff), args.len)
        lift = progressions.verify_ap_on_curve(sw, ap)
        result = {
            "ok": lift.ok,
            "failed_index": lift.failed_index,
            "points": [format_point(p) for p in lift.points] if lift.ok else None,
        }
        _emit(args, "ap check",
              {"curve": args.curve, "start": args.start, "diff": args.diff,
               "len": args.len},
              result, ["r^3 + A*r + B must be the square of a rational"])
        return 0
    if args.action == "search":
        sw = parse_short_curve(args.curve)
        probe = progressions.nx_lower_bound(sw, args.log_height,
                                            budget=args.budget)
        result = {
            "length": probe.length,
            "ap": probe.ap.as_json_dict() if probe.ap else None,
            "points_found": probe.points_found,
            "truncated": probe.truncated,
        }
        _emit(args, "ap search",
              {"curve": args.curve, "log_height": args.log_height,
               "budget": args.budget},
              result, ["longest progression among x of enumerated points"])
        return 0
    pts = [parse_point(chunk) for chunk in args.points.split(";") if chunk]
    ap = progressions.longest_x_ap(pts)
    _emit(args, "ap longest", {"points": args.points},
          {"length": ap.length, "ap": ap.as_json_dict()},
          ["dynamic program over sorted distinct x-values"])
    return 0


def _cmd_lemma(args):
    if args.action == "report":
        ap = progressions.from_params(parse_rational(args.start),
                                      parse_rational(args.diff), args.len)
        report = progressions.main_lemma_report(ap, as_fraction(args.delta))
        _emit(args, "lemma report",
              {"start": args.start, "diff": args.diff, "len": args.len,
               "delta": args.delta},
              report.as_json_dict(), CITE_LEMMA)
        return 0
    if args.action == "divisibility":
        ap = progressions.from_params(parse_rational(args.start),
                                      parse_rational(args.diff), args.len)
        holds = progressions.window_divisibility_check(ap,
                                                       as_fraction(args.delta))
        _emit(args, "lemma divisibility",
              {"start": args.start, "diff": args.diff, "len": args.len,
               "delta": args.delta},
              {"holds": holds}, CITE_LEMMA[2:])
        return 0
    deltas = [as_fraction(chunk) for chunk in args.deltas.split(",")]
    result = progressions.sweep_main_lemma(
        a_max=args.a_max, u_max=args.u_max, b_max=args.b_max,
        v_max=args.v_max, n_max=args.n_max, deltas=deltas,
        force_python=args.force_python)
    _emit(args, "lemma sweep",
          {"a_max": args.a_max, "u_max": args.u_max, "b_max": args.b_max,
           "v_max": args.v_max, "n_max": args.n_max, "deltas": args.deltas},
          result.as_json_dict(), CITE_LEMMA)
    return 0


def _theta_of(args) -> float:
    if args.theta is not None:
        return args.theta
    if args.cos is None:
        raise ValueError("provide --theta or --cos")
    return math.acos(args.cos)


def _cmd_code(args):
    if args.action == "rate":
        theta = _theta_of(args)
        result = {"theta": theta, "cos": math.cos(theta),
                  "rate": bounds_mod.kl_rate(theta)}
        _emit(args, "code rate", {"theta": args.theta, "cos": args.cos},
              result, CITE_RATE)
        return 0
    if args.action == "base":
        theta = _theta_of(args)
        result = {"theta": theta, "cos": math.cos(theta),
                  "slack": args.slack,
                  "base": bounds_mod.kl_base(theta, args.slack)}
        _emit(args, "code base",
              {"theta": args.theta, "cos": args.cos, "slack": args.slack},
              result, [CITE_RATE[0], "base = exp(rate + slack)"])
        return 0
    cert3 = bounds_mod.obtuse_certificate(3)
    cert4 = bounds_mod.obtuse_certificate(4)
    result = {
        "bound": bounds_mod.obtuse_code_bound(),
        "witness_k3": {"k": 3,
                       "sum_norm_lower_bound": str(cert3["sum_norm_lower_bound"]),
                       "feasible": cert3["feasible"]},
        "infeasible_k4": {"k": 4,
                          "sum_norm_lower_bound": str(cert4["sum_norm_lower_bound"]),
                          "feasible": cert4["feasible"]},
    }
    _emit(args, "code obtuse", {}, result, CITE_OBTUSE)
    return 0


def _cmd_bound(args):
    cfg = _config(args)
    if args.action == "counting":
        result = {"A": bounds_mod.counting_constant(args.height_multiple, cfg)}
        _emit(args, "bound counting",
              {"height_multiple": args.height_multiple, "c_L": cfg.c_lang},
              result, CITE_COUNTING)
        return 0
    if args.action == "integral":
        bound, ledger = bounds_mod.integral_ap_bound(args.rank, cfg)
        cites = ["N <= 8 * c * A^rank", CITE_COUNTING[0], CITE_RATE[0]]
    else:
        bound, ledger = bounds_mod.rational_ap_bound(args.rank, cfg)
        cites = ["N <= max(320 * c * A^rank, 240 * c' * A'^rank)",
                 CITE_COUNTING[0], CITE_RATE[0]]
    result = {"bound": bound, "ledger": ledger.as_json_dict()}
    _emit(args, f"bound {args.action}",
          {"rank": args.rank, "c_L": cfg.c_lang, "kl_slack": cfg.kl_slack},
          result, cites)
    return 0


# ----------------------------------------------------------------- parser


def _add_common(sub):
    sub.add_argument("--output", choices=("json", "text"), default="json")


def _add_config_opts(sub):
    sub.add_argument("--config", help="path to a JSON LangConfig")
    sub.add_argument("--c-l", dest="c_l", type=float,
                     help="conjectural height constant (overrides config)")
    sub.add_argument("--kl-slack", dest="kl_slack", type=float)


def _add_gap_params(sub, with_ratio: bool):
    sub.add_argument("--delta", required=True,
                     help="shared-factor exponent, p/q or decimal")
    sub.add_argument("--gamma", type=float, required=True)
    sub.add_argument("--height-multiple", dest="height_multiple", type=float,
                     required=True, help="M in hhat > M log X")
    if with_ratio:
        sub.add_argument("--ratio-cap", dest="ratio_cap", type=float,
                         required=True, help="alpha > 1 capping height ratios")
    sub.add_argument("--tol", type=float, default=1e-3)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ecap",
                     description="exact elliptic-curve arithmetic, heights, "
                                 "gap checks, progressions, and bounds")
    top = parser.add_subparsers(dest="group", required=True)

    curve = top.add_parser("curve").add_subparsers(dest="action", required=True)
    c_info = curve.add_parser("info")
    c_info.add_argument("--curve", required=True, help='"A,B"')
    c_red = curve.add_parser("reduce")
    c_red.add_argument("--general", required=True, help='"a1,a2,a3,a4,a6"')
    c_res = curve.add_parser("rescale")
    c_res.add_argument("--curve", required=True)
    c_res.add_argument("--k", type=int, required=True)
    for sub in (c_info, c_red, c_res):
        _add_common(sub)

    point = top.add_parser("point").add_subparsers(dest="action", required=True)
    p_add = point.add_parser("add")
    p_add.add_argument("--q", required=True, help='"x,y" or "O"')
    p_mul = point.add_parser("mul")
    p_mul.add_argument("--n", type=int, required=True)
    p_tor = point.add_parser("torsion")
    p_enum = point.add_parser("enumerate")
    p_enum.add_argument("--log-height", dest="log_height", type=float,
                        required=True)
    p_enum.add_argument("--budget", type=int, default=None,
                        help="max candidates scanned")
    for sub in (p_add, p_mul, p_tor):
        sub.add_argument("--p", required=True, help='"x,y" or "O"')
    for sub in (p_add, p_mul, p_tor, p_enum):
        sub.add_argument("--curve", required=True)
        _add_common(sub)

    height = top.add_parser("height").add_subparsers(dest="action",
                                                     required=True)
    h_weil = height.add_parser("weil")
    h_can = height.add_parser("canonical")
    h_can.add_argument("--tol", type=float, default=1e-3)
    h_can.add_argument("--bit-budget", dest="bit_budget", type=int,
                       default=heights.DEFAULT_BIT_BUDGET)
    for sub in (h_weil, h_can):
        sub.add_argument("--curve", required=True)
        sub.add_argument("--p", required=True)
        _add_common(sub)

    angle = top.add_parser("angle")
    angle.add_argument("--curve", required=True)
    angle.add_argument("--p", required=True)
    angle.add_argument("--q", required=True)
    angle.add_argument("--tol", type=float, default=1e-3)
    _add_common(angle)

    gap = top.add_parser("gap").add_subparsers(dest="action", required=True)
    g_sum = gap.add_parser("sum")
    g_sum.add_argument("--delta", required=True)
    g_small_x = gap.add_parser("small-x")
    g_small_s = gap.add_parser("small-s")
    _add_gap_params(g_small_s, with_ratio=True)
    g_large_s = gap.add_parser("large-s")
    _add_gap_params(g_large_s, with_ratio=True)
    g_gap2 = gap.add_parser("gap2")
    _add_gap_params(g_gap2, with_ratio=False)
    for sub in (g_sum, g_small_x, g_small_s, g_large_s, g_gap2):
        sub.add_argument("--curve", required=True)
        sub.add_argument("--p", required=True)
        sub.add_argument("--q", required=True)
        sub.add_argument("--s", type=int, required=True,
                         help="common denominator clearing both x")
        _add_common(sub)

    ap = top.add_parser("ap").add_subparsers(dest="action", required=True)
    a_check = ap.add_parser("check")
    a_check.add_argument("--curve", required=True)
    a_check.add_argument("--start", required=True)
    a_check.add_argument("--diff", required=True)
    a_check.add_argument("--len", type=int, required=True)
    a_search = ap.add_parser("search")
    a_search.add_argument("--curve", required=True)
    a_search.add_argument("--log-height", dest="log_height", type=float,
                          required=True)
    a_search.add_argument("--budget", type=int, default=None)
    a_long = ap.add_parser("longest")
    a_long.add_argument("--points", required=True,
                        help='semicolon-separated "x,y" points')
    for sub in (a_check, a_search, a_long):
        _add_common(sub)

    lemma = top.add_parser("lemma").add_subparsers(dest="action", required=True)
    l_rep = lemma.add_parser("report")
    l_div = lemma.add_parser("divisibility")
    for sub in (l_rep, l_div):
        sub.add_argument("--start", required=True)
        sub.add_argument("--diff", required=True)
        sub.add_argument("--len", type=int, required=True)
        sub.add_argument("--delta", required=True)
        _add_common(sub)
    l_sweep = lemma.add_parser("sweep")
    l_sweep.add_argument("--a-max", dest="a_max", type=int, default=60)
    l_sweep.add_argument("--u-max", dest="u_max", type=int, default=60)
    l_sweep.add_argument("--b-max", dest="b_max", type=int, default=30)
    l_sweep.add_argument("--v-max", dest="v_max", type=int, default=30)
    l_sweep.add_argument("--n-max", dest="n_max", type=int, default=40)
    l_sweep.add_argument("--deltas", default="7/20,1/2,3/5,3/4")
    l_sweep.add_argument("--force-python", dest="force_python",
                         action="store_true")
    _add_common(l_sweep)

    code = top.add_parser("code").add_subparsers(dest="action", required=True)
    c_rate = code.add_parser("rate")
    c_base = code.add_parser("base")
    c_base.add_argument("--slack", type=float, default=bounds_mod.DEFAULT_KL_SLACK)
    for sub in (c_rate, c_base):
        sub.add_argument("--theta", type=float, default=None)
        sub.add_argument("--cos", type=float, default=None)
        _add_common(sub)
    c_obtuse = code.add_parser("obtuse")
    _add_common(c_obtuse)

    bound = top.add_parser("bound").add_subparsers(dest="action", required=True)
    b_int = bound.add_parser("integral")
    b_rat = bound.add_parser("rational")
    for sub in (b_int, b_rat):
        sub.add_argument("--rank", type=int, required=True)
    b_cnt = bound.add_parser("counting")
    b_cnt.add_argument("--height-multiple", dest="height_multiple",
                       type=float, required=True)
    for sub in (b_int, b_rat, b_cnt):
        _add_config_opts(sub)
        _add_common(sub)

    return parser


_HANDLERS = {
    "curve": _cmd_curve,
    "point": _cmd_point,
    "height": _cmd_height,
    "angle": _cmd_angle,
    "gap": _cmd_gap,
    "ap": _cmd_ap,
    "lemma": _cmd_lemma,
    "code": _cmd_code,
    "bound": _cmd_bound,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return _HANDLERS[args.group](args)
    except HeightBudgetError as exc:
        print(f"ecap: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"ecap: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
