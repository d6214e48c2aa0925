"""Command-line interface: ``tandyn <subcommand> [flags]``.

Records go to stdout as tab-separated lines.  Exit status is 0 on success,
2 on a usage error and 1 when a computation fails.
"""
import argparse
import re
import sys

from . import core, cycles, inverse, parameter, render, selftest
from .errors import InvalidParameter, TanDynError
from .records import format_record, parse_complex

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _itinerary_arg(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad itinerary {text!r}") from None


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as -2+0i or -1.5i through as arguments
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d|i$|inf|nan)")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message, printed=True)


class _UsageError(Exception):
    def __init__(self, message, printed=False):
        super().__init__(message)
        self.printed = printed


def _render_flags(p, dynamic):
    if dynamic:
        p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--center", type=_complex_arg, default=0j)
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--pixels", type=_positive_int, required=True,
                   help="columns; rows default to the same")
    p.add_argument("--rows", type=_positive_int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=_positive_int, default=core.DEFAULT_BUDGET)
    p.add_argument("--palette", choices=("default", "gray"), default="default")
    p.add_argument("--supersample", type=_positive_int, default=1)


def build_parser():
    top = _Parser(prog="tandyn", description="Dynamics of lambda*tan z.")
    top.add_argument("--config", help="file of key=value lines with flag defaults")
    sub = top.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("classify", help="component of a parameter")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--budget", type=_positive_int, default=core.DEFAULT_BUDGET)

    p = sub.add_parser("orbit", help="forward orbit trace")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--z0", type=_complex_arg, required=True)
    p.add_argument("--steps", type=_nonneg_int, required=True)

    p = sub.add_parser("prepoles", help="prepoles of a given order")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--bound", type=_nonneg_int, required=True)

    p = sub.add_parser("cycle", help="Newton-refined periodic cycle")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--guess", type=_complex_arg, required=True)
    p.add_argument("--period", type=_positive_int, required=True)

    p = sub.add_parser("virtual-center", help="solve for a virtual center")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--itinerary", type=_itinerary_arg, required=True)
    p.add_argument("--seed", type=_complex_arg, default=None)

    p = sub.add_parser("ray", help="trace an internal ray")
    p.add_argument("--seed", type=_complex_arg, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--r-end", dest="r_end", type=float, required=True)

    _render_flags(sub.add_parser("render-param", help="parameter-plane image"), False)
    _render_flags(sub.add_parser("render-dynamic", help="dynamic-plane image"), True)

    sub.add_parser("selftest", help="run the embedded invariant checks")
    return top


def _read_config(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise _UsageError(f"{path}:{lineno}: expected key=value")
            out[key.strip().lstrip("-")] = val.strip()
    return out


def _config_argv(config, subparser):
    """Turn config entries into flags placed before the command-line flags,
    so anything given on the command line wins."""
    known = {}
    for action in subparser._actions:
        for opt in action.option_strings:
            if opt.startswith("--") and opt != "--help":
                known[opt[2:]] = opt
    extra = []
    for key, val in config.items():
        if key not in known:
            raise _UsageError(f"unknown config key {key!r} for this command")
        extra += [known[key], val]
    return extra


def _subparser(parser, name):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices.get(name)
    return None


def parse_args(argv):
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if known.config is None:
        return parser.parse_args(argv)
    try:
        config = _read_config(known.config)
    except OSError as exc:
        raise _UsageError(f"cannot read config: {exc}") from None
    commands = [i for i, tok in enumerate(rest) if tok in COMMANDS]
    if not commands:
        return parser.parse_args(argv)
    i = commands[0]
    sub = _subparser(parser, rest[i])
    # config flags go first so command-line flags override them
    argv = rest[:i + 1] + _config_argv(config, sub) + rest[i + 1:]
    return parser.parse_args(argv)


def _out(*fields):
    print(format_record(*fields))


def _cmd_classify(a):
    s = parameter.classify_parameter(a.lam, a.budget)
    if isinstance(s, parameter.ComponentSample):
        _out(s.period, s.kind.value, s.multiplier)
    else:
        _out(0, "Undetermined", 0j)


def _cmd_orbit(a):
    lam = core.as_parameter(a.lam)
    z = core.as_point(a.z0)
    _out(0, z)
    for k in range(1, a.steps + 1):
        n, d = core.nearest_pole(z)
        if d < core.POLE_TOL:
            _out("pole", n)
            return
        z = core.eval_f(lam, z)
        _out(k, z)


def _cmd_prepoles(a):
    skipped = []
    for pp in inverse.enumerate_prepoles(a.order, a.bound, a.lam, skipped):
        _out(",".join(map(str, pp.itinerary)), pp.point)
    for itin in skipped:
        print("skipped\t" + ",".join(map(str, itin)), file=sys.stderr)


def _cmd_cycle(a):
    c = cycles.refine_cycle_newton(a.lam, a.guess, a.period)
    _out(c.period, c.stability.value, c.multiplier, c.symmetric, c.points)


def _cmd_virtual_center(a):
    c = parameter.find_virtual_center(a.period, a.itinerary, a.seed)
    _out(c.lambda_star, c.residual)


def _cmd_ray(a):
    for pt in parameter.trace_internal_ray(a.seed, a.alpha, a.r_end):
        _out(pt.r, pt.alpha, pt.lam, pt.multiplier)


def _viewport(a):
    return render.Viewport(a.center, a.width, a.pixels, a.rows)


def _cmd_render_param(a):
    img = render.render_parameter_plane(_viewport(a), a.budget, a.palette,
                                        supersample=a.supersample)
    render.write_image(img, a.out)
    _out(a.out, img.cols, img.rows)


def _cmd_render_dynamic(a):
    img = render.render_dynamic_plane(a.lam, _viewport(a), a.budget, a.palette,
                                      supersample=a.supersample)
    render.write_image(img, a.out)
    _out(a.out, img.cols, img.rows)


def _cmd_selftest(a):
    failures = selftest.run(sys.stdout)
    if failures:
        raise TanDynError(f"{failures} self-test check(s) failed")


COMMANDS = {
    "classify": _cmd_classify,
    "orbit": _cmd_orbit,
    "prepoles": _cmd_prepoles,
    "cycle": _cmd_cycle,
    "virtual-center": _cmd_virtual_center,
    "ray": _cmd_ray,
    "render-param": _cmd_render_param,
    "render-dynamic": _cmd_render_dynamic,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except _UsageError as exc:
        if not exc.printed:
            print(f"tandyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except (InvalidParameter, ValueError) as exc:
        # bad values that parse fine, e.g. lambda = 0 or r_end outside (0, 1)
        print(f"tandyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TanDynError as exc:
        print(f"tandyn: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
