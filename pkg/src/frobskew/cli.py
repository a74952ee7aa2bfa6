"""Batch interface: one script of declarations followed by a single command.

    ring p=2 vars=s,t
    quotient s*t
    sop s+t
    tc elem=s j=1 bound=4 mode=chain

Exit status is 0 on success, 1 when a mathematical precondition is refused
and 2 for parse errors or an exhausted resource budget.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass, field

from .groebner import ResourceError
from .ideal import Ideal, QuotientRing, Refusal, frobenius_closure, frobenius_power
from .localcoh import SopData, enescu_zqr, tc_param_membership
from .modules import (
    CyclicTower,
    FiniteCyclicsModule,
    grann_element,
    hsl_number,
    special_ideal_lattice,
    split_ga4,
)
from .poly import ParseError, PolyRing
from .radical import RadicalDecomposition
from .skew import limit_ideal

CHAIN_BOUND = 4
CLOSURE_BOUND = 3
COMMANDS = ("frobpow", "frobclosure", "grann", "lattice", "hsl", "tc", "enescu", "ga4")


class ScriptError(ValueError):
    def __init__(self, msg, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


@dataclass
class Session:
    ring: object = None
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    sop: SopData | None = None
    command: tuple | None = None


def _column(line: str, token: str):
    i = line.find(token)
    return i + 1 if i >= 0 else None


def _options(tokens, line, lineno):
    out = {}
    flags = []
    for tok in tokens:
        if "=" in tok:
            k, v = tok.split("=", 1)
            if not k:
                raise ScriptError(f"empty key in {tok!r}", lineno, _column(line, tok))
            out[k] = v
        else:
            flags.append(tok)
    return out, flags


def _int(opts, key, default, line, lineno, minimum=0):
    if key not in opts:
        return default
    try:
        v = int(opts[key])
    except ValueError:
        raise ScriptError(f"{key} must be an integer", lineno, _column(line, key + "=")) from None
    if v < minimum:
        raise ScriptError(f"{key} must be >= {minimum}", lineno, _column(line, key + "="))
    return v


def _strip_parens(text: str) -> str:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1]
    return text


def parse_script(script: str) -> Session:
    s = Session()
    for lineno, raw in enumerate(script.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        try:
            _parse_line(s, line, lineno)
        except ScriptError:
            raise
        except ParseError as exc:
            raise ScriptError(str(exc), lineno, exc.column) from None
    if s.command is None:
        raise ScriptError("script has no command")
    return s


def _need_ring(s, lineno):
    if s.ring is None:
        raise ScriptError("declare a ring first", lineno, 1)
    return s.ring


def _parse_line(s: Session, line: str, lineno: int):
    head, _, rest = line.strip().partition(" ")
    rest = rest.strip()
    if head == "ring":
        opts, _ = _options(shlex.split(rest), line, lineno)
        if "p" not in opts or "vars" not in opts:
            raise ScriptError("ring needs p= and vars=", lineno, 1)
        p = _int(opts, "p", None, line, lineno, 2)
        names = [v.strip() for v in opts["vars"].split(",") if v.strip()]
        order = opts.get("order", "grevlex")
        if order not in ("grevlex", "lex"):
            raise ScriptError(f"unknown order {order!r}", lineno, _column(line, "order="))
        try:
            s.ring = PolyRing(p, names, order)
        except ValueError as exc:
            raise ScriptError(str(exc), lineno, 1) from None
    elif head == "quotient":
        amb = _need_ring(s, lineno)
        if isinstance(amb, QuotientRing):
            raise ScriptError("only one quotient declaration is allowed", lineno, 1)
        try:
            s.ring = QuotientRing(amb, amb.parse_list(_strip_parens(rest)))
        except ParseError:
            raise
        except ValueError as exc:
            raise ScriptError(str(exc), lineno, 1) from None
    elif head == "ideal":
        ring = _need_ring(s, lineno)
        name, eq, body = rest.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier():
            raise ScriptError("expected: ideal <name> = <poly csv>", lineno, 1)
        s.ideals[name] = Ideal(ring, ring.parse_list(_strip_parens(body)))
    elif head == "sop":
        ring = _need_ring(s, lineno)
        try:
            s.sop = SopData.of(ring, ring.parse_list(_strip_parens(rest)))
        except ParseError:
            raise
        except ValueError as exc:
            raise ScriptError(str(exc), lineno, 1) from None
    elif head == "module":
        _parse_module(s, line, rest, lineno)
    elif head in COMMANDS:
        if s.command is not None:
            raise ScriptError("only one command per script", lineno, 1)
        _need_ring(s, lineno)
        try:
            tokens = shlex.split(rest)
        except ValueError as exc:
            raise ScriptError(str(exc), lineno, 1) from None
        s.command = (head, tokens, line, lineno)
    else:
        raise ScriptError(f"unknown keyword {head!r}", lineno, _column(line, head))


def _parse_module(s: Session, line, rest, lineno):
    ring = _need_ring(s, lineno)
    name = "M"
    if "=" in rest.split(" ", 1)[0] or rest.split(" ")[1:2] == ["="]:
        left, _, rest = rest.partition("=")
        name = left.strip()
        rest = rest.strip()
    kind, _, args = rest.partition(" ")
    opts, flags = _options(shlex.split(args), line, lineno)
    if kind == "cyclic-tower":
        if "ideal" not in opts:
            raise ScriptError("cyclic-tower needs ideal=(...)", lineno, 1)
        a = Ideal(ring, ring.parse_list(_strip_parens(opts["ideal"])))
        wb = _int(opts, "bound", 8, line, lineno, 1)
        which = opts.get("kind", "H")
        if which not in ("H", "G"):
            raise ScriptError("kind must be H or G", lineno, _column(line, "kind="))
        s.modules[name] = CyclicTower.H(a, wb) if which == "H" else CyclicTower.G(a, wb)
    elif kind == "finite":
        if "summands" not in opts:
            raise ScriptError("finite module needs summands=(..);(..)", lineno, 1)
        parts = [t for t in opts["summands"].split(";") if t.strip()]
        summands = [Ideal(ring, ring.parse_list(_strip_parens(t))) for t in parts]
        xm = None
        if "x" in opts:
            rows = [r for r in opts["x"].split(";") if r.strip()]
            xm = [ring.parse_list(_strip_parens(r)) for r in rows]
        elif flags and flags != ["frobenius"]:
            raise ScriptError(f"unknown module flag {flags[0]!r}", lineno, _column(line, flags[0]))
        try:
            s.modules[name] = FiniteCyclicsModule(ring, summands, xm, label=name)
        except ValueError as exc:
            raise ScriptError(str(exc), lineno, 1) from None
    else:
        raise ScriptError(f"unknown module kind {kind!r}", lineno, _column(line, kind))


# -- execution --------------------------------------------------------------------

def _module(s, opts, line, lineno):
    name = opts.get("module", "M" if len(s.modules) != 1 else next(iter(s.modules)))
    if name not in s.modules:
        raise ScriptError(f"unknown module {name!r}", lineno, _column(line, "module="))
    return s.modules[name]


def _ideal(s, name, line, lineno):
    if name not in s.ideals:
        raise ScriptError(f"unknown ideal {name!r}", lineno, _column(line, name))
    return s.ideals[name]


def _element(M, text, opts, line, lineno):
    if isinstance(M, CyclicTower):
        n = _int(opts, "n", 0, line, lineno)
        return M.element(n, M.ring.parse(text))
    return M.parse_element(text)


def execute(s: Session) -> dict:
    cmd, tokens, line, lineno = s.command
    opts, flags = _options(tokens, line, lineno)
    ring = s.ring
    if cmd == "frobpow":
        if not flags:
            raise ScriptError("frobpow needs an ideal name", lineno, 1)
        a = _ideal(s, flags[0], line, lineno)
        e = _int(opts, "e", 1, line, lineno)
        b = frobenius_power(a, e)
        return {"command": cmd, "ideal": flags[0], "e": e,
                "generators": [str(g) for g in b.display_gens]}
    if cmd == "frobclosure":
        if not flags:
            raise ScriptError("frobclosure needs an ideal name", lineno, 1)
        a = _ideal(s, flags[0], line, lineno)
        bound = _int(opts, "bound", CLOSURE_BOUND, line, lineno, 1)
        c, stable = frobenius_closure(a, bound)
        return {"command": cmd, "ideal": flags[0], "bound": bound,
                "closure": str(c), "stabilized": stable}
    if cmd == "grann":
        M = _module(s, opts, line, lineno)
        if "elem" not in opts:
            raise ScriptError("grann needs elem=", lineno, 1)
        g = _element(M, opts["elem"], opts, line, lineno)
        bound = _int(opts, "bound", CHAIN_BOUND, line, lineno, 1)
        chain = grann_element(M, g, bound)
        lim, cert = limit_ideal(chain)
        return {"command": cmd, "element": M.format(g),
                "chain": [str(e) for e in chain.trimmed().entries],
                "limit": str(lim), "certified": cert}
    if cmd == "lattice":
        M = _module(s, opts, line, lineno)
        bound = _int(opts, "bound", CHAIN_BOUND, line, lineno, 1)
        gens = None
        if "gens" in opts:
            gens = [_element(M, t, opts, line, lineno) for t in opts["gens"].split(";") if t.strip()]
        lat = special_ideal_lattice(M, bound, gens)
        out = {"command": cmd}
        out.update(lat.to_json())
        return out
    if cmd == "hsl":
        M = _module(s, opts, line, lineno)
        return {"command": cmd, "hsl": hsl_number(M)}
    if cmd == "tc":
        if s.sop is None:
            raise ScriptError("tc needs a sop declaration", lineno, 1)
        if "elem" not in opts:
            raise ScriptError("tc needs elem=", lineno, 1)
        r = ring.parse(opts["elem"])
        j = _int(opts, "j", 1, line, lineno)
        bound = _int(opts, "bound", CHAIN_BOUND, line, lineno, 0)
        mode_text = opts.get("mode", "chain")
        if mode_text == "chain":
            mode = "chain"
        elif mode_text.startswith("test:"):
            try:
                c_text, w0 = mode_text[5:].rsplit(",", 1)
                mode = ("test", ring.parse(c_text), int(w0))
            except ValueError:
                raise ScriptError("mode=test:<c>,<w0>", lineno, _column(line, "mode=")) from None
        else:
            raise ScriptError(f"unknown mode {mode_text!r}", lineno, _column(line, "mode="))
        out = {"command": cmd, "element": str(r), "j": j}
        out.update(tc_param_membership(s.sop, r, j, mode, bound))
        return out
    if cmd == "enescu":
        if s.sop is None:
            raise ScriptError("enescu needs a sop declaration", lineno, 1)
        samples = ring.parse_list(opts.get("samples", ""))
        bound = _int(opts, "bound", CHAIN_BOUND, line, lineno, 0)
        out = {"command": cmd}
        out.update(enescu_zqr(s.sop, samples, bound).to_json())
        return out
    if cmd == "ga4":
        M = _module(s, opts, line, lineno)
        if "b" not in opts or "U" not in opts:
            raise ScriptError("ga4 needs b=<primes> and U=<indices>", lineno, 1)
        b = RadicalDecomposition.parse(ring, opts["b"])
        try:
            U = [int(t) for t in opts["U"].split(",") if t.strip()]
        except ValueError:
            raise ScriptError("U must be comma-separated indices", lineno, _column(line, "U=")) from None
        bound = _int(opts, "bound", 8, line, lineno, 1)
        out = {"command": cmd, "b": str(b)}
        out.update(split_ga4(M, b, U, bound))
        return out
    raise ScriptError(f"unknown command {cmd!r}", lineno, 1)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ", ".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    return "null" if v is None else str(v)


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2)
    width = max(len(k) for k in report)
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k.ljust(width)} :")
            lines.extend("  " + _fmt(x) for x in v)
        else:
            lines.append(f"{k.ljust(width)} : {_fmt(v)}")
    return "\n".join(lines)


def run(script: str, as_json: bool = False) -> tuple[int, str]:
    """Execute a script; returns (exit status, report text)."""
    try:
        session = parse_script(script)
        report = execute(session)
    except Refusal as exc:
        return 1, f"refused: {exc}"
    except ScriptError as exc:
        return 2, f"parse error: {exc}"
    except ParseError as exc:
        return 2, f"parse error: {exc}"
    except ResourceError as exc:
        return 2, f"resource budget exhausted: {exc} (no partial results kept)"
    return 0, render(report, as_json)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="frobskew", description=__doc__.split("\n\n")[0])
    ap.add_argument("script", nargs="?", default="-", help="script file, or - for stdin")
    ap.add_argument("-c", "--command", help="script text given inline (newline separated)")
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    args = ap.parse_args(argv)
    if args.command is not None:
        text = args.command.replace("\\n", "\n")
    elif args.script == "-":
        text = sys.stdin.read()
    else:
        with open(args.script) as fh:
            text = fh.read()
    code, out = run(text, args.json)
    print(out, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
