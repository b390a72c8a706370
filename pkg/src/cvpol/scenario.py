"""Line-oriented scenario language: parsing, validation and rendering.

Grammar (one statement per line, `#` starts a comment):

    mode NAME (vacuum | coherent alpha=EXPR | squeezed vplus=EXPR vminus=EXPR [alpha=EXPR])
    rotate NAME angle=EXPR
    bs NAME NAME eta=EXPR [phase=EXPR]
    loss NAME eta=EXPR
    beam NAME h=NAME v=NAME theta=EXPR
    param NAME default=EXPR
    measure (duan MODE MODE | insep S<i> S<j> BEAM BEAM | epr_quad MODE MODE
             | epr_stokes S<i> S<j> BEAM BEAM | stokes_means BEAM | ellipse S<i> BEAM BEAM)

EXPR is a decimal literal, a pi expression (`pi`, `-pi/4`, `3*pi/4`) or a
`$name` reference to a declared parameter.  Every identifier must be defined
before use; all errors carry the offending line number.  `render` produces
canonical text that parses back to an equal spec.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import ScenarioError

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_PI_EXPR = re.compile(r"^(-?)(?:(\d+)\*)?pi(?:/(\d+))?$")
_STOKES = re.compile(r"^S([0-9]+)$")


# -- expressions --------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class PiFraction:
    """numer * pi / denom, kept unreduced so rendering echoes the source."""

    numer: int
    denom: int


@dataclass(frozen=True)
class ParamRef:
    name: str


Expr = Num | PiFraction | ParamRef


def eval_expr(expr: Expr, params: dict[str, float]) -> float:
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, PiFraction):
        return expr.numer * math.pi / expr.denom
    return params[expr.name]


def render_expr(expr: Expr) -> str:
    if isinstance(expr, Num):
        return repr(expr.value)
    if isinstance(expr, ParamRef):
        return f"${expr.name}"
    if expr.numer == 1:
        head = "pi"
    elif expr.numer == -1:
        head = "-pi"
    else:
        head = f"{expr.numer}*pi"
    return head if expr.denom == 1 else f"{head}/{expr.denom}"


# -- statements ----------------------------------------------------------------


@dataclass(frozen=True)
class ParamDecl:
    name: str
    default: Expr
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class ModeDecl:
    name: str
    kind: str  # vacuum | coherent | squeezed
    alpha: Expr | None = None
    v_plus: Expr | None = None
    v_minus: Expr | None = None
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Rotate:
    mode: str
    angle: Expr
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class BeamSplit:
    mode_a: str
    mode_b: str
    eta: Expr
    phase: Expr | None = None
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Loss:
    mode: str
    eta: Expr
    line: int = field(compare=False, default=0)


Element = Rotate | BeamSplit | Loss


@dataclass(frozen=True)
class BeamDecl:
    name: str
    h: str
    v: str
    theta: Expr
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Measurement:
    kind: str  # duan | insep | epr_quad | epr_stokes | stokes_means | ellipse
    modes: tuple[str, ...] = ()
    beams: tuple[str, ...] = ()
    indices: tuple[int, ...] = ()
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class ScenarioSpec:
    params: tuple[ParamDecl, ...] = ()
    modes: tuple[ModeDecl, ...] = ()
    elements: tuple[Element, ...] = ()
    beams: tuple[BeamDecl, ...] = ()
    measurements: tuple[Measurement, ...] = ()


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self):
        self.params: list[ParamDecl] = []
        self.modes: list[ModeDecl] = []
        self.elements: list[Element] = []
        self.beams: list[BeamDecl] = []
        self.measurements: list[Measurement] = []
        self.mode_names: set[str] = set()
        self.beam_names: set[str] = set()
        self.param_names: set[str] = set()

    def fail(self, line: int, message: str):
        raise ScenarioError(message, line)

    def ident(self, token: str, line: int, what: str) -> str:
        if not _IDENT.match(token):
            self.fail(line, f"invalid {what} name {token!r}")
        return token

    def expr(self, token: str, line: int) -> Expr:
        if token.startswith("$"):
            name = token[1:]
            if not _IDENT.match(name):
                self.fail(line, f"invalid parameter reference {token!r}")
            if name not in self.param_names:
                self.fail(line, f"undefined parameter {name!r}")
            return ParamRef(name)
        m = _PI_EXPR.match(token)
        if m:
            sign = -1 if m.group(1) else 1
            numer = int(m.group(2)) if m.group(2) else 1
            denom = int(m.group(3)) if m.group(3) else 1
            if denom == 0:
                self.fail(line, "zero denominator in pi expression")
            return PiFraction(sign * numer, denom)
        try:
            return Num(float(token))
        except ValueError:
            self.fail(line, f"cannot parse expression {token!r}")

    def keyvals(self, tokens: list[str], line: int, required: tuple[str, ...],
                optional: tuple[str, ...] = ()) -> dict[str, Expr]:
        out: dict[str, Expr] = {}
        for token in tokens:
            if "=" not in token:
                self.fail(line, f"expected key=value, got {token!r}")
            key, _, raw = token.partition("=")
            if key not in required and key not in optional:
                self.fail(line, f"unknown argument {key!r}")
            if key in out:
                self.fail(line, f"duplicate argument {key!r}")
            out[key] = self.expr(raw, line)
        for key in required:
            if key not in out:
                self.fail(line, f"missing argument {key!r}")
        return out

    def known_mode(self, name: str, line: int) -> str:
        if name not in self.mode_names:
            self.fail(line, f"undefined mode {name!r}")
        return name

    def known_beam(self, name: str, line: int) -> str:
        if name not in self.beam_names:
            self.fail(line, f"undefined beam {name!r}")
        return name

    def stokes_index(self, token: str, line: int) -> int:
        m = _STOKES.match(token)
        if not m:
            self.fail(line, f"expected Stokes index S1, S2 or S3, got {token!r}")
        index = int(m.group(1))
        if index not in (1, 2, 3):
            self.fail(line, f"Stokes index out of range: {token}")
        return index

    # statement handlers -----------------------------------------------------

    def stmt_param(self, args: list[str], line: int):
        if not args:
            self.fail(line, "param needs a name")
        name = self.ident(args[0], line, "parameter")
        if name in self.param_names:
            self.fail(line, f"duplicate parameter {name!r}")
        kv = self.keyvals(args[1:], line, required=("default",))
        if isinstance(kv["default"], ParamRef):
            self.fail(line, "parameter default must be a literal")
        self.param_names.add(name)
        self.params.append(ParamDecl(name, kv["default"], line=line))

    def stmt_mode(self, args: list[str], line: int):
        if len(args) < 2:
            self.fail(line, "mode needs a name and a kind")
        name = self.ident(args[0], line, "mode")
        if name in self.mode_names:
            self.fail(line, f"duplicate mode {name!r}")
        kind = args[1]
        rest = args[2:]
        if kind == "vacuum":
            kv = self.keyvals(rest, line, required=())
            decl = ModeDecl(name, kind, line=line)
        elif kind == "coherent":
            kv = self.keyvals(rest, line, required=("alpha",))
            decl = ModeDecl(name, kind, alpha=kv["alpha"], line=line)
        elif kind == "squeezed":
            kv = self.keyvals(rest, line, required=("vplus", "vminus"), optional=("alpha",))
            decl = ModeDecl(name, kind, alpha=kv.get("alpha"),
                            v_plus=kv["vplus"], v_minus=kv["vminus"], line=line)
        else:
            self.fail(line, f"unknown mode kind {kind!r}")
        self.mode_names.add(name)
        self.modes.append(decl)

    def stmt_rotate(self, args: list[str], line: int):
        if not args:
            self.fail(line, "rotate needs a mode name")
        mode = self.known_mode(args[0], line)
        kv = self.keyvals(args[1:], line, required=("angle",))
        self.elements.append(Rotate(mode, kv["angle"], line=line))

    def stmt_bs(self, args: list[str], line: int):
        if len(args) < 2:
            self.fail(line, "bs needs two mode names")
        mode_a = self.known_mode(args[0], line)
        mode_b = self.known_mode(args[1], line)
        if mode_a == mode_b:
            self.fail(line, f"beamsplitter modes must differ, got {mode_a!r} twice")
        kv = self.keyvals(args[2:], line, required=("eta",), optional=("phase",))
        self.elements.append(BeamSplit(mode_a, mode_b, kv["eta"], kv.get("phase"), line=line))

    def stmt_loss(self, args: list[str], line: int):
        if not args:
            self.fail(line, "loss needs a mode name")
        mode = self.known_mode(args[0], line)
        kv = self.keyvals(args[1:], line, required=("eta",))
        self.elements.append(Loss(mode, kv["eta"], line=line))

    def stmt_beam(self, args: list[str], line: int):
        if not args:
            self.fail(line, "beam needs a name")
        name = self.ident(args[0], line, "beam")
        if name in self.beam_names:
            self.fail(line, f"duplicate beam {name!r}")
        # h= and v= take mode names, theta= takes an expression
        raw: dict[str, str] = {}
        for token in args[1:]:
            if "=" not in token:
                self.fail(line, f"expected key=value, got {token!r}")
            key, _, value = token.partition("=")
            if key not in ("h", "v", "theta"):
                self.fail(line, f"unknown argument {key!r}")
            if key in raw:
                self.fail(line, f"duplicate argument {key!r}")
            raw[key] = value
        for key in ("h", "v", "theta"):
            if key not in raw:
                self.fail(line, f"missing argument {key!r}")
        h = self.known_mode(self.ident(raw["h"], line, "mode"), line)
        v = self.known_mode(self.ident(raw["v"], line, "mode"), line)
        if h == v:
            self.fail(line, f"beam constituents must differ, got {h!r} twice")
        theta = self.expr(raw["theta"], line)
        self.beam_names.add(name)
        self.beams.append(BeamDecl(name, h, v, theta, line=line))

    def stmt_measure(self, args: list[str], line: int):
        if not args:
            self.fail(line, "measure needs a kind")
        kind = args[0]
        rest = args[1:]
        if kind in ("duan", "epr_quad"):
            if len(rest) != 2:
                self.fail(line, f"measure {kind} needs two mode names")
            a = self.known_mode(rest[0], line)
            b = self.known_mode(rest[1], line)
            if a == b:
                self.fail(line, f"measure {kind} needs two distinct modes")
            m = Measurement(kind, modes=(a, b), line=line)
        elif kind in ("insep", "epr_stokes"):
            if len(rest) != 4:
                self.fail(line, f"measure {kind} needs two Stokes indices and two beams")
            i = self.stokes_index(rest[0], line)
            j = self.stokes_index(rest[1], line)
            if i == j:
                self.fail(line, f"measure {kind} needs two distinct Stokes indices")
            bx = self.known_beam(rest[2], line)
            by = self.known_beam(rest[3], line)
            if bx == by:
                self.fail(line, f"measure {kind} needs two distinct beams")
            m = Measurement(kind, beams=(bx, by), indices=(i, j), line=line)
        elif kind == "stokes_means":
            if len(rest) != 1:
                self.fail(line, "measure stokes_means needs one beam")
            m = Measurement(kind, beams=(self.known_beam(rest[0], line),), line=line)
        elif kind == "ellipse":
            if len(rest) != 3:
                self.fail(line, "measure ellipse needs a Stokes index and two beams")
            i = self.stokes_index(rest[0], line)
            bx = self.known_beam(rest[1], line)
            by = self.known_beam(rest[2], line)
            if bx == by:
                self.fail(line, "measure ellipse needs two distinct beams")
            m = Measurement(kind, beams=(bx, by), indices=(i,), line=line)
        else:
            self.fail(line, f"unknown measurement kind {kind!r}")
        self.measurements.append(m)

    HANDLERS = {
        "param": stmt_param,
        "mode": stmt_mode,
        "rotate": stmt_rotate,
        "bs": stmt_bs,
        "loss": stmt_loss,
        "beam": stmt_beam,
        "measure": stmt_measure,
    }

    def parse(self, text: str) -> ScenarioSpec:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            handler = self.HANDLERS.get(tokens[0])
            if handler is None:
                self.fail(lineno, f"unknown keyword {tokens[0]!r}")
            handler(self, tokens[1:], lineno)
        return ScenarioSpec(
            params=tuple(self.params),
            modes=tuple(self.modes),
            elements=tuple(self.elements),
            beams=tuple(self.beams),
            measurements=tuple(self.measurements),
        )


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse scenario text; raises ScenarioError with a line number on failure."""
    return _Parser().parse(text)


# -- rendering -----------------------------------------------------------------


def render_scenario(spec: ScenarioSpec) -> str:
    """Canonical text for a spec; parse(render(spec)) equals spec."""
    lines: list[str] = []
    for p in spec.params:
        lines.append(f"param {p.name} default={render_expr(p.default)}")
    for m in spec.modes:
        if m.kind == "vacuum":
            lines.append(f"mode {m.name} vacuum")
        elif m.kind == "coherent":
            lines.append(f"mode {m.name} coherent alpha={render_expr(m.alpha)}")
        else:
            parts = [f"mode {m.name} squeezed",
                     f"vplus={render_expr(m.v_plus)}",
                     f"vminus={render_expr(m.v_minus)}"]
            if m.alpha is not None:
                parts.append(f"alpha={render_expr(m.alpha)}")
            lines.append(" ".join(parts))
    for e in spec.elements:
        if isinstance(e, Rotate):
            lines.append(f"rotate {e.mode} angle={render_expr(e.angle)}")
        elif isinstance(e, BeamSplit):
            text = f"bs {e.mode_a} {e.mode_b} eta={render_expr(e.eta)}"
            if e.phase is not None:
                text += f" phase={render_expr(e.phase)}"
            lines.append(text)
        else:
            lines.append(f"loss {e.mode} eta={render_expr(e.eta)}")
    for b in spec.beams:
        lines.append(f"beam {b.name} h={b.h} v={b.v} theta={render_expr(b.theta)}")
    for m in spec.measurements:
        if m.kind in ("duan", "epr_quad"):
            lines.append(f"measure {m.kind} {m.modes[0]} {m.modes[1]}")
        elif m.kind in ("insep", "epr_stokes"):
            lines.append(f"measure {m.kind} S{m.indices[0]} S{m.indices[1]} "
                         f"{m.beams[0]} {m.beams[1]}")
        elif m.kind == "stokes_means":
            lines.append(f"measure stokes_means {m.beams[0]}")
        else:
            lines.append(f"measure ellipse S{m.indices[0]} {m.beams[0]} {m.beams[1]}")
    return "\n".join(lines) + "\n"
