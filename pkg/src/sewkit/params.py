"""Body measurements and style parameters.

Body files carry raw measurements; a loader subclass declares formulas for
derived values (recomputed on every load, never stored).  Design files
declare typed style parameters whose range endpoints may be expressions
over body measurements and other style parameters, e.g. a collar width
bounded by ``"neck_width"`` and ``"shoulder_width"``.  Resolution
evaluates ranges in dependency order, clamps out-of-range values with a
recorded warning (sliders should never dead-end), and rejects cyclic
dependencies naming the cycle.

File schemas (JSON):
    {"body": {"height": 170.0, ...}}
    {"design": {"name": {"type": "numerical", "value": 20,
                          "range": ["neck_width", "shoulder_width"],
                          "depends_on": []}, ...}}

Expression grammar: numbers, parameter names, + - * /, unary minus,
min(...) and max(...).  Nothing else parses.
"""

from __future__ import annotations

import ast
import json
import math
import random
from dataclasses import dataclass, field

from .errors import ParamError

PARAM_KINDS = ("numerical", "integer", "boolean", "categorical")


# ---------------------------------------------------------------------------
# range-expression evaluation
# ---------------------------------------------------------------------------

_FUNCS = {"min": min, "max": max}
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def expression_names(expr) -> set[str]:
    """Parameter names referenced by a range expression."""
    if not isinstance(expr, str):
        return set()
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError:
        return set()
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}


def eval_expression(expr, namespace: dict, where: str = "") -> float:
    """Evaluate a numeric literal or a whitelisted expression string."""
    if isinstance(expr, bool) or not isinstance(expr, (int, float, str)):
        if not isinstance(expr, str):
            raise ParamError(f"range endpoint must be a number or expression", path=where)
    if isinstance(expr, (int, float)) and not isinstance(expr, bool):
        return float(expr)

    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise ParamError(f"bad expression {expr!r}: {exc.msg}", path=where) from exc

    def ev(node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ParamError(f"non-numeric constant in {expr!r}", path=where)
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id not in namespace:
                raise ParamError(
                    f"expression {expr!r} references unknown parameter {node.id!r}",
                    path=where,
                )
            return float(namespace[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and not node.keywords
        ):
            return float(_FUNCS[node.func.id](*(ev(a) for a in node.args)))
        raise ParamError(
            f"expression {expr!r} uses unsupported syntax ({type(node).__name__})",
            path=where,
        )

    return ev(tree.body)


# ---------------------------------------------------------------------------
# body parameters
# ---------------------------------------------------------------------------


@dataclass
class BodyParams:
    measurements: dict[str, float]
    derived: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, name: str) -> float:
        if name in self.derived:
            return self.derived[name]
        if name in self.measurements:
            return self.measurements[name]
        raise ParamError(f"unknown body measurement {name!r}", path=name)

    def __contains__(self, name: str) -> bool:
        return name in self.derived or name in self.measurements

    def all(self) -> dict[str, float]:
        merged = dict(self.measurements)
        merged.update(self.derived)
        return merged


class BodyLoader:
    """Loads body files and computes derived measurements.

    Subclasses override ``derived_rules`` (always recomputed; a file may
    not set these directly) and ``default_rules`` (computed only when the
    file omits them).  Each rule is a function of the measurement map.
    """

    REQUIRED: tuple[str, ...] = (
        "height",
        "head_length",
        "neck_width",
        "shoulder_width",
        "back_width",
        "bust",
        "bust_line",
        "waist",
        "waist_line",
        "hips",
        "hip_line",
        "arm_length",
        "armhole_depth",
        "wrist",
    )

    def derived_rules(self) -> dict:
        return {
            # floor-to-waist height: total height minus head, minus the
            # shoulder-to-waist drop
            "waist_level": lambda m: m["height"] - m["head_length"] - m["waist_line"],
            # hip height above the floor; under-waist garment lengths scale on it
            "leg_length": lambda m: (
                m["height"] - m["head_length"] - m["waist_line"] - m["hip_line"]
            ),
        }

    def default_rules(self) -> dict:
        return {
            # waist-to-crotch depth when not measured directly
            "crotch_depth": lambda m: m["hip_line"] + 6.0,
        }

    def load(self, path) -> BodyParams:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParamError(f"body file is not valid JSON: {exc}", path=str(path))
        return self.from_dict(doc)

    def from_dict(self, doc: dict) -> BodyParams:
        if not isinstance(doc, dict) or "body" not in doc:
            raise ParamError('body document must have a top-level "body" object', path="body")
        raw = doc["body"]
        if not isinstance(raw, dict):
            raise ParamError('"body" must be an object of measurements', path="body")
        measurements: dict[str, float] = {}
        for name, value in raw.items():
            if name in self.derived_rules():
                raise ParamError(
                    f"measurement {name!r} is derived and cannot be set directly",
                    path=name,
                )
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ParamError(f"measurement {name!r} must be a number", path=name)
            if not math.isfinite(value) or value <= 0:
                raise ParamError(
                    f"measurement {name!r} must be positive, got {value}", path=name
                )
            measurements[name] = float(value)
        for name in self.REQUIRED:
            if name not in measurements:
                raise ParamError(f"missing required measurement {name!r}", path=name)
        for name, rule in self.default_rules().items():
            if name not in measurements:
                measurements[name] = float(rule(measurements))
        derived = {}
        for name, rule in self.derived_rules().items():
            value = float(rule(measurements))
            if not math.isfinite(value) or value <= 0:
                raise ParamError(
                    f"derived measurement {name!r} came out non-positive ({value}); "
                    "check the base measurements",
                    path=name,
                )
            derived[name] = value
        return BodyParams(measurements, derived)


def load_body(path, loader: BodyLoader | None = None) -> BodyParams:
    return (loader or BodyLoader()).load(path)


def body_from_dict(doc: dict, loader: BodyLoader | None = None) -> BodyParams:
    return (loader or BodyLoader()).from_dict(doc)


# ---------------------------------------------------------------------------
# design parameters
# ---------------------------------------------------------------------------


@dataclass
class StyleParam:
    name: str
    kind: str
    value: object
    range: list = field(default_factory=list)
    depends_on: tuple = ()

    # populated by resolution:
    low: float | None = None
    high: float | None = None


@dataclass
class ResolvedDesign:
    params: dict[str, StyleParam]
    order: list[str]
    warnings: list[str] = field(default_factory=list)

    def values(self) -> dict:
        return {name: p.value for name, p in self.params.items()}

    def __getitem__(self, name: str):
        return self.params[name].value


def _parse_design_doc(doc) -> dict[str, StyleParam]:
    if not isinstance(doc, dict) or "design" not in doc:
        raise ParamError('design document must have a top-level "design" object', path="design")
    raw = doc["design"]
    if not isinstance(raw, dict):
        raise ParamError('"design" must be an object of parameters', path="design")
    params: dict[str, StyleParam] = {}
    for name, spec in raw.items():
        where = f"design.{name}"
        if not isinstance(spec, dict):
            raise ParamError(f"parameter {name!r} must be an object", path=where)
        kind = spec.get("type")
        if kind not in PARAM_KINDS:
            raise ParamError(
                f"parameter {name!r} has unknown type {kind!r} "
                f"(expected one of {', '.join(PARAM_KINDS)})",
                path=where,
            )
        if "value" not in spec:
            raise ParamError(f"parameter {name!r} has no value", path=where)
        rng = spec.get("range", [])
        if kind in ("numerical", "integer"):
            if not isinstance(rng, list) or len(rng) != 2:
                raise ParamError(
                    f"parameter {name!r} needs a [low, high] range", path=where
                )
        elif kind == "categorical":
            if not isinstance(rng, list) or not rng or not all(
                isinstance(v, str) for v in rng
            ):
                raise ParamError(
                    f"categorical parameter {name!r} needs a non-empty list of options",
                    path=where,
                )
        depends = tuple(spec.get("depends_on", ()))
        params[name] = StyleParam(name, kind, spec["value"], rng, depends)
    return params


def _dependency_order(params: dict[str, StyleParam]) -> list[str]:
    """Topological order of design parameters; cycles reported by name."""
    deps: dict[str, list[str]] = {}
    for name, p in params.items():
        found = set(p.depends_on)
        for endpoint in p.range if p.kind in ("numerical", "integer") else ():
            found |= expression_names(endpoint)
        deps[name] = [d for d in found if d in params and d != name]

    order: list[str] = []
    state: dict[str, int] = {}  # 0 unseen, 1 in progress, 2 done
    stack: list[str] = []

    def visit(name: str):
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            cycle = stack[stack.index(name):] + [name]
            raise ParamError(
                "cyclic parameter dependency: " + " -> ".join(cycle), path=name
            )
        state[name] = 1
        stack.append(name)
        for d in deps[name]:
            visit(d)
        stack.pop()
        state[name] = 2
        order.append(name)

    for name in params:
        visit(name)
    return order


def resolve_design(doc, body: BodyParams) -> ResolvedDesign:
    """Evaluate ranges in dependency order, validate and clamp values.

    Numerical/integer values outside their (possibly dependent) range are
    clamped with a warning.  Unknown categorical options and non-boolean
    booleans are errors.
    """
    params = _parse_design_doc(doc)
    order = _dependency_order(params)
    namespace = body.all()
    warnings: list[str] = []

    for name in order:
        p = params[name]
        where = f"design.{name}"
        if p.kind in ("numerical", "integer"):
            lo = eval_expression(p.range[0], namespace, where)
            hi = eval_expression(p.range[1], namespace, where)
            if lo > hi:
                raise ParamError(
                    f"parameter {name!r} range is inverted: [{lo}, {hi}]", path=where
                )
            if not isinstance(p.value, (int, float)) or isinstance(p.value, bool):
                raise ParamError(f"parameter {name!r} value must be a number", path=where)
            value = float(p.value)
            if p.kind == "integer":
                if abs(value - round(value)) > 1e-9:
                    raise ParamError(
                        f"parameter {name!r} must be an integer, got {p.value}", path=where
                    )
                lo, hi = math.ceil(lo - 1e-9), math.floor(hi + 1e-9)
                if lo > hi:
                    raise ParamError(
                        f"parameter {name!r} range contains no integers", path=where
                    )
            clamped = min(max(value, lo), hi)
            if clamped != value:
                warnings.append(
                    f"{name}: value {_fmt(value)} outside range "
                    f"[{_fmt(lo)}, {_fmt(hi)}], clamped to {_fmt(clamped)}"
                )
            p.value = int(clamped) if p.kind == "integer" else clamped
            p.low, p.high = float(lo), float(hi)
        elif p.kind == "boolean":
            if not isinstance(p.value, bool):
                raise ParamError(
                    f"parameter {name!r} must be true or false, got {p.value!r}",
                    path=where,
                )
        else:  # categorical
            if p.value not in p.range:
                raise ParamError(
                    f"parameter {name!r} has unknown option {p.value!r} "
                    f"(allowed: {', '.join(p.range)})",
                    path=where,
                )
        namespace[name] = p.value if p.kind != "categorical" else p.value
    return ResolvedDesign(params=params, order=order, warnings=warnings)


def _fmt(x) -> str:
    return f"{x:g}" if isinstance(x, float) else str(x)


def load_design(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParamError(f"design file is not valid JSON: {exc}", path=str(path))


def merge_design(template: dict, override: dict | None) -> dict:
    """Overlay a design document onto a template document.

    Override entries may be full parameter objects (replacing the
    template entry, ranges included) or bare values, which keep the
    template's type and range.  A bare value for a name the template
    does not know is an error; a full object may introduce new names.
    """
    if override is None:
        return template
    if not isinstance(override, dict) or "design" not in override:
        raise ParamError('design document must have a top-level "design" object', path="design")
    if not isinstance(override["design"], dict):
        raise ParamError('"design" must be an object of parameters', path="design")
    merged = template["design"]
    for name, entry in override["design"].items():
        if isinstance(entry, dict):
            merged[name] = entry
        elif name in merged:
            merged[name] = dict(merged[name], value=entry)
        else:
            raise ParamError(
                f"unknown design parameter {name!r}", path=f"design.{name}"
            )
    return template


def sample_design(resolved: ResolvedDesign, body: BodyParams, seed: int) -> dict:
    """Draw one design document uniformly within the resolved template.

    Sampling follows dependency order so each dependent range is evaluated
    against already-sampled upstream values; the result always re-resolves
    without clamp warnings.  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    namespace = body.all()
    out: dict[str, dict] = {}
    for name in resolved.order:
        p = resolved.params[name]
        where = f"design.{name}"
        if p.kind in ("numerical", "integer"):
            lo = eval_expression(p.range[0], namespace, where)
            hi = eval_expression(p.range[1], namespace, where)
            if p.kind == "integer":
                lo, hi = math.ceil(lo - 1e-9), math.floor(hi + 1e-9)
                value: object = rng.randint(lo, hi)
            else:
                value = rng.uniform(lo, hi) if hi > lo else float(lo)
        elif p.kind == "boolean":
            value = rng.random() < 0.5
        else:
            value = rng.choice(list(p.range))
        namespace[name] = value
        out[name] = {
            "type": p.kind,
            "value": value,
            "range": list(p.range),
            "depends_on": list(p.depends_on),
        }
    return {"design": out}
