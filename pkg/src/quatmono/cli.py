"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 evaluation error,
4 operation not supported for the map kind.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import Quat, norm
from .errors import DegeneratePencil, EvaluationError, NotAnalyticMap, ParseError, QuatMonoError
from .frame import DomainBox, Frame, Point3, degeneracy_lines, validate
from .integration import (DEFAULT_NODES, Polyline, integral_dzeta_left, integral_dzeta_right,
                          morera_residual, morera_scale, random_triangle)
from .analytic import parse
from .jsonfmt import dumps17
from .monogenic import (ExprComponentMap, GMap, LeftGMap, RightGMap, classify, partial_sums,
                        taylor_expand)
from .monogenic.maps import XI_NAMES

EXIT_OK, EXIT_CONFIG, EXIT_EVAL, EXIT_UNSUPPORTED = 0, 2, 3, 4


class ConfigError(QuatMonoError):
    pass


@dataclass
class JobConfig:
    frame: Frame
    kind: str
    map: object
    domain: DomainBox
    tol: float = 1e-8
    seed: int = 0
    samples: int = 64
    triangles: int = 20
    nodes: int = DEFAULT_NODES
    raw: dict = field(default_factory=dict)

    @property
    def component_map(self) -> ExprComponentMap:
        return self.map.components() if isinstance(self.map, GMap) else self.map


_MAP_KEYS = {"right_g": ("F1", "F2", "F3", "F4"), "left_g": ("F1", "F2", "F3", "F4"),
             "components": ("U1", "U2", "U3", "U4")}


def load_config(path, require_map: bool = True) -> JobConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    try:
        frame = Frame.from_dict(raw["frame"])
        spec = raw.get("map")
        if spec is None and not require_map:
            spec = {"components": {"U1": "0", "U2": "0", "U3": "0", "U4": "0"}}
        if not isinstance(spec, dict) or len(spec) != 1:
            raise ConfigError("'map' must hold exactly one of right_g, left_g, components")
        (kind, body), = spec.items()
        if kind not in _MAP_KEYS:
            raise ConfigError(f"unknown map kind {kind!r}")
        names = XI_NAMES if kind == "components" else ("z",)
        exprs = []
        for k in _MAP_KEYS[kind]:
            try:
                exprs.append(parse(body[k], names))
            except ParseError as exc:
                raise ConfigError(f"{kind}.{k}: {exc}") from exc
        if kind == "right_g":
            m = RightGMap(frame, *exprs)
        elif kind == "left_g":
            m = LeftGMap(frame, *exprs)
        else:
            m = ExprComponentMap(frame, exprs)
        dom = raw.get("domain", {"min": [-1, -1, -1], "max": [1, 1, 1]})
        domain = DomainBox.from_dict(dom)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config: {exc!r}") from exc
    tols = raw.get("tolerances", {})
    try:
        return JobConfig(
            frame=frame, kind=kind, map=m, domain=domain,
            tol=float(tols.get("tol", raw.get("tol", 1e-8))),
            seed=int(raw.get("seed", 0)),
            samples=int(raw.get("samples", 64)),
            triangles=int(raw.get("triangles", 20)),
            nodes=int(raw.get("nodes", DEFAULT_NODES)),
            raw=raw,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid numeric setting: {exc}") from exc


def _quat_json(q: Quat) -> list:
    return [[complex(c).real, complex(c).imag] for c in q]


def _c6(c) -> str:
    c = complex(c)
    return f"{c.real:.6g}{c.imag:+.6g}i"


def _quat_text(q: Quat) -> str:
    return " ".join(f"{_c6(c)}*e{k}" for k, c in enumerate(q, 1))


def _point(text: str) -> Point3:
    try:
        x, y, z = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"expected x,y,z, got {text!r}") from exc
    return Point3(x, y, z)


def _apply_overrides(cfg: JobConfig, args) -> None:
    for name in ("seed", "tol", "samples", "nodes", "triangles"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)


def _frame_summary(frame: Frame) -> dict:
    rep = validate(frame)
    return {"independent": rep.independent, "surjective": rep.surjective, "rank": rep.rank,
            "messages": list(rep.messages)}


def _morera_stats(cm, cfg: JobConfig, side: str) -> dict:
    rng = np.random.default_rng(cfg.seed)
    ratios = []
    for _ in range(cfg.triangles):
        t = random_triangle(rng, cfg.domain)
        ratios.append(morera_residual(cm, t, side, cfg.nodes) / morera_scale(cm, t, cfg.nodes))
    return {
        "triangles": len(ratios),
        "max_relative": max(ratios),
        "median_relative": statistics.median(ratios),
        "zero_count": sum(r <= 1e-8 for r in ratios),
    }


def _taylor_table(m: GMap, p0, probe, order: int) -> dict:
    coeffs = taylor_expand(m, p0, order)
    target = m.value(probe)
    errs = [norm(target - s) for s in partial_sums(coeffs, m.frame, p0, probe, m.side)]
    return {"center": list(p0), "probe": list(probe), "order": order,
            "coefficients": [_quat_json(c) for c in coeffs], "errors": errs}


def _default_probe(box: DomainBox) -> Point3:
    c = np.array(box.center)
    r = 0.25 * float(np.min(box.widths)) / 2
    return Point3(*(float(v) for v in c + r / math.sqrt(3)))


def _emit(report: dict, human: list[str], json_path: str | None, out) -> None:
    text = dumps17(report, indent=2) + "\n"
    if json_path == "-":
        out.write(text)
        return
    out.write("\n".join(human) + "\n")
    if json_path:
        Path(json_path).write_text(text, encoding="utf-8")


def cmd_classify(args, out) -> int:
    cfg = load_config(args.config)
    _apply_overrides(cfg, args)
    t0 = time.perf_counter()
    cm = cfg.component_map
    rep = classify(cm, cfg.domain, cfg.samples, cfg.tol, cfg.seed)
    morera = {side: _morera_stats(cm, cfg, side) for side in ("right", "left")}
    frame_info = _frame_summary(cfg.frame)
    report = {"config": cfg.raw, "frame": frame_info, "classification": rep.to_dict(),
              "morera": morera}
    if isinstance(cfg.map, GMap):
        report["taylor"] = _taylor_table(cfg.map, cfg.domain.center,
                                         _default_probe(cfg.domain), 16)
    elapsed = time.perf_counter() - t0
    if args.timing:
        report["timing"] = {"seconds": elapsed}
    human = [
        f"map kind       : {cfg.kind}",
        f"points tested  : {rep.points_tested}",
        f"right_G        : {rep.right_G}",
        f"left_G         : {rep.left_G}",
        f"H              : {rep.H}",
        f"right_H        : {rep.right_H}",
        f"left_H         : {rep.left_H}",
    ]
    human += [f"residual {k:<7}: {v:.6g}" for k, v in rep.residuals.items()]
    if frame_info["messages"]:
        human += [f"frame warning  : {m}" for m in frame_info["messages"]]
    for side, st in morera.items():
        human.append(f"morera {side:<5}  : max {st['max_relative']:.6g}, "
                     f"{st['zero_count']}/{st['triangles']} triangles vanish")
    if "taylor" in report:
        human.append("taylor errors  : " + " ".join(f"{e:.3g}" for e in report["taylor"]["errors"]))
    human.append(f"elapsed        : {elapsed:.3f} s")
    _emit(report, human, args.json, out)
    return EXIT_OK


def _load_path(spec: str, closed: bool) -> Polyline:
    p = Path(spec)
    try:
        text = p.read_text(encoding="utf-8") if p.is_file() else spec
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read path spec: {exc}") from exc
    if isinstance(data, dict):
        closed = closed or bool(data.get("closed", False))
        data = data.get("vertices")
    try:
        return Polyline(tuple(Point3(*map(float, v)) for v in data), closed)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid path spec: {exc}") from exc


def cmd_integrate(args, out) -> int:
    cfg = load_config(args.config)
    _apply_overrides(cfg, args)
    path = _load_path(args.path, args.closed)
    f = cfg.map.value if isinstance(cfg.map, GMap) else cfg.map
    if args.order == "left":
        val = integral_dzeta_left(path, f, cfg.frame, cfg.nodes)
        label = "int dzeta Phi"
    else:
        val = integral_dzeta_right(path, f, cfg.frame, cfg.nodes)
        label = "int Phi dzeta"
    report = {"order": args.order, "nodes": cfg.nodes, "closed": path.closed,
              "vertices": path.to_json_vertices(), "integral": _quat_json(val),
              "norm": norm(val)}
    human = [f"{label} = {_quat_text(val)}", f"norm = {norm(val):.6g}"]
    _emit(report, human, args.json, out)
    return EXIT_OK


def cmd_taylor(args, out) -> int:
    cfg = load_config(args.config)
    if not isinstance(cfg.map, GMap):
        raise NotAnalyticMap("taylor needs a right_g or left_g map")
    center = _point(args.center)
    probe = _point(args.probe) if args.probe else center
    table = _taylor_table(cfg.map, center, probe, args.order)
    human = [f"p_{n} = {_quat_text(Quat(*(complex(*c) for c in q)))}"
             for n, q in enumerate(table["coefficients"])]
    human += [f"n={n:<3d} |Phi(probe) - S_n(probe)| = {e:.6g}" for n, e in enumerate(table["errors"])]
    _emit(table, human, args.json, out)
    return EXIT_OK


def cmd_verify_frame(args, out) -> int:
    cfg = load_config(args.config, require_map=False)
    rep = validate(cfg.frame)
    lines = {}
    try:
        for ln in degeneracy_lines(cfg.frame):
            lines[ln.label] = {"anchor": list(ln.anchor), "direction": list(ln.direction)}
    except DegeneratePencil as exc:
        lines["error"] = str(exc)
    report = {"independent": rep.independent, "surjective": rep.surjective, "rank": rep.rank,
              "messages": list(rep.messages), "lines": lines}
    human = [f"independent over R : {rep.independent} (rank {rep.rank})",
             f"f1(E3) = f2(E3) = C: {rep.surjective}"]
    human += [f"  {m}" for m in rep.messages]
    for label, ln in lines.items():
        if label == "error":
            human.append(f"degeneracy lines   : {ln}")
        else:
            d = ", ".join(f"{v:.6g}" for v in ln["direction"])
            human.append(f"{label}: t -> t*({d})")
    _emit(report, human, args.json, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatmono", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="JSON job configuration")
        p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout only)")

    p = sub.add_parser("classify", help="classify the configured map")
    common(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--triangles", type=int)
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("integrate", help="integrate the map along a polyline")
    common(p)
    p.add_argument("--path", required=True, help="JSON vertex array, or a file holding one")
    p.add_argument("--order", choices=("left", "right"), default="left",
                   help="left: int dzeta Phi; right: int Phi dzeta")
    p.add_argument("--nodes", type=int)
    p.add_argument("--closed", action="store_true")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("taylor", help="power-series coefficients and truncation errors")
    common(p)
    p.add_argument("--center", required=True, metavar="X,Y,Z")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--probe", metavar="X,Y,Z")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("verify-frame", help="check independence, surjectivity, degeneracy lines")
    common(p)
    p.set_defaults(func=cmd_verify_frame)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotAnalyticMap as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (EvaluationError, QuatMonoError, ArithmeticError, ValueError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
