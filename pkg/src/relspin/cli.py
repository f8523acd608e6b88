"""Command-line front end: single scenarios, figure-data sweeps and the boosted CHSH demo.

Exit codes: 0 success, 2 configuration / input error, 3 numerical tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import re
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bellcorr, entanglement, kinematics
from .errors import ConfigError, RelspinError, SuperluminalVelocity
from .qstate import ALICE_BOB, FOUR_QUBIT, SPIN_MOMENTUM
from .relboost import BellType, ScenarioParams, TripletType, boost_scenario

EXIT_OK, EXIT_CONFIG, EXIT_TOLERANCE = 0, 2, 3

DEFAULT_SCENARIO_TOL = 1e-9
DEFAULT_CHSH_TOL = 1e-8

ANGLE_FIELDS = frozenset({"alpha", "beta", "theta", "phi", "delta"})
SPEED_FIELDS = frozenset({"v", "w"})
FAMILY_FIELDS = {
    "bell": ("alpha", "beta"),
    "triplet": ("alpha", "theta", "phi"),
    "wigner": (),
}
PARTITIONS = {"four_qubit": FOUR_QUBIT, "spin_momentum": SPIN_MOMENTUM, "alice_bob": ALICE_BOB}
CLOSED_FORM_FIELDS = {
    "bell": ("E_4q_unboosted", "E_4q_boosted", "E_4q_diff", "E_spinmom_boosted", "E_ab"),
    "triplet": ("E_diff_4q", "E_spinmom_boosted", "E_ab"),
    "wigner": (),
}


# --------------------------------------------------------------------------- config helpers

def _line_of(text: str | None, name: str) -> int | None:
    if not text:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(name), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ConfigError("top-level JSON value must be an object", line=1)
    return doc


def _number(doc: dict, name: str, text: str | None) -> float:
    val = doc[name]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ConfigError(f"expected a finite number, got {val!r}", field=name, line=_line_of(text, name))
    return float(val)


def _angle(val: float, degrees: bool) -> float:
    return math.radians(val) if degrees else val


def _scenario_params(values: dict, family: str, text: str | None = None) -> ScenarioParams:
    """Build :class:`ScenarioParams` from numeric ``values`` (angles already in radians)."""
    if family == "bell":
        spin = BellType(values["beta"])
    elif family == "triplet":
        spin = TripletType(values["theta"], values["phi"])
    else:
        raise ConfigError(f"family {family!r} has no two-particle state", field="family")
    if "delta" in values:
        d = values["delta"]
        if not 0.0 <= d <= math.pi / 2:
            raise ConfigError("delta must lie in [0, pi/2]", field="delta", line=_line_of(text, "delta"))
        return ScenarioParams.from_delta(spin, values["alpha"], d)
    for s in ("v", "w"):
        if not 0.0 <= values[s] < 1.0:
            raise SuperluminalVelocity(f"{s} = {values[s]!r} outside [0, 1)")
    return ScenarioParams.from_speeds(spin, values["alpha"], values["v"], values["w"])


def parse_scenario_config(text: str, degrees: bool = False) -> tuple[str, dict]:
    """Validate a scenario document; returns ``(family, values)`` with angles in radians."""
    doc = _load_json(text)
    family = doc.get("family")
    if family not in ("bell", "triplet"):
        raise ConfigError(
            f"expected 'bell' or 'triplet', got {family!r}", field="family", line=_line_of(text, "family")
        )
    required = list(FAMILY_FIELDS[family])
    if "delta" in doc:
        required.append("delta")
        if "v" in doc or "w" in doc:
            raise ConfigError("give either delta or the speeds v and w, not both", field="delta",
                              line=_line_of(text, "delta"))
    else:
        required += ["v", "w"]
    allowed = set(required) | {"family"}
    for key in doc:
        if key not in allowed:
            raise ConfigError("unknown field", field=key, line=_line_of(text, key))
    values = {}
    for name in required:
        if name not in doc:
            raise ConfigError("missing required field", field=name)
        x = _number(doc, name, text)
        values[name] = _angle(x, degrees) if name in ANGLE_FIELDS else x
    return family, values


# --------------------------------------------------------------------------- scenario

def _spin_reduction(state) -> np.ndarray:
    return state.reduced([2, 3])


def run_scenario(family: str, values: dict, tol: float = DEFAULT_SCENARIO_TOL) -> dict:
    """Numeric and closed-form partition entanglement for one scenario."""
    params = _scenario_params(values, family)
    initial, boosted = boost_scenario(params)

    parts = {}
    for name, part in PARTITIONS.items():
        parts[name] = {
            "initial": entanglement.partition_entanglement(initial, part).total_E,
            "boosted": entanglement.partition_entanglement(boosted, part).total_E,
        }
    spins = {"initial": _spin_reduction(initial), "boosted": _spin_reduction(boosted)}

    if family == "bell":
        cf = entanglement.closed_forms_bell(params.alpha, values["beta"], params.delta)
        numeric = {
            "E_4q_unboosted": parts["four_qubit"]["initial"],
            "E_4q_boosted": parts["four_qubit"]["boosted"],
            "E_4q_diff": parts["four_qubit"]["boosted"] - parts["four_qubit"]["initial"],
            "E_spinmom_boosted": parts["spin_momentum"]["boosted"],
            "E_ab": parts["alice_bob"]["initial"],
        }
    else:
        cf = entanglement.closed_forms_triplet(params.alpha, values["theta"], values["phi"], params.delta)
        numeric = {
            "E_diff_4q": parts["four_qubit"]["boosted"] - parts["four_qubit"]["initial"],
            "E_spinmom_boosted": parts["spin_momentum"]["boosted"],
            "E_ab": parts["alice_bob"]["initial"],
        }
    closed = asdict(cf)
    residuals = {k: abs(numeric[k] - closed[k]) for k in closed}
    worst = max(residuals.values())
    return {
        "family": family,
        "parameters": dict(values),
        "delta": params.delta,
        "partitions": parts,
        "spin_concurrence": {k: entanglement.concurrence(r) for k, r in spins.items()},
        "horodecki_M": {k: bellcorr.horodecki_M(r) for k, r in spins.items()},
        "closed_forms": closed,
        "numeric": numeric,
        "residuals": residuals,
        "max_residual": worst,
        "tolerance": tol,
        "ok": worst <= tol,
    }


# --------------------------------------------------------------------------- sweeps

@dataclass
class SweepSpec:
    """Grid sweep over named parameters; rows are emitted row-major in ``swept`` order."""

    family: str
    swept: dict[str, tuple[float, float, int]]
    fixed: dict[str, float] = field(default_factory=dict)
    partitions: tuple[str, ...] = ()
    quantities: tuple[str, ...] = ()
    output: str | None = None

    def __post_init__(self):
        if self.family not in FAMILY_FIELDS:
            raise ConfigError(f"unknown family {self.family!r}", field="family")
        if not self.swept:
            raise ConfigError("at least one swept parameter required", field="swept")
        names = list(self.swept) + list(self.fixed)
        if len(set(names)) != len(names):
            raise ConfigError("parameter both swept and fixed", field="fixed")
        for name, (lo, hi, steps) in self.swept.items():
            if int(steps) != steps or steps < 2:
                raise ConfigError(f"steps must be an integer >= 2, got {steps!r}", field=name)
            self._check_domain(name, lo)
            self._check_domain(name, hi)
        for name, val in self.fixed.items():
            self._check_domain(name, val)
        needed = set(FAMILY_FIELDS[self.family])
        needed |= {"v", "w"} if self.family == "wigner" or "delta" not in names else {"delta"}
        missing = needed - set(names)
        if missing:
            raise ConfigError(f"missing parameters {sorted(missing)}", field="fixed")
        extra = set(names) - needed
        if extra:
            raise ConfigError(f"parameters {sorted(extra)} do not apply to family {self.family!r}",
                              field="swept")
        for p in self.partitions:
            if p not in PARTITIONS:
                raise ConfigError(f"unknown partition {p!r}", field="partitions")
            if self.family == "wigner":
                raise ConfigError("the wigner family has no partitions", field="partitions")
        for q in self.quantities:
            if q not in CLOSED_FORM_FIELDS[self.family]:
                raise ConfigError(f"unknown quantity {q!r} for family {self.family!r}", field="quantities")

    @staticmethod
    def _check_domain(name: str, val: float) -> None:
        if not math.isfinite(val):
            raise ConfigError("value must be finite", field=name)
        if name in SPEED_FIELDS and not 0.0 <= val < 1.0:
            raise ConfigError(f"speed {val!r} outside [0, 1)", field=name)
        if name == "delta" and not 0.0 <= val <= math.pi / 2:
            raise ConfigError(f"delta {val!r} outside [0, pi/2]", field=name)

    def axes(self) -> list[tuple[str, np.ndarray]]:
        return [(n, np.linspace(lo, hi, int(k))) for n, (lo, hi, k) in self.swept.items()]

    def header(self) -> list[str]:
        cols = list(self.swept)
        if self.family == "wigner":
            return cols + ["delta", "delta_matrix"]
        for p in self.partitions:
            cols += [f"E_{p}_initial", f"E_{p}_boosted"]
        return cols + list(self.quantities)

    def points(self):
        names = list(self.swept)
        for combo in itertools.product(*(vals for _, vals in self.axes())):
            values = dict(self.fixed)
            values.update(zip(names, (float(x) for x in combo)))
            yield values


def _matrix_wigner_angle(v: float, w: float) -> float:
    p = kinematics.four_momentum(1.0, (0.0, 0.0, v))
    return kinematics.wigner_rotation(kinematics.boost_x(w), p, 1.0).angle


def _sweep_row(job) -> list[float]:
    spec, values = job
    row = [values[n] for n in spec.swept]
    if spec.family == "wigner":
        v, w = values["v"], values["w"]
        return row + [kinematics.wigner_angle_perpendicular(v, w), _matrix_wigner_angle(v, w)]
    params = _scenario_params(values, spec.family)
    initial, boosted = boost_scenario(params)
    for p in spec.partitions:
        part = PARTITIONS[p]
        row.append(entanglement.partition_entanglement(initial, part).total_E)
        row.append(entanglement.partition_entanglement(boosted, part).total_E)
    if spec.quantities:
        if spec.family == "bell":
            cf = entanglement.closed_forms_bell(params.alpha, values["beta"], params.delta)
        else:
            cf = entanglement.closed_forms_triplet(params.alpha, values["theta"], values["phi"], params.delta)
        row += [getattr(cf, q) for q in spec.quantities]
    return row


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def sweep_rows(spec: SweepSpec, jobs: int = 1) -> list[list[float]]:
    work = [(spec, values) for values in spec.points()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_row, work, chunksize=max(1, len(work) // (4 * jobs))))
    return [_sweep_row(job) for job in work]


def run_sweep(spec: SweepSpec, jobs: int = 1) -> str:
    """CSV text (header row, LF line endings, 17 significant digits)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(spec.header())
    for row in sweep_rows(spec, jobs):
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


PI = math.pi
PRESETS = {
    "fig1": SweepSpec("wigner", {"v": (0.0, 0.999, 51), "w": (0.0, 0.999, 51)}),
    "fig2": SweepSpec(
        "bell", {"alpha": (0.0, PI, 41), "beta": (0.0, PI, 41)}, {"delta": PI / 2},
        ("four_qubit",), ("E_4q_diff",),
    ),
    "fig3": SweepSpec(
        "bell", {"alpha": (0.0, PI, 41), "beta": (0.0, PI, 41)}, {"delta": PI / 4},
        ("spin_momentum",), ("E_spinmom_boosted",),
    ),
    "fig4": SweepSpec(
        "triplet", {"theta": (0.0, PI, 41), "phi": (0.0, 2 * PI, 41)}, {"alpha": PI / 4, "delta": PI / 4},
        ("spin_momentum",), ("E_spinmom_boosted",),
    ),
}


def parse_sweep_spec(text: str, degrees: bool = False) -> SweepSpec:
    doc = _load_json(text)
    allowed = {"family", "swept", "fixed", "partitions", "quantities", "output"}
    for key in doc:
        if key not in allowed:
            raise ConfigError("unknown field", field=key, line=_line_of(text, key))
    for key in ("family", "swept"):
        if key not in doc:
            raise ConfigError("missing required field", field=key)

    def conv(name, x):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"expected a number, got {x!r}", field=name, line=_line_of(text, name))
        return _angle(float(x), degrees) if name in ANGLE_FIELDS else float(x)

    swept = {}
    if not isinstance(doc["swept"], dict):
        raise ConfigError("expected an object of name: [min, max, steps]", field="swept",
                          line=_line_of(text, "swept"))
    for name, rng in doc["swept"].items():
        if not (isinstance(rng, list) and len(rng) == 3):
            raise ConfigError("expected [min, max, steps]", field=name, line=_line_of(text, name))
        steps = rng[2]
        if isinstance(steps, bool) or not isinstance(steps, int):
            raise ConfigError(f"steps must be an integer, got {steps!r}", field=name, line=_line_of(text, name))
        swept[name] = (conv(name, rng[0]), conv(name, rng[1]), steps)
    fixed = doc.get("fixed", {})
    if not isinstance(fixed, dict):
        raise ConfigError("expected an object", field="fixed", line=_line_of(text, "fixed"))
    fixed = {k: conv(k, v) for k, v in fixed.items()}
    parts = tuple(doc.get("partitions", ()))
    quants = tuple(doc.get("quantities", ()))
    try:
        return SweepSpec(str(doc["family"]), swept, fixed, parts, quants, doc.get("output"))
    except ConfigError as exc:
        if exc.line is None and exc.field is not None:
            raise ConfigError(exc.message, field=exc.field, line=_line_of(text, exc.field)) from None
        raise


# --------------------------------------------------------------------------- CHSH demo

def run_chsh_demo(v: float, w: float, tol: float = DEFAULT_CHSH_TOL) -> dict:
    for name, s in (("v", v), ("w", w)):
        if not 0.0 <= s < 1.0:
            raise SuperluminalVelocity(f"{name} = {s!r} outside [0, 1)")
    res = bellcorr.boosted_chsh_demo(v, w)
    ok = abs(abs(res.S_boosted_transformed_directions) - bellcorr.TSIRELSON) <= tol
    return {**asdict(res), "tsirelson": bellcorr.TSIRELSON, "tolerance": tol, "ok": ok}


# --------------------------------------------------------------------------- entry point

def _global_options(suppress: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before or after the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="write the result here instead of stdout", **kw)
    p.add_argument("--tol", type=float, help="numerical tolerance for residual / CHSH checks", **kw)
    p.add_argument("--degrees", action="store_true", help="read input angles in degrees", **kw)
    p.add_argument("--jobs", type=int, help="worker processes for sweeps", **kw)
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="relspin", description=__doc__.splitlines()[0], parents=[_global_options(False)]
    )
    common = [_global_options(True)]
    sub = ap.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", parents=common, help="entanglement report for one scenario")
    sc.add_argument("config", help="JSON scenario file")

    sw = sub.add_parser("sweep", parents=common, help="emit figure data as CSV")
    grp = sw.add_mutually_exclusive_group(required=True)
    grp.add_argument("--preset", choices=sorted(PRESETS))
    grp.add_argument("--spec", help="JSON sweep specification")

    ch = sub.add_parser("chsh", parents=common, help="boosted CHSH demonstration")
    ch.add_argument("--v", type=float, required=True, help="particle speed")
    ch.add_argument("--w", type=float, required=True, help="observer speed")
    return ap


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "scenario":
            tol = DEFAULT_SCENARIO_TOL if args.tol is None else args.tol
            family, values = parse_scenario_config(_read(args.config), args.degrees)
            report = run_scenario(family, values, tol)
            _emit(json.dumps(report, indent=2) + "\n", args.out)
            return EXIT_OK if report["ok"] else EXIT_TOLERANCE

        if args.command == "sweep":
            if args.preset:
                spec = PRESETS[args.preset]
            else:
                spec = parse_sweep_spec(_read(args.spec), args.degrees)
            _emit(run_sweep(spec, max(1, args.jobs or 1)), args.out or spec.output)
            return EXIT_OK

        tol = DEFAULT_CHSH_TOL if args.tol is None else args.tol
        rep = run_chsh_demo(args.v, args.w, tol)
        lines = [f"{k} = {_fmt(rep[k])}" for k in (
            "delta", "S_initial", "S_boosted_fixed_directions", "S_boosted_transformed_directions", "tsirelson"
        )]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK if rep["ok"] else EXIT_TOLERANCE
    except (ConfigError, RelspinError, OSError) as exc:
        print(f"relspin: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
