"""Command-line interface.

Four subcommands:

* ``scan``: sweep the two-parameter family interpolating between the
  GHZ projector, the W projector and white noise, evaluate the
  requested separability margins on a triangular grid and write a CSV
  table, optionally with an SVG sketch of the zero-level sets.
* ``classify``: read a state from a JSON file and print a report for
  the requested modes (bipartite criteria, three-qubit matrix
  criteria, partial-separability classes, pure orbit type, polynomial
  invariants).
* ``lattice``: dump the partial-separability class-label lattice.
* ``invariants``: evaluate the local-unitary invariants of a state,
  one value per canonical permutation label.

The environment variable ENTANGLIA_THREADS caps the number of worker
threads used by grid scans and convex-roof searches.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import click
import numpy as np

from . import ghzw
from .bipartite import (majorization_criterion, ppt_conclusive,
                        ppt_criterion, reduction_criterion,
                        reshuffling_criterion)
from .fts import canonical_invariants, fts_invariants, slocc_class_pure
from .indicators import (EPS_CLASS, ROOF_RESTARTS, ROOF_STEPS, classify_ps,
                         classify_pss)
from .luinv import mixed_invariant, perm_label, pure_invariant, s3_labels
from .multiqubit import gs_matrix_criteria
from .partitions import lattice_json
from .stateio import load_state
from .tensor import proj

# tolerances for the PPT-entangled flag: PPT is granted down to
# eigenvalue dust, a matrix-criterion violation must clear the noise
PPT_FLAG_TOL = 1e-12
GS_FLAG_TOL = 1e-9


def _threads():
    env = os.environ.get("ENTANGLIA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# ----------------------------------------------------------------------
# scan: margins of the closed-form criteria over the parameter triangle


def _col_ppt(g, w):
    return float(np.min(ghzw.spectrum_pt1(g, w)))


def _col_gs(g, w):
    return float(min(ghzw.gs3_margins(g, w)))


def _col_su1(g, w):
    return float(min(ghzw.su283_margins(g, w)))


def _col_su2(g, w):
    return float(min(ghzw.su2_margins(g, w)))


def _col_maj(g, w):
    first, second = ghzw.maj_rho_vs_23(g, w)
    return float(first and second and ghzw.maj_rho_vs_1(g, w))


def _col_red(g, w):
    return float(min(ghzw.red3_margin(g, w), ghzw.red4_margin(g, w)))


def _col_ccnr(g, w):
    return float(ghzw.ccnr_margin(g, w))


def _col_wit(g, w):
    return float(min(ghzw.witness_traces(g, w)))


def _col_wootters(g, w):
    return float(ghzw.wootters_c23(g, w))


SCAN_COLUMNS = {
    "ppt": _col_ppt,
    "gs": _col_gs,
    "su1": _col_su1,
    "su2": _col_su2,
    "maj": _col_maj,
    "red": _col_red,
    "ccnr": _col_ccnr,
    "wit": _col_wit,
    "wootters": _col_wootters,
}

SCAN_ORDER = ("ppt", "gs", "su1", "su2", "maj", "red", "ccnr", "wit",
              "wootters")

# zero-level threshold used when sketching region boundaries; margins
# change sign at zero, booleans flip across one half, the concurrence
# leaves its flat zero plateau
_ISO = {"maj": 0.5, "wootters": 1e-12}


def _parse_criteria(text):
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not names:
        raise click.BadParameter("no criteria given")
    bad = [x for x in names if x not in SCAN_COLUMNS]
    if bad:
        raise click.BadParameter(
            "unknown criterion %s; available: %s"
            % (", ".join(repr(x) for x in bad), ", ".join(SCAN_ORDER)))
    seen, out = set(), []
    for x in names:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _point_seed(seed, i, j):
    return int(np.random.SeedSequence((seed, i, j)).generate_state(1)[0])


def _scan_grid(res, names, roofs, roof_restarts, roof_steps, seed):
    """Row blocks of the triangular grid g = i/(res-1), w = j/(res-1),
    i + j <= res - 1, ordered by (g, w). Each row is (g, w, values,
    pptes flag[, class name])."""
    step = 1.0 / (res - 1)
    need = list(names)
    for extra in ("ppt", "gs"):
        if extra not in need:
            need.append(extra)

    def block(i):
        g = i * step
        rows = []
        for j in range(res - i):
            w = j * step
            vals = {k: SCAN_COLUMNS[k](g, w) for k in need}
            flag = int(vals["ppt"] >= -PPT_FLAG_TOL
                       and vals["gs"] < -GS_FLAG_TOL)
            row = [g, w, [vals[k] for k in names], flag]
            if roofs:
                dec = classify_pss(ghzw.build_ghzw(g, w),
                                   restarts=roof_restarts,
                                   steps=roof_steps,
                                   seed=_point_seed(seed, i, j),
                                   threads=1)
                row.append(dec.name)
            rows.append(row)
        return rows

    with ThreadPoolExecutor(max_workers=min(_threads(), res)) as pool:
        return list(pool.map(block, range(res)))


def _write_scan_csv(path, res, names, blocks, roofs, seed):
    cols = "g,w," + ",".join(names) + ",pptes"
    if roofs:
        cols += ",class"
    lines = [
        "# entanglia scan v1",
        "# res=%d criteria=%s seed=%d" % (res, ",".join(names), seed),
        "# columns: %s" % cols,
    ]
    count = 0
    for block in blocks:
        for row in block:
            g, w, vals, flag = row[:4]
            cells = ["%.12g" % g, "%.12g" % w]
            cells += ["%.12g" % v for v in vals]
            cells.append(str(flag))
            if roofs:
                cells.append(row[4])
            lines.append(",".join(cells))
            count += 1
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return count


# ----------------------------------------------------------------------
# SVG sketch: marching squares on each margin grid


_SVG_COLORS = {
    "ppt": "#1f77b4", "gs": "#d62728", "su1": "#2ca02c", "su2": "#17becf",
    "maj": "#9467bd", "red": "#ff7f0e", "ccnr": "#8c564b", "wit": "#e377c2",
    "wootters": "#7f7f7f",
}

_SVG_PAD = 50.0
_SVG_SIZE = 520.0


def _svg_xy(g, w):
    return (_SVG_PAD + g * _SVG_SIZE, _SVG_PAD + (1.0 - w) * _SVG_SIZE)


def _iso_segments(grid, iso, step):
    """Line segments (in (g, w) coordinates) of the iso-level of a
    scalar grid, NaN marking cells outside the domain."""
    above = grid >= iso
    valid = ~np.isnan(grid)
    cell_ok = (valid[:-1, :-1] & valid[1:, :-1]
               & valid[1:, 1:] & valid[:-1, 1:])
    same = ((above[:-1, :-1] == above[1:, :-1])
            & (above[1:, 1:] == above[:-1, 1:])
            & (above[:-1, :-1] == above[1:, 1:]))
    segs = []
    for i, j in np.argwhere(cell_ok & ~same):
        corners = ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1))
        pts = []
        for a in range(4):
            (ia, ja), (ib, jb) = corners[a], corners[(a + 1) % 4]
            va, vb = grid[ia, ja], grid[ib, jb]
            if (va >= iso) != (vb >= iso):
                t = (iso - va) / (vb - va)
                pts.append(((ia + t * (ib - ia)) * step,
                            (ja + t * (jb - ja)) * step))
        for a in range(0, len(pts) - 1, 2):
            segs.append((pts[a], pts[a + 1]))
    return segs


def _write_scan_svg(path, res, names, grids, flag_grid):
    step = 1.0 / (res - 1)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="760" height="620" '
        'viewBox="0 0 760 620">',
        '<rect width="760" height="620" fill="white"/>',
    ]
    cell = step * _SVG_SIZE
    for i, j in np.argwhere(flag_grid == 1):
        x, y = _svg_xy(i * step, j * step)
        parts.append(
            '<rect x="%.2f" y="%.2f" width="%.2f" height="%.2f" '
            'fill="black" fill-opacity="0.35"/>'
            % (x - cell / 2, y - cell / 2, cell, cell))
    for k, name in enumerate(names):
        segs = _iso_segments(grids[name], _ISO.get(name, 0.0), step)
        if segs:
            d = " ".join("M %.2f %.2f L %.2f %.2f"
                         % (_svg_xy(*p) + _svg_xy(*q)) for p, q in segs)
            parts.append('<path d="%s" stroke="%s" stroke-width="1.5" '
                         'fill="none"/>' % (d, _SVG_COLORS[name]))
        ly = 60 + 22 * k
        parts.append('<line x1="620" y1="%d" x2="660" y2="%d" stroke="%s" '
                     'stroke-width="3"/>' % (ly, ly, _SVG_COLORS[name]))
        parts.append('<text x="668" y="%d" font-family="monospace" '
                     'font-size="14">%s</text>' % (ly + 5, name))
    ly = 60 + 22 * len(names)
    parts.append('<rect x="620" y="%d" width="40" height="10" fill="black" '
                 'fill-opacity="0.35"/>' % (ly - 5))
    parts.append('<text x="668" y="%d" font-family="monospace" '
                 'font-size="14">pptes</text>' % (ly + 5))
    tri = [_svg_xy(0, 0), _svg_xy(1, 0), _svg_xy(0, 1)]
    parts.append('<path d="M %.2f %.2f L %.2f %.2f L %.2f %.2f Z" '
                 'stroke="#333" stroke-width="1" fill="none"/>'
                 % (tri[0] + tri[1] + tri[2]))
    gx, gy = _svg_xy(1, 0)
    wx, wy = _svg_xy(0, 1)
    parts.append('<text x="%.2f" y="%.2f" font-family="monospace" '
                 'font-size="16">g</text>' % (gx + 8, gy + 5))
    parts.append('<text x="%.2f" y="%.2f" font-family="monospace" '
                 'font-size="16">w</text>' % (wx - 5, wy - 10))
    parts.append('</svg>')
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


# ----------------------------------------------------------------------
# classify: per-mode report sections


MODES = ("bipartite", "gs", "ps", "pss", "fts", "invariants")


def _load_or_fail(path):
    try:
        return load_state(path)
    except (OSError, ValueError, KeyError, TypeError,
            json.JSONDecodeError) as exc:
        raise click.ClickException("could not read state file %s: %s"
                                   % (path, exc))


def _as_density(state, kind):
    return proj(state) if kind == "vector" else state


def _require_dims(dims, wanted, mode):
    if tuple(dims) != wanted:
        raise click.ClickException(
            "mode %r needs local dimensions %s, the file declares %s"
            % (mode, list(wanted), list(dims)))


def _bipartite_section(rho, dims):
    n = len(dims)
    if n < 2:
        raise click.ClickException("mode 'bipartite' needs at least two "
                                   "subsystems")
    cuts = [[1]] if n == 2 else [[a] for a in range(1, n + 1)]
    out = []
    for cut in cuts:
        rest = [b for b in range(1, n + 1) if b not in cut]
        name = "%s|%s" % ("".join(map(str, cut)), "".join(map(str, rest)))
        v_ppt, neg = ppt_criterion(rho, dims, cut)
        out.append({
            "cut": name,
            "ppt": v_ppt.asdict(),
            "negativity": neg,
            "ppt_conclusive": ppt_conclusive(dims, cut),
            "reduction": reduction_criterion(rho, dims, cut).asdict(),
            "reshuffling": reshuffling_criterion(rho, dims, cut).asdict(),
            "majorization": majorization_criterion(rho, dims, cut).asdict(),
        })
    return out


def _gs_section(rho, dims):
    _require_dims(dims, (2, 2, 2), "gs")
    verdicts = [v.asdict() for v in gs_matrix_criteria(rho)]
    bisep = [v for v in verdicts if v["id"].startswith("gs-2sep")]
    full = [v for v in verdicts if v["id"].startswith("gs-fullsep")]
    return {
        "verdicts": verdicts,
        "biseparable_pass": all(v["holds"] for v in bisep),
        "fullsep_pass": all(v["holds"] for v in full),
    }


def _class_section(decision):
    return {"class": decision.name, "eps": decision.eps,
            "profile": decision.profile}


def _fts_section(state, dims, kind):
    if kind != "vector":
        raise click.ClickException("mode 'fts' needs a state vector")
    _require_dims(dims, (2, 2, 2), "fts")
    inv = fts_invariants(state)
    return {
        "class": slocc_class_pure(state),
        "n": inv.n, "y": inv.y, "c2": list(inv.c2), "g": list(inv.g),
        "t": inv.t, "tau2": inv.tau2,
        "canonical": canonical_invariants(state),
    }


def _invariant_labels(k, grade):
    if grade == 1:
        return [("e",) * k]
    if grade == 2:
        return list(product(("e", "t"), repeat=k))
    return s3_labels(k)


def _jsonify_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _invariant_section(state, dims, kind, grade):
    slots = len(dims) if kind == "density" else len(dims) - 1
    if slots < 1:
        raise click.ClickException("invariants of a single-party vector "
                                   "reduce to the norm; nothing to list")
    values = {}
    for names in _invariant_labels(slots, grade):
        label = perm_label(names, grade)
        if kind == "density":
            val = mixed_invariant(state, dims, label)
        else:
            val = pure_invariant(state, dims, label)
        values[str(label)] = _jsonify_value(val)
    convention = ("one permutation name per subsystem" if kind == "density"
                  else "one permutation name per subsystem, the last one "
                       "held fixed")
    return {"grade": grade, "label_convention": convention,
            "values": values}


def _emit_json(payload, out_path):
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)
        click.echo("wrote %s" % out_path)
    else:
        click.echo(text, nl=False)


# ----------------------------------------------------------------------
# commands


@click.group()
@click.version_option(package_name="entanglia")
def main():
    """Entanglement qualification and quantification toolkit."""


@main.command()
@click.option("--res", type=click.IntRange(2, 2000), required=True,
              help="grid resolution per axis")
@click.option("--criteria", default=",".join(SCAN_ORDER), show_default=True,
              help="comma-separated margin columns")
@click.option("--csv", "csv_path", required=True,
              type=click.Path(dir_okay=False, writable=True),
              help="output CSV table")
@click.option("--svg", "svg_path", default=None,
              type=click.Path(dir_okay=False, writable=True),
              help="optional SVG sketch of the zero-level sets")
@click.option("--roofs/--no-roofs", default=False, show_default=True,
              help="append a partial-separability class column "
                   "(convex-roof search per grid point, slow)")
@click.option("--roof-restarts", type=click.IntRange(min=1), default=2,
              show_default=True)
@click.option("--roof-steps", type=click.IntRange(min=1), default=600,
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="base seed for the per-point roof searches")
def scan(res, criteria, csv_path, svg_path, roofs, roof_restarts,
         roof_steps, seed):
    """Scan the GHZ/W/noise triangle and tabulate criterion margins.

    Each CSV row carries the grid point, one margin per requested
    criterion (positive where the criterion is satisfied; the maj
    column is a 0/1 pass flag and the wootters column is the pair
    concurrence of the (2,3) marginal) and a pptes flag marking points
    whose partial transpose is positive while a full-separability
    matrix criterion is violated.
    """
    names = _parse_criteria(criteria)
    blocks = _scan_grid(res, names, roofs, roof_restarts, roof_steps, seed)
    count = _write_scan_csv(csv_path, res, names, blocks, roofs, seed)
    click.echo("wrote %d rows to %s" % (count, csv_path))
    if svg_path:
        grids = {k: np.full((res, res), np.nan) for k in names}
        flag_grid = np.zeros((res, res), dtype=int)
        for i, block in enumerate(blocks):
            for j, row in enumerate(block):
                for k, v in zip(names, row[2]):
                    grids[k][i, j] = v
                flag_grid[i, j] = row[3]
        _write_scan_svg(svg_path, res, names, grids, flag_grid)
        click.echo("wrote boundary sketch to %s" % svg_path)


@main.command()
@click.option("--in", "in_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="state JSON file")
@click.option("--mode", default="pss", show_default=True,
              help="report sections, e.g. 'bipartite+gs'; tokens: "
                   + ", ".join(MODES))
@click.option("--grade", type=click.IntRange(1, 3), default=2,
              show_default=True, help="grade for the invariants mode")
@click.option("--eps", type=float, default=EPS_CLASS, show_default=True,
              help="vanishing threshold for roof values")
@click.option("--roof-restarts", type=click.IntRange(min=1),
              default=ROOF_RESTARTS, show_default=True)
@click.option("--roof-steps", type=click.IntRange(min=1),
              default=ROOF_STEPS, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", default=None,
              type=click.Path(dir_okay=False, writable=True),
              help="write the JSON report here instead of stdout")
def classify(in_path, mode, grade, eps, roof_restarts, roof_steps, seed,
             out_path):
    """Report criteria, classes and invariants for a stored state."""
    tokens = [t.strip() for t in mode.split("+") if t.strip()]
    if not tokens:
        raise click.UsageError("empty --mode")
    for t in tokens:
        if t not in MODES:
            raise click.UsageError("unknown mode %r; tokens: %s"
                                   % (t, ", ".join(MODES)))
    state, dims, kind = _load_or_fail(in_path)
    report = {"input": in_path, "dims": list(dims), "kind": kind,
              "modes": tokens}
    for t in tokens:
        if t == "bipartite":
            report["bipartite"] = _bipartite_section(
                _as_density(state, kind), dims)
        elif t == "gs":
            report["gs"] = _gs_section(_as_density(state, kind), dims)
        elif t == "ps":
            if len(dims) != 3:
                raise click.ClickException("mode 'ps' needs three "
                                           "subsystems")
            dec = classify_ps(_as_density(state, kind), dims, eps=eps,
                              restarts=roof_restarts, steps=roof_steps,
                              seed=seed, threads=_threads())
            report["ps"] = _class_section(dec)
        elif t == "pss":
            _require_dims(dims, (2, 2, 2), "pss")
            dec = classify_pss(_as_density(state, kind), eps=eps,
                               restarts=roof_restarts, steps=roof_steps,
                               seed=seed, threads=_threads())
            report["pss"] = _class_section(dec)
        elif t == "fts":
            report["fts"] = _fts_section(state, dims, kind)
        elif t == "invariants":
            report["invariants"] = _invariant_section(state, dims, kind,
                                                      grade)
    _emit_json(report, out_path)


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 4), default=3,
              show_default=True, help="number of subsystems")
@click.option("--dump", "dump_path", default=None,
              type=click.Path(dir_okay=False, writable=True),
              help="write the lattice JSON here instead of stdout")
def lattice(n, dump_path):
    """Dump the class-label lattice (nodes and covering edges)."""
    payload = lattice_json(n)
    if dump_path:
        _emit_json(payload, dump_path)
        click.echo("%d nodes, %d edges"
                   % (len(payload["nodes"]), len(payload["edges"])))
    else:
        _emit_json(payload, None)


@main.command()
@click.option("--in", "in_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="state JSON file")
@click.option("--grade", type=click.IntRange(1, 3), default=3,
              show_default=True)
@click.option("--out", "out_path", default=None,
              type=click.Path(dir_okay=False, writable=True))
def invariants(in_path, grade, out_path):
    """List the local-unitary invariants of a stored state."""
    state, dims, kind = _load_or_fail(in_path)
    payload = {"input": in_path, "dims": list(dims), "kind": kind}
    payload.update(_invariant_section(state, dims, kind, grade))
    _emit_json(payload, out_path)


if __name__ == "__main__":
    main()
