"""Operator command line: serve, simulate, evaluate, report, synth-bench.

Exit codes: 0 success, 1 data error (bad logs, missing topics, empty
inputs), 2 usage or configuration error.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import evalkit
from . import rouge as rougekit
from .engine import SYSTEM_S1, SYSTEM_S2, SystemConfig
from .errors import ArgumentError, FormatError, IngestError
from .evalkit import RecallCurve, SessionRecord
from .service import ServiceRuntime, create_app, load_service_config, load_topics
from .simharness import build_lsug, build_oracle, run_simulation
from .synthbench import make_benchmark, write_benchmark
from .textproc import TopicCorpus, load_embeddings

DATA_ERROR = 1
CONFIG_ERROR = 2


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Interactive summary-expansion toolkit."""


@main.command()
@click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=False),
    help="JSON service config (corpus root, embeddings, systems, ports).",
)
def serve(config_path: str) -> None:
    """Run the HTTP session service until interrupted."""
    try:
        config = load_service_config(config_path)
        runtime = ServiceRuntime(config)
    except (ArgumentError, IngestError, FormatError, OSError) as exc:
        _fail(CONFIG_ERROR, str(exc))
        return
    import uvicorn

    app = create_app(runtime)
    click.echo(
        f"serving {len(runtime.topics)} topics on "
        f"{config.host}:{config.port}"
    )
    uvicorn.run(app, host=config.host, port=config.port)


def _resolve_system(spec: str) -> SystemConfig:
    presets = {"s1": SYSTEM_S1, "s2": SYSTEM_S2}
    preset = presets.get(spec.lower())
    if preset is not None:
        return preset
    path = Path(spec)
    if not path.is_file():
        raise ArgumentError(
            f"--system must be s1, s2, or a JSON config file; got {spec!r}"
        )
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return SystemConfig.from_dict(data)
    except (json.JSONDecodeError, TypeError, KeyError) as exc:
        raise ArgumentError(f"bad system config {spec!r}: {exc}") from exc


@main.command()
@click.option("--corpus-root", required=True, type=click.Path(exists=False))
@click.option("--embeddings", "embeddings_path", required=True,
              type=click.Path(exists=False))
@click.option("--system", "system_spec", required=True,
              help="s1, s2, or path to a JSON system config.")
@click.option("--script", "script_kind",
              type=click.Choice(["sug", "oracle"]), required=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def simulate(
    corpus_root: str,
    embeddings_path: str,
    system_spec: str,
    script_kind: str,
    seed: int,
    out_dir: str,
) -> None:
    """Write one scripted-session log per topic."""
    try:
        system = _resolve_system(system_spec)
        corpora = load_topics(corpus_root)
        store = load_embeddings(embeddings_path)
    except (ArgumentError, IngestError, FormatError, OSError) as exc:
        _fail(CONFIG_ERROR, str(exc))
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    errors: list[str] = []
    for topic_id in sorted(corpora):
        corpus = corpora[topic_id]
        try:
            if script_kind == "sug":
                script = build_lsug(corpus, system)
            else:
                script = build_oracle(corpus, seed)
            record = run_simulation(corpus, system, script, store)
        except ArgumentError as exc:
            errors.append(f"{topic_id}: {exc}")
            continue
        path = out / f"{system.system_id}_{script_kind}_{topic_id}.json"
        evalkit.save_session_log(record, path)
        click.echo(f"wrote {path}")
    if errors:
        for line in errors:
            click.echo(f"error: {line}", err=True)
        sys.exit(DATA_ERROR)


def _series_label(record: SessionRecord) -> str:
    if record.source != "simulated":
        return "human"
    if record.user_id == "sim_sug":
        return "sug"
    if record.user_id == "sim_oracle":
        return "oracle"
    return "sim"


def _parse_las(spec: str) -> list[tuple[str, float]]:
    targets: list[tuple[str, float]] = []
    if not spec:
        return targets
    for part in spec.split(","):
        if "=" not in part:
            raise click.UsageError(f"bad --las entry {part!r}; expected name=score")
        name, raw = part.split("=", 1)
        try:
            targets.append((name.strip(), float(raw)))
        except ValueError as exc:
            raise click.UsageError(f"bad --las score in {part!r}") from exc
    return targets


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value: float | None) -> str:
    return "NA" if value is None else f"{value:.6f}"


@main.command()
@click.option("--logs-dir", required=True, type=click.Path(exists=False))
@click.option("--corpus-root", required=True, type=click.Path(exists=False))
@click.option("--variants", default="r1,r2,rl,rsu", show_default=True)
@click.option("--auc-lo", default=None, type=float)
@click.option("--auc-hi", default=None, type=float)
@click.option("--sal", default="150,250,350", show_default=True,
              help="Comma-separated word lengths for Score@Length.")
@click.option("--las", default="", help="Length@Score targets, e.g. r1=0.37,r2=0.075.")
@click.option("--bootstrap-iters", default=evalkit.DEFAULT_BOOTSTRAP_ITERS,
              show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def evaluate(
    logs_dir: str,
    corpus_root: str,
    variants: str,
    auc_lo: float | None,
    auc_hi: float | None,
    sal: str,
    las: str,
    bootstrap_iters: int,
    seed: int,
    out_dir: str,
) -> None:
    """Score session logs and emit report CSVs."""
    try:
        variant_list = [rougekit.RougeVariant.parse(v) for v in variants.split(",")]
        sal_lengths = [float(x) for x in sal.split(",")] if sal else []
    except (ArgumentError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    las_targets = _parse_las(las)
    try:
        las_targets = [
            (rougekit.RougeVariant.parse(name).kind, target)
            for name, target in las_targets
        ]
    except ArgumentError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        corpora = load_topics(corpus_root)
    except (IngestError, FormatError, OSError) as exc:
        _fail(CONFIG_ERROR, str(exc))
        return
    try:
        records = evalkit.load_session_logs(logs_dir)
    except (ArgumentError, FormatError, OSError) as exc:
        _fail(DATA_ERROR, str(exc))
        return
    if not records:
        _fail(DATA_ERROR, f"no session logs found in {logs_dir}")
    missing = sorted({r.topic_id for r in records} - set(corpora))
    if missing:
        _fail(DATA_ERROR, f"logs reference unknown topics: {', '.join(missing)}")

    def refs(topic_id: str) -> list[str]:
        return [r.text for r in corpora[topic_id].references]

    bad = sorted({r.topic_id for r in records if not refs(r.topic_id)})
    if bad:
        _fail(DATA_ERROR, f"topics lack reference summaries: {', '.join(bad)}")

    # Curves per record: recall mode drives AUC/curves, F1 drives S@L and L@S.
    recall_curves: dict[int, dict[str, RecallCurve]] = {}
    f1_curves: dict[int, dict[str, RecallCurve]] = {}
    for i, rec in enumerate(records):
        recall_curves[i] = {}
        f1_curves[i] = {}
        for variant in variant_list:
            recall_curves[i][variant.kind] = evalkit.recall_curve(
                rec, refs(rec.topic_id), variant, mode="recall"
            )
            f1_curves[i][variant.kind] = evalkit.recall_curve(
                rec, refs(rec.topic_id), variant, mode="f1"
            )

    first_kind = variant_list[0].kind
    all_recall = [recall_curves[i][first_kind] for i in range(len(records))]
    lo = auc_lo if auc_lo is not None else max(c.points[0][0] for c in all_recall)
    hi = auc_hi if auc_hi is not None else min(c.points[-1][0] for c in all_recall)
    if lo >= hi:
        _fail(
            DATA_ERROR,
            f"AUC bounds are degenerate (lo={lo:g}, hi={hi:g}); "
            "session length ranges do not intersect, pass --auc-lo/--auc-hi",
        )

    groups: dict[tuple[str, str], list[int]] = {}
    for i, rec in enumerate(records):
        groups.setdefault((rec.system_id, _series_label(rec)), []).append(i)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    auc_rows: list[list] = []
    sal_rows: list[list] = []
    las_rows: list[list] = []
    curve_rows: list[list] = []
    session_auc_first: dict[int, float] = {}
    for (system_id, series) in sorted(groups):
        idxs = groups[(system_id, series)]
        for variant in variant_list:
            kind = variant.kind
            pairs = []
            values = []
            for i in idxs:
                value = evalkit.auc(recall_curves[i][kind], lo, hi)
                pairs.append((records[i].topic_id, value))
                values.append(value)
                if kind == first_kind:
                    session_auc_first[i] = value
            point = evalkit.aggregate(pairs)
            ci_lo, ci_hi = evalkit.bootstrap_ci(
                values, iters=bootstrap_iters, seed=seed
            )
            auc_rows.append(
                [system_id, series, kind, len(values),
                 _fmt(point), _fmt(ci_lo), _fmt(ci_hi)]
            )
            for length in sal_lengths:
                spairs = [
                    (records[i].topic_id,
                     evalkit.score_at_length(f1_curves[i][kind], length))
                    for i in idxs
                ]
                svals = [v for _, v in spairs]
                s_lo, s_hi = evalkit.bootstrap_ci(
                    svals, iters=bootstrap_iters, seed=seed
                )
                sal_rows.append(
                    [system_id, series, kind, f"{length:g}", len(svals),
                     _fmt(evalkit.aggregate(spairs)), _fmt(s_lo), _fmt(s_hi)]
                )
            avg_f1 = evalkit.average_curve([f1_curves[i][kind] for i in idxs])
            for name, target in las_targets:
                if name != kind:
                    continue
                reached = evalkit.length_at_score(avg_f1, target)
                las_rows.append(
                    [system_id, series, kind, f"{target:g}",
                     "NA" if reached is None else f"{reached:.1f}"]
                )
            avg_recall = evalkit.average_curve(
                [recall_curves[i][kind] for i in idxs]
            )
            for x, y in avg_recall.points:
                curve_rows.append(
                    [system_id, series, kind, f"{x:.1f}", f"{y:.6f}"]
                )

    _write_csv(out / "auc.csv",
               ["system", "series", "variant", "n", "auc", "ci_lo", "ci_hi"],
               auc_rows)
    _write_csv(out / "sal.csv",
               ["system", "series", "variant", "length", "n", "score",
                "ci_lo", "ci_hi"],
               sal_rows)
    _write_csv(out / "las.csv",
               ["system", "series", "variant", "target", "length"],
               las_rows)
    _write_csv(out / "curves.csv",
               ["system", "series", "variant", "x", "y"],
               curve_rows)

    rating_rows: list[list] = []
    for system_id in sorted({r.system_id for r in records}):
        human = [r for r in records
                 if r.system_id == system_id and _series_label(r) == "human"]
        if not human:
            continue
        summary = evalkit.aggregate_ratings(human)
        for metric in ("r1", "r2", "r3", "r4a", "r4b", "umux_lite"):
            s = summary[metric]
            rating_rows.append(
                [system_id, metric, _fmt(s.mean), _fmt(s.std), s.n, s.missing]
            )
    _write_csv(out / "ratings.csv",
               ["system", "metric", "mean", "std", "n", "missing"],
               rating_rows)

    # Lower bounds for the usage table come from the suggested-query runs.
    lower_bound: dict[tuple[str, str], float] = {}
    sug_groups: dict[tuple[str, str], list[float]] = {}
    for i, rec in enumerate(records):
        if _series_label(rec) == "sug":
            sug_groups.setdefault((rec.system_id, rec.topic_id), []).append(
                session_auc_first[i]
            )
    for cell, vals in sug_groups.items():
        lower_bound[cell] = sum(vals) / len(vals)

    stats_rows: list[list] = []
    for system_id in sorted({r.system_id for r in records}):
        own_idx = [i for i, r in enumerate(records) if r.system_id == system_id]
        human_idx = [i for i in own_idx if _series_label(records[i]) == "human"]
        chosen_idx = human_idx if human_idx else own_idx
        human = bool(human_idx)
        chosen = [records[i] for i in chosen_idx]
        aucs = [session_auc_first.get(i) for i in chosen_idx]
        stats = evalkit.session_stats(chosen, aucs, lower_bound)
        stats_rows.append(
            [system_id, "human" if human else "all", stats.sessions,
             f"{stats.mean_interactions:.2f}",
             f"{stats.mean_explore_seconds:.1f}",
             f"{stats.query_type_pct['free_text']:.1f}",
             f"{stats.query_type_pct['highlight']:.1f}",
             f"{stats.query_type_pct['suggested']:.1f}",
             f"{stats.query_type_pct['repeat']:.1f}",
             _fmt(stats.mean_delta_auc_pct),
             stats.delta_auc_sessions]
        )
    _write_csv(out / "stats.csv",
               ["system", "scope", "sessions", "mean_interactions",
                "mean_explore_seconds", "pct_free_text", "pct_highlight",
                "pct_suggested", "pct_repeat", "mean_delta_auc_pct",
                "delta_auc_sessions"],
               stats_rows)
    click.echo(f"wrote report files to {out}")


@main.command()
@click.option("--report-dir", required=True, type=click.Path(exists=False))
def report(report_dir: str) -> None:
    """Print a plain-text summary of an evaluate() report directory."""
    root = Path(report_dir)
    if not root.is_dir():
        _fail(CONFIG_ERROR, f"not a directory: {root}")
    auc_path = root / "auc.csv"
    if not auc_path.is_file():
        _fail(CONFIG_ERROR, f"missing {auc_path}")
    with auc_path.open(encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        _fail(DATA_ERROR, "auc.csv has no rows")
    first_kind = rows[0]["variant"]
    by_series: dict[str, list[dict]] = {}
    for row in rows:
        if row["variant"] == first_kind:
            by_series.setdefault(row["series"], []).append(row)
    click.echo(f"AUC ranking ({first_kind} recall):")
    for series in sorted(by_series):
        ranked = sorted(by_series[series], key=lambda r: -float(r["auc"]))
        for rank, row in enumerate(ranked, start=1):
            click.echo(
                f"  {series:>7} #{rank} {row['system']}: "
                f"auc={float(row['auc']):.3f} "
                f"ci=[{float(row['ci_lo']):.3f}, {float(row['ci_hi']):.3f}] "
                f"n={row['n']}"
            )
    las_path = root / "las.csv"
    if las_path.is_file():
        with las_path.open(encoding="utf-8") as fh:
            las_rows = list(csv.DictReader(fh))
        misses = [r for r in las_rows if r["length"] == "NA"]
        if misses:
            click.echo("Length@Score targets never reached:")
            for row in misses:
                click.echo(
                    f"  {row['system']}/{row['series']} {row['variant']} "
                    f"target {row['target']}: N/A"
                )
        elif las_rows:
            click.echo("All Length@Score targets reached.")


@main.command("synth-bench")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--seed", default=0, show_default=True, type=int)
def synth_bench(out_dir: str, seed: int) -> None:
    """Generate the synthetic benchmark corpus tree and embeddings."""
    bench = make_benchmark(seed=seed)
    path = write_benchmark(bench, out_dir)
    click.echo(f"wrote synthetic benchmark ({len(bench.corpora)} topics) to {path}")


if __name__ == "__main__":
    main()
