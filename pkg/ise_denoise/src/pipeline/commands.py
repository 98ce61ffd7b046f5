"""The work behind each subcommand.

Every function takes plain arguments, writes its output files and returns a
summary dict for the CLI to print.
"""

from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from ise_denoise.src.calibrate import (
    apply_calibration,
    fit_from_traces,
    fit_quadratic,
    merge_calibration,
    predict_quadratic,
    read_calibration,
    write_calibration,
)
from ise_denoise.src.chem import CANONICAL_ORDER
from ise_denoise.src.errors import DomainError
from ise_denoise.src.metrics import (
    MetricsReport,
    box_csv,
    comparison_table,
    evaluate,
    histogram_csv,
    per_sample_mape,
    per_sample_mse,
    read_report,
    report_from_values,
    summarize_distribution,
    write_report,
)
from ise_denoise.src.neuralnet import (
    Dataset,
    initialize_model,
    load,
    parse_architecture,
    predict,
    save,
    train,
)
from ise_denoise.src.pipeline.config import PipelineConfig, render_config
from ise_denoise.src.pipeline.dataset import SplitSpec, build_dataset, split
from ise_denoise.src.pipeline.io import (
    ingest_trace,
    read_dataset,
    read_voltage_table,
    resolve_paths,
    write_dataset,
    write_predictions,
    write_trace,
)
from ise_denoise.src.sim import ExperimentKind, run_experiment_protocol
from ise_denoise.src.tables import write_table
from ise_denoise.utils.pylogger import get_python_logger

logger = get_python_logger()

ALL_IONS = "all"


def _stem_path(report: Path, suffix: str) -> Path:
    return report.with_name(f"{report.stem}_{suffix}")


def summarize_methods(reports: Mapping[str, MetricsReport]) -> Dict[str, Dict[str, float]]:
    return {
        name: {"mse": r.mse, "r2": r.r_squared, "mape_percent": r.mape_percent}
        for name, r in reports.items()
    }


def simulate_command(config: PipelineConfig, out_dir: Path) -> Dict[str, Any]:
    """Mixture repeats and single-solvent series for every ion."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[str] = []
    for r, trace in enumerate(run_experiment_protocol(ExperimentKind.MIXTURE, config.sim)):
        path = out_dir / f"mixture_r{r:02d}.csv"
        write_trace(path, trace)
        written.append(path.name)
    for ion in CANONICAL_ORDER:
        traces = run_experiment_protocol(ExperimentKind.SINGLE_SOLVENT, config.sim, ion=ion)
        for r, trace in enumerate(traces):
            path = out_dir / f"single_{ion}_r{r:02d}.csv"
            write_trace(path, trace)
            written.append(path.name)
    (out_dir / "config.txt").write_text(render_config(config), encoding="utf-8")
    logger.info("Traces written", directory=str(out_dir), files=len(written))
    return {"status": "success", "out": str(out_dir), "traces": len(written)}


def calibrate_command(
    config: PipelineConfig, traces_glob: str, ion: str, out: Path
) -> Dict[str, Any]:
    """Fit one ion (or every channel with ``all``) and merge into ``out`` if it exists."""
    traces = [ingest_trace(path) for path in resolve_paths(traces_glob)]
    ions = list(traces[0].channels) if ion == ALL_IONS else [ion]
    fits = {}
    for name in ions:
        fit = fit_from_traces(traces, name, config.calib.floor, config.calib.stable_only)
        fits[name] = fit
        logger.info(
            "Calibration fitted",
            ion=name,
            a=fit.a,
            b=fit.b,
            r_squared=fit.r_squared,
            n_points=fit.n_points,
        )
    if out.exists():
        fits = merge_calibration(read_calibration(out), fits)
    write_calibration(out, fits)
    return {
        "status": "success",
        "out": str(out),
        "fits": [
            {"ion": name, "a": fit.a, "b": fit.b, "r_squared": fit.r_squared}
            for name, fit in fits.items()
        ],
    }


def dataset_command(
    traces_glob: str,
    floor: float,
    spec: SplitSpec,
    out_train: Path,
    out_test: Path,
    stable_only: bool = False,
    window: int = 1,
) -> Dict[str, Any]:
    traces = [ingest_trace(path) for path in resolve_paths(traces_glob)]
    dataset = build_dataset(traces, floor, stable_only, window)
    train_set, test_set = split(dataset, spec)
    write_dataset(out_train, train_set)
    write_dataset(out_test, test_set)
    return {
        "status": "success",
        "rows": len(dataset),
        "train_rows": len(train_set),
        "test_rows": len(test_set),
    }


def write_history(path: Path, history) -> None:
    frame = pd.DataFrame(
        {
            "epoch": pd.Series([r.epoch for r in history], dtype="int64"),
            "train_mape": pd.Series([r.train_mape for r in history], dtype="float64"),
            "test_mape": pd.Series([r.test_mape for r in history], dtype="float64"),
            "lr": pd.Series([r.lr for r in history], dtype="float64"),
        }
    )
    write_table(frame, path)


def train_command(
    config: PipelineConfig,
    train_path: Path,
    test_path: Path,
    out: Path,
    arch: Optional[str] = None,
) -> Dict[str, Any]:
    """Train a model; the per-epoch history goes next to it as ``<out>.history.csv``."""
    train_config = config.train
    if arch is not None:
        parse_architecture(arch)
        train_config = train_config.model_copy(update={"arch": arch})
    train_set = read_dataset(train_path)
    test_set = read_dataset(test_path)
    model = initialize_model(train_config, train_set.inputs.shape[1])
    result = train(model, train_set, test_set, train_config)
    save(result.model, out)
    write_history(out.with_name(out.name + ".history.csv"), result.history)
    logger.info("Model written", path=str(out), arch=train_config.arch)
    return {
        "status": "success",
        "out": str(out),
        "arch": " ".join(str(w) for w in result.model.architecture),
        "epochs": len(result.history),
        "best_epoch": result.best_epoch,
        "best_test_mape": result.best_test_mape,
    }


def infer_command(model_path: Path, in_path: Path, out: Path) -> Dict[str, Any]:
    model = load(model_path)
    inputs, _, window = read_voltage_table(in_path)
    if inputs.shape[1] != model.input_dim:
        raise DomainError(
            f"model expects {model.input_dim} inputs, {in_path} has {inputs.shape[1]} (window {window})"
        )
    predictions = predict(model, inputs) if len(inputs) else np.zeros((0, model.output_dim))
    write_predictions(out, predictions)
    return {"status": "success", "out": str(out), "rows": int(predictions.shape[0])}


def _score(
    name: str,
    test_set: Dataset,
    predictions: np.ndarray,
    report_path: Path,
    config: PipelineConfig,
    box_rows: Dict[str, Any],
) -> MetricsReport:
    report = evaluate(test_set.targets, predictions, test_set.floor)
    errors = per_sample_mape(test_set.targets, predictions, test_set.floor)
    distribution = summarize_distribution(
        errors, config.eval.bins, config.eval.tail_threshold
    )
    write_report(report_path, report, distribution)
    box_rows[f"{name}_mape"] = distribution
    box_rows[f"{name}_mse"] = summarize_distribution(
        per_sample_mse(test_set.targets, predictions), config.eval.bins
    )
    logger.info(
        "Method evaluated",
        method=name,
        mse=report.mse,
        r2=report.r_squared,
        mape_percent=report.mape_percent,
    )
    return report


def eval_command(
    config: PipelineConfig,
    model_path: Path,
    test_path: Path,
    baselines: Optional[Path],
    report_path: Path,
    train_path: Optional[Path] = None,
) -> Dict[str, Any]:
    """Score the network and the baselines on one test set.

    Writes ``report_path`` for the network, ``<stem>_ten_point.txt`` and
    ``<stem>_quadratic.txt`` for the baselines that were requested, the
    network's per-sample MAPE histogram ``<stem>_hist.csv``, the five-number
    summaries ``<stem>_box.csv`` and ``<stem>_comparison.csv``.
    """
    model = load(model_path)
    test_set = read_dataset(test_path)
    box_rows: Dict[str, Any] = {}
    reports: Dict[str, MetricsReport] = {}

    network = predict(model, test_set.inputs)
    reports["network"] = _score("network", test_set, network, report_path, config, box_rows)
    histogram = box_rows["network_mape"]

    if baselines is not None:
        fits = read_calibration(baselines)
        estimates = apply_calibration(fits, test_set.voltages, test_set.channels)
        reports["ten_point"] = _score(
            "ten_point",
            test_set,
            estimates,
            _stem_path(report_path, "ten_point.txt"),
            config,
            box_rows,
        )
    if train_path is not None:
        quadratic = fit_quadratic(read_dataset(train_path), config.calib.ridge)
        logger.info(
            "Quadratic baseline fitted",
            features="multivariate degree-2 reconstruction",
            monomials=quadratic.coefficients.shape[1],
        )
        reports["quadratic"] = _score(
            "quadratic",
            test_set,
            predict_quadratic(quadratic, test_set.voltages),
            _stem_path(report_path, "quadratic.txt"),
            config,
            box_rows,
        )

    _stem_path(report_path, "hist.csv").write_text(histogram_csv(histogram), encoding="utf-8")
    _stem_path(report_path, "box.csv").write_text(box_csv(box_rows), encoding="utf-8")
    _stem_path(report_path, "comparison.csv").write_text(
        comparison_table(reports).to_csv(), encoding="utf-8"
    )
    return {
        "status": "success",
        "report": str(report_path),
        "methods": summarize_methods(reports),
    }


def text_table_path(out: Path) -> Path:
    text = out.with_suffix(".txt")
    return text if text != out else out.with_name(out.name + ".txt")


def report_command(inputs: Sequence[Path], out: Path) -> Dict[str, Any]:
    """Comparison table over report files, one row per file named by its stem."""
    reports: Dict[str, MetricsReport] = {}
    for path in inputs:
        if path.stem in reports:
            raise DomainError(f"two reports share the method name {path.stem!r}")
        reports[path.stem] = report_from_values(read_report(path))
    table = comparison_table(reports)
    out.write_text(table.to_csv(), encoding="utf-8")
    text_table_path(out).write_text(table.to_text(), encoding="utf-8")
    return {"status": "success", "out": str(out), "methods": list(reports)}


def reproduce_command(config: PipelineConfig, out_dir: Path) -> Dict[str, Any]:
    """Simulate, calibrate, split, train, evaluate and tabulate in ``out_dir``.

    Every architecture in ``config.architectures()`` is trained and scored; the
    baselines are fitted next to ``train.arch`` only.
    """
    architectures = config.architectures()
    traces_dir = out_dir / "traces"
    simulate_command(config, traces_dir)
    calibration = out_dir / "calibration.csv"
    if calibration.exists():
        calibration.unlink()
    calibrate_command(config, str(traces_dir / "single_*.csv"), ALL_IONS, calibration)

    train_path = out_dir / "train.csv"
    test_path = out_dir / "test.csv"
    dataset_command(
        str(traces_dir / "mixture_*.csv"),
        config.calib.floor,
        SplitSpec(test_fraction=config.train.test_fraction, seed=config.train.split_seed),
        train_path,
        test_path,
        config.train.stable_only,
        config.train.window,
    )

    summaries: Dict[str, Any] = {}
    report_files: List[Path] = []
    for arch in architectures:
        model_path = out_dir / f"{arch.replace(',', '-')}.model"
        train_command(config, train_path, test_path, model_path, arch)
        report_path = out_dir / f"{arch.replace(',', '-')}.txt"
        summaries[arch] = eval_command(
            config,
            model_path,
            test_path,
            calibration if arch == config.train.arch else None,
            report_path,
            train_path if arch == config.train.arch else None,
        )["methods"]
        report_files.append(report_path)

    primary = out_dir / f"{config.train.arch.replace(',', '-')}.txt"
    report_files.extend(
        _stem_path(primary, suffix)
        for suffix in ("ten_point.txt", "quadratic.txt")
    )
    table = report_command(report_files, out_dir / "comparison.csv")
    (out_dir / "config.txt").write_text(render_config(config), encoding="utf-8")
    return {"status": "success", "out": str(out_dir), "table": table["out"], "methods": summaries}
