"""Command-line entry point: ``python -m app <command>``.

Exit codes: 0 when every requested check passes, 1 when a check fails, 2 on
validation or other simulator errors.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Annotated, Optional

import typer

from app.analysis.bounds import bounds_for, sis_k_sequence
from app.config import settings
from app.exceptions import SimulationError
from app.oracles.transmitters import build_transmitter, read_transmitter, write_transmitter
from app.schemas.scenario import ScenarioFile, WirelineScenarioFile
from app.services.report_service import ReportService
from app.services.scenario_service import ScenarioService
from app.services.transform_service import TransformService
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2

app = typer.Typer(
    name="radio-routing",
    help="Adversarial routing simulator for radio networks.",
    no_args_is_help=True,
    add_completion=False,
)

SeedOption = Annotated[Optional[int], typer.Option("--seed", help="Override the scenario seed.")]
HorizonOption = Annotated[
    Optional[int], typer.Option("--horizon", min=0, help="Override the number of rounds.")
]


def _fail(message: str) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=EXIT_ERROR)


def _load_radio(path: Path) -> ScenarioFile:
    scenario = ScenarioService().load(path)
    if isinstance(scenario, WirelineScenarioFile):
        raise SimulationError(f"{path}: wireline scenarios are run through 'transform'")
    return scenario


def run_scenario_file(
    path: Path, out_dir: Optional[Path], seed: Optional[int], horizon: Optional[int]
) -> tuple[str, Optional[bool], str]:
    """Run one scenario file and write its artefacts; returns (name, passed, message).

    ``passed`` is None when the scenario could not be run.
    """
    try:
        scenario = _load_radio(path)
        result = ScenarioService().run(scenario, seed=seed, horizon=horizon)
    except SimulationError as e:
        return str(path), None, str(e)

    target = out_dir if out_dir is not None else Path(settings.OUTPUT_DIR) / scenario.name
    reports = ReportService(target)
    reports.write(result)
    return scenario.name, result.passed, reports.render_summary(result)


@app.command()
def run(
    scenario: Annotated[Path, typer.Argument(help="Radio scenario YAML file.")],
    out: Annotated[
        Optional[Path], typer.Option("--out", help="Output directory (default OUTPUT_DIR/<name>).")
    ] = None,
    seed: SeedOption = None,
    horizon: HorizonOption = None,
):
    """Run a scenario, write trace, metrics and verdicts, and check its expectations."""
    name, passed, message = run_scenario_file(scenario, out, seed, horizon)
    if passed is None:
        raise _fail(message)
    typer.echo(message)
    raise typer.Exit(code=EXIT_OK if passed else EXIT_FAILED)


@app.command()
def batch(
    scenarios: Annotated[list[Path], typer.Argument(help="Radio scenario YAML files.")],
    out: Annotated[
        Optional[Path], typer.Option("--out", help="Parent directory for per-scenario outputs.")
    ] = None,
    workers: Annotated[
        Optional[int], typer.Option("--workers", min=1, help="Process pool size.")
    ] = None,
    seed: SeedOption = None,
    horizon: HorizonOption = None,
):
    """Run independent scenarios in parallel, one process per run."""
    workers = workers or settings.BATCH_WORKERS
    parent = out if out is not None else Path(settings.OUTPUT_DIR)
    targets = [parent / path.stem for path in scenarios]

    logger.info(f"Running batch of {len(scenarios)} scenarios on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        outcomes = list(
            pool.map(
                run_scenario_file,
                scenarios,
                targets,
                [seed] * len(scenarios),
                [horizon] * len(scenarios),
            )
        )

    exit_code = EXIT_OK
    for name, passed, message in outcomes:
        if passed is None:
            typer.echo(f"ERROR {name}: {message}", err=True)
            exit_code = EXIT_ERROR
        else:
            typer.echo(f"{'PASS' if passed else 'FAIL'} {name}")
            if not passed and exit_code == EXIT_OK:
                exit_code = EXIT_FAILED
    raise typer.Exit(code=exit_code)


@app.command()
def transform(
    scenario: Annotated[Path, typer.Argument(help="Wireline scenario YAML file.")],
    out: Annotated[
        Optional[Path],
        typer.Option("--out", help="Directory for the radio scenario and manifest (default stdout)."),
    ] = None,
    check: Annotated[
        bool, typer.Option("--check", help="Also run both executions and compare their traces.")
    ] = False,
    horizon: HorizonOption = None,
):
    """Rewrite a wireline scenario as its equivalent radio scenario."""
    service = TransformService()
    try:
        wireline = ScenarioService().load(scenario)
        if not isinstance(wireline, WirelineScenarioFile):
            raise SimulationError(f"{scenario}: 'transform' expects a wireline scenario")
        result = service.transform(wireline)
        comparison = service.run_equivalence(wireline, horizon=horizon) if check else None
    except SimulationError as e:
        raise _fail(str(e))

    if out is None:
        typer.echo(result.to_yaml())
    else:
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{result.document['name']}.yaml").write_text(result.to_yaml(), encoding="utf-8")
        (out / "manifest.json").write_text(json.dumps(result.manifest, indent=2) + "\n", encoding="utf-8")
        typer.echo(f"Wrote {result.document['name']}.yaml and manifest.json to {out}")

    if comparison is None:
        raise typer.Exit(code=EXIT_OK)
    verdict = comparison.verdict
    if verdict.ok:
        typer.echo(
            f"Equivalent: {verdict.packets_checked} packets over {verdict.rounds_checked} rounds"
        )
        raise typer.Exit(code=EXIT_OK)
    typer.echo(f"Diverged at round {verdict.divergence[0]} on link {verdict.divergence[1]} (packet {verdict.packet})")
    raise typer.Exit(code=EXIT_FAILED)


@app.command("verify-transmitter")
def verify_transmitter_cmd(
    array_file: Annotated[Path, typer.Argument(help="Rows of 0/1 characters, one row per node.")],
):
    """Check the isolation property of a transmitter array."""
    try:
        array = read_transmitter(array_file)
    except OSError as e:
        raise _fail(f"cannot read {array_file}: {e.strerror}")
    except SimulationError as e:
        raise _fail(str(e))

    verdict = array.verify()
    typer.echo(f"{array.node_count} rows x {array.length} columns: {'PASS' if verdict.ok else 'FAIL'}")
    for row, column in sorted(verdict.witnesses.items()):
        typer.echo(f"  row {row}: isolated in column {column}")
    if not verdict.ok:
        typer.echo(f"  row {verdict.failing_row}: never transmits alone")
    raise typer.Exit(code=EXIT_OK if verdict.ok else EXIT_FAILED)


@app.command("generate-transmitter")
def generate_transmitter_cmd(
    nodes: Annotated[int, typer.Argument(min=1, help="Number of rows.")],
    out: Annotated[Path, typer.Option("--out", help="File to write the rows to.")],
    length: Annotated[Optional[int], typer.Option("--length", min=1)] = None,
    seed: Annotated[int, typer.Option("--seed")] = 0,
):
    """Build a transmitter array with the greedy randomized constructor."""
    try:
        array = build_transmitter(nodes, length=length, seed=seed)
    except SimulationError as e:
        raise _fail(str(e))
    write_transmitter(array, out)
    typer.echo(f"Wrote {array.node_count}x{array.length} transmitter to {out}")


@app.command()
def bounds(
    policy: Annotated[str, typer.Option("--policy", help="sis or lis.")],
    b: Annotated[int, typer.Option("--b", help="Burstiness.")],
    r: Annotated[str, typer.Option("--r", help="Injection rate, e.g. 1/8.")],
    h: Annotated[int, typer.Option("--h", help="Oracle latency.")],
    d: Annotated[
        int,
        typer.Option(
            "--d",
            help="Path length, used as given. Scenario runs use the longest simple path plus one, "
            "counting the absorbing queue.",
        ),
    ],
):
    """Print the closed-form queue and delay bounds as exact rationals."""
    policy = policy.upper()
    if policy not in ("SIS", "LIS"):
        raise _fail(f"unknown policy {policy!r}, expected sis or lis")
    try:
        result = bounds_for(policy, b, r, h, d)
        ks = sis_k_sequence(b, r, h, d) if policy == "SIS" else []
    except (ValueError, ZeroDivisionError) as e:
        raise _fail(str(e))

    params = result.params
    rows = [
        ("policy", policy),
        ("b, r, h, d", f"{params.b}, {params.r}, {params.h}, {params.d}"),
    ]
    rows += [(f"k_{i}", f"{k} (~{float(k):.4f})") for i, k in enumerate(ks, start=1)]
    rows += [
        ("queue bound", f"{result.queue_bound} (~{float(result.queue_bound):.4f})"),
        ("queue packets", str(result.queue_packets)),
        ("delay bound", f"{result.delay_bound} (~{float(result.delay_bound):.4f})"),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        typer.echo(f"{label.ljust(width)}  {value}")


@app.command()
def serve(
    host: Annotated[str, typer.Option("--host")] = "127.0.0.1",
    port: Annotated[int, typer.Option("--port")] = 8000,
):
    """Serve the HTTP API with uvicorn."""
    import uvicorn

    uvicorn.run("app.main:app", host=host, port=port)


def main():
    app()


if __name__ == "__main__":
    main()
