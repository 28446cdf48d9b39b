#!/usr/bin/env python3
"""
Monoid Workbench Command Line

Subcommands: enumerate, check, verify, search, manifest. Results go to
standard output as JSON (one object per line); logs go to standard error.

Exit codes: 0 success / property holds / zero violations, 1 property fails or
violations found, 2 invalid input, unknown suite or unparseable expression.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, NoReturn, Optional, Tuple

import typer
from pydantic import ValidationError

from constructions import GP_KIND, class_predicate
from corpus import Corpus, EnumerationCache
from monoid_enumeration import enumerate_monoids
from points import (
    CheckResult,
    is_regular_schreier_epi,
    is_schreier_epi,
    is_schreier_gp,
    is_schreier_point,
    is_strong_gp,
)
from property_search import ExpressionError, parse_expression, search
from serialization import check_result_to_dict, dumps, load_gp, load_hom, load_point, write_monoid_stream
from verify import SUITES, UnknownSuiteError, conditions_suite_name, manifest, reports_frame, run_suite, suite_names
from workbench_config import WorkbenchConfig, load_workbench_config

logger = logging.getLogger(__name__)

app = typer.Typer(help="Finite monoid workbench: points, generalized points and Schreier checks",
                  add_completion=False)

CONFIG_OPTION = typer.Option(None, "--config", help="Alternate workbench config JSON")
LOG_LEVEL_OPTION = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR")
MAX_ORDER_OPTION = typer.Option(None, "--max-order", min=1, help="Largest monoid order in the corpus")
SEED_OPTION = typer.Option(None, "--seed", help="Seed for seeded-random sampling")
JOBS_OPTION = typer.Option(None, "--jobs", min=1, help="Worker processes")
SAMPLING_OPTION = typer.Option("exhaustive", "--sampling", help="exhaustive or seeded-random")
SAMPLE_SIZE_OPTION = typer.Option(None, "--sample-size", min=1, help="Classes sampled at the top order")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

WitnessCarriers = Callable[[Any, Dict], Dict[str, Any]]


def _regular_carriers(f, witness: Dict) -> Dict[str, Any]:
    over = f.cod if witness.get("reason") == "no-representative" else f.dom
    return {"element": over, "pair": [f.dom, f.dom], "product": f.dom}


# kind -> (loader, checker, which monoid each witness field indexes)
CHECKS: Dict[str, Tuple[Callable[[Path], Any], Callable[[Any], CheckResult], WitnessCarriers]] = {
    "point-schreier": (load_point, is_schreier_point, lambda p, _w: {"element": p.f.dom}),
    "gp-schreier": (load_gp, is_schreier_gp, lambda gp, _w: {"pair": [gp.f.dom, gp.g.dom]}),
    "gp-strong": (load_gp, is_strong_gp, lambda gp, _w: {"generated": gp.f.dom}),
    "epi-schreier": (load_hom, is_schreier_epi, lambda f, _w: {"element": f.cod}),
    "epi-regular-schreier": (load_hom, is_regular_schreier_epi, _regular_carriers),
}

_state: Dict[str, Any] = {"config": WorkbenchConfig()}


def _emit(payload: Any):
    typer.echo(dumps(payload))


def _fail(message: str, witness: Optional[Any] = None, code: int = 2) -> NoReturn:
    logger.error(f"❌ {message}")
    _emit({"error": message, "witness": witness})
    raise typer.Exit(code)


def _settings() -> WorkbenchConfig:
    return _state["config"]


def _cache_dir() -> Optional[str]:
    return _settings().corpus.cache_dir


def _cache() -> Optional[EnumerationCache]:
    cache_dir = _cache_dir()
    if not cache_dir:
        return None
    try:
        return EnumerationCache(cache_dir)
    except OSError as e:
        logger.warning(f"⚠️  Enumeration cache disabled: {e}")
        return None


def _build_corpus(max_order: int, sampling: str, seed: Optional[int], sample_size: Optional[int]) -> Corpus:
    settings = _settings().corpus
    try:
        return Corpus(
            max_order,
            sampling=sampling,
            seed=settings.seed if seed is None else seed,
            sample_size=sample_size or settings.sample_size,
            cache=_cache(),
        )
    except ValueError as e:
        _fail(str(e))


@app.callback()
def main(config: Optional[Path] = CONFIG_OPTION, log_level: Optional[str] = LOG_LEVEL_OPTION):
    """Configure logging and load settings before any subcommand"""
    level_name = (log_level or "INFO").upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO), format=LOG_FORMAT,
                        stream=sys.stderr, force=True)
    settings = load_workbench_config(config)
    if log_level is None:
        logging.getLogger().setLevel(getattr(logging, settings.logging.level.upper(), logging.INFO))
    _state["config"] = settings


@app.command("enumerate")
def cmd_enumerate(
    order: int = typer.Option(..., "--order", min=1, help="Monoid order"),
    up_to_iso: bool = typer.Option(False, "--up-to-iso", help="One monoid per isomorphism class"),
    out: Optional[Path] = typer.Option(None, "--out", help="JSON-lines output (default: enumeration cache)"),
):
    """Enumerate all monoids of one order into a JSON-lines file and print the count"""
    params = {"order": order, "up_to_iso": up_to_iso}
    try:
        path = out or EnumerationCache(_cache_dir() or "data/cache").cache_path(order, up_to_iso)
        count = write_monoid_stream(path, enumerate_monoids(order, up_to_iso=up_to_iso), params)
    except OSError as e:
        _fail(f"cannot write enumeration: {e}")
    logger.info(f"✅ Enumerated {count} monoids of order {order} into {path}")
    _emit({"order": order, "up_to_iso": up_to_iso, "count": count, "out": str(path)})


@app.command("check")
def cmd_check(
    kind: str = typer.Argument(..., help=f"One of: {', '.join(CHECKS)}"),
    input_path: Path = typer.Argument(..., help="Point, generalized point or hom JSON file"),
):
    """Run one checker on one instance file; witness indices use the identity-at-0 labeling"""
    if kind not in CHECKS:
        _fail(f"unknown check kind '{kind}'; expected one of {', '.join(CHECKS)}")
    loader, checker, carriers = CHECKS[kind]
    try:
        instance = loader(input_path)
        result = checker(instance)
    except (OSError, json.JSONDecodeError) as e:
        _fail(f"cannot read {input_path}: {e}")
    except ValidationError as e:
        _fail(f"{input_path} does not match the {kind} schema", {"errors": json.loads(e.json(include_url=False))})
    except ValueError as e:
        _fail(str(e), getattr(e, "witness", None))

    _emit(check_result_to_dict(result, carriers(instance, result.witness or {})))
    raise typer.Exit(0 if result.holds else 1)


@app.command("verify")
def cmd_verify(
    suite: str = typer.Option("all", "--suite", help="Suite name from the manifest, or 'all'"),
    max_order: Optional[int] = MAX_ORDER_OPTION,
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    class_name: Optional[str] = typer.Option(None, "--class", help="Run the closure conditions on this class"),
    kind: str = typer.Option(GP_KIND, "--kind", help="point or gp, for --class"),
    sampling: str = SAMPLING_OPTION,
    sample_size: Optional[int] = SAMPLE_SIZE_OPTION,
    max_c_order: Optional[int] = typer.Option(None, "--max-c-order", min=1, help="Cap on |C| when searching for g"),
):
    """Run verification suites; exit 0 iff no violations"""
    settings = _settings()
    if class_name is not None:
        try:
            class_predicate(class_name, kind)
        except ValueError as e:
            _fail(str(e))
        names = [conditions_suite_name(class_name, kind)]
    elif suite == "all":
        names = suite_names()
    elif suite in SUITES:
        names = [suite]
    else:
        _fail(f"unknown suite '{suite}'; known: {', '.join(suite_names())}")

    options = {
        "product_pairs": settings.suites.product_pairs,
        "equalizer_pairs": settings.suites.equalizer_pairs,
        "max_c_order": max_c_order or settings.witness_search.max_c_order,
    }
    corpora: Dict[int, Corpus] = {}
    reports = []
    for name in names:
        default = SUITES[name]["max_order"] if name in SUITES else settings.corpus.default_max_order
        order = max_order or settings.suite_max_order(name, default)
        if order not in corpora:
            corpora[order] = _build_corpus(order, sampling, seed, sample_size)
        try:
            report = run_suite(name, corpora[order], jobs or settings.parallelism.jobs, options, _cache_dir())
        except UnknownSuiteError as e:
            _fail(str(e))
        reports.append(report)
        _emit(report.to_dict())

    if len(reports) > 1:
        logger.info(f"📊 Suite summary\n{reports_frame(reports).to_string(index=False)}")
        _emit({
            "suite": "all",
            "reports": len(reports),
            "checked": sum(r.checked for r in reports),
            "violations": sum(len(r.violations) for r in reports),
            "passed": all(r.passed for r in reports),
        })
    raise typer.Exit(0 if all(r.passed for r in reports) else 1)


@app.command("search")
def cmd_search(
    expression: str = typer.Argument(..., help="Checker names joined by & | ! and parentheses"),
    max_order: Optional[int] = MAX_ORDER_OPTION,
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    sampling: str = SAMPLING_OPTION,
    sample_size: Optional[int] = SAMPLE_SIZE_OPTION,
):
    """Stream every instance satisfying the expression, then a summary line"""
    try:
        parse_expression(expression)
    except ExpressionError as e:
        _fail(str(e))
    settings = _settings()
    corpus = _build_corpus(max_order or settings.corpus.default_max_order, sampling, seed, sample_size)
    report = search(expression, corpus, jobs or settings.parallelism.jobs, on_hit=_emit, cache_dir=_cache_dir())
    _emit({
        "summary": True,
        "expression": expression,
        "domain": report.notes["domain"],
        "checked": report.checked,
        "hit_count": report.notes["hit_count"],
        "revalidation_failures": report.notes["revalidation_failures"],
    })


@app.command("manifest")
def cmd_manifest():
    """Print the suite manifest"""
    _emit(manifest())


if __name__ == "__main__":
    app()
