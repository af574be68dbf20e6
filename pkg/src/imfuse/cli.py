"""Command-line harness: degrade, fuse, evaluate, and run the full experiment."""

from __future__ import annotations

import csv
import io
import logging
from pathlib import Path

import click
import numpy as np

from . import pyramid, raster
from .fusion import DetailRule, FusionConfig, Method, fuse
from .metrics import MetricsReport

log = logging.getLogger(__name__)

CSV_HEADER = ["image", "variant", "mse", "nae", "psnr"]


def _odd(ctx, param, value):
    if value < 1 or value % 2 == 0:
        raise click.BadParameter(f"must be an odd positive integer, got {value}")
    return value


def _load(path) -> np.ndarray:
    try:
        return raster.read_pgm(path)
    except (OSError, raster.PGMError) as exc:
        raise click.ClickException(f"cannot read {path}: {exc}") from exc


def _save(path, img) -> None:
    try:
        raster.write_pgm(path, img)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}") from exc


def _check_pair(a, b, pa, pb) -> None:
    if a.shape != b.shape:
        raise click.ClickException(
            f"images must have the same size: {pa} is {a.shape[0]}x{a.shape[1]}, "
            f"{pb} is {b.shape[0]}x{b.shape[1]}"
        )


def _quantized(img) -> np.ndarray:
    return raster.quantize(img).astype(np.float64)


def degrade_pair(img, k: int, uniform: bool = False):
    """Two degraded copies of one scene.

    By default copy 1 has its left half blurred and copy 2 its right half,
    so each copy keeps sharp detail the other lost. With ``uniform`` both
    copies get the full-frame blur.
    """
    blurred = raster.box_blur(img, k)
    if uniform:
        return blurred, blurred.copy()
    half = img.shape[1] // 2
    c1, c2 = img.copy(), img.copy()
    c1[:, :half] = blurred[:, :half]
    c2[:, half:] = blurred[:, half:]
    return c1, c2


def _config(method, levels, rule) -> FusionConfig:
    return FusionConfig(
        method=Method(method), n_levels=levels, detail_rule=DetailRule(rule) if rule else None
    )


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose):
    """Grayscale image fusion by Laplacian pyramid and Haar wavelet."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING)


@cli.command()
@click.option("--k", "k", type=int, default=5, show_default=True, callback=_odd,
              help="Averaging filter size (odd).")
@click.argument("input", type=click.Path(dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
def degrade(k, input, output):
    """Blur INPUT with an equal-weight k x k averaging filter."""
    _save(output, raster.box_blur(_load(input), k))


@cli.command("fuse")
@click.option("--method", type=click.Choice([m.value for m in Method]), default="laplacian",
              show_default=True)
@click.option("--levels", type=click.IntRange(min=1), default=4, show_default=True,
              help="Pyramid depth (ignored by the single-level wavelet method).")
@click.option("--rule", type=click.Choice([r.value for r in DetailRule]), default=None,
              help="Detail merge rule. Default: maxabs for laplacian, average for wavelet.")
@click.argument("input1", type=click.Path(dir_okay=False))
@click.argument("input2", type=click.Path(dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
def fuse_cmd(method, levels, rule, input1, input2, output):
    """Fuse INPUT1 and INPUT2 into OUTPUT."""
    im1, im2 = _load(input1), _load(input2)
    _check_pair(im1, im2, input1, input2)
    cfg = _config(method, levels, rule)
    try:
        fused = fuse(im1, im2, cfg)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"method={cfg.method.value} levels={cfg.n_levels} rule={cfg.rule.value}")
    _save(output, fused)


@cli.command()
@click.argument("reference", type=click.Path(dir_okay=False))
@click.argument("test", type=click.Path(dir_okay=False))
def evaluate(reference, test):
    """Print ref,test,mse,nae,psnr for TEST scored against REFERENCE."""
    ref, img = _load(reference), _load(test)
    _check_pair(ref, img, reference, test)
    try:
        report = MetricsReport.compute(ref, img)
    except ZeroDivisionError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(",".join([reference, test, *report.csv_fields()]))


def run_experiment(
    sources,
    out_dir,
    k: int = 5,
    levels: int = 4,
    rule=None,
    uniform: bool = False,
    score_quantized: bool = True,
):
    """Degrade each source, fuse the degraded pair both ways, and score.

    Returns the CSV rows (without header). Every intermediate image is
    written to ``out_dir``; ``results.csv`` is written last.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prep = _quantized if score_quantized else (lambda x: x)
    rows = []
    loaded = []
    for src_path in sources:
        src_path = Path(src_path)
        name = src_path.stem
        src = _load(src_path)
        loaded.append((name, src))
        c1, c2 = (prep(c) for c in degrade_pair(src, k, uniform))
        _save(out_dir / f"{name}_degraded1.pgm", c1)
        _save(out_dir / f"{name}_degraded2.pgm", c2)
        results = [("input", c1)]
        for method in (Method.WAVELET, Method.LAPLACIAN):
            cfg = _config(method.value, levels, rule)
            fused = fuse(c1, c2, cfg)
            _save(out_dir / f"{name}_{method.value}.pgm", fused)
            results.append((method.value, prep(fused)))
        for variant, img in results:
            report = MetricsReport.compute(src, img)
            log.info("%s %s %s", name, variant, report)
            rows.append([name, variant, *report.csv_fields()])

    # Cross-scene composites (no pristine reference, so not scored).
    if len(loaded) == 2 and loaded[0][1].shape == loaded[1][1].shape:
        (_, a), (_, b) = loaded
        for method in (Method.WAVELET, Method.LAPLACIAN):
            _save(out_dir / f"cross_{method.value}.pgm", fuse(a, b, _config(method.value, levels, rule)))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    (out_dir / "results.csv").write_bytes(buf.getvalue().encode("utf-8"))
    return rows


@cli.command()
@click.option("--k", "k", type=int, default=5, show_default=True, callback=_odd,
              help="Averaging filter size (odd).")
@click.option("--levels", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--rule", type=click.Choice([r.value for r in DetailRule]), default=None,
              help="Override the detail rule for both methods.")
@click.option("--uniform", is_flag=True,
              help="Blur both copies over the full frame instead of complementary halves.")
@click.option("--score-unquantized", is_flag=True,
              help="Score real-valued results instead of the saved 8-bit images.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.argument("src1", type=click.Path(dir_okay=False))
@click.argument("src2", type=click.Path(dir_okay=False))
def experiment(k, levels, rule, uniform, score_unquantized, out_dir, src1, src2):
    """Reproduce the degrade/fuse/score tables for SRC1 and SRC2."""
    try:
        rows = run_experiment(
            [src1, src2], out_dir, k=k, levels=levels, rule=rule,
            uniform=uniform, score_quantized=not score_unquantized,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(",".join(CSV_HEADER))
    for row in rows:
        click.echo(",".join(row))


@cli.command("dump-pyramid")
@click.option("--levels", type=click.IntRange(min=1), default=4, show_default=True)
@click.argument("input", type=click.Path(dir_okay=False))
@click.argument("out_dir", type=click.Path(file_okay=False))
def dump_pyramid(levels, input, out_dir):
    """Write Laplacian bands (offset by +128) and the base as PGMs, for viewing."""
    img = _load(input)
    try:
        pyr = pyramid.laplacian_pyramid(img, levels)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, band in enumerate(pyr.bands):
        _save(out / f"band{i}.pgm", band + 128.0)
    _save(out / f"base{pyr.depth}.pgm", pyr.base)


def main():
    cli(prog_name="imfuse")


if __name__ == "__main__":
    main()
