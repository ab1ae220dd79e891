"""Run every spectral sequence and write page JSON, SVG charts and a summary.

    python3 scripts/run_spectral_sequences.py [--out results/]
"""

import argparse
import json
import os

from dualsteenrod.chart import render_svg, render_text, write_atomic
from dualsteenrod.quotient import split_dims
from dualsteenrod.sseq import (
    HIDDEN_EXTENSIONS,
    RANK2_END,
    RANK3_END,
    SpectralSequenceError,
    adams_run,
    pages_to_json,
    reconcile_with_abutment,
)


def save(pages, directory):
    os.makedirs(directory, exist_ok=True)
    for page, obj in zip(pages, pages_to_json(pages)):
        base = os.path.join(directory, f"E{obj['r']}")
        write_atomic(base + ".json", json.dumps(obj, separators=(",", ":")) + "\n")
        write_atomic(base + ".svg", render_svg(obj, boundary=page.stems[1]))


def quotient_runs(out):
    for k, m in [(1, 1), (2, 2), (2, 3), (3, 3)]:
        pages = adams_run(k, m)
        save(pages, os.path.join(out, f"quotient_{k}_{m}"))
        try:
            deficit = reconcile_with_abutment(pages[-1], split_dims(k, m, 0))
        except SpectralSequenceError as exc:
            deficit = f"error: {exc}"
        summary = "reconciled" if deficit == [] else f"deficits {deficit[:6]}{' ...' if len(deficit) > 6 else ''}"
        print(f"({k},{m}) pages {[p.r for p in pages]}: {summary}")


def endomorphism_runs(out):
    for run in (RANK2_END, RANK3_END):
        pages = run.run()
        save(pages, os.path.join(out, run.name))
        final = pages[-1]
        residual = run.duality(final)
        print(f"{run.name}: E{final.r} has {final.total_dim()} classes in stems {run.stems}; "
              f"duality shift {run.shift} residual {residual}")
        if run is RANK2_END:
            print(render_text(final))
        ext = HIDDEN_EXTENSIONS[run.name]
        print(f"  {len(ext['extensions'])} hidden extensions recorded ({ext['note']})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    quotient_runs(args.out)
    endomorphism_runs(args.out)


if __name__ == "__main__":
    main()
