#!/usr/bin/env python3
"""Regenerate every shipped data product into one directory.

Runs the validation suite first (the solver has to earn trust before its
output is worth keeping), then emits the five figure reproductions and one
full spectrum with eigenfunctions.  Every file is written through the CLI,
so rerunning this script must produce byte-identical output.
"""

import argparse
import sys

from pseudosphere.cli import main as cli


def run(argv):
    print("+ pseudosphere " + " ".join(argv))
    rc = cli(argv)
    if rc != 0:
        print(f"command failed with exit code {rc}", file=sys.stderr)
        sys.exit(rc)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reproduction", help="output directory")
    ap.add_argument("--n", type=int, default=4000, help="grid node count")
    args = ap.parse_args()

    run(["validate", "--n", str(args.n), "--out", args.out])
    for fig in ("fig2", "fig3", "fig4", "fig5", "fig6"):
        run(["reproduce", fig, "--n", str(args.n), "--out", args.out])
    run([
        "solve", "--R", "1", "--ell", "5", "--n", str(args.n), "--k", "8",
        "--out", args.out,
    ])
    run([
        "solve", "--R", "1", "--ell", "5", "--n", str(args.n), "--k", "8",
        "--format", "json", "--out", args.out,
    ])
    print(f"all outputs written to {args.out}/")


if __name__ == "__main__":
    main()
