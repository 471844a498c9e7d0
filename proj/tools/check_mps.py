#!/usr/bin/env python3
"""Solve exported MPS files with HiGHS and compare against wardmip's optimum.

usage: check_mps.py <wardmip-binary> [workdir]
"""

import os
import re
import subprocess
import sys
import tempfile

import highspy


def run(args):
    return subprocess.run(args, capture_output=True, text=True, check=False)


def wardmip_objective(binary, instance):
    result = run([binary, "solve", instance])
    if result.returncode != 0:
        raise SystemExit(f"wardmip solve failed on {instance}:\n{result.stderr}")
    match = re.search(r"^objective: (\S+)$", result.stdout, re.MULTILINE)
    return float(match.group(1))


def highs_objective(mps_path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(mps_path)
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        raise SystemExit(f"HiGHS status {h.modelStatusToString(h.getModelStatus())}")
    return h.getInfo().objective_function_value


def main():
    binary = sys.argv[1]
    workdir = sys.argv[2] if len(sys.argv) > 2 else tempfile.mkdtemp()
    cases = [("general-ward", s) for s in (0, 1)] + [("li2003", s) for s in (0, 1)]
    failed = False
    for name, seed in cases:
        instance = os.path.join(workdir, f"{name}-{seed}.json")
        mps = os.path.join(workdir, f"{name}-{seed}.mps")
        demo = run([binary, "demo", name, "--seed", str(seed), "--save-instance", instance])
        if demo.returncode != 0:
            raise SystemExit(f"demo {name} failed:\n{demo.stderr}")
        if run([binary, "export-mps", instance, mps]).returncode != 0:
            raise SystemExit(f"export-mps failed for {instance}")
        ours = wardmip_objective(binary, instance)
        theirs = highs_objective(mps)
        ok = abs(ours - theirs) <= 1e-6 * max(1.0, abs(ours))
        failed |= not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name} seed {seed}: wardmip {ours:g}, HiGHS {theirs:g}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
