"""Time the hot kernels on the numba path and the plain numpy path.

Run ``python benchmarks/bench_kernels.py``; each backend is measured in a fresh
interpreter because the switch is read at import time.
"""
import json
import os
import subprocess
import sys

CHILD = r"""
import json, time
import molsldpc as m
from molsldpc._accel import backend_name
from molsldpc.sim import SimConfig, run_simulation

h = m.code(13, [1, 2])
out = {"backend": backend_name()}
cfg = SimConfig((0.075, 0.1), TRIALS, seed=1)
run_simulation(h, SimConfig((0.1,), 10, seed=1))  # compile
t = time.perf_counter()
res = run_simulation(h, cfg)
out["simulate_s"] = time.perf_counter() - t
out["simulate_failures"] = [r.word_failures for r in res.per_eps]
m.enumerate_stopping_sets(m.code(5, [1]), 4)  # compile
t = time.perf_counter()
rep = m.enumerate_stopping_sets(h, CAP, symmetry="orbit")
out["enumerate_s"] = time.perf_counter() - t
out["enumerate_hist"] = rep.histogram[CAP]
print(json.dumps(out))
"""


def run(disable_jit: bool, trials: int, cap: int) -> dict:
    env = dict(os.environ, MOLS_DISABLE_JIT="1" if disable_jit else "0")
    code = CHILD.replace("TRIALS", str(trials)).replace("CAP", str(cap))
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
    cap = int(sys.argv[2]) if len(sys.argv) > 2 else 8
    fast = run(False, trials, cap)
    slow = run(True, trials, cap)
    print(f"{'kernel':<12}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for key in ("simulate_s", "enumerate_s"):
        print(f"{key[:-2]:<12}{fast[key]:>12.3f}{slow[key]:>12.3f}{slow[key] / fast[key]:>10.1f}")
    same = (fast["simulate_failures"] == slow["simulate_failures"]
            and fast["enumerate_hist"] == slow["enumerate_hist"])
    print("results identical:", same)


if __name__ == "__main__":
    main()
