"""End-to-end CLI checks driven through subprocess; first argument is the binary."""

import json
import os
import subprocess
import sys
import tempfile

BIN = os.path.abspath(sys.argv[1])
PASSED = 0


def run(*args, cwd, expect=0):
    proc = subprocess.run([BIN, *args], cwd=cwd, capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"youngflow {' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def check(name, cond):
    global PASSED
    if not cond:
        raise AssertionError(f"cli check failed: {name}")
    PASSED += 1


def main():
    with tempfile.TemporaryDirectory() as tmp:
        run("fbm", "--hurst", "0.7", "--horizon", "2", "--steps-per-unit", "128",
            "--seed", "5", "--count", "2", "--out", "paths.csv", cwd=tmp)
        header = open(os.path.join(tmp, "paths.csv")).readline().strip()
        check("fbm csv header", header == "t,path_0,path_1")

        out = run("pvar", "--in", "paths.csv", "--p", "1.25", "--from", "0", "--to", "1",
                  "--json", cwd=tmp).stdout
        rep = json.loads(out)
        check("pvar fields", {"p", "value", "argmax_indices", "wall_time_ms"} <= set(rep))
        check("pvar value positive", rep["value"] > 0)
        run("pvar", "--in", "paths.csv", "--p", "1.25", "--from", "0", "--to", "1",
            "--json", "pvar.json", cwd=tmp)
        check("pvar json file", os.path.exists(os.path.join(tmp, "pvar.json")))

        out = run("young", "--x", "paths.csv", "--omega", "paths.csv", "--x-col", "0",
                  "--omega-col", "0", "--from", "0", "--to", "1", "--certify",
                  "--p", "1.6", "--q", "1.6", cwd=tmp).stdout
        check("young certificate holds", json.loads(out)["certificate"]["holds"])

        model = {"d": 2, "A": [-1.0, 0.0, 0.0, -2.0], "C": [0.05, 0.0, 0.0, 0.05],
                 "nonlinearity": "none", "h": 1.0}
        with open(os.path.join(tmp, "model.json"), "w") as f:
            json.dump(model, f)
        run("solve", "--model", "model.json", "--omega", "paths.csv", "--x0", "1,0.5",
            "--from", "0", "--to", "2", "--out", "traj.csv", cwd=tmp)
        rows = open(os.path.join(tmp, "traj.csv")).read().strip().splitlines()
        check("solve header", rows[0] == "t,x_0,x_1")
        check("solve rows", len(rows) == 2 * 128 + 2)

        out = run("stability", "--model", "model.json", "--omega", "paths.csv", "--m", "2",
                  "--p", "1.6", "--json", "stab.json", cwd=tmp).stdout
        stab = json.loads(out)
        check("stability json mirrors the report",
              {"p", "q", "m_blocks", "h0", "a_hat", "c_hat", "gamma2", "gamma4", "gamma2p2",
               "K", "g_hat", "criterion_lhs", "criterion_rhs", "verdict"} <= set(stab))
        check("stability file written", os.path.exists(os.path.join(tmp, "stab.json")))

        run("sir", "--q", "0.5", "--a", "2", "--b", "0.1", "--c", "0.1", "--gamma", "0.05",
            "--sigma1", "1e-11", "--sigma2", "1e-11", "--sigma3", "1e-11", cwd=tmp)
        for name in ("sir_original.json", "sir_transformed.json", "sir_transform.json"):
            check(f"{name} written", os.path.exists(os.path.join(tmp, name)))
        tr = json.load(open(os.path.join(tmp, "sir_transform.json")))
        check("sir reconstruction", tr["reconstruction_error"] < 1e-12)

        run("fbm", "--hurst", "0.7", "--horizon", "16", "--steps-per-unit", "64",
            "--seed", "9", "--count", "1", "--out", "long.csv", cwd=tmp)
        out = run("attractor", "--model", "sir_transformed.json", "--omega", "long.csv",
                  "--times", "1,2,5,10", "--x0-grid", "cube:2:8", "--json", "att.json",
                  cwd=tmp).stdout
        att = json.loads(out)
        check("attractor criterion ok", att["criterion_ok"])
        check("attractor distances shrink",
              att["pullback_distances"][-1]["distance"] < att["pullback_distances"][0]["distance"])

        # validation failures exit 1
        run("fbm", "--hurst", "0.7", "--count", "0", "--out", "x.csv", cwd=tmp, expect=1)
        run("fbm", "--hurst", "1.3", "--out", "x.csv", cwd=tmp, expect=1)
        run("pvar", "--in", "paths.csv", "--p", "1.25", "--from", "0", "--to", "0.4441",
            cwd=tmp, expect=1)  # off-grid endpoint

        # suite: determinism of artifacts, manifest re-run info
        cfg = {"model": "model.json",
               "fbm": {"hurst": 0.7, "horizon": 6.0, "steps_per_unit": 64},
               "ensemble": 2, "base_seed": 21,
               "analysis": {"p": 1.6666666666666667, "m": 6, "times": [1.0, 2.0, 4.0],
                            "x0_grid": "cube:1:4"},
               "out_dir": "runA"}
        with open(os.path.join(tmp, "suite.json"), "w") as f:
            json.dump(cfg, f)
        run("suite", "--config", "suite.json", cwd=tmp)
        cfg["out_dir"] = "runB"
        with open(os.path.join(tmp, "suite.json"), "w") as f:
            json.dump(cfg, f)
        run("suite", "--config", "suite.json", cwd=tmp)
        manifest_a = json.load(open(os.path.join(tmp, "runA", "manifest.json")))
        manifest_b = json.load(open(os.path.join(tmp, "runB", "manifest.json")))
        check("suite artifacts bit-identical", manifest_a["outputs"] == manifest_b["outputs"])
        check("suite manifest echoes seed", manifest_a["base_seed"] == 21)
        for name in ("paths.csv", "trajectory.csv", "stability.json", "attractor.json",
                     "manifest.json"):
            check(f"suite wrote {name}", os.path.exists(os.path.join(tmp, "runA", name)))

        # global --seed wins over the config/base seeds
        run("--seed", "99", "--out-dir", "runC", "suite", "--config", "suite.json", cwd=tmp)
        manifest_c = json.load(open(os.path.join(tmp, "runC", "manifest.json")))
        check("global seed override", manifest_c["base_seed"] == 99)
        check("override changes artifacts", manifest_c["outputs"] != manifest_a["outputs"])

        # threads env var respected; striped writes stay deterministic
        env = dict(os.environ, YOUNGFLOW_THREADS="2")
        proc = subprocess.run([BIN, "fbm", "--hurst", "0.7", "--horizon", "2",
                               "--steps-per-unit", "128", "--seed", "5", "--count", "2",
                               "--out", "paths2.csv"], cwd=tmp, env=env,
                              capture_output=True, text=True)
        check("threaded run ok", proc.returncode == 0)
        check("threaded ensemble deterministic",
              open(os.path.join(tmp, "paths.csv")).read() ==
              open(os.path.join(tmp, "paths2.csv")).read())

    print(f"cli tests passed ({PASSED} checks)")


if __name__ == "__main__":
    main()
