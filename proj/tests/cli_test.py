"""End-to-end checks of the spnkit command line tool.

usage: cli_test.py SPNKIT_BINARY TESTS_DIR [--regen]
"""
import json
import math
import os
import subprocess
import sys
import tempfile

BIN, ROOT = sys.argv[1], sys.argv[2]
REGEN = "--regen" in sys.argv[3:]
DATA = os.path.join(ROOT, "data")
GOLDEN = os.path.join(ROOT, "golden")

failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("SPNKIT_TOL", None)
    e.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def close(a, b, path="$"):
    """Structural equality with a 1e-9 tolerance on numbers; timing is ignored."""
    if isinstance(a, dict) and isinstance(b, dict):
        keys = (set(a) | set(b)) - {"timing_ms"}
        for k in sorted(keys):
            if k not in a or k not in b:
                return f"{path}.{k} missing"
            d = close(a[k], b[k], f"{path}.{k}")
            if d:
                return d
        return None
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return f"{path} length {len(a)} != {len(b)}"
        for i, (x, y) in enumerate(zip(a, b)):
            d = close(x, y, f"{path}[{i}]")
            if d:
                return d
        return None
    if isinstance(a, (int, float)) and isinstance(b, (int, float)) and not isinstance(a, bool):
        return None if math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9) else f"{path}: {a} != {b}"
    return None if a == b else f"{path}: {a!r} != {b!r}"


def data(name):
    return os.path.join(DATA, name)


# exit codes
cases = [
    ("psd member", ["test-matrix", data("psd.mtx"), "--property", "psd"], 0),
    ("f5 copositive", ["test-matrix", data("f5.mtx"), "--property", "copositive"], 0),
    ("f5 not spn", ["test-matrix", data("f5.mtx"), "--property", "spn"], 1),
    ("cd6 not spn", ["test-matrix", data("cd6.mtx"), "--property", "spn"], 1),
    ("not copositive", ["test-matrix", data("notcop.mtx"), "--property", "copositive"], 1),
    ("decompose psd", ["decompose", data("psd.mtx")], 0),
    ("classify f5", ["classify", data("f5.edg")], 1),
    ("classify c5", ["classify", data("c5.edg")], 0),
    ("classify k33e", ["classify", data("k33e.edg")], 1),
    ("witness c5", ["witness", data("c5.edg")], 65),
    ("asymmetric matrix", ["test-matrix", data("asym.mtx"), "--property", "psd"], 65),
    ("bad token", ["test-matrix", data("bad.mtx"), "--property", "psd"], 65),
    ("mixed signedness", ["classify", data("mixed.edg")], 65),
    ("duplicate edge", ["classify", data("duplicate.edg")], 65),
    ("missing file", ["classify", data("no_such_file.edg")], 66),
    ("missing property", ["test-matrix", data("psd.mtx")], 64),
    ("unknown property", ["test-matrix", data("psd.mtx"), "--property", "cp"], 64),
    ("unknown catalog name", ["catalog", "petersen"], 64),
    ("no subcommand", [], 64),
]
for name, args, code in cases:
    r = run(*args)
    check(f"exit code: {name}", r.returncode == code, f"got {r.returncode}, stderr {r.stderr.strip()}")

r = run("test-matrix", data("psd.mtx"), "--property", "psd", env={"SPNKIT_TOL": "abc"})
check("exit code: bad SPNKIT_TOL", r.returncode == 64, f"got {r.returncode}")

r = run("test-matrix", data("bad.mtx"), "--property", "psd")
check("parse error names line and column", "line 3" in r.stderr and "column" in r.stderr, r.stderr)

# JSON reports: golden comparison, then verify
reports = {
    "f5_spn": ["test-matrix", data("f5.mtx"), "--property", "spn", "--json"],
    "cd6_spn": ["test-matrix", data("cd6.mtx"), "--property", "spn", "--json"],
    "psd_decompose": ["decompose", data("psd.mtx"), "--json"],
    "f5_classify": ["classify", data("f5.edg"), "--json"],
    "c5_classify": ["classify", data("c5.edg"), "--json"],
    "k33e_witness": ["witness", data("k33e.edg"), "--json"],
    "tn5_catalog": ["catalog", "tn", "5", "--json"],
}
with tempfile.TemporaryDirectory() as tmp:
    for name, args in reports.items():
        r = run(*args)
        try:
            got = json.loads(r.stdout)
        except json.JSONDecodeError:
            check(f"json: {name}", False, r.stdout[:200])
            continue
        check(f"json envelope: {name}", got.get("tool") == "spnkit 1.0.0" and "timing_ms" in got
              and got.get("input_digest", "").startswith("fnv1a64:"))
        golden = os.path.join(GOLDEN, name + ".json")
        if REGEN:
            with open(golden, "w") as f:
                json.dump(got, f, indent=2, sort_keys=True)
                f.write("\n")
        with open(golden) as f:
            diff = close(got, json.load(f))
        check(f"golden: {name}", diff is None, diff)

        path = os.path.join(tmp, name + ".json")
        with open(path, "w") as f:
            f.write(r.stdout)
        v = run("verify", path)
        check(f"verify: {name}", v.returncode == 0, v.stdout + v.stderr)

    # Tampered reports must not verify.
    with open(os.path.join(GOLDEN, "f5_classify.json")) as f:
        rep = json.load(f)
    rep["result"]["overall"] = "SPN"
    path = os.path.join(tmp, "tampered_classify.json")
    with open(path, "w") as f:
        json.dump(rep, f)
    check("verify rejects a flipped verdict", run("verify", path).returncode == 1)

    with open(os.path.join(GOLDEN, "cd6_spn.json")) as f:
        rep = json.load(f)
    rep["result"]["certificate"]["W"][0][0] = -1.0
    path = os.path.join(tmp, "tampered_cert.json")
    with open(path, "w") as f:
        json.dump(rep, f)
    check("verify rejects a bad certificate", run("verify", path).returncode == 1)

    # --out writes graph and matrix files that parse back.
    out = os.path.join(tmp, "sub.edg")
    r = run("catalog", "f5", "--subdivide", "1", "2", "2", "--out", out)
    check("catalog --out", r.returncode == 0 and os.path.exists(out))
    r = run("classify", out)
    check("subdivided fan is NOT_SPN", r.returncode == 1, r.stdout)
    wout = os.path.join(tmp, "w.mtx")
    r = run("witness", data("f5.edg"), "--out", wout)
    check("witness --out", r.returncode == 0 and os.path.exists(wout), r.stderr)
    check("witness matrix is copositive",
          run("test-matrix", wout, "--property", "copositive").returncode == 0)
    check("witness matrix is not SPN", run("test-matrix", wout, "--property", "spn").returncode == 1)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
