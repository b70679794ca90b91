#!/usr/bin/env python3
"""End-to-end checks of the command-line tool: exit codes, JSON shapes,
golden values, CSV export, and byte determinism."""

import csv
import json
import math
import subprocess
import sys
import tempfile
import os

BIN = sys.argv[1] if len(sys.argv) > 1 else "lemheights"
failures = []


def run(*args, expect_code=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect_code:
        failures.append(f"{args}: exit {proc.returncode} != {expect_code}\n{proc.stderr}")
    return proc


def check(cond, label):
    if not cond:
        failures.append(label)


def strip_meta(text):
    doc = json.loads(text)
    doc.pop("meta", None)
    return json.dumps(doc, sort_keys=True)


# measure: closed form sqrt(2), quadrature agrees, resultant bound holds
out = run("measure", "-V", "z^2-2", "-r", "0.5", "-P", "z")
doc = json.loads(out.stdout)
check(abs(float(doc["heights"]["mahler"]) - math.sqrt(2)) < 1e-9, "measure mahler sqrt2")
check(abs(float(doc["heights"]["mahler_quadrature"]) - math.sqrt(2)) < 1e-7, "measure quadrature")
check(doc["bounds"]["holds"] is True, "measure bound holds")
check(doc["lemniscate"]["r"] == "0.5", "measure exact radius")

# rational radius parsing
out = run("measure", "-V", "z^2-2", "-r", "1/2", "-P", "z", "--no-quadrature", "--no-sup")
doc2 = json.loads(out.stdout)
check(doc2["lemniscate"]["r"] == "0.5", "rational radius 1/2 prints 0.5")

# the classical degree-10 minimum
out = run("measure", "-V", "z", "-r", "1", "-P", "z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1",
          "--no-sup", "--no-quadrature")
doc = json.loads(out.stdout)
check(abs(float(doc["heights"]["mahler"]) - 1.176280818) < 1e-6, "lehmer polynomial measure")

# norms: subordination chain on z+1
out = run("norms", "-V", "z", "-r", "1", "-P", "z+1")
doc = json.loads(out.stdout)
check(doc["chain_ok"] and doc["monotone_ok"], "norms chain")
check(abs(float(doc["sup"]) - 2.0) < 1e-8, "norms sup")
lp1 = [e for e in doc["lp"] if e["p"] == "1"][0]
check(abs(float(lp1["value"]) - 4 / math.pi) < 1e-6, "norms L1 = 4/pi")

# trace: CSV export, component counts, header
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "curve.csv")
    out = run("trace", "-V", "z^2-1", "-r", "0.5", "-n", "256", "-o", path)
    doc = json.loads(out.stdout)
    check(doc["components"] == 2, "trace two ovals")
    check(doc["monodromy"] == [0, 1], "trace identity monodromy")
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    check(len(rows) == 512, "trace row count")
    check(set(rows[0].keys()) == {"component_id", "theta", "re", "im"}, "trace csv header")
    by_comp = {}
    ok_theta = True
    for row in rows:
        prev = by_comp.get(row["component_id"], -1.0)
        if float(row["theta"]) <= prev:
            ok_theta = False
        by_comp[row["component_id"]] = float(row["theta"])
    check(ok_theta, "trace theta increasing per component")

out = run("trace", "-V", "z^2-1", "-r", "2", "-n", "256", "-o", "/dev/null")
doc = json.loads(out.stdout)
check(doc["components"] == 1 and sorted(doc["monodromy"]) == [0, 1] and doc["monodromy"][0] == 1,
      "trace 2-cycle monodromy")

# without -o the CSV itself goes to stdout
out = run("trace", "-V", "z", "-r", "1", "-n", "16")
check(out.stdout.splitlines()[0] == "component_id,theta,re,im", "trace stdout csv header")
check(len(out.stdout.splitlines()) == 17, "trace stdout csv rows")

# search-min: theorem box
out = run("search-min", "-V", "z^2-2", "-r", "1/2", "-k", "1", "-p", "0", "-b", "5")
doc = json.loads(out.stdout)
check(abs(float(doc["min_value"]) - 0.5) < 1e-9, "search floor")
check(doc["argmins"] == ["z^2-2"], "search argmin")
check(doc["matches_theorem"] is True, "search matches")
check(doc["uniqueness"]["matches"] is True, "search uniqueness")

# classify
out = run("classify", "-P", "z", "-V", "z^2-1", "-r", "1")
doc = json.loads(out.stdout)
check(doc["kind"] == "CyclotomicLift" and doc["cyclotomic_index"] == 2, "classify lift")
check(doc["witness"] == "z", "classify witness")

# alg-ints, both modes
out = run("alg-ints", "-V", "z^2-1", "-r", "1", "--max-index", "4")
doc = json.loads(out.stdout)
polys = {s["minimal_polynomial"] for s in doc["sets"]}
check("z^2-2" in polys and "z" in polys, "alg-ints enumerate")
out = run("alg-ints", "-V", "z^2-2", "-r", "1/2", "--max-degree", "3", "-b", "4")
doc = json.loads(out.stdout)
check(doc["hits"] == 0 and doc["scanned"] == 819, "alg-ints emptiness")

# lehmer lift and scan
out = run("lehmer", "-V", "z^2-1", "-r", "1", "-Q", "z-2")
doc = json.loads(out.stdout)
check(abs(float(doc["relative_gap"])) < 1e-8, "lehmer lift identity")
out = run("lehmer", "-V", "z^2-1", "-r", "1", "--max-degree", "4", "-b", "1")
doc = json.loads(out.stdout)
check(doc["lower_ok"] and doc["lift_ok"], "lehmer sandwich")

# error handling: exit codes and machine-readable stderr
out = run("measure", "-V", "not?poly", "-r", "1", "-P", "z", expect_code=2)
err = json.loads(out.stderr)
check(err["code"] == 2 and "message" in err, "input error json")

out = run("classify", "-P", "z^2-1", "-V", "z^2-1", "-r", "1", expect_code=3)
err = json.loads(out.stderr)
check(err["code"] == 3, "hypothesis error code")

# reducible V below the large-radius regime: strict by default, flagged opt-in
run("search-min", "-V", "z^2-1", "-r", "1/2", "-k", "1", "-p", "0", "-b", "2", expect_code=3)
out = run("search-min", "-V", "z^2-1", "-r", "1/2", "-k", "1", "-p", "0", "-b", "2",
          "--exploratory")
doc = json.loads(out.stdout)
check(doc["case"] == "exploratory" and doc["uniqueness"] is None, "exploratory scan flagged")

out = run("lehmer", "-V", "z", "-r", "1", "--max-degree", "20", "-b", "9", "--cap", "1000",
          expect_code=4)
err = json.loads(out.stderr)
check(err["code"] == 4, "resource error code")

out = run("measure", "-V", "z", "-r", "0", "-P", "z", expect_code=2)
check(json.loads(out.stderr)["code"] == 2, "radius validation")

run("bogus-subcommand", expect_code=2)

# determinism: identical invocations agree byte-for-byte modulo the timestamp
a = run("measure", "-V", "z^2-2", "-r", "0.5", "-P", "z^3-z+1")
b = run("measure", "-V", "z^2-2", "-r", "0.5", "-P", "z^3-z+1")
check(strip_meta(a.stdout) == strip_meta(b.stdout), "deterministic output")

# threads do not change scan results
a = run("search-min", "-V", "z^2-2", "-r", "1/2", "-k", "1", "-p", "2", "-b", "4")
b = run("search-min", "-V", "z^2-2", "-r", "1/2", "-k", "1", "-p", "2", "-b", "4", "--threads",
        "4")
da, db = json.loads(a.stdout), json.loads(b.stdout)
check(da["min_value"] == db["min_value"] and da["argmins"] == db["argmins"],
      "sharded scan determinism")

if failures:
    print("CLI TEST FAILURES:")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print("cli tests passed")
