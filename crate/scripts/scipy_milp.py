#!/usr/bin/env python3
"""Solve an LP file written by `ffdist emit-lp` with scipy's HiGHS MILP and
write the solution grammar read by `ffdist --engine external`.

    FFDIST_SOLVER_CMD='python3 scripts/scipy_milp.py {input} {output}'

Only the subset of the LP format that ffdist emits is understood.
"""

import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_matrix

TERM = re.compile(r"([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_terms(text, index, names):
    terms = []
    for sign, coef, name in TERM.findall(text):
        c = float(coef) if coef else 1.0
        if sign == "-":
            c = -c
        if name not in index:
            index[name] = len(names)
            names.append(name)
        terms.append((index[name], c))
    return terms


def read_lp(path):
    section = None
    objective, rows = "", []
    pending = ""
    bounds, integers, binaries = {}, set(), set()
    for raw in open(path):
        line = raw.split("\\", 1)[0].strip()
        if not line:
            continue
        word = line.lower()
        if word in ("minimize", "subject to", "bounds", "binaries", "generals", "end"):
            section = word
            continue
        if section == "minimize":
            objective += " " + line.split(":", 1)[-1]
        elif section == "subject to":
            if ":" in line:
                if pending:
                    rows.append(pending)
                pending = line.split(":", 1)[1]
            else:
                pending += " " + line
        elif section == "bounds":
            lo, _, name, _, hi = line.split()
            bounds[name] = (float(lo), float(hi))
        elif section == "binaries":
            binaries.update(line.split())
        elif section == "generals":
            integers.update(line.split())
    if pending:
        rows.append(pending)
    return objective, rows, bounds, integers, binaries


def main(inp, out):
    objective, rows, bounds, integers, binaries = read_lp(inp)
    index, names = {}, []
    obj_terms = parse_terms(objective, index, names)
    parsed = []
    for row in rows:
        m = re.match(r"(.*?)(<=|>=|=)\s*(-?[\d.]+)\s*$", row)
        lhs, sense, rhs = m.group(1), m.group(2), float(m.group(3))
        parsed.append((parse_terms(lhs, index, names), sense, rhs))
    for name in list(bounds) + sorted(integers | binaries):
        if name not in index:
            index[name] = len(names)
            names.append(name)
    n = len(names)
    c = np.zeros(n)
    for v, a in obj_terms:
        c[v] += a
    A = lil_matrix((len(parsed), n))
    lo = np.full(len(parsed), -np.inf)
    hi = np.full(len(parsed), np.inf)
    for r, (terms, sense, rhs) in enumerate(parsed):
        for v, a in terms:
            A[r, v] += a
        if sense in ("<=", "="):
            hi[r] = rhs
        if sense in (">=", "="):
            lo[r] = rhs
    lb, ub = np.zeros(n), np.full(n, np.inf)
    for name, (l, u) in bounds.items():
        lb[index[name]], ub[index[name]] = l, u
    for name in binaries:
        lb[index[name]], ub[index[name]] = 0, 1
    res = milp(
        c,
        constraints=LinearConstraint(A.tocsr(), lo, hi),
        integrality=np.ones(n),
        bounds=Bounds(lb, ub),
    )
    with open(out, "w") as f:
        if res.x is None:
            f.write("# status infeasible\n" if res.status == 2 else "# status error\n")
            return 0
        f.write("# status optimal\n" if res.status == 0 else "# status feasible\n")
        for name, v in zip(names, res.x):
            v = round(v)
            if v != 0:
                f.write(f"{name} {v}\n")
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: scipy_milp.py INPUT.lp OUTPUT.sol")
    sys.exit(main(sys.argv[1], sys.argv[2]))
