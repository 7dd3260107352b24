#!/usr/bin/env python3
"""Independent cross-check of mdr and total Tjurina numbers.

Uses only sympy: polynomial expansion through sympy.Poly and exact ranks of
rational matrices through DomainMatrix over QQ. No code is shared with the
Rust implementation.

    mdr(f)  = min r >= 1 such that a*f_x + b*f_y + c*f_z = 0 has a nonzero
              solution with a, b, c homogeneous of degree r;
    tau(f)  = stable value of dim (S / J_f)_t for large t, where J_f is the
              Jacobian ideal.

Usage: python3 tools/oracle_check.py > crates/core/tests/data/oracle_transcript.txt
"""

import sys
import time

import sympy
from sympy import Poly, QQ, symbols
from sympy.polys.matrices import DomainMatrix

x, y, z = symbols("x y z")


def monomials(t):
    return [(a, b, t - a - b) for a in range(t, -1, -1) for b in range(t - a, -1, -1)]


def jacobian_image_rank(partials, t):
    """Rank of the degree-t part of (f_x, f_y, f_z) as a vector space."""
    m1 = partials[0].total_degree()
    r = t - m1
    if r < 0:
        return 0
    rows = {mono: i for i, mono in enumerate(monomials(t))}
    cols = []
    for g in partials:
        for (a, b, c) in monomials(r):
            prod = Poly(x**a * y**b * z**c, x, y, z) * g
            col = {}
            for mono, coeff in prod.terms():
                col[rows[mono]] = QQ.from_sympy(coeff)
            cols.append(col)
    dense = [[QQ(0)] * len(cols) for _ in rows]
    for j, col in enumerate(cols):
        for i, v in col.items():
            dense[i][j] = v
    return DomainMatrix(dense, (len(rows), len(cols)), QQ).rank()


def syzygy_kernel_dim(partials, r):
    m1 = partials[0].total_degree()
    t = r + m1
    n_cols = 3 * len(monomials(r))
    return n_cols - jacobian_image_rank(partials, t)


def mdr(partials, cap):
    for r in range(1, cap + 1):
        if syzygy_kernel_dim(partials, r) > 0:
            return r
    return None


def tau(partials, m):
    start = 3 * (m - 2)
    values = []
    t = start
    while t <= 5 * m:
        dim = len(monomials(t)) - jacobian_image_rank(partials, t)
        values.append((t, dim))
        if len(values) >= 3 and values[-1][1] == values[-2][1] == values[-3][1]:
            return dim, values
        t += 1
    return None, values


def main():
    fermat = x**3 + y**3 + z**3
    examples = {
        "EL6": fermat * (x**3 + y**3),
        "EL7": fermat * (x**3 + y**3) * (y + z),
        "CPPP": fermat * (x**3 + y**3) * (y**3 + z**3) * (x**3 + z**3),
    }
    print(f"# sympy {sympy.__version__}, python {sys.version.split()[0]}")
    for name, expr in examples.items():
        start = time.time()
        f = Poly(sympy.expand(expr), x, y, z)
        m = f.total_degree()
        partials = [f.diff(v) for v in (x, y, z)]
        d1 = mdr(partials, m)
        t, values = tau(partials, m)
        trace = " ".join(f"{tt}:{v}" for tt, v in values)
        print(f"{name} m={m} mdr={d1} tau={t} hilbert=[{trace}]")
        print(f"# {name} took {time.time() - start:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
