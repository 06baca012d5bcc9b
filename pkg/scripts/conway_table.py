"""Regenerate the baked Conway polynomial table by direct search.

The Conway polynomial C_{p,n} is the least primitive monic polynomial of degree
n, in the ordering of (c_1, ..., c_n) where the polynomial is written
x^n - c_1 x^{n-1} + c_2 x^{n-2} - ..., subject to compatibility: for every
m | n, a root raised to (p^n-1)/(p^m-1) is a root of C_{p,m}.
"""

import sys
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ramcft.algebra.ff import FiniteField, is_primitive_modulus  # noqa: E402

PRIMES = [2, 3, 5, 7, 11, 13, 17]


def conway(p, n, table):
    for cs in product(range(p), repeat=n):
        mod = [0] * n + [1]
        for j, c in enumerate(cs, start=1):
            mod[n - j] = (-1) ** j * c % p
        mod = tuple(mod)
        if not is_primitive_modulus(p, mod):
            continue
        F = FiniteField(p, n, mod, tables=False)
        ok = True
        for m in range(1, n):
            if n % m:
                continue
            beta = F.pow(F.gen_code, (p ** n - 1) // (p ** m - 1))
            if F._eval_prime_poly(table[(p, m)], beta) != 0:
                ok = False
                break
        if ok:
            return mod
    raise RuntimeError((p, n))


def main():
    table = {}
    for p in PRIMES:
        for n in range(1, 5):
            table[(p, n)] = conway(p, n, table)
    out = Path(__file__).resolve().parents[1] / "src/ramcft/algebra/conway.py"
    lines = ['"""Conway polynomials, coefficients low to high (generated by scripts/conway_table.py)."""', "", "CONWAY = {"]
    for key, mod in table.items():
        lines.append(f"    {key}: {mod},")
    lines.append("}")
    out.write_text("\n".join(lines) + "\n")
    for key, mod in table.items():
        print(key, mod)


if __name__ == "__main__":
    main()
