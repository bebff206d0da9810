#!/usr/bin/env python3
"""Generate data/k12.json: the Gram matrix of the Coxeter-Todd lattice K12, scaled by -2.

Construction: let E be the Eisenstein integers Z[w], w^2 = -1 - w, and identify
E/2E with F4 = {0, 1, w, w^2}.  The hexacode H6 < F4^6 is the [6,3,4] code
{(a, b, c, f(1), f(w), f(w^2)) : f(x) = a x^2 + b x + c}.  Then

    K12 = { x in E^6 : x mod 2E in H6 },   b(x, y) = Re <x, y>_E (sum of coords)

is an even 12-dimensional positive definite lattice with det 3^6 = 729 and
minimum 4.  The script derives an integer basis (Hermite normal form of a
generating set), computes the Gram matrix, asserts the invariants, and writes
the (-2)-rescaled Gram as a QuadSpace JSON file.
"""
import json
import os
import sys
from fractions import Fraction

# ---- Eisenstein arithmetic on pairs (a, b) = a + b*w, w^2 = -1 - w ----

def emul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)

def b2(x, y):
    # 2 * Re(x * conj(y)); conj(a + b w) = (a - b) - b w
    a, b = x
    c, d = y
    return 2 * a * c + 2 * b * d - a * d - b * c

# ---- F4 = E/2E and the hexacode ----

F4 = [(0, 0), (1, 0), (0, 1), (1, 1)]  # 0, 1, w, w^2 = 1 + w

def f4(x):
    return (x[0] % 2, x[1] % 2)

def f4mul(x, y):
    return f4(emul(x, y))

def f4add(x, y):
    return ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)

def hexacode():
    words = []
    for a in F4:
        for b in F4:
            for c in F4:
                word = [a, b, c]
                for x in F4[1:]:
                    v = f4add(f4add(f4mul(a, f4mul(x, x)), f4mul(b, x)), c)
                    word.append(v)
                words.append(tuple(word))
    return words

def weight(word):
    return sum(1 for v in word if v != (0, 0))

# ---- lattice basis via Hermite normal form over Z ----

def hnf(rows):
    """Row-style HNF of an integer matrix; returns the nonzero rows."""
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        # gcd elimination below the pivot
        changed = True
        while changed:
            changed = False
            for i in range(r + 1, m):
                if rows[i][c] == 0:
                    continue
                if abs(rows[i][c]) < abs(rows[r][c]):
                    rows[r], rows[i] = rows[i], rows[r]
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                if rows[i][c] != 0:
                    changed = True
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]

def det_fraction(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det

def main():
    words = hexacode()
    assert len(words) == 64
    wmin = min(weight(w) for w in words if any(v != (0, 0) for v in w))
    assert wmin == 4, wmin

    # Generators of K12 in Z^12 (six E-coordinates, each a pair): every
    # codeword lift plus 2E^6.  HNF trims this to a 12-row basis.
    gens = []
    for word in words:
        vec = []
        for v in word:
            vec.extend(v)
        gens.append(vec)
        # E-module closure: w * codeword is again a codeword lift, but add
        # the w-multiplied lift anyway to be safe about Z-generation.
        vec2 = []
        for v in word:
            vec2.extend(emul(v, (0, 1)))
        gens.append(vec2)
    for i in range(12):
        row = [0] * 12
        row[i] = 2
        gens.append(row)

    basis = hnf(gens)
    assert len(basis) == 12, len(basis)

    # Gram matrix: coordinates pair up as Eisenstein numbers.
    def bil(u, v):
        total = 0
        for k in range(6):
            x = (u[2 * k], u[2 * k + 1])
            y = (v[2 * k], v[2 * k + 1])
            total += b2(x, y)
        assert total % 2 == 0
        return total // 2

    gram = [[bil(basis[i], basis[j]) for j in range(12)] for i in range(12)]

    # invariants: symmetric, even, det 729, positive definite, min-4 basis sanity
    for i in range(12):
        assert gram[i][i] % 2 == 0 and gram[i][i] >= 4
        for j in range(12):
            assert gram[i][j] == gram[j][i]
    d = det_fraction(gram)
    assert d == 729, d
    # positive definiteness via leading principal minors
    for k in range(1, 13):
        mk = det_fraction([row[:k] for row in gram[:k]])
        assert mk > 0, (k, mk)
    # no norm-2 vectors: structural (codeword weight >= 4; coords in 2E have
    # norm >= 4; 2 is not a norm of a unit-coordinate pattern of weight < 4).
    # Spot-check that norm 4 is attained.
    assert any(gram[i][i] == 4 for i in range(12))

    scaled = [[-2 * x for x in row] for row in gram]
    out = {
        "label": "K12(-2)",
        "dim": 12,
        "gram": [[str(x) for x in row] for row in scaled],
    }
    path = os.path.join(os.path.dirname(__file__), "..", "data", "k12.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("wrote", os.path.normpath(path))
    print("basis norms:", [gram[i][i] for i in range(12)])

if __name__ == "__main__":
    sys.exit(main())
