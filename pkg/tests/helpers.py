"""Shared test utilities: independent dense oracles and structure builders.

The oracles here deliberately avoid the package's sparse machinery: they work
on dense nested lists with plain nested loops, so that agreement between the
two routes actually means something.
"""

from __future__ import annotations

from itertools import product

from hayd.fields import Field
from hayd.reps import ActionStructure, CoactionStructure
from hayd.ayd import TwoSidedStructure
from hayd.tensor import Tensor


def dense(t: Tensor):
    return t.to_nested()


def dense_get(nested, idx):
    node = nested
    for i in idx:
        node = node[i]
    return node


def dense_contract(field: Field, a, shape_a, b, shape_b, pairs):
    """Brute-force contraction over the full index space."""
    a_axes = [p[0] for p in pairs]
    b_axes = [p[1] for p in pairs]
    a_keep = [ax for ax in range(len(shape_a)) if ax not in a_axes]
    b_keep = [ax for ax in range(len(shape_b)) if ax not in b_axes]
    out_shape = [shape_a[ax] for ax in a_keep] + [shape_b[ax] for ax in b_keep]
    out = {}
    for aidx in product(*(range(d) for d in shape_a)):
        ca = dense_get(a, aidx)
        if field.is_zero(ca):
            continue
        for bidx in product(*(range(d) for d in shape_b)):
            if any(aidx[ai] != bidx[bi] for ai, bi in pairs):
                continue
            cb = dense_get(b, bidx)
            if field.is_zero(cb):
                continue
            key = tuple(aidx[ax] for ax in a_keep) + tuple(bidx[ax] for ax in b_keep)
            out[key] = field.add(out.get(key, field.zero), field.mul(ca, cb))
    return Tensor(field, tuple(out_shape), out)


def hopf_dense(H):
    """All structure tensors of H as dense nested lists."""
    return {
        "mult": dense(H.mult),
        "unit": dense(H.unit),
        "comult": dense(H.comult),
        "counit": dense(H.counit),
        "antipode": dense(H.antipode),
    }


def naive_hopf_axioms(H) -> list:
    """Re-verify every Hopf axiom with dense loops; returns failure labels."""
    f = H.field
    n = H.dim
    d = hopf_dense(H)
    mu, unit, cm, eps, s = d["mult"], d["unit"], d["comult"], d["counit"], d["antipode"]
    bad = []

    def eq(x, y):
        return x == y

    for i, j, k, l in product(range(n), repeat=4):
        lhs = sum_(f, (f.mul(mu[i][j][m], mu[m][k][l]) for m in range(n)))
        rhs = sum_(f, (f.mul(mu[j][k][m], mu[i][m][l]) for m in range(n)))
        if not eq(lhs, rhs):
            bad.append("associativity")
            break
    for i, k in product(range(n), repeat=2):
        left = sum_(f, (f.mul(unit[j], mu[j][i][k]) for j in range(n)))
        right = sum_(f, (f.mul(unit[j], mu[i][j][k]) for j in range(n)))
        want = f.one if i == k else f.zero
        if left != want or right != want:
            bad.append("unit")
            break
    for i, a, b, c in product(range(n), repeat=4):
        lhs = sum_(f, (f.mul(cm[i][m][c], cm[m][a][b]) for m in range(n)))
        rhs = sum_(f, (f.mul(cm[i][a][m], cm[m][b][c]) for m in range(n)))
        if lhs != rhs:
            bad.append("coassociativity")
            break
    for i, k in product(range(n), repeat=2):
        left = sum_(f, (f.mul(cm[i][j][k], eps[j]) for j in range(n)))
        right = sum_(f, (f.mul(cm[i][k][j], eps[j]) for j in range(n)))
        want = f.one if i == k else f.zero
        if left != want or right != want:
            bad.append("counit")
            break
    for i, j in product(range(n), repeat=2):
        rhs = [[f.zero] * n for _ in range(n)]
        for p, q, r, t in product(range(n), repeat=4):
            c = f.mul(cm[i][p][q], cm[j][r][t])
            if f.is_zero(c):
                continue
            for a in range(n):
                left = f.mul(c, mu[p][r][a])
                if f.is_zero(left):
                    continue
                for b in range(n):
                    rhs[a][b] = f.add(rhs[a][b], f.mul(left, mu[q][t][b]))
        mismatch = False
        for a, b in product(range(n), repeat=2):
            lhs = sum_(f, (f.mul(mu[i][j][m], cm[m][a][b]) for m in range(n)))
            if lhs != rhs[a][b]:
                mismatch = True
                break
        if mismatch:
            bad.append("bialgebra")
            break
    for i, l in product(range(n), repeat=2):
        left = f.zero
        right = f.zero
        for j, k, m in product(range(n), repeat=3):
            left = f.add(left, f.mul(f.mul(cm[i][j][k], s[j][m]), mu[m][k][l]))
            right = f.add(right, f.mul(f.mul(cm[i][j][k], s[k][m]), mu[j][m][l]))
        want = f.mul(eps[i], unit[l])
        if left != want or right != want:
            bad.append("antipode")
            break
    return bad


def sum_(field, items):
    total = field.zero
    for x in items:
        total = field.add(total, x)
    return total


# -- structure builders over group algebras ----------------------------------------


def graded_structure(H, group, grading, case, action_map=None):
    """Group-graded module in any case: the coaction tags the grade; the
    default action permutes basis vectors by (side-matching) conjugation,
    which needs the grading to be injective."""
    f = H.field
    n = H.dim
    m = len(grading)
    act_side = "left" if case[0] == "l" else "right"
    co_side = "left" if case[1] == "l" else "right"

    act_entries = {}
    for g in range(n):
        for a in range(m):
            if action_map is not None:
                b, c = action_map(g, a)
                c = f.coerce(c)
            else:
                if act_side == "left":
                    target = group.mul(group.mul(g, grading[a]), group.inverse(g))
                else:
                    target = group.mul(group.mul(group.inverse(g), grading[a]), g)
                matches = [b for b in range(m) if grading[b] == target]
                b, c = (matches[0], f.one) if matches else (a, f.zero)
            if not f.is_zero(c):
                act_entries[(g, a, b)] = c
    action = ActionStructure(act_side, m, Tensor(f, (n, m, m), act_entries))
    if co_side == "left":
        co = Tensor(f, (m, n, m), {(a, grading[a], a): f.one for a in range(m)})
    else:
        co = Tensor(f, (m, m, n), {(a, a, grading[a]): f.one for a in range(m)})
    return TwoSidedStructure(H, action, CoactionStructure(co_side, m, co))


def one_dim(H, delta, sigma, case):
    from hayd.suite import one_dim_structure

    return one_dim_structure(H, delta, sigma, case)
