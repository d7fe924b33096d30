"""Associative unital algebras with a fixed basis, and modules over them.

Multiplication is a rank-3 structure tensor: e_i e_j = sum_k mult[i,j,k] e_k.
Verification is exhaustive over basis tuples and reports the lexicographically
first violation; at the dimensions this package targets (up to a few dozen,
with derived algebras up to dim 81) the sparse row loops below stay fast.
"""

from __future__ import annotations

from .errors import CheckFailedError, ShapeError
from .report import Report
from .tensor import Tensor


def mult_rows(mult: Tensor):
    """Structure tensor as a dict (i, j) -> list of (k, coeff)."""
    rows: dict[tuple[int, int], list] = {}
    for (i, j, k), c in mult.entries.items():
        rows.setdefault((i, j), []).append((k, c))
    return rows


def _accumulate(field, acc: dict, key, c):
    s = field.add(acc.get(key, field.zero), c)
    if field.is_zero(s):
        acc.pop(key, None)
    else:
        acc[key] = s


def associativity_report(field, dim, rows, label="associativity") -> Report:
    """Exhaustive (i,j,k) associativity scan over sparse multiplication rows."""
    add, mul, zero = field.add, field.mul, field.zero
    empty = ()
    for i in range(dim):
        for j in range(dim):
            tij = rows.get((i, j), empty)
            for k in range(dim):
                lhs: dict[int, object] = {}
                for m, c in tij:
                    for l, d in rows.get((m, k), empty):
                        s = add(lhs.get(l, zero), mul(c, d))
                        if field.is_zero(s):
                            lhs.pop(l, None)
                        else:
                            lhs[l] = s
                rhs: dict[int, object] = {}
                for m, c in rows.get((j, k), empty):
                    for l, d in rows.get((i, m), empty):
                        s = add(rhs.get(l, zero), mul(c, d))
                        if field.is_zero(s):
                            rhs.pop(l, None)
                        else:
                            rhs[l] = s
                if lhs != rhs:
                    return Report.fail(
                        label,
                        (i, j, k),
                        Tensor(field, (dim,), {(l,): c for l, c in lhs.items()}),
                        Tensor(field, (dim,), {(l,): c for l, c in rhs.items()}),
                    )
    return Report.ok(label)


def unit_report(field, dim, rows, unit: Tensor, label="unit") -> Report:
    for i in range(dim):
        left: dict[int, object] = {}
        right: dict[int, object] = {}
        for (j,), u in unit.entries.items():
            for k, c in rows.get((j, i), ()):
                _accumulate(field, left, k, field.mul(u, c))
            for k, c in rows.get((i, j), ()):
                _accumulate(field, right, k, field.mul(u, c))
        expected = {i: field.one}
        if left != expected or right != expected:
            got = left if left != expected else right
            return Report.fail(
                label,
                (i,),
                Tensor(field, (dim,), {(l,): c for l, c in got.items()}),
                Tensor(field, (dim,), {(i,): field.one}),
            )
    return Report.ok(label)


class FinAlgebra:
    """A finite-dimensional associative unital algebra by structure constants."""

    def __init__(self, field, mult: Tensor, unit: Tensor, basis_names=None, name="", check=True):
        n = unit.shape[0] if unit.rank == 1 else -1
        if mult.rank != 3 or mult.shape != (n, n, n):
            raise ShapeError(f"mult shape {mult.shape} does not match unit shape {unit.shape}")
        if mult.field != field or unit.field != field:
            raise ShapeError("field mismatch in algebra data")
        self.field = field
        self.dim = n
        self.mult = mult
        self.unit = unit
        self.name = name or "algebra"
        self.basis_names = list(basis_names) if basis_names else [f"e{i}" for i in range(n)]
        if len(self.basis_names) != n:
            raise ShapeError("basis_names length does not match dimension")
        self._rows = None
        if check:
            report = self.verify()
            if not report.passed:
                raise CheckFailedError(report)

    def rows(self):
        if self._rows is None:
            self._rows = mult_rows(self.mult)
        return self._rows

    def verify(self) -> Report:
        r = associativity_report(self.field, self.dim, self.rows())
        if not r.passed:
            return r
        r = unit_report(self.field, self.dim, self.rows(), self.unit)
        if not r.passed:
            return r
        return Report.ok("algebra")

    def mul_vec(self, x: Tensor, y: Tensor) -> Tensor:
        """Product of two elements given by coefficient vectors."""
        return x.contract(self.mult, [(0, 0)]).contract(y, [(0, 0)])

    def is_commutative(self) -> bool:
        flip = self.mult.transpose((1, 0, 2))
        return flip == self.mult

    def __repr__(self):
        return f"FinAlgebra({self.name}, dim={self.dim}, field={self.field})"


class AlgebraModule:
    """A left module over a FinAlgebra, as an action tensor (alg, in, out)."""

    def __init__(self, algebra: FinAlgebra, action: Tensor, check=True):
        if action.rank != 3 or action.shape[0] != algebra.dim:
            raise ShapeError(f"action shape {action.shape} does not match algebra")
        if action.shape[1] != action.shape[2]:
            raise ShapeError("action must act on a single space")
        if action.field != algebra.field:
            raise ShapeError("field mismatch in module data")
        self.algebra = algebra
        self.dim = action.shape[1]
        self.action = action
        self._rows = None
        if check:
            report = self.verify()
            if not report.passed:
                raise CheckFailedError(report)

    def rows(self):
        """Action tensor as dict (alg_idx, m_in) -> list of (m_out, coeff)."""
        if self._rows is None:
            rows: dict[tuple[int, int], list] = {}
            for (i, a, b), c in self.action.entries.items():
                rows.setdefault((i, a), []).append((b, c))
            self._rows = rows
        return self._rows

    def verify(self) -> Report:
        f = self.algebra.field
        arows = self.rows()
        # unit acts as identity
        for a in range(self.dim):
            acc: dict[int, object] = {}
            for (j,), u in self.algebra.unit.entries.items():
                for b, c in arows.get((j, a), ()):
                    _accumulate(f, acc, b, f.mul(u, c))
            if acc != {a: f.one}:
                return Report.fail(
                    "module-unit",
                    (a,),
                    Tensor(f, (self.dim,), {(b,): c for b, c in acc.items()}),
                    Tensor(f, (self.dim,), {(a,): f.one}),
                )
        # (e_i e_j) m == e_i (e_j m)
        mrows = self.algebra.rows()
        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                prod = mrows.get((i, j), ())
                for a in range(self.dim):
                    lhs: dict[int, object] = {}
                    for k, c in prod:
                        for b, d in arows.get((k, a), ()):
                            _accumulate(f, lhs, b, f.mul(c, d))
                    rhs: dict[int, object] = {}
                    for cmid, c in arows.get((j, a), ()):
                        for b, d in arows.get((i, cmid), ()):
                            _accumulate(f, rhs, b, f.mul(c, d))
                    if lhs != rhs:
                        return Report.fail(
                            "module-associativity",
                            (i, j, a),
                            Tensor(f, (self.dim,), {(b,): c for b, c in lhs.items()}),
                            Tensor(f, (self.dim,), {(b,): c for b, c in rhs.items()}),
                        )
        return Report.ok("module")
