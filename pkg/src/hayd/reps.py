"""Module and comodule structures on finite-dimensional spaces.

Actions are stored as rank-3 tensors rho[h, m_in, m_out]; a left action means
rho gives the operator of h acting from the left, a right action the operator
acting from the right.  Coactions put the Hopf index where the side dictates:
left  lam[m_in, h, m_out]   (m maps to h-leg (x) m-leg)
right lam[m_in, m_out, h]   (m maps to m-leg (x) h-leg)
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InputError, ShapeError
from .hopf import FinHopfAlgebra
from .report import Report
from .tensor import Tensor


@dataclass
class ActionStructure:
    side: str
    dim: int
    tensor: Tensor
    _rows: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InputError(f"action side must be left/right, got {self.side!r}")
        if self.tensor.rank != 3 or self.tensor.shape[1:] != (self.dim, self.dim):
            raise ShapeError(f"action tensor shape {self.tensor.shape} vs dim {self.dim}")

    @property
    def hopf_dim(self) -> int:
        return self.tensor.shape[0]

    def rows(self):
        """dict (h, m_in) -> list of (m_out, coeff)."""
        if self._rows is None:
            rows: dict[tuple, list] = {}
            for (i, a, b), c in self.tensor.entries.items():
                rows.setdefault((i, a), []).append((b, c))
            self._rows = rows
        return self._rows


@dataclass
class CoactionStructure:
    side: str
    dim: int
    tensor: Tensor
    _rows: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InputError(f"coaction side must be left/right, got {self.side!r}")
        if self.tensor.rank != 3:
            raise ShapeError("coaction tensor must have rank 3")
        n = self.hopf_dim
        want = (self.dim, n, self.dim) if self.side == "left" else (self.dim, self.dim, n)
        if self.tensor.shape != want:
            raise ShapeError(f"coaction tensor shape {self.tensor.shape}, expected {want}")

    @property
    def hopf_dim(self) -> int:
        return self.tensor.shape[1] if self.side == "left" else self.tensor.shape[2]

    def rows(self):
        """dict m_in -> list of (h, m_out, coeff), the h-leg first either side."""
        if self._rows is None:
            rows: dict[int, list] = {}
            if self.side == "left":
                for (a, i, b), c in self.tensor.entries.items():
                    rows.setdefault(a, []).append((i, b, c))
            else:
                for (a, b, i), c in self.tensor.entries.items():
                    rows.setdefault(a, []).append((i, b, c))
            self._rows = rows
        return self._rows


def _acc(field, acc, key, c):
    s = field.add(acc.get(key, field.zero), c)
    if field.is_zero(s):
        acc.pop(key, None)
    else:
        acc[key] = s


def _vec(field, dim, acc):
    return Tensor(field, (dim,), {(k,): v for k, v in acc.items()}, _normalized=True)


def _mat(field, shape, acc):
    return Tensor(field, shape, dict(acc), _normalized=True)


def verify_action(H: FinHopfAlgebra, A: ActionStructure) -> Report:
    """Unit and associativity of a module structure, exhaustively."""
    H.require_verified()
    if A.hopf_dim != H.dim:
        raise ShapeError(f"action is over dim {A.hopf_dim}, Hopf algebra has dim {H.dim}")
    if A.tensor.field != H.field:
        raise ShapeError("field mismatch between action and Hopf algebra")
    f = H.field
    m = A.dim
    arows = A.rows()
    for a in range(m):
        acc: dict[int, object] = {}
        for (j,), u in H.unit.entries.items():
            for b, c in arows.get((j, a), ()):
                _acc(f, acc, b, f.mul(u, c))
        if acc != {a: f.one}:
            return Report.fail(
                "action-unit", (a,), _vec(f, m, acc), _vec(f, m, {a: f.one})
            )
    mrows = H.mult_rows()
    for i in range(H.dim):
        for j in range(H.dim):
            prod = mrows.get((i, j), ())
            # left: (e_i e_j) m = e_i (e_j m); right: m (e_i e_j) = (m e_i) e_j
            first, second = (j, i) if A.side == "left" else (i, j)
            for a in range(m):
                lhs: dict[int, object] = {}
                for k, c in prod:
                    for b, d in arows.get((k, a), ()):
                        _acc(f, lhs, b, f.mul(c, d))
                rhs: dict[int, object] = {}
                for mid, c in arows.get((first, a), ()):
                    for b, d in arows.get((second, mid), ()):
                        _acc(f, rhs, b, f.mul(c, d))
                if lhs != rhs:
                    return Report.fail(
                        "action-associativity", (i, j, a), _vec(f, m, lhs), _vec(f, m, rhs)
                    )
    return Report.ok(f"action-{A.side}")


def verify_coaction(H: FinHopfAlgebra, C: CoactionStructure) -> Report:
    """Counit law and coassociativity of a comodule structure, exhaustively."""
    H.require_verified()
    if C.hopf_dim != H.dim:
        raise ShapeError(f"coaction is over dim {C.hopf_dim}, Hopf algebra has dim {H.dim}")
    if C.tensor.field != H.field:
        raise ShapeError("field mismatch between coaction and Hopf algebra")
    f = H.field
    m = C.dim
    lrows = C.rows()
    eps = {i: c for (i,), c in H.counit.entries.items()}
    for a in range(m):
        acc: dict[int, object] = {}
        for (i, b, c) in lrows.get(a, ()):
            if i in eps:
                _acc(f, acc, b, f.mul(eps[i], c))
        if acc != {a: f.one}:
            return Report.fail(
                "coaction-counit", (a,), _vec(f, m, acc), _vec(f, m, {a: f.one})
            )
    crows = H.comult_rows()
    for a in range(m):
        lhs: dict[tuple, object] = {}
        rhs: dict[tuple, object] = {}
        if C.side == "left":
            # (comult (x) id).lam == (id (x) lam).lam, legs ordered (h, h, m)
            for (i, b, c) in lrows.get(a, ()):
                for (j, k, d) in crows.get(i, ()):
                    _acc(f, lhs, (j, k, b), f.mul(c, d))
                for (j, b2, d) in lrows.get(b, ()):
                    _acc(f, rhs, (i, j, b2), f.mul(c, d))
            shape = (H.dim, H.dim, m)
        else:
            # (lam (x) id).lam == (id (x) comult).lam, legs ordered (m, h, h)
            for (i, b, c) in lrows.get(a, ()):
                for (j, b2, d) in lrows.get(b, ()):
                    _acc(f, lhs, (b2, j, i), f.mul(c, d))
                for (j, k, d) in crows.get(i, ()):
                    _acc(f, rhs, (b, j, k), f.mul(c, d))
            shape = (m, H.dim, H.dim)
        if lhs != rhs:
            return Report.fail(
                "coaction-coassociativity", (a,), _mat(f, shape, lhs), _mat(f, shape, rhs)
            )
    return Report.ok(f"coaction-{C.side}")


# -- stock structures ------------------------------------------------------------


def regular_action(H: FinHopfAlgebra, side="left") -> ActionStructure:
    """H acting on itself by multiplication."""
    t = H.mult if side == "left" else H.mult.transpose((1, 0, 2))
    return ActionStructure(side, H.dim, t)


def trivial_action(H: FinHopfAlgebra, dim: int, side="left") -> ActionStructure:
    """Everything acts through the counit."""
    f = H.field
    entries = {}
    for (i,), c in H.counit.entries.items():
        for a in range(dim):
            entries[(i, a, a)] = c
    return ActionStructure(side, dim, Tensor(f, (H.dim, dim, dim), entries, _normalized=True))


def trivial_coaction(H: FinHopfAlgebra, dim: int, side="left") -> CoactionStructure:
    """Every vector coacts by the unit of H."""
    f = H.field
    entries = {}
    for (i,), c in H.unit.entries.items():
        for a in range(dim):
            key = (a, i, a) if side == "left" else (a, a, i)
            entries[key] = c
    shape = (dim, H.dim, dim) if side == "left" else (dim, dim, H.dim)
    return CoactionStructure(side, dim, Tensor(f, shape, entries, _normalized=True))


def comult_coaction(H: FinHopfAlgebra, side="right") -> CoactionStructure:
    """H coacting on itself by its comultiplication.

    The same tensor serves both sides: read left as h-leg (x) m-leg, read
    right as m-leg (x) h-leg.
    """
    return CoactionStructure(side, H.dim, H.comult)


# -- dual-basis conversions -------------------------------------------------------


def comodule_to_dual_action(H: FinHopfAlgebra, C: CoactionStructure) -> ActionStructure:
    """A right H-comodule becomes a left module over the dual: phi.m = phi(m_h) m_0."""
    H.require_verified()
    if C.side != "right":
        raise InputError("comodule_to_dual_action expects a right coaction")
    entries = {
        (i, a, b): c for (a, b, i), c in C.tensor.entries.items()
    }
    t = Tensor(H.field, (H.dim, C.dim, C.dim), entries, _normalized=True)
    return ActionStructure("left", C.dim, t)


def dual_action_to_comodule(H: FinHopfAlgebra, A: ActionStructure) -> CoactionStructure:
    """A left dual-module yields a right H-comodule via the dual basis expansion."""
    H.require_verified()
    if A.side != "left":
        raise InputError("dual_action_to_comodule expects a left action")
    if A.hopf_dim != H.dim:
        raise ShapeError("action does not match the Hopf dimension")
    entries = {
        (a, b, i): c for (i, a, b), c in A.tensor.entries.items()
    }
    t = Tensor(H.field, (A.dim, A.dim, H.dim), entries, _normalized=True)
    return CoactionStructure("right", A.dim, t)
