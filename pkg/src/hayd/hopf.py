"""Finite-dimensional Hopf algebras as structure-constant tensors.

Conventions, fixed once for the whole package:

* mult[i,j,k]:    e_i e_j = sum_k mult[i,j,k] e_k
* unit[i]:        1 = sum_i unit[i] e_i
* comult[i,j,k]:  coproduct(e_i) = sum_{j,k} comult[i,j,k] e_j (x) e_k
* counit[i]:      the counit evaluated on e_i
* antipode[i,j]:  S(e_i) = sum_j antipode[i,j] e_j

Linear maps are stored (input, output) and act on row vectors.  Axiom
verification is exhaustive over basis tuples; exact arithmetic turns every
check into a strict equality, so a pass is a proof at this dimension, not
statistical evidence.
"""

from __future__ import annotations

from itertools import product as iter_product

from .algebra import associativity_report, mult_rows, unit_report
from .errors import (
    GuardError,
    InputError,
    InternalConsistencyError,
    ShapeError,
    SingularMatrixError,
)
from .fields import Field, rationals
from .groups import Group, cyclic, symmetric
from .report import Report
from .tensor import Tensor, invert_matrix

GROUP_LIKE_GUARD = 2**20


class FinHopfAlgebra:
    """A Hopf algebra on a finite basis, trusted only after verify() passes."""

    def __init__(
        self,
        field: Field,
        mult: Tensor,
        unit: Tensor,
        comult: Tensor,
        counit: Tensor,
        antipode: Tensor,
        basis_names=None,
        name="H",
    ):
        n = unit.shape[0] if unit.rank == 1 else -1
        expected = {
            "mult": ((n, n, n), mult),
            "comult": ((n, n, n), comult),
            "counit": ((n,), counit),
            "antipode": ((n, n), antipode),
        }
        for label, (shape, tensor) in expected.items():
            if tensor.shape != shape:
                raise ShapeError(f"{label} has shape {tensor.shape}, expected {shape}")
            if tensor.field != field:
                raise ShapeError(f"{label} field mismatch")
        self.field = field
        self.dim = n
        self.mult = mult
        self.unit = unit
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.name = name
        self.basis_names = list(basis_names) if basis_names else [f"e{i}" for i in range(n)]
        if len(self.basis_names) != n:
            raise ShapeError("basis_names length does not match dimension")
        self.verified = False
        self._antipode_inv = None
        self._cache: dict = {}

    def __repr__(self):
        return f"FinHopfAlgebra({self.name}, dim={self.dim}, field={self.field})"

    # -- cached sparse views ---------------------------------------------------

    def mult_rows(self):
        if "mult_rows" not in self._cache:
            self._cache["mult_rows"] = mult_rows(self.mult)
        return self._cache["mult_rows"]

    def comult_rows(self):
        """dict i -> list of (j, k, coeff) with coproduct(e_i) = sum c e_j (x) e_k."""
        if "comult_rows" not in self._cache:
            rows: dict[int, list] = {}
            for (i, j, k), c in self.comult.entries.items():
                rows.setdefault(i, []).append((j, k, c))
            self._cache["comult_rows"] = rows
        return self._cache["comult_rows"]

    def antipode_rows(self):
        if "antipode_rows" not in self._cache:
            rows: dict[int, list] = {}
            for (i, j), c in self.antipode.entries.items():
                rows.setdefault(i, []).append((j, c))
            self._cache["antipode_rows"] = rows
        return self._cache["antipode_rows"]

    def antipode_inv_rows(self):
        if "antipode_inv_rows" not in self._cache:
            rows: dict[int, list] = {}
            for (i, j), c in antipode_inverse(self).entries.items():
                rows.setdefault(i, []).append((j, c))
            self._cache["antipode_inv_rows"] = rows
        return self._cache["antipode_inv_rows"]

    def coproduct3_rows(self):
        """dict i -> list of (p, q, r, coeff): the two-step iterated coproduct."""
        if "cop3_rows" not in self._cache:
            t = iterated_coproduct(self, 3)
            rows: dict[int, list] = {}
            for (i, p, q, r), c in t.entries.items():
                rows.setdefault(i, []).append((p, q, r, c))
            self._cache["cop3_rows"] = rows
        return self._cache["cop3_rows"]

    # -- element helpers -------------------------------------------------------

    def product(self, x: Tensor, y: Tensor) -> Tensor:
        return x.contract(self.mult, [(0, 0)]).contract(y, [(0, 0)])

    def coproduct(self, x: Tensor) -> Tensor:
        return x.contract(self.comult, [(0, 0)])

    def counit_of(self, x: Tensor):
        return x.contract(self.counit, [(0, 0)]).get(())

    def apply_antipode(self, x: Tensor) -> Tensor:
        return x.contract(self.antipode, [(0, 0)])

    def square_product(self, x: Tensor, y: Tensor) -> Tensor:
        """Componentwise product of two elements of H (x) H (rank-2 tensors)."""
        f = self.field
        rows = self.mult_rows()
        out: dict[tuple, object] = {}
        for (i, j), c in x.entries.items():
            for (k, l), d in y.entries.items():
                cd = f.mul(c, d)
                for a, ca in rows.get((i, k), ()):
                    for b, cb in rows.get((j, l), ()):
                        key = (a, b)
                        s = f.add(out.get(key, f.zero), f.mul(cd, f.mul(ca, cb)))
                        if f.is_zero(s):
                            out.pop(key, None)
                        else:
                            out[key] = s
        return Tensor(f, (self.dim, self.dim), out, _normalized=True)

    def basis_vector(self, i: int) -> Tensor:
        return Tensor.basis(self.field, (self.dim,), (i,))

    def require_verified(self):
        if not self.verified:
            report = verify_hopf_axioms(self)
            if not report.passed:
                raise InputError(
                    f"Hopf structure '{self.name}' fails axiom "
                    f"'{report.axiom}' at {report.witness}"
                )

    def verify(self) -> Report:
        return verify_hopf_axioms(self)


def _vec_tensor(field, dim, acc: dict) -> Tensor:
    return Tensor(field, (dim,), {(k,): v for k, v in acc.items()}, _normalized=True)


def _mat_tensor(field, shape, acc: dict) -> Tensor:
    return Tensor(field, shape, dict(acc), _normalized=True)


def verify_hopf_axioms(H: FinHopfAlgebra) -> Report:
    """Run every Hopf axiom exhaustively, in a fixed order; first failure wins."""
    f = H.field
    n = H.dim
    rows = H.mult_rows()
    crows = H.comult_rows()
    eps = {i: c for (i,), c in H.counit.entries.items()}
    unit = {i: c for (i,), c in H.unit.entries.items()}

    r = associativity_report(f, n, rows)
    if not r.passed:
        return r
    r = unit_report(f, n, rows, H.unit)
    if not r.passed:
        return r

    # coassociativity: (coproduct (x) id) vs (id (x) coproduct) on each e_i
    for i in range(n):
        lhs: dict[tuple, object] = {}
        rhs: dict[tuple, object] = {}
        for (j, k, c) in crows.get(i, ()):
            for (a, b, d) in crows.get(j, ()):
                _acc(f, lhs, (a, b, k), f.mul(c, d))
            for (a, b, d) in crows.get(k, ()):
                _acc(f, rhs, (j, a, b), f.mul(c, d))
        if lhs != rhs:
            return Report.fail(
                "coassociativity",
                (i,),
                _mat_tensor(f, (n, n, n), lhs),
                _mat_tensor(f, (n, n, n), rhs),
            )

    # counit law on each leg
    for i in range(n):
        left: dict[int, object] = {}
        right: dict[int, object] = {}
        for (j, k, c) in crows.get(i, ()):
            if j in eps:
                _acc(f, left, k, f.mul(eps[j], c))
            if k in eps:
                _acc(f, right, j, f.mul(eps[k], c))
        expected = {i: f.one}
        if left != expected or right != expected:
            got = left if left != expected else right
            return Report.fail(
                "counit",
                (i,),
                _vec_tensor(f, n, got),
                _vec_tensor(f, n, expected),
            )

    # bialgebra: coproduct and counit are algebra maps, and respect the unit
    for i in range(n):
        for j in range(n):
            lhs = {}
            for k, c in rows.get((i, j), ()):
                for (a, b, d) in crows.get(k, ()):
                    _acc(f, lhs, (a, b), f.mul(c, d))
            rhs = {}
            for (p, q, c1) in crows.get(i, ()):
                for (r, s, c2) in crows.get(j, ()):
                    c12 = f.mul(c1, c2)
                    for a, ca in rows.get((p, r), ()):
                        for b, cb in rows.get((q, s), ()):
                            _acc(f, rhs, (a, b), f.mul(c12, f.mul(ca, cb)))
            if lhs != rhs:
                return Report.fail(
                    "bialgebra-mult",
                    (i, j),
                    _mat_tensor(f, (n, n), lhs),
                    _mat_tensor(f, (n, n), rhs),
                )
            got = f.zero
            for k, c in rows.get((i, j), ()):
                if k in eps:
                    got = f.add(got, f.mul(c, eps[k]))
            want = f.mul(eps.get(i, f.zero), eps.get(j, f.zero))
            if got != want:
                return Report.fail(
                    "bialgebra-counit",
                    (i, j),
                    Tensor(f, (), {(): got}),
                    Tensor(f, (), {(): want}),
                )
    lhs = {}
    for i, u in unit.items():
        for (a, b, c) in crows.get(i, ()):
            _acc(f, lhs, (a, b), f.mul(u, c))
    rhs = {}
    for a, ua in unit.items():
        for b, ub in unit.items():
            _acc(f, rhs, (a, b), f.mul(ua, ub))
    if lhs != rhs:
        return Report.fail(
            "bialgebra-unit", (0,), _mat_tensor(f, (n, n), lhs), _mat_tensor(f, (n, n), rhs)
        )
    eps_one = f.zero
    for i, u in unit.items():
        eps_one = f.add(eps_one, f.mul(u, eps.get(i, f.zero)))
    if eps_one != f.one:
        return Report.fail(
            "bialgebra-unit",
            (0,),
            Tensor(f, (), {(): eps_one}),
            Tensor(f, (), {(): f.one}),
        )

    # antipode axiom: mult(S (x) id)coproduct = unit.counit = mult(id (x) S)coproduct
    srows = H.antipode_rows()
    for i in range(n):
        left: dict[int, object] = {}
        right: dict[int, object] = {}
        for (j, k, c) in crows.get(i, ()):
            for m, cs in srows.get(j, ()):
                for l, cm in rows.get((m, k), ()):
                    _acc(f, left, l, f.mul(c, f.mul(cs, cm)))
            for m, cs in srows.get(k, ()):
                for l, cm in rows.get((j, m), ()):
                    _acc(f, right, l, f.mul(c, f.mul(cs, cm)))
        want = {}
        e_i = eps.get(i, f.zero)
        if not f.is_zero(e_i):
            for l, u in unit.items():
                want[l] = f.mul(e_i, u)
        if left != want or right != want:
            got = left if left != want else right
            return Report.fail(
                "antipode", (i,), _vec_tensor(f, n, got), _vec_tensor(f, n, want)
            )

    try:
        H._antipode_inv = invert_matrix(H.antipode)
    except SingularMatrixError as exc:
        return Report.fail("antipode-invertible", (exc.rank,), H.antipode, None)

    H.verified = True
    return Report.ok("hopf")


def _acc(field, acc: dict, key, c):
    s = field.add(acc.get(key, field.zero), c)
    if field.is_zero(s):
        acc.pop(key, None)
    else:
        acc[key] = s


def antipode_inverse(H: FinHopfAlgebra) -> Tensor:
    """Matrix inverse of the antipode, cached on H after the first call."""
    if H._antipode_inv is None:
        try:
            H._antipode_inv = invert_matrix(H.antipode)
        except SingularMatrixError as exc:
            raise InputError(f"antipode of '{H.name}' is not bijective") from exc
    return H._antipode_inv


def iterated_coproduct(H: FinHopfAlgebra, k: int) -> Tensor:
    """k-fold coproduct legs as a tensor (input axis, then k output axes)."""
    if k < 1:
        raise InputError("iterated coproduct needs k >= 1")
    key = ("cop", k)
    if key in H._cache:
        return H._cache[key]
    if k == 1:
        t = Tensor.identity(H.field, H.dim)
    else:
        t = H.comult
        for _ in range(k - 2):
            t = t.contract(H.comult, [(t.rank - 1, 0)])
    H._cache[key] = t
    return t


def dual_hopf(H: FinHopfAlgebra) -> FinHopfAlgebra:
    """The dual Hopf algebra on the dual basis (finite-dimensional duality)."""
    H.require_verified()
    if "dual" in H._cache:
        return H._cache["dual"]
    f = H.field
    n = H.dim
    mult = Tensor(
        f, (n, n, n), {(j, k, i): c for (i, j, k), c in H.comult.entries.items()}, _normalized=True
    )
    comult = Tensor(
        f, (n, n, n), {(k, i, j): c for (i, j, k), c in H.mult.entries.items()}, _normalized=True
    )
    antipode = Tensor(
        f, (n, n), {(j, i): c for (i, j), c in H.antipode.entries.items()}, _normalized=True
    )
    dual = FinHopfAlgebra(
        f,
        mult,
        H.counit,
        comult,
        H.unit,
        antipode,
        basis_names=[name + "*" for name in H.basis_names],
        name=H.name + "*",
    )
    report = verify_hopf_axioms(dual)
    if not report.passed:
        raise InternalConsistencyError(
            f"dual of verified '{H.name}' fails '{report.axiom}' at {report.witness}"
        )
    H._cache["dual"] = dual
    return dual


def variant(H: FinHopfAlgebra, which: str) -> FinHopfAlgebra:
    """Opposite / co-opposite relatives; 'op' and 'cop' take the inverse antipode."""
    H.require_verified()
    f, n = H.field, H.dim
    mult, comult, antipode = H.mult, H.comult, H.antipode
    if which == "op":
        mult = mult.transpose((1, 0, 2))
        antipode = antipode_inverse(H)
    elif which == "cop":
        comult = comult.transpose((0, 2, 1))
        antipode = antipode_inverse(H)
    elif which == "op_cop":
        mult = mult.transpose((1, 0, 2))
        comult = comult.transpose((0, 2, 1))
    else:
        raise InputError(f"unknown variant {which!r}")
    out = FinHopfAlgebra(
        f, mult, H.unit, comult, H.counit, antipode,
        basis_names=H.basis_names, name=f"{H.name}^{which}",
    )
    report = verify_hopf_axioms(out)
    if not report.passed:
        raise InternalConsistencyError(
            f"variant {which} of verified '{H.name}' fails '{report.axiom}'"
        )
    return out


# -- builtin families ----------------------------------------------------------


def group_algebra(group: Group, field: Field | None = None) -> FinHopfAlgebra:
    """Group algebra kG: basis elements group-like, antipode by inversion."""
    field = field or rationals()
    n = len(group)
    one = field.one
    mult = Tensor(
        field, (n, n, n), {(i, j, group.mul(i, j)): one for i in range(n) for j in range(n)},
        _normalized=True,
    )
    unit = Tensor(field, (n,), {(group.identity,): one}, _normalized=True)
    comult = Tensor(field, (n, n, n), {(i, i, i): one for i in range(n)}, _normalized=True)
    counit = Tensor(field, (n,), {(i,): one for i in range(n)}, _normalized=True)
    antipode = Tensor(field, (n, n), {(i, group.inverse(i)): one for i in range(n)}, _normalized=True)
    H = FinHopfAlgebra(
        field, mult, unit, comult, counit, antipode,
        basis_names=list(group.names), name=f"k{group.name}",
    )
    report = verify_hopf_axioms(H)
    if not report.passed:
        raise InternalConsistencyError(f"group algebra fails '{report.axiom}'")
    return H


def function_algebra(group: Group, field: Field | None = None) -> FinHopfAlgebra:
    """Functions on a finite group: the dual of the group algebra."""
    dual = dual_hopf(group_algebra(group, field))
    dual.name = f"k^{group.name}"
    dual.basis_names = [f"d_{name}" for name in group.names]
    return dual


def _monomial_name(a: int, b: int) -> str:
    parts = []
    if a == 1:
        parts.append("g")
    elif a > 1:
        parts.append(f"g{a}")
    if b == 1:
        parts.append("x")
    elif b > 1:
        parts.append(f"x{b}")
    return "".join(parts) or "1"


def taft(n: int, field: Field, zeta) -> FinHopfAlgebra:
    """Taft family: dimension n^2, generators g (group-like, order n) and x
    with x^n = 0, x g = zeta g x, coproduct(x) = x (x) 1 + g (x) x.

    Basis monomials g^a x^b sit at index a*n + b (so for n = 2 the order is
    1, x, g, gx).  zeta must have multiplicative order exactly n; this is the
    package's stock source of an antipode whose square is not the identity.
    """
    if n < 2:
        raise InputError("taft needs n >= 2")
    zeta = field.coerce(zeta)
    power = field.one
    for k in range(1, n):
        power = field.mul(power, zeta)
        if power == field.one:
            raise InputError(f"zeta={zeta} has order {k}, expected {n}")
    if field.mul(power, zeta) != field.one:
        raise InputError(f"zeta={zeta} does not have order {n}")

    dim = n * n

    def idx(a, b):
        return a * n + b

    zeta_pow = [field.one]
    for _ in range(n * n):
        zeta_pow.append(field.mul(zeta_pow[-1], zeta))

    # monomial rule: (g^a x^b)(g^c x^d) = zeta^(bc) g^(a+c) x^(b+d), zero past x^n
    entries = {}
    for a, b, c, d in iter_product(range(n), repeat=4):
        if b + d >= n:
            continue
        entries[(idx(a, b), idx(c, d), idx((a + c) % n, b + d))] = zeta_pow[b * c]
    mult = Tensor(field, (dim, dim, dim), entries, _normalized=True)
    unit = Tensor(field, (dim,), {(idx(0, 0),): field.one}, _normalized=True)
    counit = Tensor(
        field, (dim,), {(idx(a, 0),): field.one for a in range(n)}, _normalized=True
    )

    names = [_monomial_name(a, b) for a in range(n) for b in range(n)]
    stub = FinHopfAlgebra.__new__(FinHopfAlgebra)
    stub.field, stub.dim, stub.mult = field, dim, mult
    stub._cache = {}
    sq = stub.square_product

    # comultiplication: extend the generator images multiplicatively
    d_g = Tensor(field, (dim, dim), {(idx(1, 0), idx(1, 0)): field.one})
    d_x = Tensor(
        field,
        (dim, dim),
        {(idx(0, 1), idx(0, 0)): field.one, (idx(1, 0), idx(0, 1)): field.one},
    )
    comult_entries = {}
    d_ga = Tensor(field, (dim, dim), {(idx(0, 0), idx(0, 0)): field.one})
    for a in range(n):
        d_power = d_ga
        for b in range(n):
            for (j, k), c in d_power.entries.items():
                comult_entries[(idx(a, b), j, k)] = c
            d_power = sq(d_power, d_x)
        d_ga = sq(d_ga, d_g)
    comult = Tensor(field, (dim, dim, dim), comult_entries, _normalized=True)

    # antipode: S(g) = g^(n-1), S(x) = -g^(n-1) x; S(g^a x^b) = S(x)^b S(g)^a
    rows = mult_rows(mult)

    def mul_vec(x: Tensor, y: Tensor) -> Tensor:
        out: dict[tuple, object] = {}
        for (i,), c in x.entries.items():
            for (j,), d in y.entries.items():
                for k, ck in rows.get((i, j), ()):
                    _acc(field, out, (k,), field.mul(field.mul(c, d), ck))
        return Tensor(field, (dim,), out, _normalized=True)

    def basis_v(a, b):
        return Tensor.basis(field, (dim,), (idx(a, b),))

    s_g = basis_v(n - 1, 0)
    s_x = basis_v(n - 1, 1).scale(field.neg(field.one))
    antipode_entries = {}
    s_ga = basis_v(0, 0)
    for a in range(n):
        sxb = basis_v(0, 0)
        for b in range(n):
            image = mul_vec(sxb, s_ga)
            for (j,), c in image.entries.items():
                antipode_entries[(idx(a, b), j)] = c
            sxb = mul_vec(sxb, s_x)
        s_ga = mul_vec(s_ga, s_g)
    antipode = Tensor(field, (dim, dim), antipode_entries, _normalized=True)

    H = FinHopfAlgebra(
        field, mult, unit, comult, counit, antipode, basis_names=names,
        name=f"taft({n},{field})",
    )
    report = verify_hopf_axioms(H)
    if not report.passed:
        raise InternalConsistencyError(
            f"taft({n}) fails '{report.axiom}' at {report.witness}"
        )
    return H


def sweedler(field: Field | None = None) -> FinHopfAlgebra:
    """The 4-dimensional Taft algebra (zeta = -1)."""
    field = field or rationals()
    H = taft(2, field, field.neg(field.one))
    H.name = "sweedler"
    return H


def builtin_hopf(name: str, **params) -> FinHopfAlgebra:
    """Construct one of the builtin families by name."""
    if name == "group_algebra":
        return group_algebra(params["group"], params.get("field"))
    if name == "function_algebra":
        return function_algebra(params["group"], params.get("field"))
    if name == "sweedler":
        return sweedler(params.get("field"))
    if name == "taft":
        return taft(params["n"], params["field"], params["zeta"])
    raise InputError(f"unknown builtin family {name!r}")


# -- group-likes and characters --------------------------------------------------


def check_element(H: FinHopfAlgebra, v: Tensor, kind: str) -> bool:
    """Test a vector for group-likeness, or a covector for being a character."""
    H.require_verified()
    if v.shape != (H.dim,):
        raise ShapeError(f"element shape {v.shape} does not match dim {H.dim}")
    f = H.field
    if kind == "group_like":
        cop = v.contract(H.comult, [(0, 0)])
        return cop == v.contract(v, []) and H.counit_of(v) == f.one
    if kind == "character":
        pairing = v.contract(v, [])  # delta(e_i) delta(e_j) as a matrix
        on_products = H.mult.contract(v, [(2, 0)])
        unit_value = H.unit.contract(v, [(0, 0)]).get(())
        return on_products == pairing and unit_value == f.one
    raise InputError(f"unknown element kind {kind!r}")


def find_group_likes(H: FinHopfAlgebra):
    """Exhaustively enumerate group-like elements over a small prime field."""
    H.require_verified()
    f = H.field
    if f.p is None:
        raise GuardError(
            "group-like enumeration needs a prime field; "
            "pass candidate vectors to check_element instead"
        )
    if f.p**H.dim > GROUP_LIKE_GUARD:
        raise GuardError(
            f"{f.p}^{H.dim} exceeds the enumeration guard ({GROUP_LIKE_GUARD}); "
            "pass candidate vectors to check_element instead"
        )
    found = []
    for coords in iter_product(range(f.p), repeat=H.dim):
        entries = {(i,): c for i, c in enumerate(coords) if c}
        if not entries:
            continue
        v = Tensor(f, (H.dim,), entries, _normalized=True)
        if H.counit_of(v) != f.one:
            continue
        if check_element(H, v, "group_like"):
            found.append(v)
    return found


def find_characters(H: FinHopfAlgebra):
    """Characters of H are exactly the group-likes of the dual."""
    return find_group_likes(dual_hopf(H))


# re-exported convenience constructors

__all__ = [
    "FinHopfAlgebra",
    "Report",
    "verify_hopf_axioms",
    "antipode_inverse",
    "iterated_coproduct",
    "dual_hopf",
    "variant",
    "group_algebra",
    "function_algebra",
    "sweedler",
    "taft",
    "builtin_hopf",
    "check_element",
    "find_group_likes",
    "find_characters",
    "cyclic",
    "symmetric",
]
