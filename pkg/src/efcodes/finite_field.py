"""Exact arithmetic in GF(q), q = p^s, and vectors over F_q^m.

An element is stored as a plain integer in [0, q) whose base-p digits,
least significant first, are its coordinates in the polynomial basis
(1, x, ..., x^(s-1)).  The identification of F_q with F_p^s used by the
character sums downstream is therefore the identity on stored data.

The modulus is pinned deterministically: the lexicographically least monic
irreducible of degree s over F_p, coefficients compared low degree first.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import FieldError

MAX_ORDER = 1 << 16
# Full q x q lookup tables are built below this order; larger fields fall
# back to digit arithmetic per call.
_TABLE_CAP = 1 << 10

_OPS = ("add", "mul", "neg", "inv")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for f in (2, 3):
        if n % f == 0:
            return n == f
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _poly_divmod(num: list[int], den: list[int], p: int):
    """Quotient and remainder of coefficient lists (low degree first) over F_p."""
    num = [c % p for c in num]
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = (c * inv_lead) % p
            quot[i - dd] = f
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - f * dc) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            _, rem = _poly_divmod(poly, list(low) + [1], p)
            if rem == [0]:
                return False
    return True


def _least_irreducible(p: int, s: int) -> tuple[int, ...]:
    # product() yields the low-coefficient tuples in increasing
    # lexicographic order, so the first irreducible hit is canonical.
    for low in product(range(p), repeat=s):
        cand = list(low) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {s} over F_{p}")  # pragma: no cover


class FieldSpec:
    """Immutable description of GF(p^s), with lookup tables for small q."""

    def __init__(self, p: int, s: int):
        if not _is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if s < 1:
            raise FieldError(f"s = {s} must be positive")
        q = p**s
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds the {MAX_ORDER} cap")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = _least_irreducible(p, s)
        self._conj_table = None
        if q <= _TABLE_CAP:
            self._build_tables()
        else:
            self.add_table = None
            self.mul_table = None
            self.neg_table = None
            self.inv_table = None
        # Element order used everywhere an order on F_q is needed:
        # lexicographic on coefficient vectors, low degree compared first.
        self.coeff_order = sorted(range(q), key=self.coeffs)
        self.coeff_rank = [0] * q
        for r, a in enumerate(self.coeff_order):
            self.coeff_rank[a] = r

    # -- representation ------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coordinates of a, low degree first."""
        p = self.p
        return tuple((a // p**i) % p for i in range(self.s))

    def from_coeffs(self, cs) -> int:
        p = self.p
        a = 0
        for i, c in enumerate(cs):
            a += (c % p) * p**i
        return a

    def __repr__(self):
        return f"FieldSpec(p={self.p}, s={self.s}, modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.s) == (other.p, other.s)
        )

    def __hash__(self):
        return hash((self.p, self.s))

    # -- table construction ---------------------------------------------

    def _build_tables(self):
        p, s, q = self.p, self.s, self.q
        digits = np.array(
            [[(a // p**i) % p for i in range(s)] for a in range(q)], dtype=np.int64
        )
        powers = p ** np.arange(s, dtype=np.int64)
        add_digits = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (add_digits @ powers).astype(np.int32)
        self.neg_table = (((-digits) % p) @ powers).astype(np.int32)

        # x^k mod modulus for k = 0 .. 2s-2, as digit rows over F_p.
        reds = np.zeros((2 * s - 1, s), dtype=np.int64)
        cur = [0] * s
        cur[0] = 1
        reds[0] = cur
        for k in range(1, 2 * s - 1):
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                # x^s = -(low part of modulus)
                for j in range(s):
                    cur[j] = (cur[j] - carry * self.modulus[j]) % p
            reds[k] = cur

        acc = np.zeros((q, q, s), dtype=np.int64)
        for k in range(2 * s - 1):
            lo = max(0, k - s + 1)
            conv_k = np.zeros((q, q), dtype=np.int64)
            for i in range(lo, min(k, s - 1) + 1):
                conv_k += digits[:, None, i] * digits[None, :, k - i]
            acc += conv_k[:, :, None] * reds[k][None, None, :]
        self.mul_table = ((acc % p) @ powers).astype(np.int32)

        inv = np.zeros(q, dtype=np.int32)
        hits = np.argwhere(self.mul_table == 1)
        inv[hits[:, 0]] = hits[:, 1]
        self.inv_table = inv

    # -- scalar arithmetic ------------------------------------------------

    def _check(self, a: int):
        if not 0 <= a < self.q:
            raise FieldError(f"element {a} outside [0, {self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.add_table is not None:
            return int(self.add_table[a, b])
        p = self.p
        return self.from_coeffs(
            (x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))
        )

    def neg(self, a: int) -> int:
        self._check(a)
        if self.neg_table is not None:
            return int(self.neg_table[a])
        p = self.p
        return self.from_coeffs((-x) % p for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        p = self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        _, rem = _poly_divmod(prod, list(self.modulus), p)
        rem += [0] * (self.s - len(rem))
        return self.from_coeffs(rem)

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise FieldError("inversion of zero")
        if self.inv_table is not None:
            return int(self.inv_table[a])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1 if self.q > 1 else 0
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def conjugate(self, a: int) -> int:
        """a -> a^sqrt(q), the involutive automorphism fixing F_sqrt(q)."""
        if self.s % 2:
            raise FieldError(
                f"field order {self.q} is not a perfect square; no conjugation"
            )
        if self._conj_table is None:
            r = self.p ** (self.s // 2)
            self._conj_table = [self.pow(a0, r) for a0 in range(self.q)]
        self._check(a)
        return self._conj_table[a]

    def dot(self, u, v) -> int:
        if len(u) != len(v):
            raise FieldError(f"length mismatch {len(u)} vs {len(v)}")
        acc = 0
        for x, y in zip(u, v):
            acc = self.add(acc, self.mul(x, y))
        return acc


@lru_cache(maxsize=None)
def make_field(p: int, s: int) -> FieldSpec:
    """Deterministic realization of GF(p^s); cached, immutable, shareable."""
    return FieldSpec(p, s)


def field_for_order(q: int) -> FieldSpec:
    """The field of order q, for call sites that only carry a prime power."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    s = 0
    rest = q
    while rest % p == 0 and rest > 1:
        rest //= p
        s += 1
    if rest != 1:
        raise FieldError(f"q = {q} is not a prime power")
    return make_field(p, s)


def field_arith(field: FieldSpec, a: int, b: int | None, op: str) -> int:
    """Scalar arithmetic dispatch; b is ignored for the unary ops neg/inv."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise FieldError(f"unknown op {op!r}; expected one of {_OPS}")


def inner_product(field: FieldSpec, u, v) -> int:
    """Sum of u_i * v_i in F_q."""
    return field.dot(u, v)


def conjugate(field: FieldSpec, a: int) -> int:
    return field.conjugate(a)


# -- bulk helpers -----------------------------------------------------------
#
# The enumeration-heavy modules work on integer numpy arrays of elements.
# These helpers keep all of that in table lookups.


def dot_rows(field: FieldSpec, rows: np.ndarray, beta) -> np.ndarray:
    """Inner products <beta, t> for every row t of rows (shape (N, m))."""
    rows = np.asarray(rows)
    if rows.ndim != 2 or rows.shape[1] != len(beta):
        raise FieldError("shape mismatch in dot_rows")
    if field.s == 1:
        return (rows @ np.asarray(beta, dtype=np.int64)) % field.p
    if field.mul_table is None:
        return np.array([field.dot(row, beta) for row in rows], dtype=np.int64)
    acc = np.zeros(len(rows), dtype=np.int64)
    for c, bc in enumerate(beta):
        if bc:
            acc = field.add_table[acc, field.mul_table[rows[:, c], bc]]
    return acc


def add_arrays(field: FieldSpec, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Elementwise field addition of integer arrays (broadcasting allowed)."""
    if field.s == 1:
        return (u + v) % field.p
    if field.add_table is None:
        raise FieldError("bulk addition unavailable for large extension fields")
    return field.add_table[u, v]


def scale_array(field: FieldSpec, scalar: int, arr: np.ndarray) -> np.ndarray:
    """scalar * arr elementwise over F_q."""
    if field.s == 1:
        return (scalar * arr) % field.p
    if field.mul_table is None:
        raise FieldError("bulk scaling unavailable for large extension fields")
    return field.mul_table[scalar, arr]


def outer_dots(field: FieldSpec, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """All pairwise inner products: (N, m) x (M, m) -> (N, M)."""
    left = np.asarray(left)
    right = np.asarray(right)
    if left.shape[1] != right.shape[1]:
        raise FieldError("shape mismatch in outer_dots")
    n, m = left.shape
    acc = np.zeros((n, len(right)), dtype=np.int64)
    if field.s == 1:
        return (left @ right.T) % field.p
    if field.mul_table is None:
        raise FieldError("bulk products unavailable for large extension fields")
    for c in range(m):
        acc = field.add_table[acc, field.mul_table[left[:, c][:, None], right[:, c][None, :]]]
    return acc


def field_matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(N, k) x (k, n) matrix product over F_q."""
    a = np.asarray(a)
    b = np.asarray(b)
    if field.s == 1:
        return (a.astype(np.int64) @ b.astype(np.int64)) % field.p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        col = a[:, j]
        acc = field.add_table[acc, field.mul_table[col[:, None], b[j][None, :]]]
    return acc


def field_sum(field: FieldSpec, arr: np.ndarray, axis: int) -> np.ndarray:
    """Field-add all entries along one axis.

    Elements encode polynomial coefficients base p, so field addition is
    digit-wise addition mod p and reduces with plain integer sums.
    """
    arr = np.asarray(arr)
    if field.s == 1:
        return arr.sum(axis=axis, dtype=np.int64) % field.p
    if field.p == 2:
        # Characteristic 2: digit-wise mod 2 is XOR of the encodings.
        return np.bitwise_xor.reduce(arr, axis=axis).astype(np.int64)
    p = field.p
    total = 0
    for i in range(field.s):
        digit = (arr // p**i) % p
        total = total + (digit.sum(axis=axis, dtype=np.int64) % p) * p**i
    return total


def gram_matrix(field: FieldSpec, rows: np.ndarray, right: np.ndarray | None = None) -> np.ndarray:
    """All pairwise inner products of rows (k, n) with right (k', n)."""
    rows = np.asarray(rows)
    right = rows if right is None else np.asarray(right)
    if rows.shape[1] != right.shape[1]:
        raise FieldError("shape mismatch in gram_matrix")
    if field.s == 1:
        return (rows.astype(np.int64) @ right.T.astype(np.int64)) % field.p
    if field.mul_table is None:
        raise FieldError("bulk products unavailable for large extension fields")
    k, kr, n = rows.shape[0], right.shape[0], rows.shape[1]
    if k == 0 or kr == 0 or n == 0:
        return np.zeros((k, kr), dtype=np.int64)
    chunk = max(1, (1 << 22) // max(k * kr, 1))
    gram = np.zeros((k, kr), dtype=np.int64)
    for start in range(0, n, chunk):
        prods = field.mul_table[
            rows[:, None, start : start + chunk], right[None, :, start : start + chunk]
        ]
        gram = field.add_table[gram, field_sum(field, prods, axis=2)]
    return gram


def rref(field: FieldSpec, mat) -> np.ndarray:
    """Row-reduced echelon form over F_q; returns only the nonzero rows."""
    mat = np.array(mat, dtype=np.int64)
    if mat.ndim != 2:
        mat = mat.reshape(0, 0)
    rows = mat.shape[0]
    r = 0
    while r < rows:
        # First column with a nonzero entry in the unreduced rows.
        live = np.flatnonzero((mat[r:] != 0).any(axis=0))
        if not len(live):
            break
        c = int(live[0])
        piv = r + int((mat[r:, c] != 0).argmax())
        mat[[r, piv]] = mat[[piv, r]]
        mat[r] = scale_array(field, field.inv(int(mat[r, c])), mat[r])
        for i in range(rows):
            if i != r and mat[i, c]:
                f = field.neg(int(mat[i, c]))
                mat[i] = add_arrays(field, mat[i], scale_array(field, f, mat[r]))
        r += 1
    return mat[:r]


def in_row_space(field: FieldSpec, rref_rows: np.ndarray, vec) -> bool:
    """Whether vec lies in the span of rows already in RREF.

    Each RREF row is the unique basis vector with a 1 in its pivot column,
    so the only candidate combination reads its coefficients straight off
    the pivot positions of vec.
    """
    vec = np.asarray(vec, dtype=np.int64)
    rows = np.asarray(rref_rows, dtype=np.int64)
    rows = rows[(rows != 0).any(axis=1)]
    if not len(rows):
        return not vec.any()
    pivots = (rows != 0).argmax(axis=1)
    coeffs = vec[pivots]
    candidate = field_matmul(field, coeffs[None, :], rows)[0]
    return bool(np.array_equal(vec, candidate))
