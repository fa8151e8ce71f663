"""Finite fields GF(p^k) and dense matrices over them.

Field elements are encoded as integers ``0 <= x < p^k``: the base-p digits of
``x`` are the coefficients of a polynomial modulo the field's modulus, lowest
degree first.  Extension fields use a fixed table of Conway polynomials, so
``x`` (encoded as ``p``) is always a primitive element and constructions are
bit-for-bit reproducible.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from pathlib import Path

from .errors import CapExceeded, ParseError
from .numbers import factorint, isprime

# Conway polynomials, coefficients lowest degree first (monic).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (5, 2): (2, 4, 1),
}

MAX_PRIME_FIELD = 2**16


class FieldSpec:
    """The field GF(p^k)."""

    def __init__(self, p: int, k: int = 1):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        if k == 1:
            if p > MAX_PRIME_FIELD:
                raise ValueError(f"prime fields are supported up to {MAX_PRIME_FIELD}")
            modulus = (0, 1)
        elif (p, k) in CONWAY:
            modulus = CONWAY[p, k]
        else:
            raise ValueError(f"GF({p}^{k}) is not in the modulus table")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        if k > 1:
            self._build_tables()
            self._primitive = p
        else:
            self._primitive = None

    # -- construction -------------------------------------------------------

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def _encode(self, digits) -> int:
        x = 0
        for d in reversed(list(digits)):
            x = x * self.p + d % self.p
        return x

    def _times_x(self, digits: list[int]) -> list[int]:
        p, k = self.p, self.k
        top = digits[-1]
        shifted = [0] + digits[:-1]
        return [(shifted[i] - top * self.modulus[i]) % p for i in range(k)]

    def _build_tables(self) -> None:
        q = self.q
        self._add = [[self._encode(a + b for a, b in zip(self._digits(x), self._digits(y)))
                      for y in range(q)] for x in range(q)]
        self._exp = [0] * (2 * (q - 1))
        self._log = [0] * q
        cur = [1] + [0] * (self.k - 1)
        for i in range(q - 1):
            e = self._encode(cur)
            self._exp[i] = e
            self._log[e] = i
            cur = self._times_x(cur)
        if len(set(self._exp[: q - 1])) != q - 1:
            raise ValueError(f"modulus for GF({q}) is not primitive")
        for i in range(q - 1, 2 * (q - 1)):
            self._exp[i] = self._exp[i - (q - 1)]

    # -- arithmetic on encoded ints -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._encode(-d for d in self._digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def primitive_element(self) -> int:
        if self._primitive is None:
            self._primitive = _primitive_root(self.p)
        return self._primitive

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r, k in factorint(n).items():
            for _ in range(k):
                if self.pow(a, n // r) == 1:
                    n //= r
                else:
                    break
        return n

    def coefficients(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def from_coefficients(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for GF({self.q})")
        return self._encode(coeffs + [0] * (self.k - len(coeffs)))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, (tuple, list)):
            value = self.from_coefficients(value)
        elif self.k == 1:
            value = int(value) % self.p
        elif not 0 <= value < self.q:
            raise ValueError(f"{value} does not encode an element of GF({self.q})")
        return FieldElement(self, int(value))

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    return FieldSpec(p, k)


def field_of_order(q: int) -> FieldSpec:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return field_make(p, k)


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


class FieldElement:
    """A field element with operator syntax; wraps the integer encoding."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def order(self) -> int:
        return self.field.mult_order(self.value)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coefficients(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field(other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"{self.value} in {self.field!r}"
        return f"{self.coefficients} in {self.field!r}"


# -- matrices -----------------------------------------------------------------


class Matrix:
    """Dense matrix over a :class:`FieldSpec`, with integer-encoded entries."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field: FieldSpec, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        for r in rows:
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} outside GF({field.q})")
        self.field = field
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, field: FieldSpec, entries) -> Matrix:
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def permutation(cls, field: FieldSpec, images) -> Matrix:
        """Matrix sending basis vector ``e_j`` to ``e_images[j]``."""
        n = len(images)
        return cls(field, [[1 if images[j] == i else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def companion(cls, field: FieldSpec, coeffs) -> Matrix:
        """Companion matrix of the monic polynomial with lower coefficients ``coeffs``."""
        n = len(coeffs)
        f = field
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = 1
        for i in range(n):
            rows[i][n - 1] = f.neg(coeffs[i] % f.q if f.k == 1 else coeffs[i])
        return cls(field, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Matrix) -> bool:
        return self.rows < other.rows

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(f, out)

    def __add__(self, other: Matrix) -> Matrix:
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: int) -> Matrix:
        f = self.field
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def apply(self, v) -> tuple[int, ...]:
        """Matrix times column vector."""
        f = self.field
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def det(self) -> int:
        """Determinant by Gaussian elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        f = self.field
        a = [list(r) for r in self.rows]
        n = len(a)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = f.neg(d)
            d = f.mul(d, a[c][c])
            inv = f.inv(a[c][c])
            for r in range(c + 1, n):
                if a[r][c]:
                    m = f.mul(a[r][c], inv)
                    a[r] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[r], a[c])]
        return d

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        f = self.field
        n = self.nrows
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            inv = f.inv(a[c][c])
            a[c] = [f.mul(inv, x) for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    m = a[r][c]
                    a[r] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[r], a[c])]
        return Matrix(f, [r[n:] for r in a])

    def __pow__(self, e: int) -> Matrix:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Matrix.identity(self.field, self.nrows)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def nullspace(self) -> list[tuple[int, ...]]:
        """A basis of ``{v : Mv = 0}`` by row reduction."""
        f = self.field
        a = [list(r) for r in self.rows]
        n = self.ncols
        pivots = []
        row = 0
        for c in range(n):
            piv = next((r for r in range(row, len(a)) if a[r][c]), None)
            if piv is None:
                continue
            a[row], a[piv] = a[piv], a[row]
            inv = f.inv(a[row][c])
            a[row] = [f.mul(inv, x) for x in a[row]]
            for r in range(len(a)):
                if r != row and a[r][c]:
                    m = a[r][c]
                    a[r] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[r], a[row])]
            pivots.append(c)
            row += 1
        basis = []
        for free in (c for c in range(n) if c not in pivots):
            v = [0] * n
            v[free] = 1
            for r, c in enumerate(pivots):
                v[c] = f.neg(a[r][free])
            basis.append(tuple(v))
        return basis

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.nrows)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def order(self, limit: int = 10**6) -> int:
        m = self
        for k in range(1, limit + 1):
            if m.is_identity():
                return k
            m = m @ self
        raise ValueError("matrix order exceeds limit")

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]})"


def has_eigenvalue_one(M: Matrix) -> bool:
    """True iff ``det(M - I) == 0``."""
    if not M.is_square:
        raise ValueError("eigenvalues of a non-square matrix")
    return (M - Matrix.identity(M.field, M.nrows)).det() == 0


def is_monomial(M: Matrix) -> bool:
    """Exactly one nonzero entry in every row and every column."""
    if not M.is_square:
        return False
    if any(sum(1 for x in r if x) != 1 for r in M.rows):
        return False
    return all(sum(1 for x in c if x) == 1 for c in zip(*M.rows))


def monomial_lemma_check(M: Matrix, p: int) -> bool:
    """For a monomial ``M`` with ``M^p = I``, report whether 1 is an eigenvalue.

    The result must be True whenever ``M`` is monomial and not diagonal; callers
    assert that.  Raises if ``M^p != I``.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not (M**p).is_identity():
        raise ValueError("precondition M^p = I does not hold")
    return has_eigenvalue_one(M)


def matrix_group_closure(gens, cap: int = 100_000) -> list[Matrix]:
    """Every product of the generators; sorted, identity first."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the field and size")
    f, n = gens[0].field, gens[0].nrows
    for g in gens:
        if g.det() == 0:
            raise ValueError("singular generator")
    ident = Matrix.identity(f, n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"matrix group closure exceeds cap {cap}")
        frontier = nxt
    rest = sorted(seen - {ident})
    return [ident] + rest


# -- text format ----------------------------------------------------------------

_FIELD_RE = re.compile(r"^GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)$", re.IGNORECASE)
_ENTRY_RE = re.compile(r"\([^()]*\)|[^\s,;\[\]]+")


def parse_field(text: str) -> FieldSpec:
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ParseError(f"expected a field line like GF(3) or GF(2^3), got {text!r}")
    p, k = int(m.group(1)), int(m.group(2) or 1)
    try:
        if m.group(2) is None and not isprime(p):
            return field_of_order(p)
        return field_make(p, k)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_entry(f: FieldSpec, tok: str) -> int:
    tok = tok.strip()
    try:
        if tok.startswith("("):
            coeffs = [int(t) for t in re.split(r"[\s,]+", tok[1:-1].strip()) if t]
            return f.from_coefficients(c % f.p for c in coeffs)
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad field element {tok!r}") from None
    if f.k == 1:
        return v % f.p
    if not 0 <= v < f.p:
        raise ParseError(f"bare integer {v} is not a prime-field element of {f!r}")
    return v


def parse_matrix_group(text: str) -> tuple[FieldSpec, list[Matrix]]:
    """Parse a field line followed by one row-major generator per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix group definition")
    f = parse_field(lines[0])
    gens = []
    for line in lines[1:]:
        entries = [_parse_entry(f, t) for t in _ENTRY_RE.findall(line)]
        n = int(round(len(entries) ** 0.5))
        if n * n != len(entries) or n == 0:
            raise ParseError(f"generator with {len(entries)} entries is not square: {line!r}")
        gens.append(Matrix(f, [entries[i * n:(i + 1) * n] for i in range(n)]))
    if gens and any(g.nrows != gens[0].nrows for g in gens):
        raise ParseError("generators of different sizes")
    return f, gens


def load_matrix_group(path) -> tuple[FieldSpec, list[Matrix]]:
    return parse_matrix_group(Path(path).read_text())


def format_matrix_group(f: FieldSpec, gens) -> str:
    head = f"GF({f.p}^{f.k})" if f.k > 1 else f"GF({f.p})"

    def entry(x: int) -> str:
        if f.k == 1:
            return str(x)
        return "(" + ",".join(map(str, f.coefficients(x))) + ")"

    lines = [head] + [" ".join(entry(x) for r in g.rows for x in r) for g in gens]
    return "\n".join(lines) + "\n"


def all_vectors(f: FieldSpec, n: int):
    return product(range(f.q), repeat=n)
