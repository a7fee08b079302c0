"""Small finite commutative rings with nonzero identity, given by operation tables.

Elements are indices 0..order-1; addition and multiplication are explicit
order x order tables.  Every constructor verifies the ring axioms
exhaustively while the order stays at or below VERIFY_CAP.
"""

from __future__ import annotations

import itertools

from .errors import (
    InternalInconsistency,
    InvalidModule,
    InvalidModulus,
    InvalidOrder,
    ParseError,
    PhiRingRequired,
    TooLarge,
)

ORDER_CAP = 64          # cap for derived constructions (products, trivial extensions)
TRUNC_ORDER_CAP = 256   # cap for truncated polynomial rings
VERIFY_CAP = 64         # exhaustive axiom verification up to this order

_VAR_NAMES = ("x", "y", "z", "w")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FiniteRing:
    """A commutative unital ring on {0, .., order-1} with explicit tables.

    Immutable after construction; derived element sets (units, nilpotents,
    zerodivisors) are computed once and cached.
    """

    def __init__(self, order, add_table, mul_table, zero, one, label,
                 elem_names=None, verify=True):
        self.order = order
        self.add_table = tuple(tuple(row) for row in add_table)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.zero = zero
        self.one = one
        self.label = label
        self.elem_names = tuple(elem_names) if elem_names else tuple(
            str(i) for i in range(order))
        self._name_to_index = {nm: i for i, nm in enumerate(self.elem_names)}
        self._nilpotents = None
        self._units = None
        self._neg = None
        self._ideal_cache = None
        self._content_cache = {}
        if verify and order <= VERIFY_CAP:
            self._verify_axioms()

    def __repr__(self):
        return f"FiniteRing({self.label}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        if self._neg is None:
            neg = [None] * self.order
            for x in self.elements():
                for y in self.elements():
                    if self.add_table[x][y] == self.zero:
                        neg[x] = y
                        break
            self._neg = tuple(neg)
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg(b)]

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.mul_table[r][a]
        return r

    def elem_name(self, i: int) -> str:
        return self.elem_names[i]

    def elem_index(self, name: str) -> int:
        if name in self._name_to_index:
            return self._name_to_index[name]
        try:
            i = int(name)
        except ValueError:
            raise ParseError(f"unknown element name {name!r} in {self.label}")
        if not 0 <= i < self.order:
            raise ParseError(f"element index {i} out of range for {self.label}")
        return i

    def nilpotents(self) -> frozenset:
        """Indices x with x^k = 0 for some k (k <= order suffices)."""
        if self._nilpotents is None:
            out = set()
            for x in self.elements():
                seen = set()
                p = x
                while p not in seen:
                    seen.add(p)
                    if p == self.zero:
                        out.add(x)
                        break
                    p = self.mul_table[p][x]
            self._nilpotents = frozenset(out)
        return self._nilpotents

    def units(self) -> frozenset:
        if self._units is None:
            one = self.one
            self._units = frozenset(
                x for x in self.elements()
                if any(self.mul_table[x][y] == one for y in self.elements()))
        return self._units

    def zerodivisors(self) -> frozenset:
        """Elements x with x*y = 0 for some y != 0; includes 0 when order > 1."""
        zero = self.zero
        return frozenset(
            x for x in self.elements()
            if any(self.mul_table[x][y] == zero for y in self.elements() if y != zero))

    def _verify_axioms(self):
        n, add, mul = self.order, self.add_table, self.mul_table
        zero, one = self.zero, self.one
        if zero == one:
            raise InvalidOrder("zero ring excluded: identity must be nonzero")
        rng = range(n)
        for a in rng:
            if add[a][zero] != a or mul[a][one] != a:
                raise InternalInconsistency(f"identity axiom fails at {a} in {self.label}")
            if not any(add[a][b] == zero for b in rng):
                raise InternalInconsistency(f"no additive inverse for {a} in {self.label}")
            for b in rng:
                if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                    raise InternalInconsistency(f"commutativity fails in {self.label}")
        for a in rng:
            for b in rng:
                ab, mab = add[a][b], mul[a][b]
                for c in rng:
                    if add[ab][c] != add[a][add[b][c]]:
                        raise InternalInconsistency(f"+ associativity fails in {self.label}")
                    if mul[mab][c] != mul[a][mul[b][c]]:
                        raise InternalInconsistency(f"* associativity fails in {self.label}")
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise InternalInconsistency(f"distributivity fails in {self.label}")


class FiniteModule:
    """A finite module over a FiniteRing: additive table plus a scalar action."""

    def __init__(self, ring: FiniteRing, order, add_table, action_table, label,
                 zero=0, verify=True):
        self.ring = ring
        self.order = order
        self.add_table = tuple(tuple(row) for row in add_table)
        self.action_table = tuple(tuple(row) for row in action_table)
        self.zero = zero
        self.label = label
        if verify and order * ring.order <= VERIFY_CAP * VERIFY_CAP:
            self._verify()

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def act(self, r: int, x: int) -> int:
        return self.action_table[r][x]

    def _verify(self):
        R, n = self.ring, self.order
        rng = range(n)
        for x in rng:
            if self.add_table[x][self.zero] != x:
                raise InvalidModule(f"additive identity fails in {self.label}")
            if not any(self.add_table[x][y] == self.zero for y in rng):
                raise InvalidModule(f"no additive inverse in {self.label}")
            if self.action_table[R.one][x] != x:
                raise InvalidModule(f"unital action fails in {self.label}")
            for y in rng:
                if self.add_table[x][y] != self.add_table[y][x]:
                    raise InvalidModule(f"addition not commutative in {self.label}")
                for z in rng:
                    if self.add_table[self.add_table[x][y]][z] != \
                            self.add_table[x][self.add_table[y][z]]:
                        raise InvalidModule(f"addition not associative in {self.label}")
        for r in R.elements():
            for s in R.elements():
                rs_add, rs_mul = R.add(r, s), R.mul(r, s)
                for x in rng:
                    if self.action_table[rs_add][x] != \
                            self.add_table[self.action_table[r][x]][self.action_table[s][x]]:
                        raise InvalidModule(f"action not additive in r in {self.label}")
                    if self.action_table[rs_mul][x] != \
                            self.action_table[r][self.action_table[s][x]]:
                        raise InvalidModule(f"action not multiplicative in {self.label}")
            for x in rng:
                for y in rng:
                    if self.action_table[r][self.add_table[x][y]] != \
                            self.add_table[self.action_table[r][x]][self.action_table[r][y]]:
                        raise InvalidModule(f"action not additive in m in {self.label}")


def make_zn(n: int) -> FiniteRing:
    """The ring Z/nZ."""
    if n <= 1:
        raise InvalidOrder(f"make_zn requires n >= 2, got {n}")
    rng = range(n)
    add = [[(a + b) % n for b in rng] for a in rng]
    mul = [[(a * b) % n for b in rng] for a in rng]
    return FiniteRing(n, add, mul, 0, 1 % n, f"Zn:{n}")


def make_truncated_poly(p: int, exps: list[int], cap: int = TRUNC_ORDER_CAP) -> FiniteRing:
    """F_p[x1..xk] / (x1^e1, .., xk^ek), elements as coefficient vectors.

    Monomials x1^a1..xk^ak with ai < ei are enumerated in lexicographic
    exponent order; an element is a base-p digit vector over that list.
    """
    if not _is_prime(p):
        raise InvalidModulus(f"p must be prime, got {p}")
    if not exps or any(e < 1 for e in exps):
        raise InvalidOrder(f"exponents must be >= 1, got {exps}")
    monos = list(itertools.product(*[range(e) for e in exps]))
    m = len(monos)
    order = p ** m
    if order > cap:
        raise TooLarge(f"order {order} exceeds cap {cap}")
    mono_index = {mo: i for i, mo in enumerate(monos)}
    k = len(exps)

    # product of two monomials, or None when any exponent overflows
    mono_prod = [[None] * m for _ in range(m)]
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            c = tuple(a[t] + b[t] for t in range(k))
            if all(c[t] < exps[t] for t in range(k)):
                mono_prod[i][j] = mono_index[c]

    def decode(idx):
        v = []
        for _ in range(m):
            idx, r = divmod(idx, p)
            v.append(r)
        return v

    def encode(v):
        idx = 0
        for c in reversed(v):
            idx = idx * p + c
        return idx

    vectors = [decode(i) for i in range(order)]
    add = [[encode([(va[t] + vb[t]) % p for t in range(m)]) for vb in vectors]
           for va in vectors]
    mul = []
    for va in vectors:
        row = []
        for vb in vectors:
            acc = [0] * m
            for i in range(m):
                if va[i] == 0:
                    continue
                for j in range(m):
                    if vb[j] == 0:
                        continue
                    t = mono_prod[i][j]
                    if t is not None:
                        acc[t] = (acc[t] + va[i] * vb[j]) % p
            row.append(encode(acc))
        mul.append(row)

    names = []
    var = _VAR_NAMES if k <= len(_VAR_NAMES) else tuple(f"x{i+1}" for i in range(k))

    def mono_name(mo):
        parts = [var[t] if e == 1 else f"{var[t]}^{e}"
                 for t, e in enumerate(mo) if e > 0]
        return "*".join(parts) if parts else "1"

    for v in vectors:
        terms = []
        for i, c in enumerate(v):
            if c == 0:
                continue
            nm = mono_name(monos[i])
            terms.append(nm if c == 1 else
                         (str(c) if nm == "1" else f"{c}*{nm}"))
        names.append("+".join(terms) if terms else "0")

    label = f"trunc:{p}:" + ",".join(str(e) for e in exps)
    return FiniteRing(order, add, mul, 0, 1, label, elem_names=names)


def module_zm(ring: FiniteRing, m: int) -> FiniteModule:
    """Z/mZ as a module over Zn:n via reduction; requires m | n."""
    if not ring.label.startswith("Zn:"):
        raise InvalidModule(f"Zm modules are only defined over Zn rings, got {ring.label}")
    n = ring.order
    if m < 1 or n % m != 0:
        raise InvalidModule(f"Zm:{m} is not a Zn:{n}-module (m must divide n)")
    rng = range(m)
    add = [[(x + y) % m for y in rng] for x in rng]
    act = [[(r * x) % m for x in rng] for r in ring.elements()]
    return FiniteModule(ring, m, add, act, f"Zm:{m}")


def module_self(ring: FiniteRing) -> FiniteModule:
    """The ring itself as a module (regular action)."""
    return FiniteModule(ring, ring.order, ring.add_table, ring.mul_table, "self",
                        zero=ring.zero, verify=False)


def make_trivial_ext(A: FiniteRing, M: FiniteModule) -> FiniteRing:
    """Trivial extension on A x M: (r1,m1)*(r2,m2) = (r1 r2, r1 m2 + r2 m1)."""
    if M.ring is not A:
        raise InvalidModule("module is defined over a different ring")
    order = A.order * M.order
    if order > ORDER_CAP:
        raise TooLarge(f"order {order} exceeds cap {ORDER_CAP}")
    mo = M.order

    def enc(a, x):
        return a * mo + x

    add = [[0] * order for _ in range(order)]
    mul = [[0] * order for _ in range(order)]
    for a in A.elements():
        for x in range(mo):
            i = enc(a, x)
            for b in A.elements():
                for y in range(mo):
                    j = enc(b, y)
                    add[i][j] = enc(A.add(a, b), M.add(x, y))
                    mul[i][j] = enc(A.mul(a, b), M.add(M.act(a, y), M.act(b, x)))
    names = [f"({A.elem_name(a)},{x})" for a in A.elements() for x in range(mo)]
    label = f"triv:{A.label}|{M.label}"
    return FiniteRing(order, add, mul, enc(A.zero, M.zero), enc(A.one, M.zero),
                      label, elem_names=names)


def make_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Componentwise product ring R x S."""
    order = R.order * S.order
    if order > ORDER_CAP:
        raise TooLarge(f"order {order} exceeds cap {ORDER_CAP}")
    so = S.order

    def enc(a, b):
        return a * so + b

    add = [[0] * order for _ in range(order)]
    mul = [[0] * order for _ in range(order)]
    for a in R.elements():
        for b in S.elements():
            i = enc(a, b)
            for c in R.elements():
                for d in S.elements():
                    j = enc(c, d)
                    add[i][j] = enc(R.add(a, c), S.add(b, d))
                    mul[i][j] = enc(R.mul(a, c), S.mul(b, d))
    names = [f"({R.elem_name(a)},{S.elem_name(b)})"
             for a in R.elements() for b in S.elements()]
    label = f"prod:{R.label}|{S.label}"
    return FiniteRing(order, add, mul, enc(R.zero, S.zero), enc(R.one, S.one),
                      label, elem_names=names)


def nil_prime_witness(R: FiniteRing):
    """None when Nil(R) is prime, else the smallest pair (a, b) outside Nil
    with a*b in Nil."""
    nil = R.nilpotents()
    for a in R.elements():
        if a in nil:
            continue
        for b in R.elements():
            if b in nil:
                continue
            if R.mul(a, b) in nil:
                return (a, b)
    return None


def quotient_ring(R: FiniteRing, kernel: frozenset, label: str):
    """Quotient of R by an ideal given as an element set.

    Returns (Q, surjection) where surjection[i] is the index of the coset
    of element i.  Cosets are represented by their least element index.
    """
    zero = R.zero
    if zero not in kernel:
        raise InternalInconsistency("kernel must contain zero")
    coset_rep = {}
    reps = []
    for x in R.elements():
        if x in coset_rep:
            continue
        coset = sorted(R.add(x, k) for k in kernel)
        rep = coset[0]
        reps.append(rep)
        for y in coset:
            if y in coset_rep and coset_rep[y] != rep:
                raise InternalInconsistency("kernel is not an additive subgroup")
            coset_rep[y] = rep
    reps.sort()
    rep_index = {r: i for i, r in enumerate(reps)}
    surj = tuple(rep_index[coset_rep[x]] for x in R.elements())
    n = len(reps)
    add = [[surj[R.add(reps[i], reps[j])] for j in range(n)] for i in range(n)]
    mul = [[surj[R.mul(reps[i], reps[j])] for j in range(n)] for i in range(n)]
    names = [f"[{R.elem_name(r)}]" for r in reps]
    Q = FiniteRing(n, add, mul, surj[R.zero], surj[R.one], label, elem_names=names)
    return Q, surj


def phi_image(R: FiniteRing):
    """R / ker(phi) for a finite phi-ring, with the quotient map.

    ker(phi) = {x : s*x = 0 for some s outside Nil(R)}.  For a finite ring,
    Nil(R) prime already forces every non-nilpotent to be a unit, so the
    kernel is always {0} here; we compute it anyway and assert.
    """
    w = nil_prime_witness(R)
    if w is not None:
        a, b = w
        raise PhiRingRequired(
            f"Nil({R.label}) is not prime: {R.elem_name(a)}*{R.elem_name(b)} is nilpotent")
    nil = R.nilpotents()
    kernel = frozenset(
        x for x in R.elements()
        if any(R.mul(s, x) == R.zero for s in R.elements() if s not in nil))
    return quotient_ring(R, kernel, f"phi({R.label})")


def _invariant_vector(R: FiniteRing):
    add_orders = sorted(_additive_order(R, x) for x in R.elements())
    return (R.order, len(R.units()), len(R.nilpotents()), tuple(add_orders))


def _additive_order(R: FiniteRing, x: int) -> int:
    k, y = 1, x
    while y != R.zero:
        y = R.add(y, x)
        k += 1
    return k


def is_isomorphic(R: FiniteRing, S: FiniteRing) -> bool:
    """Ring isomorphism test by invariant vector plus backtracking search.

    Intended for tiny orders (tests only).
    """
    if _invariant_vector(R) != _invariant_vector(S):
        return False
    n = R.order
    nil_r, nil_s = R.nilpotents(), S.nilpotents()
    unit_r, unit_s = R.units(), S.units()

    def compatible(x, y):
        return (_additive_order(R, x) == _additive_order(S, y)
                and (x in nil_r) == (y in nil_s)
                and (x in unit_r) == (y in unit_s))

    f = {R.zero: S.zero, R.one: S.one}
    used = {S.zero, S.one}
    todo = [x for x in R.elements() if x not in f]

    def extend(i):
        if i == len(todo):
            return True
        x = todo[i]
        for y in S.elements():
            if y in used or not compatible(x, y):
                continue
            f[x] = y
            used.add(y)
            ok = True
            for a in list(f):
                b = f[a]
                sa, sm = R.add(a, x), R.mul(a, x)
                if sa in f and f[sa] != S.add(b, y):
                    ok = False
                    break
                if sm in f and f[sm] != S.mul(b, y):
                    ok = False
                    break
            if ok and extend(i + 1):
                return True
            del f[x]
            used.discard(y)
        return False

    if not extend(0):
        return False
    # full consistency pass over the completed bijection
    for a in R.elements():
        for b in R.elements():
            if f[R.add(a, b)] != S.add(f[a], f[b]) or f[R.mul(a, b)] != S.mul(f[a], f[b]):
                return False
    return True


def parse_module_spec(text: str, ring: FiniteRing, pos: int = 0) -> FiniteModule:
    if text == "self":
        return module_self(ring)
    if text.startswith("Zm:"):
        try:
            m = int(text[3:])
        except ValueError:
            raise ParseError(f"bad module spec {text!r}", pos)
        return module_zm(ring, m)
    raise ParseError(f"unknown module spec {text!r}", pos)


def parse_ring_spec(text: str, pos: int = 0) -> FiniteRing:
    """Parse the finite-ring mini-language.

    Grammar: "Zn:<n>", "trunc:<p>:<e1>,<e2>,..", "triv:<ringspec>|<modulespec>",
    "prod:<ringspec>|<ringspec>".  For prod the split is at the first '|'
    (nest on the right); for triv at the last '|' (module specs never
    contain '|').
    """
    if text.startswith("Zn:"):
        body = text[3:]
        try:
            n = int(body)
        except ValueError:
            raise ParseError(f"bad integer {body!r}", pos + 3)
        return make_zn(n)
    if text.startswith("trunc:"):
        parts = text[6:].split(":")
        if len(parts) != 2:
            raise ParseError("trunc spec needs trunc:<p>:<e1>,<e2>,..", pos)
        try:
            p = int(parts[0])
            exps = [int(e) for e in parts[1].split(",")]
        except ValueError:
            raise ParseError(f"bad trunc spec {text!r}", pos)
        return make_truncated_poly(p, exps)
    if text.startswith("prod:"):
        body = text[5:]
        cut = body.find("|")
        if cut < 0:
            raise ParseError("prod spec needs two '|'-separated ring specs", pos)
        left = parse_ring_spec(body[:cut], pos + 5)
        right = parse_ring_spec(body[cut + 1:], pos + 5 + cut + 1)
        return make_product(left, right)
    if text.startswith("triv:"):
        body = text[5:]
        cut = body.rfind("|")
        if cut < 0:
            raise ParseError("triv spec needs <ringspec>|<modulespec>", pos)
        base = parse_ring_spec(body[:cut], pos + 5)
        mod = parse_module_spec(body[cut + 1:], base, pos + 5 + cut + 1)
        return make_trivial_ext(base, mod)
    raise ParseError(f"unknown ring spec {text!r}", pos)
