"""Elliptic loops over a finite local ring: points and the complete law.

For a ring R with maximal ideal m and parameters A, B the loop consists of
every point of P^2(R) where the Weierstrass cubic

    F(X, Y, Z) = X^3 + A X Z^2 + B Z^3 - Y^2 Z

falls into m.  The base curve over the residue field must be nonsingular
and of odd order; both are checked at construction time.  Addition is one
polynomial map, total on the whole loop:

    T1 = (X1 Y2 + X2 Y1) Q1 + (Z1 Y2 + Z2 Y1) Q2
    T2 = Q1 Q4 - Q2 Q3
    T3 = (X1 Y2 + X2 Y1) Q3 + (Z1 Y2 + Z2 Y1) Q4

with the four bilinear forms

    Q1 = -A X1 Z2 - A X2 Z1 - 3B Z1 Z2 + Y1 Y2
    Q2 = A^2 Z1 Z2 - A X1 X2 - 3B X1 Z2 - 3B X2 Z1
    Q3 = A Z1 Z2 + 3 X1 X2
    Q4 = A X1 Z2 + A X2 Z1 + 3B Z1 Z2 + Y1 Y2

The identity is (0 : 1 : 0) and -(X : Y : Z) = (X : -Y : Z).  Every loop
point has unit Y, so canonical forms are (x : 1 : z); addition of two
canonical points uses a reduced instance of the same formulas.

The operation is commutative and power-associative but in general not
associative; nothing in this module assumes associativity.
"""

from __future__ import annotations

from .errors import (
    DegenerateSum,
    EvenOrder,
    PreconditionUnmet,
    SingularCurve,
)
from .projective import ProjPoint, normalize
from .ring import INTEGER_QUOTIENT, Payload, RingConfig, RingElem


def _sqrt_table(p: int) -> dict:
    """v -> sorted list of square roots of v modulo p."""
    roots: dict = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    return roots


class LoopParams:
    """Validated parameters (R, A, B) plus cached residue-curve data.

    Constructed through :func:`validate_params`.  The residue curve
    E: y^2 = x^3 + ab x + bb over F_p is stored both as affine pairs and
    as canonical points of the e = 1 loop over Z/p, which carries the
    same addition law and is used for all order bookkeeping downstairs.
    """

    __slots__ = (
        "ring", "a", "b", "delta", "q",
        "_a2", "_b3", "_fast",
        "residue_pairs", "residue_points", "residue_params",
        "_orders", "_points", "_identity",
    )

    def __init__(self, ring: RingConfig, a, b):
        if isinstance(a, RingElem):
            a = a.val
        elif isinstance(a, int):
            a = ring.from_int(a)
        if isinstance(b, RingElem):
            b = b.val
        elif isinstance(b, int):
            b = ring.from_int(b)
        self.ring = ring
        self.a = a
        self.b = b
        self._orders = {}
        self._points = None
        self._identity = None
        self._a2 = ring.mul(a, a)
        self._b3 = ring.mul_int(3, b)
        self._fast = ring.kind == INTEGER_QUOTIENT

        # discriminant up to sign: -(4 A^3 + 27 B^2) must be a unit
        a3 = ring.mul(self._a2, a)
        b2 = ring.mul(b, b)
        self.delta = ring.neg(ring.add(ring.mul_int(4, a3), ring.mul_int(27, b2)))
        if not ring.is_unit(self.delta):
            raise SingularCurve(
                f"-(4A^3 + 27B^2) = {self.delta!r} is not a unit in {ring!r}"
            )

        p = ring.p
        ra, rb = ring.residue(a), ring.residue(b)
        roots = _sqrt_table(p)
        pairs = []
        for x in range(p):
            f = (x * x * x + ra * x + rb) % p
            if f == 0:
                raise EvenOrder(
                    f"residue curve y^2 = x^3 + {ra}x + {rb} over F_{p} has a"
                    f" point with y = 0, so its order is even"
                )
            for y in roots.get(f, ()):
                pairs.append((x, y))
        self.residue_pairs = pairs
        self.q = len(pairs) + 1

        if ring.e == 1 and ring.kind == INTEGER_QUOTIENT:
            self.residue_params = self
        else:
            self.residue_params = LoopParams(ring.residue_ring(), ra % p, rb % p)

        rr = self.residue_params.ring
        pts = [identity(self.residue_params)]
        for x, y in pairs:
            pts.append(normalize(rr, x % p, y % p, 1 % rr.modulus))
        self.residue_points = pts

    # -- point bookkeeping ---------------------------------------------------

    def point(self, x, y, z) -> ProjPoint:
        """Canonicalize and membership-check a coordinate triple."""
        pt = ProjPoint.of(self.ring, x, y, z)
        if not membership(self, pt):
            raise PreconditionUnmet(f"{pt!r} is not a point of this loop")
        return pt

    def project(self, pt: ProjPoint) -> ProjPoint:
        """Reduction modulo m, landing on the residue curve over Z/p."""
        r = self.ring
        rr = self.residue_params.ring
        return normalize(rr, r.residue(pt.x), r.residue(pt.y), r.residue(pt.z))

    def residue_order(self, rpt: ProjPoint) -> int:
        """Order of a residue-curve point, cached."""
        key = rpt.coords()
        n = self._orders.get(key)
        if n is None:
            n = order_of(self.residue_params, rpt)
            self._orders[key] = n
        return n

    def pi_order(self, pt: ProjPoint) -> int:
        return self.residue_order(self.project(pt))

    def all_residue_three_torsion(self) -> bool:
        """True when every residue point is killed by 3."""
        return all(self.residue_order(r) in (1, 3) for r in self.residue_points)

    def loop_points(self) -> list:
        """All q * |m|^2 points, lifted fiberwise over the residue curve."""
        if self._points is None:
            ring = self.ring
            one = ring.one
            offsets = list(ring.ideal_elements())
            pts = []
            for rpt in self.residue_points:
                bx = ring.from_int(rpt.x)
                bz = ring.from_int(rpt.z)
                for dx in offsets:
                    x = ring.add(bx, dx)
                    for dz in offsets:
                        pts.append(ProjPoint(ring, x, one, ring.add(bz, dz)))
            self._points = pts
        return self._points

    def infinity_points(self) -> list:
        """The fiber over the residue identity: all (x : 1 : z), x, z in m."""
        ring = self.ring
        one = ring.one
        return [
            ProjPoint(ring, x, one, z)
            for x in ring.ideal_elements()
            for z in ring.ideal_elements()
        ]

    def cardinality(self) -> int:
        return self.q * self.ring.ideal_size ** 2

    def to_json(self) -> dict:
        r = self.ring
        return {
            "ring": r.to_json(),
            "A": r.payload_to_json(self.a),
            "B": r.payload_to_json(self.b),
            "q": self.q,
        }

    def __repr__(self) -> str:
        return f"LoopParams(A={self.a!r}, B={self.b!r} over {self.ring!r})"


def validate_params(ring: RingConfig, a, b) -> LoopParams:
    """Build LoopParams from ints (any ring) or payloads.

    Raises SingularCurve when the discriminant is not a unit and EvenOrder
    when the residue curve contains 2-torsion.
    """
    def pay(v):
        if isinstance(v, RingElem):
            return v.val
        if isinstance(v, int):
            return ring.from_int(v)
        return ring.from_coeffs(v)

    return LoopParams(ring, pay(a), pay(b))


# -- the cubic and its Hessian -----------------------------------------------


def _eval_f(params: LoopParams, x: Payload, y: Payload, z: Payload) -> Payload:
    ring = params.ring
    mul, add, sub = ring.mul, ring.add, ring.sub
    x3 = mul(mul(x, x), x)
    axz2 = mul(params.a, mul(x, mul(z, z)))
    bz3 = mul(params.b, mul(mul(z, z), z))
    y2z = mul(mul(y, y), z)
    return sub(add(x3, add(axz2, bz3)), y2z)


def _eval_h(params: LoopParams, x: Payload, y: Payload, z: Payload) -> Payload:
    ring = params.ring
    mul, add, sub = ring.mul, ring.add, ring.sub
    t1 = mul_many(ring, params.a, x, x, z)
    t1 = ring.mul_int(3, t1)
    t2 = ring.mul_int(3, mul(x, mul(y, y)))
    t3 = ring.mul_int(9, mul(params.b, mul(x, mul(z, z))))
    t4 = mul_many(ring, params._a2, z, z, z)
    inner = sub(add(t1, add(t2, t3)), t4)
    return ring.mul_int(-8, inner)


def mul_many(ring: RingConfig, *vals: Payload) -> Payload:
    out = vals[0]
    for v in vals[1:]:
        out = ring.mul(out, v)
    return out


def eval_F(params: LoopParams, pt: ProjPoint) -> RingElem:
    """Value of X^3 + AXZ^2 + BZ^3 - Y^2 Z at the canonical representative."""
    return RingElem(params.ring, _eval_f(params, pt.x, pt.y, pt.z))


def eval_H(params: LoopParams, pt: ProjPoint) -> RingElem:
    """Value of the Hessian determinant -8(3AX^2 Z + 3XY^2 + 9BXZ^2 - A^2 Z^3)."""
    return RingElem(params.ring, _eval_h(params, pt.x, pt.y, pt.z))


def membership(params: LoopParams, pt: ProjPoint) -> bool:
    """Whether F(P) lies in the maximal ideal (scaling-invariant)."""
    return not params.ring.is_unit(_eval_f(params, pt.x, pt.y, pt.z))


def identity(params: LoopParams) -> ProjPoint:
    if params._identity is None:
        ring = params.ring
        params._identity = ProjPoint(ring, ring.zero, ring.one, ring.zero)
    return params._identity


# -- the addition law ----------------------------------------------------------


def raw_add(params: LoopParams, t1: tuple, t2: tuple) -> tuple:
    """The full bihomogeneous law on arbitrary representatives.

    Returns the unnormalized image triple (T1, T2, T3) as payloads.  Both
    inputs may be any primitive representatives; the output then represents
    the sum of the two points whenever both lie on the loop.
    """
    ring = params.ring
    mul, add, sub, neg = ring.mul, ring.add, ring.sub, ring.neg
    a, a2, b3 = params.a, params._a2, params._b3
    x1, y1, z1 = t1
    x2, y2, z2 = t2

    xx = mul(x1, x2)
    yy = mul(y1, y2)
    zz = mul(z1, z2)
    xz = add(mul(x1, z2), mul(x2, z1))
    xy = add(mul(x1, y2), mul(x2, y1))
    zy = add(mul(z1, y2), mul(z2, y1))

    q1 = add(sub(neg(mul(a, xz)), mul(b3, zz)), yy)
    q2 = sub(mul(a2, zz), add(mul(a, xx), mul(b3, xz)))
    q3 = add(mul(a, zz), ring.mul_int(3, xx))
    q4 = add(add(mul(a, xz), mul(b3, zz)), yy)

    s1 = add(mul(xy, q1), mul(zy, q2))
    s2 = sub(mul(q1, q4), mul(q2, q3))
    s3 = add(mul(xy, q3), mul(zy, q4))
    return (s1, s2, s3)


def _add_canonical_int(params: LoopParams, x1, z1, x2, z2) -> tuple:
    """Reduced law for two canonical points (x : 1 : z) over Z/p^e."""
    M = params.ring.modulus
    a, a2, b3 = params.a, params._a2, params._b3
    xx = x1 * x2 % M
    zz = z1 * z2 % M
    xz = (x1 * z2 + x2 * z1) % M
    sx = x1 + x2
    sz = z1 + z2
    q1 = (1 - a * xz - b3 * zz) % M
    q2 = (a2 * zz - a * xx - b3 * xz) % M
    q3 = (a * zz + 3 * xx) % M
    q4 = (a * xz + b3 * zz + 1) % M
    t2 = (q1 * q4 - q2 * q3) % M
    try:
        inv = pow(t2, -1, M)
    except ValueError:
        raise DegenerateSum(
            f"sum of ({x1}:1:{z1}) and ({x2}:1:{z2}) has no unit Y coordinate"
        ) from None
    x3 = (sx * q1 + sz * q2) * inv % M
    z3 = (sx * q3 + sz * q4) * inv % M
    return x3, z3


def _add_canonical_generic(params: LoopParams, x1, z1, x2, z2) -> tuple:
    ring = params.ring
    mul, add, sub, neg = ring.mul, ring.add, ring.sub, ring.neg
    a, a2, b3 = params.a, params._a2, params._b3
    one = ring.one
    xx = mul(x1, x2)
    zz = mul(z1, z2)
    xz = add(mul(x1, z2), mul(x2, z1))
    sx = add(x1, x2)
    sz = add(z1, z2)
    q1 = add(sub(neg(mul(a, xz)), mul(b3, zz)), one)
    q2 = sub(mul(a2, zz), add(mul(a, xx), mul(b3, xz)))
    q3 = add(mul(a, zz), ring.mul_int(3, xx))
    q4 = add(add(mul(a, xz), mul(b3, zz)), one)
    t2 = sub(mul(q1, q4), mul(q2, q3))
    if not ring.is_unit(t2):
        raise DegenerateSum(
            f"sum of ({x1!r}:1:{z1!r}) and ({x2!r}:1:{z2!r}) has no unit Y coordinate"
        )
    inv = ring.inverse(t2)
    x3 = mul(add(mul(sx, q1), mul(sz, q2)), inv)
    z3 = mul(add(mul(sx, q3), mul(sz, q4)), inv)
    return x3, z3


def add(params: LoopParams, p1: ProjPoint, p2: ProjPoint) -> ProjPoint:
    """Sum of two loop points, in canonical form.

    Canonical loop points always carry Y = 1, where a reduced form of the
    law applies; other representatives fall through to the full law.
    """
    ring = params.ring
    one = ring.one
    if p1.y == one and p2.y == one:
        if params._fast:
            x3, z3 = _add_canonical_int(params, p1.x, p1.z, p2.x, p2.z)
        else:
            x3, z3 = _add_canonical_generic(params, p1.x, p1.z, p2.x, p2.z)
        return ProjPoint(ring, x3, one, z3)
    s1, s2, s3 = raw_add(params, p1.coords(), p2.coords())
    if not (ring.is_unit(s1) or ring.is_unit(s2) or ring.is_unit(s3)):
        raise DegenerateSum(f"sum of {p1!r} and {p2!r} is not primitive")
    return normalize(ring, s1, s2, s3)


def neg(params: LoopParams, pt: ProjPoint) -> ProjPoint:
    """-(X : Y : Z) = (X : -Y : Z), canonicalized."""
    ring = params.ring
    if pt.y == ring.one:
        return ProjPoint(ring, ring.neg(pt.x), ring.one, ring.neg(pt.z))
    return normalize(ring, pt.x, ring.neg(pt.y), pt.z)


def sub(params: LoopParams, p1: ProjPoint, p2: ProjPoint) -> ProjPoint:
    return add(params, p1, neg(params, p2))


def scalar_mul(params: LoopParams, n: int, pt: ProjPoint) -> ProjPoint:
    """n-fold sum by double-and-add.

    Power-associativity of the loop makes every addition order give the
    same answer, so the binary chain is safe; the test suite compares it
    against the unary definition.
    """
    if n < 0:
        return scalar_mul(params, -n, neg(params, pt))
    if n == 0:
        return identity(params)
    out = pt
    for bit in bin(n)[3:]:
        out = add(params, out, out)
        if bit == "1":
            out = add(params, out, pt)
    return out


def order_of(params: LoopParams, pt: ProjPoint) -> int:
    """Least n >= 1 with n P = identity, by iterated addition."""
    o = identity(params)
    if pt == o:
        return 1
    bound = params.cardinality() + 1
    acc = pt
    for n in range(2, bound + 1):
        acc = add(params, acc, pt)
        if acc == o:
            return n
    raise PreconditionUnmet(f"{pt!r} generated more points than the loop holds")


def lift_affine(params: LoopParams, pt: ProjPoint, alpha) -> RingElem:
    """Parameter shift that puts an affine point exactly on a curve.

    For P with unit Z, written as (x : y : 1), and a chosen alpha in m,
    returns beta = y^2 - x^3 - (A + alpha) x - B, the unique value with
    y^2 = x^3 + (A + alpha) x + (B + beta).  Both shifts stay in m when P
    is a loop point and alpha is in m.
    """
    ring = params.ring
    if not ring.is_unit(pt.z):
        raise PreconditionUnmet(f"{pt!r} is not affine (Z is not a unit)")
    al = alpha.val if isinstance(alpha, RingElem) else (
        ring.from_int(alpha) if isinstance(alpha, int) else ring.from_coeffs(alpha)
    )
    u = ring.inverse(pt.z)
    x = ring.mul(pt.x, u)
    y = ring.mul(pt.y, u)
    mul, sub = ring.mul, ring.sub
    x3 = mul(mul(x, x), x)
    beta = sub(sub(sub(mul(y, y), x3), mul(ring.add(params.a, al), x)), params.b)
    return RingElem(ring, beta)


class LoopPoint:
    """Convenience wrapper binding a point to its loop.

    Supports P + Q, -P, P - Q, n * P, abs-free order(), and equality.
    The underlying canonical ProjPoint is the ``pt`` attribute.
    """

    __slots__ = ("params", "pt")

    def __init__(self, params: LoopParams, pt: ProjPoint):
        self.params = params
        self.pt = pt

    @classmethod
    def of(cls, params: LoopParams, x, y, z) -> "LoopPoint":
        return cls(params, params.point(x, y, z))

    def __add__(self, other: "LoopPoint") -> "LoopPoint":
        return LoopPoint(self.params, add(self.params, self.pt, other.pt))

    def __sub__(self, other: "LoopPoint") -> "LoopPoint":
        return LoopPoint(self.params, sub(self.params, self.pt, other.pt))

    def __neg__(self) -> "LoopPoint":
        return LoopPoint(self.params, neg(self.params, self.pt))

    def __rmul__(self, n: int) -> "LoopPoint":
        return LoopPoint(self.params, scalar_mul(self.params, n, self.pt))

    def order(self) -> int:
        return order_of(self.params, self.pt)

    def __eq__(self, other) -> bool:
        return isinstance(other, LoopPoint) and self.pt == other.pt

    def __hash__(self) -> int:
        return hash(self.pt)

    def __repr__(self) -> str:
        return f"LoopPoint{self.pt!r}"
