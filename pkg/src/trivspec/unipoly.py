"""Dense univariate polynomial helpers, parameterized by a scalar context.

Polynomials are tuples of payloads in ascending degree order with no trailing
zeros; the zero polynomial is the empty tuple.  These back the rational
function field, minimal polynomials and squarefreeness tests.
"""


def trim(cs, ctx):
    n = len(cs)
    while n > 0 and ctx.is_zero(cs[n - 1]):
        n -= 1
    return tuple(cs[:n])


def const(c, ctx):
    return trim((c,), ctx)


def deg(a):
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def add(a, b, ctx):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = ctx.add(out[i], c)
    return trim(out, ctx)


def neg(a, ctx):
    return tuple(ctx.neg(c) for c in a)


def sub(a, b, ctx):
    return add(a, neg(b, ctx), ctx)


def scale(a, c, ctx):
    if ctx.is_zero(c):
        return ()
    return trim([ctx.mul(x, c) for x in a], ctx)


def mul(a, b, ctx):
    if not a or not b:
        return ()
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ctx.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return trim(out, ctx)


def divmod_poly(a, b, ctx):
    """Euclidean division; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [ctx.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = ctx.inv(b[-1])
    while len(a) >= len(b) and trim(a, ctx):
        a = list(trim(a, ctx))
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = ctx.mul(a[-1], inv_lead)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = ctx.sub(a[k + i], ctx.mul(c, y))
    return trim(q, ctx), trim(a, ctx)


def monic(a, ctx):
    if not a:
        return ()
    return scale(a, ctx.inv(a[-1]), ctx)


def gcd(a, b, ctx):
    """Monic gcd."""
    while b:
        a, b = b, divmod_poly(a, b, ctx)[1]
    return monic(a, ctx)


def lcm(a, b, ctx):
    if not a or not b:
        return ()
    g = gcd(a, b, ctx)
    q, r = divmod_poly(mul(a, b, ctx), g, ctx)
    assert not r
    return monic(q, ctx)


def derivative(a, ctx):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        acc = ctx.zero
        for _ in range(i):
            acc = ctx.add(acc, c)
        out.append(acc)
    return trim(out, ctx)


def eval_at(a, x, ctx):
    acc = ctx.zero
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def is_squarefree(a, ctx):
    if not a:
        return False
    da = derivative(a, ctx)
    if not da:
        # constant, or an inseparable p-th power pattern in characteristic p
        return deg(a) == 0
    return deg(gcd(a, da, ctx)) == 0


def from_roots(roots, ctx):
    out = (ctx.one,)
    for r in roots:
        out = mul(out, (ctx.neg(r), ctx.one), ctx)
    return out


def to_str(a, ctx, var="t"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if ctx.is_zero(c):
            continue
        cs = ctx.to_str(c)
        if i == 0:
            parts.append(cs)
        else:
            head = "" if cs == "1" else cs + "*"
            parts.append(f"{head}{var}" if i == 1 else f"{head}{var}^{i}")
    return "+".join(parts)
