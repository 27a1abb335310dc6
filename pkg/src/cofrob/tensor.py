"""Koszul-sign-correct tensor calculus: tensor products, twist, permutation
action, duals, the canonical map iota, and degree shifts.

Sign conventions used throughout:

- twist:            tau(a (x) b) = (-1)^{|a||b|} b (x) a;
- tensor of maps:   (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b),
  iterated left to right for higher arity;
- permutations:     rho(a_1 (x) ... (x) a_n) picks up the sign of reordering
  the odd-degree factors (inversion count);
- dual map:         <f^v(g), a> = (-1)^{|g||f|} <g, f(a)>;
- iota:             iota(f (x) g) evaluates by (f (x) g)(a (x) b) =
  (-1)^{|g||a|} f(a) g(b); on basis duals iota(a^v (x) b^v) =
  (-1)^{|a||b|} (a (x) b)^v;
- double dual:      <a^vv, f> = (-1)^{|a|} f(a);
- shift:            A[1]_i = A_{i+1}, s: A -> A[1] of degree -1 and
  omega: A[1] -> A of degree +1 are mutually inverse, and the shift of
  f: A^k -> A^l is s^{(x)l} f omega^{(x)k}.

Duals of maps between tensor powers are routed through iota so that the
dual of a coproduct is a product on the dual module and vice versa.
"""

from .core import GradedModule, TensorSpace, Element, GradedMap, compose

DUAL_SUFFIX = "'"
SHIFT_PREFIX = "s."


def tensor_modules(a, b):
    """Flattened tensor product module: basis = ordered pairs, degree additive."""
    basis = [(f"{la}(x){lb}", da + db)
             for la, da in zip(a.labels, a.degrees)
             for lb, db in zip(b.labels, b.degrees)]
    name = f"({a.name})(x)({b.name})" if a.name or b.name else ""
    mod = GradedModule(basis, field=a.field, name=name)
    return mod


def flatten_space(space):
    """Flatten a tensor space of arity >= 1 into a single module.

    Returns (module, to_flat, from_flat) where to_flat maps index tuples of
    the space to indices of the module.
    """
    mods = space.modules
    if not mods:
        raise ValueError("cannot flatten the ground ring")
    flat = mods[0]
    for m in mods[1:]:
        flat = tensor_modules(flat, m)
    to_flat = {}
    from_flat = {}
    for i, idx in enumerate(space.basis()):
        to_flat[idx] = i
        from_flat[i] = idx
    return flat, to_flat, from_flat


def apply_stage(maps, elem):
    """Apply f_1 (x) ... (x) f_m to an element, with the Koszul sign
    (-1)^{sum_i |f_i| * deg(factors consumed before f_i)} per term."""
    arities = [f.source.arity for f in maps]
    out_space = TensorSpace(
        tuple(m for f in maps for m in f.target.modules),
        field=elem.space.field)
    field = elem.space.field
    mods = elem.space.modules
    out = {}
    for idx, v in elem.coeffs.items():
        pos = 0
        sign = 1
        prefix_deg = 0
        dead = False
        partial = [((), field.one)]
        for f, k in zip(maps, arities):
            group = idx[pos:pos + k]
            if f.degree % 2 and prefix_deg % 2:
                sign = -sign
            row = f.entries.get(group, {})
            if not row:
                dead = True
                break
            partial = [(dst_prefix + dst, field.mul(c, w))
                       for dst_prefix, c in partial
                       for dst, w in row.items()]
            prefix_deg += sum(mods[pos + j].degree(idx[pos + j]) for j in range(k))
            pos += k
        if dead:
            continue
        coeff = field.mul(v, field.coerce(sign))
        for dst, c in partial:
            s = field.add(out.get(dst, field.zero), field.mul(coeff, c))
            if field.is_zero(s):
                out.pop(dst, None)
            else:
                out[dst] = s
    return Element(out_space, out)


def apply_pipeline(stages, elem):
    """Apply a list of stages (each a list of maps tensored side by side)."""
    for stage in stages:
        elem = apply_stage(stage, elem)
    return elem


def tensor_maps(f, g):
    """Materialized f (x) g with the sign (-1)^{|g||a|} per basis element a."""
    source = f.source.concat(g.source)
    target = f.target.concat(g.target)
    field = source.field
    entries = {}
    for sf, rowf in f.entries.items():
        deg_sf = f.source.degree(sf)
        sgn = -1 if (g.degree % 2 and deg_sf % 2) else 1
        for sg, rowg in g.entries.items():
            row = {}
            for df, vf in rowf.items():
                for dg, vg in rowg.items():
                    row[df + dg] = field.mul(field.coerce(sgn), field.mul(vf, vg))
            entries[sf + sg] = row
    return GradedMap(source, target, f.degree + g.degree, entries)


def tensor_many(maps):
    out = maps[0]
    for f in maps[1:]:
        out = tensor_maps(out, f)
    return out


class Permutation:
    """A permutation of {1..n}; images[i] = rho(i+1) (1-based values)."""

    def __init__(self, images):
        self.images = tuple(images)
        self.n = len(self.images)
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise ValueError(f"not a bijection on 1..{self.n}: {images}")

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n, i, j):
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @classmethod
    def cycle(cls, n, cyc):
        images = list(range(1, n + 1))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
        return cls(images)

    def inverse(self):
        images = [0] * self.n
        for i, v in enumerate(self.images):
            images[v - 1] = i + 1
        return Permutation(images)

    def __mul__(self, other):
        """(self * other)(i) = self(other(i))."""
        if other.n != self.n:
            raise ValueError("arity mismatch")
        return Permutation(self.images[other.images[i] - 1] for i in range(self.n))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


def permute(rho, space):
    """The left action rho(a_1 (x) ... (x) a_n) = eps(rho, a) a_{rho^-1(1)} (x) ...

    eps counts inversions among odd-degree factors only.
    """
    if rho.n != space.arity:
        raise ValueError(f"permutation arity {rho.n} != tensor arity {space.arity}")
    inv = rho.inverse()
    perm0 = [inv.images[k] - 1 for k in range(rho.n)]  # output slot k <- input slot perm0[k]
    target = TensorSpace(tuple(space.modules[p] for p in perm0), field=space.field)
    field = space.field
    entries = {}
    for idx in space.basis():
        degs = [space.modules[i].degree(idx[i]) for i in range(rho.n)]
        sign = 1
        for a in range(rho.n):
            for b in range(a + 1, rho.n):
                if perm0[a] > perm0[b] and degs[perm0[a]] % 2 and degs[perm0[b]] % 2:
                    sign = -sign
        dst = tuple(idx[p] for p in perm0)
        entries[idx] = {dst: field.coerce(sign)}
    return GradedMap(space, target, 0, entries)


def twist(a, b):
    """tau: A (x) B -> B (x) A, tau(x (x) y) = (-1)^{|x||y|} y (x) x."""
    return permute(Permutation((2, 1)), TensorSpace((a, b)))


def dual_module(a):
    """(A^v)_i consists of the duals of the basis of A_{-i}."""
    basis = [(lbl + DUAL_SUFFIX, -deg) for lbl, deg in zip(a.labels, a.degrees)]
    return GradedModule(basis, field=a.field,
                        name=f"({a.name}){DUAL_SUFFIX}" if a.name else "")


def dual_space(space):
    return TensorSpace(tuple(dual_module(m) for m in space.modules), field=space.field)


def raw_dual(f):
    """Dual of a map between single modules: <f^v(g), a> = (-1)^{|g||f|}<g, f(a)>."""
    if f.source.arity != 1 or f.target.arity != 1:
        raise ValueError("raw_dual expects arity-1 source and target")
    src_mod = f.source.modules[0]
    dst_mod = f.target.modules[0]
    source = TensorSpace((dual_module(dst_mod),))
    target = TensorSpace((dual_module(src_mod),))
    field = f.source.field
    entries = {}
    for (a,), row in f.entries.items():
        for (b,), v in row.items():
            # |b^v| = -|b|; sign exponent |g||f| with g = b^v
            sgn = -1 if (f.degree % 2 and dst_mod.degree(b) % 2) else 1
            drow = entries.setdefault((b,), {})
            prev = drow.get((a,), field.zero)
            drow[(a,)] = field.add(prev, field.mul(field.coerce(sgn), v))
    entries = {s: r for s, r in entries.items() if any(not field.is_zero(v) for v in r.values())}
    return GradedMap(source, target, f.degree, entries)


def iota(space):
    """iota: A_1^v (x) ... (x) A_n^v -> (A_1 (x) ... (x) A_n)^v.

    On basis duals iota picks up (-1)^{sum_{i<j} |a_i||a_j|}; an isomorphism
    for finite bases.
    """
    flat, to_flat, _ = flatten_space(space)
    source = dual_space(space)
    target = TensorSpace((dual_module(flat),))
    field = space.field
    entries = {}
    for idx in space.basis():
        degs = [space.modules[i].degree(idx[i]) for i in range(space.arity)]
        sign = 1
        for a in range(len(degs)):
            for b in range(a + 1, len(degs)):
                if degs[a] % 2 and degs[b] % 2:
                    sign = -sign
        entries[idx] = {(to_flat[idx],): field.coerce(sign)}
    return GradedMap(source, target, 0, entries)


def iota_inverse(space):
    """Inverse of iota (both are diagonal with signs +-1)."""
    fwd = iota(space)
    field = space.field
    entries = {}
    for src, row in fwd.entries.items():
        (dst, v), = row.items()
        entries[dst] = {src: field.inv(v)}
    return GradedMap(fwd.target, fwd.source, 0, entries)


def flattener(space):
    """The identity reindexing (A_1, ..., A_n) -> flat module, no signs."""
    flat, to_flat, _ = flatten_space(space)
    target = TensorSpace((flat,))
    field = space.field
    entries = {idx: {(to_flat[idx],): field.one} for idx in space.basis()}
    return GradedMap(space, target, 0, entries)


def unflattener(space):
    flat = flattener(space)
    field = space.field
    entries = {}
    for src, row in flat.entries.items():
        for dst, v in row.items():
            entries[dst] = {src: v}
    return GradedMap(flat.target, flat.source, 0, entries)


def dual_map(f):
    """Dual of a map between tensor powers, routed through iota.

    For f: X_1 (x) ... (x) X_k -> Y_1 (x) ... (x) Y_l this returns
    iota_X^{-1} o (flat f)^v o iota_Y : Y^v tensor powers -> X^v tensor powers,
    so that the dual of a coproduct is a product on A^v and vice versa.
    """
    g = f
    if f.source.arity != 1:
        g = compose(g, unflattener(f.source))
    if f.target.arity != 1:
        g = compose(flattener(f.target), g)
    d = raw_dual(g)
    if f.target.arity != 1:
        d = compose(d, iota(f.target))
    if f.source.arity != 1:
        d = compose(iota_inverse(f.source), d)
    return d


def double_dual(a):
    """Canonical iso A -> A^vv, <a^vv, f> = (-1)^{|a|} f(a)."""
    dd = dual_module(dual_module(a))
    source = TensorSpace((a,))
    target = TensorSpace((dd,))
    field = a.field
    entries = {}
    for i, deg in enumerate(a.degrees):
        sign = -1 if deg % 2 else 1
        entries[(i,)] = {(i,): field.coerce(sign)}
    return GradedMap(source, target, 0, entries)


def shift_module(a):
    """A[1]_i = A_{i+1}: each generator drops one degree, labels get the 's.' prefix."""
    basis = [(SHIFT_PREFIX + lbl, deg - 1) for lbl, deg in zip(a.labels, a.degrees)]
    return GradedModule(basis, field=a.field, name=f"{a.name}[1]" if a.name else "")


class ShiftMaps:
    """The canonical maps s: A -> A[1] (degree -1) and omega (degree +1)."""

    def __init__(self, a):
        self.module = a
        self.shifted = shift_module(a)
        src = TensorSpace((a,))
        dst = TensorSpace((self.shifted,))
        one = a.field.one
        self.s = GradedMap(src, dst, -1, {(i,): {(i,): one} for i in range(a.dim)})
        self.omega = GradedMap(dst, src, 1, {(i,): {(i,): one} for i in range(a.dim)})


def shift_map(f, shifts=None):
    """shift of f: A^k -> A^l is s^{(x)l} o f o omega^{(x)k} on A[1]."""
    mods = set(f.source.modules) | set(f.target.modules)
    if len(mods) != 1:
        raise ValueError("shift_map expects powers of a single module")
    (a,) = mods
    sh = shifts or ShiftMaps(a)
    g = f
    if f.source.arity:
        g = compose(g, tensor_many([sh.omega] * f.source.arity))
    if f.target.arity:
        g = compose(tensor_many([sh.s] * f.target.arity), g)
    return g
