"""Graded modules, tensor powers, elements, and homogeneous linear maps.

Conventions:

- a GradedModule has a finite ordered basis of labelled generators, each
  with an integer degree; labels are unique within a module;
- a TensorSpace is a finite tensor power A_1 (x) ... (x) A_k of graded
  modules; arity 0 is the ground ring R, whose single basis element is
  the empty tuple in degree 0 (so A (x) R = A on the nose);
- elements are sparse dicts basis-index-tuple -> scalar;
- a GradedMap of degree d sends a basis tuple of degree k into degree
  k + d; homogeneity is enforced entry by entry at construction;
- composition of maps carries no extra sign (signs enter only through
  duals and tensor products, see tensor.py).

All values are immutable after construction and safe to share.
"""

from .fields import QQ


class GradedModule:
    def __init__(self, basis, field=QQ, name=""):
        basis = [(str(label), int(degree)) for label, degree in basis]
        seen = set()
        for label, _ in basis:
            if label in seen:
                raise ValueError(f"duplicate basis label {label!r}")
            seen.add(label)
        self.labels = tuple(label for label, _ in basis)
        self.degrees = tuple(degree for _, degree in basis)
        self.index = {label: i for i, label in enumerate(self.labels)}
        self.field = field
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    def degree(self, i):
        return self.degrees[i]

    def basis_at(self, degree):
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def degrees_present(self):
        return sorted(set(self.degrees))

    def __eq__(self, other):
        return (isinstance(other, GradedModule)
                and self.labels == other.labels
                and self.degrees == other.degrees
                and self.field == other.field)

    def __hash__(self):
        return hash((self.labels, self.degrees, self.field))

    def __repr__(self):
        return f"GradedModule({self.name or list(zip(self.labels, self.degrees))!r})"


def make_module(basis, field=QQ, name=""):
    """Build a graded module from (label, degree) pairs; labels must be distinct."""
    return GradedModule(basis, field=field, name=name)


class TensorSpace:
    """A tensor power of graded modules; arity 0 is the ground ring."""

    def __init__(self, modules, field=None):
        self.modules = tuple(modules)
        if self.modules:
            field = self.modules[0].field
            for m in self.modules[1:]:
                if m.field != field:
                    raise ValueError("tensor factors over different fields")
        elif field is None:
            field = QQ
        self.field = field

    @property
    def arity(self):
        return len(self.modules)

    @property
    def size(self):
        n = 1
        for m in self.modules:
            n *= m.dim
        return n

    def basis(self):
        """All basis index tuples, lexicographic in (factor, position)."""
        if not self.modules:
            yield ()
            return
        dims = [m.dim for m in self.modules]
        if any(d == 0 for d in dims):
            return
        idx = [0] * len(self.modules)
        while True:
            yield tuple(idx)
            k = len(idx) - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < dims[k]:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                return

    def degree(self, idx):
        return sum(m.degree(i) for m, i in zip(self.modules, idx))

    def labels_of(self, idx):
        return tuple(m.labels[i] for m, i in zip(self.modules, idx))

    def contains(self, idx):
        return (len(idx) == len(self.modules)
                and all(0 <= i < m.dim for m, i in zip(self.modules, idx)))

    def concat(self, other):
        if self.arity == 0 and other.arity == 0 and self.field != other.field:
            raise ValueError("tensor factors over different fields")
        return TensorSpace(self.modules + other.modules,
                           field=self.field if self.modules or not other.modules else other.field)

    def __eq__(self, other):
        return (isinstance(other, TensorSpace)
                and self.modules == other.modules and self.field == other.field)

    def __hash__(self):
        return hash((self.modules, self.field))

    def __repr__(self):
        if not self.modules:
            return "R"
        return " (x) ".join(m.name or "?" for m in self.modules)


def space(*modules):
    return TensorSpace(modules)


def scalar_space(field=QQ):
    return TensorSpace((), field=field)


class Element:
    """A sparse vector in a tensor space: dict basis-index-tuple -> scalar."""

    def __init__(self, space, coeffs=None):
        self.space = space
        field = space.field
        clean = {}
        for idx, v in (coeffs or {}).items():
            idx = tuple(idx)
            if not space.contains(idx):
                raise ValueError(f"index {idx} not a basis tuple of {space!r}")
            v = field.coerce(v)
            if not field.is_zero(v):
                clean[idx] = v
        self.coeffs = clean

    @classmethod
    def basis(cls, space, idx):
        return cls(space, {tuple(idx): space.field.one})

    @classmethod
    def from_labels(cls, space, terms):
        """terms: iterable of (coeff, (label, ...))."""
        coeffs = {}
        field = space.field
        for coeff, labels in terms:
            idx = tuple(m.index[lbl] for m, lbl in zip(space.modules, labels))
            coeffs[idx] = field.add(coeffs.get(idx, field.zero), field.coerce(coeff))
        return cls(space, coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        degs = {self.space.degree(idx) for idx in self.coeffs}
        if not degs:
            raise ValueError("degree of the zero element is undefined")
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def scale(self, a):
        field = self.space.field
        a = field.coerce(a)
        if field.is_zero(a):
            return Element(self.space)
        return Element(self.space, {i: field.mul(a, v) for i, v in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, Element) or other.space != self.space:
            raise ValueError("cannot add elements of different spaces")
        field = self.space.field
        out = dict(self.coeffs)
        for idx, v in other.coeffs.items():
            s = field.add(out.get(idx, field.zero), v)
            if field.is_zero(s):
                out.pop(idx, None)
            else:
                out[idx] = s
        return Element(self.space, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def tensor(self, other):
        """Plain bilinear tensor of elements (no Koszul sign; signs belong to maps)."""
        out_space = self.space.concat(other.space)
        field = out_space.field
        coeffs = {}
        for i1, v1 in self.coeffs.items():
            for i2, v2 in other.coeffs.items():
                coeffs[i1 + i2] = field.mul(v1, v2)
        return Element(out_space, coeffs)

    def coefficient(self, labels):
        idx = tuple(m.index[lbl] for m, lbl in zip(self.space.modules, labels))
        return self.coeffs.get(idx, self.space.field.zero)

    def __eq__(self, other):
        return (isinstance(other, Element)
                and self.space == other.space and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items())))

    def __repr__(self):
        return format_element(self)


def format_element(elem):
    field = elem.space.field
    if elem.is_zero:
        return "0"
    parts = []
    for idx in sorted(elem.coeffs):
        labels = elem.space.labels_of(idx)
        name = "(x)".join(labels) if labels else "R"
        parts.append(f"{field.format(elem.coeffs[idx])}*{name}")
    return " + ".join(parts)


class GradedMap:
    """A degree-homogeneous linear map between tensor spaces, stored sparsely.

    entries: dict src-index-tuple -> dict dst-index-tuple -> scalar.
    """

    def __init__(self, source, target, degree, entries=None):
        if source.field != target.field:
            raise ValueError("source and target over different fields")
        self.source = source
        self.target = target
        self.degree = int(degree)
        field = source.field
        clean = {}
        for src, row in (entries or {}).items():
            src = tuple(src)
            if not source.contains(src):
                raise ValueError(f"index {src} not a basis tuple of the source")
            srcdeg = source.degree(src)
            crow = {}
            for dst, v in row.items():
                dst = tuple(dst)
                if not target.contains(dst):
                    raise ValueError(f"index {dst} not a basis tuple of the target")
                if target.degree(dst) != srcdeg + self.degree:
                    raise ValueError(
                        f"entry {source.labels_of(src)} -> {target.labels_of(dst)} "
                        f"violates homogeneity: {target.degree(dst)} != "
                        f"{srcdeg} + ({self.degree})")
                v = field.coerce(v)
                if not field.is_zero(v):
                    crow[dst] = v
            if crow:
                clean[src] = crow
        self.entries = clean

    @classmethod
    def from_labels(cls, source, target, degree, rows):
        """rows: iterable of (src_labels, [(coeff, dst_labels), ...])."""
        entries = {}
        for src_labels, terms in rows:
            src = tuple(m.index[lbl] for m, lbl in zip(source.modules, src_labels))
            row = entries.setdefault(src, {})
            field = source.field
            for coeff, dst_labels in terms:
                dst = tuple(m.index[lbl] for m, lbl in zip(target.modules, dst_labels))
                row[dst] = field.add(row.get(dst, field.zero), field.coerce(coeff))
        return cls(source, target, degree, entries)

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {idx: {idx: space.field.one} for idx in space.basis()})

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    def __call__(self, x):
        """Linear extension of the stored matrix; |f(x)| = |x| + |f|."""
        if isinstance(x, tuple):
            x = Element.basis(self.source, x)
        if not isinstance(x, Element) or x.space != self.source:
            raise ValueError("element parent does not match the map source")
        field = self.source.field
        out = {}
        for src, v in x.coeffs.items():
            for dst, w in self.entries.get(src, {}).items():
                s = field.add(out.get(dst, field.zero), field.mul(v, w))
                if field.is_zero(s):
                    out.pop(dst, None)
                else:
                    out[dst] = s
        return Element(self.target, out)

    def scale(self, a):
        field = self.source.field
        a = field.coerce(a)
        if field.is_zero(a):
            return GradedMap.zero(self.source, self.target, self.degree)
        entries = {s: {d: field.mul(a, v) for d, v in row.items()}
                   for s, row in self.entries.items()}
        return GradedMap(self.source, self.target, self.degree, entries)

    def __add__(self, other):
        if (not isinstance(other, GradedMap) or other.source != self.source
                or other.target != self.target or other.degree != self.degree):
            raise ValueError("cannot add maps of different signatures")
        field = self.source.field
        entries = {s: dict(row) for s, row in self.entries.items()}
        for s, row in other.entries.items():
            tgt = entries.setdefault(s, {})
            for d, v in row.items():
                x = field.add(tgt.get(d, field.zero), v)
                if field.is_zero(x):
                    tgt.pop(d, None)
                else:
                    tgt[d] = x
        return GradedMap(self.source, self.target, self.degree, entries)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, GradedMap) and map_equal(self, other)

    def __hash__(self):
        return hash((self.source, self.target, self.degree))

    def is_zero_map(self):
        return not self.entries

    def __repr__(self):
        return (f"GradedMap({self.source!r} -> {self.target!r}, "
                f"degree {self.degree}, {sum(len(r) for r in self.entries.values())} entries)")


def apply(f, x):
    """Apply a graded map to an element (linear extension of the matrix)."""
    return f(x)


def compose(g, f):
    """g after f; degree |f|+|g|; no extra sign in direct composition."""
    if f.target != g.source:
        raise ValueError("compose: target of inner map differs from source of outer map")
    field = f.source.field
    entries = {}
    for src, row in f.entries.items():
        out = {}
        for mid, v in row.items():
            for dst, w in g.entries.get(mid, {}).items():
                s = field.add(out.get(dst, field.zero), field.mul(v, w))
                if field.is_zero(s):
                    out.pop(dst, None)
                else:
                    out[dst] = s
        if out:
            entries[src] = out
    return GradedMap(f.source, g.target, f.degree + g.degree, entries)


def map_equal(f, g):
    """Exact equality on every basis tuple; signature mismatch is unequal, not an error."""
    if not isinstance(f, GradedMap) or not isinstance(g, GradedMap):
        return False
    if f.source != g.source or f.target != g.target or f.degree != g.degree:
        return False
    return f.entries == g.entries


def element_as_map(elem, degree=None):
    """View an element of V as a graded map R -> V of degree |elem|."""
    if degree is None:
        degree = 0 if elem.is_zero else elem.degree()
    src = scalar_space(elem.space.field)
    entries = {(): dict(elem.coeffs)} if not elem.is_zero else {}
    return GradedMap(src, elem.space, degree, entries)
