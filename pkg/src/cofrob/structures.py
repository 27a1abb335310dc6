"""Products, coproducts, (co)units, and the bialgebra axiom checkers.

A BialgebraData bundles a graded module A with a product mu: A(x)A -> A,
a coproduct lam: A -> A(x)A, an optional unit eta in A and an optional
counit eps: A -> R, plus an optional truncation window.  The derived
copairing and pairing are

    c = (-1)^{|lam||mu| + |mu|} lam(eta),      p = (-1)^{|lam|} eps mu.

Every axiom is decided by exact map equality, expanding both sides on
each basis tuple.  Sign conventions (|m| = |mu|, |l| = |lam|):

    commutativity       mu tau = (-1)^m mu
    associativity       mu(mu(x)1) = (-1)^m mu(1(x)mu)
    unit                (-1)^m mu(eta(x)1) = 1 = mu(1(x)eta)
    cocommutativity     tau lam = (-1)^l lam
    coassociativity     (lam(x)1)lam = (-1)^l (1(x)lam)lam
    counit              (eps(x)1)lam = 1 = (-1)^l (1(x)eps)lam

together with the unital/counital/biunital infinitesimal relations, the
six-term anti-symmetry relations and their S-operator reformulation, and
the coFrobenius relations.
"""

from .core import (TensorSpace, Element, GradedMap, compose, element_as_map,
                   scalar_space)
from .tensor import twist, tensor_maps
from .reports import check_relation, check_elements_equal, skipped


def sgn(e):
    return -1 if e % 2 else 1


class BialgebraData:
    def __init__(self, module, mu, lam, eta=None, eps=None, window=None):
        self.module = module
        self.space = TensorSpace((module,))
        self.space2 = TensorSpace((module, module))
        self.space3 = TensorSpace((module, module, module))
        if mu is not None and (mu.source != self.space2 or mu.target != self.space):
            raise ValueError("mu must map A(x)A -> A")
        if lam is not None and (lam.source != self.space or lam.target != self.space2):
            raise ValueError("lam must map A -> A(x)A")
        if eta is not None and eta.space != self.space:
            raise ValueError("eta must be an element of A")
        if eps is not None and (eps.source != self.space or eps.target.arity != 0):
            raise ValueError("eps must map A -> R")
        self.mu = mu
        self.lam = lam
        self.eta = eta
        self.eps = eps
        self.window = window
        self.field = module.field

    def eta_map(self):
        """eta as a map R -> A of degree |eta| = -|mu|."""
        return element_as_map(self.eta, degree=-self.mu.degree)

    def lam_eta(self):
        """The unsigned element lam(eta)."""
        return self.lam(self.eta)

    def lam_eta_map(self):
        return element_as_map(self.lam_eta(), degree=self.lam.degree - self.mu.degree)

    def eps_mu(self):
        """The unsigned map eps mu : A(x)A -> R."""
        return compose(self.eps, self.mu)

    def copairing(self):
        """c = (-1)^{|lam||mu| + |mu|} lam(eta)."""
        l, m = self.lam.degree, self.mu.degree
        return self.lam_eta().scale(sgn(l * m + m))

    def copairing_map(self):
        return element_as_map(self.copairing(), degree=self.lam.degree - self.mu.degree)

    def pairing(self):
        """p = (-1)^{|lam|} eps mu."""
        return self.eps_mu().scale(sgn(self.lam.degree))

    def replace(self, **kw):
        args = dict(module=self.module, mu=self.mu, lam=self.lam,
                    eta=self.eta, eps=self.eps, window=self.window)
        args.update(kw)
        return BialgebraData(**args)

    def __repr__(self):
        parts = [p for p, v in [("mu", self.mu), ("lam", self.lam),
                                ("eta", self.eta), ("eps", self.eps)] if v is not None]
        return f"BialgebraData({self.module.name or self.module!r}; {', '.join(parts)})"


class _Ops:
    """Precomputed building blocks for the relation pipelines."""

    def __init__(self, data):
        self.data = data
        self.id = GradedMap.identity(data.space)
        self.tau = twist(data.module, data.module)
        self.mu = data.mu
        self.lam = data.lam
        self.m = data.mu.degree if data.mu is not None else 0
        self.l = data.lam.degree if data.lam is not None else 0
        if data.lam is not None:
            self.tl = compose(self.tau, data.lam)
        if data.mu is not None:
            self.mt = compose(data.mu, self.tau)
        if data.eta is not None and data.mu is not None and data.lam is not None:
            self.lh = data.lam_eta_map()
            self.c_map = data.copairing_map()
            self.eta_map = data.eta_map()
        if data.eps is not None and data.mu is not None:
            self.pm = data.eps_mu()
            self.p_map = data.pairing()


def check_product_laws(data):
    """Associativity, commutativity, and the unit law (skipped without eta)."""
    o = _Ops(data)
    w = data.window
    m = o.m
    out = [
        check_relation("associativity", data.space3,
                       [(1, [[o.mu, o.id], [o.mu]])],
                       [(sgn(m), [[o.id, o.mu], [o.mu]])], w),
        check_relation("commutativity", data.space2,
                       [(1, [[o.tau], [o.mu]])],
                       [(sgn(m), [[o.mu]])], w),
    ]
    if data.eta is None:
        out.append(skipped("unit", "no unit present"))
    else:
        out.append(check_relation("unit-left", data.space,
                                  [(sgn(m), [[o.eta_map, o.id], [o.mu]])],
                                  [(1, [])], w))
        out.append(check_relation("unit-right", data.space,
                                  [(1, [[o.id, o.eta_map], [o.mu]])],
                                  [(1, [])], w))
    return out


def check_coproduct_laws(data):
    """Coassociativity, cocommutativity, and the counit law."""
    o = _Ops(data)
    w = data.window
    l = o.l
    out = [
        check_relation("coassociativity", data.space,
                       [(1, [[o.lam], [o.lam, o.id]])],
                       [(sgn(l), [[o.lam], [o.id, o.lam]])], w),
        check_relation("cocommutativity", data.space,
                       [(1, [[o.lam], [o.tau]])],
                       [(sgn(l), [[o.lam]])], w),
    ]
    if data.eps is None:
        out.append(skipped("counit", "no counit present"))
    else:
        out.append(check_relation("counit-left", data.space,
                                  [(1, [[o.lam], [data.eps, o.id]])],
                                  [(1, [])], w))
        out.append(check_relation("counit-right", data.space,
                                  [(sgn(l), [[o.lam], [o.id, data.eps]])],
                                  [(1, [])], w))
    return out


def check_unital_infinitesimal(data):
    if data.eta is None:
        raise ValueError("unital infinitesimal relation needs a unit")
    o = _Ops(data)
    l, m = o.l, o.m
    return check_relation(
        "unital-infinitesimal", data.space2,
        [(1, [[o.mu], [o.lam]])],
        [(sgn(l * m), [[o.lam, o.id], [o.id, o.mu]]),
         (sgn(l * m), [[o.id, o.lam], [o.mu, o.id]]),
         (-sgn(m), [[o.id, o.lh, o.id], [o.mu, o.mu]])],
        data.window)


def s_operator(data):
    """S = (mu(x)1)(1(x)tau lam) - (-1)^{|mu|} (1(x)mu)(tau lam(x)1), degree |mu|+|lam|."""
    o = _Ops(data)
    first = compose(tensor_maps(o.mu, o.id), tensor_maps(o.id, o.tl))
    second = compose(tensor_maps(o.id, o.mu), tensor_maps(o.tl, o.id))
    return first - second.scale(sgn(o.m))


def check_unital_antisymmetry(data):
    """The six-term relation, its S-operator form, and the eta (x) eta consequence."""
    if data.eta is None:
        raise ValueError("unital anti-symmetry needs a unit")
    o = _Ops(data)
    l, m = o.l, o.m
    w = data.window
    six = check_relation(
        "unital-anti-symmetry", data.space2,
        [(sgn(m * (l + 1)), [[o.tl, o.id], [o.id, o.mu]]),
         (sgn(l * (m + 1)), [[o.id, o.lam], [o.mt, o.id]]),
         (-sgn(l + m), [[o.id, o.lh, o.id], [o.mt, o.mu]])],
        [(sgn(l * m), [[o.lam, o.id], [o.id, o.mt], [o.tau]]),
         (-sgn((l + 1) * (m + 1)), [[o.id, o.tl], [o.mu, o.id], [o.tau]]),
         (-sgn(m), [[o.id, o.lh, o.id], [o.mu, o.mt], [o.tau]])],
        w)
    s = s_operator(data)
    s_form = check_relation(
        "anti-symmetry-S-operator", data.space2,
        [(1, [[o.tau], [s], [o.tau]])],
        [(-sgn(m + l), [[s]])],
        w)
    consequence = check_elements_equal(
        "twist-of-lam-eta",
        o.tau(data.lam_eta()),
        data.lam_eta().scale(sgn(l)),
        w)
    return [six, s_form, consequence]


def check_counital_infinitesimal(data):
    if data.eps is None:
        raise ValueError("counital infinitesimal relation needs a counit")
    o = _Ops(data)
    l, m = o.l, o.m
    rel = check_relation(
        "counital-infinitesimal", data.space2,
        [(1, [[o.mu], [o.lam]])],
        [(sgn(l * m), [[o.lam, o.id], [o.id, o.mu]]),
         (sgn(l * m), [[o.id, o.lam], [o.mu, o.id]]),
         (-sgn(l), [[o.lam, o.lam], [o.id, o.pm, o.id]])],
        data.window)
    return rel


def check_counital_antisymmetry(data):
    if data.eps is None:
        raise ValueError("counital anti-symmetry needs a counit")
    o = _Ops(data)
    l, m = o.l, o.m
    w = data.window
    six = check_relation(
        "counital-anti-symmetry", data.space2,
        [(sgn(m * (l + 1)), [[o.tl, o.id], [o.id, o.mu]]),
         (sgn(l * (m + 1)), [[o.id, o.lam], [o.mt, o.id]]),
         (-sgn(l + m), [[o.tl, o.lam], [o.id, o.pm, o.id]])],
        [(sgn(l * m), [[o.lam, o.id], [o.id, o.mt], [o.tau]]),
         (-sgn((l + 1) * (m + 1)), [[o.id, o.tl], [o.mu, o.id], [o.tau]]),
         (-sgn(l), [[o.tau], [o.lam, o.tl], [o.id, o.pm, o.id]])],
        w)
    consequence = check_relation(
        "eps-mu-twist", data.space2,
        [(1, [[o.tau], [o.pm]])],
        [(sgn(m), [[o.pm]])],
        w)
    return [six, consequence]


def check_biunital_infinitesimal(data):
    """Both infinitesimal relations plus the bridging equalities of the
    biunital definition."""
    if data.eta is None or data.eps is None:
        raise ValueError("biunital infinitesimal relation needs unit and counit")
    o = _Ops(data)
    l, m = o.l, o.m
    w = data.window
    out = [check_unital_infinitesimal(data), check_counital_infinitesimal(data)]
    out.append(check_relation(
        "biunital-bridge", data.space2,
        [(sgn(l), [[o.lam, o.lam], [o.id, o.pm, o.id]])],
        [(sgn(m), [[o.id, o.lh, o.id], [o.mu, o.mu]])], w))
    out.append(check_relation(
        "biunital-anti-bridge-1", data.space2,
        [(1, [[o.id, o.lh, o.id], [o.mt, o.mu]])],
        [(1, [[o.tl, o.lam], [o.id, o.pm, o.id]])], w))
    out.append(check_relation(
        "biunital-anti-bridge-2", data.space2,
        [(1, [[o.id, o.lh, o.id], [o.mu, o.mt]])],
        [(1, [[o.lam, o.tl], [o.id, o.pm, o.id]])], w))
    out.extend(check_unital_antisymmetry(data))
    out.extend(check_counital_antisymmetry(data))
    return out


def copairing(data):
    return data.copairing()


def pairing(data):
    return data.pairing()


def check_copairing_symmetry(data):
    o = _Ops(data)
    return check_elements_equal(
        "copairing-symmetry",
        o.tau(data.copairing()),
        data.copairing().scale(sgn(o.l)),
        data.window)


def check_pairing_symmetry(data):
    o = _Ops(data)
    return check_relation(
        "pairing-symmetry", data.space2,
        [(1, [[o.tau], [o.p_map]])],
        [(sgn(o.m), [[o.p_map]])],
        data.window)


def check_cofrobenius(data, flavor="biunital"):
    """The defining relations of the requested coFrobenius flavor.

    unital:   lam = (1(x)mu)(c(x)1) = (-1)^m (mu(x)1)(1(x)c), tau c = (-1)^l c
    counital: mu = (-1)^{ml+l}(p(x)1)(1(x)lam) = (-1)^{ml}(1(x)p)(lam(x)1),
              p tau = (-1)^m p
    plus unit/counit laws and (co)associativity for the flavor.
    """
    if flavor not in ("unital", "counital", "biunital"):
        raise ValueError(f"unknown coFrobenius flavor {flavor!r}")
    o = _Ops(data)
    l, m = o.l, o.m
    w = data.window
    out = []
    if flavor in ("unital", "biunital"):
        if data.eta is None:
            raise ValueError("unital coFrobenius needs a unit")
        laws = check_product_laws(data)
        out.extend(r for r in laws
                   if r.name == "associativity" or r.name.startswith("unit"))
        out.append(check_relation(
            "coassociativity", data.space,
            [(1, [[o.lam], [o.lam, o.id]])],
            [(sgn(l), [[o.lam], [o.id, o.lam]])], w))
        out.append(check_relation(
            "unital-cofrobenius-left", data.space,
            [(1, [[o.lam]])],
            [(1, [[o.c_map, o.id], [o.id, o.mu]])], w))
        out.append(check_relation(
            "unital-cofrobenius-right", data.space,
            [(1, [[o.lam]])],
            [(sgn(m), [[o.id, o.c_map], [o.mu, o.id]])], w))
        out.append(check_copairing_symmetry(data))
    if flavor in ("counital", "biunital"):
        if data.eps is None:
            raise ValueError("counital coFrobenius needs a counit")
        out.append(check_relation(
            "associativity", data.space3,
            [(1, [[o.mu, o.id], [o.mu]])],
            [(sgn(m), [[o.id, o.mu], [o.mu]])], w))
        out.extend(r for r in check_coproduct_laws(data)
                   if r.name.startswith(("coassociativity", "counit")))
        out.append(check_relation(
            "counital-cofrobenius-left", data.space2,
            [(1, [[o.mu]])],
            [(sgn(m * l + l), [[o.id, o.lam], [o.p_map, o.id]])], w))
        out.append(check_relation(
            "counital-cofrobenius-right", data.space2,
            [(1, [[o.mu]])],
            [(sgn(m * l), [[o.lam, o.id], [o.id, o.p_map]])], w))
        out.append(check_pairing_symmetry(data))
    # drop duplicate relation names while preserving order
    seen = set()
    uniq = []
    for r in out:
        if r.name not in seen:
            seen.add(r.name)
            uniq.append(r)
    return uniq


def check_derived_identities(data, flavor="biunital"):
    """The derived identities of the coFrobenius propositions."""
    o = _Ops(data)
    l, m = o.l, o.m
    w = data.window
    out = []
    scal = scalar_space(data.field)
    if flavor in ("unital", "biunital"):
        out.append(check_relation(
            "derived-c-c-triple", scal,
            [(1, [[o.c_map, o.c_map], [o.id, o.mu, o.id]])],
            [(1, [[o.c_map], [o.lam, o.id]])], w))
        out.append(check_relation(
            "derived-lam-c-symmetric", scal,
            [(1, [[o.c_map], [o.lam, o.id]])],
            [(sgn(l), [[o.c_map], [o.id, o.lam]])], w))
        out.append(check_relation(
            "derived-four-way-a", data.space2,
            [(1, [[o.lam, o.id], [o.id, o.mu]])],
            [(1, [[o.id, o.lam], [o.mu, o.id]])], w))
        out.append(check_relation(
            "derived-four-way-b", data.space2,
            [(1, [[o.id, o.lam], [o.mu, o.id]])],
            [(1, [[o.id, o.c_map, o.id], [o.mu, o.mu]])], w))
        out.append(check_relation(
            "derived-four-way-c", data.space2,
            [(1, [[o.id, o.c_map, o.id], [o.mu, o.mu]])],
            [(sgn(l * m), [[o.mu], [o.lam]])], w))
    if flavor in ("counital", "biunital"):
        p_deg = data.eps.degree + m
        out.append(check_relation(
            "derived-p-p-triple", data.space3,
            [(sgn(p_deg * m), [[o.id, o.lam, o.id], [o.p_map, o.p_map]])],
            [(1, [[o.mu, o.id], [o.p_map]])], w))
        out.append(check_relation(
            "derived-p-mu-symmetric", data.space3,
            [(1, [[o.mu, o.id], [o.p_map]])],
            [(sgn(m), [[o.id, o.mu], [o.p_map]])], w))
        out.append(check_relation(
            "derived-lam-lam-p", data.space2,
            [(1, [[o.lam, o.lam], [o.id, o.p_map, o.id]])],
            [(1, [[o.mu], [o.lam]])], w))
    if flavor == "biunital":
        out.append(check_relation(
            "derived-eps-from-p-eta", data.space,
            [(sgn(l), [[data.eps]])],
            [(1, [[o.id, o.eta_map], [o.p_map]])], w))
        out.append(check_relation(
            "derived-p-eta-sides", data.space,
            [(1, [[o.id, o.eta_map], [o.p_map]])],
            [(sgn(m), [[o.eta_map, o.id], [o.p_map]])], w))
        out.append(check_relation(
            "derived-eta-from-eps-c", scal,
            [(sgn(l * m + m), [[o.eta_map]])],
            [(1, [[o.c_map], [data.eps, o.id]])], w))
        out.append(check_relation(
            "derived-eps-c-sides", scal,
            [(1, [[o.c_map], [data.eps, o.id]])],
            [(sgn(l), [[o.c_map], [o.id, data.eps]])], w))
        out.append(check_relation(
            "derived-p-c-left-inverse", data.space,
            [(1, [[o.c_map, o.id], [o.id, o.p_map]])],
            [(1, [])], w))
        out.append(check_relation(
            "derived-p-c-right-inverse", data.space,
            [(sgn(l + m), [[o.id, o.c_map], [o.p_map, o.id]])],
            [(1, [])], w))
    return out


def check_involutive(data):
    """mu lam = 0; for unital coFrobenius data also cross-checks mu c = 0,
    for counital also p lam = 0 (equivalent formulations)."""
    o = _Ops(data)
    w = data.window
    out = [check_relation("involutive-mu-lam", data.space,
                          [(1, [[o.lam], [o.mu]])], [], w)]
    if data.eta is not None:
        out.append(check_elements_equal(
            "involutive-mu-c", data.mu(data.copairing()),
            Element(data.space), w))
    if data.eps is not None:
        out.append(check_relation(
            "involutive-p-lam", data.space,
            [(1, [[o.lam], [o.p_map]])], [], w))
    return out


def direct_sum(d1, d2):
    """Block-diagonal sum: mu, lam act componentwise, eta = (eta1, eta2),
    eps = eps1 + eps2."""
    if d1.field != d2.field:
        raise ValueError("direct sum needs the same coefficient field")
    for attr in ("eta", "eps"):
        if (getattr(d1, attr) is None) != (getattr(d2, attr) is None):
            raise ValueError(f"direct sum flavor mismatch: {attr} present on one side only")
    if (d1.mu.degree, d1.lam.degree) != (d2.mu.degree, d2.lam.degree):
        raise ValueError("direct sum needs matching structure degrees")
    a, b = d1.module, d2.module
    from .core import GradedModule
    module = GradedModule(list(zip(a.labels, a.degrees)) + list(zip(b.labels, b.degrees)),
                          field=d1.field,
                          name=f"{a.name}(+){b.name}" if a.name or b.name else "")
    off = a.dim
    sp1 = TensorSpace((module,))
    sp2 = TensorSpace((module, module))

    def lift(idx, offset):
        return tuple(i + offset for i in idx)

    mu_entries = {}
    for src, row in d1.mu.entries.items():
        mu_entries[src] = {dst: v for dst, v in row.items()}
    for src, row in d2.mu.entries.items():
        mu_entries[lift(src, off)] = {lift(dst, off): v for dst, v in row.items()}
    mu = GradedMap(sp2, sp1, d1.mu.degree, mu_entries)

    lam_entries = {}
    for src, row in d1.lam.entries.items():
        lam_entries[src] = {dst: v for dst, v in row.items()}
    for src, row in d2.lam.entries.items():
        lam_entries[lift(src, off)] = {lift(dst, off): v for dst, v in row.items()}
    lam = GradedMap(sp1, sp2, d1.lam.degree, lam_entries)

    eta = None
    if d1.eta is not None:
        coeffs = dict(d1.eta.coeffs)
        coeffs.update({lift(idx, off): v for idx, v in d2.eta.coeffs.items()})
        eta = Element(sp1, coeffs)
    eps = None
    if d1.eps is not None:
        entries = {src: dict(row) for src, row in d1.eps.entries.items()}
        entries.update({lift(src, off): dict(row) for src, row in d2.eps.entries.items()})
        eps = GradedMap(sp1, scalar_space(d1.field), d1.eps.degree, entries)

    if d1.window is None and d2.window is None:
        window = None
    elif d1.window is None:
        window = d2.window
    elif d2.window is None:
        window = d1.window
    else:
        window = d1.window.merged(d2.window)
    return BialgebraData(module, mu, lam, eta, eps, window)


def counit_solve(data):
    """Solve (eps(x)1)lam = 1 = (-1)^l (1(x)eps)lam exactly for eps.

    Returns the counit as an Element of A^v-coefficients (a dict
    label -> scalar) or None when the linear system is infeasible.  On
    window models only window-valid equations are used, so infeasibility
    of the restricted system certifies infeasibility of the full one.
    """
    from .fields import solve_linear
    o = _Ops(data)
    l = o.l
    field = data.field
    module = data.module
    unknowns = [i for i in range(module.dim) if module.degree(i) == l]
    col = {i: k for k, i in enumerate(unknowns)}
    rows, rhs = [], []
    w = data.window
    for x in range(module.dim):
        labels = (module.labels[x],)
        if w is not None and not w.input_valid(labels):
            continue
        expansion = data.lam((x,))
        for y in range(module.dim):
            if w is not None and not w.coordinate_reliable(labels, (module.labels[y],)):
                continue
            row_left = [field.zero] * len(unknowns)
            row_right = [field.zero] * len(unknowns)
            for (u, v), cf in expansion.coeffs.items():
                if v == y and u in col:
                    row_left[col[u]] = field.add(row_left[col[u]], cf)
                if u == y and v in col:
                    s = sgn(l * (module.degree(u) % 2)) * sgn(l)
                    row_right[col[v]] = field.add(row_right[col[v]],
                                                  field.mul(field.coerce(s), cf))
            target = field.one if x == y else field.zero
            rows.append(row_left)
            rhs.append(target)
            rows.append(row_right)
            rhs.append(target)
    if not unknowns:
        if all(field.is_zero(b) for b in rhs):
            return GradedMap(data.space, scalar_space(field), -l, {})
        return None
    sol = solve_linear(rows, rhs, field)
    if sol is None:
        return None
    entries = {(unknowns[k],): {(): sol[k]}
               for k in range(len(unknowns)) if not field.is_zero(sol[k])}
    return GradedMap(data.space, scalar_space(field), -l, entries)
