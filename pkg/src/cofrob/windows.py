"""Truncation windows standing in for completed tensor products.

An infinite model (Laurent-type basis U^k) is represented on the finite
window |k| <= bound.  A relation check on a basis input is *window-valid*
when no exponent reachable from it within `slack` structure-map
applications can leave the window; checks on window models aggregate only
window-valid inputs and flag the rest inconclusive.

Reachable exponents of the shipped relations are of the form
+-(subset sum of input exponents) +- (subset sum of the inspected output
coordinate's exponents) + drift with |drift| <= slack, so:

- an input x is valid iff  max|subset sum of x| + slack <= bound - 1;
- a coordinate y of the comparison is reliable for x iff
  max|subset sum of x| + max|subset sum of y| + slack <= bound.

Coordinates that are not reliable are masked from the comparison (counted,
never silently passed).  Basis labels without a recorded weight have
weight 0 and are always safe.
"""


class WindowSpec:
    def __init__(self, bound, slack, weights):
        self.bound = int(bound)
        self.slack = int(slack)
        self.weights = dict(weights)

    def weight(self, label):
        return self.weights.get(label, 0)

    def _max_subset_abs(self, labels):
        lo = hi = 0
        for lbl in labels:
            w = self.weights.get(lbl, 0)
            if w > 0:
                hi += w
            elif w < 0:
                lo += w
        return max(hi, -lo)

    def input_valid(self, labels):
        return self._max_subset_abs(labels) + self.slack <= self.bound - 1

    def coordinate_reliable(self, input_labels, coord_labels):
        return (self._max_subset_abs(input_labels)
                + self._max_subset_abs(coord_labels)
                + self.slack <= self.bound)

    def dualized(self, dual_suffix="'"):
        return WindowSpec(self.bound, self.slack,
                          {lbl + dual_suffix: -w for lbl, w in self.weights.items()})

    def shifted(self, prefix="s."):
        return WindowSpec(self.bound, self.slack,
                          {prefix + lbl: w for lbl, w in self.weights.items()})

    def merged(self, other):
        if other is None:
            return self
        if (self.bound, self.slack) != (other.bound, other.slack):
            raise ValueError("cannot merge windows with different bound/slack")
        weights = dict(self.weights)
        for lbl, w in other.weights.items():
            if weights.get(lbl, w) != w:
                raise ValueError(f"conflicting window weight for label {lbl!r}")
            weights[lbl] = w
        return WindowSpec(self.bound, self.slack, weights)

    def __eq__(self, other):
        return (isinstance(other, WindowSpec)
                and (self.bound, self.slack, self.weights)
                == (other.bound, other.slack, other.weights))

    def __repr__(self):
        return f"WindowSpec(bound={self.bound}, slack={self.slack})"


def merge_windows(*specs):
    out = None
    for spec in specs:
        if spec is None:
            continue
        out = spec if out is None else out.merged(spec)
    return out
