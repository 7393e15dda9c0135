"""Open subsets of H^n described by membership + exterior-distance oracles.

A DomainSpec knows three things about an open set U:

* ``contains(p)``      -- is the point inside U?
* ``ext_distance(p)``  -- the distance delta(p, complement of U), zero outside;
* ``nearest_boundary(p)`` -- a nearest point of the boundary (used by the hull
  witness construction); optional, closed-form for every built-in.

All oracles are vectorized: they accept flat real points of shape (..., 4n) and
return shape (...).  ``ext_distance`` is 1-Lipschitz and positive exactly on U.

Built-ins: balls, complements of a point, half-spaces, finite intersections,
the whole space and the empty set.  ``parse_domain`` builds these from JSON
dicts or from shorthand strings such as ``"H*:n=1"`` (punctured H^n).
"""

import json

import numpy as np

from .quat import qnorm

__all__ = [
    "DomainSpec", "Ball", "PointComplement", "HalfSpace", "Intersection",
    "WholeSpace", "EmptySet", "parse_domain",
]


class DomainSpec:
    """Base class; subclasses fill in ext_distance (and usually nearest_boundary)."""

    def __init__(self, n):
        self.n = int(n)
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def dim(self):
        return 4 * self.n

    def _check(self, p):
        p = np.asarray(p, dtype=float)
        if p.shape[-1] != self.dim:
            raise ValueError("expected points with %d coordinates, got %d"
                             % (self.dim, p.shape[-1]))
        return p

    def ext_distance(self, p):
        raise NotImplementedError

    def contains(self, p):
        return self.ext_distance(p) > 0.0

    def nearest_boundary(self, p):
        raise NotImplementedError(
            "%s has no nearest_boundary oracle" % type(self).__name__)

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        try:
            blob = self.to_json()
        except NotImplementedError:
            return "%s(n=%d)" % (type(self).__name__, self.n)
        args = ", ".join("%s=%r" % (k, v) for k, v in blob.items()
                         if k != "type")
        return "%s(%s)" % (type(self).__name__, args)


class Ball(DomainSpec):
    """Open ball {p : ||p - center|| < radius}."""

    def __init__(self, n, radius=1.0, center=None):
        super().__init__(n)
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.center = (np.zeros(self.dim) if center is None
                       else np.asarray(center, dtype=float).reshape(self.dim))

    def ext_distance(self, p):
        p = self._check(p)
        return np.maximum(0.0, self.radius - qnorm(p - self.center))

    def nearest_boundary(self, p):
        p = self._check(p)
        d = p - self.center
        r = qnorm(d)
        if np.any(r == 0):
            # center itself: every boundary point is nearest, pick an axis one
            d = np.where((r == 0)[..., None], _axis_dir(self.dim, d.shape), d)
            r = qnorm(d)
        return self.center + d * (self.radius / r)[..., None]

    def to_json(self):
        return {"type": "ball", "n": self.n, "radius": self.radius,
                "center": self.center.tolist()}


class PointComplement(DomainSpec):
    """H^n minus one point; the default point is the origin (punctured H^n)."""

    def __init__(self, n, point=None):
        super().__init__(n)
        self.point = (np.zeros(self.dim) if point is None
                      else np.asarray(point, dtype=float).reshape(self.dim))

    def ext_distance(self, p):
        p = self._check(p)
        return qnorm(p - self.point)

    def nearest_boundary(self, p):
        p = self._check(p)
        return np.broadcast_to(self.point, p.shape).copy()

    def to_json(self):
        return {"type": "point_complement", "n": self.n,
                "point": self.point.tolist()}


class HalfSpace(DomainSpec):
    """Open half-space {p : <normal, p> < offset}."""

    def __init__(self, n, normal, offset=0.0):
        super().__init__(n)
        self.normal = np.asarray(normal, dtype=float).reshape(self.dim)
        nn = float(np.linalg.norm(self.normal))
        if nn == 0:
            raise ValueError("normal must be nonzero")
        self.normal = self.normal / nn
        self.offset = float(offset) / nn

    def ext_distance(self, p):
        p = self._check(p)
        return np.maximum(0.0, self.offset - p @ self.normal)

    def nearest_boundary(self, p):
        p = self._check(p)
        gap = (self.offset - p @ self.normal)[..., None]
        return p + gap * self.normal

    def to_json(self):
        return {"type": "halfspace", "n": self.n,
                "normal": self.normal.tolist(), "offset": self.offset}


class Intersection(DomainSpec):
    """Finite intersection of domains over the same H^n."""

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise ValueError("intersection of zero domains is not supported")
        super().__init__(parts[0].n)
        if any(d.n != self.n for d in parts):
            raise ValueError("all parts must share the same n")
        self.parts = parts

    def ext_distance(self, p):
        # distance to the complement of the intersection = min over parts
        return np.minimum.reduce([d.ext_distance(p) for d in self.parts])

    def nearest_boundary(self, p):
        p = self._check(p)
        dists = np.stack([d.ext_distance(p) for d in self.parts], axis=0)
        which = np.argmin(dists, axis=0)
        cands = np.stack([d.nearest_boundary(p) for d in self.parts], axis=0)
        return np.take_along_axis(cands, which[None, ..., None], axis=0)[0]

    def to_json(self):
        return {"type": "intersection", "n": self.n,
                "parts": [d.to_json() for d in self.parts]}


class WholeSpace(DomainSpec):
    """All of H^n; exterior distance is +inf."""

    def ext_distance(self, p):
        p = self._check(p)
        return np.full(p.shape[:-1], np.inf)

    def to_json(self):
        return {"type": "whole_space", "n": self.n}


class EmptySet(DomainSpec):
    """The empty open set."""

    def ext_distance(self, p):
        p = self._check(p)
        return np.zeros(p.shape[:-1])

    def to_json(self):
        return {"type": "empty", "n": self.n}


def _axis_dir(dim, shape):
    e = np.zeros(shape[:-1] + (dim,))
    e[..., 0] = 1.0
    return e


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_SHORTHAND_HSTAR = "H*"


def parse_domain(spec):
    """Build a DomainSpec from a dict, a JSON string, or a shorthand string.

    Shorthands: ``"H*"`` or ``"H*:n=2"`` for the punctured space, and
    ``"ball"`` / ``"ball:r=2:n=1"`` for origin-centered balls.
    """
    if isinstance(spec, DomainSpec):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            return parse_domain(json.loads(s))
        return _parse_shorthand(s)
    if isinstance(spec, dict):
        return _parse_dict(spec)
    raise ValueError("cannot parse domain from %r" % (spec,))


def _parse_shorthand(s):
    head, _, rest = s.partition(":")
    opts = {}
    while rest:
        item, _, rest = rest.partition(":")
        key, _, val = item.partition("=")
        if not val:
            raise ValueError("bad domain shorthand option %r in %r" % (item, s))
        opts[key.strip()] = val.strip()
    n = int(opts.pop("n", 1))
    if head == _SHORTHAND_HSTAR:
        if opts:
            raise ValueError("unknown options for H*: %r" % (opts,))
        return PointComplement(n)
    if head == "ball":
        r = float(opts.pop("r", 1.0))
        if opts:
            raise ValueError("unknown options for ball: %r" % (opts,))
        return Ball(n, radius=r)
    raise ValueError("unknown domain shorthand %r" % (s,))


def _parse_dict(d):
    kind = d.get("type")
    n = int(d.get("n", 1))
    if kind == "ball":
        return Ball(n, radius=d.get("radius", 1.0), center=d.get("center"))
    if kind == "point_complement":
        return PointComplement(n, point=d.get("point"))
    if kind == "halfspace":
        return HalfSpace(n, normal=d["normal"], offset=d.get("offset", 0.0))
    if kind == "intersection":
        return Intersection([parse_domain(p) for p in d["parts"]])
    if kind == "whole_space":
        return WholeSpace(n)
    if kind == "empty":
        return EmptySet(n)
    raise ValueError("unknown domain type %r" % (kind,))
