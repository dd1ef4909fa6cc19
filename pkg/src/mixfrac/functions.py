"""Named spatial functions usable both with numpy arrays and mpmath scalars.

Each :class:`SpaceFunction` wraps an expression ``expr(m, *coords)`` written
against a math namespace ``m`` (``numpy`` for grid sampling, ``mpmath`` for
high-precision reference evaluation), plus optional analytic gradient and
Laplacian.  The module-level :data:`CATALOG` holds every coefficient and mode
used by the bundled problem presets, addressable by name from JSON configs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["SpaceFunction", "SineMode", "apply_elliptic_exact", "CATALOG", "lookup"]


@dataclass(frozen=True)
class SpaceFunction:
    name: str
    expr: Callable
    grad: tuple[Callable, ...] | None = None
    laplacian: Callable | None = None
    scale: float = 1.0

    def __call__(self, *coords):
        return self.scale * self.expr(np, *coords)

    def mp(self, *coords):
        import mpmath

        return self.scale * self.expr(mpmath, *coords)

    def gradient(self, *coords, m=np):
        if self.grad is None:
            raise ValueError(f"{self.name}: no analytic gradient")
        return tuple(self.scale * g(m, *coords) for g in self.grad)

    def lap(self, *coords, m=np):
        if self.laplacian is None:
            raise ValueError(f"{self.name}: no analytic Laplacian")
        return self.scale * self.laplacian(m, *coords)

    def __mul__(self, s: float) -> "SpaceFunction":
        s = float(s)
        name = self.name if s == 1.0 else f"{s:g}*{self.name}"
        return SpaceFunction(name, self.expr, self.grad, self.laplacian, self.scale * s)

    __rmul__ = __mul__


def _const(value: float, name: str) -> SpaceFunction:
    def expr(m, *c):
        return value + 0 * c[0]

    def zero(m, *c):
        return 0 * c[0]

    return SpaceFunction(name, expr, grad=(zero, zero), laplacian=zero)


def SineMode(*wavenumbers: int) -> SpaceFunction:
    """Product of sin(k_d pi x_d) over the given wavenumbers (one per dimension).

    A wavenumber of 0 stands for a constant factor 1 in that direction.
    """
    ks = tuple(int(k) for k in wavenumbers)
    name = "*".join(f"sin({k}pi x{d})" for d, k in enumerate(ks) if k)

    def factor(m, k, x):
        return m.sin(k * m.pi * x) if k else 1 + 0 * x

    def expr(m, *c):
        out = 1
        for k, x in zip(ks, c):
            out = out * factor(m, k, x)
        return out

    def partial(d):
        def g(m, *c):
            out = 1
            for e, (k, x) in enumerate(zip(ks, c)):
                out = out * (k * m.pi * m.cos(k * m.pi * x) if e == d else factor(m, k, x))
            return out
        return g

    def lap(m, *c):
        return -sum((k * m.pi) ** 2 for k in ks) * expr(m, *c)

    return SpaceFunction(name, expr, grad=tuple(partial(d) for d in range(len(ks))), laplacian=lap)


def apply_elliptic_exact(p: SpaceFunction, q: SpaceFunction, u: SpaceFunction) -> SpaceFunction:
    """Analytic -div(p grad u) + q u as a new :class:`SpaceFunction`."""

    def expr(m, *c):
        gp = p.gradient(*c, m=m)
        gu = u.gradient(*c, m=m)
        return (-sum(a * b for a, b in zip(gp, gu)) - p.expr(m, *c) * p.scale * u.lap(*c, m=m)
                + q.scale * q.expr(m, *c) * u.scale * u.expr(m, *c))

    return SpaceFunction(f"A[{u.name}]", expr)


CATALOG: dict[str, SpaceFunction] = {
    "unit": _const(1.0, "unit"),
    "zero": _const(0.0, "zero"),
    "ex1_p": SpaceFunction("ex1_p", lambda m, x, *_: 3 - m.cos(2 * x),
                           grad=(lambda m, x, *_: 2 * m.sin(2 * x), lambda m, x, *_: 0 * x)),
    "ex1_q": SpaceFunction("ex1_q", lambda m, x, *_: 2 - m.sin(3 * x)),
    "ex2_p": SpaceFunction("ex2_p", lambda m, x, *_: 2 - m.cos(x),
                           grad=(lambda m, x, *_: m.sin(x), lambda m, x, *_: 0 * x)),
    "ex2_q": SpaceFunction("ex2_q", lambda m, x, *_: 1 - m.sin(x)),
    "sin2pix": SineMode(2),
    "sin4pix": SineMode(4),
    "sinpix": SineMode(1),
    "sinpix_2d": SineMode(1, 0),
    "sinpix_sinpiy": SineMode(1, 1),
}


def lookup(name: str) -> SpaceFunction:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; known: {', '.join(sorted(CATALOG))}") from None
