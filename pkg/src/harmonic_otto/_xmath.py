"""Elementary functions that work on floats, numpy arrays and mpmath numbers.

Objectives handed to the numeric oracle are scanned on numpy grids and then
refined with mpmath numbers; writing them against these helpers keeps one
definition for both passes.
"""
import numpy as np


def _ctx(x):
    return getattr(x, "context", None)


def exp(x):
    ctx = _ctx(x)
    return ctx.exp(x) if ctx is not None else np.exp(x)


def expm1(x):
    ctx = _ctx(x)
    return ctx.expm1(x) if ctx is not None else np.expm1(x)


def log(x):
    ctx = _ctx(x)
    return ctx.log(x) if ctx is not None else np.log(x)


def log1p(x):
    ctx = _ctx(x)
    return ctx.log1p(x) if ctx is not None else np.log1p(x)


def sqrt(x):
    ctx = _ctx(x)
    return ctx.sqrt(x) if ctx is not None else np.sqrt(x)
