"""Sample potentials on the finite chain and their periodic extensions.

A potential is the only degree of freedom of a sample: a finite list of
real on-site values v(1), ..., v(L).  Generators cover the flat, periodic,
random (Anderson) and Fibonacci families plus plain files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import ValidationError, rng_uniform

_GOLDEN_INV = 2.0 / (1.0 + math.sqrt(5.0))


@dataclass(frozen=True)
class Potential:
    """Immutable on-site potential v(1..L) with a generator label."""

    values: tuple
    label: str = "custom"

    def __post_init__(self):
        if len(self.values) < 1:
            raise ValidationError("potential length must be at least 1")
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("potential values must be finite")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def periodize(p: Potential, n: int) -> float:
    """Value of the L-periodic extension at any integer site n."""
    return p.values[(n - 1) % len(p.values)]


def repeat(p: Potential, n_copies: int) -> Potential:
    """The sample tiled n_copies times end to end."""
    if n_copies < 1:
        raise ValidationError("repetition count must be at least 1")
    if n_copies == 1:
        return p
    return Potential(p.values * n_copies, label=f"repeat({p.label},N={n_copies})")


def zero(length: int) -> Potential:
    return Potential((0.0,) * _check_length(length), label=f"zero(L={length})")


def constant(value: float, length: int) -> Potential:
    return Potential(
        (float(value),) * _check_length(length), label=f"constant(a={value},L={length})"
    )


def periodic_pattern(pattern, length: int) -> Potential:
    """Tile a finite pattern to the requested length (cyclically)."""
    pattern = tuple(float(v) for v in pattern)
    if not pattern:
        raise ValidationError("pattern must be non-empty")
    _check_length(length)
    vals = tuple(pattern[i % len(pattern)] for i in range(length))
    return Potential(vals, label=f"periodic(pattern={list(pattern)},L={length})")


def anderson(width: float, seed: int, length: int) -> Potential:
    """i.i.d. uniform values on [-width, width] from the repo-fixed RNG."""
    if not (math.isfinite(width) and width >= 0):
        raise ValidationError("disorder width must be finite and nonnegative")
    _check_length(length)
    if width == 0.0:
        vals = (0.0,) * length
    else:
        vals = tuple(rng_uniform(seed, length, -width, width))
    return Potential(vals, label=f"anderson(W={width},seed={seed},L={length})")


def fibonacci(coupling: float, length: int) -> Potential:
    """Fibonacci chain: coupling * chi(n) with chi driven by the golden mean."""
    _check_length(length)
    lam = float(coupling)
    vals = tuple(
        lam * (math.floor((n + 1) * _GOLDEN_INV) - math.floor(n * _GOLDEN_INV))
        for n in range(1, length + 1)
    )
    return Potential(vals, label=f"fibonacci(lambda={coupling},L={length})")


def from_file(path) -> Potential:
    """One real value per line; blank lines and '#' comments are skipped."""
    vals = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    vals.append(float(text))
                except ValueError:
                    raise ValidationError(f"{path}:{lineno}: cannot parse {text!r}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read potential file {path}: {exc}") from None
    if not vals:
        raise ValidationError(f"{path}: no potential values found")
    return Potential(tuple(vals), label=f"file({path})")


def make_potential(spec: dict, length: int | None = None) -> Potential:
    """Build a potential from a generator descriptor (as found in configs).

    ``length`` overrides/fills the descriptor's own "L" entry, which is how
    scaling scans reuse one descriptor across the whole length sequence.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("generator descriptor must be a dict with a 'kind'")
    kind = spec["kind"]
    L = length if length is not None else spec.get("L")
    if kind == "file":
        p = from_file(spec["path"])
        if L is not None and L != len(p):
            if L > len(p):
                raise ValidationError(f"file potential has only {len(p)} sites, need {L}")
            p = Potential(p.values[:L], label=f"file({spec['path']},L={L})")
        return p
    if L is None:
        raise ValidationError(f"descriptor {spec} needs a length")
    L = int(L)
    if kind == "zero":
        return zero(L)
    if kind == "constant":
        return constant(spec["a"], L)
    if kind == "periodic":
        return periodic_pattern(spec["pattern"], L)
    if kind == "anderson":
        return anderson(spec["W"], int(spec["seed"]), L)
    if kind == "fibonacci":
        return fibonacci(spec.get("lambda", spec.get("coupling", 1.0)), L)
    raise ValidationError(f"unknown potential kind {kind!r}")


def _check_length(length: int) -> int:
    if int(length) < 1:
        raise ValidationError("potential length must be at least 1")
    return int(length)
