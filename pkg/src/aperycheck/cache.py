"""On-disk Bernoulli table cache.

Format: a header line ``BERNOULLI-CACHE v1`` followed by ``<n> <num>/<den>``
lines for n = 0, 1, 2, ... with no gaps.  A loaded cache is re-validated
before use; anything suspicious is discarded and rebuilt.
"""
from __future__ import annotations

import logging
import math
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .sequences import BernoulliTable, bernoulli_table, extend_bernoulli_table

log = logging.getLogger(__name__)

HEADER = "BERNOULLI-CACHE v1"
ENV_VAR = "APERY_CACHE"


class CacheError(ValueError):
    pass


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "aperycheck" / "bernoulli.txt"


def dumps(table: BernoulliTable) -> str:
    lines = [HEADER]
    lines += [f"{n} {b.numerator}/{b.denominator}" for n, b in enumerate(table.values)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> BernoulliTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise CacheError("missing cache header")
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            idx, frac = line.split()
            num, den = frac.split("/")
            n, a, b = int(idx), int(num), int(den)
        except ValueError:
            raise CacheError(f"line {lineno}: malformed entry {line!r}") from None
        if n != len(values):
            raise CacheError(f"line {lineno}: expected index {len(values)}, got {n}")
        if b <= 0 or math.gcd(a, b) != 1:
            raise CacheError(f"line {lineno}: {a}/{b} is not in lowest terms")
        values.append(Fraction(a, b))
    if not values:
        raise CacheError("cache holds no entries")
    table = BernoulliTable(tuple(values))
    validate(table)
    return table


def _spot_rows(N: int, count: int = 5):
    # row n involves B_0..B_{n-1}; row N+1 reaches the last entry
    if N < 1:
        return []
    return sorted({2 + (N - 1) * i // (count - 1) for i in range(count)})


def validate(table: BernoulliTable) -> None:
    """Raise CacheError unless the table looks like genuine Bernoulli numbers."""
    v = table.values
    if v[0] != 1:
        raise CacheError("B_0 != 1")
    if len(v) > 1 and v[1] != Fraction(-1, 2):
        raise CacheError("B_1 != -1/2")
    for n in range(3, len(v), 2):
        if v[n]:
            raise CacheError(f"B_{n} should vanish")
    for n in _spot_rows(table.max_index):
        if table.recurrence_residual(n):
            raise CacheError(f"recurrence fails at row {n}")


def save(table: BernoulliTable, path: Path) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(table))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path: Path) -> Optional[BernoulliTable]:
    """Load a validated table, or None if the file is absent or corrupt."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        return loads(path.read_text(encoding="utf-8"))
    except (CacheError, UnicodeDecodeError) as exc:
        log.warning("discarding corrupt Bernoulli cache %s: %s", path, exc)
        return None


def load_or_build_cache(path: Path, needed_max_index: int) -> BernoulliTable:
    """Return a table covering ``needed_max_index``, reusing and extending the cache."""
    table = load(path)
    if table is not None and table.max_index >= needed_max_index:
        return table
    if table is None:
        table = bernoulli_table(needed_max_index)
    else:
        table = extend_bernoulli_table(table, needed_max_index)
    save(table, path)
    return table
