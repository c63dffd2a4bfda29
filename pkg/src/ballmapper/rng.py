"""Seedable 64-bit generator with a documented integer scheme.

The cover construction must be replayable across implementations, so the
random source is pinned down exactly rather than delegated to a library
generator whose stream may change between versions:

* state update: splitmix64 — ``state += 0x9E3779B97F4A7C15`` (mod 2^64),
  then the output is ``mix64(state)`` where ``mix64`` xors and multiplies
  by the constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
* bounded draw ``below(n)``: draw 64-bit words ``u``, rejecting any
  ``u >= floor(2^64 / n) * n``; the result is ``u % n``.  Rejection keeps
  the draw exactly uniform.  Every call consumes at least one word, even
  for ``n == 1``.
"""

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream seeded with an arbitrary Python integer."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n


def child_seed(seed: int, index: int) -> int:
    """Derived seed for parallel sub-tasks (sweeps), stable across runs.

    Equals the splitmix64 output at offset ``index + 1`` from ``seed``,
    so children never collide with each other for distinct indices.
    """
    return mix64((seed + (index + 1) * _GOLDEN) & MASK64)
