"""coinkit: randomized algorithms at desk scale, each paired with an exact oracle.

Subpackages and modules:

- ``exprlang``: parse huge arithmetic expressions and decide equality via
  random prime fingerprints, never expanding the numbers.
- ``numtheory``: Miller-Rabin primality, random primes, trial-division
  factoring baseline.
- ``pairwise``: subset-XOR pairwise-independent bit generator and exhaustive
  verifiers.
- ``extractor``: Toeplitz-hash randomness extraction from bit-fixing sources,
  exact distribution oracle, seed-enumeration generator, key recovery.
- ``sampling``: Monte Carlo area estimation, polling simulation, sample-size
  calculators.
- ``loadbalance``: random task assignment with exact load conservation.
- ``cli``: the ``coinkit`` command.
"""

from .bits import BitString
from .rng import BitStream

__version__ = "0.1.0"

__all__ = ["BitString", "BitStream", "__version__"]
