"""Complexity measures of stationary symbolic processes.

Block entropies, entropy rate, excess entropy, persistent mutual
information, and statistical complexity, exactly for closed-form
models (periodic, Markov, i.i.d., Ising chains, substitution fixed
points) and approximately for empirical symbol sequences.
"""

__version__ = "0.1.0"
