"""erdoslab: a desk-scale numerical laboratory for prime-factor statistics.

Everything is driven by a segmented multiplicative-function sieve that
produces, for every integer in a window, the distinct-prime count, the
with-multiplicity count, the divisor count, and the largest prime factor.
On top of it sit evaluators for the classical prime-sum constants, a
probabilistic model for the divisor-ratio constant c_tau, exact integer
random-walk distributions with their Gaussian local limits, consecutive-
value statistics, smooth-pair densities against the Dickman-de Bruijn
function, pretentious-distance / correlation diagnostics for bounded
multiplicative functions, and barrier-type scans.
"""

__version__ = "0.1.0"
