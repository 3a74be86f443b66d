"""Information-spectrum relative entropies, one-shot bounds and second-order expansions.

Modules
-------
herm
    Hermitian linear algebra, states, channels, distances, random instances.
divergences
    Information-spectrum, hypothesis-testing and smooth max divergences.
classical
    Nussbaum-Szkola reduction and exact classical spectra of i.i.d. sequences.
second_order
    a*n + b*sqrt(n) coefficients for the five information-processing tasks.
protocols
    Constructive codes, one-shot brackets and majorization certificates.
cli, verify
    Command-line interface and the randomized verification suites.
"""

__version__ = "0.1.0"
