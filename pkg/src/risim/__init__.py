"""Link-level simulator for an RIS-aided MISO downlink that conveys bits
through reflection patterns, with K-means based constellation design,
Gray bit mapping, Monte Carlo BER simulation and a numerical BER bound."""

__version__ = "0.1.0"
