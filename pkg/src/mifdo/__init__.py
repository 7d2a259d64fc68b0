"""FDO and M-IFDO swarm optimizers with a benchmark harness."""

__version__ = "0.1.0"
