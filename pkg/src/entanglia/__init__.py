"""entanglia: separability criteria, entanglement measures and
partial-separability classification for finite-dimensional
multipartite quantum states."""

__version__ = "0.1.0"
