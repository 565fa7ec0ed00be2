"""Word co-occurrence networks and modularity topic communities for short
conversational text."""

__version__ = "0.1.0"
