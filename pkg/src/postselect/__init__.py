"""Pre/postselected interference: the three-box pigeonhole setup and the Cheshire grin exchange."""

__version__ = "0.1.0"
