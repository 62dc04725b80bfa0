"""Personalized anti-whaling defense toolkit."""

__version__ = "0.3.0"

ENGINE_VERSION = "wg-engine/1.0"
