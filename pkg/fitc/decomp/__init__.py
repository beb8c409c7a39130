"""Decompilation of answers into feature-term notation."""

from .decode import Decoder, decode, findom_expression
from .render import render

__all__ = ["Decoder", "decode", "findom_expression", "render"]
