"""Declarations: signature and finite domains."""

from .findom import domain_of, element_subset
from .signature import TOP, DomainInfo, FeatureInfo, Signature, SortInfo, build_signature

__all__ = [
    "TOP", "DomainInfo", "FeatureInfo", "Signature", "SortInfo",
    "build_signature", "domain_of", "element_subset",
]
