"""Power graphs, directed power graphs and enhanced power graphs of finite groups."""

__version__ = "0.1.0"

from .builder import build_bundle, check_product_law, enhanced_power_graph, power_graph
from .group import FiniteGroup, abelian, cyclic, dihedral, direct_product, validate

__all__ = [
    "FiniteGroup",
    "abelian",
    "build_bundle",
    "check_product_law",
    "cyclic",
    "dihedral",
    "direct_product",
    "enhanced_power_graph",
    "power_graph",
    "validate",
]
