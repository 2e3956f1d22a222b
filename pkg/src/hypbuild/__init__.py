"""Combinatorial and metric machinery for hyperbolic buildings.

Modules:
    chamber     exact chamber polygons and areas
    coxeter     Coxeter tessellations, walls, word problem
    genpoly     generalized polygons (vertex links)
    rabuilding  right-angled thick building balls via graph products
    weights     exact log-prime value type
    metrics     dual-graph metrics, boundary products, cross ratios
    catalog     triangle/quadrilateral enumeration via Gauss-Bonnet
    geomrender  numeric hyperbolic realization and SVG rendering
    cli         command-line interface
"""

__version__ = "0.1.0"
