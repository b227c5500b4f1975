"""Exact arithmetic for convolution polynomial families.

A convolution family is a sequence of polynomials ``F_n(x) = [z^n] F(z)^x``.
The package builds families and their (Jabotinsky) matrices, composes and
fractionally iterates the exponent series, reverts them, extends the
matrices to negative indices, and compares saddle-point approximations
against exact values.
"""
from .series import TruncatedSeries, SeriesError, format_rational
from .poly import XPolynomial
from .family import Family, family_from
from .catalog import catalog, catalog_series
from .matrix import ConvolutionTriangle, QMatrix, triangle_from, triangle_power, revert

__all__ = ["TruncatedSeries", "SeriesError", "format_rational", "XPolynomial", "Family",
           "family_from", "catalog", "catalog_series", "ConvolutionTriangle", "QMatrix",
           "triangle_from", "triangle_power", "revert"]
