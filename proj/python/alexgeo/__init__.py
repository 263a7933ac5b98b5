"""Geodesic metric spaces with curvature bounded below: model-space geometry,
comparison-angle curvature audits, tangent-cone arithmetic, semiconcave
differentials and gradients, barycenter solving and Jensen certification."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
