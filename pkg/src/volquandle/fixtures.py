"""Built-in figure-eight knot fixture: PD code and holonomy documents."""

from __future__ import annotations

import math

_S = math.sqrt(3.0)

FIG8_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"

# Hyperbolic volume of the figure-eight complement: 2 * D(exp(i*pi/3)).
FIG8_VOLUME = 2.029883212819307


def _c(re, im=0.0):
    return [float(re), float(im)]


FIG8_HOLONOMY = {
    "generators": ["x", "y", "z", "w"],
    "matrices": {
        "x": [[_c(0.5, -_S / 2), _c(0.5, _S / 2)],
              [_c(-0.5, -_S / 2), _c(1.5, _S / 2)]],
        "y": [[_c(1), _c(0.5, _S / 2)],
              [_c(0), _c(1)]],
        "z": [[_c(1.5, _S / 2), _c(0.5, -_S / 2)],
              [_c(1), _c(0.5, -_S / 2)]],
        "w": [[_c(1), _c(0)],
              [_c(1), _c(1)]],
    },
    "orientation": "standard",
    "volume": FIG8_VOLUME,
}

FIG8_HOLONOMY_REVERSED = {
    "generators": ["x^-1", "y^-1", "z^-1", "w^-1"],
    "matrices": {
        "x^-1": [[_c(1), _c(0)],
                 [_c(1), _c(1)]],
        "y^-1": [[_c(1, _S), _c(0.5, -_S / 2)],
                 [_c(1.5, 1.5 * _S), _c(1, -_S)]],
        "z^-1": [[_c(1.5, _S / 2), _c(0.5, -_S / 2)],
                 [_c(1), _c(0.5, -_S / 2)]],
        "w^-1": [[_c(0.5, -_S / 2), _c(0.5, _S / 2)],
                 [_c(-0.5, -_S / 2), _c(1.5, _S / 2)]],
    },
    "orientation": "reversed",
    "volume": FIG8_VOLUME,
}

# The same knot with one Reidemeister-II move added (the arc carrying
# edges 3-4 pushed over the arc carrying edges 7-8 across their common
# bigon, edges relabeled 1..12), for diagram-independence checks.
FIG8_PD_R2 = (
    "X(6,2,7,1) X(12,8,1,7) X(8,5,9,6) X(2,11,3,12) X(10,3,11,4) X(9,5,10,4)"
)

FIXTURES = {
    "fig8": {
        "pd": FIG8_PD,
        "holonomy": FIG8_HOLONOMY,
        "holonomy_reversed": FIG8_HOLONOMY_REVERSED,
    },
}
