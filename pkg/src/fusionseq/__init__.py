"""fusionseq: fusion rings, certified Frobenius-Perron dimensions, and
exactness certification for sequences of tensor categories at the level
of Grothendieck rings."""

__version__ = "0.1.0"
