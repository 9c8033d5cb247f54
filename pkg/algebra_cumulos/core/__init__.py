# Núcleo del motor de álgebras de cúmulos
from .cluster import Seed, explore, initial_seed, mutate
from .laurent import LaurentPoly, VarTable
from .surface import ExchangeMatrix, MarkedSurface, Triangulation, exchange_matrix, flip
