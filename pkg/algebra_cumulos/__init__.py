"""
Álgebra de cúmulos de superficies marcadas
Motor simbólico: polinomios de Laurent exactos, triangulaciones, mutación,
puente con el álgebra de madeja y conjuntos generadores
"""

__version__ = "1.0.0"
__description__ = "Motor de álgebras de cúmulos de superficies triangulables"
