# Interfaces del motor
