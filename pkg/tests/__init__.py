"""
Pacote de testes do kit numérico para operadores de Hill.
"""
