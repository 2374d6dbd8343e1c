"""
Exceções do toolkit de operadores de Hill.

Todas derivam de ErroHill, de modo que a linha de comando pode tratar
qualquer falha numérica ou de entrada num único ponto.
"""

from typing import Optional


class ErroHill(Exception):
    """Classe base para erros do toolkit."""


class ErroPotencial(ErroHill, ValueError):
    """Documento de potencial malformado ou coeficiente inválido."""


class ErroIntegracao(ErroHill, RuntimeError):
    """
    Falha do integrador adaptativo.

    Args:
        mensagem (str): Descrição da falha
        x (float, optional): Posição em [0, 2π] onde a falha ocorreu
    """

    def __init__(self, mensagem: str, x: Optional[float] = None):
        if x is not None:
            mensagem = f"{mensagem} (x = {x:.17g})"
        super().__init__(mensagem)
        self.x = x


class ErroClasseGasymov(ErroHill, ValueError):
    """O potencial possui modos k <= 0."""


class ErroExpoenteNulo(ErroHill, ArithmeticError):
    """
    Um termo do produto q·u tem expoente deslocado nulo.

    A antiderivada deixa de ser periódica; é exatamente o ponto em que o
    argumento por cancelamento exato deixa de valer (ex.: Mathieu).
    """

    def __init__(self, expoente: int, iterado: Optional[int] = None):
        onde = f" no iterado {iterado}" if iterado is not None else ""
        super().__init__(
            f"Produto q·u contém o expoente {expoente}: e^(∓it) o leva a 0{onde}")
        self.expoente = expoente
        self.iterado = iterado


class ErroVarredura(ErroHill, RuntimeError):
    """Varredura de bordas de banda não pôde ser resolvida."""


class ErroArco(ErroHill, RuntimeError):
    """Falha no traçado de um arco espectral."""
