"""
Integrador Runge-Kutta explícito adaptativo (par de Dormand-Prince 5(4)).

Integra sistemas complexos y' = f(x, y) com controle de passo PI e
propagação da solução de 5ª ordem (extrapolação local). O último estágio
coincide com o primeiro do passo seguinte (FSAL).
"""

import logging
from typing import Callable, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from excecoes import ErroIntegracao

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Tabela de Butcher estendida
_C = np.array([0.0, 1/5, 3/10, 4/5, 8/9, 1.0, 1.0])
_A = {
    1: np.array([1/5]),
    2: np.array([3/40, 9/40]),
    3: np.array([44/45, -56/15, 32/9]),
    4: np.array([19372/6561, -25360/2187, 64448/6561, -212/729]),
    5: np.array([9017/3168, -355/33, 46732/5247, 49/176, -5103/18656]),
    # pesos da solução de 5ª ordem
    6: np.array([35/384, 0.0, 500/1113, 125/192, -2187/6784, 11/84]),
}
# diferença entre as soluções de 5ª e 4ª ordem
_E = np.array([71/57600, 0.0, -71/16695, 71/1920, -17253/339200, 22/525, -1/40])

# Controlador PI
_SEGURANCA = 0.9
_BETA = 0.04
_ALFA = 0.2 - 0.75 * _BETA
_FATOR_MIN = 0.2
_FATOR_MAX = 10.0


class ConfigIntegrador(BaseModel):
    """Tolerâncias e limites do integrador adaptativo."""
    model_config = ConfigDict(frozen=True)

    rtol: float = Field(default=1e-12, gt=0)
    atol: float = Field(default=1e-14, gt=0)
    passo_inicial: float = Field(default=2 * np.pi / 256, gt=0)
    max_passos: int = Field(default=1_000_000, ge=1)


class ResultadoIntegracao(NamedTuple):
    """Estado final e estatísticas de uma integração."""
    y: np.ndarray
    passos_aceitos: int
    passos_rejeitados: int


def integrar_dopri54(
        f: Callable[[float, np.ndarray], np.ndarray],
        x0: float,
        x1: float,
        y0: np.ndarray,
        config: ConfigIntegrador) -> ResultadoIntegracao:
    """
    Integra y' = f(x, y) de x0 a x1 (> x0) com passo adaptativo.

    Args:
        f (Callable): Lado direito, f(x, y) -> np.ndarray complexo
        x0 (float): Início do intervalo
        x1 (float): Fim do intervalo
        y0 (np.ndarray): Estado inicial
        config (ConfigIntegrador): Tolerâncias e limites

    Returns:
        ResultadoIntegracao: Estado em x1 e contagem de passos
    """
    if not x1 > x0:
        raise ValueError(f"Intervalo de integração vazio: [{x0}, {x1}]")

    x = float(x0)
    y = np.array(y0, dtype=complex)
    h = min(config.passo_inicial, x1 - x0)
    k = np.empty((7, y.size), dtype=complex)
    k[0] = f(x, y)
    erro_anterior = 1e-4
    aceitos = rejeitados = 0

    while x < x1:
        if aceitos + rejeitados >= config.max_passos:
            raise ErroIntegracao(
                f"Limite de {config.max_passos} passos atingido", x)
        if h <= 10 * np.finfo(float).eps * max(1.0, abs(x)):
            raise ErroIntegracao("Passo abaixo da resolução de ponto flutuante", x)

        # estica o passo final para não deixar um resto abaixo da resolução
        ultimo = x1 - (x + h) <= 16 * np.finfo(float).eps * abs(x1)
        if ultimo:
            h = x1 - x

        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = f(x + _C[i] * h, yi)
        y_novo = yi
        erro_local = h * (_E @ k)

        escala = config.atol + config.rtol * np.maximum(np.abs(y), np.abs(y_novo))
        erro = float(np.sqrt(np.mean(np.abs(erro_local / escala) ** 2)))

        if not np.isfinite(erro):
            rejeitados += 1
            h *= _FATOR_MIN
            continue

        if erro <= 1.0:
            if not np.all(np.isfinite(y_novo)):
                raise ErroIntegracao("Estado não finito", x + h)
            x = x1 if ultimo else x + h
            y = y_novo
            k[0] = k[6]
            aceitos += 1
            fator = _SEGURANCA * max(erro, 1e-10) ** (-_ALFA) * erro_anterior ** _BETA
            erro_anterior = max(erro, 1e-4)
            h *= min(_FATOR_MAX, max(_FATOR_MIN, fator))
        else:
            rejeitados += 1
            h *= max(_FATOR_MIN, _SEGURANCA * erro ** (-0.2))

    logger.debug(f"Integração concluída: {aceitos} passos aceitos, {rejeitados} rejeitados")
    return ResultadoIntegracao(y, aceitos, rejeitados)
