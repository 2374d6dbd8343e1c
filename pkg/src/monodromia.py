"""
Módulo de monodromia da equação de Hill -ψ'' + V(x)ψ = zψ.

Este módulo integra o sistema fundamental normalizado (c, s) sobre um
período, fornecendo a matriz de monodromia, o discriminante de Floquet
Δ(V;z) = c(2π) + s'(2π), sua derivada em z (sistema variacional) e os
multiplicadores de Floquet ρ, 1/ρ. Também expõe as fórmulas fechadas do
operador livre, usadas como referência.
"""

import cmath
import logging
import math
from typing import Iterable, NamedTuple, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from configuracao import obter_num_threads
from integrador import ConfigIntegrador, integrar_dopri54
from potencial import PotencialFourier

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

PERIODO = 2 * np.pi

_CONFIG_PADRAO = ConfigIntegrador()


class MatrizMonodromia(NamedTuple):
    """
    Valores de c, s, c', s' em x = 2π.

    A matriz [[c, s], [c', s']] leva os dados (ψ(0), ψ'(0)) em (ψ(2π), ψ'(2π)).
    """
    c2pi: complex
    s2pi: complex
    cp2pi: complex
    sp2pi: complex

    @property
    def traco(self) -> complex:
        return self.c2pi + self.sp2pi

    @property
    def determinante(self) -> complex:
        return self.c2pi * self.sp2pi - self.s2pi * self.cp2pi

    def como_array(self) -> np.ndarray:
        return np.array([[self.c2pi, self.s2pi], [self.cp2pi, self.sp2pi]])


class ParMultiplicadores(NamedTuple):
    """Multiplicadores de Floquet ordenados com |rho_mais| >= |rho_menos|."""
    rho_mais: complex
    rho_menos: complex


def _lado_direito(V: PotencialFourier, z: complex, com_derivada: bool):
    """
    Lado direito do sistema de primeira ordem.

    Estado: posições [c, s(, ∂c, ∂s)] seguidas das derivadas em x na mesma
    ordem. O sistema variacional em z é (∂c)'' = (V - z)∂c - c.
    """
    metade = 4 if com_derivada else 2
    modos, amplitudes = V.arrays_modais()
    modos = 1j * modos
    nulo = V.e_nulo

    def f(x: float, y: np.ndarray) -> np.ndarray:
        w = -z if nulo else amplitudes @ np.exp(modos * x) - z
        dy = np.empty_like(y)
        dy[:metade] = y[metade:]
        dy[metade:] = w * y[:metade]
        if com_derivada:
            dy[metade + 2:] -= y[0:2]
        return dy

    return f


def _integrar(V: PotencialFourier, z: complex, config: ConfigIntegrador,
              com_derivada: bool) -> np.ndarray:
    if com_derivada:
        y0 = np.array([1, 0, 0, 0, 0, 1, 0, 0], dtype=complex)
    else:
        y0 = np.array([1, 0, 0, 1], dtype=complex)
    resultado = integrar_dopri54(_lado_direito(V, z, com_derivada), 0.0, PERIODO, y0, config)
    logger.debug(f"z={z}: {resultado.passos_aceitos} passos")
    return resultado.y


def _verificar_determinante(M: MatrizMonodromia, z: complex, config: ConfigIntegrador):
    escala = max(1.0, abs(M.c2pi * M.sp2pi), abs(M.s2pi * M.cp2pi))
    desvio = abs(M.determinante - 1)
    if desvio > 10 * (config.rtol * escala + config.atol):
        logger.warning(f"Determinante da monodromia em z={z} desvia de 1 por {desvio:.3e}")


def integrar_monodromia(V: PotencialFourier, z: complex,
                        config: Optional[ConfigIntegrador] = None) -> MatrizMonodromia:
    """
    Integra o sistema fundamental de x = 0 a x = 2π.

    Args:
        V (PotencialFourier): Potencial
        z (complex): Parâmetro espectral
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        MatrizMonodromia: Valores de c, s, c', s' em 2π
    """
    config = config or _CONFIG_PADRAO
    z = complex(z)
    y = _integrar(V, z, config, com_derivada=False)
    M = MatrizMonodromia(complex(y[0]), complex(y[1]), complex(y[2]), complex(y[3]))
    _verificar_determinante(M, z, config)
    return M


def monodromia_e_derivada(V: PotencialFourier, z: complex,
                          config: Optional[ConfigIntegrador] = None
                          ) -> Tuple[MatrizMonodromia, MatrizMonodromia]:
    """
    Integra o sistema fundamental junto com sua derivada em z.

    Args:
        V (PotencialFourier): Potencial
        z (complex): Parâmetro espectral
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        Tuple[MatrizMonodromia, MatrizMonodromia]: Monodromia e sua derivada ∂/∂z
    """
    config = config or _CONFIG_PADRAO
    z = complex(z)
    y = _integrar(V, z, config, com_derivada=True)
    M = MatrizMonodromia(complex(y[0]), complex(y[1]), complex(y[4]), complex(y[5]))
    dM = MatrizMonodromia(complex(y[2]), complex(y[3]), complex(y[6]), complex(y[7]))
    _verificar_determinante(M, z, config)
    return M, dM


def discriminante(V: PotencialFourier, z: complex,
                  config: Optional[ConfigIntegrador] = None) -> complex:
    """
    Discriminante de Floquet Δ(V;z) = c(V;z,2π) + s'(V;z,2π).

    Args:
        V (PotencialFourier): Potencial
        z (complex): Parâmetro espectral
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        complex: Δ(V;z)
    """
    return integrar_monodromia(V, z, config).traco


def discriminante_e_derivada(V: PotencialFourier, z: complex,
                             config: Optional[ConfigIntegrador] = None
                             ) -> Tuple[complex, complex]:
    """Δ(V;z) e dΔ/dz obtidos numa única integração."""
    M, dM = monodromia_e_derivada(V, z, config)
    return M.traco, dM.traco


def derivada_discriminante(V: PotencialFourier, z: complex,
                           config: Optional[ConfigIntegrador] = None) -> complex:
    """
    Derivada dΔ/dz pelo sistema variacional.

    Args:
        V (PotencialFourier): Potencial
        z (complex): Parâmetro espectral
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        complex: dΔ/dz em z
    """
    return discriminante_e_derivada(V, z, config)[1]


def discriminante_referencia(z: complex) -> complex:
    """
    Discriminante do operador livre, Δ(0;z) = 2cos(2π√z).

    O cosseno é par, então o ramo da raiz é irrelevante.

    Args:
        z (complex): Parâmetro espectral

    Returns:
        complex: 2cos(2π√z)
    """
    return 2 * cmath.cos(PERIODO * cmath.sqrt(complex(z)))


def derivada_discriminante_referencia(z: complex) -> complex:
    """dΔ(0;z)/dz = -2π sin(2π√z)/√z, com limite -4π² em z = 0."""
    w = cmath.sqrt(complex(z))
    return -PERIODO * PERIODO * _sen_sobre(PERIODO * w)


def _sen_sobre(u: complex) -> complex:
    # sin(u)/u, inteira em u
    if abs(u) < 1e-4:
        return 1 - u * u / 6 + u ** 4 / 120
    return cmath.sin(u) / u


def monodromia_livre(z: complex) -> MatrizMonodromia:
    """
    Monodromia do operador livre em forma fechada.

    c = cos(√z x), s = sin(√z x)/√z, avaliadas em x = 2π.

    Args:
        z (complex): Parâmetro espectral

    Returns:
        MatrizMonodromia: Matriz exata (a menos de arredondamento)
    """
    w = cmath.sqrt(complex(z))
    cos_ = cmath.cos(PERIODO * w)
    s = PERIODO * _sen_sobre(PERIODO * w)
    return MatrizMonodromia(cos_, s, -complex(z) * s, cos_)


def multiplicadores(delta: complex) -> ParMultiplicadores:
    """
    Raízes de ρ² - Δρ + 1 = 0.

    A raiz de maior módulo é calculada diretamente e a outra como sua
    recíproca, evitando cancelamento quando |Δ| é grande. Com módulos
    iguais, a de maior argumento principal vem primeiro.

    Args:
        delta (complex): Discriminante Δ

    Returns:
        ParMultiplicadores: (rho_mais, rho_menos)
    """
    delta = complex(delta)
    raiz = cmath.sqrt(delta * delta - 4)
    if (delta.conjugate() * raiz).real < 0:
        raiz = -raiz
    rho = (delta + raiz) / 2
    outro = 1 / rho
    if math.isclose(abs(rho), abs(outro), rel_tol=1e-12) and cmath.phase(outro) > cmath.phase(rho):
        rho, outro = outro, rho
    return ParMultiplicadores(rho, outro)


def discriminante_escalado(V: PotencialFourier, n: int, z: complex,
                           config: Optional[ConfigIntegrador] = None) -> complex:
    """
    ρⁿ + ρ⁻ⁿ a partir dos multiplicadores de (V, z).

    Pela substituição φ(x) = ψ(nx) este valor coincide com
    Δ(escalar(V, n); n²z).

    Args:
        V (PotencialFourier): Potencial original
        n (int): Índice de escala
        z (complex): Parâmetro espectral de V

    Returns:
        complex: ρⁿ + ρ⁻ⁿ
    """
    par = multiplicadores(discriminante(V, z, config))
    return par.rho_mais ** n + par.rho_menos ** n


def discriminantes_em_lote(V: PotencialFourier, pontos: Iterable[complex],
                           config: Optional[ConfigIntegrador] = None,
                           com_derivada: bool = False,
                           n_jobs: Optional[int] = None) -> np.ndarray:
    """
    Avalia Δ (e opcionalmente dΔ/dz) em vários pontos com joblib.

    A ordem do resultado é a ordem de entrada, qualquer que seja o número
    de workers.

    Args:
        V (PotencialFourier): Potencial
        pontos (Iterable[complex]): Parâmetros espectrais
        config (ConfigIntegrador, optional): Tolerâncias do integrador
        com_derivada (bool): Também calcula dΔ/dz
        n_jobs (int, optional): Workers (padrão: HILL_THREADS)

    Returns:
        np.ndarray: Vetor complexo de Δ, ou matriz (N, 2) com colunas Δ e dΔ/dz
    """
    pontos = [complex(z) for z in pontos]
    n_jobs = obter_num_threads() if n_jobs is None else n_jobs
    funcao = discriminante_e_derivada if com_derivada else discriminante
    valores = Parallel(n_jobs=n_jobs)(delayed(funcao)(V, z, config) for z in pontos)
    if com_derivada:
        return np.array(valores, dtype=complex).reshape(len(pontos), 2)
    return np.array(valores, dtype=complex)
