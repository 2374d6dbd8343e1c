"""
Módulo de procedimentos espectrais baseados no discriminante.

Contém os testes de pertinência ao espectro (Δ real com |Δ| <= 2, ou
multiplicadores no círculo unitário), a estrutura de bandas no eixo real
para potenciais reais, os autovalores periódicos (Δ = 2) por Newton e o
oráculo independente do determinante de Hill truncado.
"""

import functools
import logging
import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import linalg, optimize

from excecoes import ErroVarredura
from integrador import ConfigIntegrador
from monodromia import (discriminante, discriminante_e_derivada, discriminantes_em_lote,
                        multiplicadores)
from potencial import PotencialFourier

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

BORDA_MAIS = "+2"
BORDA_MENOS = "-2"
BORDA_CAIXA = "box"


class VeredictoPertinencia(NamedTuple):
    """Resultado do teste z ∈ espectro."""
    no_espectro: bool
    delta: complex
    distancia: float


class BandaIntervalo(NamedTuple):
    """Banda [lo, hi] com o tipo de borda em cada extremo (+2, -2 ou box)."""
    lo: float
    hi: float
    borda_lo: str
    borda_hi: str


class AutovalorPeriodico(NamedTuple):
    """Raiz de Δ(z) = 2 obtida a partir de uma semente n²."""
    semente: float
    z: complex
    residuo: float
    convergiu: bool


class ConfigBandas(BaseModel):
    """Parâmetros da varredura de bordas de banda no eixo real."""
    model_config = ConfigDict(frozen=True)

    passo_varredura: float = Field(default=0.01, gt=0)
    xtol: float = Field(default=1e-12, gt=0)
    passos_newton: int = Field(default=5, ge=0)
    tolerancia_tangencia: float = Field(default=1e-6, gt=0)


def distancia_espectral(delta: complex) -> float:
    """max(|Im Δ|, max(0, |Re Δ| - 2)): zero exatamente no espectro."""
    return max(abs(delta.imag), max(0.0, abs(delta.real) - 2.0))


def pertinencia(V: PotencialFourier, z: complex, tol: float = 1e-8,
                config: Optional[ConfigIntegrador] = None) -> VeredictoPertinencia:
    """
    Decide se z pertence ao espectro de -d²/dx² + V.

    Args:
        V (PotencialFourier): Potencial
        z (complex): Ponto do plano complexo
        tol (float): Tolerância sobre a distância espectral
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        VeredictoPertinencia: Veredito, Δ(z) e distância
    """
    if not tol > 0:
        raise ValueError(f"Tolerância deve ser positiva: {tol}")
    delta = discriminante(V, z, config)
    distancia = distancia_espectral(delta)
    return VeredictoPertinencia(distancia <= tol, delta, distancia)


def pertinencia_por_multiplicadores(V: PotencialFourier, z: complex, tol: float = 1e-8,
                                    config: Optional[ConfigIntegrador] = None) -> bool:
    """
    Teste equivalente pelos multiplicadores: ||ρ| - 1| <= √(2·tol) + tol.

    Perto de Δ = ±2 uma perturbação de ordem tol em Δ move |ρ| por
    √(2·tol); daí a tolerância ajustada.

    Args:
        V (PotencialFourier): Potencial
        z (complex): Ponto do plano complexo
        tol (float): Tolerância do teste baseado em Δ

    Returns:
        bool: Verdadeiro se algum multiplicador está no círculo unitário
    """
    if not tol > 0:
        raise ValueError(f"Tolerância deve ser positiva: {tol}")
    par = multiplicadores(discriminante(V, z, config))
    return abs(abs(par.rho_mais) - 1) <= math.sqrt(2 * tol) + tol


# Bandas no eixo real

class _Amostra(NamedTuple):
    z: float
    delta: float
    derivada: float


def _avaliar(V: PotencialFourier, z: float, config: Optional[ConfigIntegrador]) -> _Amostra:
    delta, derivada = discriminante_e_derivada(V, z, config)
    return _Amostra(float(z), delta.real, derivada.real)


def _refinar_extremo(V: PotencialFourier, a: _Amostra, b: _Amostra,
                     config: ConfigBandas,
                     config_integrador: Optional[ConfigIntegrador]) -> _Amostra:
    """Ponto crítico de Re Δ entre duas amostras com derivadas de sinais opostos."""
    z = optimize.brentq(lambda t: discriminante_e_derivada(V, t, config_integrador)[1].real,
                        a.z, b.z, xtol=config.xtol)
    return _avaliar(V, z, config_integrador)


def _raiz_borda(V: PotencialFourier, a: _Amostra, b: _Amostra, nivel: float,
                config: ConfigBandas,
                config_integrador: Optional[ConfigIntegrador]) -> float:
    """Raiz de Re Δ - nivel em [a, b]: brentq seguido de Newton protegido."""
    z = optimize.brentq(lambda t: discriminante(V, t, config_integrador).real - nivel,
                        a.z, b.z, xtol=config.xtol)
    amostra = _avaliar(V, z, config_integrador)
    residuo = abs(amostra.delta - nivel)
    for _ in range(config.passos_newton):
        if residuo == 0 or amostra.derivada == 0:
            break
        candidato = amostra.z - (amostra.delta - nivel) / amostra.derivada
        if not a.z <= candidato <= b.z:
            break
        nova = _avaliar(V, candidato, config_integrador)
        if abs(nova.delta - nivel) >= residuo:
            break
        amostra, residuo = nova, abs(nova.delta - nivel)
    return amostra.z


def _fora(delta: float, nivel: float) -> bool:
    return delta > nivel if nivel > 0 else delta < nivel


def bordas_bandas_reais(V: PotencialFourier, zmin: float, zmax: float,
                        config: Optional[ConfigBandas] = None,
                        config_integrador: Optional[ConfigIntegrador] = None
                        ) -> List[BandaIntervalo]:
    """
    Bandas {z real : |Δ(z)| <= 2} contidas em [zmin, zmax].

    Varre Re Δ e Re Δ' numa malha uniforme, insere os extremos locais
    (raízes de Δ' isoladas por brentq) e, em cada trecho monótono, localiza
    as bordas Δ = ±2 por brentq com polimento de Newton. Lacunas fechadas
    (extremo tocando ±2 dentro da tolerância de tangência) não separam bandas.

    Args:
        V (PotencialFourier): Potencial real
        zmin (float): Início da janela
        zmax (float): Fim da janela
        config (ConfigBandas, optional): Passo da malha e tolerâncias
        config_integrador (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        List[BandaIntervalo]: Bandas ordenadas e disjuntas

    Raises:
        ErroVarredura: Potencial não real ou malha grossa demais
    """
    config = config or ConfigBandas()
    if not V.e_real:
        raise ErroVarredura("Estrutura de bandas no eixo real requer potencial real")
    if not zmin < zmax:
        raise ValueError(f"Janela vazia: zmin={zmin}, zmax={zmax}")

    n = max(1, math.ceil((zmax - zmin) / config.passo_varredura - 1e-9))
    malha = np.linspace(zmin, zmax, n + 1)
    logger.info(f"Varrendo bandas em [{zmin}, {zmax}] com {n + 1} pontos")
    valores = discriminantes_em_lote(V, malha, config_integrador, com_derivada=True)
    amostras = [_Amostra(float(z), d.real, dd.real) for z, (d, dd) in zip(malha, valores)]

    # insere extremos locais para que cada trecho seja monótono
    pontos: List[_Amostra] = [amostras[0]]
    extremos: List[_Amostra] = []
    for a, b in zip(amostras, amostras[1:]):
        if a.derivada * b.derivada < 0:
            extremo = _refinar_extremo(V, a, b, config, config_integrador)
            extremos.append(extremo)
            pontos.append(extremo)
        elif (a.derivada * b.derivada > 0 and (b.delta - a.delta) * a.derivada < 0
              and abs(b.delta - a.delta) > 1e-9 * max(1.0, abs(a.delta))):
            raise ErroVarredura(
                f"Malha grossa demais em [{a.z}, {b.z}]: extremos não resolvidos; "
                f"reduza o passo ({config.passo_varredura})")
        pontos.append(b)

    for extremo in extremos:
        if abs(abs(extremo.delta) - 2) <= config.tolerancia_tangencia:
            logger.warning(f"Possível tangência em z={extremo.z:.12g} (Δ={extremo.delta:.15g})")

    # percorre os trechos monótonos alternando dentro/fora de banda
    bordas: List[Tuple[float, str]] = []
    dentro = abs(pontos[0].delta) <= 2
    if dentro:
        bordas.append((zmin, BORDA_CAIXA))
    for a, b in zip(pontos, pontos[1:]):
        cruzamentos = []
        for nivel in (2.0, -2.0):
            if _fora(a.delta, nivel) != _fora(b.delta, nivel):
                z = _raiz_borda(V, a, b, nivel, config, config_integrador)
                cruzamentos.append((z, BORDA_MAIS if nivel > 0 else BORDA_MENOS))
        for z, tipo in sorted(cruzamentos):
            bordas.append((z, tipo))
            dentro = not dentro
    if dentro:
        bordas.append((zmax, BORDA_CAIXA))

    bandas = [BandaIntervalo(lo, hi, tlo, thi)
              for (lo, tlo), (hi, thi) in zip(bordas[0::2], bordas[1::2])]
    bandas = _fundir_lacunas_fechadas(bandas, pontos, config)
    logger.info(f"{len(bandas)} bandas encontradas em [{zmin}, {zmax}]")
    return bandas


def _fundir_lacunas_fechadas(bandas: List[BandaIntervalo], pontos: List[_Amostra],
                             config: ConfigBandas) -> List[BandaIntervalo]:
    """Une bandas separadas por lacunas cujo excesso |Δ| - 2 não passa da tolerância."""
    if not bandas:
        return bandas
    fundidas = [bandas[0]]
    for banda in bandas[1:]:
        anterior = fundidas[-1]
        excesso = max((abs(p.delta) - 2 for p in pontos if anterior.hi < p.z < banda.lo),
                      default=0.0)
        if excesso <= config.tolerancia_tangencia and anterior.borda_hi == banda.borda_lo:
            logger.warning(f"Lacuna fechada em ({anterior.hi:.12g}, {banda.lo:.12g}) "
                           f"com excesso {excesso:.3e}; bandas unidas")
            fundidas[-1] = BandaIntervalo(anterior.lo, banda.hi, anterior.borda_lo, banda.borda_hi)
        else:
            fundidas.append(banda)
    return fundidas


# Autovalores periódicos

def autovalores_periodicos(V: PotencialFourier, m: int, tolerancia_raiz: float = 1e-9,
                           config: Optional[ConfigIntegrador] = None
                           ) -> List[AutovalorPeriodico]:
    """
    Raízes de Δ(z) = 2 por Newton a partir das sementes n², n = 0..m-1.

    As sementes refletem o espectro periódico {n²} da classe de Gasymov;
    para outros potenciais o resultado é aquele para o qual Newton convergir.
    Sementes que já satisfazem |Δ - 2| <= tolerancia_raiz são aceitas sem
    iteração (raízes duplas na classe de Gasymov).

    Args:
        V (PotencialFourier): Potencial
        m (int): Número de sementes
        tolerancia_raiz (float): Resíduo máximo |Δ - 2| aceito
        config (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        List[AutovalorPeriodico]: Um resultado por semente, na ordem das sementes
    """
    if m < 1:
        raise ValueError(f"Número de autovalores deve ser >= 1, recebido {m}")

    @functools.lru_cache(maxsize=16)
    def avaliar(z: complex) -> Tuple[complex, complex]:
        return discriminante_e_derivada(V, z, config)

    resultados = []
    for n in range(m):
        semente = float(n * n)
        delta = avaliar(complex(semente))[0]
        if abs(delta - 2) <= tolerancia_raiz:
            resultados.append(AutovalorPeriodico(semente, complex(semente), abs(delta - 2), True))
            continue
        try:
            raiz = optimize.newton(lambda z: avaliar(complex(z))[0] - 2, complex(semente),
                                   fprime=lambda z: avaliar(complex(z))[1],
                                   tol=1e-13, maxiter=50)
        except (RuntimeError, ZeroDivisionError) as e:
            logger.warning(f"Newton não convergiu a partir da semente {semente}: {e}")
            resultados.append(AutovalorPeriodico(semente, complex("nan"), float("inf"), False))
            continue
        residuo = abs(discriminante(V, raiz, config) - 2)
        convergiu = residuo <= tolerancia_raiz
        if not convergiu:
            logger.warning(f"Raiz a partir da semente {semente} com resíduo {residuo:.3e}")
        resultados.append(AutovalorPeriodico(semente, complex(raiz), residuo, convergiu))
    return resultados


# Oráculo do determinante de Hill

def matriz_hill_truncada(V: PotencialFourier, K: int = 40, bloco: str = "periodico") -> np.ndarray:
    """
    Matriz (2K+1)×(2K+1) de -d²/dx² + V na base e^{i(k+θ)x}, |k| <= K.

    Diagonal (k+θ)² mais a convolução H[k, j] += a_{k-j}; θ = 0 no bloco
    periódico e θ = 1/2 no antiperiódico.
    """
    if bloco not in ("periodico", "antiperiodico"):
        raise ValueError(f"Bloco desconhecido: {bloco!r}")
    theta = 0.0 if bloco == "periodico" else 0.5
    coluna = np.array([V.coeficientes.get(d, 0j) for d in range(0, 2 * K + 1)])
    linha = np.array([V.coeficientes.get(-d, 0j) for d in range(0, 2 * K + 1)])
    H = linalg.toeplitz(coluna, linha)
    H[np.diag_indices_from(H)] += (np.arange(-K, K + 1) + theta) ** 2
    return H


def autovalores_hill_truncado(V: PotencialFourier, K: int = 40,
                              bloco: str = "periodico") -> np.ndarray:
    """
    Autovalores do determinante de Hill truncado.

    Aproxima as raízes de Δ = 2 (bloco periódico) ou Δ = -2 (antiperiódico);
    os mais baixos convergem exponencialmente em K.

    Args:
        V (PotencialFourier): Potencial
        K (int): Maior frequência mantida
        bloco (str): "periodico" ou "antiperiodico"

    Returns:
        np.ndarray: Autovalores ordenados por parte real
    """
    H = matriz_hill_truncada(V, K, bloco)
    if V.e_real:
        return linalg.eigh(H, eigvals_only=True).astype(complex)
    valores = linalg.eigvals(H)
    return valores[np.lexsort((valores.imag, valores.real))]
