"""
Traçado de arcos espectrais no plano complexo.

Para potenciais complexos o espectro é uma união de arcos analíticos onde
Δ(z) é real com |Δ| <= 2. O arco que passa por uma semente é seguido por
continuação preditor-corretor da curva de nível Im Δ(z) = 0: o preditor
anda na direção tangente conj(Δ')/|Δ'| e o corretor aplica Newton em Im Δ
na direção normal. O traçado segue nos dois sentidos a partir da semente.
"""

import cmath
import functools
import logging
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import optimize

from excecoes import ErroArco
from integrador import ConfigIntegrador
from monodromia import discriminante, discriminante_e_derivada
from potencial import PotencialFourier

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class MotivoParada(str, Enum):
    """Como uma extremidade do arco terminou."""
    BORDA = "band-edge"
    MAX_PASSOS = "max-steps"
    CAIXA = "box-exit"
    RAMIFICACAO = "branch-point"


class ConfigArco(BaseModel):
    """Parâmetros da continuação e caixa de busca."""
    model_config = ConfigDict(frozen=True)

    passo_inicial: float = Field(default=1e-2, gt=0)
    passo_maximo: float = Field(default=0.1, gt=0)
    passo_minimo: float = Field(default=1e-10, gt=0)
    fator_reducao: float = Field(default=0.5, gt=0, lt=1)
    fator_aumento: float = Field(default=1.3, ge=1)
    tolerancia_corretor: float = Field(default=1e-10, gt=0)
    iteracoes_corretor: int = Field(default=8, ge=1)
    tolerancia_arco: float = Field(default=1e-8, gt=0)
    limiar_ramificacao: float = Field(default=1e-8, gt=0)
    max_passos: int = Field(default=10_000, ge=1)
    re_min: float = -5.0
    re_max: float = 20.0
    im_min: float = -5.0
    im_max: float = 5.0

    @model_validator(mode="after")
    def _caixa_ordenada(self) -> "ConfigArco":
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("Caixa do arco com limites fora de ordem")
        if self.passo_inicial > self.passo_maximo:
            raise ValueError("passo_inicial maior que passo_maximo")
        return self

    def contem(self, z: complex) -> bool:
        return self.re_min <= z.real <= self.re_max and self.im_min <= z.imag <= self.im_max


class ArcoEspectral(NamedTuple):
    """Polilinha de pontos espectrais, do fim 'inicio' ao fim 'fim'."""
    pontos: np.ndarray
    deltas: np.ndarray
    motivo_inicio: MotivoParada
    motivo_fim: MotivoParada


class _Meio(NamedTuple):
    pontos: List[complex]
    deltas: List[complex]
    motivo: MotivoParada


def _tangente(derivada: complex, referencia: Optional[complex] = None) -> complex:
    """Direção em que Re Δ cresce ao longo de Im Δ = 0, orientada como a referência."""
    t = derivada.conjugate() / abs(derivada)
    if referencia is not None and (t * referencia.conjugate()).real < 0:
        t = -t
    return t


def _corrigir(V: PotencialFourier, z: complex, config: ConfigArco,
              config_integrador: Optional[ConfigIntegrador]
              ) -> Optional[Tuple[complex, complex, complex]]:
    """Newton em Im Δ ao longo da normal; None se não convergir ou cair num ponto crítico."""
    for _ in range(config.iteracoes_corretor):
        delta, derivada = discriminante_e_derivada(V, z, config_integrador)
        if abs(derivada) < config.limiar_ramificacao:
            return None
        if abs(delta.imag) <= config.tolerancia_corretor:
            return z, delta, derivada
        normal = 1j * derivada.conjugate() / abs(derivada)
        z = z - delta.imag / abs(derivada) * normal
    delta, derivada = discriminante_e_derivada(V, z, config_integrador)
    if abs(delta.imag) <= config.tolerancia_corretor and abs(derivada) >= config.limiar_ramificacao:
        return z, delta, derivada
    return None


def _newton_borda(V: PotencialFourier, z: complex, nivel: float, config: ConfigArco,
                  config_integrador: Optional[ConfigIntegrador]
                  ) -> Optional[Tuple[complex, complex]]:
    """Newton complexo para Δ(z) = nivel."""

    @functools.lru_cache(maxsize=8)
    def avaliar(w: complex) -> Tuple[complex, complex]:
        return discriminante_e_derivada(V, w, config_integrador)

    try:
        raiz = optimize.newton(lambda w: avaliar(complex(w))[0] - nivel, complex(z),
                               fprime=lambda w: avaliar(complex(w))[1],
                               tol=1e-13, maxiter=30, disp=False)
    except (RuntimeError, ZeroDivisionError) as e:
        logger.debug(f"Newton da borda não convergiu a partir de z={z}: {e}")
        return None
    # sem disp a raiz volta mesmo sem convergência do passo; vale o resíduo
    delta = avaliar(complex(raiz))[0]
    if not cmath.isfinite(delta) or abs(delta - nivel) > config.tolerancia_corretor:
        return None
    return complex(raiz), delta


def _seguir(V: PotencialFourier, z: complex, delta: complex, derivada: complex,
            direcao: complex, config: ConfigArco,
            config_integrador: Optional[ConfigIntegrador]) -> _Meio:
    """Segue o arco a partir de um ponto já corrigido, no sentido de 'direcao'."""
    pontos, deltas = [z], [delta]
    t = _tangente(derivada, direcao)
    h = config.passo_inicial
    passos = 0

    while passos < config.max_passos:
        passos += 1
        corrigido = _corrigir(V, z + h * t, config, config_integrador)
        if corrigido is None or abs(corrigido[0] - z) > 2 * h:
            h *= config.fator_reducao
            if h < config.passo_minimo:
                if abs(derivada) < 1e3 * config.limiar_ramificacao or corrigido is None:
                    logger.info(f"Arco parou perto de ponto crítico em z={z}")
                    return _Meio(pontos, deltas, MotivoParada.RAMIFICACAO)
                raise ErroArco(f"Corretor divergiu perto de z={z}")
            continue

        z_novo, delta_novo, derivada_nova = corrigido
        if not config.contem(z_novo):
            return _Meio(pontos, deltas, MotivoParada.CAIXA)

        if abs(delta_novo.real) > 2 + config.tolerancia_corretor:
            nivel = 2.0 if delta_novo.real > 0 else -2.0
            borda = _newton_borda(V, z_novo, nivel, config, config_integrador)
            if borda is not None and abs(borda[0] - z) <= 2 * h:
                pontos.append(borda[0])
                deltas.append(borda[1])
                return _Meio(pontos, deltas, MotivoParada.BORDA)
            h *= config.fator_reducao
            if h < config.passo_minimo:
                raise ErroArco(f"Borda de banda não localizada perto de z={z}")
            continue

        t = _tangente(derivada_nova, t)
        z, derivada = z_novo, derivada_nova
        pontos.append(z)
        deltas.append(delta_novo)
        h = min(h * config.fator_aumento, config.passo_maximo)

    return _Meio(pontos, deltas, MotivoParada.MAX_PASSOS)


def _direcoes_degeneradas(V: PotencialFourier, semente: complex, config: ConfigArco,
                          config_integrador: Optional[ConfigIntegrador],
                          amostras: int = 64) -> List[complex]:
    """
    Pontos de saída das curvas de nível espectrais num ponto crítico de Δ.

    Sonda um círculo de raio passo_inicial em volta da semente, localiza os
    zeros de Im Δ no ângulo e mantém os que satisfazem |Re Δ| <= 2.
    """
    raio = config.passo_inicial

    def im_delta(phi: float) -> float:
        return discriminante(V, semente + raio * cmath.exp(1j * phi), config_integrador).imag

    angulos = 2 * np.pi * (np.arange(amostras) + 0.5) / amostras
    valores = [im_delta(phi) for phi in angulos]
    saidas = []
    for i in range(amostras):
        a, b = angulos[i], angulos[(i + 1) % amostras] + (2 * np.pi if i == amostras - 1 else 0)
        if valores[i] * valores[(i + 1) % amostras] < 0:
            phi = optimize.brentq(im_delta, a, b, xtol=1e-12)
            z = semente + raio * cmath.exp(1j * phi)
            if abs(discriminante(V, z, config_integrador).real) <= 2:
                saidas.append(z)
    return saidas


def tracar_arco(V: PotencialFourier, semente: complex,
                config: Optional[ConfigArco] = None,
                config_integrador: Optional[ConfigIntegrador] = None) -> ArcoEspectral:
    """
    Traça o arco espectral que passa pela semente.

    Args:
        V (PotencialFourier): Potencial
        semente (complex): Ponto do espectro
        config (ConfigArco, optional): Passos, tolerâncias e caixa
        config_integrador (ConfigIntegrador, optional): Tolerâncias do integrador

    Returns:
        ArcoEspectral: Pontos ordenados e motivo de parada em cada extremidade

    Raises:
        ErroArco: Semente fora do espectro ou corretor divergente
    """
    config = config or ConfigArco()
    semente = complex(semente)
    delta, derivada = discriminante_e_derivada(V, semente, config_integrador)
    distancia = max(abs(delta.imag), max(0.0, abs(delta.real) - 2.0))
    if distancia > config.tolerancia_arco:
        raise ErroArco(f"Semente z={semente} fora do espectro (Δ={delta}, distância {distancia:.3e})")
    logger.info(f"Traçando arco a partir de z={semente}")

    if abs(derivada) >= config.limiar_ramificacao:
        t = _tangente(derivada)
        meios = [_seguir(V, semente, delta, derivada, d, config, config_integrador)
                 for d in (-t, t)]
    else:
        saidas = _direcoes_degeneradas(V, semente, config, config_integrador)
        if len(saidas) > 2:
            logger.warning(f"{len(saidas)} ramos espectrais em z={semente}; seguindo dois")
        meios = []
        for saida in saidas[:2]:
            corrigido = _corrigir(V, saida, config, config_integrador)
            if corrigido is None:
                meios.append(_Meio([semente], [delta], MotivoParada.RAMIFICACAO))
                continue
            z, delta_saida, derivada_saida = corrigido
            meio = _seguir(V, z, delta_saida, derivada_saida, z - semente, config, config_integrador)
            meios.append(_Meio([semente] + meio.pontos, [delta] + meio.deltas, meio.motivo))
        while len(meios) < 2:
            meios.append(_Meio([semente], [delta], MotivoParada.RAMIFICACAO))

    atras, frente = meios
    pontos = atras.pontos[:0:-1] + frente.pontos
    deltas = atras.deltas[:0:-1] + frente.deltas
    logger.info(f"Arco com {len(pontos)} pontos: {atras.motivo.value} / {frente.motivo.value}")
    return ArcoEspectral(np.array(pontos, dtype=complex), np.array(deltas, dtype=complex),
                         atras.motivo, frente.motivo)
