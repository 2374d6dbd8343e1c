"""
Módulo de verificação numérica das identidades do discriminante.

Contém a varredura de Δ numa grade retangular do plano complexo, a
verificação da identidade Δ(V;z) = 2cos(2π√z) para potenciais da classe de
Gasymov e a varredura da homotopia εV no ponto z = 1/n², onde Δ deve
permanecer igual a 2cos(2π/n) para todo ε.
"""

import logging
import math
from typing import Literal, NamedTuple, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field, model_validator

from configuracao import obter_num_threads
from espectro import distancia_espectral
from excecoes import ErroClasseGasymov
from integrador import ConfigIntegrador
from monodromia import discriminante, discriminante_referencia, discriminantes_em_lote
from potencial import PotencialFourier

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

COLUNAS_GRADE = ["re_z", "im_z", "re_delta", "im_delta", "dist"]

MetricaDesvio = Literal["absoluto", "escalado"]


class GradeComplexa(BaseModel):
    """Grade retangular [re_min, re_max] × [im_min, im_max] com passo uniforme."""
    model_config = ConfigDict(frozen=True)

    re_min: float = -2.0
    re_max: float = 9.0
    im_min: float = -2.0
    im_max: float = 2.0
    passo: float = Field(default=0.5, gt=0)

    @model_validator(mode="after")
    def _limites_ordenados(self) -> "GradeComplexa":
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ValueError("Limites da grade fora de ordem")
        return self

    def pontos(self) -> np.ndarray:
        """Pontos da grade, parte real variando mais devagar."""
        n_re = int(math.floor((self.re_max - self.re_min) / self.passo + 1e-9)) + 1
        n_im = int(math.floor((self.im_max - self.im_min) / self.passo + 1e-9)) + 1
        re = self.re_min + self.passo * np.arange(n_re)
        im = self.im_min + self.passo * np.arange(n_im)
        RE, IM = np.meshgrid(re, im, indexing="ij")
        return (RE + 1j * IM).ravel()


class RelatorioGasymov(NamedTuple):
    """Resultado da verificação Δ(V;z) = 2cos(2π√z) numa grade."""
    aprovado: bool
    desvio_max_abs: float
    desvio_max_escalado: float
    z_pior: complex
    tolerancia: float
    metrica: str
    tabela: pd.DataFrame


class RelatorioHomotopia(NamedTuple):
    """Resultado da varredura Δ(εV; 1/n²) para ε em [0, 1]."""
    aprovado: bool
    desvio_max: float
    referencia: complex
    tolerancia: float
    tabela: pd.DataFrame


def varrer_grade(V: PotencialFourier, grade: GradeComplexa,
                 config: Optional[ConfigIntegrador] = None,
                 n_jobs: Optional[int] = None) -> pd.DataFrame:
    """
    Avalia Δ em todos os pontos da grade.

    Args:
        V (PotencialFourier): Potencial
        grade (GradeComplexa): Grade do plano complexo
        config (ConfigIntegrador, optional): Tolerâncias do integrador
        n_jobs (int, optional): Workers do joblib (padrão: HILL_THREADS)

    Returns:
        pd.DataFrame: Colunas re_z, im_z, re_delta, im_delta, dist
    """
    pontos = grade.pontos()
    logger.info(f"Varrendo {len(pontos)} pontos da grade")
    deltas = discriminantes_em_lote(V, pontos, config, n_jobs=n_jobs)
    return pd.DataFrame({
        "re_z": pontos.real,
        "im_z": pontos.imag,
        "re_delta": deltas.real,
        "im_delta": deltas.imag,
        "dist": [distancia_espectral(d) for d in deltas],
    }, columns=COLUNAS_GRADE)


def verificar_gasymov(V: PotencialFourier, grade: Optional[GradeComplexa] = None,
                      tol: float = 1e-7, config: Optional[ConfigIntegrador] = None,
                      n_jobs: Optional[int] = None,
                      metrica: MetricaDesvio = "absoluto") -> RelatorioGasymov:
    """
    Verifica Δ(V;z) = 2cos(2π√z) na grade.

    Aprova quando max |Δ - ref| <= tol. Com metrica="escalado" o critério
    passa a ser |Δ - ref| / max(1, |ref|), para grades onde |ref| é grande
    demais para uma tolerância absoluta em precisão dupla (V = 0 atinge
    |Δ| ~ 1.7e4 nos cantos da grade padrão). Os dois desvios são reportados.

    Args:
        V (PotencialFourier): Potencial da classe de Gasymov
        grade (GradeComplexa, optional): Grade (padrão [-2, 9] × [-2, 2], passo 0.5)
        tol (float): Tolerância do desvio máximo
        config (ConfigIntegrador, optional): Tolerâncias do integrador
        n_jobs (int, optional): Workers do joblib
        metrica (str): "absoluto" (padrão) ou "escalado"

    Returns:
        RelatorioGasymov: Veredito, desvios máximos e tabela da grade

    Raises:
        ErroClasseGasymov: V possui modos k <= 0
    """
    if not V.e_classe_gasymov:
        raise ErroClasseGasymov(
            f"Identidade não se aplica: potencial com modos {V.modos} fora da classe de Gasymov")
    if not tol > 0:
        raise ValueError(f"Tolerância deve ser positiva: {tol}")
    if metrica not in ("absoluto", "escalado"):
        raise ValueError(f"Métrica desconhecida: {metrica}")
    grade = grade or GradeComplexa()

    tabela = varrer_grade(V, grade, config, n_jobs)
    z = tabela["re_z"].to_numpy() + 1j * tabela["im_z"].to_numpy()
    delta = tabela["re_delta"].to_numpy() + 1j * tabela["im_delta"].to_numpy()
    referencia = np.array([discriminante_referencia(p) for p in z])
    desvio_abs = np.abs(delta - referencia)
    desvio_escalado = desvio_abs / np.maximum(1.0, np.abs(referencia))

    criterio = desvio_abs if metrica == "absoluto" else desvio_escalado
    pior = int(np.argmax(criterio))
    relatorio = RelatorioGasymov(
        aprovado=bool(criterio[pior] <= tol),
        desvio_max_abs=float(desvio_abs.max()),
        desvio_max_escalado=float(desvio_escalado.max()),
        z_pior=complex(z[pior]),
        tolerancia=tol,
        metrica=metrica,
        tabela=tabela,
    )
    if relatorio.aprovado:
        logger.info(f"Identidade verificada: desvio {metrica} máximo {criterio[pior]:.3e}")
    else:
        logger.warning(f"Identidade falhou em z={relatorio.z_pior}: "
                       f"desvio {metrica} {criterio[pior]:.3e} > {tol}")
    return relatorio


def varredura_homotopia(V: PotencialFourier, n: int, passos: int = 11, tol: float = 1e-8,
                        config: Optional[ConfigIntegrador] = None,
                        n_jobs: Optional[int] = None) -> RelatorioHomotopia:
    """
    Avalia Δ(εV; 1/n²) para ε uniforme em [0, 1].

    Args:
        V (PotencialFourier): Potencial da classe de Gasymov
        n (int): Índice de escala (z = 1/n²)
        passos (int): Número de valores de ε, >= 2
        tol (float): Desvio máximo admitido de 2cos(2π/n)
        config (ConfigIntegrador, optional): Tolerâncias do integrador
        n_jobs (int, optional): Workers do joblib

    Returns:
        RelatorioHomotopia: Veredito, desvio máximo e tabela eps/Δ/desvio
    """
    if passos < 2:
        raise ValueError(f"A varredura precisa de pelo menos 2 passos, recebido {passos}")
    if n < 1:
        raise ValueError(f"Índice de escala deve ser >= 1, recebido {n}")
    if not V.e_classe_gasymov:
        raise ErroClasseGasymov(
            f"Homotopia exige potencial da classe de Gasymov, modos {V.modos}")

    z = 1.0 / (n * n)
    referencia = discriminante_referencia(z)
    epsilons = np.linspace(0.0, 1.0, passos)
    logger.info(f"Homotopia em z=1/{n * n} com {passos} valores de ε")

    n_jobs = obter_num_threads() if n_jobs is None else n_jobs
    deltas = np.array(Parallel(n_jobs=n_jobs)(
        delayed(_delta_membro)(V, eps, z, config) for eps in epsilons), dtype=complex)
    desvios = np.abs(deltas - referencia)

    tabela = pd.DataFrame({
        "eps": epsilons,
        "re_delta": deltas.real,
        "im_delta": deltas.imag,
        "desvio": desvios,
    })
    desvio_max = float(desvios.max())
    aprovado = desvio_max <= tol
    if not aprovado:
        logger.warning(f"Homotopia com desvio {desvio_max:.3e} > {tol}")
    return RelatorioHomotopia(aprovado, desvio_max, referencia, tol, tabela)


def _delta_membro(V: PotencialFourier, eps: float, z: complex,
                  config: Optional[ConfigIntegrador]) -> complex:
    membro = V.membro_homotopia(eps)
    # operador livre: forma fechada
    if membro.e_nulo:
        return discriminante_referencia(z)
    return discriminante(membro, z, config)
