"""
Módulo de iteração de Picard em séries exponenciais.

Caminho independente da integração numérica para c(q;1,x) e s(q;1,x):
as equações de Volterra

    C(x) = cos x + ∫₀ˣ sin(x - t) q(t) C(t) dt
    S(x) = sin x + ∫₀ˣ sin(x - t) q(t) S(t) dt

são resolvidas por substituições sucessivas, com cada integral feita em
forma fechada sobre os expoentes (antiderivadas termo a termo). Inclui a
verificação das integrais nulas e a montagem de Δ(q;1) = C(2π) + S'(2π).
"""

import logging
from collections import defaultdict
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from excecoes import ErroClasseGasymov, ErroExpoenteNulo
from potencial import PotencialFourier

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

PERIODO = 2 * np.pi


class SerieExponencial:
    """
    Combinação finita Σ b_ℓ e^{iℓx} com expoentes inteiros.

    Imutável; coeficientes exatamente nulos não são armazenados.

    Args:
        termos (Mapping[int, complex], optional): Coeficientes por expoente
    """

    __slots__ = ("_termos",)

    def __init__(self, termos: Optional[Mapping[int, complex]] = None):
        limpos = {int(l): complex(b) for l, b in (termos or {}).items() if b != 0}
        self._termos = MappingProxyType({l: limpos[l] for l in sorted(limpos)})

    @property
    def termos(self) -> Mapping[int, complex]:
        return self._termos

    @property
    def e_vazia(self) -> bool:
        return not self._termos

    @property
    def expoente_minimo(self) -> Optional[int]:
        return next(iter(self._termos), None)

    @property
    def expoente_maximo(self) -> Optional[int]:
        return next(reversed(self._termos), None) if self._termos else None

    def coeficiente(self, expoente: int) -> complex:
        return self._termos.get(expoente, 0j)

    def avaliar(self, x: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        """
        Valor pontual Σ b_ℓ e^{iℓx}.

        Args:
            x (float | np.ndarray): Ponto(s) em radianos

        Returns:
            complex | np.ndarray: Valor(es) da série
        """
        expoentes = np.array(list(self._termos.keys()), dtype=float)
        coeficientes = np.array(list(self._termos.values()), dtype=complex)
        if np.ndim(x) == 0:
            return complex(np.dot(coeficientes, np.exp(1j * expoentes * x)))
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.multiply.outer(x, expoentes)) @ coeficientes

    def valor_no_periodo(self) -> complex:
        """Valor em x = 2π (e em x = 0): a soma dos coeficientes, sem arredondamento de e^{2πiℓ}."""
        return complex(sum(self._termos.values(), 0j))

    def derivar(self) -> "SerieExponencial":
        """Derivada termo a termo: b_ℓ -> iℓ·b_ℓ."""
        return SerieExponencial({l: 1j * l * b for l, b in self._termos.items()})

    def norma_sup(self, amostras: int = 1024) -> float:
        """Máximo de |S(x)| numa amostra uniforme de [0, 2π]."""
        if self.e_vazia:
            return 0.0
        x = np.linspace(0.0, PERIODO, amostras, endpoint=False)
        return float(np.max(np.abs(self.avaliar(x))))

    def truncar(self, harmonicos: int, tolerancia: float = 0.0) -> "SerieExponencial":
        """Descarta expoentes |ℓ| > harmonicos e coeficientes |b| < tolerancia."""
        return SerieExponencial({
            l: b for l, b in self._termos.items()
            if abs(l) <= harmonicos and abs(b) >= tolerancia
        })

    def __add__(self, outra: "SerieExponencial") -> "SerieExponencial":
        if not isinstance(outra, SerieExponencial):
            return NotImplemented
        soma: Dict[int, complex] = dict(self._termos)
        for l, b in outra._termos.items():
            soma[l] = soma.get(l, 0j) + b
        return SerieExponencial(soma)

    def __sub__(self, outra: "SerieExponencial") -> "SerieExponencial":
        if not isinstance(outra, SerieExponencial):
            return NotImplemented
        return self + SerieExponencial({l: -b for l, b in outra._termos.items()})

    def __eq__(self, outra: object) -> bool:
        if not isinstance(outra, SerieExponencial):
            return NotImplemented
        return dict(self._termos) == dict(outra._termos)

    def __hash__(self) -> int:
        return hash(tuple(self._termos.items()))

    def __repr__(self) -> str:
        termos = ", ".join(f"{l}: {b}" for l, b in self._termos.items())
        return f"SerieExponencial({{{termos}}})"


# Sementes das equações de Volterra
SEMENTE_COS = SerieExponencial({-1: 0.5, 1: 0.5})
SEMENTE_SIN = SerieExponencial({-1: 0.5j, 1: -0.5j})
SEMENTES = {"cos": SEMENTE_COS, "sin": SEMENTE_SIN}


class ConfigPicard(BaseModel):
    """Truncamento da série de Picard."""
    model_config = ConfigDict(frozen=True)

    profundidade: int = Field(default=12, ge=0)
    harmonicos: int = Field(default=60, ge=1)
    tolerancia_descarte: float = Field(default=1e-300, ge=0)
    tolerancia_convergencia: float = Field(default=1e-12, gt=0)


class ResultadoPicard(NamedTuple):
    """Soma parcial e iterados da série de Picard."""
    serie: SerieExponencial
    iterados: List[SerieExponencial]
    norma_ultimo: float


def _produto(q: PotencialFourier, u: SerieExponencial) -> Dict[int, complex]:
    """Coeficientes de q(t)·u(t) por expoente."""
    produto: Dict[int, complex] = defaultdict(complex)
    for k, a in q.coeficientes.items():
        for l, b in u.termos.items():
            produto[k + l] += a * b
    return produto


def _integral_volterra(produto: Mapping[int, complex],
                       iterado: Optional[int] = None) -> Dict[int, complex]:
    """
    ∫₀ˣ sin(x - t) g(t) dt para g = Σ γ_m e^{imt}, em forma fechada.

    Cada termo contribui -γ/(m²-1) em e^{imx}, γ/(2(m-1)) em e^{ix} e
    -γ/(2(m+1)) em e^{-ix}; o resultado se anula junto com a derivada em x = 0.
    """
    resultado: Dict[int, complex] = defaultdict(complex)
    for m, gama in produto.items():
        if gama == 0:
            continue
        if m in (1, -1):
            raise ErroExpoenteNulo(m, iterado)
        resultado[m] += -gama / (m * m - 1)
        resultado[1] += gama / (2 * (m - 1))
        resultado[-1] += -gama / (2 * (m + 1))
    return resultado


def passo_picard(q: PotencialFourier, u_anterior: SerieExponencial,
                 config: Optional[ConfigPicard] = None,
                 verificar_classe: bool = True,
                 iterado: Optional[int] = None) -> SerieExponencial:
    """
    Um passo da recursão u_j(x) = ∫₀ˣ sin(x - t) q(t) u_{j-1}(t) dt.

    Args:
        q (PotencialFourier): Potencial (classe de Gasymov)
        u_anterior (SerieExponencial): Iterado anterior
        config (ConfigPicard, optional): Truncamento
        verificar_classe (bool): Rejeita q com modos k <= 0
        iterado (int, optional): Índice j, usado apenas nas mensagens de erro

    Returns:
        SerieExponencial: Próximo iterado, truncado

    Raises:
        ErroClasseGasymov: q possui modos k <= 0
        ErroExpoenteNulo: O produto q·u_anterior tem termo em e^{±it}
    """
    config = config or ConfigPicard()
    if verificar_classe and not q.e_classe_gasymov:
        raise ErroClasseGasymov(f"Potencial fora da classe de Gasymov: modos {q.modos}")

    bruto = SerieExponencial(_integral_volterra(_produto(q, u_anterior), iterado))
    return bruto.truncar(config.harmonicos, config.tolerancia_descarte)


def soma_picard(q: PotencialFourier, semente: str = "cos",
                config: Optional[ConfigPicard] = None,
                verificar_classe: bool = True) -> ResultadoPicard:
    """
    Soma parcial Σ_{j=0}^{J} u_j da série de Picard.

    Args:
        q (PotencialFourier): Potencial (classe de Gasymov)
        semente (str): "cos" para c(q;1,x) ou "sin" para s(q;1,x)
        config (ConfigPicard, optional): Profundidade e truncamento
        verificar_classe (bool): Rejeita q com modos k <= 0

    Returns:
        ResultadoPicard: Soma, lista de iterados u_0..u_J e norma do último
    """
    config = config or ConfigPicard()
    if semente not in SEMENTES:
        raise ValueError(f"Semente desconhecida: {semente!r} (use 'cos' ou 'sin')")

    iterados = [SEMENTES[semente]]
    for j in range(1, config.profundidade + 1):
        iterados.append(passo_picard(q, iterados[-1], config, verificar_classe, iterado=j))

    serie = SerieExponencial()
    for u in iterados:
        serie = serie + u

    norma_ultimo = iterados[-1].norma_sup() if config.profundidade >= 1 else 0.0
    if norma_ultimo > config.tolerancia_convergencia:
        logger.warning(
            f"Série de Picard ({semente}) pode não ter convergido: "
            f"norma do iterado {config.profundidade} = {norma_ultimo:.3e}")
    return ResultadoPicard(serie, iterados, norma_ultimo)


def discriminante_picard(V: PotencialFourier, n: int,
                         config: Optional[ConfigPicard] = None) -> complex:
    """
    Δ(q_n;1) = C(2π) + S'(2π) pela série de Picard, com q_n = escalar(V, n).

    Para n >= 3 nenhum produto atinge e^{±it}; valores menores de n
    podem levantar ErroExpoenteNulo.

    Args:
        V (PotencialFourier): Potencial da classe de Gasymov
        n (int): Índice de escala
        config (ConfigPicard, optional): Profundidade e truncamento

    Returns:
        complex: Discriminante em z = 1 do potencial escalado
    """
    config = config or ConfigPicard()
    if not V.e_classe_gasymov:
        raise ErroClasseGasymov(f"Potencial fora da classe de Gasymov: modos {V.modos}")
    q = V.escalar(n)
    C = soma_picard(q, "cos", config).serie
    S = soma_picard(q, "sin", config).serie
    return C.valor_no_periodo() + S.derivar().valor_no_periodo()


def verificar_integral_nula(u_j: SerieExponencial, k: int, n: int) -> complex:
    """
    ∫₀^{2π} (e^{i(kn+1)t} - e^{i(kn-1)t}) u_j(t) dt em forma fechada.

    Só o termo constante do integrando contribui (2π vezes o coeficiente).

    Args:
        u_j (SerieExponencial): Iterado
        k (int): Modo do potencial
        n (int): Índice de escala

    Returns:
        complex: Valor da integral (0 exatamente quando o argumento vale)
    """
    return PERIODO * (u_j.coeficiente(-(k * n + 1)) - u_j.coeficiente(-(k * n - 1)))


def residuo_volterra(q: PotencialFourier, serie: SerieExponencial, semente: str = "cos",
                     amostras: int = 1024) -> float:
    """
    Norma sup de C(x) - semente(x) - ∫₀ˣ sin(x - t) q(t) C(t) dt.

    A integral é calculada em forma fechada, sem truncamento.

    Args:
        q (PotencialFourier): Potencial
        serie (SerieExponencial): Aproximação C da solução
        semente (str): "cos" ou "sin"
        amostras (int): Pontos da amostra uniforme de [0, 2π]

    Returns:
        float: Resíduo máximo na amostra
    """
    integral = SerieExponencial(_integral_volterra(_produto(q, serie)))
    return (serie - SEMENTES[semente] - integral).norma_sup(amostras)


def _resumo_iterados(iterados: List[SerieExponencial]) -> List[Dict[str, Any]]:
    return [
        {
            "j": j,
            "norma_sup": u.norma_sup(),
            "expoente_min": u.expoente_minimo,
            "expoente_max": u.expoente_maximo,
            "termos": len(u.termos),
        }
        for j, u in enumerate(iterados)
    ]


def relatorio_picard(V: PotencialFourier, n: int, config: Optional[ConfigPicard] = None,
                     k_max: Optional[int] = None) -> Dict[str, Any]:
    """
    Relatório completo do caminho de Picard para (V, n).

    Args:
        V (PotencialFourier): Potencial da classe de Gasymov
        n (int): Índice de escala
        config (ConfigPicard, optional): Profundidade e truncamento
        k_max (int, optional): Maior modo k das integrais nulas (padrão: modo máximo de V)

    Returns:
        Dict[str, Any]: Normas e expoentes por iterado, Δ, c(2π), s'(2π),
        integrais nulas verificadas e resíduos de Volterra
    """
    config = config or ConfigPicard()
    if not V.e_classe_gasymov:
        raise ErroClasseGasymov(f"Potencial fora da classe de Gasymov: modos {V.modos}")
    q = V.escalar(n)
    logger.info(f"Caminho de Picard: n={n}, J={config.profundidade}, L={config.harmonicos}, "
                f"|q|_1={q.norma_l1():.3g}")

    resultado_c = soma_picard(q, "cos", config)
    resultado_s = soma_picard(q, "sin", config)
    c2pi = resultado_c.serie.valor_no_periodo()
    sp2pi = resultado_s.serie.derivar().valor_no_periodo()
    delta = c2pi + sp2pi

    k_max = k_max if k_max is not None else max(V.modo_maximo, 1)
    integrais = []
    for nome, resultado in (("u", resultado_c), ("v", resultado_s)):
        for j, u_j in enumerate(resultado.iterados):
            for k in range(1, k_max + 1):
                valor = verificar_integral_nula(u_j, k, n)
                integrais.append({"serie": nome, "j": j, "k": k,
                                  "re": valor.real, "im": valor.imag})
    nao_nulas = sum(1 for item in integrais if item["re"] != 0 or item["im"] != 0)
    if nao_nulas:
        logger.warning(f"{nao_nulas} integrais não se anularam")

    return {
        "n": n,
        "norma_l1_q": q.norma_l1(),
        "delta_re": delta.real,
        "delta_im": delta.imag,
        "c2pi_re": c2pi.real,
        "c2pi_im": c2pi.imag,
        "sp2pi_re": sp2pi.real,
        "sp2pi_im": sp2pi.imag,
        "iterados_u": _resumo_iterados(resultado_c.iterados),
        "iterados_v": _resumo_iterados(resultado_s.iterados),
        "norma_ultimo_u": resultado_c.norma_ultimo,
        "norma_ultimo_v": resultado_s.norma_ultimo,
        "residuo_u": residuo_volterra(q, resultado_c.serie, "cos"),
        "residuo_v": residuo_volterra(q, resultado_s.serie, "sin"),
        "integrais_nulas": integrais,
        "integrais_nao_nulas": nao_nulas,
    }
