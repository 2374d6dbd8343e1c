"""
Módulo de potenciais trigonométricos complexos de período 2π.

Este módulo contém a representação esparsa V(x) = Σ a_k e^{ikx}, as
construções usadas na análise do discriminante (escala q_n(x) = n²V(nx),
deslocamento constante, conjugação, família εV) e a leitura/escrita do
formato JSON de potenciais.
"""

import cmath
import json
import logging
import operator
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError, model_validator

from excecoes import ErroPotencial

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

_MODO_MIN = -(2 ** 63)
_MODO_MAX = 2 ** 63 - 1


def _canonizar(coeficientes: Mapping[Any, Any]) -> Dict[int, complex]:
    """
    Converte um mapa modo -> coeficiente para a forma canônica.

    Remove coeficientes exatamente nulos e ordena os modos.

    Args:
        coeficientes (Mapping): Mapa de modos inteiros para coeficientes

    Returns:
        Dict[int, complex]: Mapa canônico ordenado por modo
    """
    canonico: Dict[int, complex] = {}
    for modo, valor in coeficientes.items():
        try:
            k = operator.index(modo)
        except TypeError as e:
            raise ErroPotencial(f"Modo não inteiro: {modo!r}") from e
        if not _MODO_MIN <= k <= _MODO_MAX:
            raise ErroPotencial(f"Modo fora do intervalo de 64 bits: {k}")
        try:
            a = complex(valor)
        except (TypeError, ValueError) as e:
            raise ErroPotencial(f"Coeficiente inválido no modo {k}: {valor!r}") from e
        if not cmath.isfinite(a):
            raise ErroPotencial(f"Coeficiente não finito no modo {k}: {a}")
        if k in canonico:
            a = canonico[k] + a
        canonico[k] = a
    return {k: canonico[k] for k in sorted(canonico) if canonico[k] != 0}


class PotencialFourier:
    """
    Potencial V(x) = Σ a_k e^{ikx} com conjunto finito de modos.

    Valores são imutáveis; todas as operações retornam novos potenciais.

    Args:
        coeficientes (Mapping[int, complex], optional): Coeficientes por modo
        rotulo (str, optional): Nome livre do potencial
    """

    __slots__ = ("_coeficientes", "_modos", "_amplitudes", "_rotulo")

    def __init__(self, coeficientes: Optional[Mapping[int, complex]] = None,
                 rotulo: Optional[str] = None):
        canonico = _canonizar(coeficientes or {})
        self._coeficientes = MappingProxyType(canonico)
        self._modos = np.array(list(canonico.keys()), dtype=float)
        self._amplitudes = np.array(list(canonico.values()), dtype=complex)
        self._rotulo = rotulo

    @property
    def rotulo(self) -> Optional[str]:
        return self._rotulo

    @property
    def coeficientes(self) -> Mapping[int, complex]:
        """Mapa somente leitura modo -> coeficiente."""
        return self._coeficientes

    @property
    def modos(self) -> List[int]:
        return list(self._coeficientes.keys())

    @property
    def e_nulo(self) -> bool:
        return not self._coeficientes

    @property
    def e_classe_gasymov(self) -> bool:
        """Verdadeiro se todos os modos armazenados satisfazem k >= 1."""
        return all(k >= 1 for k in self._coeficientes)

    @property
    def e_real(self) -> bool:
        """Verdadeiro se V(x) é real para x real (conjugar(V) == V)."""
        return self.conjugar() == self

    @property
    def modo_maximo(self) -> int:
        return max((abs(k) for k in self._coeficientes), default=0)

    def arrays_modais(self) -> Tuple[np.ndarray, np.ndarray]:
        """Modos (float) e coeficientes (complex) como vetores alinhados."""
        return self._modos, self._amplitudes

    def norma_l1(self) -> float:
        """Soma dos |a_k|, limite superior de sup |V(x)|."""
        return float(np.sum(np.abs(self._amplitudes)))

    def avaliar(self, x: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        """
        Avalia V(x) = Σ a_k e^{ikx}.

        Args:
            x (float | np.ndarray): Ponto(s) em radianos

        Returns:
            complex | np.ndarray: Valor(es) do potencial
        """
        if np.ndim(x) == 0:
            if self.e_nulo:
                return 0j
            return complex(np.dot(self._amplitudes, np.exp(1j * self._modos * x)))
        x = np.asarray(x, dtype=float)
        if self.e_nulo:
            return np.zeros(x.shape, dtype=complex)
        return np.exp(1j * np.multiply.outer(x, self._modos)) @ self._amplitudes

    def escalar(self, n: int) -> "PotencialFourier":
        """
        Retorna q_n(x) = n²V(nx): coeficiente n²a_k no modo kn.

        Args:
            n (int): Índice de escala, n >= 1

        Returns:
            PotencialFourier: Potencial escalado
        """
        n = operator.index(n)
        if n < 1:
            raise ValueError(f"Índice de escala deve ser >= 1, recebido {n}")
        return PotencialFourier(
            {k * n: (n * n) * a for k, a in self._coeficientes.items()}, self.rotulo)

    def deslocar(self, c: complex) -> "PotencialFourier":
        """
        Soma a constante c ao modo 0 (translação do espectro por c).

        Args:
            c (complex): Constante a somar

        Returns:
            PotencialFourier: V + c
        """
        novos = dict(self._coeficientes)
        novos[0] = novos.get(0, 0j) + complex(c)
        return PotencialFourier(novos, self.rotulo)

    def conjugar(self) -> "PotencialFourier":
        """Conjugado pontual: modo k -> -k com coeficiente conj(a_k)."""
        return PotencialFourier(
            {-k: a.conjugate() for k, a in self._coeficientes.items()}, self.rotulo)

    def membro_homotopia(self, eps: float) -> "PotencialFourier":
        """
        Membro εV da família de homotopia.

        Args:
            eps (float): Parâmetro em [0, 1]

        Returns:
            PotencialFourier: Potencial εV (nulo para ε = 0)
        """
        eps = float(eps)
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"Parâmetro de homotopia fora de [0, 1]: {eps}")
        return PotencialFourier(
            {k: eps * a for k, a in self._coeficientes.items()}, self.rotulo)

    def truncar(self, K: int) -> "PotencialFourier":
        """Mantém apenas os modos com |k| <= K."""
        K = operator.index(K)
        return PotencialFourier(
            {k: a for k, a in self._coeficientes.items() if abs(k) <= K}, self.rotulo)

    def para_documento(self) -> Dict[str, Any]:
        """Representação no esquema JSON de potenciais."""
        documento: Dict[str, Any] = {
            "coeffs": [{"k": k, "re": a.real, "im": a.imag}
                       for k, a in self._coeficientes.items()]
        }
        if self.rotulo is not None:
            documento["label"] = self.rotulo
        return documento

    def __eq__(self, outro: object) -> bool:
        if not isinstance(outro, PotencialFourier):
            return NotImplemented
        return dict(self._coeficientes) == dict(outro._coeficientes)

    def __hash__(self) -> int:
        return hash(tuple(self._coeficientes.items()))

    def __repr__(self) -> str:
        termos = ", ".join(f"{k}: {a}" for k, a in self._coeficientes.items())
        return f"PotencialFourier({{{termos}}})"

    def __reduce__(self):
        return (PotencialFourier, (dict(self._coeficientes), self.rotulo))


# Esquema do arquivo de potencial
class EntradaCoeficiente(BaseModel):
    """Uma entrada {"k", "re", "im"} do arquivo de potencial."""
    model_config = ConfigDict(extra="forbid")

    k: StrictInt = Field(ge=_MODO_MIN, le=_MODO_MAX)
    re: float = Field(allow_inf_nan=False)
    im: float = Field(allow_inf_nan=False)


class DocumentoPotencial(BaseModel):
    """Documento JSON de potencial: lista de coeficientes e rótulo opcional."""
    model_config = ConfigDict(extra="forbid")

    coeffs: List[EntradaCoeficiente]
    label: Optional[str] = None

    @model_validator(mode="after")
    def _modos_distintos(self) -> "DocumentoPotencial":
        vistos = set()
        for entrada in self.coeffs:
            if entrada.k in vistos:
                raise ValueError(f"Modo k={entrada.k} repetido")
            vistos.add(entrada.k)
        return self


def potencial_de_documento(documento: Union[str, bytes, Mapping[str, Any]]) -> PotencialFourier:
    """
    Constrói um potencial a partir de um documento JSON (texto ou já decodificado).

    Args:
        documento (str | bytes | Mapping): Documento no esquema de potenciais

    Returns:
        PotencialFourier: Potencial canônico
    """
    try:
        if isinstance(documento, (str, bytes)):
            doc = DocumentoPotencial.model_validate_json(documento)
        else:
            doc = DocumentoPotencial.model_validate(documento)
    except ValidationError as e:
        raise ErroPotencial(f"Documento de potencial inválido: {e}") from e

    return PotencialFourier(
        {entrada.k: complex(entrada.re, entrada.im) for entrada in doc.coeffs}, doc.label)


def carregar_potencial(caminho: Union[str, Path]) -> PotencialFourier:
    """
    Carrega um potencial de arquivo JSON.

    Args:
        caminho (str | Path): Caminho do arquivo

    Returns:
        PotencialFourier: Potencial lido

    Raises:
        ErroPotencial: Arquivo fora de UTF-8 ou documento inválido
    """
    try:
        texto = Path(caminho).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ErroPotencial(f"Arquivo {caminho} não está em UTF-8: {e}") from e
    potencial = potencial_de_documento(texto)
    logger.info(f"Potencial carregado de {caminho}: {len(potencial.modos)} modos")
    return potencial


def salvar_potencial(potencial: PotencialFourier, caminho: Union[str, Path]):
    """
    Salva o potencial no esquema JSON.

    Args:
        potencial (PotencialFourier): Potencial a salvar
        caminho (str | Path): Caminho de saída
    """
    Path(caminho).parent.mkdir(parents=True, exist_ok=True)
    with open(caminho, "w", encoding="utf-8") as f:
        json.dump(potencial.para_documento(), f, indent=2)
    logger.info(f"Potencial salvo em {caminho}")


def potencial_mathieu(amplitude: float = 1.0) -> PotencialFourier:
    """Potencial de Mathieu 2·amplitude·cos x."""
    return PotencialFourier({1: amplitude, -1: amplitude}, "mathieu")


def potencial_geometrico(K: int, razao: float = 0.5) -> PotencialFourier:
    """
    Truncamento V_K com a_k = razao^k, k = 1..K (classe de Gasymov).

    Args:
        K (int): Último modo mantido
        razao (float): Razão geométrica, |razao| < 1 para somabilidade

    Returns:
        PotencialFourier: Potencial truncado
    """
    return PotencialFourier({k: razao ** k for k in range(1, K + 1)}, f"geometrico_{K}")
