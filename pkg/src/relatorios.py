"""
Escrita dos relatórios CSV e JSON.

Os dados são determinísticos; apenas o cabeçalho de metadados (versão,
subcomando, configuração e horário) varia entre execuções. No CSV ele
ocupa uma única linha '# meta {...}' antes do cabeçalho das colunas.
"""

import json
import logging
import sys
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, TextIO, Union

import pandas as pd

from configuracao import NOME_FERRAMENTA, VERSAO

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

FORMATO_FLOAT = "%.17g"


def criar_meta(subcomando: str, config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Metadados da execução.

    Args:
        subcomando (str): Subcomando executado
        config (Dict[str, Any]): Configuração serializável

    Returns:
        Dict[str, Any]: Ferramenta, versão, subcomando, configuração e horário UTC
    """
    return {
        "ferramenta": NOME_FERRAMENTA,
        "versao": VERSAO,
        "subcomando": subcomando,
        "config": config,
        "gerado_em": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


@contextmanager
def _abrir_saida(caminho: Optional[Union[str, Path]]) -> Iterator[TextIO]:
    # sem caminho (ou '-') escreve na saída padrão
    if caminho is None or str(caminho) == "-":
        yield sys.stdout
        return
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    with open(caminho, "w", encoding="utf-8", newline="") as f:
        yield f
    logger.info(f"Relatório salvo em {caminho}")


def escrever_csv(tabela: pd.DataFrame, caminho: Optional[Union[str, Path]],
                 meta: Dict[str, Any]):
    """
    Escreve a tabela em CSV com a linha de metadados no topo.

    Args:
        tabela (pd.DataFrame): Dados
        caminho (str | Path, optional): Arquivo de saída (None ou '-' = stdout)
        meta (Dict[str, Any]): Metadados da execução
    """
    with _abrir_saida(caminho) as f:
        f.write("# meta " + json.dumps(meta, sort_keys=True, default=str) + "\n")
        tabela.to_csv(f, index=False, float_format=FORMATO_FLOAT, lineterminator="\n")


def escrever_json(dados: Dict[str, Any], caminho: Optional[Union[str, Path]],
                  meta: Dict[str, Any]):
    """
    Escreve {'meta': ..., 'dados': ...} em JSON indentado e com chaves ordenadas.

    Args:
        dados (Dict[str, Any]): Resultado da execução
        caminho (str | Path, optional): Arquivo de saída (None ou '-' = stdout)
        meta (Dict[str, Any]): Metadados da execução
    """
    with _abrir_saida(caminho) as f:
        json.dump({"meta": meta, "dados": dados}, f, indent=2, sort_keys=True, default=str)
        f.write("\n")


def ler_csv(caminho: Union[str, Path]) -> pd.DataFrame:
    """Lê um relatório CSV ignorando a linha de metadados."""
    return pd.read_csv(caminho, comment="#")


def ler_meta_csv(caminho: Union[str, Path]) -> Dict[str, Any]:
    """Metadados da primeira linha de um relatório CSV."""
    with open(caminho, encoding="utf-8") as f:
        primeira = f.readline()
    if not primeira.startswith("# meta "):
        raise ValueError(f"{caminho} não começa com a linha de metadados")
    return json.loads(primeira[len("# meta "):])


def ler_json(caminho: Union[str, Path]) -> Dict[str, Any]:
    with open(caminho, encoding="utf-8") as f:
        return json.load(f)
