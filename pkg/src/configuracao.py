"""
Configuração de ambiente do toolkit.

Lê variáveis do ambiente (e de um arquivo .env, se existir) e expõe os
valores padrão usados pelos demais módulos.
"""

import logging
import os

from dotenv import load_dotenv

# Carregar variáveis de ambiente do .env
load_dotenv()

VERSAO = "1.0.0"
NOME_FERRAMENTA = "hill-floquet"

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def obter_nivel_log() -> int:
    """
    Nível de log definido por HILL_LOG_LEVEL (padrão INFO).

    Returns:
        int: Nível numérico do módulo logging
    """
    nome = os.getenv("HILL_LOG_LEVEL", "INFO").strip().upper()
    nivel = logging.getLevelName(nome)
    if not isinstance(nivel, int):
        logger.warning(f"HILL_LOG_LEVEL inválido ({nome}); usando INFO")
        return logging.INFO
    return nivel


def obter_num_threads() -> int:
    """
    Número de workers para varreduras, a partir de HILL_THREADS.

    0 significa automático (todos os núcleos, convenção -1 do joblib).
    Sem a variável definida, a avaliação é sequencial.

    Returns:
        int: Valor de n_jobs para joblib.Parallel
    """
    valor = os.getenv("HILL_THREADS", "1").strip()
    try:
        n = int(valor)
    except ValueError:
        logger.warning(f"HILL_THREADS inválido ({valor}); usando 1")
        return 1
    if n < 0:
        logger.warning(f"HILL_THREADS negativo ({n}); usando 1")
        return 1
    return -1 if n == 0 else n
