"""
Testes unitários para a configuração por variáveis de ambiente.
"""

import logging
import sys
from pathlib import Path

import pytest

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from configuracao import obter_nivel_log, obter_num_threads


class TestNumThreads:
    """Testes de HILL_THREADS."""

    def test_padrao_sequencial(self, monkeypatch):
        """Sem a variável, avaliação sequencial."""
        monkeypatch.delenv("HILL_THREADS", raising=False)
        assert obter_num_threads() == 1

    @pytest.mark.parametrize("valor, esperado", [
        ("1", 1),
        ("4", 4),
        (" 8 ", 8),
        ("0", -1),
    ])
    def test_valores_validos(self, monkeypatch, valor, esperado):
        """0 vira -1 (todos os núcleos no joblib)."""
        monkeypatch.setenv("HILL_THREADS", valor)
        assert obter_num_threads() == esperado

    @pytest.mark.parametrize("valor", ["-2", "dois", "1.5", ""])
    def test_valores_invalidos(self, monkeypatch, valor):
        """Negativos e não inteiros caem para 1."""
        monkeypatch.setenv("HILL_THREADS", valor)
        assert obter_num_threads() == 1


class TestNivelLog:
    """Testes de HILL_LOG_LEVEL."""

    def test_padrao(self, monkeypatch):
        monkeypatch.delenv("HILL_LOG_LEVEL", raising=False)
        assert obter_nivel_log() == logging.INFO

    @pytest.mark.parametrize("valor, esperado", [
        ("DEBUG", logging.DEBUG),
        ("warning", logging.WARNING),
        (" error ", logging.ERROR),
    ])
    def test_niveis(self, monkeypatch, valor, esperado):
        """Nome do nível sem distinção de caixa."""
        monkeypatch.setenv("HILL_LOG_LEVEL", valor)
        assert obter_nivel_log() == esperado

    def test_nivel_invalido(self, monkeypatch, caplog):
        """Nome desconhecido volta para INFO com aviso."""
        monkeypatch.setenv("HILL_LOG_LEVEL", "VERBOSO")
        with caplog.at_level(logging.WARNING):
            assert obter_nivel_log() == logging.INFO
        assert "HILL_LOG_LEVEL inválido" in caplog.text


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
