"""
Fixtures compartilhadas pelos testes.
"""

import json
import sys
from pathlib import Path

import pytest

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from integrador import ConfigIntegrador
from potencial import PotencialFourier, potencial_mathieu


@pytest.fixture
def potencial_nulo():
    """Potencial V = 0."""
    return PotencialFourier({})


@pytest.fixture
def potencial_gasymov():
    """V(x) = e^{ix}, o exemplo mais simples da classe de Gasymov."""
    return PotencialFourier({1: 1})


@pytest.fixture
def potencial_gasymov_misto():
    """V = e^{ix} + 0.5e^{2ix} + 0.1i·e^{5ix}."""
    return PotencialFourier({1: 1, 2: 0.5, 5: 0.1j})


@pytest.fixture
def mathieu():
    """V(x) = 2cos x."""
    return potencial_mathieu(1.0)


@pytest.fixture
def config_rapida():
    """Tolerâncias mais frouxas para testes que fazem muitas integrações."""
    return ConfigIntegrador(rtol=1e-10, atol=1e-12)


@pytest.fixture
def arquivo_potencial(tmp_path):
    """Fábrica de arquivos JSON de potencial."""
    def _criar(coeficientes, nome="potencial.json", rotulo=None):
        documento = {"coeffs": [{"k": k, "re": complex(a).real, "im": complex(a).imag}
                                for k, a in coeficientes.items()]}
        if rotulo is not None:
            documento["label"] = rotulo
        caminho = tmp_path / nome
        caminho.write_text(json.dumps(documento), encoding="utf-8")
        return caminho
    return _criar
