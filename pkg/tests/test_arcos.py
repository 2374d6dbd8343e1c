"""
Testes unitários para o traçado de arcos espectrais.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from arcos import ConfigArco, MotivoParada, _newton_borda, tracar_arco
from espectro import ConfigBandas, bordas_bandas_reais
from excecoes import ErroArco
from monodromia import discriminante


def _ponta_de_borda(arco):
    """Ponto da extremidade que terminou numa borda de banda."""
    if arco.motivo_fim == MotivoParada.BORDA:
        return arco.pontos[-1]
    assert arco.motivo_inicio == MotivoParada.BORDA
    return arco.pontos[0]


class TestConfigArco:
    """Testes de validação dos parâmetros."""

    def test_padrao(self):
        """Valores padrão e caixa."""
        config = ConfigArco()
        assert config.passo_inicial == 1e-2
        assert config.contem(1 + 1j)
        assert not config.contem(30 + 0j)

    def test_caixa_invertida(self):
        """Limites fora de ordem são rejeitados."""
        with pytest.raises(ValidationError):
            ConfigArco(re_min=5, re_max=1)

    def test_passo_inicial_maior_que_maximo(self):
        """passo_inicial > passo_maximo é rejeitado."""
        with pytest.raises(ValidationError):
            ConfigArco(passo_inicial=0.5, passo_maximo=0.1)

    def test_motivos(self):
        """Os motivos de parada serializam como texto."""
        assert MotivoParada.BORDA.value == "band-edge"
        assert MotivoParada.CAIXA == "box-exit"


class TestNewtonBorda:
    """Testes do refinamento de Δ(z) = ±2 nas pontas do arco."""

    def test_operador_livre(self, potencial_nulo):
        """V = 0: Δ = 2 em z = 0, raiz simples (Δ'(0) = -4π²)."""
        borda = _newton_borda(potencial_nulo, 0.01 + 0.001j, 2.0, ConfigArco(), None)
        assert borda is not None
        z, delta = borda
        assert z == pytest.approx(0, abs=1e-10)
        assert delta == pytest.approx(2, abs=1e-10)

    def test_mathieu(self, mathieu, config_rapida):
        """Converge para a borda inferior da primeira banda de 2cos x."""
        banda = bordas_bandas_reais(mathieu, -2, 6, ConfigBandas(passo_varredura=0.05), config_rapida)[0]
        borda = _newton_borda(mathieu, banda.lo - 0.01, 2.0, ConfigArco(), None)
        assert borda is not None
        assert borda[0] == pytest.approx(banda.lo, abs=1e-7)
        assert abs(borda[1] - 2) <= ConfigArco().tolerancia_corretor


class TestTracarArco:
    """Testes do traçado preditor-corretor."""

    def test_potencial_nulo(self, potencial_nulo):
        """V = 0: o arco por 0.1 desce até a borda z = 0 e sai pela caixa à direita."""
        config = ConfigArco(re_min=-1, re_max=0.2, im_min=-1, im_max=1)
        arco = tracar_arco(potencial_nulo, 0.1, config)
        assert {arco.motivo_inicio, arco.motivo_fim} == {MotivoParada.BORDA, MotivoParada.CAIXA}
        assert _ponta_de_borda(arco) == pytest.approx(0, abs=1e-8)
        assert np.all(np.abs(arco.pontos.imag) <= 1e-8)
        assert np.all(arco.pontos.real <= 0.2)
        assert len(arco.pontos) == len(arco.deltas)

    def test_pontos_no_espectro(self, potencial_nulo):
        """Todo ponto do arco tem Δ real com |Δ| <= 2."""
        config = ConfigArco(re_min=-1, re_max=0.2, im_min=-1, im_max=1)
        arco = tracar_arco(potencial_nulo, 0.1, config)
        for z, delta in zip(arco.pontos, arco.deltas):
            assert abs(delta.imag) <= 1e-8
            assert abs(delta.real) <= 2 + 1e-8
            assert discriminante(potencial_nulo, z) == pytest.approx(delta, abs=1e-9)

    def test_classe_gasymov(self, potencial_gasymov):
        """V = e^{ix}: o espectro é [0, ∞) mesmo com potencial complexo."""
        config = ConfigArco(re_min=-1, re_max=0.2, im_min=-1, im_max=1)
        arco = tracar_arco(potencial_gasymov, 0.1, config)
        assert np.all(np.abs(arco.pontos.imag) <= 1e-6)
        assert np.all(arco.pontos.real >= -1e-6)
        assert _ponta_de_borda(arco) == pytest.approx(0, abs=1e-6)

    def test_mathieu_banda_completa(self, mathieu, config_rapida):
        """Semente no meio da primeira banda: as duas pontas são as bordas da banda."""
        banda = bordas_bandas_reais(mathieu, -2, 6, ConfigBandas(passo_varredura=0.05), config_rapida)[0]
        semente = 0.5 * (banda.lo + banda.hi)
        arco = tracar_arco(mathieu, semente, ConfigArco(re_min=-2, re_max=6), config_rapida)
        assert arco.motivo_inicio == MotivoParada.BORDA
        assert arco.motivo_fim == MotivoParada.BORDA
        pontas = sorted([arco.pontos[0].real, arco.pontos[-1].real])
        assert pontas[0] == pytest.approx(banda.lo, abs=1e-7)
        assert pontas[1] == pytest.approx(banda.hi, abs=1e-7)
        assert np.all(np.abs(arco.pontos.imag) <= 1e-8)

    def test_semente_degenerada(self, potencial_nulo):
        """Em z = 1 Δ' = 0: as duas saídas reais são sondadas num círculo."""
        config = ConfigArco(re_min=0.5, re_max=1.5, im_min=-1, im_max=1)
        arco = tracar_arco(potencial_nulo, 1.0, config)
        assert arco.motivo_inicio == MotivoParada.CAIXA
        assert arco.motivo_fim == MotivoParada.CAIXA
        assert np.min(np.abs(arco.pontos - 1.0)) == 0
        assert arco.pontos.real.min() < 0.9
        assert arco.pontos.real.max() > 1.1
        assert np.all(np.abs(arco.pontos.imag) <= 1e-8)

    def test_limite_de_passos(self, potencial_nulo):
        """Poucos passos: as duas pontas param por max-steps."""
        config = ConfigArco(max_passos=3, re_min=-1, re_max=0.2, im_min=-1, im_max=1,
                            passo_inicial=1e-3, passo_maximo=1e-3)
        arco = tracar_arco(potencial_nulo, 0.1, config)
        assert arco.motivo_inicio == MotivoParada.MAX_PASSOS
        assert arco.motivo_fim == MotivoParada.MAX_PASSOS
        assert len(arco.pontos) == 7

    def test_semente_fora_do_espectro(self, potencial_nulo):
        """z = -1 não está no espectro de V = 0."""
        with pytest.raises(ErroArco):
            tracar_arco(potencial_nulo, -1.0)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
