"""
Testes unitários para a verificação da identidade de Gasymov e a homotopia.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from excecoes import ErroClasseGasymov
from potencial import PotencialFourier
from verificacao import (COLUNAS_GRADE, GradeComplexa, varredura_homotopia, varrer_grade,
                         verificar_gasymov)

GRADE_PEQUENA = GradeComplexa(re_min=-1, re_max=3, im_min=-1, im_max=1, passo=1)


class TestGradeComplexa:
    """Testes da grade retangular."""

    def test_grade_padrao(self):
        """[-2, 9] × [-2, 2] com passo 0.5: 23 × 9 pontos."""
        pontos = GradeComplexa().pontos()
        assert len(pontos) == 23 * 9
        assert pontos[0] == -2 - 2j
        assert pontos[-1] == 9 + 2j

    def test_ordem(self):
        """Parte real varia mais devagar."""
        pontos = GRADE_PEQUENA.pontos()
        assert list(pontos[:4]) == [-1 - 1j, -1 + 0j, -1 + 1j, 0 - 1j]

    def test_grade_degenerada(self):
        """Retângulo reduzido a um ponto."""
        assert list(GradeComplexa(re_min=1, re_max=1, im_min=0, im_max=0).pontos()) == [1 + 0j]

    def test_limites_invalidos(self):
        """re_min > re_max é rejeitado."""
        with pytest.raises(ValidationError):
            GradeComplexa(re_min=3, re_max=1)
        with pytest.raises(ValidationError):
            GradeComplexa(passo=0)


class TestVarrerGrade:
    """Testes da tabela da grade."""

    def test_colunas(self, potencial_nulo):
        """Tabela com uma linha por ponto, na ordem da grade."""
        tabela = varrer_grade(potencial_nulo, GRADE_PEQUENA)
        assert list(tabela.columns) == COLUNAS_GRADE
        assert len(tabela) == 15
        assert tabela.loc[0, "re_z"] == -1 and tabela.loc[0, "im_z"] == -1

    def test_distancia_no_eixo(self, potencial_nulo):
        """No semieixo positivo V = 0 dá distância nula."""
        tabela = varrer_grade(potencial_nulo, GRADE_PEQUENA)
        positivos = tabela[(tabela.im_z == 0) & (tabela.re_z >= 0)]
        assert (positivos["dist"] <= 1e-9).all()
        assert (tabela[tabela.im_z != 0]["dist"] > 1e-3).all()

    def test_paralelo_igual_ao_sequencial(self, potencial_gasymov):
        """A ordem do resultado não depende do número de workers."""
        sequencial = varrer_grade(potencial_gasymov, GRADE_PEQUENA, n_jobs=1)
        paralelo = varrer_grade(potencial_gasymov, GRADE_PEQUENA, n_jobs=2)
        np.testing.assert_array_equal(sequencial.to_numpy(), paralelo.to_numpy())


class TestVerificarGasymov:
    """Testes da identidade Δ(V;z) = 2cos(2π√z)."""

    def test_operador_livre(self, potencial_nulo):
        """V = 0 na grade de aceitação: desvio escalado <= 1e-9 (|Δ| chega a ~1.7e4)."""
        relatorio = verificar_gasymov(potencial_nulo, tol=1e-9, metrica="escalado")
        assert relatorio.aprovado
        assert relatorio.metrica == "escalado"
        assert relatorio.desvio_max_escalado <= 1e-9
        assert len(relatorio.tabela) == 207

    def test_gasymov_simples(self, potencial_gasymov):
        """V = e^{ix} passa com desvio absoluto <= 1e-7."""
        relatorio = verificar_gasymov(potencial_gasymov)
        assert relatorio.aprovado
        assert relatorio.metrica == "absoluto"
        assert relatorio.tolerancia == 1e-7
        assert relatorio.desvio_max_abs <= 1e-7
        assert relatorio.desvio_max_abs >= relatorio.desvio_max_escalado * 0.999

    def test_gasymov_misto(self, potencial_gasymov_misto):
        """V = e^{ix} + 0.5e^{2ix} + 0.1i·e^{5ix} passa com tolerância 1e-7."""
        relatorio = verificar_gasymov(potencial_gasymov_misto)
        assert relatorio.aprovado
        assert relatorio.desvio_max_abs <= 1e-7

    def test_criterio_absoluto_mais_estrito(self, potencial_gasymov):
        """Com tol 1e-10 o desvio absoluto reprova onde o escalado aprovaria."""
        absoluto = verificar_gasymov(potencial_gasymov, tol=1e-10)
        assert not absoluto.aprovado
        assert absoluto.desvio_max_abs > 1e-10
        assert absoluto.desvio_max_escalado <= 1e-10

        escalado = verificar_gasymov(potencial_gasymov, tol=1e-10, metrica="escalado")
        assert escalado.aprovado

    def test_metrica_desconhecida(self, potencial_gasymov):
        """Métrica fora de absoluto/escalado é rejeitada."""
        with pytest.raises(ValueError):
            verificar_gasymov(potencial_gasymov, metrica="relativo")

    def test_mathieu_rejeitado(self, mathieu):
        """2cos x tem modo -1: a identidade não se aplica."""
        with pytest.raises(ErroClasseGasymov):
            verificar_gasymov(mathieu)

    def test_potencial_com_constante(self):
        """Modo 0 também fica fora da classe."""
        with pytest.raises(ErroClasseGasymov):
            verificar_gasymov(PotencialFourier({0: 1, 1: 1}))


class TestHomotopia:
    """Testes da varredura Δ(εV; 1/n²)."""

    def test_n3(self, potencial_gasymov):
        """z = 1/9: Δ = 2cos(2π/3) = -1 para todo ε."""
        relatorio = varredura_homotopia(potencial_gasymov, 3, passos=11)
        assert relatorio.aprovado
        assert relatorio.referencia.real == pytest.approx(-1, abs=1e-14)
        assert len(relatorio.tabela) == 11
        np.testing.assert_allclose(relatorio.tabela["re_delta"], -1, atol=1e-8)

    def test_n4(self, potencial_gasymov_misto):
        """z = 1/16: Δ = 0 para todo ε."""
        relatorio = varredura_homotopia(potencial_gasymov_misto, 4, passos=11)
        assert relatorio.aprovado
        assert relatorio.desvio_max <= 1e-8
        assert list(relatorio.tabela.columns) == ["eps", "re_delta", "im_delta", "desvio"]

    def test_potencial_nulo_exato(self, potencial_nulo):
        """V = 0: todos os membros usam a forma fechada."""
        relatorio = varredura_homotopia(potencial_nulo, 3, passos=3)
        assert relatorio.desvio_max == 0
        assert list(relatorio.tabela["eps"]) == [0, 0.5, 1]

    def test_passos_insuficientes(self, potencial_gasymov):
        """Menos de 2 passos é rejeitado."""
        with pytest.raises(ValueError):
            varredura_homotopia(potencial_gasymov, 3, passos=1)

    def test_fora_da_classe(self, mathieu):
        """Mathieu é rejeitado."""
        with pytest.raises(ErroClasseGasymov):
            varredura_homotopia(mathieu, 3)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
