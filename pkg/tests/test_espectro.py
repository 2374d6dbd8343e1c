"""
Testes unitários para pertinência, bandas, autovalores periódicos e oráculo de Hill.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from excecoes import ErroVarredura
from espectro import (BORDA_CAIXA, BORDA_MAIS, BORDA_MENOS, ConfigBandas,
                      autovalores_hill_truncado, autovalores_periodicos, bordas_bandas_reais,
                      distancia_espectral, matriz_hill_truncada, pertinencia,
                      pertinencia_por_multiplicadores)
from potencial import PotencialFourier

VARREDURA_RAPIDA = ConfigBandas(passo_varredura=0.05)


class TestPertinencia:
    """Testes do veredito z ∈ espectro."""

    def test_distancia(self):
        """Distância nula no segmento [-2, 2] do eixo real."""
        assert distancia_espectral(complex(1.5, 0)) == 0
        assert distancia_espectral(complex(-2, 0)) == 0
        assert distancia_espectral(complex(2.5, 0)) == pytest.approx(0.5)
        assert distancia_espectral(complex(0, -0.3)) == pytest.approx(0.3)

    def test_potencial_nulo(self, potencial_nulo):
        """V = 0: espectro [0, ∞)."""
        veredito = pertinencia(potencial_nulo, 0.25)
        assert veredito.no_espectro
        assert veredito.delta.real == pytest.approx(-2, abs=1e-10)
        assert not pertinencia(potencial_nulo, -1).no_espectro
        assert not pertinencia(potencial_nulo, 1 + 0.1j).no_espectro
        assert pertinencia(potencial_nulo, -1).distancia == pytest.approx(
            2 * math.cosh(2 * math.pi) - 2, rel=1e-8)

    def test_classe_gasymov(self, potencial_gasymov):
        """V = e^{ix}: espectro [0, ∞), como o operador livre."""
        for z in (0.3, 2.5, 7.0):
            assert pertinencia(potencial_gasymov, z).no_espectro
        assert not pertinencia(potencial_gasymov, -0.5).no_espectro
        assert not pertinencia(potencial_gasymov, 2 + 0.5j).no_espectro

    def test_multiplicadores_consistentes(self, potencial_nulo, mathieu):
        """O teste pelos multiplicadores concorda com o teste por Δ."""
        for V in (potencial_nulo, mathieu):
            for z in (-1.0, 0.25, 0.6, 3.0, 1 + 0.2j, 2 - 1j):
                assert pertinencia(V, z).no_espectro == pertinencia_por_multiplicadores(V, z)

    def test_tolerancia_invalida(self, potencial_nulo):
        """Tolerância deve ser positiva."""
        with pytest.raises(ValueError):
            pertinencia(potencial_nulo, 1.0, tol=0)


class TestBandasReais:
    """Testes da estrutura de bandas no eixo real."""

    def test_potencial_nulo(self, potencial_nulo):
        """V = 0 em [-1, 5]: uma banda [0, 5]; as lacunas fechadas em n²/4 somem."""
        bandas = bordas_bandas_reais(potencial_nulo, -1, 5, VARREDURA_RAPIDA)
        assert len(bandas) == 1
        banda = bandas[0]
        assert banda.lo == pytest.approx(0, abs=1e-9)
        assert banda.hi == 5
        assert (banda.borda_lo, banda.borda_hi) == (BORDA_MAIS, BORDA_CAIXA)

    def test_janela_dentro_de_banda(self, potencial_nulo):
        """Janela inteiramente numa banda: duas bordas de caixa."""
        bandas = bordas_bandas_reais(potencial_nulo, 0.3, 0.9, VARREDURA_RAPIDA)
        assert bandas == [(0.3, 0.9, BORDA_CAIXA, BORDA_CAIXA)]

    def test_janela_numa_lacuna(self, potencial_nulo):
        """Janela abaixo do espectro: nenhuma banda."""
        assert bordas_bandas_reais(potencial_nulo, -3, -1, VARREDURA_RAPIDA) == []

    def test_mathieu_contra_oraculo(self, mathieu, config_rapida):
        """Bordas de 2cos x coincidem com os autovalores de Hill truncados."""
        bandas = bordas_bandas_reais(mathieu, -2, 6, VARREDURA_RAPIDA, config_rapida)
        assert len(bandas) >= 2
        # primeira lacuna aberta
        assert bandas[1].lo - bandas[0].hi > 1e-3

        periodicos = autovalores_hill_truncado(mathieu, 40, "periodico").real
        antiperiodicos = autovalores_hill_truncado(mathieu, 40, "antiperiodico").real
        for banda in bandas:
            for z, tipo in ((banda.lo, banda.borda_lo), (banda.hi, banda.borda_hi)):
                if tipo == BORDA_MAIS:
                    assert np.min(np.abs(periodicos - z)) <= 1e-6
                elif tipo == BORDA_MENOS:
                    assert np.min(np.abs(antiperiodicos - z)) <= 1e-6

    def test_mathieu_bordas_alternam(self, mathieu, config_rapida):
        """Bandas disjuntas, ordenadas, com bordas +2/-2 alternando."""
        bandas = bordas_bandas_reais(mathieu, -2, 6, VARREDURA_RAPIDA, config_rapida)
        assert bandas[0].borda_lo == BORDA_MAIS
        for anterior, banda in zip(bandas, bandas[1:]):
            assert anterior.hi < banda.lo
            assert anterior.borda_hi == banda.borda_lo
            assert anterior.borda_hi in (BORDA_MAIS, BORDA_MENOS)
        for banda in bandas:
            assert banda.lo < banda.hi
            assert banda.borda_lo != banda.borda_hi or BORDA_CAIXA in (banda.borda_lo, banda.borda_hi)

    def test_deslocamento(self, mathieu, config_rapida):
        """Bandas de V + c são as de V transladadas por c."""
        base = bordas_bandas_reais(mathieu, -2, 6, VARREDURA_RAPIDA, config_rapida)
        deslocadas = bordas_bandas_reais(mathieu.deslocar(1.0), -1, 7, VARREDURA_RAPIDA, config_rapida)
        assert len(base) == len(deslocadas)
        for a, b in zip(base, deslocadas):
            assert b.lo == pytest.approx(a.lo + 1, abs=1e-7)
            assert b.hi == pytest.approx(a.hi + 1, abs=1e-7)
            assert (a.borda_lo, a.borda_hi) == (b.borda_lo, b.borda_hi)

    def test_potencial_nao_real(self, potencial_gasymov):
        """V = e^{ix} não tem estrutura de bandas real."""
        with pytest.raises(ErroVarredura):
            bordas_bandas_reais(potencial_gasymov, 0, 5)

    def test_janela_vazia(self, potencial_nulo):
        """zmin >= zmax é rejeitado."""
        with pytest.raises(ValueError):
            bordas_bandas_reais(potencial_nulo, 2, 1)


class TestAutovaloresPeriodicos:
    """Testes das raízes de Δ = 2 a partir das sementes n²."""

    def test_classe_gasymov(self, potencial_gasymov):
        """V = e^{ix}: autovalores periódicos {0, 1, 4, 9}."""
        resultados = autovalores_periodicos(potencial_gasymov, 4)
        assert [r.semente for r in resultados] == [0, 1, 4, 9]
        for r in resultados:
            assert r.convergiu
            assert r.z == pytest.approx(r.semente, abs=1e-8)
            assert r.residuo <= 1e-9

    def test_potencial_nulo(self, potencial_nulo):
        """V = 0: as sementes já são raízes."""
        resultados = autovalores_periodicos(potencial_nulo, 3)
        assert [r.z for r in resultados] == [0, 1, 4]

    def test_mathieu_contra_oraculo(self, mathieu):
        """Raízes de Mathieu encontradas por Newton estão no espectro periódico truncado."""
        periodicos = autovalores_hill_truncado(mathieu, 40, "periodico")
        resultados = autovalores_periodicos(mathieu, 3)
        convergidos = [r for r in resultados if r.convergiu]
        assert convergidos
        for r in convergidos:
            assert abs(r.z.imag) <= 1e-8
            assert np.min(np.abs(periodicos - r.z)) <= 1e-6

    def test_quantidade_invalida(self, potencial_nulo):
        """m < 1 é rejeitado."""
        with pytest.raises(ValueError):
            autovalores_periodicos(potencial_nulo, 0)


class TestOraculoHill:
    """Testes do determinante de Hill truncado."""

    def test_potencial_nulo_periodico(self, potencial_nulo):
        """V = 0: autovalores k², com multiplicidade 2 para k >= 1."""
        valores = autovalores_hill_truncado(potencial_nulo, 5, "periodico").real
        np.testing.assert_allclose(valores[:5], [0, 1, 1, 4, 4], atol=1e-12)
        assert len(valores) == 11

    def test_potencial_nulo_antiperiodico(self, potencial_nulo):
        """V = 0: autovalores (k + 1/2)²."""
        valores = autovalores_hill_truncado(potencial_nulo, 5, "antiperiodico").real
        np.testing.assert_allclose(valores[:4], [0.25, 0.25, 2.25, 2.25], atol=1e-12)

    def test_matriz(self, mathieu):
        """Estrutura tridiagonal para 2cos x."""
        H = matriz_hill_truncada(mathieu, 2)
        assert H.shape == (5, 5)
        np.testing.assert_allclose(np.diag(H).real, [4, 1, 0, 1, 4])
        np.testing.assert_allclose(np.diag(H, 1), np.ones(4))
        np.testing.assert_allclose(np.diag(H, -1), np.ones(4))
        assert H[0, 2] == 0

    def test_classe_gasymov(self, potencial_gasymov):
        """Matriz triangular: autovalores k², com blocos de Jordan em k = ±n."""
        valores = autovalores_hill_truncado(potencial_gasymov, 6, "periodico")
        np.testing.assert_allclose(valores[:5].real, [0, 1, 1, 4, 4], atol=1e-6)
        np.testing.assert_allclose(valores.imag, 0, atol=1e-6)

    def test_bloco_invalido(self, potencial_nulo):
        """Bloco desconhecido é rejeitado."""
        with pytest.raises(ValueError):
            matriz_hill_truncada(potencial_nulo, 3, "misto")


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
