#!/usr/bin/env python3
"""
Linha de comando do toolkit de operadores de Hill.

Subcomandos: disc, grid, verify-gasymov, bands, arcs, picard, homotopy e
eigs. Cada execução lê um potencial JSON, chama os módulos numéricos e
escreve um relatório CSV ou JSON (stdout por padrão).

Códigos de saída: 0 sucesso, 1 verificação reprovada ou falha numérica,
2 erro de uso, de leitura ou de esquema.
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

# Adicionar o diretório src ao path
sys.path.insert(0, str(Path(__file__).parent))

from arcos import ConfigArco, tracar_arco
from configuracao import VERSAO, obter_nivel_log
from espectro import (ConfigBandas, autovalores_hill_truncado, autovalores_periodicos,
                      bordas_bandas_reais)
from excecoes import ErroClasseGasymov, ErroHill, ErroPotencial
from integrador import ConfigIntegrador
from monodromia import monodromia_e_derivada, multiplicadores
from picard import ConfigPicard, relatorio_picard
from potencial import PotencialFourier, carregar_potencial
from relatorios import criar_meta, escrever_csv, escrever_json
from verificacao import GradeComplexa, varredura_homotopia, verificar_gasymov, varrer_grade

logger = logging.getLogger(__name__)

SUBCOMANDOS = ("disc", "grid", "verify-gasymov", "bands", "arcs", "picard", "homotopy", "eigs")

# formato padrão e tolerância padrão por subcomando
FORMATO_PADRAO = {
    "disc": "json", "grid": "csv", "verify-gasymov": "json", "bands": "csv",
    "arcs": "csv", "picard": "json", "homotopy": "json", "eigs": "csv",
}
TOLERANCIA_PADRAO = {
    "disc": 1e-8, "grid": 1e-8, "verify-gasymov": 1e-7, "bands": 1e-6,
    "arcs": 1e-8, "picard": 1e-10, "homotopy": 1e-8, "eigs": 1e-9,
}

_COMPLEXO = re.compile(r"^\s*[-+]?[0-9.eE+\-]*[ij]?\s*$")


def interpretar_complexo(texto: str) -> complex:
    """
    Converte 'a+bi' (também 'a', 'bi', '-i', 'a-bj') em complex.

    Args:
        texto (str): Valor na forma a+bi com literais decimais

    Returns:
        complex: Valor interpretado
    """
    bruto = texto.strip().replace(" ", "").replace("i", "j")
    if not bruto or not _COMPLEXO.match(bruto):
        raise argparse.ArgumentTypeError(f"Número complexo inválido: {texto!r}")
    # 'j' isolado precisa de coeficiente
    bruto = re.sub(r"(^|[+\-])j$", r"\g<1>1j", bruto)
    try:
        return complex(bruto)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Número complexo inválido: {texto!r}") from e


class ConfigExecucao(BaseModel):
    """Configuração validada de uma execução da linha de comando."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    subcomando: Literal["disc", "grid", "verify-gasymov", "bands", "arcs",
                        "picard", "homotopy", "eigs"]
    potencial: Path
    z: Optional[complex] = None
    rtol: float = Field(default=1e-12, gt=0)
    atol: float = Field(default=1e-14, gt=0)
    max_passos: int = Field(default=1_000_000, ge=1)
    tol: float = Field(gt=0)
    n: int = Field(default=3, ge=1)
    profundidade: int = Field(default=12, ge=0)
    harmonicos: int = Field(default=60, ge=1)
    passos: Optional[int] = Field(default=None, ge=1)
    re_min: float = -2.0
    re_max: float = 9.0
    im_min: float = -2.0
    im_max: float = 2.0
    passo: Optional[float] = Field(default=None, gt=0)
    zmin: float = -2.0
    zmax: float = 6.0
    contagem: int = Field(default=4, ge=1)
    sementes: List[complex] = Field(default_factory=list)
    oraculo: Optional[int] = Field(default=None, ge=1)
    metrica: Literal["absoluto", "escalado"] = "absoluto"
    saida: Optional[Path] = None
    formato: Literal["csv", "json"]

    @model_validator(mode="after")
    def _limites_ordenados(self) -> "ConfigExecucao":
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ValueError("Limites da grade fora de ordem")
        if self.zmin >= self.zmax:
            raise ValueError("--zmin deve ser menor que --zmax")
        if self.subcomando == "disc" and self.z is None:
            raise ValueError("disc exige --z")
        if self.subcomando == "arcs" and not self.sementes:
            raise ValueError("arcs exige ao menos uma --seed")
        if self.subcomando == "homotopy" and self.passos is not None and self.passos < 2:
            raise ValueError("homotopy exige --steps >= 2")
        return self

    def integrador(self) -> ConfigIntegrador:
        return ConfigIntegrador(rtol=self.rtol, atol=self.atol, max_passos=self.max_passos)

    def grade(self) -> GradeComplexa:
        return GradeComplexa(re_min=self.re_min, re_max=self.re_max, im_min=self.im_min,
                             im_max=self.im_max, passo=self.passo or 0.5)

    def para_meta(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


def criar_parser() -> argparse.ArgumentParser:
    """Parser com um subparser por subcomando, todos com as mesmas opções."""
    parser = argparse.ArgumentParser(
        prog="hill-floquet",
        description="Discriminante de Floquet, espectro e identidades de Gasymov para operadores de Hill")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSAO}")
    subparsers = parser.add_subparsers(dest="subcomando", required=True)

    for nome in SUBCOMANDOS:
        sub = subparsers.add_parser(nome)
        sub.add_argument("--potential", dest="potencial", required=True,
                         help="Arquivo JSON do potencial")
        sub.add_argument("--z", type=interpretar_complexo, help="Parâmetro espectral a+bi")
        sub.add_argument("--rtol", type=float, default=1e-12)
        sub.add_argument("--atol", type=float, default=1e-14)
        sub.add_argument("--max-steps", dest="max_passos", type=int, default=1_000_000,
                         help="Limite de passos do integrador")
        sub.add_argument("--tol", type=float, help="Tolerância da verificação")
        sub.add_argument("--n", type=int, default=3, help="Índice de escala")
        sub.add_argument("--depth", dest="profundidade", type=int, default=12,
                         help="Profundidade J da série de Picard")
        sub.add_argument("--harmonics", dest="harmonicos", type=int, default=60,
                         help="Corte L de harmônicos")
        sub.add_argument("--steps", dest="passos", type=int,
                         help="Valores de ε (homotopy) ou limite de passos do arco (arcs)")
        sub.add_argument("--re-min", dest="re_min", type=float, default=-2.0)
        sub.add_argument("--re-max", dest="re_max", type=float, default=9.0)
        sub.add_argument("--im-min", dest="im_min", type=float, default=-2.0)
        sub.add_argument("--im-max", dest="im_max", type=float, default=2.0)
        sub.add_argument("--step", dest="passo", type=float,
                         help="Passo da grade, da varredura de bandas ou inicial do arco")
        sub.add_argument("--zmin", type=float, default=-2.0)
        sub.add_argument("--zmax", type=float, default=6.0)
        sub.add_argument("--count", dest="contagem", type=int, default=4,
                         help="Número de autovalores periódicos")
        sub.add_argument("--seed", dest="sementes", type=interpretar_complexo,
                         action="append", default=[], help="Semente do arco (repetível)")
        sub.add_argument("--oracle", dest="oraculo", type=int, metavar="K",
                         help="Inclui o oráculo do determinante de Hill truncado em K")
        sub.add_argument("--out", dest="saida", help="Arquivo de saída (padrão: stdout)")
        sub.add_argument("--metric", dest="metrica", choices=["absoluto", "escalado"],
                         default="absoluto", help="Desvio usado por verify-gasymov")
        sub.add_argument("--format", dest="formato", choices=["csv", "json"])
    return parser


# Execução dos subcomandos: cada um retorna (dados JSON, tabela CSV, aprovado)

def _executar_disc(cfg: ConfigExecucao, V: PotencialFourier):
    M, dM = monodromia_e_derivada(V, cfg.z, cfg.integrador())
    delta = M.traco
    par = multiplicadores(delta)
    dados = {
        "z_re": cfg.z.real, "z_im": cfg.z.imag,
        "delta_re": delta.real, "delta_im": delta.imag,
        "ddelta_re": dM.traco.real, "ddelta_im": dM.traco.imag,
        "det_re": M.determinante.real, "det_im": M.determinante.imag,
        "monodromia": [[{"re": v.real, "im": v.imag} for v in linha]
                       for linha in M.como_array().tolist()],
        "rho_mais": {"re": par.rho_mais.real, "im": par.rho_mais.imag},
        "rho_menos": {"re": par.rho_menos.real, "im": par.rho_menos.imag},
        "dist": max(abs(delta.imag), max(0.0, abs(delta.real) - 2)),
    }
    tabela = pd.DataFrame([{"re_z": cfg.z.real, "im_z": cfg.z.imag, "re_delta": delta.real,
                            "im_delta": delta.imag, "dist": dados["dist"]}])
    return dados, tabela, True


def _executar_grid(cfg: ConfigExecucao, V: PotencialFourier):
    tabela = varrer_grade(V, cfg.grade(), cfg.integrador())
    return {"pontos": tabela.to_dict(orient="records")}, tabela, True


def _executar_verify(cfg: ConfigExecucao, V: PotencialFourier):
    relatorio = verificar_gasymov(V, cfg.grade(), cfg.tol, cfg.integrador(),
                                  metrica=cfg.metrica)
    dados = {
        "aprovado": relatorio.aprovado,
        "desvio_max_abs": relatorio.desvio_max_abs,
        "desvio_max_escalado": relatorio.desvio_max_escalado,
        "z_pior_re": relatorio.z_pior.real,
        "z_pior_im": relatorio.z_pior.imag,
        "tol": relatorio.tolerancia,
        "metrica": relatorio.metrica,
        "pontos": len(relatorio.tabela),
    }
    return dados, relatorio.tabela, relatorio.aprovado


def _executar_bands(cfg: ConfigExecucao, V: PotencialFourier):
    config = ConfigBandas(passo_varredura=cfg.passo or 0.01, tolerancia_tangencia=cfg.tol)
    bandas = bordas_bandas_reais(V, cfg.zmin, cfg.zmax, config, cfg.integrador())
    tabela = pd.DataFrame([{"lo": b.lo, "hi": b.hi, "edge_lo": b.borda_lo, "edge_hi": b.borda_hi}
                           for b in bandas], columns=["lo", "hi", "edge_lo", "edge_hi"])
    return {"bandas": tabela.to_dict(orient="records")}, tabela, True


def _executar_arcs(cfg: ConfigExecucao, V: PotencialFourier):
    parametros: Dict[str, Any] = {"re_min": cfg.re_min, "re_max": cfg.re_max,
                                  "im_min": cfg.im_min, "im_max": cfg.im_max}
    if cfg.passo is not None:
        parametros["passo_inicial"] = cfg.passo
        parametros["passo_maximo"] = max(cfg.passo, ConfigArco().passo_maximo)
    if cfg.passos is not None:
        parametros["max_passos"] = cfg.passos
    config = ConfigArco(**parametros)

    linhas, arcos = [], []
    for semente in cfg.sementes:
        arco = tracar_arco(V, semente, config, cfg.integrador())
        # idx recomeça em 0 a cada arco
        for idx, (z, delta) in enumerate(zip(arco.pontos, arco.deltas)):
            linhas.append({"idx": idx, "re_z": z.real, "im_z": z.imag, "re_delta": delta.real})
        arcos.append({
            "semente_re": semente.real, "semente_im": semente.imag,
            "pontos": len(arco.pontos),
            "motivo_inicio": arco.motivo_inicio.value,
            "motivo_fim": arco.motivo_fim.value,
            "max_abs_im_z": float(max(abs(z.imag) for z in arco.pontos)),
        })
    tabela = pd.DataFrame(linhas, columns=["idx", "re_z", "im_z", "re_delta"])
    return {"arcos": arcos, "pontos": tabela.to_dict(orient="records")}, tabela, True


def _executar_picard(cfg: ConfigExecucao, V: PotencialFourier):
    config = ConfigPicard(profundidade=cfg.profundidade, harmonicos=cfg.harmonicos)
    dados = relatorio_picard(V, cfg.n, config)
    desvio = abs(complex(dados["delta_re"], dados["delta_im"]) - 2)
    dados["desvio"] = desvio
    dados["tol"] = cfg.tol
    aprovado = desvio <= cfg.tol and dados["integrais_nao_nulas"] == 0
    dados["aprovado"] = aprovado
    linhas = [dict(item, serie=nome) for nome in ("u", "v")
              for item in dados[f"iterados_{nome}"]]
    tabela = pd.DataFrame(linhas, columns=["serie", "j", "norma_sup", "expoente_min",
                                           "expoente_max", "termos"])
    return dados, tabela, aprovado


def _executar_homotopy(cfg: ConfigExecucao, V: PotencialFourier):
    relatorio = varredura_homotopia(V, cfg.n, cfg.passos or 11, cfg.tol, cfg.integrador())
    dados = {
        "aprovado": relatorio.aprovado,
        "desvio_max": relatorio.desvio_max,
        "referencia_re": relatorio.referencia.real,
        "referencia_im": relatorio.referencia.imag,
        "tol": relatorio.tolerancia,
        "valores": relatorio.tabela.to_dict(orient="records"),
    }
    return dados, relatorio.tabela, relatorio.aprovado


def _executar_eigs(cfg: ConfigExecucao, V: PotencialFourier):
    resultados = autovalores_periodicos(V, cfg.contagem, cfg.tol, cfg.integrador())
    linhas = [{"semente": r.semente, "re_z": r.z.real, "im_z": r.z.imag,
               "residuo": r.residuo, "convergiu": bool(r.convergiu)} for r in resultados]
    tabela = pd.DataFrame(linhas, columns=["semente", "re_z", "im_z", "residuo", "convergiu"])
    dados: Dict[str, Any] = {"autovalores": linhas}
    if cfg.oraculo is not None:
        oraculo = autovalores_hill_truncado(V, cfg.oraculo, "periodico")[:cfg.contagem]
        dados["oraculo"] = [{"re": v.real, "im": v.imag} for v in oraculo]
    return dados, tabela, all(r.convergiu for r in resultados)


EXECUTORES = {
    "disc": _executar_disc,
    "grid": _executar_grid,
    "verify-gasymov": _executar_verify,
    "bands": _executar_bands,
    "arcs": _executar_arcs,
    "picard": _executar_picard,
    "homotopy": _executar_homotopy,
    "eigs": _executar_eigs,
}


def executar(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa a linha de comando.

    Args:
        argv (Sequence[str], optional): Argumentos (padrão: sys.argv[1:])

    Returns:
        int: Código de saída (0 sucesso, 1 reprovação, 2 erro de uso/leitura)
    """
    parser = criar_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2

    valores = vars(args)
    valores["formato"] = valores["formato"] or FORMATO_PADRAO[args.subcomando]
    valores["tol"] = valores["tol"] if valores["tol"] is not None else TOLERANCIA_PADRAO[args.subcomando]
    try:
        cfg = ConfigExecucao(**valores)
    except ValidationError as e:
        logger.error(f"Configuração inválida: {e}")
        print(f"erro: configuração inválida: {e}", file=sys.stderr)
        return 2

    try:
        V = carregar_potencial(cfg.potencial)
    except (OSError, ErroPotencial) as e:
        logger.error(f"Não foi possível ler o potencial: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return 2

    try:
        dados, tabela, aprovado = EXECUTORES[cfg.subcomando](cfg, V)
    except ValidationError as e:
        logger.error(f"Parâmetros inválidos para {cfg.subcomando}: {e}")
        print(f"erro: parâmetros inválidos: {e}", file=sys.stderr)
        return 2
    except ErroClasseGasymov as e:
        logger.error(f"Entrada rejeitada: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return 2
    except ErroHill as e:
        logger.error(f"Falha numérica em {cfg.subcomando}: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return 1

    meta = criar_meta(cfg.subcomando, cfg.para_meta())
    try:
        if cfg.formato == "csv":
            escrever_csv(tabela, cfg.saida, meta)
        else:
            escrever_json(dados, cfg.saida, meta)
    except OSError as e:
        logger.error(f"Erro ao escrever o relatório: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return 2

    if not aprovado:
        logger.warning(f"{cfg.subcomando}: verificação reprovada")
        return 1
    return 0


def main():
    """Ponto de entrada do console."""
    logging.basicConfig(
        level=obter_nivel_log(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True,
    )
    sys.exit(executar())


if __name__ == "__main__":
    main()
