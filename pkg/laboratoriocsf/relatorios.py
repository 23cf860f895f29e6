"""
Linhas de relatório (CSV estável) e a versão em texto para o terminal.

Colunas: command, family, axiom_or_metric, status, witness, lhs, rhs, gap, seed.
Racionais saem como "p/q"; floats no CSV usam repr (menor decimal que volta
ao mesmo float), no texto usam 6 algarismos significativos.
"""
import csv
import hashlib
import io
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

COLUNAS = ('command', 'family', 'axiom_or_metric', 'status', 'witness', 'lhs', 'rhs', 'gap', 'seed')


def formatar_numero(valor, texto=False):
    if valor is None:
        return ''
    if isinstance(valor, bool):
        return 'true' if valor else 'false'
    if isinstance(valor, Fraction):
        return str(valor)
    if isinstance(valor, (int, np.integer)):
        return str(int(valor))
    if texto:
        return f"{float(valor):.6g}"
    return repr(float(valor))


def formatar_vetor(valores, texto=True):
    return ', '.join(formatar_numero(valor, texto) for valor in valores)


def _json_padrao(valor):
    if isinstance(valor, Fraction):
        return str(valor)
    if isinstance(valor, np.integer):
        return int(valor)
    if isinstance(valor, np.floating):
        return float(valor)
    raise TypeError(f"Tipo não serializável: {type(valor).__name__}")


def testemunha_json(dados):
    if not dados:
        return ''
    return json.dumps(dados, sort_keys=True, separators=(',', ':'), default=_json_padrao)


@dataclass(frozen=True)
class LinhaRelatorio:
    comando: str
    familia: str
    metrica: str
    status: str
    testemunha: dict = None
    lhs: object = None
    rhs: object = None
    lacuna: object = None
    semente: object = None

    def valores(self):
        return [
            self.comando,
            self.familia,
            self.metrica,
            self.status,
            testemunha_json(self.testemunha),
            formatar_numero(self.lhs),
            formatar_numero(self.rhs),
            formatar_numero(self.lacuna),
            '' if self.semente is None else str(self.semente),
        ]

    def como_texto(self):
        partes = [f"[{self.comando}] {self.metrica}: {self.status}"]
        if self.lhs is not None or self.rhs is not None:
            lados = f"lhs={formatar_numero(self.lhs, True)}"
            if self.rhs is not None:
                lados += f" rhs={formatar_numero(self.rhs, True)}"
            partes.append(lados)
        if self.lacuna is not None:
            partes.append(f"gap={formatar_numero(self.lacuna, True)}")
        if self.testemunha:
            partes.append(f"witness={testemunha_json(self.testemunha)}")
        return '  '.join(partes)


def csv_texto(linhas):
    saida = io.StringIO()
    escritor = csv.writer(saida, lineterminator='\n')
    escritor.writerow(COLUNAS)
    for linha in linhas:
        escritor.writerow(linha.valores())
    return saida.getvalue()


def texto(linhas, cabecalho=None):
    blocos = [cabecalho] if cabecalho else []
    familias = []
    for linha in linhas:
        if linha.familia not in familias:
            familias.append(linha.familia)
    for familia in familias:
        blocos.append(familia)
        blocos.extend(f"  {linha.como_texto()}" for linha in linhas if linha.familia == familia)
    return '\n'.join(blocos) + '\n'


def resumo_sha256(conteudo):
    return hashlib.sha256(conteudo.encode('utf-8')).hexdigest()


# Construtores de linhas

def linha_veredito(comando, veredito, semente=None):
    comparacao = veredito.comparacao
    testemunha = veredito.testemunha.como_dict() if veredito.testemunha else {}
    testemunha.update(samples=veredito.amostras, skipped=veredito.puladas)
    return LinhaRelatorio(
        comando=comando,
        familia=veredito.familia,
        metrica=veredito.axioma,
        status=veredito.status.value,
        testemunha=testemunha,
        lhs=comparacao.lhs if comparacao else None,
        rhs=comparacao.rhs if comparacao else None,
        lacuna=comparacao.lacuna if comparacao else None,
        semente=semente,
    )


def linha_plano(comando, familia, plano):
    """Parâmetros do plano de amostragem (faixas, prob. de zero, lambdas) numa linha"""
    return LinhaRelatorio(comando, familia, 'plan', 'OK', plano.descricao(), semente=plano.semente)


def linha_contraexemplo(comando, axioma, familia, contraexemplo, semente=None):
    if contraexemplo is None:
        return LinhaRelatorio(comando, familia, axioma, 'NoCounterexample', semente=semente)
    testemunha = contraexemplo.testemunha.como_dict()
    testemunha['shrunk'] = contraexemplo.encolhido
    return LinhaRelatorio(comando, familia, axioma, 'Counterexample', testemunha,
                          contraexemplo.lhs, contraexemplo.rhs, contraexemplo.lacuna, semente)


def linhas_avaliacao(familia, probabilidades, rotulo=str):
    return [LinhaRelatorio('eval', familia, f"p_{rotulo(i)}", 'OK', lhs=p)
            for i, p in enumerate(probabilidades)]


def linhas_decomposicao(familia, decomposicao, rotulo=str):
    linhas = [LinhaRelatorio('decompose', familia, f"mu_{rotulo(i)}", 'OK', lhs=mu)
              for i, mu in enumerate(decomposicao.mu)]
    linhas.append(LinhaRelatorio('decompose', familia, 'mu_null', 'OK', lhs=decomposicao.mu_null))
    if decomposicao.alfa is not None:
        linhas.extend(LinhaRelatorio('decompose', familia, f"alpha_{rotulo(i)}", 'OK', lhs=alfa)
                      for i, alfa in enumerate(decomposicao.alfa))
    linhas.append(LinhaRelatorio('decompose', familia, 'total', 'OK', lhs=decomposicao.total, rhs=1))
    return linhas


def linhas_equilibrio(familia, resultado, rotulo=str):
    status = 'Converged' if resultado.convergiu else (resultado.motivo or 'NoConvergence')
    detalhes = {
        'iterations': resultado.iteracoes,
        'existence_warning': resultado.aviso_existencia,
        'verified': resultado.verificado,
        'corners': [i for i, canto in enumerate(resultado.cantos) if canto],
    }
    linhas = [LinhaRelatorio('equilibrium', familia, 'status', status, detalhes,
                             lhs=resultado.ganho_maximo)]
    for i, (esforco, payoff) in enumerate(zip(resultado.x_star, resultado.payoffs)):
        linhas.append(LinhaRelatorio('equilibrium', familia, f"x_{rotulo(i)}", status, lhs=esforco))
        linhas.append(LinhaRelatorio('equilibrium', familia, f"payoff_{rotulo(i)}", status, lhs=payoff))
    return linhas


def linhas_estatica(familia, tabela):
    linhas = []
    for linha in tabela.linhas:
        status = 'Converged' if linha.convergiu else 'NoConvergence'
        lacuna = None if linha.fechado is None else abs(linha.soma - linha.fechado)
        linhas.append(LinhaRelatorio('sweep', familia, 'sum_x', status, {'b': linha.b, 'x': list(linha.x_star)},
                                     linha.soma, linha.fechado, lacuna))
    linhas.append(LinhaRelatorio('sweep', familia, 'monotone', 'true' if tabela.monotona else 'false'))
    return linhas
