"""
Critérios de aceitação do laboratório como uma suíte executável que emite
linhas de relatório (status PASS ou FAIL), determinística para semente fixa.
"""
import logging
import math

from .amostragem import Amostrador, PlanoAmostragem
from .axiomas import Status, verificar_axioma
from .catalogo import catalogo, parametrizacoes_aleatorias
from .csf import SorteSimetrica, Tullock, decompor_dois_niveis, desvio, formas_blavatskyy
from .equilibrio import (ConfigEquilibrio, JogoConcurso, estatica_comparativa_b, oraculo_grade_dois,
                         resolver_nash)
from .exceptions import DenominadorDegenerado, DesvioIndefinido
from .falsificador import falsificar, reproduzir_exemplos
from .implicacoes import fronteira_padrao, padrao_esperado, suite_implicacoes
from .relatorios import LinhaRelatorio, csv_texto, resumo_sha256

logger = logging.getLogger(__name__)

COMANDO = 'acceptance'
PERFIS_DECOMPOSICAO = 50
SOMAS_ESPERADAS = ((0, 0.5), (0.1, 0.3), (0.2, 0.1), (0.3, 0.0))


def _status(ok):
    return 'PASS' if ok else 'FAIL'


def _relativo(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def criterio_exemplos():
    relatorio = reproduzir_exemplos()
    return [LinhaRelatorio(COMANDO, 'luck_tullock(a=[1, 1, 1], b=[1, 1, 1], r=1)', f"C1:{exemplo.nome}",
                           _status(exemplo.passou), {'x': [2, 1, 0], 'lam': 2},
                           exemplo.obtido[0], exemplo.obtido[1])
            for exemplo in relatorio.exemplos]


def criterio_teorema(plano):
    linhas = []
    for spec in parametrizacoes_aleatorias(plano.semente, faixa_n=plano.faixa_n):
        for axioma in ('SM', 'LCA', 'HRE'):
            veredito = verificar_axioma(spec, axioma, plano)
            ok = veredito.status is Status.VALIDO and veredito.amostras >= plano.perfis
            linhas.append(LinhaRelatorio(COMANDO, spec.resumo(), f"C2:{axioma}", _status(ok),
                                         {'samples': veredito.amostras, 'skipped': veredito.puladas},
                                         semente=plano.semente))
    return linhas


def criterio_matriz(plano):
    linhas = []
    for item in catalogo():
        for axioma, vale in item.esperados.items():
            if vale:
                veredito = verificar_axioma(item.spec, axioma, plano)
                ok = veredito.status is Status.VALIDO
                linhas.append(LinhaRelatorio(COMANDO, item.spec.resumo(), f"C3:{axioma}:holds", _status(ok),
                                             semente=plano.semente))
                continue
            contraexemplo = falsificar(item.spec, axioma, plano)
            ok = contraexemplo is not None and contraexemplo.reproduzir().viola(contraexemplo.tolerancia)
            testemunha = contraexemplo.testemunha.como_dict() if contraexemplo else None
            linhas.append(LinhaRelatorio(COMANDO, item.spec.resumo(), f"C3:{axioma}:violated", _status(ok),
                                         testemunha,
                                         contraexemplo.lhs if contraexemplo else None,
                                         contraexemplo.rhs if contraexemplo else None,
                                         contraexemplo.lacuna if contraexemplo else None,
                                         plano.semente))
    return linhas


def criterio_fronteira(plano):
    linhas = []
    for fronteira in fronteira_padrao(plano):
        esperado = padrao_esperado(fronteira.r, fronteira.b)
        obtidos = {'SP': fronteira.sp.status is Status.VALIDO, 'CP': fronteira.cp.status is Status.VALIDO}
        for axioma in ('SP', 'CP'):
            if esperado[axioma] is None:
                continue
            ok = obtidos[axioma] == esperado[axioma] and fronteira.concorda
            linhas.append(LinhaRelatorio(COMANDO, SorteSimetrica(3, fronteira.b, fronteira.r).resumo(),
                                         f"C4:{axioma}", _status(ok),
                                         {'compared': fronteira.comparadas,
                                          'disagreements': fronteira.discordancias},
                                         semente=plano.semente))
    return linhas


def criterio_implicacoes(plano):
    relatorio = suite_implicacoes(plano)
    return [LinhaRelatorio(COMANDO, checagem.familia, f"C5:{checagem.codigo}", _status(checagem.ok),
                           {'applicable': checagem.aplicavel, 'detail': checagem.detalhe} if checagem.detalhe
                           else {'applicable': checagem.aplicavel},
                           semente=plano.semente)
            for checagem in relatorio.checagens]


def _identidades(spec, x):
    """Maiores desvios das identidades da decomposição num perfil"""
    decomposicao = decompor_dois_niveis(spec, x)
    soma = abs(math.fsum([*decomposicao.mu, decomposicao.mu_null]) - 1)
    desvios = 0.0
    for i in range(spec.n):
        for j in range(spec.n):
            if i == j:
                continue
            try:
                desvios = max(desvios, _relativo(decomposicao.mu[i], desvio(spec, i, j, x)))
            except (DesvioIndefinido, DenominadorDegenerado):
                continue
    formas = formas_blavatskyy(spec, x)
    fechadas = max(_relativo(a, b) for a, b in zip((*decomposicao.mu, decomposicao.mu_null),
                                                   (*formas.mu, formas.mu_null)))
    return soma, desvios, fechadas


def criterio_decomposicao(plano):
    linhas = []
    for spec in parametrizacoes_aleatorias(plano.semente, faixa_n=plano.faixa_n):
        amostrador = Amostrador(plano, 'PA', spec.n)
        soma = desvios = fechadas = 0.0
        for _ in range(PERFIS_DECOMPOSICAO):
            s, d, f = _identidades(spec, amostrador.perfil())
            soma, desvios, fechadas = max(soma, s), max(desvios, d), max(fechadas, f)
        ok = soma <= 1e-12 and desvios <= 1e-9 and fechadas <= 1e-9
        linhas.append(LinhaRelatorio(COMANDO, spec.resumo(), 'C6:identities', _status(ok),
                                     {'sum': soma, 'deviation': desvios, 'closed_form': fechadas},
                                     semente=plano.semente))
        for axioma in ('PA', 'DI'):
            veredito = verificar_axioma(spec, axioma, plano)
            linhas.append(LinhaRelatorio(COMANDO, spec.resumo(), f"C6:{axioma}",
                                         _status(veredito.status is Status.VALIDO), semente=plano.semente))
    return linhas


def criterio_equilibrio(config=None):
    config = config or ConfigEquilibrio.do_settings()
    jogo = JogoConcurso(Tullock((1, 1)), (1, 1))
    resultado = resolver_nash(jogo, config)
    oraculo = oraculo_grade_dois(jogo)
    distancia = max(abs(a - b) for a, b in zip(resultado.x_star, oraculo))
    alvo = max(abs(a - 0.25) for a in resultado.x_star)
    linhas = [LinhaRelatorio(COMANDO, jogo.spec.resumo(), 'C7:oracle',
                             _status(resultado.convergiu and distancia <= 1e-3 and alvo <= 1e-3),
                             {'oracle': list(oraculo)}, resultado.x_star[0], oraculo[0], distancia)]

    tabela = estatica_comparativa_b(2, 1, 1.0, [b for b, _ in SOMAS_ESPERADAS], config)
    for linha, (b, esperado) in zip(tabela.linhas, SOMAS_ESPERADAS):
        ok = linha.convergiu and abs(linha.soma - esperado) <= 1e-3
        linhas.append(LinhaRelatorio(COMANDO, SorteSimetrica(2, b, 1).resumo(), 'C7:sum_x', _status(ok),
                                     {'b': b}, linha.soma, esperado, abs(linha.soma - esperado)))
    linhas.append(LinhaRelatorio(COMANDO, 'symmetric_luck(n=2, r=1)', 'C7:monotone', _status(tabela.monotona)))
    return linhas


CRITERIOS = {
    1: lambda plano, config: criterio_exemplos(),
    2: lambda plano, config: criterio_teorema(plano),
    3: lambda plano, config: criterio_matriz(plano),
    4: lambda plano, config: criterio_fronteira(plano),
    5: lambda plano, config: criterio_implicacoes(plano),
    6: lambda plano, config: criterio_decomposicao(plano),
    7: lambda plano, config: criterio_equilibrio(config),
}


def executar_aceitacao(plano=None, config=None, criterios=None):
    plano = plano or PlanoAmostragem.do_settings()
    linhas = []
    for numero in criterios or sorted(CRITERIOS):
        logger.info("Critério %d", numero)
        linhas.extend(CRITERIOS[numero](plano, config))
    return linhas


def verificar_determinismo(plano=None, config=None, criterios=None):
    """Roda a suíte duas vezes e compara o SHA-256 dos CSVs"""
    primeiro = resumo_sha256(csv_texto(executar_aceitacao(plano, config, criterios)))
    segundo = resumo_sha256(csv_texto(executar_aceitacao(plano, config, criterios)))
    return LinhaRelatorio(COMANDO, 'suite', 'C8:determinism', _status(primeiro == segundo),
                          {'sha256': primeiro}, semente=(plano or PlanoAmostragem.do_settings()).semente)


def aprovado(linhas):
    return all(linha.status == 'PASS' for linha in linhas)
