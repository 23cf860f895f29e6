"""
Axiomas de CSF como predicados numéricos amostráveis.

Cada predicado recebe uma especificação e uma Testemunha e devolve uma
Comparacao (lhs, rhs, relação). O veredito de um axioma é o primeiro caso
violado na ordem canônica do plano, ou HoldsOnSamples se nenhum violar.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .amostragem import PRECISA_TRES, Comparacao, PlanoAmostragem, Testemunha, casos, casos_do_perfil
from .csf import (Backend, avaliar, checar_backend, converter, decompor_dois_niveis, desvio,
                  impactos, indices_da_mascara, mascara_completa, soma_sorte)
from .exceptions import (AxiomaInaplicavel, DenominadorDegenerado, DesvioIndefinido, ForaDoDominio,
                         PreCondicaoFalhou)

logger = logging.getLogger(__name__)

# queda relativa mínima de p_j para DEC exigir desigualdade estrita em float64
QUEDA_VISIVEL = 1e-9


class AxiomaId(str, Enum):
    SM = 'SM'
    LCA = 'LCA'
    HOM = 'HOM'
    RH = 'RH'
    HRE = 'HRE'
    ANY = 'ANY'
    NAR = 'NAR'
    DC = 'DC'
    CRI = 'CRI'
    SP = 'SP'
    CP = 'CP'
    PA = 'PA'
    DI = 'DI'

    @property
    def descricao(self):
        return DESCRICOES[self.value]


DESCRICOES = {
    'SM': "Monotonicidade estrita: p_i cresce estritamente no próprio esforço enquanto p_i < 1",
    'LCA': "Axioma de escolha de Luce: p_i^N(x) = p_i^M(x^M) p_M^N(x)",
    'HOM': "Homogeneidade: p_i^N(lambda x) = p_i^N(x)",
    'RH': "Homogeneidade relativa: p_i/p_j invariante à escala para x_i, x_j > 0",
    'HRE': "Externalidade relativa homogênea: d_ij/d_ji invariante à escala para x_i, x_j > 0",
    'ANY': "Anonimato: trocar esforços de i e j troca as probabilidades",
    'NAR': "Sem realocação vantajosa: redistribuir x_i + x_j não muda p_k",
    'DC': "Consistência de inativos: x_i = 0 implica p_j^N = p_j^{N sem i}",
    'CRI': "Independência de Clark-Riis: p_i(0, x_-j) = p_i(x) / [1 - p_j(x)]",
    'SP': "À prova de divisão: p_i + p_j <= p_i^{N sem j}(x_i + x_j, ...)",
    'CP': "À prova de conluio: p_i + p_j >= p_i^{N sem j}(x_i + x_j, ...)",
    'PA': "Alocação parcial: soma mu + mu_null = 1 e mu_null > 0",
    'DI': "Independência do empate: mu_i / (1 - soma_{j != i} mu_j) depende só de x_i",
    'DEC': "p_j decresce nos esforços dos oponentes, estritamente quando p_j > 0",
}

# Axiomas aplicados à Decomposicao em dois níveis
SOBRE_DECOMPOSICAO = frozenset({'PA', 'DI'})

PULAVEIS = (PreCondicaoFalhou, DenominadorDegenerado, DesvioIndefinido, ForaDoDominio,
            ZeroDivisionError, OverflowError)


class Status(str, Enum):
    VALIDO = 'HoldsOnSamples'
    VIOLADO = 'Violated'
    INAPLICAVEL = 'Inapplicable'


@dataclass(frozen=True)
class VeredictoAxioma:
    axioma: str
    status: Status
    testemunha: Optional[Testemunha] = None
    comparacao: Optional[Comparacao] = None
    amostras: int = 0
    puladas: int = 0
    familia: str = ''
    tolerancia: object = 0

    @property
    def violado(self):
        return self.status is Status.VIOLADO

    @property
    def valido(self):
        return self.status is Status.VALIDO


def codigo_de(axioma):
    return axioma.value if isinstance(axioma, AxiomaId) else str(axioma)


def _com(x, i, valor):
    vetor = list(x)
    vetor[i] = valor
    return tuple(vetor)


def _escalado(x, lam):
    return tuple(lam * valor for valor in x)


def _soma(valores):
    valores = list(valores)
    if valores and isinstance(valores[0], Fraction):
        return sum(valores, Fraction(0))
    return math.fsum(valores)


def _resto(p, i):
    """1 - p_i calculado como a soma dos demais, sem cancelamento"""
    return _soma(valor for posicao, valor in enumerate(p) if posicao != i)


def _sem(n, i):
    return mascara_completa(n) & ~(1 << i)


def _positivos(x, *indices):
    if any(x[k] <= 0 for k in indices):
        raise PreCondicaoFalhou("Pré-condição x_i, x_j > 0")


def _sm(spec, t, backend, tol):
    if not t.novo_valor > t.x[t.i]:
        raise PreCondicaoFalhou("SM exige x_i' > x_i")
    p = avaliar(spec, t.x, backend=backend)
    if _resto(p, t.i) <= tol:
        raise PreCondicaoFalhou("p_i = 1")
    q = avaliar(spec, _com(t.x, t.i, t.novo_valor), backend=backend)
    return Comparacao(p[t.i], q[t.i], '<')


def _lca(spec, t, backend, tol):
    indices = indices_da_mascara(t.mascara)
    p = avaliar(spec, t.x, backend=backend)
    sub = avaliar(spec, t.x, t.mascara, backend)
    massa = _soma(p[k] for k in indices)
    return Comparacao(p[t.i], sub[indices.index(t.i)] * massa)


def _hom(spec, t, backend, tol):
    p = avaliar(spec, t.x, backend=backend)
    q = avaliar(spec, _escalado(t.x, t.lam), backend=backend)
    return Comparacao(p[t.i], q[t.i])


def _rh(spec, t, backend, tol):
    _positivos(t.x, t.i, t.j)
    p = avaliar(spec, t.x, backend=backend)
    q = avaliar(spec, _escalado(t.x, t.lam), backend=backend)
    if p[t.j] == 0 or q[t.j] == 0:
        raise PreCondicaoFalhou("p_j = 0")
    return Comparacao(p[t.i] / p[t.j], q[t.i] / q[t.j])


def _razao_desvios(spec, i, j, x, backend):
    d_ji = desvio(spec, j, i, x, backend)
    if d_ji == 0:
        raise DesvioIndefinido("d_ji = 0")
    return desvio(spec, i, j, x, backend) / d_ji


def _hre(spec, t, backend, tol):
    _positivos(t.x, t.i, t.j)
    return Comparacao(_razao_desvios(spec, t.i, t.j, t.x, backend),
                      _razao_desvios(spec, t.i, t.j, _escalado(t.x, t.lam), backend))


def _any(spec, t, backend, tol):
    trocado = list(t.x)
    trocado[t.i], trocado[t.j] = t.x[t.j], t.x[t.i]
    p = avaliar(spec, t.x, backend=backend)
    q = list(avaliar(spec, trocado, backend=backend))
    q[t.i], q[t.j] = q[t.j], q[t.i]
    pior = max(range(len(p)), key=lambda k: abs(p[k] - q[k]))
    return Comparacao(p[pior], q[pior])


def _nar(spec, t, backend, tol):
    if t.k in (t.i, t.j):
        raise PreCondicaoFalhou("k deve estar fora de {i, j}")
    soma = t.x[t.i] + t.x[t.j]
    restante = soma - t.novo_valor
    if t.novo_valor < 0 or restante < 0:
        raise PreCondicaoFalhou("Realocação com esforço negativo")
    realocado = _com(_com(t.x, t.i, t.novo_valor), t.j, restante)
    p = avaliar(spec, t.x, backend=backend)
    q = avaliar(spec, realocado, backend=backend)
    return Comparacao(p[t.k], q[t.k])


def _dc(spec, t, backend, tol):
    if t.x[t.i] != 0:
        raise PreCondicaoFalhou("DC exige x_i = 0")
    mascara = _sem(spec.n, t.i)
    p = avaliar(spec, t.x, backend=backend)
    sub = avaliar(spec, t.x, mascara, backend)
    return Comparacao(p[t.j], sub[indices_da_mascara(mascara).index(t.j)])


def _cri(spec, t, backend, tol):
    p = avaliar(spec, t.x, backend=backend)
    resto = _resto(p, t.j)
    if resto == 0:
        raise PreCondicaoFalhou("p_j = 1")
    zerado = avaliar(spec, _com(t.x, t.j, converter(0, backend)), backend=backend)
    return Comparacao(zerado[t.i], p[t.i] / resto)


def _fusao(spec, t, backend):
    p = avaliar(spec, t.x, backend=backend)
    mascara = _sem(spec.n, t.j)
    fundido = _com(t.x, t.i, t.x[t.i] + t.x[t.j])
    sub = avaliar(spec, fundido, mascara, backend)
    return p[t.i] + p[t.j], sub[indices_da_mascara(mascara).index(t.i)]


def _sp(spec, t, backend, tol):
    separado, fundido = _fusao(spec, t, backend)
    return Comparacao(separado, fundido, '<=')


def _cp(spec, t, backend, tol):
    separado, fundido = _fusao(spec, t, backend)
    return Comparacao(separado, fundido, '>=')


def _exigir_sorte(spec, backend):
    if soma_sorte(spec, backend) == 0:
        raise AxiomaInaplicavel("mu_null é identicamente zero em família sem sorte")


def _ativo(x):
    if not any(valor > 0 for valor in x):
        raise PreCondicaoFalhou("Perfil sem esforço positivo")


def _pa(spec, t, backend, tol):
    _exigir_sorte(spec, backend)
    _ativo(t.x)
    decomposicao = decompor_dois_niveis(spec, t.x, backend)
    if not decomposicao.mu_null > 0:
        return Comparacao(decomposicao.mu_null, converter(0, backend), '>')
    return Comparacao(_soma([*decomposicao.mu, decomposicao.mu_null]), converter(1, backend))


def _razao_empate(spec, x, i, backend):
    _ativo(x)
    decomposicao = decompor_dois_niveis(spec, x, backend)
    restante = decomposicao.mu[i] + decomposicao.mu_null
    if restante == 0:
        raise PreCondicaoFalhou("1 - soma_{j != i} mu_j = 0")
    return decomposicao.mu[i] / restante


def _di(spec, t, backend, tol):
    _exigir_sorte(spec, backend)
    alternativo = _com(t.x_alt, t.i, t.x[t.i])
    return Comparacao(_razao_empate(spec, t.x, t.i, backend),
                      _razao_empate(spec, alternativo, t.i, backend))


def _dec(spec, t, backend, tol):
    if not t.novo_valor > t.x[t.i]:
        raise PreCondicaoFalhou("DEC exige x_i' > x_i")
    novo = _com(t.x, t.i, t.novo_valor)
    antes = avaliar(spec, t.x, backend=backend)[t.j]
    depois = avaliar(spec, novo, backend=backend)[t.j]
    if backend is Backend.RACIONAL:
        estrito = antes > 0
    else:
        # em float64, estrito só quando a queda relativa de p_j fica acima do arredondamento
        ganho = spec.impacto(t.i, t.novo_valor) - spec.impacto(t.i, t.x[t.i])
        queda = ganho / math.fsum(impactos(spec, novo))
        estrito = antes > np.finfo(float).tiny and queda > QUEDA_VISIVEL
    return Comparacao(depois, antes, '<' if estrito else '<=')


PREDICADOS = {
    'SM': _sm,
    'LCA': _lca,
    'HOM': _hom,
    'RH': _rh,
    'HRE': _hre,
    'ANY': _any,
    'NAR': _nar,
    'DC': _dc,
    'CRI': _cri,
    'SP': _sp,
    'CP': _cp,
    'PA': _pa,
    'DI': _di,
    'DEC': _dec,
}


def avaliar_predicado(spec, axioma, testemunha, backend=Backend.FLOAT64, tolerancia=0):
    """Reavalia um único caso (usado para replay de testemunhas)"""
    codigo = codigo_de(axioma)
    if codigo in PRECISA_TRES and spec.n < 3:
        raise PreCondicaoFalhou(f"{codigo} exige n >= 3")
    return PREDICADOS[codigo](spec, testemunha, backend, tolerancia)


def verificar_axioma(spec, axioma, plano=None, backend=Backend.FLOAT64):
    """
    Veredito de um axioma sobre a especificação, amostrando pelo plano.
    Deterministico para semente fixa; casos que não se aplicam contam como pulados.
    """
    codigo = codigo_de(axioma)
    if codigo not in PREDICADOS:
        raise ValueError(f"Axioma desconhecido: {codigo}")
    plano = plano or PlanoAmostragem.do_settings()
    checar_backend(spec, backend)
    tolerancia = plano.tolerancia_para(spec, backend)
    familia = spec.resumo()

    if codigo in SOBRE_DECOMPOSICAO and soma_sorte(spec) == 0:
        logger.debug("%s inaplicável em %s: família sem sorte", codigo, familia)
        return VeredictoAxioma(codigo, Status.INAPLICAVEL, familia=familia, tolerancia=tolerancia)
    if codigo in PRECISA_TRES and spec.n < 3:
        return VeredictoAxioma(codigo, Status.INAPLICAVEL, puladas=plano.perfis,
                               familia=familia, tolerancia=tolerancia)

    # pré-condições por reamostragem: até plano.perfis sorteios extras repõem os pulados
    fluxo = casos(codigo, spec.n, plano, backend, reserva=plano.perfis)
    return _percorrer(spec, codigo, fluxo, backend, tolerancia, meta=plano.perfis)


def _percorrer(spec, codigo, fluxo, backend, tolerancia, meta=None):
    """
    Primeiro caso violado do fluxo, contando amostras executadas e puladas.
    Com `meta`, para assim que meta predicados tiverem sido executados.
    """
    familia = spec.resumo()
    predicado = PREDICADOS[codigo]
    executadas = puladas = 0
    for caso in fluxo:
        if caso is None:
            puladas += 1
            continue
        try:
            comparacao = predicado(spec, caso, backend, tolerancia)
        except PULAVEIS:
            puladas += 1
            continue
        executadas += 1
        if comparacao.viola(tolerancia):
            logger.debug("%s violado em %s: %s", codigo, familia, caso)
            return VeredictoAxioma(codigo, Status.VIOLADO, caso, comparacao, executadas, puladas,
                                   familia, tolerancia)
        if meta is not None and executadas >= meta:
            break

    status = Status.VALIDO if executadas else Status.INAPLICAVEL
    logger.debug("%s em %s: %s (%d amostras, %d puladas)", codigo, familia, status.value,
                 executadas, puladas)
    return VeredictoAxioma(codigo, status, amostras=executadas, puladas=puladas, familia=familia,
                           tolerancia=tolerancia)


def verificar_no_perfil(spec, axioma, x, plano=None, backend=Backend.FLOAT64, lambdas=None):
    """Veredito restrito aos casos determinísticos de um único perfil"""
    codigo = codigo_de(axioma)
    if codigo not in PREDICADOS:
        raise ValueError(f"Axioma desconhecido: {codigo}")
    plano = plano or PlanoAmostragem.do_settings()
    checar_backend(spec, backend)
    tolerancia = plano.tolerancia_para(spec, backend)
    if codigo in SOBRE_DECOMPOSICAO and soma_sorte(spec) == 0:
        return VeredictoAxioma(codigo, Status.INAPLICAVEL, familia=spec.resumo(), tolerancia=tolerancia)
    vetor = tuple(converter(valor, backend) for valor in x)
    return _percorrer(spec, codigo, casos_do_perfil(codigo, vetor, backend, lambdas), backend, tolerancia)


def verificar_todos(spec, plano=None, backend=Backend.FLOAT64, axiomas=None):
    axiomas = axiomas or list(AxiomaId)
    return [verificar_axioma(spec, axioma, plano, backend) for axioma in axiomas]
