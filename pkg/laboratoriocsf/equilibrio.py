"""
Equilíbrio de Nash em estratégias puras do jogo de concurso
u_i(x) = v_i p_i(x) - x_i (custo linear unitário, neutralidade ao risco).

Melhor resposta: varredura em grade sobre [0, v_i] seguida de seção áurea no
intervalo em torno do melhor ponto, com auditoria dos extremos. Sem derivadas,
então r < 1 não sofre com r x^(r-1) em zero.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from . import conf
from .csf import SorteSimetrica
from .validators import validar_vetor_positivo

logger = logging.getLogger(__name__)


PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class ConfigEquilibrio:
    amortecimento: float = 0.5
    max_iteracoes: int = 10000
    tolerancia: float = 1e-8
    pontos_grade: int = 1000
    pontos_auditoria: int = 1000
    tolerancia_auditoria: float = 1e-6
    tolerancia_resposta: float = 1e-10

    def __post_init__(self):
        if not 0 < self.amortecimento <= 1:
            raise ValidationError("Amortecimento deve estar em (0, 1]")
        if self.max_iteracoes < 1 or self.pontos_grade < 3 or self.pontos_auditoria < 2:
            raise ValidationError("Configuração de equilíbrio inválida")

    @classmethod
    def do_settings(cls, **ajustes):
        valores = {
            'amortecimento': conf.obter('EQUILIBRIO', 'AMORTECIMENTO'),
            'max_iteracoes': conf.obter('EQUILIBRIO', 'MAX_ITERACOES'),
            'tolerancia': conf.obter('EQUILIBRIO', 'TOLERANCIA'),
            'pontos_grade': conf.obter('EQUILIBRIO', 'PONTOS_GRADE'),
            'pontos_auditoria': conf.obter('EQUILIBRIO', 'PONTOS_AUDITORIA'),
            'tolerancia_auditoria': conf.obter('EQUILIBRIO', 'TOLERANCIA_AUDITORIA'),
        }
        valores.update({chave: valor for chave, valor in ajustes.items() if valor is not None})
        return cls(**valores)


@dataclass(frozen=True)
class JogoConcurso:
    spec: object
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, 'v', tuple(float(valor) for valor in self.v))
        if len(self.v) != self.spec.n:
            raise ValidationError("Deve haver um valor de prêmio por competidor")
        ok, mensagem = validar_vetor_positivo(self.v, 'v')
        if not ok:
            raise ValidationError(mensagem)

    @property
    def n(self):
        return self.spec.n

    @property
    def r(self):
        return getattr(self.spec, 'r', None)

    def impacto_oponentes(self, i, x):
        return math.fsum(self.spec.impacto(j, float(x[j])) for j in range(self.n) if j != i)

    def payoff(self, i, x):
        f_i = self.spec.impacto(i, float(x[i]))
        total = f_i + self.impacto_oponentes(i, x)
        p_i = f_i / total if total > 0 else 1 / self.n
        return self.v[i] * p_i - float(x[i])

    def payoffs(self, x):
        return tuple(self.payoff(i, x) for i in range(self.n))

    def _payoff_grade(self, i, xs, resto):
        f_i = self.spec.impacto_vetorizado(i, xs)
        total = f_i + resto
        with np.errstate(divide='ignore', invalid='ignore'):
            p_i = np.where(total > 0, f_i / total, 1 / self.n)
        return self.v[i] * p_i - xs


@dataclass(frozen=True)
class ResultadoEquilibrio:
    x_star: tuple
    payoffs: tuple
    convergiu: bool
    iteracoes: int
    cantos: tuple
    aviso_existencia: bool
    verificado: bool = False
    ganho_maximo: float = 0.0
    motivo: str = ''

    @property
    def soma(self):
        return math.fsum(self.x_star)


def secao_aurea(funcao, a, b, tolerancia=1e-10):
    """Maximiza funcao em [a, b] sem derivadas; devolve (x, funcao(x))"""
    c = b - (b - a) / PHI
    d = a + (b - a) / PHI
    fc, fd = funcao(c), funcao(d)
    while abs(b - a) > tolerancia:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + (b - a) / PHI
            fd = funcao(d)
        else:
            b, d, fd = d, c, fc
            c = b - (b - a) / PHI
            fc = funcao(c)
    x = (a + b) / 2
    return x, funcao(x)


def melhor_resposta(jogo, i, x, config=None):
    """
    Esforço em [0, v_i] que maximiza v_i p_i - x_i contra x_-i (a entrada i
    de x é ignorada). Empates vão para o menor esforço.
    """
    config = config or ConfigEquilibrio.do_settings()
    resto = jogo.impacto_oponentes(i, x)
    if resto == 0:
        return 0.0

    v_i = jogo.v[i]
    xs = np.linspace(0.0, v_i, config.pontos_grade)
    valores = jogo._payoff_grade(i, xs, resto)
    k = int(np.argmax(valores))

    def payoff(esforco):
        f_i = jogo.spec.impacto(i, esforco)
        return v_i * f_i / (f_i + resto) - esforco

    baixo, alto = xs[max(k - 1, 0)], xs[min(k + 1, len(xs) - 1)]
    refinado, _ = secao_aurea(payoff, float(baixo), float(alto), config.tolerancia_resposta)

    candidatos = sorted({0.0, float(xs[k]), refinado, v_i})
    melhor, melhor_valor = candidatos[0], payoff(candidatos[0])
    for candidato in candidatos[1:]:
        valor = payoff(candidato)
        if valor > melhor_valor:
            melhor, melhor_valor = candidato, valor
    return melhor


def auditar(jogo, x, config=None):
    """Maior ganho de desvio unilateral numa grade de auditoria sobre [0, v_i]"""
    config = config or ConfigEquilibrio.do_settings()
    ganho = 0.0
    for i in range(jogo.n):
        resto = jogo.impacto_oponentes(i, x)
        xs = np.linspace(0.0, jogo.v[i], config.pontos_auditoria)
        melhor = float(np.max(jogo._payoff_grade(i, xs, resto)))
        ganho = max(ganho, melhor - jogo.payoff(i, x))
    return ganho


def resolver_nash(jogo, config=None, inicio=None):
    """
    Resposta ótima iterada (Jacobi) com amortecimento; ao parar, confere o
    ponto contra a grade de auditoria. Não converge sem exceção: o resultado
    traz convergiu=False e o último iterado.
    """
    config = config or ConfigEquilibrio.do_settings()
    n = jogo.n
    x = tuple(float(valor) for valor in inicio) if inicio else tuple(v / (n + 1) for v in jogo.v)
    aviso = jogo.r is not None and jogo.r > 1
    if aviso:
        logger.warning("r=%s > 1: equilíbrio em estratégias puras pode não existir", jogo.r)

    parou = False
    iteracoes = 0
    for iteracoes in range(1, config.max_iteracoes + 1):
        respostas = tuple(melhor_resposta(jogo, i, x, config) for i in range(n))
        proximo = tuple(atual + config.amortecimento * (resposta - atual)
                        for atual, resposta in zip(x, respostas))
        variacao = max(abs(a - b) for a, b in zip(proximo, x))
        x = proximo
        if variacao < config.tolerancia:
            x = respostas
            parou = True
            break

    ganho = auditar(jogo, x, config)
    verificado = ganho <= config.tolerancia_auditoria
    convergiu = parou and verificado
    motivo = ''
    if not parou:
        motivo = 'NoConvergence'
        logger.warning("Sem convergência após %d iterações em %s", iteracoes, jogo.spec.resumo())
    elif not verificado:
        motivo = 'NotVerified'
        logger.warning("Ponto fixo não verificado (ganho %.3g) em %s", ganho, jogo.spec.resumo())

    return ResultadoEquilibrio(
        x_star=x,
        payoffs=jogo.payoffs(x),
        convergiu=convergiu,
        iteracoes=iteracoes,
        cantos=tuple(valor == 0 for valor in x),
        aviso_existencia=aviso,
        verificado=verificado,
        ganho_maximo=ganho,
        motivo=motivo,
    )


def _respostas_grade(jogo, g1, g2):
    f1 = jogo.spec.impacto_vetorizado(0, g1)[:, None]
    f2 = jogo.spec.impacto_vetorizado(1, g2)[None, :]
    total = f1 + f2
    with np.errstate(divide='ignore', invalid='ignore'):
        p1 = np.where(total > 0, f1 / total, 0.5)
    u1 = jogo.v[0] * p1 - g1[:, None]
    u2 = jogo.v[1] * (1 - p1) - g2[None, :]
    return np.argmax(u1, axis=0), np.argmax(u2, axis=1)


def oraculo_grade_dois(jogo, passo=1e-3, refinamentos=2):
    """
    Equilíbrio de dois jogadores por força bruta: respostas ótimas numa grade
    de pares de esforço, ponto fixo mais próximo, depois zoom local.
    """
    if jogo.n != 2:
        raise ValidationError("O oráculo de grade só trata dois competidores")

    g1 = np.arange(0.0, jogo.v[0] + passo / 2, passo)
    g2 = np.arange(0.0, jogo.v[1] + passo / 2, passo)
    for nivel in range(refinamentos + 1):
        br1, br2 = _respostas_grade(jogo, g1, g2)
        # a -> resposta de 2 -> resposta de 1 a ela
        desvio = np.abs(g1[br1[br2]] - g1)
        a = int(np.argmin(desvio))
        x1, x2 = float(g1[a]), float(g2[br2[a]])
        if nivel == refinamentos:
            break
        largura = 5 * (g1[1] - g1[0])
        g1 = np.linspace(max(0.0, x1 - largura), min(jogo.v[0], x1 + largura), 101)
        g2 = np.linspace(max(0.0, x2 - largura), min(jogo.v[1], x2 + largura), 101)
    return x1, x2


def esforco_fechado(n, r, v, b=0):
    """
    Esforço individual simétrico quando há forma fechada:
    r = 1 dá max(v (n-1)/n^2 - b, 0); b = 0 dá r v (n-1)/n^2 (r <= n/(n-1)).
    """
    if r == 1:
        return max(v * (n - 1) / n ** 2 - b, 0.0)
    if b == 0 and r <= n / (n - 1):
        return r * v * (n - 1) / n ** 2
    return None


@dataclass(frozen=True)
class LinhaEstatica:
    b: float
    x_star: tuple
    soma: float
    convergiu: bool
    fechado: Optional[float]


@dataclass(frozen=True)
class TabelaEstatica:
    linhas: tuple
    monotona: bool


def estatica_comparativa_b(n=2, r=1, v=1.0, valores_b=(0, 0.1, 0.2, 0.3), config=None):
    """Esforço total de equilíbrio em função da sorte comum b (f = b + x^r)"""
    if r > 1:
        raise ValueError("A estática comparativa em b exige r <= 1")
    config = config or ConfigEquilibrio.do_settings()

    linhas = []
    for b in valores_b:
        jogo = JogoConcurso(SorteSimetrica(n, b, r), (v,) * n)
        resultado = resolver_nash(jogo, config)
        individual = esforco_fechado(n, r, v, b)
        fechado = None if individual is None else n * individual
        if not resultado.convergiu:
            logger.warning("Linha b=%s sem convergência: %s", b, resultado.motivo)
        linhas.append(LinhaEstatica(float(b), resultado.x_star, resultado.soma, resultado.convergiu, fechado))

    monotona = all(seguinte.soma <= anterior.soma + config.tolerancia_auditoria
                   for anterior, seguinte in zip(linhas, linhas[1:]))
    return TabelaEstatica(tuple(linhas), monotona)
