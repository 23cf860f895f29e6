"""
Plano de amostragem, testemunhas e o fluxo canônico de casos.

A ordem canônica é: perfil escada (n-1, ..., 1, 0), depois a grade inteira
{0, 1, 2, 4}^n em ordem lexicográfica com lambda em (2, 1/2), e por fim
sorteios com semente fixa. A fase de grade usa no máximo metade do orçamento.
"""
import itertools
import math
import zlib
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from . import conf
from .csf import Backend, converter, indices_da_mascara, mascara_completa


# Axiomas cujo predicado precisa de pelo menos 3 competidores
PRECISA_TRES = frozenset({'NAR', 'DC', 'CRI', 'SP', 'CP'})

# Incrementos de esforço (aditivos e multiplicativos)
DELTAS = (Fraction(1, 1000), Fraction(1), Fraction(10))
LAMBDAS_GRADE = (Fraction(2), Fraction(1, 2))


@dataclass(frozen=True)
class PlanoAmostragem:
    semente: int = 0
    perfis: int = 10000
    faixa_n: tuple = (2, 6)
    esforco_min: float = 1e-3
    esforco_max: float = 1e3
    prob_zero: float = 0.2
    lambdas_fixos: tuple = (0.5, 2.0, 10.0)
    lambdas_sorteados: int = 3
    faixa_lambda: tuple = (1e-2, 1e2)
    tolerancia: float = 1e-6
    tolerancia_compativel: float = 1e-9
    grade: tuple = (0, 1, 2, 4)
    fracao_grade: float = 0.5

    def __post_init__(self):
        if self.perfis < 1:
            raise ValidationError("O plano precisa de pelo menos uma amostra")
        if not 0 <= self.prob_zero < 1:
            raise ValidationError("Probabilidade de esforço zero deve estar em [0, 1)")
        if not 0 < self.esforco_min < self.esforco_max:
            raise ValidationError("Faixa de esforço inválida")
        if self.faixa_n[0] < 2 or self.faixa_n[0] > self.faixa_n[1]:
            raise ValidationError("Faixa de n inválida")
        if not 0 <= self.fracao_grade <= 1:
            raise ValidationError("Fração da grade deve estar em [0, 1]")
        if self.tolerancia <= 0 or self.tolerancia_compativel <= 0:
            raise ValidationError("Tolerâncias devem ser positivas")

    @classmethod
    def do_settings(cls, **ajustes):
        """Plano com os padrões de LABORATORIO_CSF['AMOSTRAGEM']"""
        valores = {
            'semente': conf.obter('AMOSTRAGEM', 'SEMENTE'),
            'perfis': conf.obter('AMOSTRAGEM', 'PERFIS'),
            'tolerancia': conf.obter('AMOSTRAGEM', 'TOLERANCIA'),
            'tolerancia_compativel': conf.obter('AMOSTRAGEM', 'TOLERANCIA_COMPATIVEL'),
        }
        valores.update({chave: valor for chave, valor in ajustes.items() if valor is not None})
        return cls(**valores)

    def lambdas(self):
        """{1/2, 2, 10} mais os sorteios log-uniformes do plano"""
        rng = np.random.default_rng([self.semente, 0])
        baixo, alto = (math.log10(limite) for limite in self.faixa_lambda)
        sorteados = tuple(float(10 ** rng.uniform(baixo, alto)) for _ in range(self.lambdas_sorteados))
        return tuple(self.lambdas_fixos) + sorteados

    def tolerancia_para(self, spec, backend):
        if backend is Backend.RACIONAL:
            return 0
        return self.tolerancia_compativel if spec.suporta_exato else self.tolerancia

    def descricao(self):
        dados = asdict(self)
        dados['lambdas'] = list(self.lambdas())
        return dados


@dataclass(frozen=True)
class Testemunha:
    """Entradas de um caso: perfil e os parâmetros que o axioma usa"""
    x: tuple
    i: Optional[int] = None
    j: Optional[int] = None
    k: Optional[int] = None
    lam: object = None
    mascara: Optional[int] = None
    novo_valor: object = None
    x_alt: Optional[tuple] = None

    def como_dict(self):
        dados = {'x': list(self.x)}
        for chave in ('i', 'j', 'k', 'lam', 'mascara', 'novo_valor'):
            valor = getattr(self, chave)
            if valor is not None:
                dados[chave] = valor
        if self.x_alt is not None:
            dados['x_alt'] = list(self.x_alt)
        return dados


@dataclass(frozen=True)
class Comparacao:
    """Os dois lados de um predicado e a relação exigida entre eles"""
    lhs: object
    rhs: object
    relacao: str = '='

    @property
    def escala(self):
        return max(1, abs(self.lhs), abs(self.rhs))

    def viola(self, tolerancia=0):
        folga = tolerancia * self.escala
        if self.relacao == '=':
            return abs(self.lhs - self.rhs) > folga
        if self.relacao == '<':
            return not self.lhs < self.rhs
        if self.relacao == '>':
            return not self.lhs > self.rhs
        if self.relacao == '<=':
            return self.lhs - self.rhs > folga
        if self.relacao == '>=':
            return self.rhs - self.lhs > folga
        raise ValueError(f"Relação desconhecida: {self.relacao}")

    @property
    def lacuna(self):
        """Violação relativa |lhs - rhs| / max(1, |lhs|, |rhs|) no sentido da relação"""
        if self.relacao == '=':
            diferenca = abs(self.lhs - self.rhs)
        elif self.relacao in ('<', '<='):
            diferenca = max(self.lhs - self.rhs, 0)
        else:
            diferenca = max(self.rhs - self.lhs, 0)
        return diferenca / self.escala


def semente_do_codigo(codigo):
    return zlib.crc32(codigo.encode('ascii'))


def perfis_grade(n, grade=(0, 1, 2, 4)):
    """Perfil escada primeiro, depois a grade inteira sem o vetor nulo"""
    escada = tuple(n - 1 - i for i in range(n))
    yield escada
    for perfil in itertools.product(grade, repeat=n):
        if any(perfil) and perfil != escada:
            yield perfil


def _bumps(valor, backend):
    candidatos = [valor + converter(delta, backend) for delta in DELTAS]
    if valor > 0:
        candidatos += [valor * (1 + converter(delta, backend)) for delta in DELTAS]
    return candidatos


def _pares(n):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def casos_do_perfil(codigo, x, backend=Backend.FLOAT64, lambdas=None):
    """Casos determinísticos de um perfil da grade, em ordem canônica"""
    n = len(x)
    lambdas = [converter(lam, backend) for lam in (lambdas or LAMBDAS_GRADE)]
    if codigo in PRECISA_TRES and n < 3:
        return

    if codigo == 'SM':
        for i in range(n):
            for novo in _bumps(x[i], backend):
                yield Testemunha(x, i=i, novo_valor=novo)
    elif codigo == 'LCA':
        completa = mascara_completa(n)
        for mascara in range(3, completa):
            indices = indices_da_mascara(mascara)
            if len(indices) >= 2:
                for i in indices:
                    yield Testemunha(x, i=i, mascara=mascara)
    elif codigo == 'HOM':
        for lam in lambdas:
            for i in range(n):
                yield Testemunha(x, i=i, lam=lam)
    elif codigo in ('RH', 'HRE'):
        for lam in lambdas:
            for i in range(n):
                for j in range(i + 1, n):
                    if x[i] > 0 and x[j] > 0:
                        yield Testemunha(x, i=i, j=j, lam=lam)
    elif codigo == 'ANY':
        for i in range(n):
            for j in range(i + 1, n):
                yield Testemunha(x, i=i, j=j)
    elif codigo == 'NAR':
        for i in range(n):
            for j in range(i + 1, n):
                soma = x[i] + x[j]
                for novo in (soma, converter(0, backend), soma / 2):
                    if novo == x[i]:
                        continue
                    for k in range(n):
                        if k not in (i, j):
                            yield Testemunha(x, i=i, j=j, k=k, novo_valor=novo)
    elif codigo == 'DC':
        for i in range(n):
            if x[i] == 0:
                for j in range(n):
                    if j != i:
                        yield Testemunha(x, i=i, j=j)
    elif codigo in ('CRI', 'SP', 'CP'):
        for i, j in _pares(n):
            yield Testemunha(x, i=i, j=j)
    elif codigo == 'PA':
        yield Testemunha(x)
    elif codigo == 'DI':
        rotacionado = x[1:] + x[:1]
        for i in range(n):
            yield Testemunha(x, i=i, x_alt=rotacionado)
    elif codigo == 'DEC':
        for i, j in _pares(n):
            for delta in (1, 10):
                yield Testemunha(x, i=i, j=j, novo_valor=x[i] + converter(delta, backend))
    else:
        raise ValueError(f"Código de predicado desconhecido: {codigo}")


class Amostrador:
    """Sorteios com semente fixa para um (código, n, plano)"""

    TENTATIVAS = 100

    def __init__(self, plano, codigo, n, backend=Backend.FLOAT64):
        self.plano = plano
        self.codigo = codigo
        self.n = n
        self.backend = backend
        self.lambdas = [converter(lam, backend) for lam in plano.lambdas()]
        self.rng = np.random.default_rng([plano.semente, semente_do_codigo(codigo), n])
        self._log_min = math.log10(plano.esforco_min)
        self._log_max = math.log10(plano.esforco_max)

    def _valor(self, valor):
        return converter(float(valor), self.backend)

    def perfil(self):
        for _ in range(self.TENTATIVAS):
            valores = []
            for _ in range(self.n):
                if self.rng.random() < self.plano.prob_zero:
                    valores.append(0.0)
                else:
                    valores.append(float(10 ** self.rng.uniform(self._log_min, self._log_max)))
            if any(valores):
                return tuple(self._valor(valor) for valor in valores)
        return tuple(self._valor(self.plano.esforco_min) for _ in range(self.n))

    def _dois(self):
        i, j = self.rng.choice(self.n, size=2, replace=False)
        return int(i), int(j)

    def caso(self, indice):
        """Um caso sorteado; None quando as pré-condições não foram atingidas"""
        n = self.n
        codigo = self.codigo
        x = self.perfil()
        lam = self.lambdas[indice % len(self.lambdas)]

        if codigo == 'SM':
            i = int(self.rng.integers(n))
            delta = converter(DELTAS[int(self.rng.integers(len(DELTAS)))], self.backend)
            multiplicativo = bool(self.rng.integers(2)) and x[i] > 0
            novo = x[i] * (1 + delta) if multiplicativo else x[i] + delta
            return Testemunha(x, i=i, novo_valor=novo)
        if codigo == 'LCA':
            while True:
                mascara = int(self.rng.integers(1, 1 << n))
                indices = indices_da_mascara(mascara)
                if len(indices) >= 2:
                    break
            i = indices[int(self.rng.integers(len(indices)))]
            return Testemunha(x, i=i, mascara=mascara)
        if codigo == 'HOM':
            return Testemunha(x, i=int(self.rng.integers(n)), lam=lam)
        if codigo in ('RH', 'HRE'):
            for _ in range(self.TENTATIVAS):
                positivos = [k for k in range(n) if x[k] > 0]
                if len(positivos) >= 2:
                    escolha = self.rng.choice(len(positivos), size=2, replace=False)
                    i, j = (positivos[int(posicao)] for posicao in escolha)
                    return Testemunha(x, i=i, j=j, lam=lam)
                x = self.perfil()
            return None
        if codigo == 'ANY':
            i, j = self._dois()
            return Testemunha(x, i=i, j=j)
        if codigo == 'NAR':
            if n < 3:
                return None
            i, j, k = (int(valor) for valor in self.rng.permutation(n)[:3])
            fracao = self._valor(self.rng.random())
            return Testemunha(x, i=i, j=j, k=k, novo_valor=fracao * (x[i] + x[j]))
        if codigo == 'DC':
            if n < 3:
                return None
            for _ in range(self.TENTATIVAS):
                i = int(self.rng.integers(n))
                vetor = list(x)
                vetor[i] = converter(0, self.backend)
                if any(vetor):
                    j = int(self.rng.choice([k for k in range(n) if k != i]))
                    return Testemunha(tuple(vetor), i=i, j=j)
                x = self.perfil()
            return None
        if codigo in ('CRI', 'SP', 'CP'):
            if n < 3:
                return None
            i, j = self._dois()
            return Testemunha(x, i=i, j=j)
        if codigo == 'PA':
            return Testemunha(x)
        if codigo == 'DI':
            return Testemunha(x, i=int(self.rng.integers(n)), x_alt=self.perfil())
        if codigo == 'DEC':
            i, j = self._dois()
            delta = converter((1, 10)[int(self.rng.integers(2))], self.backend)
            return Testemunha(x, i=i, j=j, novo_valor=x[i] + delta)
        raise ValueError(f"Código de predicado desconhecido: {codigo}")


def casos(codigo, n, plano, backend=Backend.FLOAT64, reserva=0):
    """
    Fluxo canônico de plano.perfis casos (None marca um caso que não pôde ser
    montado e conta como pulado), seguido de até `reserva` sorteios extras
    para repor amostras puladas.
    """
    limite_grade = int(plano.perfis * plano.fracao_grade)
    emitidos = 0
    if limite_grade:
        for perfil in perfis_grade(n, plano.grade):
            x = tuple(converter(valor, backend) for valor in perfil)
            for caso in casos_do_perfil(codigo, x, backend):
                yield caso
                emitidos += 1
                if emitidos >= limite_grade:
                    break
            if emitidos >= limite_grade:
                break

    amostrador = Amostrador(plano, codigo, n, backend)
    for indice in range(plano.perfis - emitidos + reserva):
        yield amostrador.caso(indice)
