"""
Funções de sucesso de concurso (CSF) com sorte.

Toda CSF do laboratório tem forma logit: p_i^M(x) = f_i(x_i) / soma_{j em M} f_j(x_j),
com f_j a função de impacto do competidor j. As famílias paramétricas usam
f_j(x) = b_j + a_j x^r (b_j é a sorte, f_j(0)); a família Personalizada aceita
qualquer f_j não negativa e estritamente crescente.

Subconjuntos de competidores são máscaras de bits sobre os índices 0..n-1.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from . import conf
from .exceptions import (BackendIndisponivel, DenominadorDegenerado, DesvioIndefinido,
                         FamiliaSemSorte, ForaDoDominio, SubconjuntoInvalido)
from .validators import (validar_esforcos, validar_expoente, validar_funcao_impacto,
                         validar_numero_competidores, validar_rotulos, validar_tabela_impacto,
                         validar_vetor_nao_negativo, validar_vetor_positivo)


class Backend(str, Enum):
    FLOAT64 = 'float64'
    RACIONAL = 'rational'


def _exigir(resultado):
    ok, mensagem = resultado
    if not ok:
        raise ValidationError(mensagem)


def converter(valor, backend=Backend.FLOAT64):
    """Converte um número para o tipo do backend (float ou Fraction)"""
    if backend is Backend.RACIONAL:
        if isinstance(valor, Fraction):
            return valor
        if isinstance(valor, float) and not math.isfinite(valor):
            raise ValidationError("Valor não finito não tem representação racional")
        return Fraction(valor)
    return float(valor)


def _somar(valores, backend):
    if backend is Backend.RACIONAL:
        return sum(valores, Fraction(0))
    return math.fsum(valores)


def _inteiro(r):
    """r como inteiro positivo, ou erro quando o backend exato não se aplica"""
    expoente = Fraction(r)
    if expoente.denominator != 1 or expoente <= 0:
        raise BackendIndisponivel(f"Backend racional exige r inteiro positivo (r={r})")
    return int(expoente)


def _potencia(x, r, backend):
    if backend is Backend.RACIONAL:
        return converter(x, backend) ** _inteiro(r)
    return float(x) ** float(r)


# Máscaras de bits

def mascara_completa(n):
    return (1 << n) - 1


def mascara_de(indices):
    mascara = 0
    for i in indices:
        mascara |= 1 << i
    return mascara


def indices_da_mascara(mascara):
    return tuple(i for i in range(mascara.bit_length()) if mascara >> i & 1)


def _indices_validos(n, mascara):
    if mascara is None:
        mascara = mascara_completa(n)
    if mascara < 0 or mascara >> n:
        raise SubconjuntoInvalido(f"Máscara {mascara:#x} contém competidores fora de N (n={n})")
    indices = indices_da_mascara(mascara)
    if len(indices) < 2:
        raise SubconjuntoInvalido("Subconcursos exigem |M| >= 2")
    return indices


@dataclass(frozen=True)
class ConjuntoCompetidores:
    n: int
    rotulos: Optional[tuple] = None

    def __post_init__(self):
        _exigir(validar_numero_competidores(self.n))
        if self.rotulos is not None:
            object.__setattr__(self, 'rotulos', tuple(self.rotulos))
        _exigir(validar_rotulos(self.rotulos, self.n))

    @property
    def mascara(self):
        return mascara_completa(self.n)

    def rotulo(self, i):
        return self.rotulos[i] if self.rotulos else str(i + 1)


@dataclass(frozen=True)
class PerfilEsforco:
    """Vetor de esforços não negativos de um concurso ativo"""
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, 'x', tuple(self.x))
        _exigir(validar_esforcos(self.x))

    @property
    def n(self):
        return len(self.x)

    def __len__(self):
        return len(self.x)

    def __iter__(self):
        return iter(self.x)

    def __getitem__(self, i):
        return self.x[i]

    def projetar(self, mascara):
        return tuple(self.x[i] for i in indices_da_mascara(mascara))

    def com(self, i, valor):
        """Troca x_i; o resultado pode ser o vetor nulo, então volta como tupla"""
        vetor = list(self.x)
        vetor[i] = valor
        return tuple(vetor)

    def escalado(self, lam):
        return PerfilEsforco(tuple(lam * valor for valor in self.x))


def _vetor(x, n):
    vetor = tuple(x.x) if isinstance(x, PerfilEsforco) else tuple(x)
    if len(vetor) != n:
        raise ValidationError(f"Perfil com {len(vetor)} esforços para {n} competidores")
    if any(valor < 0 for valor in vetor):
        raise ValidationError("Esforços não podem ser negativos")
    return vetor


def _perfil_ativo(x, n):
    """Perfil com pelo menos um esforço positivo; x = (0, ..., 0) é rejeitado"""
    vetor = _vetor(x, n)
    _exigir(validar_esforcos(vetor))
    return vetor


class EspecImpacto(ABC):
    """Especificação das funções de impacto de um concurso"""

    familia = ''

    @abstractmethod
    def impacto(self, j, x_j, backend=Backend.FLOAT64):
        """f_j(x_j)"""

    @abstractmethod
    def restringir_indices(self, indices):
        """Mesma especificação projetada nos competidores indicados"""

    def sorte(self, j, backend=Backend.FLOAT64):
        return self.impacto(j, 0, backend)

    def incremento(self, j, x_j, backend=Backend.FLOAT64):
        """f_j(x_j) - f_j(0), o mérito obtido com esforço"""
        return self.impacto(j, x_j, backend) - self.sorte(j, backend)

    def impacto_vetorizado(self, j, xs):
        """f_j aplicada a um array de esforços (float64)"""
        return np.array([self.impacto(j, float(x)) for x in np.asarray(xs, dtype=float)])

    @property
    def suporta_exato(self):
        return False

    @property
    def simetrica(self):
        return False

    def resumo(self):
        return self.familia


class _FamiliaPotencia(EspecImpacto):
    """f_j(x) = b_j + a_j x^r; as subclasses expõem a, b e r"""

    def impacto(self, j, x_j, backend=Backend.FLOAT64):
        return converter(self.b[j], backend) + self.incremento(j, x_j, backend)

    def sorte(self, j, backend=Backend.FLOAT64):
        return converter(self.b[j], backend)

    def incremento(self, j, x_j, backend=Backend.FLOAT64):
        return converter(self.a[j], backend) * _potencia(x_j, self.r, backend)

    def impacto_vetorizado(self, j, xs):
        return float(self.b[j]) + float(self.a[j]) * np.power(np.asarray(xs, dtype=float), float(self.r))

    @property
    def suporta_exato(self):
        return Fraction(self.r).denominator == 1

    @property
    def simetrica(self):
        return len(set(self.a)) == 1 and len(set(self.b)) == 1

    def escalado(self, c):
        """Multiplica todos os a_j e b_j por c > 0 (a CSF não muda)"""
        return PotenciaMaisConstante(tuple(c * v for v in self.a), tuple(c * v for v in self.b), self.r)

    def resumo(self):
        return f"{self.familia}(a={list(self.a)}, b={list(self.b)}, r={self.r})"


def _validar_potencia(a, b, r):
    if len(a) != len(b):
        raise ValidationError("a e b devem ter o mesmo tamanho")
    _exigir(validar_numero_competidores(len(a)))
    _exigir(validar_vetor_positivo(a, 'a'))
    _exigir(validar_vetor_nao_negativo(b, 'b'))
    _exigir(validar_expoente(r))


@dataclass(frozen=True)
class PotenciaMaisConstante(_FamiliaPotencia):
    """Tullock com sorte: f_j(x) = b_j + a_j x^r"""
    a: tuple
    b: tuple
    r: object = 1

    familia = 'luck_tullock'

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(self.a))
        object.__setattr__(self, 'b', tuple(self.b))
        _validar_potencia(self.a, self.b, self.r)

    @property
    def n(self):
        return len(self.a)

    def restringir_indices(self, indices):
        return PotenciaMaisConstante(tuple(self.a[i] for i in indices),
                                     tuple(self.b[i] for i in indices), self.r)


@dataclass(frozen=True)
class Linear(_FamiliaPotencia):
    """Vantagem inicial (head start): f_j(x) = b_j + x"""
    b: tuple

    familia = 'linear_headstart'

    def __post_init__(self):
        object.__setattr__(self, 'b', tuple(self.b))
        _validar_potencia(self.a, self.b, self.r)

    @property
    def n(self):
        return len(self.b)

    @property
    def a(self):
        return (1,) * len(self.b)

    @property
    def r(self):
        return 1

    def restringir_indices(self, indices):
        return Linear(tuple(self.b[i] for i in indices))

    def resumo(self):
        return f"{self.familia}(b={list(self.b)})"


@dataclass(frozen=True)
class SorteSimetrica(_FamiliaPotencia):
    """Sorte comum: f(x) = b + x^r para todos"""
    n: int
    b_comum: object = 0
    r: object = 1

    familia = 'symmetric_luck'

    def __post_init__(self):
        _exigir(validar_numero_competidores(self.n))
        _validar_potencia(self.a, self.b, self.r)

    @property
    def a(self):
        return (1,) * self.n

    @property
    def b(self):
        return (self.b_comum,) * self.n

    @property
    def simetrica(self):
        return True

    def restringir_indices(self, indices):
        return SorteSimetrica(len(indices), self.b_comum, self.r)

    def resumo(self):
        return f"{self.familia}(n={self.n}, b={self.b_comum}, r={self.r})"


@dataclass(frozen=True)
class Tullock(_FamiliaPotencia):
    """Tullock assimétrica sem sorte: f_j(x) = a_j x^r"""
    a: tuple
    r: object = 1

    familia = 'tullock'

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(self.a))
        _validar_potencia(self.a, self.b, self.r)

    @property
    def n(self):
        return len(self.a)

    @property
    def b(self):
        return (0,) * len(self.a)

    def restringir_indices(self, indices):
        return Tullock(tuple(self.a[i] for i in indices), self.r)

    def resumo(self):
        return f"{self.familia}(a={list(self.a)}, r={self.r})"


@dataclass(frozen=True)
class Razao(_FamiliaPotencia):
    """CSF razão tradicional: p_i = x_i / soma x_j"""
    n: int

    familia = 'ratio'

    def __post_init__(self):
        _exigir(validar_numero_competidores(self.n))

    @property
    def a(self):
        return (1,) * self.n

    @property
    def b(self):
        return (0,) * self.n

    @property
    def r(self):
        return 1

    @property
    def simetrica(self):
        return True

    def restringir_indices(self, indices):
        return Razao(len(indices))

    def resumo(self):
        return f"{self.familia}(n={self.n})"


@dataclass(frozen=True)
class FuncaoTabelada:
    """Impacto por pontos (x, f(x)), interpolação linear e extrapolação pela última reta"""
    pontos: tuple

    def __post_init__(self):
        _exigir(validar_tabela_impacto(self.pontos))
        object.__setattr__(self, 'pontos', tuple((float(x), float(f)) for x, f in self.pontos))

    def __call__(self, x):
        xs = [ponto[0] for ponto in self.pontos]
        fs = [ponto[1] for ponto in self.pontos]
        if x >= xs[-1]:
            inclinacao = (fs[-1] - fs[-2]) / (xs[-1] - xs[-2])
            return fs[-1] + inclinacao * (x - xs[-1])
        return float(np.interp(x, xs, fs))


@dataclass(frozen=True)
class Personalizada(EspecImpacto):
    """Funções de impacto arbitrárias, validadas por amostragem"""
    funcoes: tuple
    dominio_max: float = 1e6
    nome: str = 'custom'

    familia = 'custom'

    def __post_init__(self):
        object.__setattr__(self, 'funcoes', tuple(self.funcoes))
        _exigir(validar_numero_competidores(len(self.funcoes)))
        for posicao, funcao in enumerate(self.funcoes):
            ok, mensagem = validar_funcao_impacto(funcao, self.dominio_max)
            if not ok:
                raise ValidationError(f"Competidor {posicao}: {mensagem}")

    @property
    def n(self):
        return len(self.funcoes)

    def impacto(self, j, x_j, backend=Backend.FLOAT64):
        if backend is Backend.RACIONAL:
            raise BackendIndisponivel("Funções personalizadas só rodam em float64")
        x = float(x_j)
        if x > self.dominio_max:
            raise ForaDoDominio(f"x={x:g} acima do domínio {self.dominio_max:g}")
        try:
            valor = float(self.funcoes[j](x))
        except OverflowError as erro:
            raise ForaDoDominio(str(erro)) from erro
        if not math.isfinite(valor) or valor < 0:
            raise ForaDoDominio(f"f_{j}({x:g}) = {valor}")
        return valor

    def restringir_indices(self, indices):
        return Personalizada(tuple(self.funcoes[i] for i in indices), self.dominio_max, self.nome)

    @property
    def simetrica(self):
        return len(set(self.funcoes)) == 1

    def resumo(self):
        return f"{self.familia}({self.nome}, n={self.n})"


def checar_backend(spec, backend):
    """Levanta BackendIndisponivel se o backend pedido não serve para a especificação"""
    if backend is not Backend.RACIONAL:
        return
    if not conf.backend_exato_habilitado():
        raise BackendIndisponivel("Backend racional desabilitado em LABORATORIO_CSF")
    if not spec.suporta_exato:
        raise BackendIndisponivel(f"{spec.resumo()} não admite aritmética racional exata")


def impactos(spec, x, backend=Backend.FLOAT64):
    vetor = _vetor(x, spec.n)
    return [spec.impacto(j, vetor[j], backend) for j in range(spec.n)]


def avaliar(spec, x, mascara=None, backend=Backend.FLOAT64):
    """
    Probabilidades de vitória p_i^M(x^M) para i em M (ordem crescente de índice).
    x é o perfil completo de N; mascara=None significa M = N.
    """
    vetor = _vetor(x, spec.n)
    indices = _indices_validos(spec.n, mascara)
    valores = [spec.impacto(j, vetor[j], backend) for j in indices]
    total = _somar(valores, backend)
    if total == 0:
        raise DenominadorDegenerado("Soma dos impactos nula no subconjunto")
    if backend is Backend.FLOAT64 and not math.isfinite(total):
        raise ForaDoDominio("Soma dos impactos não finita")
    return tuple(valor / total for valor in valores)


def restringir(spec, mascara):
    """
    Especificação do subconcurso M, com a, b projetados e o mesmo r.
    O subconcurso renumera os competidores 0..|M|-1: uma segunda máscara
    vale no espaço de índices dele, e restringir com mascara_completa(|M|)
    devolve o mesmo concurso.
    """
    return spec.restringir_indices(_indices_validos(spec.n, mascara))


def desvio(spec, i, j, x, backend=Backend.FLOAT64):
    """
    d_ij(x) = [p_j(0, x_-i) - p_j(x)] / p_j(0, x_-i): queda percentual de j
    quando i passa de inativo a ativo.
    """
    if i == j:
        raise ValueError("d_ij exige i != j")
    vetor = _perfil_ativo(x, spec.n)
    inativo = list(vetor)
    inativo[i] = 0

    if backend is Backend.RACIONAL:
        base = avaliar(spec, inativo, backend=backend)[j]
        if base == 0:
            raise DesvioIndefinido(f"p_{j}(0, x_-{i}) = 0")
        return (base - avaliar(spec, vetor, backend=backend)[j]) / base

    # float64: identidade da forma logit, sem cancelamento
    valores = [spec.impacto(k, inativo[k]) for k in range(spec.n)]
    if math.fsum(valores) == 0:
        raise DenominadorDegenerado("Soma dos impactos nula com i inativo")
    if valores[j] == 0:
        raise DesvioIndefinido(f"p_{j}(0, x_-{i}) = 0")
    valores[i] = spec.impacto(i, vetor[i])
    total = math.fsum(valores)
    if not math.isfinite(total):
        raise ForaDoDominio("Soma dos impactos não finita")
    return min(1.0, max(0.0, spec.incremento(i, vetor[i]) / total))


def desvio_fechado(spec, i, x, backend=Backend.FLOAT64):
    """Forma fechada [f_i(x_i) - f_i(0)] / soma_k f_k(x_k), que não depende de j"""
    vetor = _perfil_ativo(x, spec.n)
    total = _somar(impactos(spec, vetor, backend), backend)
    if total == 0:
        raise DenominadorDegenerado("Soma dos impactos nula")
    return spec.incremento(i, vetor[i], backend) / total


@dataclass(frozen=True)
class Decomposicao:
    """Primeiro nível: vitórias garantidas mu_i; segundo nível: empate mu_null"""
    mu: tuple
    mu_null: object
    alfa: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, 'mu', tuple(self.mu))
        for valor in (*self.mu, self.mu_null):
            if valor < 0 or valor > 1:
                raise ValidationError(f"Probabilidade fora de [0, 1]: {valor}")
        if self.alfa is not None and any(valor <= 0 for valor in self.alfa):
            raise ValidationError("Parâmetros alfa devem ser positivos")

    @property
    def total(self):
        return sum(self.mu) + self.mu_null


def soma_sorte(spec, backend=Backend.FLOAT64):
    return _somar([spec.sorte(j, backend) for j in range(spec.n)], backend)


def decompor_dois_niveis(spec, x, backend=Backend.FLOAT64):
    """
    mu_i = [f_i(x_i) - f_i(0)] / soma f, mu_null = soma f(0) / soma f.
    Para famílias paramétricas com soma b > 0 inclui alfa_i = a_i / soma b.
    """
    vetor = _perfil_ativo(x, spec.n)
    total = _somar(impactos(spec, vetor, backend), backend)
    if total == 0:
        raise DenominadorDegenerado("Soma dos impactos nula")
    mu = tuple(spec.incremento(i, vetor[i], backend) / total for i in range(spec.n))
    sorte = soma_sorte(spec, backend)
    alfa = None
    if isinstance(spec, _FamiliaPotencia) and sorte > 0:
        alfa = parametros_blavatskyy(spec, backend)
    return Decomposicao(mu, sorte / total, alfa)


def parametros_blavatskyy(spec, backend=Backend.FLOAT64):
    """alfa_i = a_i / soma_k b_k"""
    if not isinstance(spec, _FamiliaPotencia):
        raise TypeError("Parâmetros alfa só existem para famílias b + a x^r")
    sorte = soma_sorte(spec, backend)
    if sorte == 0:
        raise FamiliaSemSorte("Soma de b igual a zero, não há nível de empate")
    return tuple(converter(a, backend) / sorte for a in spec.a)


def formas_blavatskyy(spec, x, backend=Backend.FLOAT64):
    """mu_i = alfa_i x_i^r / (1 + soma alfa x^r) e mu_null = 1 / (1 + soma alfa x^r)"""
    alfa = parametros_blavatskyy(spec, backend)
    vetor = _perfil_ativo(x, spec.n)
    termos = [alfa[i] * _potencia(vetor[i], spec.r, backend) for i in range(spec.n)]
    denominador = 1 + _somar(termos, backend)
    return Decomposicao(tuple(termo / denominador for termo in termos), 1 / denominador, alfa)


def normalizar_sorte(spec, backend=Backend.FLOAT64):
    """Reescala (a, b) para soma b = 1: a' = alfa, b' = b / soma b"""
    alfa = parametros_blavatskyy(spec, backend)
    sorte = soma_sorte(spec, backend)
    return PotenciaMaisConstante(alfa, tuple(converter(b, backend) / sorte for b in spec.b), spec.r)
