"""
Arquivo JSON de especificação de concurso.

O esquema é um Form do Django: os campos convertem e validam os valores
(números viram Fraction sem perda, aceitando também "p/q") e clean() aplica
as regras de cada família antes de montar a EspecImpacto.
"""
import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from numbers import Real

from django import forms
from django.core.exceptions import ValidationError

from .csf import (Backend, ConjuntoCompetidores, FuncaoTabelada, Linear, Personalizada,
                  PotenciaMaisConstante, Razao, SorteSimetrica, Tullock)
from .validators import LIMITE_COMPETIDORES, validar_rotulos

FAMILIAS = (
    ('luck_tullock', 'Tullock com sorte (b + a x^r)'),
    ('tullock', 'Tullock assimétrica (a x^r)'),
    ('linear_headstart', 'Vantagem inicial linear (b + x)'),
    ('symmetric_luck', 'Sorte simétrica (b + x^r)'),
    ('ratio', 'Razão (x)'),
    ('custom_table', 'Tabela de impacto por competidor'),
)

BACKENDS = tuple((backend.value, backend.value) for backend in Backend)

CHAVES = frozenset({'n', 'family', 'a', 'b', 'r', 'b_scalar', 'custom_table', 'labels', 'backend'})


def para_fracao(valor):
    """Número JSON (int, Decimal, float) ou texto "p/q" como Fraction exata"""
    if isinstance(valor, bool):
        raise ValidationError("Valor booleano onde se esperava número")
    if isinstance(valor, Fraction):
        return valor
    if isinstance(valor, (int, Decimal)):
        return Fraction(valor)
    if isinstance(valor, Real):
        return Fraction(Decimal(repr(float(valor))))
    if isinstance(valor, str):
        try:
            return Fraction(valor.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"Número inválido: {valor!r}")
    raise ValidationError(f"Número inválido: {valor!r}")


class NumeroField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return None
        return para_fracao(value)


class VetorField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (list, tuple)):
            raise ValidationError("Esperava uma lista de números")
        return tuple(para_fracao(item) for item in value)


class TabelaField(forms.Field):
    """Lista por competidor de pares [x, f(x)]"""

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (list, tuple)):
            raise ValidationError("custom_table deve ser uma lista de tabelas")
        tabelas = []
        for tabela in value:
            if not isinstance(tabela, (list, tuple)):
                raise ValidationError("Cada tabela deve ser uma lista de pares [x, f(x)]")
            pares = []
            for par in tabela:
                if not isinstance(par, (list, tuple)) or len(par) != 2:
                    raise ValidationError("Cada ponto deve ser um par [x, f(x)]")
                pares.append((para_fracao(par[0]), para_fracao(par[1])))
            tabelas.append(tuple(pares))
        return tuple(tabelas)


class RotulosField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (list, tuple)) or not all(isinstance(item, str) for item in value):
            raise ValidationError("labels deve ser uma lista de textos")
        return tuple(value)


class ContestSpecForm(forms.Form):
    n = forms.IntegerField(min_value=2, max_value=LIMITE_COMPETIDORES)
    family = forms.ChoiceField(choices=FAMILIAS)
    a = VetorField(required=False)
    b = VetorField(required=False)
    r = NumeroField(required=False)
    b_scalar = NumeroField(required=False)
    custom_table = TabelaField(required=False)
    labels = RotulosField(required=False)
    backend = forms.ChoiceField(choices=BACKENDS, required=False)

    REQUERIDOS = {
        'luck_tullock': ('a', 'b'),
        'tullock': ('a',),
        'linear_headstart': ('b',),
        'symmetric_luck': ('b_scalar',),
        'ratio': (),
        'custom_table': ('custom_table',),
    }
    PROIBIDOS = {
        'luck_tullock': ('b_scalar', 'custom_table'),
        'tullock': ('b', 'b_scalar', 'custom_table'),
        'linear_headstart': ('a', 'r', 'b_scalar', 'custom_table'),
        'symmetric_luck': ('a', 'b', 'custom_table'),
        'ratio': ('a', 'b', 'r', 'b_scalar', 'custom_table'),
        'custom_table': ('a', 'b', 'r', 'b_scalar'),
    }

    def clean(self):
        dados = super().clean()
        if self.errors:
            return dados

        familia = dados['family']
        n = dados['n']
        dados['backend'] = dados.get('backend') or Backend.FLOAT64.value

        for campo in self.REQUERIDOS[familia]:
            if dados.get(campo) is None:
                self.add_error(campo, f"Obrigatório para a família {familia}")
        for campo in self.PROIBIDOS[familia]:
            if dados.get(campo) is not None:
                self.add_error(campo, f"Não se aplica à família {familia}")

        for campo in ('a', 'b', 'custom_table', 'labels'):
            valor = dados.get(campo)
            if valor is not None and len(valor) != n:
                self.add_error(campo, f"Esperava {n} entradas, recebeu {len(valor)}")
        ok, mensagem = validar_rotulos(dados.get('labels'), n)
        if not ok and 'labels' not in self.errors:
            self.add_error('labels', mensagem)

        if self.errors:
            return dados

        if dados['backend'] == Backend.RACIONAL.value:
            if familia == 'custom_table':
                self.add_error('backend', "Tabelas de impacto só rodam em float64")
            r = dados.get('r')
            if r is not None and r.denominator != 1:
                self.add_error('backend', "Backend racional exige r inteiro")
            if self.errors:
                return dados

        try:
            self.spec = construir_spec(dados)
        except ValidationError as erro:
            raise ValidationError(erro.messages)
        return dados


def _valor(fracao, backend):
    if fracao.denominator == 1:
        return int(fracao)
    return fracao if backend is Backend.RACIONAL else float(fracao)


def construir_spec(dados):
    """EspecImpacto a partir dos dados já limpos do formulário"""
    backend = Backend(dados.get('backend') or Backend.FLOAT64.value)
    familia = dados['family']
    n = dados['n']

    def vetor(campo):
        return tuple(_valor(valor, backend) for valor in dados[campo])

    r = _valor(dados['r'], backend) if dados.get('r') is not None else 1

    if familia == 'luck_tullock':
        return PotenciaMaisConstante(vetor('a'), vetor('b'), r)
    if familia == 'tullock':
        return Tullock(vetor('a'), r)
    if familia == 'linear_headstart':
        return Linear(vetor('b'))
    if familia == 'symmetric_luck':
        return SorteSimetrica(n, _valor(dados['b_scalar'], backend), r)
    if familia == 'ratio':
        return Razao(n)
    if familia == 'custom_table':
        funcoes = tuple(FuncaoTabelada(tuple((float(x), float(f)) for x, f in tabela))
                        for tabela in dados['custom_table'])
        return Personalizada(funcoes, nome='table')
    raise ValidationError(f"Família desconhecida: {familia}")


@dataclass(frozen=True)
class ArquivoEspecificacao:
    familia: str
    n: int
    backend: Backend
    spec: object
    parametros: dict = field(default_factory=dict)
    rotulos: tuple = None

    @property
    def competidores(self):
        return ConjuntoCompetidores(self.n, self.rotulos)


def validar_documento(documento):
    """Valida um documento já decodificado e devolve ArquivoEspecificacao"""
    if not isinstance(documento, dict):
        raise ValidationError("A especificação deve ser um objeto JSON")
    desconhecidas = sorted(set(documento) - CHAVES)
    if desconhecidas:
        raise ValidationError(f"Chaves desconhecidas: {', '.join(desconhecidas)}")

    form = ContestSpecForm(data=documento)
    if not form.is_valid():
        mensagens = []
        for campo, erros in form.errors.items():
            prefixo = '' if campo == '__all__' else f"{campo}: "
            mensagens.extend(f"{prefixo}{erro}" for erro in erros)
        raise ValidationError(mensagens)

    dados = form.cleaned_data
    parametros = {campo: dados[campo] for campo in ('a', 'b', 'r', 'b_scalar', 'custom_table')
                  if dados.get(campo) is not None}
    return ArquivoEspecificacao(dados['family'], dados['n'], Backend(dados['backend']), form.spec,
                                parametros, dados.get('labels'))


def ler_especificacao(texto, backend=None):
    try:
        documento = json.loads(texto, parse_float=Decimal)
    except json.JSONDecodeError as erro:
        raise ValidationError(f"JSON inválido: {erro}")
    if backend is not None and isinstance(documento, dict):
        documento['backend'] = Backend(backend).value
    return validar_documento(documento)


def carregar_especificacao(caminho, backend=None):
    try:
        with open(caminho, encoding='utf-8') as arquivo:
            texto = arquivo.read()
    except OSError as erro:
        raise ValidationError(f"Não foi possível ler {caminho}: {erro}")
    return ler_especificacao(texto, backend)


def _numero_json(fracao):
    """int, decimal curto quando exato, senão "p/q" """
    if fracao.denominator == 1:
        return int(fracao)
    decimal = float(fracao)
    if Fraction(Decimal(repr(decimal))) == fracao:
        return decimal
    return f"{fracao.numerator}/{fracao.denominator}"


def serializar(arquivo):
    """Documento JSON equivalente (recarregar devolve a mesma especificação)"""
    documento = {'n': arquivo.n, 'family': arquivo.familia, 'backend': arquivo.backend.value}
    for campo, valor in arquivo.parametros.items():
        if campo in ('a', 'b'):
            documento[campo] = [_numero_json(item) for item in valor]
        elif campo == 'custom_table':
            documento[campo] = [[[_numero_json(x), _numero_json(f)] for x, f in tabela] for tabela in valor]
        else:
            documento[campo] = _numero_json(valor)
    if arquivo.rotulos:
        documento['labels'] = list(arquivo.rotulos)
    return documento


def para_json(arquivo):
    return json.dumps(serializar(arquivo), indent=2, sort_keys=True)
