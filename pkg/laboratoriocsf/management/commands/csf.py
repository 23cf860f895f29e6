"""
Front end de linha de comando do laboratório: python manage.py csf <subcomando>.

Códigos de saída: 0 sucesso, 1 asserção falhou (--expect, exemplos exatos,
suítes), 2 erro de uso ou de especificação.
"""
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from laboratoriocsf.aceitacao import aprovado, executar_aceitacao, verificar_determinismo
from laboratoriocsf.amostragem import PlanoAmostragem
from laboratoriocsf.axiomas import AxiomaId, Status, verificar_axioma, verificar_no_perfil
from laboratoriocsf.csf import (Backend, PerfilEsforco, avaliar, checar_backend, decompor_dois_niveis,
                                indices_da_mascara)
from laboratoriocsf.equilibrio import ConfigEquilibrio, JogoConcurso, estatica_comparativa_b, resolver_nash
from laboratoriocsf.especificacao import carregar_especificacao, para_fracao
from laboratoriocsf.exceptions import ErroLaboratorio
from laboratoriocsf.falsificador import falsificar, reproduzir_exemplos
from laboratoriocsf.implicacoes import caracterizar, padrao_esperado, suite_implicacoes, verificar_fronteira_sp_cp
from laboratoriocsf.models import ExecucaoRelatorio
from laboratoriocsf.relatorios import (LinhaRelatorio, csv_texto, formatar_vetor, linha_contraexemplo,
                                       linha_plano, linha_veredito, linhas_avaliacao, linhas_decomposicao,
                                       linhas_equilibrio, linhas_estatica, texto)

logger = logging.getLogger(__name__)

CODIGOS = tuple(axioma.value for axioma in AxiomaId) + ('DEC',)
LIMITE_SEMENTE = 2 ** 64


def executar(argv, stdout=None, stderr=None):
    """Roda 'csf' como na linha de comando e devolve o código de saída"""
    comando = Command(stdout=stdout, stderr=stderr)
    try:
        comando.run_from_argv(['manage.py', 'csf', *argv])
    except SystemExit as saida:
        if saida.code is None:
            return 0
        return saida.code if isinstance(saida.code, int) else 1
    return 0


def _semente(valor):
    semente = int(valor, 0)
    if not 0 <= semente < LIMITE_SEMENTE:
        raise ValueError(valor)
    return semente


def _positivo(valor):
    numero = int(valor)
    if numero < 1:
        raise ValueError(valor)
    return numero


def _lista(valor):
    return [item.strip() for item in valor.split(',') if item.strip()]


class Command(BaseCommand):
    help = "Laboratório de funções de sucesso de concurso com sorte"
    requires_system_checks = []

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcomando', required=True)

        eval_ = subparsers.add_parser('eval', help="Probabilidades de vitória num perfil")
        self._spec(eval_, obrigatoria=True)
        eval_.add_argument('--profile', required=True, help="Esforços separados por vírgula")
        eval_.add_argument('--subset', help="Máscara de bits do subconcurso (ex.: 0b011)")
        self._saida(eval_)

        check = subparsers.add_parser('check', help="Veredito de axiomas por amostragem")
        self._spec(check, obrigatoria=True)
        check.add_argument('--axiom', default='all', help="Código do axioma, lista com vírgulas ou 'all'")
        check.add_argument('--profile', help="Restringe aos casos de um único perfil")
        check.add_argument('--lambda', dest='lam', help="Fator de escala usado com --profile")
        check.add_argument('--expect', choices=('holds', 'violated'))
        self._amostragem(check)
        self._saida(check)

        falsify = subparsers.add_parser('falsify', help="Busca e encolhe contraexemplos")
        self._spec(falsify, obrigatoria=True)
        falsify.add_argument('--axiom', default='all')
        falsify.add_argument('--no-shrink', action='store_true')
        self._amostragem(falsify)
        self._saida(falsify)

        decompose = subparsers.add_parser('decompose', help="Decomposição em dois níveis")
        self._spec(decompose, obrigatoria=True)
        decompose.add_argument('--profile', required=True)
        self._saida(decompose)

        equilibrium = subparsers.add_parser('equilibrium', help="Equilíbrio de Nash em estratégias puras")
        self._spec(equilibrium, obrigatoria=True)
        equilibrium.add_argument('--values', help="Valores do prêmio por competidor (padrão 1)")
        equilibrium.add_argument('--max-iter', type=_positivo)
        self._saida(equilibrium)

        sweep = subparsers.add_parser('sweep', help="Estática comparativa do esforço total em b")
        sweep.add_argument('--n', type=int, default=2)
        sweep.add_argument('--r', default='1')
        sweep.add_argument('--v', default='1')
        sweep.add_argument('--b-values', default='0,0.1,0.2,0.3')
        self._saida(sweep)

        exemplos = subparsers.add_parser('paper-examples', help="Exemplos HOM/RH/HRE em aritmética exata")
        self._saida(exemplos)

        characterize = subparsers.add_parser('characterize', help="Caracterizações compatíveis")
        self._spec(characterize, obrigatoria=True)
        self._amostragem(characterize)
        self._saida(characterize)

        boundary = subparsers.add_parser('boundary', help="Fronteira SP/CP da família simétrica")
        boundary.add_argument('--r', default='0.5,1,2')
        boundary.add_argument('--b', default='0,1')
        self._amostragem(boundary)
        self._saida(boundary)

        implications = subparsers.add_parser('implications', help="Suíte de implicações no catálogo")
        self._amostragem(implications)
        self._saida(implications)

        acceptance = subparsers.add_parser('acceptance', help="Critérios de aceitação como linhas CSV")
        acceptance.add_argument('--criteria', help="Números dos critérios (padrão: todos)")
        acceptance.add_argument('--determinism', action='store_true',
                                help="Roda duas vezes e compara o SHA-256")
        self._amostragem(acceptance)
        self._saida(acceptance)

    def _spec(self, parser, obrigatoria=False):
        parser.add_argument('--spec', required=obrigatoria, help="Arquivo JSON da especificação")
        parser.add_argument('--backend', choices=[backend.value for backend in Backend])

    def _amostragem(self, parser):
        parser.add_argument('--seed', type=_semente)
        parser.add_argument('--samples', type=_positivo)

    def _saida(self, parser):
        parser.add_argument('--format', choices=('text', 'csv'), default='text')
        parser.add_argument('--out')
        parser.add_argument('--save', action='store_true', help="Arquiva o CSV no banco de dados")

    def handle(self, *args, **options):
        subcomando = options['subcomando']
        tratador = getattr(self, 'tratar_' + subcomando.replace('-', '_'))
        logger.info("csf %s", subcomando)
        try:
            linhas, saida_texto, falha = tratador(options)
        except ValidationError as erro:
            raise CommandError('; '.join(erro.messages), returncode=2)
        except (ErroLaboratorio, ValueError) as erro:
            raise CommandError(str(erro), returncode=2)

        self._emitir(subcomando, linhas, saida_texto, options)
        if falha:
            raise CommandError(falha, returncode=1)

    def _emitir(self, subcomando, linhas, saida_texto, options):
        conteudo = csv_texto(linhas) if options['format'] == 'csv' else saida_texto
        if options['out']:
            try:
                with open(options['out'], 'w', encoding='utf-8', newline='') as arquivo:
                    arquivo.write(conteudo)
            except OSError as erro:
                raise CommandError(f"Não foi possível escrever {options['out']}: {erro}", returncode=2)
        else:
            self.stdout.write(conteudo, ending='')

        if options['save']:
            familia = linhas[0].familia if linhas else ''
            execucao = ExecucaoRelatorio.arquivar(subcomando, linhas, options.get('seed'), familia)
            self.stderr.write(f"Execução arquivada #{execucao.pk} ({execucao.resumo_sha256[:12]})")

    # Entradas

    def _arquivo(self, options):
        arquivo = carregar_especificacao(options['spec'], options.get('backend'))
        checar_backend(arquivo.spec, arquivo.backend)
        return arquivo

    def _plano(self, options):
        return PlanoAmostragem.do_settings(semente=options.get('seed'), perfis=options.get('samples'))

    def _perfil(self, valor, backend, ativo=True):
        """Esforços da linha de comando; com ativo, x = (0, ..., 0) é rejeitado"""
        try:
            itens = [para_fracao(item) for item in _lista(valor)]
        except ValidationError:
            raise CommandError(f"Perfil inválido: {valor}", returncode=2)
        if backend is not Backend.RACIONAL:
            itens = [float(item) for item in itens]
        return PerfilEsforco(itens) if ativo else tuple(itens)

    def _axiomas(self, valor):
        if valor == 'all':
            return [axioma.value for axioma in AxiomaId]
        codigos = [item.upper() for item in _lista(valor)]
        desconhecidos = [codigo for codigo in codigos if codigo not in CODIGOS]
        if not codigos or desconhecidos:
            raise CommandError(f"Axioma desconhecido: {', '.join(desconhecidos) or valor}", returncode=2)
        return codigos

    # Subcomandos: cada um devolve (linhas, texto, mensagem de falha ou None)

    def tratar_eval(self, options):
        arquivo = self._arquivo(options)
        x = self._perfil(options['profile'], arquivo.backend, ativo=False)
        mascara = int(options['subset'], 0) if options.get('subset') else None
        familia = arquivo.spec.resumo()
        indices = indices_da_mascara(mascara) if mascara is not None else tuple(range(arquivo.n))
        try:
            p = avaliar(arquivo.spec, x, mascara, arquivo.backend)
        except ErroLaboratorio as erro:
            linha = LinhaRelatorio('eval', familia, 'p', erro.codigo, {'x': list(x), 'error': str(erro)})
            return [linha], f"{erro.codigo}: {erro}\n", None

        linhas = linhas_avaliacao(familia, p, rotulo=lambda posicao: self._rotulo(arquivo, indices[posicao]))
        return linhas, formatar_vetor(p) + '\n', None

    def _rotulo(self, arquivo, i):
        return arquivo.competidores.rotulo(i)

    def tratar_check(self, options):
        arquivo = self._arquivo(options)
        plano = self._plano(options)
        codigos = self._axiomas(options['axiom'])
        if options.get('profile'):
            x = self._perfil(options['profile'], arquivo.backend)
            lambdas = [para_fracao(options['lam'])] if options.get('lam') else None
            vereditos = [verificar_no_perfil(arquivo.spec, codigo, x, plano, arquivo.backend, lambdas)
                         for codigo in codigos]
        else:
            vereditos = [verificar_axioma(arquivo.spec, codigo, plano, arquivo.backend) for codigo in codigos]

        linhas = [linha_plano('check', arquivo.spec.resumo(), plano)]
        linhas.extend(linha_veredito('check', veredito, plano.semente) for veredito in vereditos)
        falha = None
        esperado = options.get('expect')
        if esperado:
            alvo = Status.VALIDO if esperado == 'holds' else Status.VIOLADO
            divergentes = [veredito.axioma for veredito in vereditos if veredito.status is not alvo]
            if divergentes:
                falha = f"Esperado {esperado}, divergiram: {', '.join(divergentes)}"
        return linhas, texto(linhas), falha

    def tratar_falsify(self, options):
        arquivo = self._arquivo(options)
        plano = self._plano(options)
        familia = arquivo.spec.resumo()
        linhas = [linha_plano('falsify', familia, plano)]
        for codigo in self._axiomas(options['axiom']):
            contraexemplo = falsificar(arquivo.spec, codigo, plano, arquivo.backend,
                                       encolhendo=not options['no_shrink'])
            linhas.append(linha_contraexemplo('falsify', codigo, familia, contraexemplo, plano.semente))
        return linhas, texto(linhas), None

    def tratar_decompose(self, options):
        arquivo = self._arquivo(options)
        x = self._perfil(options['profile'], arquivo.backend)
        familia = arquivo.spec.resumo()
        try:
            decomposicao = decompor_dois_niveis(arquivo.spec, x, arquivo.backend)
        except ErroLaboratorio as erro:
            linha = LinhaRelatorio('decompose', familia, 'mu', erro.codigo, {'x': list(x), 'error': str(erro)})
            return [linha], f"{erro.codigo}: {erro}\n", None

        linhas = linhas_decomposicao(familia, decomposicao, rotulo=lambda i: self._rotulo(arquivo, i))
        saida = [f"mu = {formatar_vetor(decomposicao.mu)}", f"mu_null = {formatar_vetor([decomposicao.mu_null])}"]
        if decomposicao.alfa is not None:
            saida.append(f"alpha = {formatar_vetor(decomposicao.alfa)}")
        return linhas, '\n'.join(saida) + '\n', None

    def tratar_equilibrium(self, options):
        arquivo = self._arquivo(options)
        if options.get('values'):
            v = tuple(float(para_fracao(item)) for item in _lista(options['values']))
        else:
            v = (1.0,) * arquivo.n
        jogo = JogoConcurso(arquivo.spec, v)
        config = ConfigEquilibrio.do_settings(max_iteracoes=options.get('max_iter'))
        resultado = resolver_nash(jogo, config)
        linhas = linhas_equilibrio(arquivo.spec.resumo(), resultado, rotulo=lambda i: self._rotulo(arquivo, i))
        saida = [
            f"x* = {formatar_vetor(resultado.x_star)}",
            f"payoffs = {formatar_vetor(resultado.payoffs)}",
            f"converged = {'yes' if resultado.convergiu else 'no'} ({resultado.iteracoes} iterations)",
        ]
        if resultado.motivo:
            saida.append(f"status = {resultado.motivo}")
        if resultado.aviso_existencia:
            saida.append("warning: r > 1, a pure-strategy equilibrium may not exist")
        return linhas, '\n'.join(saida) + '\n', None

    def tratar_sweep(self, options):
        r = para_fracao(options['r'])
        v = float(para_fracao(options['v']))
        valores_b = [float(para_fracao(item)) for item in _lista(options['b_values'])]
        tabela = estatica_comparativa_b(options['n'], 1 if r == 1 else float(r), v, valores_b)
        familia = f"symmetric_luck(n={options['n']}, r={r})"
        linhas = linhas_estatica(familia, tabela)
        saida = ['b, sum_x, closed_form']
        for linha in tabela.linhas:
            fechado = '' if linha.fechado is None else f"{linha.fechado:.6g}"
            saida.append(f"{linha.b:.6g}, {linha.soma:.6g}, {fechado}")
        saida.append(f"monotone = {'true' if tabela.monotona else 'false'}")
        return linhas, '\n'.join(saida) + '\n', None

    def tratar_paper_examples(self, options):
        relatorio = reproduzir_exemplos()
        familia = 'luck_tullock(a=[1, 1, 1], b=[1, 1, 1], r=1)'
        linhas = []
        saida = []
        for exemplo in relatorio.exemplos:
            status = 'PASS' if exemplo.passou else 'FAIL'
            linhas.append(LinhaRelatorio('paper-examples', familia, exemplo.nome, status,
                                         {'x': [2, 1, 0], 'lam': 2}, exemplo.obtido[0], exemplo.obtido[1]))
            saida.append(f"{exemplo.nome}: {exemplo.obtido[0]} vs {exemplo.obtido[1]} {status}")
        saida.append('PASS' if relatorio.passou else 'FAIL')
        falha = None if relatorio.passou else "Os exemplos exatos não foram reproduzidos"
        return linhas, '\n'.join(saida) + '\n', falha

    def tratar_characterize(self, options):
        arquivo = self._arquivo(options)
        plano = self._plano(options)
        caracterizacao = caracterizar(arquivo.spec, plano, arquivo.backend)
        linhas = [linha_plano('characterize', caracterizacao.familia, plano)]
        linhas.extend(linha_veredito('characterize', veredito, plano.semente)
                      for veredito in caracterizacao.vereditos)
        linhas.extend(LinhaRelatorio('characterize', caracterizacao.familia, f"bundle:{pacote}", 'Matches',
                                     semente=plano.semente)
                      for pacote in caracterizacao.pacotes)
        cabecalho = f"matches: {', '.join(caracterizacao.pacotes) or '-'}"
        return linhas, texto(linhas, cabecalho), None

    def tratar_boundary(self, options):
        plano = self._plano(options)
        linhas = []
        falhas = []
        for b in (para_fracao(item) for item in _lista(options['b'])):
            for r in (para_fracao(item) for item in _lista(options['r'])):
                b_valor = int(b) if b.denominator == 1 else float(b)
                r_valor = int(r) if r.denominator == 1 else float(r)
                fronteira = verificar_fronteira_sp_cp(r_valor, b_valor, plano)
                esperado = padrao_esperado(r_valor, b_valor)
                for veredito in (fronteira.sp, fronteira.cp):
                    linhas.append(linha_veredito('boundary', veredito, plano.semente))
                    alvo = esperado[veredito.axioma]
                    if alvo is not None and (veredito.status is Status.VALIDO) != alvo:
                        falhas.append(f"{veredito.axioma}(r={r}, b={b})")
                linhas.append(LinhaRelatorio(
                    'boundary', fronteira.sp.familia, 'additivity', 'Agrees' if fronteira.concorda else 'Disagrees',
                    {'compared': fronteira.comparadas, 'disagreements': fronteira.discordancias,
                     'superadditive': fronteira.superaditiva, 'subadditive': fronteira.subaditiva},
                    semente=plano.semente))
                if not fronteira.concorda:
                    falhas.append(f"additivity(r={r}, b={b})")
        falha = f"Fronteira fora do padrão: {', '.join(falhas)}" if falhas else None
        return linhas, texto(linhas), falha

    def tratar_implications(self, options):
        plano = self._plano(options)
        relatorio = suite_implicacoes(plano)
        linhas = [LinhaRelatorio('implications', checagem.familia, checagem.codigo,
                                 ('Holds' if checagem.ok else 'Fails') if checagem.aplicavel else 'NotApplicable',
                                 {'detail': checagem.detalhe} if checagem.detalhe else None,
                                 semente=plano.semente)
                  for checagem in relatorio.checagens]
        falha = None if relatorio.ok else "Implicações violadas no catálogo"
        return linhas, texto(linhas), falha

    def tratar_acceptance(self, options):
        plano = self._plano(options)
        criterios = [int(item) for item in _lista(options['criteria'])] if options.get('criteria') else None
        if criterios and any(numero not in range(1, 8) for numero in criterios):
            raise CommandError("Critérios válidos: 1 a 7", returncode=2)
        linhas = executar_aceitacao(plano, criterios=criterios)
        if options['determinism']:
            linhas.append(verificar_determinismo(plano, criterios=criterios))
        falha = None if aprovado(linhas) else "Critérios de aceitação reprovados"
        return linhas, texto(linhas), falha
