import io
import os
import tempfile
from contextlib import redirect_stderr
from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase, TransactionTestCase

from laboratoriocsf.management.commands.csf import executar
from laboratoriocsf.models import ExecucaoRelatorio
from laboratoriocsf.relatorios import COLUNAS

ESPECIFICACOES = Path(__file__).resolve().parent.parent / 'especificacoes'


def spec(nome):
    return str(ESPECIFICACOES / f"{nome}.json")


class ComandoCsfTest(SimpleTestCase):
    """Testes do comando de gerenciamento 'csf'."""

    def rodar(self, *argv):
        saida, erros = io.StringIO(), io.StringIO()
        with redirect_stderr(io.StringIO()):
            codigo = executar(list(argv), stdout=saida, stderr=erros)
        return codigo, saida.getvalue(), erros.getvalue()

    def test_eval_racional(self):
        codigo, saida, _ = self.rodar('eval', '--spec', spec('luck111_rational'), '--profile', '2,1,0')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, '1/2, 1/3, 1/6\n')

    def test_eval_float(self):
        codigo, saida, _ = self.rodar('eval', '--spec', spec('luck111'), '--profile', '2,1,0')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, '0.5, 0.333333, 0.166667\n')

    def test_eval_subconjunto_com_backend(self):
        codigo, saida, _ = self.rodar('eval', '--spec', spec('luck111'), '--profile', '2,1,0',
                                      '--subset', '0b011', '--backend', 'rational')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, '3/5, 2/5\n')

    def test_eval_csv_com_rotulos(self):
        codigo, saida, _ = self.rodar('eval', '--spec', spec('tullock'), '--profile', '1,1,1', '--format', 'csv')
        self.assertEqual(codigo, 0)
        linhas = saida.splitlines()
        self.assertEqual(linhas[0], ','.join(COLUNAS))
        self.assertIn(',p_alice,OK,', linhas[1])
        self.assertEqual(len(linhas), 4)

    def test_eval_denominador_degenerado(self):
        codigo, saida, _ = self.rodar('eval', '--spec', spec('tullock'), '--profile', '0,0,0')
        self.assertEqual(codigo, 0)
        self.assertTrue(saida.startswith('DegenerateDenominator'))

    def test_check_expect(self):
        argv = ['check', '--spec', spec('luck111_rational'), '--axiom', 'HOM', '--profile', '2,1,0', '--lambda', '2']
        codigo, saida, _ = self.rodar(*argv, '--expect', 'violated')
        self.assertEqual(codigo, 0)
        self.assertIn('lhs=1/2 rhs=5/9', saida)

        codigo, _, erros = self.rodar(*argv, '--expect', 'holds')
        self.assertEqual(codigo, 1)
        self.assertIn('HOM', erros)

    def test_check_lista_de_axiomas(self):
        codigo, saida, _ = self.rodar('check', '--spec', spec('ratio'), '--axiom', 'sm,lca', '--samples', '50',
                                      '--format', 'csv', '--seed', '0x10')
        self.assertEqual(codigo, 0)
        linhas = saida.splitlines()
        self.assertEqual(len(linhas), 4)
        self.assertIn(',plan,OK,', linhas[1])
        self.assertTrue(all(linha.endswith(',16') for linha in linhas[1:]))

    def test_check_traz_plano_e_amostras(self):
        codigo, saida, _ = self.rodar('check', '--spec', spec('luck111'), '--axiom', 'SM', '--samples', '40')
        self.assertEqual(codigo, 0)
        self.assertIn('plan: OK', saida)
        self.assertIn('"samples":40', saida)
        self.assertIn('"skipped":', saida)

    def test_semente_nao_vem_do_ambiente(self):
        with mock.patch.dict(os.environ, {'CSF_SEMENTE': '99', 'CSF_PERFIS': '3'}):
            codigo, saida, _ = self.rodar('check', '--spec', spec('tullock'), '--axiom', 'HOM', '--format', 'csv')
        self.assertEqual(codigo, 0)
        linhas = saida.splitlines()
        self.assertTrue(all(linha.endswith(',0') for linha in linhas[1:]))
        self.assertIn('"samples":10000', linhas[2])

    def test_check_dec_por_nome(self):
        codigo, saida, _ = self.rodar('check', '--spec', spec('ratio'), '--axiom', 'DEC', '--samples', '50',
                                      '--expect', 'holds')
        self.assertEqual(codigo, 0)
        self.assertIn('DEC', saida)

    def test_erros_de_uso(self):
        self.assertEqual(self.rodar('check', '--spec', spec('nao_existe'))[0], 2)
        self.assertEqual(self.rodar('check', '--spec', spec('ratio'), '--axiom', 'XYZ')[0], 2)
        self.assertEqual(self.rodar('check', '--spec', spec('ratio'), '--seed', '-1')[0], 2)
        self.assertEqual(self.rodar('check', '--spec', spec('ratio'), '--samples', '0')[0], 2)
        self.assertEqual(self.rodar('eval', '--spec', spec('ratio'), '--profile', '1,x,2')[0], 2)
        self.assertEqual(self.rodar('eval', '--spec', spec('ratio'), '--profile', '1,2')[0], 2)
        self.assertEqual(self.rodar('eval', '--spec', spec('tullock_r3'), '--profile', '1,1',
                                    '--backend', 'rational', '--subset', '0b11')[0], 0)
        self.assertEqual(self.rodar('nao-existe')[0], 2)

    def test_backend_racional_incompativel(self):
        with tempfile.TemporaryDirectory() as pasta:
            caminho = Path(pasta) / 'raiz.json'
            caminho.write_text('{"n": 2, "family": "tullock", "a": [1, 1], "r": 0.5}', encoding='utf-8')
            codigo, _, erros = self.rodar('check', '--spec', str(caminho), '--backend', 'rational')
        self.assertEqual(codigo, 2)
        self.assertIn('r', erros)

    def test_paper_examples(self):
        codigo, saida, _ = self.rodar('paper-examples')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida.splitlines()[-1], 'PASS')
        self.assertIn('HOM: 1/2 vs 5/9 PASS', saida)

    def test_falsify(self):
        codigo, saida, _ = self.rodar('falsify', '--spec', spec('luck111'), '--axiom', 'HOM,CRI', '--samples', '50')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida.count('Counterexample'), 2)

    def test_decompose(self):
        codigo, saida, _ = self.rodar('decompose', '--spec', spec('luck111_rational'), '--profile', '2,1,0')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, 'mu = 1/3, 1/6, 0\nmu_null = 1/2\nalpha = 1/3, 1/3, 1/3\n')

    def test_decompose_perfil_nulo(self):
        """x = (0, 0, 0) não é concurso ativo; eval ainda responde com a sorte"""
        self.assertEqual(self.rodar('decompose', '--spec', spec('luck111'), '--profile', '0,0,0')[0], 2)
        self.assertEqual(self.rodar('check', '--spec', spec('luck111'), '--axiom', 'SM',
                                    '--profile', '0,0,0')[0], 2)
        codigo, saida, _ = self.rodar('eval', '--spec', spec('luck111'), '--profile', '0,0,0')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, '0.333333, 0.333333, 0.333333\n')

    def test_equilibrium(self):
        codigo, saida, _ = self.rodar('equilibrium', '--spec', spec('symmetric_luck'))
        self.assertEqual(codigo, 0)
        self.assertIn('converged = yes', saida)
        self.assertIn('x* = 0.15, 0.15', saida)

    def test_equilibrium_com_aviso(self):
        codigo, saida, _ = self.rodar('equilibrium', '--spec', spec('tullock_r3'), '--max-iter', '100')
        self.assertEqual(codigo, 0)
        self.assertIn('warning', saida)
        self.assertIn('converged = no', saida)

    def test_sweep(self):
        codigo, saida, _ = self.rodar('sweep')
        self.assertEqual(codigo, 0)
        self.assertIn('monotone = true', saida)
        self.assertEqual(saida.splitlines()[0], 'b, sum_x, closed_form')

    def test_sweep_r_invalido(self):
        self.assertEqual(self.rodar('sweep', '--r', '2')[0], 2)

    def test_characterize(self):
        codigo, saida, _ = self.rodar('characterize', '--spec', spec('ratio'), '--samples', '100')
        self.assertEqual(codigo, 0)
        self.assertTrue(saida.startswith('matches: '))
        self.assertIn('ratio', saida.splitlines()[0])

    def test_boundary(self):
        codigo, saida, _ = self.rodar('boundary', '--r', '2', '--b', '0', '--samples', '200')
        self.assertEqual(codigo, 0)
        self.assertIn('additivity: Agrees', saida)

    def test_acceptance_criterio_um(self):
        codigo, saida, _ = self.rodar('acceptance', '--criteria', '1', '--format', 'csv')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida.count(',PASS,'), 3)

    def test_acceptance_criterio_invalido(self):
        self.assertEqual(self.rodar('acceptance', '--criteria', '9')[0], 2)

    def test_saida_em_arquivo(self):
        with tempfile.TemporaryDirectory() as pasta:
            destino = Path(pasta) / 'saida.csv'
            codigo, saida, _ = self.rodar('eval', '--spec', spec('luck111'), '--profile', '2,1,0',
                                          '--format', 'csv', '--out', str(destino))
            conteudo = destino.read_text(encoding='utf-8')
        self.assertEqual(codigo, 0)
        self.assertEqual(saida, '')
        self.assertTrue(conteudo.startswith(','.join(COLUNAS)))


class ComandoArquivamentoTest(TransactionTestCase):
    """Testes do arquivamento com --save."""

    def test_save(self):
        saida, erros = io.StringIO(), io.StringIO()
        codigo = executar(['check', '--spec', spec('ratio'), '--axiom', 'SM,HOM', '--samples', '30', '--seed', '4',
                           '--save'], stdout=saida, stderr=erros)
        self.assertEqual(codigo, 0)
        execucao = ExecucaoRelatorio.objects.get()
        self.assertEqual(execucao.comando, 'check')
        self.assertEqual(execucao.semente, '4')
        self.assertEqual(execucao.linhas.count(), 3)
        self.assertIn('Execução arquivada', erros.getvalue())
