from django.db import IntegrityError, transaction
from django.test import TestCase

from laboratoriocsf.models import ExecucaoRelatorio, LinhaArquivada
from laboratoriocsf.relatorios import LinhaRelatorio, csv_texto, resumo_sha256


def linhas_exemplo(status='HoldsOnSamples'):
    return [
        LinhaRelatorio('check', 'ratio(n=3)', 'SM', 'HoldsOnSamples', semente=0),
        LinhaRelatorio('check', 'ratio(n=3)', 'HOM', status, {'x': [2, 1, 0]}, 0.5, 0.5, 0.0, 0),
    ]


class ExecucaoRelatorioModelTest(TestCase):
    """Testes para o arquivamento de execuções."""

    def test_arquivar(self):
        """Testa se a execução e suas linhas são salvas corretamente."""
        linhas = linhas_exemplo()
        execucao = ExecucaoRelatorio.arquivar('check', linhas, semente=0, familia='ratio(n=3)')

        self.assertEqual(execucao.conteudo_csv, csv_texto(linhas))
        self.assertEqual(execucao.resumo_sha256, resumo_sha256(csv_texto(linhas)))
        self.assertEqual(execucao.semente, '0')
        self.assertEqual(execucao.linhas.count(), 2)

        # Linhas na ordem original
        arquivadas = list(execucao.linhas.all())
        self.assertEqual([linha.metrica for linha in arquivadas], ['SM', 'HOM'])
        self.assertEqual(arquivadas[1].testemunha, '{"x":[2,1,0]}')
        self.assertEqual(arquivadas[1].lhs, '0.5')

        self.assertEqual(str(execucao), f"check (semente 0) - {execucao.resumo_sha256[:12]}")
        self.assertEqual(str(arquivadas[1]), 'HOM: HoldsOnSamples')

    def test_comando_obrigatorio(self):
        """Testa se o comando vazio é rejeitado pelo banco."""
        with self.assertRaises(IntegrityError):
            with transaction.atomic():
                ExecucaoRelatorio.objects.create(comando="", conteudo_csv="x")

    def test_ordem_unica_por_execucao(self):
        execucao = ExecucaoRelatorio.arquivar('check', linhas_exemplo())
        with self.assertRaises(IntegrityError):
            with transaction.atomic():
                LinhaArquivada.objects.create(execucao=execucao, ordem=0, metrica='SM', status='x')

    def test_deterministicas(self):
        primeira = ExecucaoRelatorio.arquivar('check', linhas_exemplo(), semente=3)
        segunda = ExecucaoRelatorio.arquivar('check', linhas_exemplo(), semente=3)
        self.assertTrue(primeira.identica_a(segunda))
        self.assertTrue(ExecucaoRelatorio.deterministicas('check', 3))

        ExecucaoRelatorio.arquivar('check', linhas_exemplo('Violated'), semente=3)
        self.assertFalse(ExecucaoRelatorio.deterministicas('check', 3))
        self.assertEqual(ExecucaoRelatorio.equivalentes('check', 3).count(), 3)

    def test_violacoes(self):
        ExecucaoRelatorio.arquivar('check', linhas_exemplo('Violated'))
        self.assertEqual([linha.metrica for linha in LinhaArquivada.violacoes()], ['HOM'])
