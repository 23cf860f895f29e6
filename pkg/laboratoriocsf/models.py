from django.db import models, transaction
from django.db.models import CheckConstraint, Q

from .relatorios import csv_texto, resumo_sha256


class ExecucaoRelatorio(models.Model):
	comando = models.CharField(max_length=30)
	familia = models.CharField(max_length=300, blank=True)
	semente = models.CharField(max_length=20, blank=True)
	conteudo_csv = models.TextField()
	resumo_sha256 = models.CharField(max_length=64, editable=False)
	criado_em = models.DateTimeField(auto_now_add=True)

	class Meta:
		ordering = ['-criado_em', '-id']
		verbose_name = 'Execução de Relatório'
		verbose_name_plural = 'Execuções de Relatório'
		constraints = [
			CheckConstraint(condition=~Q(comando=""), name='comando_nao_vazio'),
		]

	def __str__(self):
		return f"{self.comando} (semente {self.semente or '-'}) - {self.resumo_sha256[:12]}"

	def save(self, *args, **kwargs):
		self.resumo_sha256 = resumo_sha256(self.conteudo_csv)
		super().save(*args, **kwargs)

	def identica_a(self, outra):
		return self.resumo_sha256 == outra.resumo_sha256

	@classmethod
	def arquivar(cls, comando, linhas, semente=None, familia=''):
		"""Guarda o CSV de uma execução e suas linhas"""
		with transaction.atomic():
			execucao = cls.objects.create(
				comando=comando,
				familia=familia,
				semente='' if semente is None else str(semente),
				conteudo_csv=csv_texto(linhas),
			)
			LinhaArquivada.objects.bulk_create([
				LinhaArquivada(
					execucao=execucao,
					ordem=ordem,
					familia=valores[1],
					metrica=valores[2],
					status=valores[3],
					testemunha=valores[4],
					lhs=valores[5],
					rhs=valores[6],
					lacuna=valores[7],
				)
				for ordem, valores in enumerate(linha.valores() for linha in linhas)
			])
		return execucao

	@staticmethod
	def equivalentes(comando, semente):
		return ExecucaoRelatorio.objects.filter(comando=comando, semente=str(semente))

	@staticmethod
	def deterministicas(comando, semente):
		"""Todas as execuções arquivadas com o mesmo comando e semente têm o mesmo CSV"""
		resumos = ExecucaoRelatorio.equivalentes(comando, semente).order_by().values('resumo_sha256').distinct()
		return resumos.count() <= 1


class LinhaArquivada(models.Model):
	execucao = models.ForeignKey(ExecucaoRelatorio, on_delete=models.CASCADE, related_name='linhas')
	ordem = models.PositiveIntegerField()
	familia = models.CharField(max_length=300, blank=True)
	metrica = models.CharField(max_length=100)
	status = models.CharField(max_length=30)
	testemunha = models.TextField(blank=True)
	lhs = models.CharField(max_length=100, blank=True)
	rhs = models.CharField(max_length=100, blank=True)
	lacuna = models.CharField(max_length=100, blank=True)

	class Meta:
		ordering = ['execucao', 'ordem']
		unique_together = ('execucao', 'ordem')

	def __str__(self):
		return f"{self.metrica}: {self.status}"

	@staticmethod
	def violacoes():
		return LinhaArquivada.objects.filter(status__in=['Violated', 'Counterexample', 'FAIL'])
