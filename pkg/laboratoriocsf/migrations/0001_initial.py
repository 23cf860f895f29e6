# Generated by Django 5.2.6 on 2026-10-18 10:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExecucaoRelatorio',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('comando', models.CharField(max_length=30)),
                ('familia', models.CharField(blank=True, max_length=300)),
                ('semente', models.CharField(blank=True, max_length=20)),
                ('conteudo_csv', models.TextField()),
                ('resumo_sha256', models.CharField(editable=False, max_length=64)),
                ('criado_em', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Execução de Relatório',
                'verbose_name_plural': 'Execuções de Relatório',
                'ordering': ['-criado_em', '-id'],
                'constraints': [models.CheckConstraint(condition=models.Q(('comando', ''), _negated=True), name='comando_nao_vazio')],
            },
        ),
        migrations.CreateModel(
            name='LinhaArquivada',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('ordem', models.PositiveIntegerField()),
                ('familia', models.CharField(blank=True, max_length=300)),
                ('metrica', models.CharField(max_length=100)),
                ('status', models.CharField(max_length=30)),
                ('testemunha', models.TextField(blank=True)),
                ('lhs', models.CharField(blank=True, max_length=100)),
                ('rhs', models.CharField(blank=True, max_length=100)),
                ('lacuna', models.CharField(blank=True, max_length=100)),
                ('execucao', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='linhas', to='laboratoriocsf.execucaorelatorio')),
            ],
            options={
                'ordering': ['execucao', 'ordem'],
                'unique_together': {('execucao', 'ordem')},
            },
        ),
    ]
