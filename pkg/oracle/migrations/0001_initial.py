# Generated by Django 5.1.2 on 2026-10-18 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='HarnessRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('seed', models.IntegerField()),
                ('scale', models.CharField(max_length=20)),
                ('started_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
                ('passed', models.BooleanField(default=False)),
            ],
            options={
                'indexes': [models.Index(fields=['started_at'], name='oracle_harn_started_5c1e2a_idx')],
            },
        ),
        migrations.CreateModel(
            name='ClaimOutcome',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('claim', models.CharField(max_length=100)),
                ('passed', models.BooleanField()),
                ('checked', models.IntegerField(default=0)),
                ('skipped', models.IntegerField(default=0)),
                ('detail', models.TextField(blank=True)),
                ('seconds', models.FloatField(default=0.0)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='outcomes', to='oracle.harnessrun')),
            ],
            options={
                'indexes': [models.Index(fields=['claim'], name='oracle_clai_claim_8d4f7b_idx')],
                'unique_together': {('run', 'claim')},
            },
        ),
    ]
