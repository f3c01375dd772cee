import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from eso.normal_form import validate_durand_form
from eso.grammar import format_eso, parse_eso
from eso.translate import eso_to_inclusion, translate_to_eso
from oracle.claims import CLAIMS
from oracle.equivalence import (
    COUNTEREXAMPLE,
    INCONCLUSIVE,
    LIMIT_EXCEEDED,
    check_open_equivalence,
    check_sentence_equivalence,
)
from oracle.harness import run_harness
from semantics.evaluator import SemanticsMode, evaluate, explain
from semantics.limits import EvalLimits
from structures.files import read_structure, read_team
from structures.team import Team
from structures.vocabulary import parse_vocabulary
from syntax.analysis import classify_fragment, free_variables
from syntax.grammar import format_formula, parse_formula
from transform.prenex import to_prenex_normal_form

FALSE_VERDICT = 1
USAGE_ERROR = 2


class Command(BaseCommand):
    help = 'Evaluate, transform and compare formulas of dependence, independence and inclusion logic'

    exit_code = 0

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)

        check = subparsers.add_parser('check', help='Evaluate a formula on a structure and a team')
        self._formula_arguments(check)
        check.add_argument('--structure', required=True, help='Structure file')
        check.add_argument('--team', help='Team file; the team {∅} when omitted')
        check.add_argument('--semantics', choices=['strict', 'lax'], default='strict')
        check.add_argument('--trace', action='store_true', help='Print the splits and witnesses of a true verdict')
        check.add_argument('--flat-shortcut', action='store_true', help='Decide first-order subformulas pointwise')
        self._limit_arguments(check)

        prenex = subparsers.add_parser('prenex', help='Prenex normal form of a sentence')
        self._formula_arguments(prenex)
        prenex.add_argument('--normalize', action='store_true', help='Rename bound variables apart first')

        translate = subparsers.add_parser('translate', help='Translate between team logic and ESO')
        self._formula_arguments(translate)
        translate.add_argument('--to', choices=['eso', 'inc'], default='eso')
        translate.add_argument('--input', help='ESO sentence file for --to inc')
        translate.add_argument('--normalize', action='store_true', help='Rename bound variables apart first')
        translate.add_argument('--validate-durand', action='store_true', help='Print normal form diagnostics')

        classify = subparsers.add_parser('classify', help='Fragment profile of a formula')
        self._formula_arguments(classify)

        equiv = subparsers.add_parser('equiv', help='Bounded equivalence of two formulas')
        equiv.add_argument('left', nargs='?')
        equiv.add_argument('right', nargs='?')
        equiv.add_argument('--file', nargs=2, metavar=('LEFT', 'RIGHT'), help='Read both formulas from files')
        equiv.add_argument('--vocab', help='Vocabulary such as "P/1,E/2"; inferred when omitted')
        equiv.add_argument('--max-size', type=int, default=3)
        equiv.add_argument('--min-size', type=int, default=2)
        equiv.add_argument('--semantics', choices=['strict', 'lax'], default='strict')
        equiv.add_argument('--open', action='store_true', help='Compare open formulas on teams')
        equiv.add_argument('--vars', help='Team variables for --open; the free variables when omitted')
        equiv.add_argument('--max-rows', type=int)
        equiv.add_argument('--samples', type=int, default=200)
        equiv.add_argument('--seed', type=int, default=0)
        equiv.add_argument('--summary', help='Write a key=value report to this path')
        self._limit_arguments(equiv)

        harness = subparsers.add_parser('harness', help='Run the registered property checks')
        harness.add_argument('--claim', action='append', help='Claim to run; repeat for several')
        harness.add_argument('--seed', type=int)
        harness.add_argument('--scale', choices=['quick', 'full'])
        harness.add_argument('--record', action='store_true', help='Store the run in the database')
        harness.add_argument('--list', action='store_true', help='List the registered claims')
        self._limit_arguments(harness)

    def _formula_arguments(self, parser):
        parser.add_argument('formula', nargs='?')
        parser.add_argument('--file', help='Read the formula from a file')

    def _limit_arguments(self, parser):
        parser.add_argument('--max-split', type=int, help='Largest number of split candidates to try')
        parser.add_argument('--max-witness', type=int, help='Largest number of witness functions to try')
        parser.add_argument('--max-team-rows', type=int, help='Largest team to build')
        parser.add_argument('--max-nodes', type=int, help='Largest number of search nodes in one evaluation')

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['subcommand']}")
        try:
            self.exit_code = handler(options) or 0
        except (ValueError, RuntimeError, OSError) as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    def _formula_text(self, options, key='formula', path=None) -> str:
        path = path or options.get('file')
        if path:
            return Path(path).read_text()
        if options.get(key):
            return options[key]
        raise CommandError("A formula is required, inline or with --file", returncode=USAGE_ERROR)

    def _limits(self, options) -> EvalLimits:
        return EvalLimits.from_settings(
            max_split_candidates=options.get('max_split'),
            max_witness_functions=options.get('max_witness'),
            max_team_rows=options.get('max_team_rows'),
            max_search_nodes=options.get('max_nodes'),
        )

    def handle_check(self, options) -> int:
        formula = parse_formula(self._formula_text(options))
        structure = read_structure(options['structure'])
        team = read_team(options['team']) if options['team'] else Team.unit()
        mode = SemanticsMode(options['semantics'])
        limits = self._limits(options)

        if options['trace']:
            verdict, trace = explain(structure, team, formula, mode, limits, flat_shortcut=options['flat_shortcut'])
        else:
            verdict, trace = evaluate(structure, team, formula, mode, limits, flat_shortcut=options['flat_shortcut']), None

        self.stdout.write('true' if verdict else 'false')
        if trace is not None:
            self.stdout.write(trace.to_text())
        return 0 if verdict else FALSE_VERDICT

    def handle_prenex(self, options) -> int:
        formula = parse_formula(self._formula_text(options))
        prenex = to_prenex_normal_form(formula, normalize=options['normalize'])
        self.stdout.write(format_formula(prenex.to_formula()))
        return 0

    def handle_translate(self, options) -> int:
        if options['to'] == 'eso':
            formula = parse_formula(self._formula_text(options))
            sentence = translate_to_eso(formula, normalize=options['normalize'])
            self.stdout.write(format_eso(sentence))
            if options['validate_durand']:
                for line in validate_durand_form(sentence).to_lines():
                    self.stdout.write(line)
            return 0

        sentence = parse_eso(self._formula_text(options, path=options['input'] or options['file']))
        if options['validate_durand']:
            profile = validate_durand_form(sentence)
            for line in profile.to_lines():
                self.stdout.write(line)
            if not profile.valid:
                return FALSE_VERDICT
        self.stdout.write(format_formula(eso_to_inclusion(sentence)))
        return 0

    def handle_classify(self, options) -> int:
        profile = classify_fragment(parse_formula(self._formula_text(options)))
        for key, value in profile.as_dict().items():
            shown = str(value).lower() if isinstance(value, bool) else value
            self.stdout.write(f"{key}={shown}")
        return 0

    def handle_equiv(self, options) -> int:
        if options['file']:
            left_text, right_text = (Path(path).read_text() for path in options['file'])
        elif options['left'] and options['right']:
            left_text, right_text = options['left'], options['right']
        else:
            raise CommandError("Two formulas are required, inline or with --file", returncode=USAGE_ERROR)
        left, right = parse_formula(left_text), parse_formula(right_text)
        vocabulary = parse_vocabulary(options['vocab']) if options['vocab'] else None
        mode = SemanticsMode(options['semantics'])
        limits = self._limits(options)

        if options['open']:
            variables = options['vars'].split() if options['vars'] else sorted(free_variables(left) | free_variables(right))
            report = check_open_equivalence(
                left, right, variables, vocabulary, options['max_size'], mode, limits,
                max_rows=options['max_rows'], samples=options['samples'], seed=options['seed'],
                min_size=options['min_size'],
            )
        else:
            report = check_sentence_equivalence(
                left, right, vocabulary, options['max_size'], mode, limits, min_size=options['min_size'],
            )

        self.stdout.write(report.to_text())
        if options['summary']:
            Path(options['summary']).write_text(report.summary_text())
        if report.verdict == LIMIT_EXCEEDED:
            raise CommandError(f"Search stopped early: {report.reason}", returncode=USAGE_ERROR)
        if report.verdict == INCONCLUSIVE:
            raise CommandError(f"No verdict: {report.reason}", returncode=USAGE_ERROR)
        return FALSE_VERDICT if report.verdict == COUNTEREXAMPLE else 0

    def handle_harness(self, options) -> int:
        if options['list']:
            for claim in CLAIMS.values():
                self.stdout.write(f"{claim.name:<30} {claim.description}")
            return 0

        report = run_harness(
            names=options['claim'],
            seed=options['seed'],
            scale=options['scale'],
            record=options['record'],
            limits=self._limits(options),
        )
        self.stdout.write(report.to_text())
        if report.run_id is not None:
            self.stdout.write(f"Recorded as run {report.run_id}")
        return 0 if report.passed else FALSE_VERDICT
