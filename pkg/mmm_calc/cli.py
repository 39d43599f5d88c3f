#!/usr/bin/env python3
"""
Command-line frontend for mmm_calc
Deterministic text/json/csv output for every computation
"""

import sys
import json
import time
import logging
import argparse
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from .akfamily import SIGNATURE_FORMULA_NOTE, AKParams, AKReport, BranchingError, ak_consistency_check, ak_report
from .charnum import (
    CharNumberError, CharNumberExpansion, CharNumberVector, Flavor, evaluate, expand_complex_mmm,
    expand_odd_mmm, min_genus_bound, min_genus_bound_complex, partition_key,
)
from .config import LOG_LEVELS, Config, ConfigValidationError
from .metrics import MetricsCollector
from .newton import (
    check_homogenized_identity, check_shift_property, get_newton_cache, newton_poly, uniqueness_kernel_check,
)
from .polycore import GradedPoly, PolyParseError, StructureError, VarTable, partitions
from .symfun import FiberModel, verify_fiber_substitution, verify_newton_identity
from .utils import format_duration, render_csv, render_json
from .validation import InputValidator, ValidationError

logger = logging.getLogger(__name__)

FORMATS = ('text', 'json', 'csv')
FLAVORS = tuple(f.value for f in Flavor)
CHECK_NAMES = ('shift', 'homog', 'symmetric', 'fiber', 'unique')
TERM_HEADER = ('partition', 'monomial', 'coefficient')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

HANDLED_ERRORS = (
    ValidationError, CharNumberError, BranchingError, StructureError, PolyParseError,
    ConfigValidationError, OSError, json.JSONDecodeError, UnicodeDecodeError,
)

# (label, per-n check) in output order; 'fiber' expands to both flavors
VERIFY_CHECKS: Dict[str, List[Tuple[str, Callable[[int], bool]]]] = {
    'shift': [('shift', check_shift_property)],
    'homog': [('homog', check_homogenized_identity)],
    'symmetric': [('symmetric', lambda n: verify_newton_identity(n, n))],
    'fiber': [
        ('fiber-pontryagin', lambda n: verify_fiber_substitution(FiberModel(Flavor.PONTRYAGIN, n))),
        ('fiber-chern', lambda n: verify_fiber_substitution(FiberModel(Flavor.CHERN, n))),
    ],
    'unique': [('unique', uniqueness_kernel_check)],
}


def build_parser() -> argparse.ArgumentParser:
    formats = argparse.ArgumentParser(add_help=False)
    formats.add_argument('--format', choices=FORMATS, default='text', help='output format (default: text)')

    parser = argparse.ArgumentParser(
        prog='mmmcalc',
        description='Newton polynomials, MMM characteristic numbers and Atiyah-Kodaira invariants',
    )
    parser.add_argument('--log-level', type=str.upper, choices=LOG_LEVELS, help='override MMM_LOG_LEVEL')
    parser.add_argument('--metrics-file', help='write Prometheus metrics here on exit')
    sub = parser.add_subparsers(dest='command', required=True)

    newton = sub.add_parser('newton', parents=[formats], help='print the Newton polynomial f_n')
    newton.add_argument('n', type=int)

    verify = sub.add_parser('verify', parents=[formats], help='run the identity checks for 1 <= n <= max-n')
    verify.add_argument('--max-n', type=int, default=6)
    verify.add_argument('--which', choices=CHECK_NAMES + ('all',), default='all')

    expand = sub.add_parser('expand', parents=[formats], help='MMM number as a combination of p_J or c_J numbers')
    expand.add_argument('flavor', choices=FLAVORS)
    expand.add_argument('n', type=int)
    expand.add_argument('--self-check', metavar='FILE',
                        help='compare FILE (output of --format json) against a fresh expansion')

    evaluate_cmd = sub.add_parser('evaluate', parents=[formats], help='evaluate an expansion on a number file')
    evaluate_cmd.add_argument('flavor', choices=FLAVORS)
    evaluate_cmd.add_argument('n', type=int)
    evaluate_cmd.add_argument('numbers_file')

    ak = sub.add_parser('ak', parents=[formats], help='Atiyah-Kodaira invariants for (g_S, k)')
    ak.add_argument('--genus', type=int, required=True, help='genus of S (>= 2)')
    ak.add_argument('--sheets', type=int, required=True, help='number of sheets k (>= 2)')
    ak.add_argument('--check', action='store_true', help='run the consistency check; reflected in the exit code')

    return parser


def _term_rows(expansion_terms: Sequence[Tuple[Tuple[int, ...], int]], table: VarTable) -> List[Tuple[str, str, int]]:
    return [(partition_key(J), GradedPoly.monomial(table, J).to_text(), coeff) for J, coeff in expansion_terms]


class CalculatorCLI:
    """Dispatches subcommands and owns config, metrics and output streams"""

    def __init__(self, config: Optional[Config] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self.config = config or Config()
        self.metrics = MetricsCollector()
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
            'newton': self._newton_command,
            'verify': self._verify_command,
            'expand': self._expand_command,
            'evaluate': self._evaluate_command,
            'ak': self._ak_command,
        }

    def _emit(self, text: str):
        print(text, file=self.out)

    def _warn_cost(self, n: int):
        limit = self.config.get_soft_limit()
        if n > limit:
            message = f"n={n} is above the soft limit {limit}; expect long runtimes and large output"
            logger.warning(message)
            print(f"warning: {message}", file=self.err)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = build_parser().parse_args(argv)
        if args.log_level:
            logging.getLogger().setLevel(args.log_level)
        self.metrics.increment_command(args.command)

        try:
            code = self.handlers[args.command](args)
        except HANDLED_ERRORS as e:
            logger.error(f"{args.command} failed: {e}")
            self.metrics.increment_errors(type(e).__name__)
            print(f"error: {e}", file=self.err)
            code = EXIT_USAGE
        finally:
            metrics_file = args.metrics_file or self.config.get_metrics_file()
            if metrics_file:
                self.metrics.export(metrics_file)
        return code

    # newton

    def _newton_command(self, args: argparse.Namespace) -> int:
        n = InputValidator.validate_positive_int('n', args.n)
        self._warn_cost(n)
        f = newton_poly(n)
        self.metrics.record_polynomial_size(len(f.poly))
        terms = [(J, f.poly.coefficient(J)) for J in partitions(n) if f.poly.coefficient(J)]

        if args.format == 'json':
            self._emit(render_json({'n': n, 'terms': {partition_key(J): c for J, c in terms}}))
        elif args.format == 'csv':
            self._emit(render_csv(TERM_HEADER, _term_rows(terms, f.poly.table)))
        else:
            self._emit(f.to_text())
        return EXIT_OK

    # verify

    def _run_check(self, task: Tuple[str, Callable[[int], bool], int]) -> Tuple[str, int, bool]:
        label, check, n = task
        started = time.perf_counter()
        try:
            passed = bool(check(n))
        except Exception as e:
            logger.error(f"{label} n={n} raised {type(e).__name__}: {e}")
            self.metrics.increment_errors(type(e).__name__)
            passed = False
        self.metrics.record_check(label, passed, time.perf_counter() - started)
        return label, n, passed

    def _verify_command(self, args: argparse.Namespace) -> int:
        max_n = InputValidator.validate_positive_int('max_n', args.max_n)
        selected = CHECK_NAMES if args.which == 'all' else (args.which,)
        tasks = [(label, check, n)
                 for name in selected
                 for label, check in VERIFY_CHECKS[name]
                 for n in range(1, max_n + 1)]

        started = time.perf_counter()
        # Fill f_1..f_{max_n+1} once so worker threads only read the cache.
        newton_poly(max_n + 1)
        workers = self.config.get_verify_workers()
        logger.info(f"Running {len(tasks)} checks on {workers} worker(s)")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(self._run_check, tasks))
        passed = sum(1 for _, _, ok in results if ok)
        logger.info(f"verify finished in {format_duration(time.perf_counter() - started)}, "
                    f"cache holds {get_newton_cache().size()} polynomials")

        if args.format == 'json':
            self._emit(render_json({
                'results': [{'check': label, 'n': n, 'passed': ok} for label, n, ok in results],
                'passed': passed,
                'total': len(results),
            }))
        elif args.format == 'csv':
            self._emit(render_csv(('check', 'n', 'result'),
                                  [(label, n, 'PASS' if ok else 'FAIL') for label, n, ok in results]))
        else:
            for label, n, ok in results:
                self._emit(f"{'PASS' if ok else 'FAIL'} {label} n={n}")
            self._emit(f"{passed}/{len(results)} checks passed")
        return EXIT_OK if passed == len(results) else EXIT_FAILED

    # expand

    @staticmethod
    def _expansion(flavor: str, n: int) -> CharNumberExpansion:
        if Flavor(flavor) is Flavor.PONTRYAGIN:
            return expand_odd_mmm(n)
        return expand_complex_mmm(n)

    @staticmethod
    def _expansion_document(exp: CharNumberExpansion) -> Dict[str, Any]:
        return {
            'class': exp.class_name,
            'flavor': exp.flavor.value,
            'n': exp.n,
            'degree': exp.degree,
            'terms': {partition_key(J): c for J, c in exp.ordered_terms()},
        }

    def _self_check(self, exp: CharNumberExpansion, path: str) -> int:
        with open(path, encoding='utf-8') as handle:
            document = json.load(handle)
        expected = self._expansion_document(exp)
        if not isinstance(document, dict):
            raise ValidationError('self_check', 'expansion file must hold a JSON object', path)
        mismatched = [key for key in expected if document.get(key) != expected[key]]
        if not mismatched and list(document['terms']) != list(expected['terms']):
            mismatched.append('term order')
        if mismatched:
            logger.warning(f"Self-check of {path} differs in {', '.join(mismatched)}")
            self._emit(f"self-check: FAIL ({', '.join(mismatched)})")
            return EXIT_FAILED
        self._emit("self-check: PASS")
        return EXIT_OK

    def _expand_command(self, args: argparse.Namespace) -> int:
        InputValidator.validate_choice('flavor', args.flavor, FLAVORS)
        n = InputValidator.validate_positive_int('n', args.n)
        self._warn_cost(n)
        exp = self._expansion(args.flavor, n)

        if args.self_check:
            return self._self_check(exp, args.self_check)

        poly = exp.as_polynomial()
        self.metrics.record_polynomial_size(len(poly))
        if args.format == 'json':
            self._emit(render_json(self._expansion_document(exp)))
        elif args.format == 'csv':
            self._emit(render_csv(TERM_HEADER, _term_rows(exp.ordered_terms(), poly.table)))
        else:
            self._emit(", ".join(f"{exp.monomial_label(J)}: {c}" for J, c in exp.ordered_terms()))
            self._emit(f"{exp.class_name}# = {poly.to_text()}")
        return EXIT_OK

    # evaluate

    def _evaluate_command(self, args: argparse.Namespace) -> int:
        InputValidator.validate_choice('flavor', args.flavor, FLAVORS)
        n = InputValidator.validate_positive_int('n', args.n)
        exp = self._expansion(args.flavor, n)
        with open(args.numbers_file, encoding='utf-8') as handle:
            mapping = json.load(handle)
        numbers = CharNumberVector.from_mapping(exp.flavor, exp.degree, mapping)
        value = evaluate(exp, numbers)
        if exp.flavor is Flavor.PONTRYAGIN:
            bound = min_genus_bound(n, value)
        else:
            bound = min_genus_bound_complex(n, value)

        if args.format == 'json':
            self._emit(render_json({
                'class': exp.class_name, 'flavor': exp.flavor.value, 'n': n,
                'value': value, 'min_fiber_genus': bound,
            }))
        elif args.format == 'csv':
            self._emit(render_csv(('class', 'value', 'min_fiber_genus'),
                                  [(exp.class_name, value, '' if bound is None else bound)]))
        else:
            self._emit(str(value))
            if bound is not None:
                self._emit(f"min fiber genus > {bound - 1}")
        return EXIT_OK

    # ak

    def _ak_command(self, args: argparse.Namespace) -> int:
        params = AKParams(args.genus, args.sheets)
        report = ak_report(params)
        consistent = ak_consistency_check(params) if args.check else True

        if args.format == 'json':
            self._emit(render_json(report.to_dict()))
        elif args.format == 'csv':
            values = report.to_dict()
            self._emit(render_csv(AKReport.field_names(),
                                  [['' if values[k] is None else values[k] for k in AKReport.field_names()]]))
        else:
            for name, value in report.to_dict().items():
                self._emit(f"{name}: {'none' if value is None else value}")
            if args.check:
                self._emit(f"consistency: {'PASS' if consistent else 'FAIL'}")
            self._emit(f"note: {SIGNATURE_FORMULA_NOTE}")
        return EXIT_OK if consistent else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point used by mmmcalc.py"""
    return CalculatorCLI().run(argv)
