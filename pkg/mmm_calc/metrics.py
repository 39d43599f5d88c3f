#!/usr/bin/env python3
"""
Metrics collection module for mmm_calc
Prometheus counters for commands, identity checks and errors
"""

import time
import logging
import threading
from collections import Counter as CollectionsCounter
from typing import Any, Dict

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, generate_latest, write_to_textfile

logger = logging.getLogger(__name__)


class MetricsCollector:
    """Collects metrics for one calculator process"""

    def __init__(self):
        """Initialize metrics collector with Prometheus metrics"""
        # Create a custom registry to avoid conflicts
        self.registry = CollectorRegistry()

        self.commands_total = Counter(
            'mmm_commands_total',
            'Total CLI commands run',
            ['command'],
            registry=self.registry
        )

        self.checks_total = Counter(
            'mmm_checks_total',
            'Identity checks by outcome',
            ['check', 'outcome'],
            registry=self.registry
        )

        self.check_duration = Histogram(
            'mmm_check_duration_seconds',
            'Duration of a single identity check',
            ['check'],
            buckets=[0.001, 0.01, 0.1, 0.5, 1, 5, 30, 120],
            registry=self.registry
        )

        self.errors_total = Counter(
            'mmm_errors_total',
            'Total errors',
            ['error_type'],
            registry=self.registry
        )

        self.polynomial_terms = Gauge(
            'mmm_polynomial_terms',
            'Terms in the largest polynomial produced',
            registry=self.registry
        )

        self._lock = threading.Lock()
        self.start_time = time.time()
        self.check_outcomes = CollectionsCounter()
        self.error_types = CollectionsCounter()
        self.largest_polynomial = 0

        logger.debug("Metrics collector initialized")

    def increment_command(self, command: str):
        try:
            self.commands_total.labels(command=command).inc()
        except Exception as e:
            logger.error(f"Failed to increment command usage: {e}")

    def record_check(self, check: str, passed: bool, duration_seconds: float):
        """Record one check outcome and its duration"""
        outcome = 'pass' if passed else 'fail'
        try:
            self.checks_total.labels(check=check, outcome=outcome).inc()
            self.check_duration.labels(check=check).observe(duration_seconds)
            with self._lock:
                self.check_outcomes[(check, outcome)] += 1
        except Exception as e:
            logger.error(f"Failed to record check {check}: {e}")

    def increment_errors(self, error_type: str = "general"):
        try:
            self.errors_total.labels(error_type=error_type).inc()
            with self._lock:
                self.error_types[error_type] += 1
        except Exception as e:
            logger.error(f"Failed to increment errors: {e}")

    def record_polynomial_size(self, terms: int):
        try:
            with self._lock:
                if terms > self.largest_polynomial:
                    self.largest_polynomial = terms
                    self.polynomial_terms.set(terms)
        except Exception as e:
            logger.error(f"Failed to record polynomial size: {e}")

    def get_summary(self) -> Dict[str, Any]:
        """Get metrics summary"""
        with self._lock:
            outcomes = dict(self.check_outcomes)
            errors = dict(self.error_types)
        passed = sum(c for (_, outcome), c in outcomes.items() if outcome == 'pass')
        failed = sum(c for (_, outcome), c in outcomes.items() if outcome == 'fail')
        return {
            'checks_passed': passed,
            'checks_failed': failed,
            'error_breakdown': errors,
            'largest_polynomial_terms': self.largest_polynomial,
            'uptime_seconds': time.time() - self.start_time,
        }

    def get_prometheus_metrics(self) -> bytes:
        return generate_latest(self.registry)

    def export(self, path: str) -> bool:
        """Write the text exposition to path"""
        try:
            write_to_textfile(path, self.registry)
            logger.info(f"Metrics written to {path}")
            return True
        except Exception as e:
            logger.error(f"Failed to export metrics to {path}: {e}")
            return False
