# scan_manager.py

import asyncio
import logging
from collections import Counter
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Callable, Iterator, List, Optional, Tuple, Union

from trinomial_index.certifier_router import CertifierRouter
from trinomial_index.contracts import ScanRow, ScanSpec, ScanSummary
from trinomial_index.monogenity import analyze
from trinomial_index.utils.config import DEFAULT_SETTINGS, EngineSettings
from trinomial_index.utils.error_handling import DomainError, describe_error
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int]


def scan_row(n: int, a: int, b: int, theorem: Optional[str] = None, settings: EngineSettings = DEFAULT_SETTINGS) -> ScanRow:
    """Verdict of one trinomial plus every clause of the theorem that fires, each checked against the engine."""
    try:
        t = Trinomial(n, a, b)
        report = analyze(t, settings)
    except DomainError as e:
        return ScanRow(n=n, a=a, b=b, status="input-error", error=describe_error(e))
    clauses: List[str] = []
    agreement = None
    if theorem:
        certifier = CertifierRouter(settings).get(theorem)
        if certifier.matches_degree(n):
            hits = certifier.clauses(t)
            for hit in hits:
                clauses.append(hit.clause)
                if not certifier.agreement(t, hit, report):
                    logger.warning(f"{t}: clause {hit.clause} not confirmed by the engine")
                    agreement = False
            if hits and agreement is None:
                agreement = True
    return ScanRow(
        n=n, a=a, b=b,
        status=report.status.value,
        clause=clauses[0] if clauses else None,
        clauses=clauses,
        agreement=agreement,
        irreducibility=report.irreducibility,
        witnesses=report.witnesses,
    )


class ScanManager:
    """Runs a scan with a bounded number of in-flight items, emitting rows in (n, a, b) order."""

    def __init__(self, spec: ScanSpec, settings: EngineSettings = DEFAULT_SETTINGS):
        self.spec = spec
        workers = spec.workers or settings.workers
        self.settings = settings.model_copy(update={"workers": workers})

    def keys(self) -> Iterator[Key]:
        spec = self.spec
        for n in sorted(set(spec.degrees)):
            for a in range(spec.a_min, spec.a_max + 1):
                for b in range(spec.b_min, spec.b_max + 1):
                    if spec.modulus and spec.residues and (a % spec.modulus, b % spec.modulus) not in spec.residues:
                        continue
                    yield n, a, b

    def _windows(self) -> Iterator[List[Key]]:
        window: List[Key] = []
        for key in self.keys():
            window.append(key)
            if len(window) == self.settings.scan_window:
                yield window
                window = []
        if window:
            yield window

    def _run_inline(self, window: List[Key]) -> List[Union[ScanRow, BaseException]]:
        results: List[Union[ScanRow, BaseException]] = []
        for n, a, b in window:
            try:
                results.append(scan_row(n, a, b, self.spec.theorem, self.settings))
            except Exception as e:
                results.append(e)
        return results

    async def _run_window(self, executor: Optional[Executor], window: List[Key]) -> List[ScanRow]:
        if executor is None:
            results = self._run_inline(window)
        else:
            loop = asyncio.get_running_loop()
            tasks = [
                loop.run_in_executor(executor, scan_row, n, a, b, self.spec.theorem, self.settings)
                for n, a, b in window
            ]
            results = await asyncio.gather(*tasks, return_exceptions=True)
        rows = []
        for (n, a, b), result in zip(window, results):
            if isinstance(result, BaseException):
                logger.exception(f"Scan worker failed on ({n}, {a}, {b}): {result}", exc_info=result)
                rows.append(ScanRow(n=n, a=a, b=b, status="error", error=str(result)))
            else:
                rows.append(result)
        return rows

    async def run(self, sink: Callable[[ScanRow], None]) -> ScanSummary:
        """Streams every row to sink and returns the summary counters."""
        by_status: Counter = Counter()
        by_clause: Counter = Counter()
        rows = 0
        disagreements = 0
        executor: Optional[Executor] = None
        if self.settings.workers > 1:
            executor = ProcessPoolExecutor(max_workers=self.settings.workers)
        try:
            for window in self._windows():
                for row in await self._run_window(executor, window):
                    sink(row)
                    rows += 1
                    by_status[row.status] += 1
                    for clause in row.clauses:
                        by_clause[clause] += 1
                    if row.agreement is False:
                        disagreements += 1
                logger.info(f"Scan progress: {rows} rows")
        finally:
            if executor is not None:
                executor.shutdown()
        return ScanSummary(
            rows=rows,
            by_status=dict(sorted(by_status.items())),
            by_clause=dict(sorted(by_clause.items())),
            disagreements=disagreements,
        )
