"""Benchmark harness: learn each model, re-check equivalence, tabulate counts."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .io import load_dera, reported_size
from .learner import LearnOptions, tlsep
from .teacher import DeraTeacher

# published (MQ, IQ, EQ) for the bundled models
REFERENCE_COUNTS = {
    "fig2": (98, 8, 5),
    "ex1": (219, 11, 6),
    "ex2": (220, 12, 7),
    "ex3": (87, 7, 4),
    "ex4": (26, 5, 3),
}


@dataclass
class BenchRow:
    name: str
    K: int = 0
    Q: int = 0
    sigma: int = 0
    mq: int = 0
    iq: int = 0
    eq: int = 0
    learned: int = 0
    seconds: float = 0.0
    equivalent: bool = False
    error: str | None = None

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.mq, self.iq, self.eq


@dataclass
class BenchReport:
    rows: list[BenchRow]

    @property
    def ok(self) -> bool:
        return all(r.error is None and r.equivalent for r in self.rows)

    def row(self, name: str) -> BenchRow:
        return next(r for r in self.rows if r.name == name)

    def as_dicts(self) -> list[dict]:
        return [asdict(r) for r in self.rows]

    def format(self) -> str:
        head = ["model", "K", "|Q|", "|Σ|", "MQ", "IQ", "EQ", "learned", "time(s)", "equiv", "ref MQ/IQ/EQ"]
        body = []
        for r in self.rows:
            ref = REFERENCE_COUNTS.get(r.name)
            ref_s = "/".join(map(str, ref)) if ref else "-"
            if r.error is not None:
                body.append([r.name, "-", "-", "-", "-", "-", "-", "-", f"{r.seconds:.2f}", "error", ref_s])
                continue
            body.append([r.name, str(r.K), str(r.Q), str(r.sigma), str(r.mq), str(r.iq), str(r.eq),
                         str(r.learned), f"{r.seconds:.2f}", "yes" if r.equivalent else "NO", ref_s])
        widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(head)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.ljust(w) for c, w in zip(b, widths)) for b in body]
        errors = [f"{r.name}: {r.error}" for r in self.rows if r.error]
        return "\n".join(lines + errors) + "\n"


def bench_one(path: str | Path, options: LearnOptions | None = None) -> BenchRow:
    path = Path(path)
    name = path.name.removesuffix(".dera")
    start = time.perf_counter()
    try:
        A = load_dera(path)
        result = tlsep(DeraTeacher(A), options)
        equivalent = DeraTeacher(A).equivalence(result.dfa) is None
    except Exception as exc:  # isolate failures per model
        return BenchRow(name, seconds=time.perf_counter() - start, error=f"{type(exc).__name__}: {exc}")
    return BenchRow(
        name,
        A.alphabet.K,
        reported_size(A),
        len(A.alphabet.letters),
        *result.stats.as_tuple(),
        learned=result.n_states,
        seconds=time.perf_counter() - start,
        equivalent=equivalent,
    )


def run_bench(paths, options: LearnOptions | None = None, parallel: bool = False) -> BenchReport:
    paths = list(paths)
    if parallel and len(paths) > 1:
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(bench_one, paths, [options] * len(paths)))
    else:
        rows = [bench_one(p, options) for p in paths]
    return BenchReport(rows)


def model_paths(directory: str | Path) -> list[Path]:
    return sorted(Path(directory).glob("*.dera"))
